#pragma once

#include <string>

#include "vadb/doubling.hpp"
#include "vadb/experiments.hpp"

namespace vadb {

// Locale-independent "%.12g".
std::string format_number(double x);

// CSV tables: header row, '.' decimal separator, newline-terminated rows.
std::string report_csv(const FlatBoundReport& report);
std::string distance_csv(const DistanceMatrix& d0, const DistanceMatrix& dj);
std::string pmt_csv(const PmtReport& report);
std::string example_csv(const ExperimentReport& report);
std::string good_set_csv(const DistanceMatrix& d0, const GoodSet& gs);

// Plain-text summaries with one PASS/FAIL line per check.
std::string summary_text(const FlatBoundReport& report);
std::string summary_text(const ExperimentReport& report);
std::string summary_text(const PmtReport& report);
std::string doubling_summary(const NeckAssembly& assembly, const NeckCheck& check,
                             const DoubledDistanceReport* distances = nullptr);

std::string mesh_summary_json(const Mesh& mesh);

// Throws io on failure.
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace vadb
