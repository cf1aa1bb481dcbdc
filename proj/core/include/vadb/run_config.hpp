#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "vadb/families.hpp"

namespace vadb {

// Everything that determines a CLI run. Serialized next to the outputs.
struct RunConfig {
  std::string command;
  std::string family = "flat";
  std::string domain = "cylinder";
  std::vector<int> j_list{4, 8, 16, 32};
  std::vector<int> resolution{128, 128};
  int stencil = 3;
  std::size_t samples = 512;
  std::uint64_t seed = 0;
  double kappa = 8.0;
  double eps = 0.05;
  double tolerance = 1e-12;
  std::vector<double> deltas{0.1, 0.05, 0.025};
  int neck_intervals = 16;
  std::string mode = "boundary-norm";
  bool dominance_slack = false;
  double h0 = std::numeric_limits<double>::quiet_NaN();
  double eta = 2.0;
  double mass = 0.01;
  std::vector<double> masses{0.1, 0.05, 0.01};
  int n = 3;
  double r = 1.0;
  double r0 = 0.5;
  double gamma = 0.0;
  double alpha = 0.0;
  double Lambda = 0.0;
  double hole_radius = 0.3;
  bool taxi_boundary_cinches = true;
  double neck_width = 0.125;
  int workers = 0;
  bool strict = false;
  std::string out_dir;

  FamilyParams family_params(int j = 1) const;

  std::string to_json() const;
  // Overwrites only the keys present in `text`; unknown keys are rejected.
  void merge_json(const std::string& text);
  static RunConfig from_json(const std::string& text);
};

}  // namespace vadb
