#pragma once

#include <string>
#include <vector>

#include "vadb/families.hpp"
#include "vadb/geometry.hpp"

namespace vadb {

// Discrete good set: delta is the smallest discrepancy threshold whose pairs
// carry at least (1 - eps) of the pair measure; W keeps the points whose slice
// carries more than 1 - kappa*eps of it.
struct GoodSet {
  std::vector<std::size_t> selected;   // indices into the sample list
  std::vector<double> slice_fraction;  // per sample
  double eps = 0.0;
  double kappa = 0.0;
  double threshold = 0.0;              // delta
  double pair_fraction = 0.0;          // measure fraction of pairs within delta
  double sup_discrepancy = 0.0;        // sup over W x W of |d_j - d_0|
  double sup_excess = 0.0;             // sup over W x W of (d_j - d_0)_+
  double excluded_volume = 0.0;        // d_j weights of the unselected samples
  double total_volume_j = 0.0;
  double total_volume_0 = 0.0;
};

// Pair measure uses d0's weights; the excluded volume uses dj's weights.
GoodSet good_set(const DistanceMatrix& d0, const DistanceMatrix& dj, double eps, double kappa);

double neck_height(double delta_j, double D);
double flat_bound(double V_j, double h_j, double V, double A);

enum class HypothesisMode { boundary_norm, interior_lm2, convex_interior };
const char* mode_name(HypothesisMode m) noexcept;
HypothesisMode parse_mode(const std::string& name);

struct ReportOptions {
  FamilyParams params;             // j is overridden per entry of j_list
  std::vector<int> j_list{4, 8, 16, 32};
  std::vector<int> resolution{128, 128};
  int stencil = 3;
  std::size_t samples = 512;
  std::uint64_t seed = 0;
  double kappa = 8.0;
  bool dominance_slack = false;    // compare against (1 - 1/j) g_0
  HypothesisMode mode = HypothesisMode::boundary_norm;
  int workers = 0;
};

struct FlatBoundRow {
  int j = 0;
  bool dominance_pass = false;
  double dominance_min_eig = 0.0;
  double diam = 0.0;
  double vol = 0.0;
  double bdry_area = 0.0;
  double bdry_norm = 0.0;
  double interior_norm = 0.0;
  double V_j = 0.0;
  double delta_j = 0.0;
  double h_j = 0.0;
  double flat_bound = 0.0;
  double lambda = 0.0;
  double eps = 0.0;
  std::size_t good_points = 0;
  std::size_t samples = 0;
};

struct HypothesisFlags {
  bool dominance = false;
  bool diameter_bounded = false;
  bool boundary_area_bounded = false;
  bool volume_converges = false;
  bool boundary_norm_converges = false;
  bool interior_norm_converges = false;
  bool convex_declared = false;
};

struct FlatBoundReport {
  ProfileId family = ProfileId::flat;
  HypothesisMode mode = HypothesisMode::boundary_norm;
  std::vector<FlatBoundRow> rows;  // sorted by j
  double vol0 = 0.0;
  double D = 0.0;
  double V = 0.0;
  double A = 0.0;
  HypothesisFlags flags;
  // All hypotheses of the selected mode hold.
  bool hypotheses_pass = false;
};

// Sequence proxy for "x_j -> 0": the last value is negligible, or the
// sequence is non-increasing and has at least halved.
bool converges_to_zero(const std::vector<double>& x, double scale);

FlatBoundReport vadb_report(const ReportOptions& opts);

}  // namespace vadb
