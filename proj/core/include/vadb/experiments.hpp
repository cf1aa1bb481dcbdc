#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vadb/flat_estimator.hpp"

namespace vadb {

// Where an observable's target value comes from.
enum class TargetSource { closed_form, numerical_oracle, asymptotic_limit };
const char* source_name(TargetSource s) noexcept;

struct Observable {
  std::string name;
  int j = 0;
  double value = 0.0;
  double target = 0.0;
  double rel_tol = 0.0;
  TargetSource source = TargetSource::closed_form;
  bool upper_bound = false;  // pass means value <= target * (1 + rel_tol)
  bool pass = false;
};

struct ExampleOptions {
  FamilyParams params;
  std::vector<int> resolution;  // empty: the family default at `res`
  int stencil = 3;
  std::size_t samples = 512;
  std::uint64_t seed = 0;
  double kappa = 8.0;
  int workers = 0;
  bool run_pipeline = true;     // false skips the good-set/flat-bound stage
};

struct ExperimentReport {
  ProfileId family = ProfileId::flat;
  std::optional<FlatBoundReport> flat;
  std::vector<DominanceReport> dominance;  // per j
  std::vector<double> volumes;             // per j
  std::vector<int> j_list;
  std::vector<Observable> observables;
  bool all_pass = true;
};

// Limit distance of the cinched torus between (r1, th1) and (r2, th2) with
// r1 < 0 < r2: the better of the flat geodesic and a path refracted along
// the cinched circle.
double cinched_limit_distance(double h0, double r1, double th1, double r2, double th2);

// Taxi limit metric min{sqrt(s^2 + 25 theta^2), s sqrt(24)/5 + theta}.
double taxi_limit_distance(double s, double theta);

ExperimentReport run_example(ProfileId id, const std::vector<int>& j_list, int resolution,
                             const ExampleOptions& opts = {});

struct PmtOptions {
  int n = 3;
  std::vector<double> masses{0.1, 0.05, 0.01};
  double r = 1.0;
  double r0 = 0.5;
  std::vector<int> resolution;  // empty: n = 3 -> {32, 16, 32}; n = 4 -> {16, 8, 8, 16}
  int stencil = 2;
  std::size_t samples = 128;
  std::uint64_t seed = 0;
  int workers = 0;
};

struct PmtRow {
  double mass = 0.0;
  double vol = 0.0;
  double vol_ball = 0.0;
  double vol_excess = 0.0;
  double vol_reference = 0.0;  // radial 1-D integral over [inner radius, r]
  double diam = 0.0;
  double depth_D = 0.0;
  double gamma = 0.0;
  double bdry_area = 0.0;
  double diam_bound = 0.0;
  double area_bound = 0.0;
  bool vol_dominates = false;
  bool diam_ok = false;
  bool area_ok = false;
};

struct PmtReport {
  int n = 3;
  double r = 1.0;
  double r0 = 0.5;
  std::vector<PmtRow> rows;
  bool excess_decreasing = false;
  bool all_pass = false;
};

// Euclidean ball volume in R^n (n = 3, 4) and unit-sphere area omega_n.
double ball_volume(int n, double r);
double sphere_area(int n);
// Volume of {2m-horizon <= |x| <= r} on the Schwarzschild graph by substitution
// u^2 = rho - rho_inner and Gauss-Legendre panels.
double pmt_radial_volume(int n, double m, double lo, double r);

PmtReport pmt_graph_run(const PmtOptions& opts);

}  // namespace vadb
