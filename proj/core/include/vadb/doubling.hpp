#pragma once

#include <memory>
#include <vector>

#include "vadb/geometry.hpp"

namespace vadb {

// Second fundamental form of one boundary component of a cylinder-type mesh
// (axis 0 an interval, the remaining axes closed), relative to the inward normal.
struct SecondFundamentalField {
  int component = -1;
  int side = 0;                         // 0: axis-0 lower end, 1: upper end
  std::vector<int> tangent_axes;
  std::vector<std::size_t> vertices;    // boundary vertices of the component
  std::vector<Tensor> A;                // per vertex, tangent coordinates
  std::vector<Tensor> h;                // induced metric g_0 restricted to the boundary
  double C = 0.0;                       // sup |A|_h
};

// A = 1/2 d/ds (g restricted to the boundary) by a one-sided 3-point
// difference along the inward coordinate normal.
SecondFundamentalField second_fundamental_form(const MetricField& g0, int component);

// A_0(z, t) = -A(z) sin(pi t / (2 delta)) for |t| <= delta.
Tensor neck_profile(const Tensor& A, double delta, double t);

// Trapezoid values of 2 * integral_{-delta}^{t_k} A_0 ds / A on t_k = -delta + 2 delta k / N,
// mirrored so that entry k equals entry N - k bit-for-bit.
std::vector<double> neck_integral(double delta, int intervals);

struct NeckVertex {
  std::size_t vertex;           // id in the doubled mesh
  int side;                     // which boundary component the neck is glued to
  std::size_t boundary_vertex;  // the original boundary vertex sharing z
  int k;                        // neck node index, t = -delta + 2 delta k / N
  double t;
};

struct NeckAssembly {
  std::shared_ptr<const Mesh> mesh;
  std::shared_ptr<const MetricField> metric;
  double delta = 0.0;
  double C = 0.0;
  double eta = 1.0;
  int neck_intervals = 16;
  int manifold_dim = 2;
  std::vector<double> profile;
  std::vector<std::size_t> copy_a;  // original vertex -> doubled vertex
  std::vector<std::size_t> copy_b;
  std::vector<NeckVertex> neck;
  SecondFundamentalField sff[2];
  double volume = 0.0;
  double neck_volume = 0.0;
};

inline constexpr double kNeckPositivityMargin = 0.5;

// Largest delta keeping the smallest eigenvalue of h_0^delta relative to h at
// least eta0, found by bisection; infinity when A never lowers it.
double max_neck_delta(const MetricField& g0, double eta0 = kNeckPositivityMargin, int neck_intervals = 16);

// M, the neck Sigma x [-delta, delta], then the mirrored copy of M, glued
// periodically along axis 0. Throws positivity-failure when the neck loses
// the margin and dominance-failure when g_alpha < g_0 on the boundary.
NeckAssembly build_doubling(const MetricField& g_alpha, const MetricField& g0, double delta, int neck_intervals = 16);

struct NeckCheck {
  double max_deviation = 0.0;  // max |h(z,t) - h(z,-delta)|_h over neck vertices
  double bound = 0.0;          // 4 (m - 1) C delta
  bool mirror_exact = true;
  double min_eta = 1.0;
};
NeckCheck check_neck(const NeckAssembly& assembly);

struct DoubledDistanceReport {
  double max_difference = 0.0;
  double analytic_bound = 0.0;   // 2 eta^-1 sqrt(C delta) Diam
  double slack = 0.0;         // twice the metrication allowance
  double diameter = 0.0;
  bool never_longer = true;   // d^delta <= d on every pair
  std::size_t pairs = 0;
  bool passed() const { return never_longer && max_difference <= analytic_bound + slack; }
};
DoubledDistanceReport doubled_distance_check(const NeckAssembly& assembly, const MetricField& g_alpha,
                                             const SampleSet& samples, int workers = 0);

}  // namespace vadb
