#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "vadb/metric_field.hpp"

namespace vadb {

// Length of the straight parameter segment with displacement d under a metric
// interpolated linearly from g_u to g_v (3-point Gauss).
double edge_length(const Tensor& g_u, const Tensor& g_v, const Vec& d);
double edge_length(const MetricField& field, std::size_t u, std::size_t v, const Vec& d);

// Edge graph with metric weights. Weights are symmetric bit-for-bit.
struct GraphMetric {
  EdgeGraph graph;
  std::vector<double> weight;
};
GraphMetric build_graph_metric(const MetricField& field, int workers = 0);
GraphMetric reweight(const EdgeGraph& graph, const MetricField& field, int workers = 0);

// Single- or multi-source shortest paths over the whole vertex set.
std::vector<double> shortest_paths(const GraphMetric& gm, const std::vector<std::size_t>& sources);

struct DistanceMatrix {
  std::vector<std::size_t> samples;
  Eigen::MatrixXd d;
  std::vector<double> weights;

  std::size_t size() const { return samples.size(); }
  double operator()(std::size_t i, std::size_t j) const { return d(i, j); }
};

// Stratified subsample: grid-index blocks with at most `max_samples` blocks,
// one vertex drawn per block with a seeded generator.
struct SampleSet {
  std::vector<std::size_t> ids;
  std::vector<std::vector<std::size_t>> strata;
  std::uint64_t seed = 0;

  // Riemannian volume of each stratum under `field`.
  std::vector<double> weights(const MetricField& field) const;
};
SampleSet stratified_samples(const Mesh& mesh, std::size_t max_samples = 512, std::uint64_t seed = 0);
// Every vertex is its own stratum.
SampleSet all_vertices(const Mesh& mesh);

// Pairwise shortest-path distances between samples, symmetrised by min.
// Throws disconnected-graph when a sample is unreachable.
DistanceMatrix distance_matrix(const GraphMetric& gm, const std::vector<std::size_t>& samples,
                               std::vector<double> weights, int workers = 0);
DistanceMatrix distance_matrix(const MetricField& field, const SampleSet& samples, int workers = 0);

double diameter(const DistanceMatrix& dm);
// Repeated farthest-point sweeps from `start`; a lower bound on the diameter.
double diameter_sweep(const GraphMetric& gm, std::size_t start, int sweeps = 4);

double volume(const MetricField& field);
// Area of one boundary component, or of the whole boundary for component < 0.
double boundary_area(const MetricField& field, int component = -1);

// (integral |g_a - g_b|_base^p dvol_base)^(1/p); Frobenius norm in a base-orthonormal frame.
double lp_metric_distance(const MetricField& g_a, const MetricField& g_b, const MetricField& base, double p);
// Same on boundary facets, for tensors restricted to the tangent axes and measured against h.
double boundary_lp_distance(const MetricField& g_a, const MetricField& g_b, const MetricField& h, double p,
                            int component = -1);

struct DominanceReport {
  double min_eigenvalue = 0.0;
  std::size_t violations = 0;
  std::size_t worst_vertex = 0;
  double tolerance = 0.0;
  double slack = 1.0;
  bool passed() const { return violations == 0; }
};
// Minimum eigenvalue of g_b - slack * g_a over vertices; passes iff >= -tol.
DominanceReport dominance_check(const MetricField& g_a, const MetricField& g_b, double tol, double slack = 1.0);

// Engineering allowance for stencil-3 graph metrication relative to the diameter.
inline constexpr double kMetricationFraction = 0.015;

}  // namespace vadb
