#include <doctest.h>

#include <cmath>
#include <memory>
#include <numbers>
#include <random>

#include "support/oracles.hpp"
#include "vadb/error.hpp"
#include "vadb/families.hpp"
#include "vadb/geometry.hpp"

using namespace vadb;

namespace {
constexpr double kPi = std::numbers::pi;

Tensor random_spd(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Tensor a(2, 2);
  a << u(rng), u(rng), u(rng), u(rng);
  return a * a.transpose() + 0.2 * Tensor::Identity(2, 2);
}

MetricField flat_field(FlatDomain d, int res, int stencil = 3) {
  FamilyParams p;
  p.flat_domain = d;
  const ParamDomain dom = family_domain(p);
  auto mesh = std::make_shared<const Mesh>(build_grid_mesh(dom, {res, res}, stencil));
  return sample_metric(family_spec(p, dom), mesh);
}
}  // namespace

TEST_CASE("edge length matches a fine midpoint oracle") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 50; ++i) {
    const Tensor a = random_spd(rng);
    const Tensor b = a + 0.1 * random_spd(rng);
    Vec d(2);
    d << 0.03 * (i % 7 - 3), 0.02 * (i % 5 - 2) + 0.01;
    CHECK(edge_length(a, b, d) == doctest::Approx(oracle::segment_length(a, b, d)).epsilon(1e-5));
  }
}

TEST_CASE("graph weights are bitwise symmetric") {
  const ParamDomain dom = ParamDomain::rectangle({{0, kPi}, {0, 2 * kPi}}, {false, true});
  auto mesh = std::make_shared<const Mesh>(build_grid_mesh(dom, {12, 12}, 3));
  const MetricField g = sample_metric(warped_spec(dom, [](double r) { return 1 + std::sin(r); }), mesh);
  const GraphMetric gm = build_graph_metric(g);
  for (std::size_t u = 0; u < gm.graph.num_vertices(); ++u) {
    for (std::size_t e = gm.graph.row[u]; e < gm.graph.row[u + 1]; ++e) {
      const std::size_t v = gm.graph.target[e];
      bool found = false;
      for (std::size_t f = gm.graph.row[v]; f < gm.graph.row[v + 1]; ++f) {
        if (gm.graph.target[f] == u && gm.weight[f] == gm.weight[e]) found = true;
      }
      CHECK(found);
    }
  }
}

TEST_CASE("heap Dijkstra agrees with a dense O(V^2) oracle") {
  const ParamDomain dom = ParamDomain::rectangle({{0, kPi}, {0, 2 * kPi}}, {false, true});
  auto mesh = std::make_shared<const Mesh>(build_grid_mesh(dom, {14, 14}, 2));
  const MetricField g = sample_metric(warped_spec(dom, [](double r) { return 1 + 0.5 * std::cos(2 * r); }), mesh);
  const GraphMetric gm = build_graph_metric(g);
  for (std::size_t s : {std::size_t{0}, std::size_t{57}, mesh->num_vertices() - 1}) {
    const auto fast = shortest_paths(gm, {s});
    const auto slow = oracle::dense_dijkstra(gm, s);
    for (std::size_t v = 0; v < fast.size(); ++v) CHECK(fast[v] == doctest::Approx(slow[v]).epsilon(1e-14));
  }
}

TEST_CASE("flat square distances are within the metrication allowance") {
  const MetricField g = flat_field(FlatDomain::square, 64);
  const GraphMetric gm = build_graph_metric(g);
  const Mesh& m = g.mesh();
  const auto d = shortest_paths(gm, {m.vertex_at({0, 0, 0, 0})});
  const double diag = d[m.vertex_at({63, 63, 0, 0})];
  CHECK(std::abs(diag - std::sqrt(2.0)) <= kMetricationFraction * std::sqrt(2.0));
  CHECK(diag >= std::sqrt(2.0) - 1e-12);
  const double knight = d[m.vertex_at({42, 21, 0, 0})];
  CHECK(knight == doctest::Approx(std::hypot(42.0, 21.0) / 63.0).epsilon(1e-12));
}

TEST_CASE("flat cylinder volume, boundary area and diameter") {
  const MetricField g = flat_field(FlatDomain::cylinder, 64);
  CHECK(volume(g) == doctest::Approx(4 * kPi * kPi).epsilon(1e-12));
  CHECK(boundary_area(g) == doctest::Approx(4 * kPi).epsilon(1e-12));
  CHECK(boundary_area(g, 0) == doctest::Approx(2 * kPi).epsilon(1e-12));
  CHECK_THROWS_AS(boundary_area(g, 5), Error);
  const SampleSet s = stratified_samples(g.mesh(), 256, 0);
  const DistanceMatrix dm = distance_matrix(g, s);
  CHECK(diameter(dm) <= kPi * std::sqrt(5.0) * (1 + kMetricationFraction));
  CHECK(diameter(dm) >= 0.9 * kPi * std::sqrt(5.0));
}

TEST_CASE("distance matrices are symmetric with zero diagonal and satisfy the triangle inequality") {
  const MetricField g = flat_field(FlatDomain::torus, 24);
  const DistanceMatrix dm = distance_matrix(g, stratified_samples(g.mesh(), 40, 5));
  for (std::size_t i = 0; i < dm.size(); ++i) {
    CHECK(dm(i, i) == 0.0);
    for (std::size_t j = 0; j < dm.size(); ++j) {
      CHECK(dm(i, j) == dm(j, i));
      for (std::size_t k = 0; k < dm.size(); ++k) CHECK(dm(i, k) <= dm(i, j) + dm(j, k) + 1e-12);
    }
  }
}

TEST_CASE("stratified samples are seeded and carry the stratum volumes") {
  const MetricField g = flat_field(FlatDomain::cylinder, 32);
  const SampleSet a = stratified_samples(g.mesh(), 64, 9);
  const SampleSet b = stratified_samples(g.mesh(), 64, 9);
  const SampleSet c = stratified_samples(g.mesh(), 64, 10);
  CHECK(a.ids == b.ids);
  CHECK(a.ids != c.ids);
  CHECK(a.ids.size() <= 64);
  double total = 0.0;
  for (double w : a.weights(g)) total += w;
  CHECK(total == doctest::Approx(volume(g)).epsilon(1e-12));
  CHECK(all_vertices(g.mesh()).ids.size() == g.mesh().num_vertices());
}

TEST_CASE("Lp metric distance of a constant conformal rescaling") {
  const ParamDomain dom = ParamDomain::rectangle({{0, 1}, {0, 1}}, {false, false});
  auto mesh = std::make_shared<const Mesh>(build_grid_mesh(dom, {8, 8}, 1));
  const MetricField g0 = sample_metric(constant_spec(dom, Tensor::Identity(2, 2)), mesh);
  const MetricField g2 = sample_metric(constant_spec(dom, 2.0 * Tensor::Identity(2, 2)), mesh);
  CHECK(lp_metric_distance(g2, g0, g0, 1.0) == doctest::Approx(std::sqrt(2.0)));
  CHECK(lp_metric_distance(g2, g0, g0, 2.0) == doctest::Approx(std::sqrt(2.0)));
  // Each boundary side has unit length and a unit tangent difference.
  CHECK(boundary_lp_distance(g2, g0, g0, 0.5) == doctest::Approx(16.0));
  CHECK_THROWS_AS(lp_metric_distance(g2, g0, g0, 0.0), Error);
}

TEST_CASE("dominance check reports the minimum eigenvalue") {
  const ParamDomain dom = ParamDomain::rectangle({{0, 1}, {0, 1}}, {false, false});
  auto mesh = std::make_shared<const Mesh>(build_grid_mesh(dom, {4, 4}, 1));
  Tensor a = Tensor::Identity(2, 2);
  Tensor b = a;
  b(1, 1) = 0.25;
  const MetricField ga = sample_metric(constant_spec(dom, a), mesh);
  const MetricField gb = sample_metric(constant_spec(dom, b), mesh);
  const DominanceReport r = dominance_check(ga, gb, 1e-12);
  CHECK_FALSE(r.passed());
  CHECK(r.min_eigenvalue == doctest::Approx(-0.75));
  CHECK(r.violations == mesh->num_vertices());
  CHECK(dominance_check(gb, ga, 0.0).passed());
  CHECK(dominance_check(ga, gb, 0.0, 0.25).passed());
}
