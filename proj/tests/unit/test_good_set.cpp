#include <doctest.h>

#include <random>

#include "support/oracles.hpp"
#include "vadb/error.hpp"
#include "vadb/flat_estimator.hpp"

using namespace vadb;

namespace {
DistanceMatrix matrix(const std::vector<std::vector<double>>& a, std::vector<double> w) {
  DistanceMatrix m;
  const std::size_t n = a.size();
  m.d.resize(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m.samples.push_back(i);
    for (std::size_t k = 0; k < n; ++k) m.d(i, k) = a[i][k];
  }
  m.weights = std::move(w);
  return m;
}

std::vector<std::vector<double>> ones(std::size_t n) {
  std::vector<std::vector<double>> a(n, std::vector<double>(n, 1.0));
  for (std::size_t i = 0; i < n; ++i) a[i][i] = 0.0;
  return a;
}
}  // namespace

TEST_CASE("identical distances give the trivial good set") {
  const DistanceMatrix d = matrix(ones(5), std::vector<double>(5, 0.2));
  const GoodSet gs = good_set(d, d, 0.05, 4.0);
  CHECK(gs.threshold == 0.0);
  CHECK(gs.selected.size() == 5);
  CHECK(gs.sup_discrepancy == 0.0);
  CHECK(gs.excluded_volume == 0.0);
}

TEST_CASE("four point instance") {
  auto aj = ones(4);
  aj[1][2] = aj[2][1] = 3.0;
  const DistanceMatrix d0 = matrix(ones(4), std::vector<double>(4, 1.0));
  const DistanceMatrix dj = matrix(aj, std::vector<double>(4, 1.0));
  const GoodSet a = good_set(d0, dj, 0.3, 2.0);
  CHECK(a.threshold == 0.0);
  CHECK(a.pair_fraction == doctest::Approx(14.0 / 16.0));
  CHECK(a.selected.size() == 4);
  CHECK(a.sup_discrepancy == 2.0);
  CHECK(a.excluded_volume == 0.0);
  const GoodSet b = good_set(d0, dj, 0.06, 10.0);
  CHECK(b.threshold == 2.0);
  CHECK(b.selected.size() == 4);
}

TEST_CASE("good set preconditions") {
  const DistanceMatrix d = matrix(ones(3), std::vector<double>(3, 1.0));
  CHECK_THROWS_AS(good_set(d, d, 0.1, 1.0), Error);
  CHECK_THROWS_AS(good_set(d, d, 0.0, 2.0), Error);
  CHECK_THROWS_AS(good_set(d, d, 0.5, 2.0), Error);
}

TEST_CASE("good set matches the exhaustive oracle on small instances") {
  std::mt19937_64 rng(11);
  for (std::size_t n = 1; n <= 6; ++n) {
    for (int rep = 0; rep < 100; ++rep) {
      const oracle::SmallInstance s = oracle::random_instance(rng, n);
      const GoodSet gs = good_set(s.d0, s.dj, 0.1, 3.0);
      const oracle::GoodSetResult br = oracle::brute_good_set(s.a0, s.aj, s.w, 0.1, 3.0);
      CHECK(gs.threshold == br.threshold);
      CHECK(gs.selected == br.selected);
      CHECK(gs.sup_discrepancy == br.sup_discrepancy);
      for (std::size_t i : gs.selected) CHECK(gs.slice_fraction[i] > 1.0 - 0.3);
    }
  }
}
