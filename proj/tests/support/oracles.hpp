#pragma once

// Independent reference computations used by the unit and acceptance tests.

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <random>
#include <set>
#include <vector>

#include "vadb/geometry.hpp"

namespace oracle {

// Adaptive Simpson with Richardson correction.
inline double simpson(const std::function<double(double)>& f, double a, double b, double tol = 1e-12, int depth = 50) {
  struct Rec {
    static double run(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
                      double whole, double tol, int depth) {
      const double m = 0.5 * (a + b);
      const double lm = 0.5 * (a + m);
      const double rm = 0.5 * (m + b);
      const double flm = f(lm);
      const double frm = f(rm);
      const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
      const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
      const double diff = left + right - whole;
      if (depth <= 0 || std::abs(diff) <= 15.0 * tol) return left + right + diff / 15.0;
      return run(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
             run(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
    }
  };
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return Rec::run(f, a, b, fa, fm, fb, whole, tol, depth);
}

// Tensor-product Simpson over a rectangle.
inline double simpson2(const std::function<double(double, double)>& f, double ax, double bx, double ay, double by,
                       double tol = 1e-10) {
  return simpson([&](double x) { return simpson([&](double y) { return f(x, y); }, ay, by, tol); }, ax, bx, tol);
}

// Composite midpoint with many panels: length of a segment under linear interpolation of the metric.
inline double segment_length(const vadb::Tensor& ga, const vadb::Tensor& gb, const vadb::Vec& d, int panels = 4096) {
  double s = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double t = (i + 0.5) / panels;
    const vadb::Tensor g = (1.0 - t) * ga + t * gb;
    s += std::sqrt(d.dot(g * d));
  }
  return s / panels;
}

// Plain O(V^2) Dijkstra over the edge list of a graph metric.
inline std::vector<double> dense_dijkstra(const vadb::GraphMetric& gm, std::size_t source) {
  const std::size_t n = gm.graph.num_vertices();
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  std::vector<char> done(n, 0);
  dist[source] = 0.0;
  for (std::size_t it = 0; it < n; ++it) {
    std::size_t u = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (!done[v] && (u == n || dist[v] < dist[u])) u = v;
    }
    if (u == n || !std::isfinite(dist[u])) break;
    done[u] = 1;
    for (std::size_t e = gm.graph.row[u]; e < gm.graph.row[u + 1]; ++e) {
      const std::size_t v = gm.graph.target[e];
      dist[v] = std::min(dist[v], dist[u] + gm.weight[e]);
    }
  }
  return dist;
}

struct GoodSetResult {
  double threshold = 0.0;
  std::vector<std::size_t> selected;
  double sup_discrepancy = 0.0;
};

// Exhaustive good set: every candidate threshold in increasing order and every
// subset of samples; the selected set is the largest subset whose members all
// have slice measure above 1 - kappa * eps.
inline GoodSetResult brute_good_set(const std::vector<std::vector<double>>& d0,
                                    const std::vector<std::vector<double>>& dj, const std::vector<double>& w,
                                    double eps, double kappa) {
  const std::size_t n = w.size();
  std::set<double> candidates;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) candidates.insert(std::abs(dj[i][k] - d0[i][k]));
  double total = 0.0;
  for (double a : w)
    for (double b : w) total += a * b;
  GoodSetResult r;
  for (double t : candidates) {
    double within = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        if (std::abs(dj[i][k] - d0[i][k]) <= t) within += w[i] * w[k];
    if (within >= (1.0 - eps) * total) {
      r.threshold = t;
      break;
    }
  }
  double wsum = 0.0;
  for (double a : w) wsum += a;
  std::uint32_t best = 0;
  int best_size = -1;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      if (!(mask >> i & 1u)) continue;
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        if (std::abs(dj[i][k] - d0[i][k]) <= r.threshold) s += w[k];
      ok = s / wsum > 1.0 - kappa * eps;
    }
    const int size = __builtin_popcount(mask);
    if (ok && size > best_size) {
      best = mask;
      best_size = size;
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    if (best >> i & 1u) r.selected.push_back(i);
  for (std::size_t a : r.selected)
    for (std::size_t b : r.selected) r.sup_discrepancy = std::max(r.sup_discrepancy, std::abs(dj[a][b] - d0[a][b]));
  return r;
}

// Random small instance on dyadic grids so every sum is exact.
struct SmallInstance {
  vadb::DistanceMatrix d0, dj;
  std::vector<std::vector<double>> a0, aj;
  std::vector<double> w;
};

inline SmallInstance random_instance(std::mt19937_64& rng, std::size_t n) {
  SmallInstance s;
  std::uniform_int_distribution<int> dist(0, 16);
  std::uniform_int_distribution<int> weight(1, 8);
  s.a0.assign(n, std::vector<double>(n, 0.0));
  s.aj = s.a0;
  for (std::size_t i = 0; i < n; ++i) {
    s.w.push_back(weight(rng) / 8.0);
    for (std::size_t k = i + 1; k < n; ++k) {
      s.a0[i][k] = s.a0[k][i] = dist(rng) / 4.0;
      s.aj[i][k] = s.aj[k][i] = s.a0[i][k] + (rng() % 3 == 0 ? dist(rng) / 4.0 : 0.0);
    }
  }
  for (auto* m : {&s.d0, &s.dj}) {
    m->d.resize(n, n);
    m->weights = s.w;
    for (std::size_t i = 0; i < n; ++i) m->samples.push_back(i);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      s.d0.d(i, k) = s.a0[i][k];
      s.dj.d(i, k) = s.aj[i][k];
    }
  return s;
}

}  // namespace oracle
