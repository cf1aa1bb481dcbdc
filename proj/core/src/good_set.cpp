#include <algorithm>
#include <cmath>
#include <numeric>

#include "vadb/error.hpp"
#include "vadb/flat_estimator.hpp"

namespace vadb {

GoodSet good_set(const DistanceMatrix& d0, const DistanceMatrix& dj, double eps, double kappa) {
  if (d0.samples != dj.samples) throw Error(Errc::invalid_argument, "distance matrices use different samples");
  if (!(kappa > 1.0)) throw Error(Errc::invalid_argument, "kappa must exceed 1");
  if (!(eps > 0.0) || !(kappa * eps < 1.0)) throw Error(Errc::invalid_argument, "need 0 < eps and kappa * eps < 1");
  const std::size_t n = d0.size();
  const std::vector<double>& w0 = d0.weights;
  const std::vector<double>& wj = dj.weights;
  GoodSet gs;
  gs.eps = eps;
  gs.kappa = kappa;
  gs.total_volume_0 = std::accumulate(w0.begin(), w0.end(), 0.0);
  gs.total_volume_j = std::accumulate(wj.begin(), wj.end(), 0.0);
  if (n == 0) return gs;

  struct Pair {
    double disc;
    double weight;
  };
  std::vector<Pair> pairs;
  pairs.reserve(n * n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const double w = w0[i] * w0[k];
      pairs.push_back({std::abs(dj(i, k) - d0(i, k)), w});
      total += w;
    }
  }
  if (!(total > 0.0) || !std::isfinite(total)) throw Error(Errc::infeasible, "pair weights are not positive and finite");
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) { return a.disc < b.disc; });
  const double target = (1.0 - eps) * total;
  double acc = 0.0;
  bool found = false;
  for (std::size_t p = 0; p < pairs.size();) {
    const double value = pairs[p].disc;
    while (p < pairs.size() && pairs[p].disc == value) acc += pairs[p++].weight;
    if (acc >= target) {
      gs.threshold = value;
      found = true;
      break;
    }
  }
  if (!found) throw Error(Errc::infeasible, "no threshold reaches the pair-measure target");

  double within = 0.0;
  for (const Pair& p : pairs) {
    if (p.disc <= gs.threshold) within += p.weight;
  }
  gs.pair_fraction = within / total;

  const double row_total = gs.total_volume_0;
  gs.slice_fraction.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (std::abs(dj(i, k) - d0(i, k)) <= gs.threshold) s += w0[k];
    }
    gs.slice_fraction[i] = s / row_total;
    if (gs.slice_fraction[i] > 1.0 - kappa * eps) {
      gs.selected.push_back(i);
    } else {
      gs.excluded_volume += wj[i];
    }
  }
  for (std::size_t a : gs.selected) {
    for (std::size_t b : gs.selected) {
      const double diff = dj(a, b) - d0(a, b);
      gs.sup_discrepancy = std::max(gs.sup_discrepancy, std::abs(diff));
      gs.sup_excess = std::max(gs.sup_excess, diff);
    }
  }
  return gs;
}

double neck_height(double delta_j, double D) {
  if (delta_j < 0.0 || D < 0.0) throw Error(Errc::negative_input, "neck height needs delta_j >= 0 and D >= 0");
  return std::sqrt(2.0 * delta_j * D + delta_j * delta_j);
}

double flat_bound(double V_j, double h_j, double V, double A) {
  if (V_j < 0.0 || h_j < 0.0 || V < 0.0 || A < 0.0) throw Error(Errc::negative_input, "flat bound inputs must be >= 0");
  return 2.0 * V_j + h_j * V + h_j * A;
}

}  // namespace vadb
