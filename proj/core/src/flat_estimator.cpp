#include "vadb/flat_estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "vadb/error.hpp"

namespace vadb {

const char* mode_name(HypothesisMode m) noexcept {
  switch (m) {
    case HypothesisMode::boundary_norm: return "boundary-norm";
    case HypothesisMode::interior_lm2: return "interior-Lm/2";
    case HypothesisMode::convex_interior: return "convex-interior";
  }
  return "unknown";
}

HypothesisMode parse_mode(const std::string& name) {
  if (name == "boundary-norm") return HypothesisMode::boundary_norm;
  if (name == "interior-Lm/2" || name == "interior") return HypothesisMode::interior_lm2;
  if (name == "convex-interior" || name == "convex") return HypothesisMode::convex_interior;
  throw Error(Errc::invalid_argument, "unknown mode '" + name + "'");
}

bool converges_to_zero(const std::vector<double>& x, double scale) {
  if (x.empty()) return true;
  const double tiny = 1e-9 * std::max(1.0, std::abs(scale));
  if (std::abs(x.back()) <= tiny) return true;
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (x[i] > x[i - 1] * (1.0 + 1e-12) + tiny) return false;
  }
  return x.back() <= 0.5 * x.front();
}

FlatBoundReport vadb_report(const ReportOptions& opts) {
  if (opts.j_list.empty()) throw Error(Errc::invalid_argument, "j list is empty");
  if (!(opts.kappa > 1.0)) throw Error(Errc::invalid_argument, "kappa must exceed 1");
  std::vector<int> js = opts.j_list;
  std::sort(js.begin(), js.end());
  js.erase(std::unique(js.begin(), js.end()), js.end());

  FamilyParams base = opts.params;
  base.j = js.front();
  const ParamDomain dom = family_domain(base, opts.resolution.empty() ? 0 : opts.resolution[0]);
  auto mesh = std::make_shared<const Mesh>(build_grid_mesh(dom, opts.resolution, opts.stencil));
  const int m = mesh->dim();
  const FamilyTraits traits = family_traits(base.family);

  const MetricField g0 = sample_metric(background_spec(base, dom), mesh);
  const SampleSet samples = stratified_samples(*mesh, opts.samples, opts.seed);
  const GraphMetric gm0 = build_graph_metric(g0, opts.workers);
  const DistanceMatrix dm0 = distance_matrix(gm0, samples.ids, samples.weights(g0), opts.workers);
  const double diam0 = std::max(diameter(dm0), diameter_sweep(gm0, samples.ids.front()));
  const bool has_boundary = !mesh->boundary_components().empty();

  FlatBoundReport rep;
  rep.family = base.family;
  rep.mode = opts.mode;
  rep.vol0 = volume(g0);

  std::vector<DistanceMatrix> dms;
  for (int j : js) {
    FamilyParams p = base;
    p.j = j;
    const MetricField gj = sample_metric(family_spec(p, dom), mesh);
    FlatBoundRow row;
    row.j = j;
    row.samples = samples.ids.size();
    const double slack = opts.dominance_slack ? 1.0 - 1.0 / j : 1.0;
    const DominanceReport dr = dominance_check(g0, gj, 1e-12, slack);
    row.dominance_pass = dr.passed();
    row.dominance_min_eig = dr.min_eigenvalue;
    const GraphMetric gmj = reweight(gm0.graph, gj, opts.workers);
    DistanceMatrix dmj = distance_matrix(gmj, samples.ids, samples.weights(gj), opts.workers);
    row.diam = std::max(diameter(dmj), diameter_sweep(gmj, samples.ids.front()));
    row.vol = volume(gj);
    row.bdry_area = has_boundary ? boundary_area(gj) : 0.0;
    row.bdry_norm = has_boundary ? boundary_lp_distance(gj, g0, g0, 0.5 * (m - 1)) : 0.0;
    row.interior_norm = lp_metric_distance(gj, g0, g0, 0.5 * m);
    rep.rows.push_back(row);
    dms.push_back(std::move(dmj));
  }
  for (const auto& r : rep.rows) {
    rep.D = std::max(rep.D, r.diam);
    rep.V = std::max(rep.V, r.vol);
    rep.A = std::max(rep.A, r.bdry_area);
  }

  // lambda schedule: eps is the smallest sampled g_0-ball volume of radius lambda/2
  // over 2 kappa Vol_0, which keeps kappa * eps below 1/2.
  const std::size_t n = dm0.size();
  for (std::size_t r = 0; r < rep.rows.size(); ++r) {
    FlatBoundRow& row = rep.rows[r];
    row.flat_bound = std::numeric_limits<double>::infinity();
    for (double div : {8.0, 16.0, 32.0}) {
      const double lambda = diam0 / div;
      double min_ball = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < n; ++i) {
        double ball = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          if (dm0(i, k) <= 0.5 * lambda) ball += dm0.weights[k];
        }
        min_ball = std::min(min_ball, ball);
      }
      const double eps = min_ball / (2.0 * opts.kappa * rep.vol0);
      const GoodSet gs = good_set(dm0, dms[r], eps, opts.kappa);
      const double delta_j = 0.5 * std::max(0.0, gs.sup_excess);
      const double h = neck_height(delta_j, rep.D);
      const double bound = flat_bound(gs.excluded_volume, h, rep.V, rep.A);
      if (bound < row.flat_bound) {
        row.flat_bound = bound;
        row.V_j = gs.excluded_volume;
        row.delta_j = delta_j;
        row.h_j = h;
        row.lambda = lambda;
        row.eps = eps;
        row.good_points = gs.selected.size();
      }
    }
  }

  std::vector<double> vol_gap, bnorm, inorm;
  HypothesisFlags& f = rep.flags;
  f.dominance = true;
  for (const auto& r : rep.rows) {
    f.dominance = f.dominance && r.dominance_pass;
    vol_gap.push_back(std::abs(r.vol - rep.vol0));
    bnorm.push_back(r.bdry_norm);
    inorm.push_back(r.interior_norm);
  }
  f.diameter_bounded = std::isfinite(rep.D);
  f.boundary_area_bounded = std::isfinite(rep.A);
  f.volume_converges = converges_to_zero(vol_gap, rep.vol0);
  f.boundary_norm_converges = converges_to_zero(bnorm, rep.vol0);
  f.interior_norm_converges = converges_to_zero(inorm, rep.vol0);
  f.convex_declared = traits.convex_interior;
  const bool common = f.dominance && f.diameter_bounded && f.volume_converges;
  switch (opts.mode) {
    case HypothesisMode::boundary_norm:
      rep.hypotheses_pass = common && f.boundary_area_bounded && f.boundary_norm_converges;
      break;
    case HypothesisMode::interior_lm2:
      rep.hypotheses_pass = common && f.boundary_area_bounded && f.interior_norm_converges;
      break;
    case HypothesisMode::convex_interior:
      rep.hypotheses_pass = common && f.convex_declared;
      break;
  }
  return rep;
}

}  // namespace vadb
