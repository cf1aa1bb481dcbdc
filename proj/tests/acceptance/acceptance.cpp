// One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <functional>
#include <memory>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "../support/oracles.hpp"
#include "vadb/doubling.hpp"
#include "vadb/error.hpp"
#include "vadb/experiments.hpp"
#include "vadb/flat_estimator.hpp"
#include "vadb/report_io.hpp"

using namespace vadb;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string num(double x) { return format_number(x); }

double rel(double value, double target) { return std::abs(value - target) / std::abs(target); }

MetricField family_field(ProfileId id, int j, const std::vector<int>& res, std::shared_ptr<const Mesh>* mesh_out,
                         bool background = false) {
  FamilyParams p;
  p.family = id;
  p.j = j;
  const ParamDomain dom = family_domain(p, res[0]);
  auto mesh = mesh_out && *mesh_out ? *mesh_out : std::make_shared<const Mesh>(build_grid_mesh(dom, res, 3));
  if (mesh_out) *mesh_out = mesh;
  return sample_metric(background ? background_spec(p, dom) : family_spec(p, dom), mesh);
}

Outcome criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  FamilyParams p;
  const ParamDomain dom = family_domain(p);
  auto mesh = std::make_shared<const Mesh>(build_grid_mesh(dom, {128, 128}, 3));
  const MetricField g = sample_metric(family_spec(p, dom), mesh);
  const double vol = volume(g);
  const GraphMetric gm = build_graph_metric(g);
  const DistanceMatrix dm = distance_matrix(g, stratified_samples(*mesh, 512, 0));
  const double diam = std::max(diameter(dm), diameter_sweep(gm, dm.samples.front()));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double target_vol = 4 * kPi * kPi;
  const double target_diam = kPi * std::sqrt(5.0);
  Outcome o;
  o.pass = rel(vol, target_vol) <= 0.005 && rel(diam, target_diam) <= 0.02 && secs < 10.0;
  o.detail = "vol=" + num(vol) + " diam=" + num(diam) + " (target " + num(target_diam) + ") t=" + num(secs) + "s";
  return o;
}

Outcome criterion2() {
  struct Case {
    ProfileId id;
    int j;
    double target;
  };
  const Case cases[] = {{ProfileId::taxi_finsler, 8, 20 * kPi * kPi},
                        {ProfileId::bubble_torus, 32, kPi + 4 * kPi * kPi},
                        {ProfileId::spline_torus, 32, 4 * kPi * kPi}};
  Outcome o{true, ""};
  for (const Case& c : cases) {
    const double v = volume(family_field(c.id, c.j, {128, 128}, nullptr));
    const double e = rel(v, c.target);
    o.pass = o.pass && e <= 0.01;
    o.detail += std::string(profile_name(c.id)) + " rel=" + num(e) + " ";
  }
  return o;
}

Outcome criterion3() {
  Outcome o{true, ""};
  for (ProfileId id : all_profiles()) {
    const FamilyTraits t = family_traits(id);
    if (!t.dominating || id == ProfileId::flat || id == ProfileId::pmt_graph) continue;
    // The taxi family has 2^j cinches; j = 4 keeps them resolvable on the grid.
    const int j = id == ProfileId::taxi_finsler ? 4 : 8;
    std::shared_ptr<const Mesh> mesh;
    const MetricField g0 = family_field(id, j, {64, 64}, &mesh, true);
    const MetricField gj = family_field(id, j, {64, 64}, &mesh);
    const GraphMetric gm0 = build_graph_metric(g0);
    const GraphMetric gmj = reweight(gm0.graph, gj);
    const SampleSet s = stratified_samples(*mesh, 160, 0);
    const DistanceMatrix d0 = distance_matrix(gm0, s.ids, s.weights(g0));
    const DistanceMatrix dj = distance_matrix(gmj, s.ids, s.weights(gj));
    std::size_t pairs = 0, bad = 0;
    for (std::size_t i = 0; i < d0.size(); ++i) {
      for (std::size_t k = i + 1; k < d0.size(); ++k) {
        ++pairs;
        if (dj(i, k) < d0(i, k)) ++bad;
      }
    }
    o.pass = o.pass && bad == 0 && pairs >= 10000;
    o.detail += std::string(profile_name(id)) + " pairs=" + std::to_string(pairs) + " bad=" + std::to_string(bad) + " ";
  }
  return o;
}

// Warped product on [0, pi] x S^1 with a tapered background, so the boundary is curved.
struct Tapered {
  std::shared_ptr<const Mesh> mesh;
  std::unique_ptr<MetricField> g0, gj;
};

Tapered tapered_pair(int res) {
  const ParamDomain dom = ParamDomain::rectangle({{0.0, kPi}, {0.0, 2 * kPi}}, {false, true});
  Tapered t;
  t.mesh = std::make_shared<const Mesh>(build_grid_mesh(dom, {res, res}, 3));
  auto f0 = [](double r) { return 1.0 + 0.2 * (r - kPi); };
  auto fj = [f0](double r) { return f0(r) * (1.0 + 0.5 * std::sin(r) * std::sin(r)); };
  t.g0 = std::make_unique<MetricField>(sample_metric(warped_spec(dom, f0), t.mesh));
  t.gj = std::make_unique<MetricField>(sample_metric(warped_spec(dom, fj), t.mesh));
  return t;
}

Outcome criterion4() {
  Outcome o{true, ""};
  struct Pair {
    std::string name;
    const MetricField* g0;
    const MetricField* gj;
  };
  std::shared_ptr<const Mesh> ridge_mesh, taxi_mesh;
  const MetricField r0 = family_field(ProfileId::single_ridge, 8, {64, 64}, &ridge_mesh, true);
  const MetricField rj = family_field(ProfileId::single_ridge, 8, {64, 64}, &ridge_mesh);
  const MetricField t0 = family_field(ProfileId::taxi_finsler, 4, {64, 64}, &taxi_mesh, true);
  const MetricField tj = family_field(ProfileId::taxi_finsler, 4, {64, 64}, &taxi_mesh);
  const Tapered tp = tapered_pair(64);
  const Pair pairs[] = {{"single-ridge", &r0, &rj}, {"taxi-finsler", &t0, &tj}, {"tapered", tp.g0.get(), tp.gj.get()}};
  for (const Pair& p : pairs) {
    double worst_gap = -1e300, worst_eig = 1e300;
    bool mirror = true;
    for (double delta : {0.1, 0.05, 0.025}) {
      const NeckAssembly aj = build_doubling(*p.gj, *p.g0, delta);
      const NeckAssembly a0 = build_doubling(*p.g0, *p.g0, delta);
      const NeckCheck c = check_neck(aj);
      worst_gap = std::max(worst_gap, c.max_deviation - c.bound);
      mirror = mirror && c.mirror_exact && check_neck(a0).mirror_exact;
      const DominanceReport dr = dominance_check(*a0.metric, *aj.metric, 1e-12);
      worst_eig = std::min(worst_eig, dr.min_eigenvalue);
    }
    o.pass = o.pass && worst_gap <= 1e-8 && mirror && worst_eig >= -1e-12;
    o.detail += p.name + " dev-bound=" + num(worst_gap) + " mirror=" + (mirror ? "1" : "0") +
                " min_eig=" + num(worst_eig) + " ";
  }
  return o;
}

Outcome criterion5() {
  std::shared_ptr<const Mesh> mesh;
  const MetricField g0 = family_field(ProfileId::single_ridge, 8, {64, 64}, &mesh, true);
  const MetricField ga = family_field(ProfileId::single_ridge, 8, {64, 64}, &mesh);
  const SampleSet s = stratified_samples(*mesh, 128, 0);
  Outcome o{true, ""};
  double prev = std::numeric_limits<double>::infinity();
  for (double delta : {0.1, 0.05, 0.025}) {
    const NeckAssembly as = build_doubling(ga, g0, delta);
    const DoubledDistanceReport r = doubled_distance_check(as, ga, s);
    o.pass = o.pass && r.passed() && r.max_difference <= prev;
    prev = r.max_difference;
    o.detail += "delta=" + num(delta) + " max=" + num(r.max_difference) + " bound=" +
                num(r.analytic_bound + r.slack) + " ";
  }
  return o;
}

Outcome criterion6() {
  const auto t0 = std::chrono::steady_clock::now();
  ReportOptions ro;
  ro.params.family = ProfileId::spline_torus;
  const FlatBoundReport rep = vadb_report(ro);
  ReportOptions rf;
  rf.params.family = ProfileId::flat;
  rf.j_list = {4, 8};
  rf.resolution = {64, 64};
  const FlatBoundReport flat = vadb_report(rf);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool decreasing = true;
  for (std::size_t i = 1; i < rep.rows.size(); ++i) decreasing = decreasing && rep.rows[i].flat_bound < rep.rows[i - 1].flat_bound;
  bool zero = true;
  for (const auto& r : flat.rows) zero = zero && r.flat_bound == 0.0;
  const double last = rep.rows.back().flat_bound / rep.vol0;
  Outcome o;
  o.pass = decreasing && last < 0.25 && zero && secs < 300.0;
  o.detail = "bounds=";
  for (const auto& r : rep.rows) o.detail += num(r.flat_bound) + ",";
  o.detail += " last/vol0=" + num(last) + " flat_zero=" + (zero ? "1" : "0") + " t=" + num(secs) + "s";
  return o;
}

Outcome criterion7() {
  std::mt19937_64 rng(7);
  std::size_t instances = 0, mismatches = 0;
  for (std::size_t n = 1; n <= 6; ++n) {
    for (int rep = 0; rep < 200; ++rep) {
      const oracle::SmallInstance s = oracle::random_instance(rng, n);
      for (double kappa : {2.0, 4.0}) {
        for (double eps : {0.05, 0.1, 0.2}) {
          if (kappa * eps >= 1.0) continue;
          const GoodSet gs = good_set(s.d0, s.dj, eps, kappa);
          const oracle::GoodSetResult br = oracle::brute_good_set(s.a0, s.aj, s.w, eps, kappa);
          ++instances;
          if (gs.threshold != br.threshold || gs.selected != br.selected || gs.sup_discrepancy != br.sup_discrepancy) {
            ++mismatches;
          }
        }
      }
    }
  }
  return {mismatches == 0, "instances=" + std::to_string(instances) + " mismatches=" + std::to_string(mismatches)};
}

Outcome criterion8() {
  const auto t0 = std::chrono::steady_clock::now();
  PmtOptions po;
  const PmtReport rep = pmt_graph_run(po);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const PmtRow* small = nullptr;
  for (const auto& r : rep.rows)
    if (r.mass == 0.01) small = &r;
  // Independent radial oracle: 4 pi int rho^2 sqrt(rho / (rho - 2m)) over [2m, 1].
  const double m = 0.01;
  const double ref = 4 * kPi * oracle::simpson([&](double u) {
    const double rho = 2 * m + u * u;
    return rho * rho * std::sqrt(rho) * 2.0;
  }, 0.0, std::sqrt(1.0 - 2 * m), 1e-12);
  Outcome o;
  o.pass = small && rep.excess_decreasing && rel(small->vol, ref) <= 0.02 && small->vol >= 4 * kPi / 3 &&
           small->diam_ok && small->area_ok && secs < 120.0;
  o.detail = "excess=";
  for (const auto& r : rep.rows) o.detail += num(r.vol_excess) + ",";
  if (small) {
    o.detail += " vol=" + num(small->vol) + " oracle=" + num(ref) + " diam=" + num(small->diam) + "<=" +
                num(small->diam_bound) + " area=" + num(small->bdry_area) + "<=" + num(small->area_bound);
  }
  o.detail += " t=" + num(secs) + "s";
  return o;
}

Outcome criterion9() {
  Outcome o{true, ""};
  auto run = [](ProfileId id, std::vector<int> js) {
    ReportOptions ro;
    ro.params.family = id;
    ro.j_list = std::move(js);
    ro.resolution = {96, 96};
    ro.samples = 256;
    ro.mode = HypothesisMode::boundary_norm;
    return vadb_report(ro);
  };
  const FlatBoundReport ridge = run(ProfileId::single_ridge, {4, 8, 16, 32});
  const FlatBoundReport taxi = run(ProfileId::taxi_finsler, {2, 4, 6, 8});
  o.pass = !ridge.flags.boundary_norm_converges && !ridge.hypotheses_pass && taxi.flags.boundary_norm_converges;
  o.detail = std::string("ridge boundary-norm=") + (ridge.flags.boundary_norm_converges ? "pass" : "fail") +
             " taxi boundary-norm=" + (taxi.flags.boundary_norm_converges ? "pass" : "fail");
  for (ProfileId id : {ProfileId::cinched_torus, ProfileId::cinched_sphere}) {
    std::shared_ptr<const Mesh> mesh;
    const MetricField g0 = family_field(id, 8, {64, 64}, &mesh, true);
    const MetricField gj = family_field(id, 8, {64, 64}, &mesh);
    const DominanceReport dr = dominance_check(g0, gj, 1e-12);
    FamilyParams p;
    p.family = id;
    const double h0 = p.h0_or_default();
    const double target = h0 * h0 - 1.0;
    o.pass = o.pass && !dr.passed() && std::abs(dr.min_eigenvalue - target) <= 1e-12;
    o.detail += std::string(" ") + profile_name(id) + " min_eig=" + num(dr.min_eigenvalue) + " (" + num(target) + ")";
  }
  return o;
}

Outcome criterion10() {
  auto run = [](int workers) {
    ReportOptions ro;
    ro.params.family = ProfileId::spline_torus;
    ro.j_list = {4, 8};
    ro.resolution = {48, 48};
    ro.samples = 128;
    ro.seed = 3;
    ro.workers = workers;
    return report_csv(vadb_report(ro));
  };
  const std::string a = run(1);
  const std::string b = run(1);
  const std::string c = run(3);
  return {a == b && a == c, "bytes=" + std::to_string(a.size())};
}

}  // namespace

int main(int argc, char** argv) {
  // Optional argument: a single criterion number to run.
  const int only = argc > 1 ? std::atoi(argv[1]) : 0;
  const std::vector<std::function<Outcome()>> criteria = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                                          criterion6, criterion7, criterion8, criterion9, criterion10};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only && static_cast<int>(i) + 1 != only) continue;
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("[%s] criterion %zu: %s\n", o.pass ? "PASS" : "FAIL", i + 1, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
