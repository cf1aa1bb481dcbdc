// Command-line front end: one subcommand per pipeline.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vadb/doubling.hpp"
#include "vadb/error.hpp"
#include "vadb/experiments.hpp"
#include "vadb/flat_estimator.hpp"
#include "vadb/report_io.hpp"
#include "vadb/run_config.hpp"

using namespace vadb;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct Outputs {
  std::string csv;
  std::string summary;
  bool checks_pass = true;
};

std::vector<int> expand_resolution(const std::vector<int>& res, int dim) {
  if (res.size() == 1) return std::vector<int>(static_cast<std::size_t>(dim), res[0]);
  if (static_cast<int>(res.size()) != dim) {
    throw Error(Errc::invalid_argument, "--res needs 1 or " + std::to_string(dim) + " values");
  }
  return res;
}

struct Setup {
  FamilyParams params;
  std::shared_ptr<const Mesh> mesh;
  ParamDomain domain;
};

Setup make_setup(const RunConfig& cfg, int j) {
  Setup s;
  s.params = cfg.family_params(j);
  const int first = cfg.resolution.empty() ? 0 : cfg.resolution[0];
  s.domain = family_domain(s.params, first);
  s.mesh = std::make_shared<const Mesh>(
      build_grid_mesh(s.domain, expand_resolution(cfg.resolution, s.domain.dim()), cfg.stencil));
  return s;
}

Outputs run_geom(const RunConfig& cfg) {
  const int j = cfg.j_list.empty() ? 1 : cfg.j_list.front();
  const Setup s = make_setup(cfg, j);
  const MetricField g0 = sample_metric(background_spec(s.params, s.domain), s.mesh);
  const MetricField gj = sample_metric(family_spec(s.params, s.domain), s.mesh);
  const SampleSet samples = stratified_samples(*s.mesh, cfg.samples, cfg.seed);
  const GraphMetric gm = build_graph_metric(gj, cfg.workers);
  const DistanceMatrix dm = distance_matrix(gm, samples.ids, samples.weights(gj), cfg.workers);
  const double diam = std::max(diameter(dm), diameter_sweep(gm, samples.ids.front()));
  const double vol = volume(gj);
  const bool bdry = !s.mesh->boundary_components().empty();
  const int m = s.mesh->dim();
  const double area = bdry ? boundary_area(gj) : 0.0;
  const double inorm = lp_metric_distance(gj, g0, g0, 0.5 * m);
  const double bnorm = bdry ? boundary_lp_distance(gj, g0, g0, 0.5 * (m - 1)) : 0.0;
  Outputs o;
  o.csv = "family,j,vol,diam,bdry_area,interior_norm,bdry_norm\n" + cfg.family + "," + std::to_string(j) + "," +
          format_number(vol) + "," + format_number(diam) + "," + format_number(area) + "," + format_number(inorm) +
          "," + format_number(bnorm) + "\n";
  o.summary = "vol: " + format_number(vol) + "\ndiam: " + format_number(diam) + "\nbdry_area: " + format_number(area) +
              "\nmesh: " + mesh_summary_json(*s.mesh) + "\n";
  return o;
}

Outputs run_dominance(const RunConfig& cfg) {
  Outputs o;
  const Setup s = make_setup(cfg, cfg.j_list.empty() ? 1 : cfg.j_list.front());
  const MetricField g0 = sample_metric(background_spec(s.params, s.domain), s.mesh);
  const FamilyTraits traits = family_traits(s.params.family);
  std::ostringstream csv, sum;
  csv << "j,min_eigenvalue,violations,pass\n";
  for (int j : cfg.j_list) {
    FamilyParams p = s.params;
    p.j = j;
    const MetricField gj = sample_metric(family_spec(p, s.domain), s.mesh);
    const DominanceReport dr = dominance_check(g0, gj, cfg.tolerance);
    csv << j << ',' << format_number(dr.min_eigenvalue) << ',' << dr.violations << ',' << (dr.passed() ? 1 : 0) << '\n';
    sum << (dr.passed() ? "PASS" : "FAIL") << " j=" << j << " g_0 <= g_j min_eig=" << format_number(dr.min_eigenvalue)
        << '\n';
    o.checks_pass = o.checks_pass && dr.passed();
  }
  sum << "declared: " << (traits.dominating ? "g_0 <= g_j" : traits.dominated ? "g_j <= g_0" : "none") << '\n';
  o.csv = csv.str();
  o.summary = sum.str();
  return o;
}

Outputs run_double(const RunConfig& cfg) {
  Outputs o;
  const int j = cfg.j_list.empty() ? 1 : cfg.j_list.front();
  const Setup s = make_setup(cfg, j);
  const MetricField g0 = sample_metric(background_spec(s.params, s.domain), s.mesh);
  const MetricField gj = sample_metric(family_spec(s.params, s.domain), s.mesh);
  const SampleSet samples = stratified_samples(*s.mesh, cfg.samples, cfg.seed);
  std::ostringstream csv, sum;
  csv << "delta,C,eta,max_deviation,deviation_bound,mirror_exact,max_difference,analytic_bound,slack,volume\n";
  for (double delta : cfg.deltas) {
    const NeckAssembly as = build_doubling(gj, g0, delta, cfg.neck_intervals);
    const NeckCheck c = check_neck(as);
    const DoubledDistanceReport d = doubled_distance_check(as, gj, samples, cfg.workers);
    csv << format_number(delta) << ',' << format_number(as.C) << ',' << format_number(as.eta) << ','
        << format_number(c.max_deviation) << ',' << format_number(c.bound) << ',' << (c.mirror_exact ? 1 : 0) << ','
        << format_number(d.max_difference) << ',' << format_number(d.analytic_bound) << ',' << format_number(d.slack)
        << ',' << format_number(as.volume) << '\n';
    sum << doubling_summary(as, c, &d);
    o.checks_pass = o.checks_pass && c.mirror_exact && c.max_deviation <= c.bound + 1e-8 && d.passed();
  }
  o.csv = csv.str();
  o.summary = sum.str();
  return o;
}

Outputs run_good_set(const RunConfig& cfg) {
  const int j = cfg.j_list.empty() ? 1 : cfg.j_list.front();
  const Setup s = make_setup(cfg, j);
  const MetricField g0 = sample_metric(background_spec(s.params, s.domain), s.mesh);
  const MetricField gj = sample_metric(family_spec(s.params, s.domain), s.mesh);
  const SampleSet samples = stratified_samples(*s.mesh, cfg.samples, cfg.seed);
  const GraphMetric gm0 = build_graph_metric(g0, cfg.workers);
  const DistanceMatrix d0 = distance_matrix(gm0, samples.ids, samples.weights(g0), cfg.workers);
  const DistanceMatrix dj = distance_matrix(reweight(gm0.graph, gj, cfg.workers), samples.ids, samples.weights(gj),
                                            cfg.workers);
  const GoodSet gs = good_set(d0, dj, cfg.eps, cfg.kappa);
  Outputs o;
  o.csv = good_set_csv(d0, gs);
  std::ostringstream sum;
  sum << "threshold: " << format_number(gs.threshold) << "\npair_fraction: " << format_number(gs.pair_fraction)
      << "\nselected: " << gs.selected.size() << '/' << d0.size() << "\nsup_discrepancy: "
      << format_number(gs.sup_discrepancy) << "\nsup_excess: " << format_number(gs.sup_excess)
      << "\nexcluded_volume: " << format_number(gs.excluded_volume) << '\n';
  o.summary = sum.str();
  return o;
}

Outputs run_flat_bound(const RunConfig& cfg) {
  ReportOptions ro;
  ro.params = cfg.family_params();
  ro.j_list = cfg.j_list;
  const ParamDomain dom = family_domain(ro.params, cfg.resolution.empty() ? 0 : cfg.resolution[0]);
  ro.resolution = expand_resolution(cfg.resolution, dom.dim());
  ro.stencil = cfg.stencil;
  ro.samples = cfg.samples;
  ro.seed = cfg.seed;
  ro.kappa = cfg.kappa;
  ro.dominance_slack = cfg.dominance_slack;
  ro.mode = parse_mode(cfg.mode);
  ro.workers = cfg.workers;
  const FlatBoundReport rep = vadb_report(ro);
  return {report_csv(rep), summary_text(rep), rep.hypotheses_pass};
}

Outputs run_example_cmd(const RunConfig& cfg) {
  ExampleOptions eo;
  eo.params = cfg.family_params();
  const ParamDomain dom = family_domain(eo.params, cfg.resolution.empty() ? 0 : cfg.resolution[0]);
  eo.resolution = expand_resolution(cfg.resolution, dom.dim());
  eo.stencil = cfg.stencil;
  eo.samples = cfg.samples;
  eo.seed = cfg.seed;
  eo.kappa = cfg.kappa;
  eo.workers = cfg.workers;
  const ExperimentReport rep = run_example(eo.params.family, cfg.j_list, eo.resolution.front(), eo);
  return {example_csv(rep), summary_text(rep), rep.all_pass};
}

Outputs run_pmt(const RunConfig& cfg) {
  PmtOptions po;
  po.n = cfg.n;
  po.masses = cfg.masses;
  po.r = cfg.r;
  po.r0 = cfg.r0;
  if (!cfg.resolution.empty()) po.resolution = expand_resolution(cfg.resolution, cfg.n);
  po.stencil = cfg.stencil;
  po.samples = cfg.samples;
  po.seed = cfg.seed;
  po.workers = cfg.workers;
  const PmtReport rep = pmt_graph_run(po);
  return {pmt_csv(rep), summary_text(rep), rep.all_pass};
}

Outputs dispatch(const RunConfig& cfg) {
  if (cfg.command == "geom") return run_geom(cfg);
  if (cfg.command == "dominance") return run_dominance(cfg);
  if (cfg.command == "double") return run_double(cfg);
  if (cfg.command == "good-set") return run_good_set(cfg);
  if (cfg.command == "flat-bound") return run_flat_bound(cfg);
  if (cfg.command == "example run") return run_example_cmd(cfg);
  if (cfg.command == "pmt run") return run_pmt(cfg);
  throw Error(Errc::invalid_argument, "unknown command '" + cfg.command + "'");
}

void write_outputs(const RunConfig& cfg, const Outputs& o) {
  if (cfg.out_dir.empty()) {
    std::cout << o.csv;
    std::cerr << o.summary;
    return;
  }
  std::error_code ec;
  std::filesystem::create_directories(cfg.out_dir, ec);
  if (ec) throw Error(Errc::io, "cannot create " + cfg.out_dir + ": " + ec.message());
  const std::filesystem::path dir(cfg.out_dir);
  write_text_file((dir / "config.json").string(), cfg.to_json());
  write_text_file((dir / "results.csv").string(), o.csv);
  write_text_file((dir / "summary.txt").string(), o.summary);
  std::cout << o.summary;
}

// Options shared by every subcommand, bound to one RunConfig.
struct Bindings {
  RunConfig cfg;
  std::string config_path;
  std::vector<int> resolution;
  bool pmt = false;
};

void add_common(CLI::App* sub, Bindings& b) {
  RunConfig& c = b.cfg;
  sub->add_option("--config", b.config_path, "JSON run config; its keys override flags");
  sub->add_option("--family", c.family, "profile name");
  sub->add_option("--domain", c.domain, "flat domain: cylinder, torus, square");
  sub->add_option("--j", c.j_list, "comma-separated j values")->delimiter(',');
  sub->add_option("--res", b.resolution, "grid resolution, one value or one per axis")->delimiter(',');
  sub->add_option("--stencil", c.stencil, "edge stencil radius");
  sub->add_option("--samples", c.samples, "maximum stratified samples");
  sub->add_option("--seed", c.seed, "sampling seed");
  sub->add_option("--kappa", c.kappa, "good-set kappa");
  sub->add_option("--eps", c.eps, "good-set epsilon");
  sub->add_option("--tol", c.tolerance, "dominance tolerance");
  sub->add_option("--deltas", c.deltas, "comma-separated neck half-widths")->delimiter(',');
  sub->add_option("--neck-intervals", c.neck_intervals, "neck grid intervals");
  sub->add_option("--mode", c.mode, "boundary-norm, interior-Lm/2 or convex-interior");
  sub->add_flag("--dominance-slack", c.dominance_slack, "compare against (1 - 1/j) g_0");
  sub->add_option("--h0", c.h0, "cinch or ridge height");
  sub->add_option("--eta", c.eta, "spline eta");
  sub->add_option("--mass", c.mass, "graph mass");
  sub->add_option("--masses", c.masses, "comma-separated masses")->delimiter(',');
  sub->add_option("--n", c.n, "graph dimension (3 or 4)");
  sub->add_option("--r", c.r, "outer radius");
  sub->add_option("--r0", c.r0, "inner reference radius");
  sub->add_option("--gamma", c.gamma, "recorded metadata");
  sub->add_option("--alpha", c.alpha, "recorded metadata");
  sub->add_option("--Lambda", c.Lambda, "recorded metadata");
  sub->add_option("--hole-radius", c.hole_radius, "cinched-sphere hole radius");
  sub->add_option("--taxi-boundary-cinches", c.taxi_boundary_cinches, "true or false");
  sub->add_option("--neck-width", c.neck_width, "bubble and spline neck width");
  sub->add_option("--workers", c.workers, "worker threads (default: VADB_WORKERS or hardware)");
  sub->add_flag("--strict", c.strict, "exit 1 when a hypothesis check fails");
  sub->add_option("--out", c.out_dir, "output directory for config.json, results.csv, summary.txt");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Volume-above-distance-below toolkit"};
  app.require_subcommand(1);
  Bindings b;
  struct Leaf {
    CLI::App* app;
    std::string command;
  };
  std::vector<Leaf> leaves;
  for (const char* name : {"geom", "dominance", "double", "good-set", "flat-bound"}) {
    CLI::App* sub = app.add_subcommand(name, std::string(name) + " pipeline");
    add_common(sub, b);
    leaves.push_back({sub, name});
  }
  CLI::App* example = app.add_subcommand("example", "example registry");
  example->require_subcommand(1);
  CLI::App* example_run = example->add_subcommand("run", "run one example family");
  add_common(example_run, b);
  leaves.push_back({example_run, "example run"});
  CLI::App* pmt = app.add_subcommand("pmt", "graph stability experiment");
  pmt->require_subcommand(1);
  CLI::App* pmt_run = pmt->add_subcommand("run", "run the graph family over a mass list");
  add_common(pmt_run, b);
  leaves.push_back({pmt_run, "pmt run"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  RunConfig& cfg = b.cfg;
  CLI::App* leaf = nullptr;
  for (const Leaf& l : leaves) {
    if (l.app->parsed()) {
      cfg.command = l.command;
      leaf = l.app;
    }
  }
  const bool is_pmt = cfg.command == "pmt run";
  if (!b.resolution.empty()) {
    cfg.resolution = b.resolution;
  } else if (is_pmt) {
    cfg.resolution.clear();
  }
  if (is_pmt && pmt_run->count("--stencil") == 0) cfg.stencil = 2;
  if (is_pmt && pmt_run->count("--samples") == 0) cfg.samples = 128;
  if (leaf != nullptr && leaf->count("--j") == 0) {
    // Taxi cinch counts grow as 2^j, so its default sweep stays small.
    if (cfg.family == "taxi-finsler") {
      cfg.j_list = {2, 4, 6, 8};
    } else if (cfg.command == "example run") {
      cfg.j_list = {4, 8, 16, 32};
    }
  }

  try {
    if (!b.config_path.empty()) {
      const std::string command = cfg.command;
      cfg.merge_json(read_text_file(b.config_path));
      cfg.command = command;
    }
    const Outputs o = dispatch(cfg);
    write_outputs(cfg, o);
    if (cfg.strict && !o.checks_pass) return kExitCheckFailed;
    return kExitOk;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
