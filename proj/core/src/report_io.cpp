#include "vadb/report_io.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "vadb/error.hpp"

namespace vadb {

namespace {

const char* pass_fail(bool ok) { return ok ? "PASS" : "FAIL"; }

const char* axis_kind_name(AxisKind k) {
  switch (k) {
    case AxisKind::interval: return "interval";
    case AxisKind::periodic: return "periodic";
    case AxisKind::radial: return "radial";
    case AxisKind::open: return "open";
  }
  return "unknown";
}

const char* domain_kind_name(DomainKind k) {
  switch (k) {
    case DomainKind::rectangle: return "rectangle";
    case DomainKind::polar_cap: return "polar-cap";
    case DomainKind::annulus: return "annulus";
  }
  return "unknown";
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  // snprintf honours LC_NUMERIC; the library never changes it from "C".
  std::snprintf(buf.data(), buf.size(), "%.12g", x);
  return buf.data();
}

std::string report_csv(const FlatBoundReport& report) {
  std::ostringstream os;
  os << "j,dominance_pass,diam,vol,bdry_area,bdry_norm,V_j,delta_j,h_j,flat_bound,mode\n";
  for (const auto& r : report.rows) {
    os << r.j << ',' << (r.dominance_pass ? 1 : 0) << ',' << format_number(r.diam) << ',' << format_number(r.vol)
       << ',' << format_number(r.bdry_area) << ',' << format_number(r.bdry_norm) << ',' << format_number(r.V_j)
       << ',' << format_number(r.delta_j) << ',' << format_number(r.h_j) << ',' << format_number(r.flat_bound) << ','
       << mode_name(report.mode) << '\n';
  }
  return os.str();
}

std::string distance_csv(const DistanceMatrix& d0, const DistanceMatrix& dj) {
  if (d0.size() != dj.size()) throw Error(Errc::invalid_argument, "distance matrices differ in size");
  std::ostringstream os;
  os << "i,j,d0,dj,weight_i,weight_j\n";
  for (std::size_t i = 0; i < d0.size(); ++i) {
    for (std::size_t k = i + 1; k < d0.size(); ++k) {
      os << d0.samples[i] << ',' << d0.samples[k] << ',' << format_number(d0(i, k)) << ','
         << format_number(dj(i, k)) << ',' << format_number(d0.weights[i]) << ',' << format_number(d0.weights[k])
         << '\n';
    }
  }
  return os.str();
}

std::string pmt_csv(const PmtReport& report) {
  std::ostringstream os;
  os << "mass,vol,vol_ball,vol_excess,diam,depth_D,gamma,bdry_area,diam_bound,area_bound\n";
  for (const auto& r : report.rows) {
    os << format_number(r.mass) << ',' << format_number(r.vol) << ',' << format_number(r.vol_ball) << ','
       << format_number(r.vol_excess) << ',' << format_number(r.diam) << ',' << format_number(r.depth_D) << ','
       << format_number(r.gamma) << ',' << format_number(r.bdry_area) << ',' << format_number(r.diam_bound) << ','
       << format_number(r.area_bound) << '\n';
  }
  return os.str();
}

std::string example_csv(const ExperimentReport& report) {
  std::ostringstream os;
  os << "j,vol,dominance_pass,dominance_min_eig,flat_bound\n";
  for (std::size_t i = 0; i < report.j_list.size(); ++i) {
    double bound = std::nan("");
    if (report.flat) {
      for (const auto& r : report.flat->rows) {
        if (r.j == report.j_list[i]) bound = r.flat_bound;
      }
    }
    os << report.j_list[i] << ',' << format_number(report.volumes[i]) << ','
       << (report.dominance[i].passed() ? 1 : 0) << ',' << format_number(report.dominance[i].min_eigenvalue) << ','
       << format_number(bound) << '\n';
  }
  return os.str();
}

std::string good_set_csv(const DistanceMatrix& d0, const GoodSet& gs) {
  std::vector<char> in(d0.size(), 0);
  for (std::size_t s : gs.selected) in[s] = 1;
  std::ostringstream os;
  os << "sample,vertex,weight,slice_fraction,selected\n";
  for (std::size_t i = 0; i < d0.size(); ++i) {
    os << i << ',' << d0.samples[i] << ',' << format_number(d0.weights[i]) << ','
       << format_number(gs.slice_fraction[i]) << ',' << static_cast<int>(in[i]) << '\n';
  }
  return os.str();
}

std::string summary_text(const FlatBoundReport& report) {
  std::ostringstream os;
  os << "family: " << profile_name(report.family) << "\nmode: " << mode_name(report.mode) << '\n';
  os << "vol0: " << format_number(report.vol0) << "\nD: " << format_number(report.D)
     << "\nV: " << format_number(report.V) << "\nA: " << format_number(report.A) << '\n';
  const auto& f = report.flags;
  os << pass_fail(f.dominance) << " dominance g_0 <= g_j\n";
  os << pass_fail(f.diameter_bounded) << " diameter bounded\n";
  os << pass_fail(f.boundary_area_bounded) << " boundary area bounded\n";
  os << pass_fail(f.volume_converges) << " volume converges\n";
  switch (report.mode) {
    case HypothesisMode::boundary_norm:
      os << pass_fail(f.boundary_norm_converges) << " boundary norm converges to zero\n";
      break;
    case HypothesisMode::interior_lm2:
      os << pass_fail(f.interior_norm_converges) << " interior norm converges to zero\n";
      break;
    case HypothesisMode::convex_interior:
      os << pass_fail(f.convex_declared) << " convex interior declared\n";
      break;
  }
  os << pass_fail(report.hypotheses_pass) << " hypotheses\n";
  for (const auto& r : report.rows) {
    os << "j=" << r.j << " flat_bound=" << format_number(r.flat_bound) << " good=" << r.good_points << '/'
       << r.samples << '\n';
  }
  return os.str();
}

std::string summary_text(const ExperimentReport& report) {
  std::ostringstream os;
  os << "family: " << profile_name(report.family) << '\n';
  for (const auto& o : report.observables) {
    os << pass_fail(o.pass) << ' ' << o.name << " j=" << o.j << " value=" << format_number(o.value)
       << (o.upper_bound ? " bound=" : " target=") << format_number(o.target) << " tol=" << format_number(o.rel_tol)
       << " source=" << source_name(o.source) << '\n';
  }
  for (std::size_t i = 0; i < report.j_list.size(); ++i) {
    os << "j=" << report.j_list[i] << " dominance=" << (report.dominance[i].passed() ? "holds" : "violated")
       << " min_eig=" << format_number(report.dominance[i].min_eigenvalue) << '\n';
  }
  if (report.flat) os << summary_text(*report.flat);
  os << pass_fail(report.all_pass) << " all observables\n";
  return os.str();
}

std::string summary_text(const PmtReport& report) {
  std::ostringstream os;
  os << "n: " << report.n << "\nr: " << format_number(report.r) << "\nr0: " << format_number(report.r0) << '\n';
  for (const auto& r : report.rows) {
    const std::string m = "m=" + format_number(r.mass);
    os << pass_fail(r.vol_dominates) << ' ' << m << " vol " << format_number(r.vol) << " >= ball "
       << format_number(r.vol_ball) << " (reference " << format_number(r.vol_reference) << ")\n";
    os << pass_fail(r.diam_ok) << ' ' << m << " diam " << format_number(r.diam) << " <= " << format_number(r.diam_bound)
       << '\n';
    os << pass_fail(r.area_ok) << ' ' << m << " boundary area " << format_number(r.bdry_area)
       << " <= " << format_number(r.area_bound) << '\n';
  }
  os << pass_fail(report.excess_decreasing) << " volume excess strictly decreasing\n";
  return os.str();
}

std::string doubling_summary(const NeckAssembly& a, const NeckCheck& c, const DoubledDistanceReport* d) {
  std::ostringstream os;
  os << "delta: " << format_number(a.delta) << "\nC: " << format_number(a.C) << "\neta: " << format_number(a.eta)
     << "\nvolume: " << format_number(a.volume) << "\nneck_volume: " << format_number(a.neck_volume)
     << "\nvertices: " << a.mesh->num_vertices() << '\n';
  os << pass_fail(c.max_deviation <= c.bound + 1e-8) << " neck deviation " << format_number(c.max_deviation)
     << " <= " << format_number(c.bound) << '\n';
  os << pass_fail(c.mirror_exact) << " mirror symmetry\n";
  os << pass_fail(c.min_eta >= kNeckPositivityMargin) << " neck positivity min_eta=" << format_number(c.min_eta)
     << '\n';
  if (d) {
    os << pass_fail(d->passed()) << " doubled distance max_difference=" << format_number(d->max_difference)
       << " bound=" << format_number(d->analytic_bound) << " slack=" << format_number(d->slack) << " pairs=" << d->pairs
       << '\n';
  }
  return os.str();
}

std::string mesh_summary_json(const Mesh& mesh) {
  nlohmann::ordered_json j;
  j["domain"] = domain_kind_name(mesh.domain().kind);
  j["dim"] = mesh.dim();
  j["vertices"] = mesh.num_vertices();
  j["resolution"] = mesh.resolution();
  j["stencil"] = mesh.stencil_radius();
  nlohmann::ordered_json axes = nlohmann::ordered_json::array();
  for (const auto& ax : mesh.domain().axes) {
    axes.push_back({{"kind", axis_kind_name(ax.kind)}, {"lo", ax.lo}, {"hi", ax.hi}});
  }
  j["axes"] = axes;
  nlohmann::ordered_json comps = nlohmann::ordered_json::array();
  for (const auto& c : mesh.boundary_components()) comps.push_back({{"id", c.id}, {"vertices", c.vertices.size()}});
  j["boundary_components"] = comps;
  return j.dump(2);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io, "cannot open " + path + " for writing");
  out << content;
  if (!out) throw Error(Errc::io, "write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace vadb
