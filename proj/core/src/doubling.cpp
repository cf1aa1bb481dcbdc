#include "vadb/doubling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "vadb/error.hpp"

namespace vadb {

namespace {

constexpr double kStructureTol = 1e-12;

void require_cylinder(const Mesh& mesh) {
  const auto& axes = mesh.domain().axes;
  if (mesh.domain().has_pole() || axes[0].kind != AxisKind::interval) {
    throw Error(Errc::unsupported, "doubling needs an interval normal axis");
  }
  for (std::size_t a = 1; a < axes.size(); ++a) {
    if (axes[a].kind == AxisKind::interval || axes[a].kind == AxisKind::radial) {
      throw Error(Errc::unsupported, "doubling needs a closed boundary (tangent axes without boundary)");
    }
  }
}

std::vector<int> tangent_axes(int d) {
  std::vector<int> t;
  for (int a = 1; a < d; ++a) t.push_back(a);
  return t;
}

// Coordinate normal is a unit geodesic normal iff g_rr = 1 and g_rz = 0.
void require_product_collar(const Tensor& g) {
  if (std::abs(g(0, 0) - 1.0) > kStructureTol) throw Error(Errc::unsupported, "g_rr != 1 at the boundary");
  for (int a = 1; a < g.rows(); ++a) {
    if (std::abs(g(0, a)) > kStructureTol) throw Error(Errc::unsupported, "g_rz != 0 at the boundary");
  }
}

int component_on_side(const Mesh& mesh, int side) {
  const int last = mesh.resolution()[0] - 1;
  for (const auto& c : mesh.boundary_components()) {
    const int k = mesh.grid_index(c.vertices.front())[0];
    if ((side == 0 && k == 0) || (side == 1 && k == last)) return c.id;
  }
  throw Error(Errc::no_such_component, "missing boundary component on the requested side");
}

double neck_eta(const SecondFundamentalField& s, const std::vector<double>& profile) {
  double eta = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < s.vertices.size(); ++i) {
    for (double p : profile) {
      eta = std::min(eta, relative_min_eigenvalue(Tensor(s.h[i] + p * s.A[i]), s.h[i]));
    }
  }
  return eta;
}

}  // namespace

SecondFundamentalField second_fundamental_form(const MetricField& g0, int component) {
  const Mesh& mesh = g0.mesh();
  require_cylinder(mesh);
  const auto& comps = mesh.boundary_components();
  if (component < 0 || component >= static_cast<int>(comps.size())) {
    throw Error(Errc::no_such_component, "boundary component " + std::to_string(component) + " does not exist");
  }
  const int d = mesh.dim();
  const int n0 = mesh.resolution()[0];
  if (n0 < 3) throw Error(Errc::resolution_too_small, "one-sided differences need three normal nodes");
  SecondFundamentalField s;
  s.component = component;
  s.tangent_axes = tangent_axes(d);
  s.vertices = comps[component].vertices;
  s.side = mesh.grid_index(s.vertices.front())[0] == 0 ? 0 : 1;
  const int k = static_cast<int>(s.tangent_axes.size());
  const auto& r = mesh.nodes(0);
  const int i0 = s.side == 0 ? 0 : n0 - 1;
  const int step = s.side == 0 ? 1 : -1;
  const double s1 = std::abs(r[i0 + step] - r[i0]);
  const double s2 = std::abs(r[i0 + 2 * step] - r[i0]);
  const double w0 = -(s1 + s2) / (s1 * s2);
  const double w1 = s2 / (s1 * (s2 - s1));
  const double w2 = -s1 / (s2 * (s2 - s1));
  for (std::size_t v : s.vertices) {
    GridIndex idx = mesh.grid_index(v);
    const Tensor& g_b = g0.at(v);
    require_product_collar(g_b);
    idx[0] = i0 + step;
    const Tensor& g_1 = g0.at(mesh.vertex_at(idx));
    idx[0] = i0 + 2 * step;
    const Tensor& g_2 = g0.at(mesh.vertex_at(idx));
    const Tensor h = restrict_axes(g_b, s.tangent_axes.data(), k);
    const Tensor dh = w0 * h + w1 * restrict_axes(g_1, s.tangent_axes.data(), k) +
                      w2 * restrict_axes(g_2, s.tangent_axes.data(), k);
    Tensor A = 0.5 * dh;
    A = 0.5 * (A + A.transpose()).eval();
    s.C = std::max(s.C, frame_norm(A, h));
    s.A.push_back(A);
    s.h.push_back(h);
  }
  return s;
}

Tensor neck_profile(const Tensor& A, double delta, double t) {
  if (!(delta > 0)) throw Error(Errc::invalid_argument, "delta must be positive");
  if (std::abs(t) > delta * (1.0 + 1e-12)) throw Error(Errc::out_of_domain, "|t| exceeds delta");
  return -std::sin(std::numbers::pi * t / (2.0 * delta)) * A;
}

std::vector<double> neck_integral(double delta, int intervals) {
  if (intervals < 2 || intervals % 2 != 0) throw Error(Errc::invalid_argument, "neck intervals must be even");
  const double dt = 2.0 * delta / intervals;
  std::vector<double> s(intervals + 1, 0.0);
  auto q = [&](int k) { return -std::sin(std::numbers::pi * (-delta + k * dt) / (2.0 * delta)); };
  for (int k = 0; k < intervals / 2; ++k) s[k + 1] = s[k] + dt * (q(k) + q(k + 1));
  for (int k = 0; k < intervals / 2; ++k) s[intervals - k] = s[k];
  return s;
}

double max_neck_delta(const MetricField& g0, double eta0, int neck_intervals) {
  const Mesh& mesh = g0.mesh();
  require_cylinder(mesh);
  const SecondFundamentalField lo = second_fundamental_form(g0, component_on_side(mesh, 0));
  const SecondFundamentalField hi = second_fundamental_form(g0, component_on_side(mesh, 1));
  auto ok = [&](double delta) {
    const auto prof = neck_integral(delta, neck_intervals);
    return std::min(neck_eta(lo, prof), neck_eta(hi, prof)) >= eta0;
  };
  double a = 0.0;
  double b = 1.0;
  while (ok(b)) {
    a = b;
    b *= 2.0;
    if (b > 1e12) return std::numeric_limits<double>::infinity();
  }
  for (int it = 0; it < 200 && b - a > 1e-14 * b; ++it) {
    const double m = 0.5 * (a + b);
    (ok(m) ? a : b) = m;
  }
  return a;
}

NeckAssembly build_doubling(const MetricField& g_alpha, const MetricField& g0, double delta, int neck_intervals) {
  const Mesh& mesh = g0.mesh();
  require_cylinder(mesh);
  if (g_alpha.mesh_ptr() != g0.mesh_ptr() &&
      !(g_alpha.mesh().domain().same_as(mesh.domain()) && g_alpha.mesh().resolution() == mesh.resolution())) {
    throw Error(Errc::domain_mismatch, "g_alpha and g_0 must share a mesh");
  }
  if (!(delta > 0)) throw Error(Errc::invalid_argument, "delta must be positive");
  int nt = std::max(16, neck_intervals);
  if (nt % 2) ++nt;
  const int d = mesh.dim();
  const int n0 = mesh.resolution()[0];

  NeckAssembly as;
  as.delta = delta;
  as.neck_intervals = nt;
  as.manifold_dim = d;
  as.sff[0] = second_fundamental_form(g0, component_on_side(mesh, 0));
  as.sff[1] = second_fundamental_form(g0, component_on_side(mesh, 1));
  as.C = std::max(as.sff[0].C, as.sff[1].C);
  as.profile = neck_integral(delta, nt);
  as.eta = std::min(neck_eta(as.sff[0], as.profile), neck_eta(as.sff[1], as.profile));
  if (as.eta < kNeckPositivityMargin) {
    throw Error(Errc::positivity_failure, "delta exceeds the positivity limit of the neck metric");
  }
  const std::vector<int> tan = tangent_axes(d);
  const int k = static_cast<int>(tan.size());
  for (const auto& s : as.sff) {
    for (std::size_t i = 0; i < s.vertices.size(); ++i) {
      const Tensor& ga = g_alpha.at(s.vertices[i]);
      require_product_collar(ga);
      const Tensor diff = restrict_axes(ga, tan.data(), k) - s.h[i];
      if (min_eigenvalue(diff) < -1e-12) throw Error(Errc::dominance_failure, "g_alpha < g_0 on the boundary");
    }
  }

  // Doubled normal axis: copy A, neck at the upper end, mirrored copy B, neck back to A.
  const auto& r = mesh.nodes(0);
  const double a = r.front();
  const double b = r.back();
  const double len = b - a;
  const double dt = 2.0 * delta / nt;
  std::vector<double> u;
  u.reserve(2 * n0 + 2 * (nt - 1));
  for (double x : r) u.push_back(x);
  for (int q = 1; q < nt; ++q) u.push_back(b + q * dt);
  for (int q = 0; q < n0; ++q) u.push_back(2.0 * b + 2.0 * delta - r[n0 - 1 - q]);
  for (int q = 1; q < nt; ++q) u.push_back(2.0 * b - a + 2.0 * delta + q * dt);
  ParamDomain dom = mesh.domain();
  dom.axes[0].kind = AxisKind::periodic;
  dom.axes[0].hi = a + 2.0 * len + 4.0 * delta;
  dom.axes[0].features.clear();
  std::vector<std::vector<double>> nodes{u};
  for (int ax = 1; ax < d; ++ax) nodes.push_back(mesh.nodes(ax));
  auto dmesh = std::make_shared<const Mesh>(mesh_from_nodes(dom, std::move(nodes), mesh.stencil_radius()));

  // Boundary vertex -> position in its SecondFundamentalField.
  std::vector<int> slot(mesh.num_vertices(), -1);
  for (const auto& s : as.sff) {
    for (std::size_t i = 0; i < s.vertices.size(); ++i) slot[s.vertices[i]] = static_cast<int>(i);
  }

  const std::size_t nv = dmesh->num_vertices();
  std::vector<Tensor> samples(nv);
  as.copy_a.assign(mesh.num_vertices(), 0);
  as.copy_b.assign(mesh.num_vertices(), 0);
  const int b_start = n0 + nt - 1;
  const int neck2_start = 2 * n0 + nt - 1;
  for (std::size_t v = 0; v < nv; ++v) {
    GridIndex idx = dmesh->grid_index(v);
    const int i = idx[0];
    if (i < n0) {
      const std::size_t o = mesh.vertex_at(idx);
      samples[v] = g_alpha.at(o);
      as.copy_a[o] = v;
    } else if (i >= b_start && i < neck2_start) {
      idx[0] = n0 - 1 - (i - b_start);
      const std::size_t o = mesh.vertex_at(idx);
      Tensor g = g_alpha.at(o);
      for (int c = 1; c < d; ++c) {
        g(0, c) = -g(0, c);
        g(c, 0) = -g(c, 0);
      }
      samples[v] = g;
      as.copy_b[o] = v;
    } else {
      const int side = i < b_start ? 1 : 0;
      const int q = side == 1 ? i - n0 + 1 : i - neck2_start + 1;
      idx[0] = side == 1 ? n0 - 1 : 0;
      const std::size_t o = mesh.vertex_at(idx);
      const SecondFundamentalField& s = as.sff[side];
      const int sl = slot[o];
      Tensor g = Tensor::Zero(d, d);
      g(0, 0) = 1.0;
      const Tensor h = restrict_axes(g_alpha.at(o), tan.data(), k) + as.profile[q] * s.A[sl];
      for (int x = 0; x < k; ++x) {
        for (int y = 0; y < k; ++y) g(tan[x], tan[y]) = h(x, y);
      }
      samples[v] = g;
      as.neck.push_back(NeckVertex{v, side, o, q, -delta + q * dt});
    }
  }
  as.mesh = dmesh;
  as.metric = std::make_shared<const MetricField>(dmesh, std::move(samples));

  // Neck volume by the trapezoid rule in t and tangent dual-cell measures in z.
  double neck_vol = 0.0;
  for (const auto& s : as.sff) {
    for (std::size_t i = 0; i < s.vertices.size(); ++i) {
      const std::size_t o = s.vertices[i];
      const Box cell = mesh.cell(o);
      double tangent_measure = 1.0;
      for (int ax : tan) tangent_measure *= cell.hi(ax) - cell.lo(ax);
      const Tensor hb = restrict_axes(g_alpha.at(o), tan.data(), k);
      double line = 0.0;
      for (int q = 0; q <= nt; ++q) {
        const double w = (q == 0 || q == nt) ? 0.5 : 1.0;
        line += w * sqrt_det(Tensor(hb + as.profile[q] * s.A[i]));
      }
      neck_vol += line * dt * tangent_measure;
    }
  }
  as.neck_volume = neck_vol;
  as.volume = 2.0 * volume(g_alpha) + neck_vol;
  return as;
}

NeckCheck check_neck(const NeckAssembly& as) {
  NeckCheck c;
  c.bound = 4.0 * (as.manifold_dim - 1) * as.C * as.delta;
  c.min_eta = as.eta;
  const MetricField& g = *as.metric;
  const auto tan = tangent_axes(as.manifold_dim);
  const int k = static_cast<int>(tan.size());
  // (side, boundary vertex, k) -> neck vertex, for the mirror comparison.
  std::vector<std::vector<std::size_t>> by_key(2 * as.mesh->num_vertices());
  for (const NeckVertex& nv : as.neck) {
    const std::size_t key = static_cast<std::size_t>(nv.side) * as.mesh->num_vertices() + nv.boundary_vertex;
    auto& row = by_key[key];
    if (row.empty()) row.assign(as.neck_intervals + 1, Mesh::npos);
    row[nv.k] = nv.vertex;
  }
  for (const NeckVertex& nv : as.neck) {
    const SecondFundamentalField& s = as.sff[nv.side];
    const auto it = std::find(s.vertices.begin(), s.vertices.end(), nv.boundary_vertex);
    const Tensor& h = s.h[static_cast<std::size_t>(it - s.vertices.begin())];
    const Tensor seam = restrict_axes(g.at(as.copy_a[nv.boundary_vertex]), tan.data(), k);
    const Tensor here = restrict_axes(g.at(nv.vertex), tan.data(), k);
    c.max_deviation = std::max(c.max_deviation, frame_norm(Tensor(here - seam), h));
    const std::size_t key = static_cast<std::size_t>(nv.side) * as.mesh->num_vertices() + nv.boundary_vertex;
    const std::size_t mirror = by_key[key][as.neck_intervals - nv.k];
    if (mirror == Mesh::npos || !(g.at(mirror).array() == g.at(nv.vertex).array()).all()) c.mirror_exact = false;
  }
  return c;
}

DoubledDistanceReport doubled_distance_check(const NeckAssembly& as, const MetricField& g_alpha,
                                             const SampleSet& samples, int workers) {
  const GraphMetric gm = build_graph_metric(g_alpha, workers);
  const std::vector<double> w = samples.weights(g_alpha);
  const DistanceMatrix dm = distance_matrix(gm, samples.ids, w, workers);
  std::vector<std::size_t> mapped;
  for (std::size_t v : samples.ids) mapped.push_back(as.copy_a.at(v));
  const GraphMetric gd = build_graph_metric(*as.metric, workers);
  const DistanceMatrix dd = distance_matrix(gd, mapped, w, workers);
  DoubledDistanceReport r;
  r.diameter = std::max(diameter(dm), diameter_sweep(gm, samples.ids.front()));
  for (std::size_t i = 0; i < dm.size(); ++i) {
    for (std::size_t j = 0; j < dm.size(); ++j) {
      r.max_difference = std::max(r.max_difference, std::abs(dm(i, j) - dd(i, j)));
      if (dd(i, j) > dm(i, j)) r.never_longer = false;
      ++r.pairs;
    }
  }
  r.analytic_bound = 2.0 / as.eta * std::sqrt(as.C * as.delta) * r.diameter;
  r.slack = 2.0 * kMetricationFraction * r.diameter;
  return r;
}

}  // namespace vadb
