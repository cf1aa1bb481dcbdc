#include "vadb/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "vadb/error.hpp"

namespace vadb {

namespace {

int floor_div(int a, int n) { return (a >= 0) ? a / n : -((-a + n - 1) / n); }

int wrap_index(int a, int n) {
  const int r = a % n;
  return r < 0 ? r + n : r;
}

double wrap_periodic(double x, double lo, double len) {
  double y = std::fmod(x - lo, len);
  if (y < 0) y += len;
  return lo + y;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

void validate_domain(const ParamDomain& domain) {
  if (domain.axes.empty() || domain.dim() > kMaxDim) {
    throw Error(Errc::invalid_domain, "domain must have 1 to 4 axes");
  }
  for (const Axis& a : domain.axes) {
    if (!std::isfinite(a.lo) || !std::isfinite(a.hi) || !(a.hi > a.lo)) {
      throw Error(Errc::invalid_domain, "empty or non-finite extent");
    }
  }
  if (domain.has_pole()) {
    if (domain.dim() != 2 || domain.axes[0].kind != AxisKind::radial || domain.axes[0].lo != 0.0 ||
        domain.axes[1].kind != AxisKind::periodic) {
      throw Error(Errc::invalid_domain, "polar cap must be (radial from 0, periodic)");
    }
  } else {
    for (const Axis& a : domain.axes) {
      if (a.kind == AxisKind::radial) throw Error(Errc::invalid_domain, "radial axis outside a polar cap");
    }
  }
}

std::vector<double> uniform_nodes(const Axis& a, int n) {
  std::vector<double> x(n);
  const double len = a.length();
  for (int k = 0; k < n; ++k) {
    switch (a.kind) {
      case AxisKind::interval:
      case AxisKind::radial:
        x[k] = (k == n - 1) ? a.hi : a.lo + len * k / (n - 1);
        break;
      case AxisKind::periodic:
        x[k] = a.lo + len * (k + a.shift) / n;
        break;
      case AxisKind::open:
        x[k] = a.lo + len * (k + 0.5) / n;
        break;
    }
  }
  return x;
}

void snap_features(const Axis& a, std::vector<double>& x) {
  const int n = static_cast<int>(x.size());
  for (double f : a.features) {
    double target = f;
    if (a.kind == AxisKind::periodic) {
      target = wrap_periodic(f, a.lo, a.length());
    } else if (f < a.lo || f > a.hi) {
      continue;
    }
    int best = 0;
    double best_d = INFINITY;
    for (int k = 0; k < n; ++k) {
      double d = std::abs(x[k] - target);
      if (a.kind == AxisKind::periodic) d = std::min(d, a.length() - d);
      if (d < best_d) {
        best_d = d;
        best = k;
      }
    }
    const bool endpoint = (a.kind == AxisKind::interval || a.kind == AxisKind::radial) && (best == 0 || best == n - 1);
    if (endpoint && target != x[best]) continue;
    x[best] = target;
  }
  if (a.kind == AxisKind::periodic) std::sort(x.begin(), x.end());
}

}  // namespace

double ParamDomain::lebesgue_measure() const {
  double m = 1.0;
  for (const Axis& a : axes) m *= a.length();
  return m;
}

bool ParamDomain::same_as(const ParamDomain& other) const {
  if (kind != other.kind || axes.size() != other.axes.size()) return false;
  for (std::size_t i = 0; i < axes.size(); ++i) {
    const Axis& a = axes[i];
    const Axis& b = other.axes[i];
    if (a.kind != b.kind || a.lo != b.lo || a.hi != b.hi) return false;
  }
  return true;
}

ParamDomain ParamDomain::rectangle(const std::vector<std::pair<double, double>>& extents,
                                   const std::vector<bool>& periodic) {
  if (extents.size() != periodic.size()) throw Error(Errc::invalid_argument, "extents/periodic size mismatch");
  ParamDomain d;
  d.kind = DomainKind::rectangle;
  for (std::size_t i = 0; i < extents.size(); ++i) {
    Axis a;
    a.kind = periodic[i] ? AxisKind::periodic : AxisKind::interval;
    a.lo = extents[i].first;
    a.hi = extents[i].second;
    d.axes.push_back(a);
  }
  validate_domain(d);
  return d;
}

ParamDomain ParamDomain::polar_cap(double radius) {
  ParamDomain d;
  d.kind = DomainKind::polar_cap;
  d.axes.push_back(Axis{AxisKind::radial, 0.0, radius, {}, 0.0});
  d.axes.push_back(Axis{AxisKind::periodic, 0.0, 2.0 * std::numbers::pi, {}, 0.0});
  validate_domain(d);
  return d;
}

ParamDomain ParamDomain::annulus(double inner, double outer, int n) {
  if (n < 2 || n > kMaxDim) throw Error(Errc::invalid_domain, "annulus ambient dimension must be 2..4");
  ParamDomain d;
  d.kind = DomainKind::annulus;
  d.axes.push_back(Axis{AxisKind::interval, inner, outer, {}, 0.0});
  for (int i = 0; i < n - 2; ++i) d.axes.push_back(Axis{AxisKind::open, 0.0, std::numbers::pi, {}, 0.0});
  d.axes.push_back(Axis{AxisKind::periodic, 0.0, 2.0 * std::numbers::pi, {}, 0.0});
  validate_domain(d);
  return d;
}

double Box::measure() const {
  double m = 1.0;
  for (int i = 0; i < lo.size(); ++i) m *= hi(i) - lo(i);
  return m;
}

Mesh build_grid_mesh(const ParamDomain& domain, const std::vector<int>& resolution, int stencil_radius) {
  validate_domain(domain);
  if (static_cast<int>(resolution.size()) != domain.dim()) {
    throw Error(Errc::invalid_argument, "resolution must list one count per axis");
  }
  for (int n : resolution) {
    if (n < 4) throw Error(Errc::resolution_too_small, "resolution must be >= 4 per axis");
  }
  if (stencil_radius < 1) throw Error(Errc::invalid_argument, "stencil radius must be >= 1");
  std::vector<std::vector<double>> nodes;
  for (int a = 0; a < domain.dim(); ++a) {
    std::vector<double> x = uniform_nodes(domain.axes[a], resolution[a]);
    snap_features(domain.axes[a], x);
    nodes.push_back(std::move(x));
  }
  return mesh_from_nodes(domain, std::move(nodes), stencil_radius);
}

Mesh mesh_from_nodes(const ParamDomain& domain, std::vector<std::vector<double>> nodes, int stencil_radius) {
  validate_domain(domain);
  if (static_cast<int>(nodes.size()) != domain.dim()) throw Error(Errc::invalid_argument, "node list per axis required");
  if (stencil_radius < 1) throw Error(Errc::invalid_argument, "stencil radius must be >= 1");
  Mesh m;
  m.domain_ = domain;
  m.stencil_radius_ = stencil_radius;
  const int d = domain.dim();
  m.cell_lo_.resize(d);
  m.cell_hi_.resize(d);
  for (int a = 0; a < d; ++a) {
    const Axis& ax = domain.axes[a];
    const std::vector<double>& x = nodes[a];
    const int n = static_cast<int>(x.size());
    if (n < 2) throw Error(Errc::resolution_too_small, "axis needs at least two nodes");
    for (int k = 1; k < n; ++k) {
      if (!(x[k] > x[k - 1])) throw Error(Errc::invalid_domain, "nodes must be strictly increasing");
    }
    m.resolution_.push_back(n);
    auto& lo = m.cell_lo_[a];
    auto& hi = m.cell_hi_[a];
    lo.resize(n);
    hi.resize(n);
    for (int k = 0; k + 1 < n; ++k) {
      hi[k] = 0.5 * (x[k] + x[k + 1]);
      lo[k + 1] = hi[k];
    }
    if (ax.kind == AxisKind::periodic) {
      const double seam = 0.5 * (x[n - 1] + x[0] + ax.length());
      hi[n - 1] = seam;
      lo[0] = seam - ax.length();
    } else {
      lo[0] = ax.lo;
      hi[n - 1] = ax.hi;
    }
  }
  m.nodes_ = std::move(nodes);

  if (domain.has_pole()) {
    m.num_vertices_ = 1 + static_cast<std::size_t>(m.resolution_[0] - 1) * m.resolution_[1];
  } else {
    std::size_t stride = 1;
    for (int a = d - 1; a >= 0; --a) {
      m.strides_[a] = static_cast<int>(stride);
      stride *= m.resolution_[a];
    }
    m.num_vertices_ = stride;
  }

  const std::size_t nv = m.num_vertices_;
  std::vector<char> on_boundary(nv, 0);
  for (std::size_t v = 0; v < nv; ++v) on_boundary[v] = m.boundary_faces(v).empty() ? 0 : 1;

  UnionFind uf(nv);
  for (std::size_t v = 0; v < nv; ++v) {
    if (!on_boundary[v]) continue;
    const GridIndex idx = m.grid_index(v);
    GridIndex off{};
    const int total = static_cast<int>(std::pow(3, d));
    for (int code = 0; code < total; ++code) {
      int c = code;
      bool zero = true;
      for (int a = 0; a < d; ++a) {
        off[a] = c % 3 - 1;
        c /= 3;
        if (off[a] != 0) zero = false;
      }
      if (zero) continue;
      GridIndex t = idx;
      for (int a = 0; a < d; ++a) t[a] += off[a];
      const std::size_t w = m.vertex_at(t);
      if (w != Mesh::npos && on_boundary[w]) uf.unite(v, w);
    }
  }
  m.boundary_tag_.assign(nv, -1);
  std::vector<int> root_id(nv, -1);
  for (std::size_t v = 0; v < nv; ++v) {
    if (!on_boundary[v]) continue;
    const std::size_t r = uf.find(v);
    if (root_id[r] < 0) {
      root_id[r] = static_cast<int>(m.components_.size());
      m.components_.push_back(BoundaryComponent{root_id[r], {}});
    }
    m.boundary_tag_[v] = root_id[r];
    m.components_[root_id[r]].vertices.push_back(v);
  }
  return m;
}

GridIndex Mesh::grid_index(std::size_t v) const {
  GridIndex idx{};
  if (domain_.has_pole()) {
    if (v == 0) return idx;
    const std::size_t w = v - 1;
    idx[0] = 1 + static_cast<int>(w / resolution_[1]);
    idx[1] = static_cast<int>(w % resolution_[1]);
    return idx;
  }
  for (int a = 0; a < dim(); ++a) {
    idx[a] = static_cast<int>(v / strides_[a]);
    v %= strides_[a];
  }
  return idx;
}

std::size_t Mesh::vertex_at(const GridIndex& in) const {
  GridIndex idx = in;
  for (int a = 0; a < dim(); ++a) {
    const int n = resolution_[a];
    if (domain_.axes[a].kind == AxisKind::periodic) {
      idx[a] = wrap_index(idx[a], n);
    } else if (idx[a] < 0 || idx[a] >= n) {
      return npos;
    }
  }
  if (domain_.has_pole()) {
    if (idx[0] == 0) return 0;
    return 1 + static_cast<std::size_t>(idx[0] - 1) * resolution_[1] + idx[1];
  }
  std::size_t v = 0;
  for (int a = 0; a < dim(); ++a) v += static_cast<std::size_t>(idx[a]) * strides_[a];
  return v;
}

Vec Mesh::coords(std::size_t v) const {
  const GridIndex idx = grid_index(v);
  Vec x(dim());
  for (int a = 0; a < dim(); ++a) x(a) = nodes_[a][idx[a]];
  return x;
}

Box Mesh::cell(std::size_t v) const {
  const GridIndex idx = grid_index(v);
  Box b{Vec(dim()), Vec(dim())};
  for (int a = 0; a < dim(); ++a) {
    b.lo(a) = cell_lo_[a][idx[a]];
    b.hi(a) = cell_hi_[a][idx[a]];
  }
  if (is_pole(v)) {
    b.lo(1) = cell_lo_[1][0];
    b.hi(1) = b.lo(1) + domain_.axes[1].length();
  }
  return b;
}

std::vector<BoundaryFace> Mesh::boundary_faces(std::size_t v) const {
  std::vector<BoundaryFace> faces;
  if (is_pole(v)) return faces;
  const GridIndex idx = grid_index(v);
  for (int a = 0; a < dim(); ++a) {
    const AxisKind k = domain_.axes[a].kind;
    const int n = resolution_[a];
    if (k == AxisKind::interval) {
      if (idx[a] == 0) faces.push_back({a, 0});
      if (idx[a] == n - 1) faces.push_back({a, 1});
    } else if (k == AxisKind::radial && idx[a] == n - 1) {
      faces.push_back({a, 1});
    }
  }
  return faces;
}

std::size_t Mesh::nearest_vertex(const Vec& x) const {
  if (x.size() != dim()) throw Error(Errc::invalid_argument, "point dimension mismatch");
  GridIndex idx{};
  for (int a = 0; a < dim(); ++a) {
    const Axis& ax = domain_.axes[a];
    const auto& nd = nodes_[a];
    double best_d = INFINITY;
    for (int k = 0; k < static_cast<int>(nd.size()); ++k) {
      double dd = std::abs(nd[k] - x(a));
      if (ax.kind == AxisKind::periodic) {
        dd = std::fmod(dd, ax.length());
        dd = std::min(dd, ax.length() - dd);
      }
      if (dd < best_d) {
        best_d = dd;
        idx[a] = k;
      }
    }
  }
  return vertex_at(idx);
}

std::vector<BoundaryComponent> boundary_components(const Mesh& mesh) { return mesh.boundary_components(); }

EdgeGraph build_edge_graph(const Mesh& mesh) {
  const int d = mesh.dim();
  const int s = mesh.stencil_radius();
  EdgeGraph g;
  const int side = 2 * s + 1;
  int total = 1;
  for (int a = 0; a < d; ++a) total *= side;
  for (int code = 0; code < total; ++code) {
    GridIndex o{};
    int c = code;
    int gcd_acc = 0;
    for (int a = 0; a < d; ++a) {
      o[a] = c % side - s;
      c /= side;
      gcd_acc = std::gcd(gcd_acc, std::abs(o[a]));
    }
    if (gcd_acc == 1) g.offsets.push_back(o);
  }
  const std::size_t nv = mesh.num_vertices();
  g.row.assign(nv + 1, 0);
  g.target.reserve(nv * g.offsets.size());
  g.offset.reserve(nv * g.offsets.size());
  const bool pole = mesh.domain().has_pole();
  for (std::size_t u = 0; u < nv; ++u) {
    if (mesh.is_pole(u)) {
      for (int i = 0; i < mesh.resolution()[1]; ++i) {
        g.target.push_back(static_cast<std::uint32_t>(mesh.vertex_at({1, i, 0, 0})));
        g.offset.push_back(EdgeGraph::kPoleEdge);
      }
      g.row[u + 1] = g.target.size();
      continue;
    }
    const GridIndex idx = mesh.grid_index(u);
    for (std::size_t k = 0; k < g.offsets.size(); ++k) {
      const GridIndex& o = g.offsets[k];
      GridIndex t = idx;
      for (int a = 0; a < d; ++a) t[a] += o[a];
      if (pole && t[0] <= 0) {
        if (!(t[0] == 0 && o[0] == -1 && o[1] == 0)) continue;
      }
      const std::size_t v = mesh.vertex_at(t);
      if (v == Mesh::npos || v == u) continue;
      g.target.push_back(static_cast<std::uint32_t>(v));
      g.offset.push_back(static_cast<std::uint16_t>(k));
    }
    g.row[u + 1] = g.target.size();
  }
  return g;
}

Vec edge_displacement(const Mesh& mesh, const EdgeGraph& graph, std::size_t u, std::size_t e) {
  const int d = mesh.dim();
  Vec disp = Vec::Zero(d);
  const std::size_t v = graph.target[e];
  if (mesh.is_pole(u) || mesh.is_pole(v)) {
    disp(0) = mesh.nodes(0)[mesh.grid_index(v)[0]] - mesh.nodes(0)[mesh.grid_index(u)[0]];
    return disp;
  }
  const GridIndex idx = mesh.grid_index(u);
  const GridIndex& o = graph.offsets[graph.offset[e]];
  for (int a = 0; a < d; ++a) {
    const auto& nd = mesh.nodes(a);
    const int raw = idx[a] + o[a];
    if (mesh.domain().axes[a].kind == AxisKind::periodic) {
      const int n = static_cast<int>(nd.size());
      disp(a) = nd[wrap_index(raw, n)] - nd[idx[a]] + floor_div(raw, n) * mesh.domain().axes[a].length();
    } else {
      disp(a) = nd[raw] - nd[idx[a]];
    }
  }
  return disp;
}

}  // namespace vadb
