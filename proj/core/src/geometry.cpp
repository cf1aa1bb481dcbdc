#include "vadb/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "vadb/error.hpp"
#include "vadb/parallel.hpp"

namespace vadb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_same_mesh(const MetricField& a, const MetricField& b) {
  if (a.mesh_ptr() == b.mesh_ptr()) return;
  if (!a.mesh().domain().same_as(b.mesh().domain()) || a.mesh().num_vertices() != b.mesh().num_vertices() ||
      a.mesh().resolution() != b.mesh().resolution()) {
    throw Error(Errc::domain_mismatch, "fields live on different meshes");
  }
}

unsigned combined_hint(const Box& box, const MetricField& a, const MetricField& b) {
  unsigned m = 0;
  if (a.refine_hint()) m |= a.refine_hint()(box);
  if (b.refine_hint()) m |= b.refine_hint()(box);
  return m;
}

struct FacePiece {
  std::size_t vertex;
  int axis;
  double coord;
  std::vector<int> tangent;
  Box box;
};

std::vector<FacePiece> boundary_pieces(const Mesh& mesh, int component) {
  const auto& comps = mesh.boundary_components();
  if (component >= static_cast<int>(comps.size())) {
    throw Error(Errc::no_such_component, "boundary component " + std::to_string(component) + " does not exist");
  }
  std::vector<FacePiece> pieces;
  const int d = mesh.dim();
  for (const auto& comp : comps) {
    if (component >= 0 && comp.id != component) continue;
    for (std::size_t v : comp.vertices) {
      const Box cell = mesh.cell(v);
      const Vec x = mesh.coords(v);
      for (const BoundaryFace& f : mesh.boundary_faces(v)) {
        FacePiece p;
        p.vertex = v;
        p.axis = f.axis;
        p.coord = x(f.axis);
        p.box = Box{Vec(d - 1), Vec(d - 1)};
        int k = 0;
        for (int a = 0; a < d; ++a) {
          if (a == f.axis) continue;
          p.tangent.push_back(a);
          p.box.lo(k) = cell.lo(a);
          p.box.hi(k) = cell.hi(a);
          ++k;
        }
        pieces.push_back(std::move(p));
      }
    }
  }
  return pieces;
}

Vec face_point(const FacePiece& p, const Vec& y, int d) {
  Vec x(d);
  x(p.axis) = p.coord;
  for (std::size_t k = 0; k < p.tangent.size(); ++k) x(p.tangent[k]) = y(static_cast<int>(k));
  return x;
}

}  // namespace

double edge_length(const Tensor& g_u, const Tensor& g_v, const Vec& d) {
  static const double c = 0.5 * std::sqrt(0.6);
  const double a = quadratic_form(g_u, d);
  const double b = quadratic_form(g_v, d);
  const double t1 = 0.5 - c;
  const double t3 = 0.5 + c;
  const double q1 = std::sqrt(std::max(0.0, (1.0 - t1) * a + t1 * b));
  const double q2 = std::sqrt(std::max(0.0, 0.5 * a + 0.5 * b));
  const double q3 = std::sqrt(std::max(0.0, (1.0 - t3) * a + t3 * b));
  return (5.0 * q1 + 8.0 * q2 + 5.0 * q3) / 18.0;
}

double edge_length(const MetricField& field, std::size_t u, std::size_t v, const Vec& d) {
  if (u <= v) return edge_length(field.at(u), field.at(v), d);
  return edge_length(field.at(v), field.at(u), Vec(-d));
}

GraphMetric reweight(const EdgeGraph& graph, const MetricField& field, int workers) {
  if (graph.num_vertices() != field.size()) throw Error(Errc::domain_mismatch, "graph and field sizes differ");
  GraphMetric gm{graph, std::vector<double>(graph.num_edges())};
  const Mesh& mesh = field.mesh();
  parallel_for(graph.num_vertices(), workers, [&](std::size_t u) {
    for (std::size_t e = graph.row[u]; e < graph.row[u + 1]; ++e) {
      const std::size_t v = graph.target[e];
      gm.weight[e] = edge_length(field, u, v, edge_displacement(mesh, graph, u, e));
    }
  });
  return gm;
}

GraphMetric build_graph_metric(const MetricField& field, int workers) {
  return reweight(build_edge_graph(field.mesh()), field, workers);
}

std::vector<double> shortest_paths(const GraphMetric& gm, const std::vector<std::size_t>& sources) {
  const EdgeGraph& g = gm.graph;
  std::vector<double> dist(g.num_vertices(), kInf);
  using Item = std::pair<double, std::uint32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  for (std::size_t s : sources) {
    if (s >= dist.size()) throw Error(Errc::invalid_argument, "source vertex out of range");
    dist[s] = 0.0;
    heap.emplace(0.0, static_cast<std::uint32_t>(s));
  }
  while (!heap.empty()) {
    const auto [du, u] = heap.top();
    heap.pop();
    if (du > dist[u]) continue;
    for (std::size_t e = g.row[u]; e < g.row[u + 1]; ++e) {
      const std::uint32_t v = g.target[e];
      const double nd = du + gm.weight[e];
      if (nd < dist[v]) {
        dist[v] = nd;
        heap.emplace(nd, v);
      }
    }
  }
  return dist;
}

DistanceMatrix distance_matrix(const GraphMetric& gm, const std::vector<std::size_t>& samples,
                               std::vector<double> weights, int workers) {
  if (samples.empty()) throw Error(Errc::invalid_argument, "sample set is empty");
  if (weights.size() != samples.size()) throw Error(Errc::invalid_argument, "one weight per sample required");
  const std::size_t n = samples.size();
  DistanceMatrix dm{samples, Eigen::MatrixXd(n, n), std::move(weights)};
  parallel_for(n, workers, [&](std::size_t i) {
    const std::vector<double> dist = shortest_paths(gm, {samples[i]});
    for (std::size_t k = 0; k < n; ++k) {
      if (!std::isfinite(dist[samples[k]])) throw Error(Errc::disconnected_graph, "sample unreachable in edge graph");
      dm.d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = dist[samples[k]];
    }
  });
  for (std::size_t i = 0; i < n; ++i) {
    dm.d(i, i) = 0.0;
    for (std::size_t k = i + 1; k < n; ++k) {
      const double m = std::min(dm.d(i, k), dm.d(k, i));
      dm.d(i, k) = m;
      dm.d(k, i) = m;
    }
  }
  return dm;
}

DistanceMatrix distance_matrix(const MetricField& field, const SampleSet& samples, int workers) {
  return distance_matrix(build_graph_metric(field, workers), samples.ids, samples.weights(field), workers);
}

double diameter(const DistanceMatrix& dm) { return dm.d.size() == 0 ? 0.0 : dm.d.maxCoeff(); }

double diameter_sweep(const GraphMetric& gm, std::size_t start, int sweeps) {
  double best = 0.0;
  std::size_t cur = start;
  for (int s = 0; s < sweeps; ++s) {
    const std::vector<double> dist = shortest_paths(gm, {cur});
    std::size_t far = cur;
    for (std::size_t v = 0; v < dist.size(); ++v) {
      if (!std::isfinite(dist[v])) throw Error(Errc::disconnected_graph, "edge graph is disconnected");
      if (dist[v] > dist[far]) far = v;
    }
    best = std::max(best, dist[far]);
    if (far == cur) break;
    cur = far;
  }
  return best;
}

double volume(const MetricField& field) {
  double s = 0.0;
  for (double w : field.volume_weights()) s += w;
  return s;
}

double boundary_area(const MetricField& field, int component) {
  const Mesh& mesh = field.mesh();
  const int d = mesh.dim();
  double total = 0.0;
  for (const FacePiece& p : boundary_pieces(mesh, component)) {
    const int k = static_cast<int>(p.tangent.size());
    if (field.has_evaluator()) {
      auto f = [&](const Vec& y) {
        return sqrt_det(restrict_axes(field.evaluate(face_point(p, y, d)), p.tangent.data(), k));
      };
      QuadratureOptions q = field.quadrature();
      q.abs_tol = 1e-13 * p.box.measure();
      total += integrate_box(f, p.box, q);
    } else {
      total += sqrt_det(restrict_axes(field.at(p.vertex), p.tangent.data(), k)) * p.box.measure();
    }
  }
  return total;
}

double lp_metric_distance(const MetricField& g_a, const MetricField& g_b, const MetricField& base, double p) {
  require_same_mesh(g_a, g_b);
  require_same_mesh(g_a, base);
  if (!(p > 0.0)) throw Error(Errc::invalid_argument, "exponent p must be positive");
  const Mesh& mesh = g_a.mesh();
  std::vector<double> part(mesh.num_vertices(), 0.0);
  const bool exact = g_a.has_evaluator() && g_b.has_evaluator() && base.has_evaluator();
  auto integrand = [&](const Vec& x) {
    const Tensor gb = base.evaluate(x);
    return std::pow(frame_norm(g_a.evaluate(x) - g_b.evaluate(x), gb), p) * sqrt_det(gb);
  };
  RefineHint hint = [&](const Box& b) { return combined_hint(b, g_a, g_b); };
  parallel_for(mesh.num_vertices(), 0, [&](std::size_t v) {
    if (exact) {
      const Box cell = mesh.cell(v);
      QuadratureOptions q = base.quadrature();
      q.abs_tol = 1e-13 * cell.measure();
      part[v] = integrate_box(integrand, cell, q, hint);
    } else if (!mesh.is_pole(v)) {
      const Tensor diff = g_a.at(v) - g_b.at(v);
      part[v] = std::pow(frame_norm(diff, base.at(v)), p) * base.volume_weights()[v];
    }
  });
  double s = 0.0;
  for (double x : part) s += x;
  return std::pow(s, 1.0 / p);
}

double boundary_lp_distance(const MetricField& g_a, const MetricField& g_b, const MetricField& h, double p,
                            int component) {
  require_same_mesh(g_a, g_b);
  require_same_mesh(g_a, h);
  if (!(p > 0.0)) throw Error(Errc::invalid_argument, "exponent p must be positive");
  const Mesh& mesh = g_a.mesh();
  const int d = mesh.dim();
  const bool exact = g_a.has_evaluator() && g_b.has_evaluator() && h.has_evaluator();
  double s = 0.0;
  for (const FacePiece& piece : boundary_pieces(mesh, component)) {
    const int k = static_cast<int>(piece.tangent.size());
    const int* ax = piece.tangent.data();
    if (exact) {
      auto f = [&](const Vec& y) {
        const Vec x = face_point(piece, y, d);
        const Tensor hr = restrict_axes(h.evaluate(x), ax, k);
        const Tensor diff = restrict_axes(g_a.evaluate(x) - g_b.evaluate(x), ax, k);
        return std::pow(frame_norm(diff, hr), p) * sqrt_det(hr);
      };
      QuadratureOptions q = h.quadrature();
      q.abs_tol = 1e-13 * piece.box.measure();
      s += integrate_box(f, piece.box, q);
    } else {
      const std::size_t v = piece.vertex;
      const Tensor hr = restrict_axes(h.at(v), ax, k);
      const Tensor diff = restrict_axes(g_a.at(v) - g_b.at(v), ax, k);
      s += std::pow(frame_norm(diff, hr), p) * sqrt_det(hr) * piece.box.measure();
    }
  }
  return std::pow(s, 1.0 / p);
}

DominanceReport dominance_check(const MetricField& g_a, const MetricField& g_b, double tol, double slack) {
  require_same_mesh(g_a, g_b);
  if (!(tol >= 0.0)) throw Error(Errc::invalid_argument, "tolerance must be nonnegative");
  DominanceReport r;
  r.tolerance = tol;
  r.slack = slack;
  r.min_eigenvalue = kInf;
  const Mesh& mesh = g_a.mesh();
  for (std::size_t v = 0; v < mesh.num_vertices(); ++v) {
    const Tensor diff = g_b.at(v) - slack * g_a.at(v);
    const double e = mesh.is_pole(v) ? diff(0, 0) : min_eigenvalue(diff);
    if (e < r.min_eigenvalue) {
      r.min_eigenvalue = e;
      r.worst_vertex = v;
    }
    if (e < -tol) ++r.violations;
  }
  return r;
}

}  // namespace vadb
