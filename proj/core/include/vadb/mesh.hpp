#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "vadb/tensor.hpp"

namespace vadb {

enum class AxisKind {
  interval,  // closed interval; both endpoints are boundary
  periodic,  // circle of length hi - lo
  radial,    // radius of a polar cap; node 0 is the pole, the last node is boundary
  open,      // open interval sampled at cell centres; no boundary (hyperspherical angles)
};

struct Axis {
  AxisKind kind = AxisKind::interval;
  double lo = 0.0;
  double hi = 1.0;
  // Parameter values that must coincide with a grid node (cinch loci, probe points).
  std::vector<double> features;
  // Periodic axes only: node k sits at lo + (k + shift) * (hi - lo) / N.
  double shift = 0.0;

  double length() const { return hi - lo; }
};

enum class DomainKind { rectangle, polar_cap, annulus };

struct ParamDomain {
  DomainKind kind = DomainKind::rectangle;
  std::vector<Axis> axes;

  int dim() const { return static_cast<int>(axes.size()); }
  bool has_pole() const { return kind == DomainKind::polar_cap; }
  double lebesgue_measure() const;
  // Same kind, axis kinds and extents; features and shifts are ignored.
  bool same_as(const ParamDomain& other) const;

  static ParamDomain rectangle(const std::vector<std::pair<double, double>>& extents,
                               const std::vector<bool>& periodic);
  // (r, theta) in [0, radius] x [0, 2pi); r = 0 is the collapsed pole.
  static ParamDomain polar_cap(double radius);
  // (rho, chi_1, ..., chi_{n-2}, theta): a shell [inner, outer] x S^{n-1} in R^n.
  static ParamDomain annulus(double inner, double outer, int n);
};

struct Box {
  Vec lo;
  Vec hi;
  double measure() const;
};

struct BoundaryFace {
  int axis;
  int side;  // 0 = lower end, 1 = upper end
};

struct BoundaryComponent {
  int id;
  std::vector<std::size_t> vertices;  // ascending
};

using GridIndex = std::array<int, kMaxDim>;

class Mesh {
 public:
  const ParamDomain& domain() const { return domain_; }
  int dim() const { return domain_.dim(); }
  std::size_t num_vertices() const { return num_vertices_; }
  const std::vector<int>& resolution() const { return resolution_; }
  int stencil_radius() const { return stencil_radius_; }
  const std::vector<double>& nodes(int axis) const { return nodes_[axis]; }

  bool is_pole(std::size_t v) const { return domain_.has_pole() && v == 0; }
  GridIndex grid_index(std::size_t v) const;
  // Wraps periodic indices; returns npos when the index leaves the grid.
  std::size_t vertex_at(const GridIndex& idx) const;
  Vec coords(std::size_t v) const;

  // Dual control volume of a vertex; these partition the parameter domain.
  Box cell(std::size_t v) const;
  double control_volume(std::size_t v) const { return cell(v).measure(); }
  double cell_lo(int axis, int k) const { return cell_lo_[axis][k]; }
  double cell_hi(int axis, int k) const { return cell_hi_[axis][k]; }

  bool is_boundary(std::size_t v) const { return boundary_tag_[v] >= 0; }
  // -1 for interior vertices, otherwise the component id.
  int boundary_tag(std::size_t v) const { return boundary_tag_[v]; }
  const std::vector<BoundaryComponent>& boundary_components() const { return components_; }
  std::vector<BoundaryFace> boundary_faces(std::size_t v) const;

  // Vertex nearest to a parameter point (periodic distance on periodic axes).
  std::size_t nearest_vertex(const Vec& x) const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  friend Mesh mesh_from_nodes(const ParamDomain&, std::vector<std::vector<double>>, int);

  ParamDomain domain_;
  std::vector<int> resolution_;
  std::vector<std::vector<double>> nodes_;
  std::vector<std::vector<double>> cell_lo_;
  std::vector<std::vector<double>> cell_hi_;
  int stencil_radius_ = 3;
  std::size_t num_vertices_ = 0;
  GridIndex strides_{};
  std::vector<int> boundary_tag_;
  std::vector<BoundaryComponent> components_;
};

Mesh build_grid_mesh(const ParamDomain& domain, const std::vector<int>& resolution, int stencil_radius = 3);

// Structured mesh over explicit (possibly non-uniform) node positions per axis.
Mesh mesh_from_nodes(const ParamDomain& domain, std::vector<std::vector<double>> nodes, int stencil_radius);

std::vector<BoundaryComponent> boundary_components(const Mesh& mesh);

// Neighbour graph in CSR form. Each edge stores its stencil offset; the
// parameter displacement is recovered by `displacement`.
struct EdgeGraph {
  std::vector<std::size_t> row;        // size num_vertices + 1
  std::vector<std::uint32_t> target;   // neighbour vertex
  std::vector<std::uint16_t> offset;   // index into `offsets`, or kPoleEdge
  std::vector<GridIndex> offsets;

  static constexpr std::uint16_t kPoleEdge = 0xFFFF;

  std::size_t num_vertices() const { return row.empty() ? 0 : row.size() - 1; }
  std::size_t num_edges() const { return target.size(); }
};

// All primitive integer offsets in [-s, s]^d, periodic wrap, pole fan edges.
EdgeGraph build_edge_graph(const Mesh& mesh);

// Parameter displacement of edge `e` leaving vertex `u` (unwrapped across seams).
Vec edge_displacement(const Mesh& mesh, const EdgeGraph& graph, std::size_t u, std::size_t e);

}  // namespace vadb
