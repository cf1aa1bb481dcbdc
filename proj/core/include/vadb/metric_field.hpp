#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "vadb/mesh.hpp"
#include "vadb/quadrature.hpp"
#include "vadb/tensor.hpp"

namespace vadb {

using MetricEvaluator = std::function<Tensor(const Vec&)>;

// Per-vertex metric samples on an immutable mesh, optionally backed by a
// closed-form evaluator used for cell and facet quadrature.
class MetricField {
 public:
  // Sampled only: volumes use the midpoint rule on the dual cells.
  MetricField(std::shared_ptr<const Mesh> mesh, std::vector<Tensor> samples);
  // Closed form: samples are evaluator values at vertices; volumes are adaptive.
  MetricField(std::shared_ptr<const Mesh> mesh, MetricEvaluator evaluator, RefineHint hint = {},
              const QuadratureOptions& quad = {});

  const Mesh& mesh() const { return *mesh_; }
  const std::shared_ptr<const Mesh>& mesh_ptr() const { return mesh_; }
  int dim() const { return mesh_->dim(); }
  std::size_t size() const { return samples_.size(); }

  const Tensor& at(std::size_t v) const { return samples_[v]; }
  const std::vector<Tensor>& samples() const { return samples_; }

  bool has_evaluator() const { return static_cast<bool>(evaluator_); }
  // Evaluates at a parameter point, wrapping periodic coordinates first.
  Tensor evaluate(const Vec& x) const;
  const RefineHint& refine_hint() const { return hint_; }
  const QuadratureOptions& quadrature() const { return quad_; }

  // Riemannian volume of each vertex's dual cell.
  const std::vector<double>& volume_weights() const { return weights_; }

 private:
  void check_positive_definite() const;
  void compute_weights();

  std::shared_ptr<const Mesh> mesh_;
  std::vector<Tensor> samples_;
  MetricEvaluator evaluator_;
  RefineHint hint_;
  QuadratureOptions quad_;
  std::vector<double> weights_;
};

// Wraps periodic coordinates of x into [lo, hi).
Vec wrap_point(const ParamDomain& domain, const Vec& x);

}  // namespace vadb
