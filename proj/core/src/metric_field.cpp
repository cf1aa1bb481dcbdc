#include "vadb/metric_field.hpp"

#include <cmath>
#include <string>

#include "vadb/error.hpp"
#include "vadb/parallel.hpp"

namespace vadb {

Vec wrap_point(const ParamDomain& domain, const Vec& x) {
  Vec y = x;
  for (int a = 0; a < domain.dim(); ++a) {
    const Axis& ax = domain.axes[a];
    if (ax.kind != AxisKind::periodic) continue;
    double t = std::fmod(y(a) - ax.lo, ax.length());
    if (t < 0) t += ax.length();
    y(a) = ax.lo + t;
  }
  return y;
}

MetricField::MetricField(std::shared_ptr<const Mesh> mesh, std::vector<Tensor> samples)
    : mesh_(std::move(mesh)), samples_(std::move(samples)) {
  if (!mesh_) throw Error(Errc::invalid_argument, "null mesh");
  if (samples_.size() != mesh_->num_vertices()) throw Error(Errc::domain_mismatch, "one sample per vertex required");
  check_positive_definite();
  compute_weights();
}

MetricField::MetricField(std::shared_ptr<const Mesh> mesh, MetricEvaluator evaluator, RefineHint hint,
                         const QuadratureOptions& quad)
    : mesh_(std::move(mesh)), evaluator_(std::move(evaluator)), hint_(std::move(hint)), quad_(quad) {
  if (!mesh_) throw Error(Errc::invalid_argument, "null mesh");
  if (!evaluator_) throw Error(Errc::invalid_argument, "empty evaluator");
  samples_.resize(mesh_->num_vertices());
  for (std::size_t v = 0; v < samples_.size(); ++v) samples_[v] = evaluate(mesh_->coords(v));
  check_positive_definite();
  compute_weights();
}

Tensor MetricField::evaluate(const Vec& x) const {
  if (!evaluator_) throw Error(Errc::unsupported, "metric field has no closed-form evaluator");
  return evaluator_(wrap_point(mesh_->domain(), x));
}

void MetricField::check_positive_definite() const {
  const int d = dim();
  for (std::size_t v = 0; v < samples_.size(); ++v) {
    const Tensor& g = samples_[v];
    if (g.rows() != d || g.cols() != d) throw Error(Errc::domain_mismatch, "tensor dimension mismatch");
    if (!g.isApprox(g.transpose(), 1e-12)) {
      throw Error(Errc::not_positive_definite, "non-symmetric sample at vertex " + std::to_string(v));
    }
    // The pole is a coordinate singularity: only the radial block is meaningful there.
    const bool ok = mesh_->is_pole(v) ? (g(0, 0) > 0.0 && std::isfinite(g(0, 0))) : is_positive_definite(g);
    if (!ok) throw Error(Errc::not_positive_definite, "sample not positive definite at vertex " + std::to_string(v));
  }
}

void MetricField::compute_weights() {
  weights_.assign(samples_.size(), 0.0);
  if (!evaluator_) {
    for (std::size_t v = 0; v < samples_.size(); ++v) weights_[v] = sqrt_det(samples_[v]) * mesh_->control_volume(v);
    return;
  }
  auto density = [this](const Vec& x) { return sqrt_det(evaluate(x)); };
  parallel_for(samples_.size(), 0, [&](std::size_t v) {
    const Box cell = mesh_->cell(v);
    QuadratureOptions q = quad_;
    q.abs_tol = std::max(q.abs_tol, 1e-13 * cell.measure());
    weights_[v] = integrate_box(density, cell, q, hint_);
  });
}

}  // namespace vadb
