#include "vadb/tensor.hpp"

#include <cmath>

namespace vadb {

double min_eigenvalue(const Tensor& t) {
  if (t.rows() == 1) return t(0, 0);
  Eigen::SelfAdjointEigenSolver<Tensor> es(t, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

bool is_positive_definite(const Tensor& t) {
  if (!t.allFinite()) return false;
  Eigen::LLT<Tensor> llt(t);
  return llt.info() == Eigen::Success && min_eigenvalue(t) > 0.0;
}

double sqrt_det(const Tensor& t) {
  const double d = t.determinant();
  return d > 0.0 ? std::sqrt(d) : 0.0;
}

double quadratic_form(const Tensor& g, const Vec& d) {
  double s = 0.0;
  const int n = static_cast<int>(d.size());
  for (int i = 0; i < n; ++i) {
    s += g(i, i) * d(i) * d(i);
  }
  for (int i = 0; i < n; ++i) {
    for (int k = i + 1; k < n; ++k) {
      s += 2.0 * g(i, k) * d(i) * d(k);
    }
  }
  return s;
}

double frame_norm(const Tensor& diff, const Tensor& base) {
  Eigen::LLT<Tensor> llt(base);
  Tensor x = llt.matrixL().solve(diff);
  Tensor y = llt.matrixL().solve(x.transpose());
  return y.norm();
}

double relative_min_eigenvalue(const Tensor& t, const Tensor& base) {
  if (t.rows() == 1) return t(0, 0) / base(0, 0);
  Eigen::GeneralizedSelfAdjointEigenSolver<Tensor> es(t, base, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

Tensor restrict_axes(const Tensor& t, const int* axes, int count) {
  Tensor r(count, count);
  for (int i = 0; i < count; ++i) {
    for (int k = 0; k < count; ++k) r(i, k) = t(axes[i], axes[k]);
  }
  return r;
}

}  // namespace vadb
