#include <doctest.h>

#include <cmath>

#include "vadb/tensor.hpp"

using namespace vadb;

namespace {
Tensor diag2(double a, double b) {
  Tensor t = Tensor::Zero(2, 2);
  t(0, 0) = a;
  t(1, 1) = b;
  return t;
}
}  // namespace

TEST_CASE("min eigenvalue of a symmetric 2x2 matches the closed form") {
  Tensor t(2, 2);
  t << 2.0, 0.5, 0.5, 1.0;
  const double tr = 3.0, det = 1.75;
  const double expected = 0.5 * (tr - std::sqrt(tr * tr - 4 * det));
  CHECK(min_eigenvalue(t) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(is_positive_definite(t));
  CHECK_FALSE(is_positive_definite(diag2(1.0, -1e-3)));
}

TEST_CASE("sqrt_det is zero for non-positive determinants") {
  CHECK(sqrt_det(diag2(4.0, 9.0)) == doctest::Approx(6.0));
  CHECK(sqrt_det(diag2(-1.0, 1.0)) == 0.0);
}

TEST_CASE("quadratic form is monotone in diagonal entries") {
  Vec d(2);
  d << 0.3, -1.7;
  const double lo = quadratic_form(diag2(1.0, 1.0), d);
  const double hi = quadratic_form(diag2(1.0, std::nextafter(1.0, 2.0)), d);
  CHECK(hi >= lo);
  CHECK(lo == doctest::Approx(0.09 + 2.89));
}

TEST_CASE("frame norm is invariant under the base metric") {
  const Tensor base = diag2(4.0, 1.0);
  const Tensor diff = diag2(4.0, 0.0);
  CHECK(frame_norm(diff, base) == doctest::Approx(1.0));
  CHECK(relative_min_eigenvalue(diag2(2.0, 3.0), diag2(1.0, 1.0)) == doctest::Approx(2.0));
}

TEST_CASE("restrict_axes picks rows and columns") {
  Tensor t(3, 3);
  t << 1, 2, 3, 2, 5, 6, 3, 6, 9;
  const int axes[] = {0, 2};
  const Tensor r = restrict_axes(t, axes, 2);
  CHECK(r.rows() == 2);
  CHECK(r(0, 1) == 3.0);
  CHECK(r(1, 1) == 9.0);
}
