#pragma once

#include <functional>

#include "vadb/mesh.hpp"

namespace vadb {

// Bit a set means "axis a must be split before the integrand is trusted on
// this box". Used to resolve features narrower than a grid cell.
using RefineHint = std::function<unsigned(const Box&)>;

struct QuadratureOptions {
  double rel_tol = 1e-7;
  double abs_tol = 0.0;
  int max_depth = -1;        // error-driven levels; -1 picks a per-dimension default
  int max_forced_depth = 40;  // hint-driven levels
};

// Adaptive tensor Gauss-Legendre: a 2-point rule on the box is compared with
// the same rule on the two halves along each axis, and the box is split along
// the axes where they disagree.
double integrate_box(const std::function<double(const Vec&)>& f, const Box& box, const QuadratureOptions& opts = {},
                     const RefineHint& hint = {});

// Fixed-order Gauss-Legendre on [a, b] (orders 2..8, subdivided into `panels`).
double gauss_legendre(const std::function<double(double)>& f, double a, double b, int order = 8, int panels = 1);

}  // namespace vadb
