#pragma once

#include <Eigen/Dense>

namespace vadb {

inline constexpr int kMaxDim = 4;

// Symmetric 2-tensor in parameter coordinates, stack-allocated up to 4x4.
using Tensor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxDim, kMaxDim>;
// Parameter-space point or displacement.
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;

double min_eigenvalue(const Tensor& t);
bool is_positive_definite(const Tensor& t);
double sqrt_det(const Tensor& t);

// Quadratic form d^T g d summed in a fixed order so that it is monotone in g
// under floating-point rounding whenever g is diagonal.
double quadratic_form(const Tensor& g, const Vec& d);

// Frobenius norm of `diff` expressed in a frame orthonormal for `base`.
double frame_norm(const Tensor& diff, const Tensor& base);

// Smallest eigenvalue of `t` relative to `base` (generalized problem t x = l base x).
double relative_min_eigenvalue(const Tensor& t, const Tensor& base);

// Restriction of `t` to the coordinate axes listed in `axes`.
Tensor restrict_axes(const Tensor& t, const int* axes, int count);

}  // namespace vadb
