#include "vadb/quadrature.hpp"

#include <array>
#include <cmath>

#include "vadb/error.hpp"

namespace vadb {

namespace {

constexpr double kGauss2 = 0.57735026918962576451;  // 1/sqrt(3)

double gl2(const std::function<double(const Vec&)>& f, const Box& box) {
  const int d = static_cast<int>(box.lo.size());
  const int count = 1 << d;
  Vec mid = 0.5 * (box.lo + box.hi);
  Vec half = 0.5 * (box.hi - box.lo);
  Vec x(d);
  double s = 0.0;
  for (int code = 0; code < count; ++code) {
    for (int a = 0; a < d; ++a) x(a) = mid(a) + ((code >> a) & 1 ? kGauss2 : -kGauss2) * half(a);
    s += f(x);
  }
  return s * box.measure() / count;
}

Box child(const Box& box, unsigned mask, int code) {
  Box c = box;
  const int d = static_cast<int>(box.lo.size());
  int bit = 0;
  for (int a = 0; a < d; ++a) {
    if (!((mask >> a) & 1u)) continue;
    const double mid = 0.5 * (box.lo(a) + box.hi(a));
    if ((code >> bit) & 1) {
      c.lo(a) = mid;
    } else {
      c.hi(a) = mid;
    }
    ++bit;
  }
  return c;
}

struct Integrator {
  const std::function<double(const Vec&)>& f;
  const QuadratureOptions& opts;
  const RefineHint& hint;
  int max_depth;
  unsigned all_mask;
  int dim;

  // Each axis gets its own halving estimate; only the axes whose halving moves
  // the result beyond tolerance are split, so thin hint-driven boxes are not
  // refined along directions in which the integrand is already resolved.
  double adaptive(const Box& box, double coarse, const std::array<int, kMaxDim>& depth) const {
    const double tol = opts.rel_tol * std::abs(coarse) + opts.abs_tol;
    unsigned mask = 0;
    double best = coarse;
    double worst = -1.0;
    for (int a = 0; a < dim; ++a) {
      if (depth[a] >= max_depth) continue;
      const unsigned bit = 1u << a;
      const double split = gl2(f, child(box, bit, 0)) + gl2(f, child(box, bit, 1));
      const double err = std::abs(split - coarse);
      if (err > worst) {
        worst = err;
        best = split;
      }
      if (err > tol) mask |= bit;
    }
    if (mask == 0) return best;
    int bits = 0;
    std::array<int, kMaxDim> next = depth;
    for (int a = 0; a < dim; ++a) {
      if ((mask >> a) & 1u) {
        ++bits;
        ++next[a];
      }
    }
    double s = 0.0;
    for (int c = 0; c < (1 << bits); ++c) {
      const Box k = child(box, mask, c);
      s += adaptive(k, gl2(f, k), next);
    }
    return s;
  }

  double run(const Box& box, int forced_depth) const {
    if (hint && forced_depth < opts.max_forced_depth) {
      const unsigned mask = hint(box) & all_mask;
      if (mask != 0) {
        int bits = 0;
        for (int a = 0; a < dim; ++a) bits += (mask >> a) & 1u;
        double s = 0.0;
        for (int c = 0; c < (1 << bits); ++c) s += run(child(box, mask, c), forced_depth + 1);
        return s;
      }
    }
    return adaptive(box, gl2(f, box), std::array<int, kMaxDim>{});
  }
};

}  // namespace

double integrate_box(const std::function<double(const Vec&)>& f, const Box& box, const QuadratureOptions& opts,
                     const RefineHint& hint) {
  const int d = static_cast<int>(box.lo.size());
  if (d < 1 || d > kMaxDim) throw Error(Errc::invalid_argument, "box dimension must be 1..4");
  int depth = opts.max_depth;
  if (depth < 0) depth = d <= 2 ? 10 : (d == 3 ? 6 : 4);
  Integrator in{f, opts, hint, depth, (1u << d) - 1u, d};
  return in.run(box, 0);
}

double gauss_legendre(const std::function<double(double)>& f, double a, double b, int order, int panels) {
  static const std::array<std::array<double, 8>, 9> nodes = {{
      {}, {}, {-0.5773502691896257, 0.5773502691896257},
      {-0.7745966692414834, 0.0, 0.7745966692414834},
      {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563, 0.8611363115940526},
      {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831, 0.9061798459386640},
      {-0.9324695142031521, -0.6612093864662645, -0.2386191860831969, 0.2386191860831969, 0.6612093864662645,
       0.9324695142031521},
      {-0.9491079123427585, -0.7415311855993945, -0.4058451513773972, 0.0, 0.4058451513773972, 0.7415311855993945,
       0.9491079123427585},
      {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498, 0.1834346424956498,
       0.5255324099163290, 0.7966664774136267, 0.9602898564975363},
  }};
  static const std::array<std::array<double, 8>, 9> weights = {{
      {}, {}, {1.0, 1.0},
      {0.5555555555555556, 0.8888888888888888, 0.5555555555555556},
      {0.3478548451374538, 0.6521451548625461, 0.6521451548625461, 0.3478548451374538},
      {0.2369268850561891, 0.4786286704993665, 0.5688888888888889, 0.4786286704993665, 0.2369268850561891},
      {0.1713244923791704, 0.3607615730481386, 0.4679139345726910, 0.4679139345726910, 0.3607615730481386,
       0.1713244923791704},
      {0.1294849661688697, 0.2797053914892766, 0.3818300505051189, 0.4179591836734694, 0.3818300505051189,
       0.2797053914892766, 0.1294849661688697},
      {0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620, 0.3626837833783620,
       0.3137066458778873, 0.2223810344533745, 0.1012285362903763},
  }};
  if (order < 2 || order > 8 || panels < 1) throw Error(Errc::invalid_argument, "unsupported Gauss-Legendre order");
  const double h = (b - a) / panels;
  double s = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    const double mid = lo + 0.5 * h;
    for (int i = 0; i < order; ++i) s += weights[order][i] * f(mid + 0.5 * h * nodes[order][i]);
  }
  return 0.5 * h * s;
}

}  // namespace vadb
