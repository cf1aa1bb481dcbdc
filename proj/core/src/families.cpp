#include "vadb/families.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vadb/error.hpp"

namespace vadb {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEdgeTol = 1e-12;

struct NamedProfile {
  ProfileId id;
  const char* name;
};

constexpr NamedProfile kProfiles[] = {
    {ProfileId::cinched_torus, "cinched-torus"}, {ProfileId::cinched_sphere, "cinched-sphere"},
    {ProfileId::taxi_finsler, "taxi-finsler"},   {ProfileId::bubble_torus, "bubble-torus"},
    {ProfileId::single_ridge, "single-ridge"},   {ProfileId::spline_torus, "spline-torus"},
    {ProfileId::pmt_graph, "pmt-graph"},         {ProfileId::flat, "flat"},
};

void require_j(const FamilyParams& p) {
  if (p.j < 1) throw Error(Errc::invalid_argument, "sequence index j must be >= 1");
  // 2^j cinches of width 4^-j; beyond this the metric is unresolvable and the count overflows.
  if (p.family == ProfileId::taxi_finsler && p.j > kMaxTaxiJ) {
    throw Error(Errc::unsupported, "taxi-finsler supports j <= " + std::to_string(kMaxTaxiJ));
  }
}

double taxi_delta(int j) { return std::ldexp(1.0, -2 * j); }

// Torus distance from the bubble/spline centre p = (0, 0).
double torus_radius(const Vec& x) {
  double s = 0.0;
  for (int a = 0; a < x.size(); ++a) {
    double t = std::fmod(std::abs(x(a)), 2.0 * kPi);
    t = std::min(t, 2.0 * kPi - t);
    s += t * t;
  }
  return std::sqrt(s);
}

// Lower bound on the torus distance from p to any point of the box.
double box_radius_lower(const Box& b) {
  double s = 0.0;
  for (int a = 0; a < b.lo.size(); ++a) {
    const double width = b.hi(a) - b.lo(a);
    if (width >= 2.0 * kPi) continue;
    double lo = std::remainder(b.lo(a), 2.0 * kPi);
    double hi = lo + width;
    double d;
    if (lo <= 0.0 && hi >= 0.0) {
      d = 0.0;
    } else if (lo > 0.0) {
      d = std::min(lo, std::abs(2.0 * kPi - hi));
      if (hi >= 2.0 * kPi) d = 0.0;
    } else {
      d = std::min(-hi, std::abs(lo + 2.0 * kPi));
      if (lo <= -2.0 * kPi) d = 0.0;
    }
    s += d * d;
  }
  return std::sqrt(s);
}

double box_width_max(const Box& b) {
  double w = 0.0;
  for (int a = 0; a < b.lo.size(); ++a) w = std::max(w, b.hi(a) - b.lo(a));
  return w;
}

// Split the radial axis while it is wider than `scale` and touches [lo, hi].
unsigned interval_hint(const Box& b, double lo, double hi, double scale) {
  const double w = b.hi(0) - b.lo(0);
  if (w > scale && b.hi(0) >= lo && b.lo(0) <= hi) return 1u;
  return 0u;
}

RefineHint family_hint(const FamilyParams& p) {
  const double j = p.j;
  switch (p.family) {
    case ProfileId::cinched_torus:
      return [j](const Box& b) { return interval_hint(b, -1.0 / j, 1.0 / j, 0.25 / j); };
    case ProfileId::cinched_sphere:
      return [j](const Box& b) { return interval_hint(b, kPi / 2 - 1.0 / j, kPi / 2 + 1.0 / j, 0.25 / j); };
    case ProfileId::single_ridge:
      return [j](const Box& b) { return interval_hint(b, 0.0, 1.0 / j, 0.25 / j); };
    case ProfileId::taxi_finsler: {
      const int jj = p.j;
      const double dj = taxi_delta(jj);
      const double spacing = 2.0 * kPi / std::ldexp(1.0, jj);
      return [dj, spacing](const Box& b) -> unsigned {
        const double w = b.hi(0) - b.lo(0);
        if (w <= 0.25 * dj) return 0u;
        // Nearest cinch centre to the box, then test overlap with its support.
        const double i_lo = std::floor((b.lo(0) + kPi) / spacing);
        for (double i = i_lo; i <= i_lo + w / spacing + 1.0; i += 1.0) {
          const double c = -kPi + i * spacing;
          if (b.hi(0) >= c - dj && b.lo(0) <= c + dj) return 1u;
        }
        return 0u;
      };
    }
    case ProfileId::bubble_torus:
      return [j](const Box& b) -> unsigned {
        if (box_radius_lower(b) < 2.0 / j && box_width_max(b) > 0.25 / j) return 3u;
        return 0u;
      };
    case ProfileId::spline_torus: {
      const double inner = std::pow(j, -p.eta);
      return [j, inner](const Box& b) -> unsigned {
        const double rlo = box_radius_lower(b);
        if (rlo < 2.0 / j && box_width_max(b) > std::max(0.25 * inner, 0.25 * rlo)) return 3u;
        return 0u;
      };
    }
    default:
      return {};
  }
}

Tensor spherical_base(const Vec& x) {
  const int d = static_cast<int>(x.size());
  Tensor g = Tensor::Zero(d, d);
  const double rho = x(0);
  g(0, 0) = 1.0;
  double s = rho * rho;
  for (int a = 1; a < d; ++a) {
    g(a, a) = s;
    s *= std::sin(x(a)) * std::sin(x(a));
  }
  return g;
}

}  // namespace

const char* profile_name(ProfileId id) noexcept {
  for (const auto& p : kProfiles) {
    if (p.id == id) return p.name;
  }
  return "unknown";
}

ProfileId parse_profile(std::string_view name) {
  for (const auto& p : kProfiles) {
    if (name == p.name) return p.id;
  }
  throw Error(Errc::invalid_argument, "unknown family '" + std::string(name) + "'");
}

std::vector<ProfileId> all_profiles() {
  std::vector<ProfileId> ids;
  for (const auto& p : kProfiles) ids.push_back(p.id);
  return ids;
}

const char* flat_domain_name(FlatDomain d) noexcept {
  switch (d) {
    case FlatDomain::cylinder: return "cylinder";
    case FlatDomain::torus: return "torus";
    case FlatDomain::square: return "square";
  }
  return "unknown";
}

FlatDomain parse_flat_domain(std::string_view name) {
  if (name == "cylinder") return FlatDomain::cylinder;
  if (name == "torus") return FlatDomain::torus;
  if (name == "square") return FlatDomain::square;
  throw Error(Errc::invalid_argument, "unknown domain '" + std::string(name) + "'");
}

double FamilyParams::h0_or_default() const {
  if (!std::isnan(h0)) return h0;
  return family == ProfileId::single_ridge ? 1.5 : 0.5;
}

FamilyTraits family_traits(ProfileId id) {
  switch (id) {
    case ProfileId::cinched_torus: return {false, true, false, false};
    case ProfileId::cinched_sphere: return {false, true, false, true};
    case ProfileId::taxi_finsler: return {true, false, false, false};
    case ProfileId::bubble_torus: return {true, false, false, true};
    case ProfileId::single_ridge: return {true, false, true, false};
    case ProfileId::spline_torus: return {true, false, false, true};
    case ProfileId::pmt_graph: return {true, false, true, false};
    case ProfileId::flat: return {true, true, true, false};
  }
  return {false, false, false, false};
}

double smoothstep(double u) {
  u = std::clamp(u, 0.0, 1.0);
  return u * u * (3.0 - 2.0 * u);
}

double cinch_bump(double h0, double s) {
  if (std::abs(s) >= 1.0) return 1.0;
  const double q = 1.0 - s * s;
  return 1.0 - (1.0 - h0) * q * q;
}

double taxi_bump(double s) {
  if (std::abs(s) >= 1.0) return 5.0;
  const double q = 1.0 - s * s;
  return 5.0 - 4.0 * q * q;
}

double ridge_bump(double h0, double s) {
  if (s >= 1.0) return 1.0;
  const double q = 1.0 - s * s;
  return 1.0 + (h0 - 1.0) * q * q;
}

double bubble_neck(int j, double s, double width) {
  const double u = std::min(1.0, (s - 1.0) / width);
  return std::pow(static_cast<double>(j), 1.0 - smoothstep(u));
}

double spline_neck(int j, double s, double width) {
  const double a = j / (1.0 + std::log(static_cast<double>(j)));
  const double u = std::min(1.0, (s - 1.0) / width);
  return std::pow(a, 1.0 - smoothstep(u));
}

double warping_profile(ProfileId id, const FamilyParams& p, double r) {
  require_j(p);
  const double j = p.j;
  auto out = [&](double lo, double hi) {
    if (!(r >= lo - kEdgeTol && r <= hi + kEdgeTol)) {
      throw Error(Errc::out_of_domain, std::string(profile_name(id)) + ": r outside the parameter interval");
    }
  };
  switch (id) {
    case ProfileId::flat:
      return 1.0;
    case ProfileId::cinched_torus:
      out(-kPi, kPi);
      return std::abs(r) <= 1.0 / j ? cinch_bump(p.h0_or_default(), j * r) : 1.0;
    case ProfileId::cinched_sphere: {
      out(0.0, kPi);
      const double s = r - kPi / 2;
      return std::abs(s) <= 1.0 / j ? cinch_bump(p.h0_or_default(), j * s) : 1.0;
    }
    case ProfileId::taxi_finsler: {
      out(-kPi, kPi);
      const int count = 1 << p.j;
      const double spacing = 2.0 * kPi / count;
      const double dj = taxi_delta(p.j);
      const int i = static_cast<int>(std::lround((r + kPi) / spacing));
      const int first = p.taxi_boundary_cinches ? 0 : 1;
      const int last = p.taxi_boundary_cinches ? count : count - 1;
      if (i < first || i > last) return 5.0;
      const double c = -kPi + i * spacing;
      return std::abs(r - c) <= dj ? taxi_bump((r - c) / dj) : 5.0;
    }
    case ProfileId::single_ridge:
      out(0.0, kPi);
      return r <= 1.0 / j ? ridge_bump(p.h0_or_default(), j * r) : 1.0;
    case ProfileId::bubble_torus:
      out(0.0, INFINITY);
      if (r <= 1.0 / j) return j;
      if (r <= 2.0 / j) return bubble_neck(p.j, j * r, p.neck_width);
      return 1.0;
    case ProfileId::spline_torus: {
      out(0.0, INFINITY);
      const double inner = std::pow(j, -p.eta);
      // Inner plateau takes the value of the middle branch at its edge, keeping f_j continuous.
      if (r <= inner) return 1.0 / (inner * (1.0 - std::log(inner)));
      if (r <= 1.0 / j) return 1.0 / (r * (1.0 - std::log(r)));
      if (r <= 2.0 / j) return spline_neck(p.j, j * r, p.neck_width);
      return 1.0;
    }
    case ProfileId::pmt_graph:
      throw Error(Errc::unsupported, "pmt-graph is a graph metric, not a warped profile");
  }
  throw Error(Errc::invalid_argument, "unknown profile");
}

double schwarzschild_inner_radius(int n, double m) {
  if (n != 3 && n != 4) throw Error(Errc::unsupported, "Schwarzschild graph implemented for n = 3, 4");
  if (!(m > 0)) throw Error(Errc::invalid_argument, "mass must be positive");
  return std::pow(2.0 * m, 1.0 / (n - 2));
}

double schwarzschild_height(int n, double m, double rho) {
  const double inner = schwarzschild_inner_radius(n, m);
  if (rho < inner * (1.0 - 1e-14)) throw Error(Errc::out_of_domain, "radius below the Schwarzschild inner radius");
  if (n == 3) return std::sqrt(8.0 * m * std::max(0.0, rho - 2.0 * m));
  const double c = std::sqrt(2.0 * m);
  return c * std::acosh(std::max(1.0, rho / c));
}

double schwarzschild_slope_sq(int n, double m, double rho) {
  const double inner = schwarzschild_inner_radius(n, m);
  if (!(rho > inner)) throw Error(Errc::out_of_domain, "slope is singular at or below the inner radius");
  if (n == 3) return 2.0 * m / (rho - 2.0 * m);
  return 2.0 * m / (rho * rho - 2.0 * m);
}

double bubble_integral_condition(int j, int m, double width) {
  auto f = [&](double s) { return std::pow(bubble_neck(j, s, width), m) * std::pow(s, m - 1); };
  const double integral = gauss_legendre(f, 1.0, 1.0 + width, 8, 64) + gauss_legendre(f, 1.0 + width, 2.0, 8, 4);
  return integral / std::pow(static_cast<double>(j), m);
}

ParamDomain family_domain(const FamilyParams& p, int radial_resolution) {
  switch (p.family) {
    case ProfileId::flat:
      switch (p.flat_domain) {
        case FlatDomain::cylinder: return ParamDomain::rectangle({{-kPi, kPi}, {0.0, 2 * kPi}}, {false, true});
        case FlatDomain::torus: return ParamDomain::rectangle({{-kPi, kPi}, {-kPi, kPi}}, {true, true});
        case FlatDomain::square: return ParamDomain::rectangle({{0.0, 1.0}, {0.0, 1.0}}, {false, false});
      }
      break;
    case ProfileId::cinched_torus: {
      ParamDomain d = ParamDomain::rectangle({{-kPi, kPi}, {0.0, 2 * kPi}}, {false, true});
      d.axes[0].features = {0.0, -kPi / 2, kPi / 2};
      d.axes[1].features = {0.0, kPi};
      return d;
    }
    case ProfileId::taxi_finsler: {
      ParamDomain d = ParamDomain::rectangle({{-kPi, kPi}, {0.0, 2 * kPi}}, {false, true});
      d.axes[0].features = {0.0};
      d.axes[1].features = {0.0, kPi};
      return d;
    }
    case ProfileId::single_ridge:
      return ParamDomain::rectangle({{0.0, kPi}, {0.0, 2 * kPi}}, {false, true});
    case ProfileId::cinched_sphere: {
      if (!(p.hole_radius > 0 && p.hole_radius < kPi / 2)) throw Error(Errc::invalid_domain, "hole radius in (0, pi/2)");
      ParamDomain d = ParamDomain::polar_cap(kPi - p.hole_radius);
      d.axes[0].features = {kPi / 2};
      return d;
    }
    case ProfileId::bubble_torus:
    case ProfileId::spline_torus: {
      ParamDomain d = ParamDomain::rectangle({{-kPi, kPi}, {-kPi, kPi}}, {true, true});
      // Cell-centred nodes put the centre p = (0, 0) on a dual-cell corner.
      d.axes[0].shift = 0.5;
      d.axes[1].shift = 0.5;
      return d;
    }
    case ProfileId::pmt_graph: {
      const double inner = schwarzschild_inner_radius(p.n, p.mass);
      if (radial_resolution < 2) throw Error(Errc::resolution_too_small, "pmt domain needs the radial resolution");
      const double step = (p.r - inner) / (radial_resolution - 1);
      const double lo = inner + std::max(1e-3, step);
      if (!(p.r > lo)) throw Error(Errc::inner_radius_violation, "outer radius must exceed the inner radius");
      ParamDomain d = ParamDomain::annulus(lo, p.r, p.n);
      if (p.r0 > lo && p.r0 < p.r) d.axes[0].features = {p.r0};
      return d;
    }
  }
  throw Error(Errc::invalid_argument, "unknown family");
}

MetricSpec family_spec(const FamilyParams& p, const ParamDomain& domain) {
  require_j(p);
  MetricSpec s;
  s.family = p.family;
  s.params = p;
  s.domain = domain;
  const FamilyTraits t = family_traits(p.family);
  s.declared_dominating = t.dominating;
  s.declared_dominated = t.dominated;
  switch (p.family) {
    case ProfileId::flat: s.kind = MetricKind::constant; break;
    case ProfileId::cinched_torus:
    case ProfileId::taxi_finsler:
    case ProfileId::single_ridge: s.kind = MetricKind::warped; break;
    case ProfileId::cinched_sphere:
    case ProfileId::bubble_torus:
    case ProfileId::spline_torus: s.kind = MetricKind::conformal; break;
    case ProfileId::pmt_graph: s.kind = MetricKind::graph; break;
  }
  return s;
}

MetricSpec background_spec(const FamilyParams& p, const ParamDomain& domain) {
  FamilyParams q = p;
  MetricSpec s;
  s.params = q;
  s.domain = domain;
  s.declared_dominating = true;
  s.declared_dominated = true;
  switch (p.family) {
    case ProfileId::cinched_sphere:
      s.family = ProfileId::cinched_sphere;
      s.kind = MetricKind::conformal;
      s.profile = [](double) { return 1.0; };
      break;
    case ProfileId::pmt_graph:
      s.family = ProfileId::pmt_graph;
      s.kind = MetricKind::graph;
      s.height = [](const Vec&) { return 0.0; };
      break;
    default:
      s.family = ProfileId::flat;
      s.kind = MetricKind::constant;
      break;
  }
  return s;
}

MetricSpec warped_spec(const ParamDomain& domain, std::function<double(double)> f) {
  MetricSpec s;
  s.kind = MetricKind::warped;
  s.domain = domain;
  s.profile = std::move(f);
  return s;
}

MetricSpec graph_spec(const ParamDomain& domain, std::function<double(const Vec&)> height) {
  MetricSpec s;
  s.kind = MetricKind::graph;
  s.family = domain.kind == DomainKind::annulus ? ProfileId::pmt_graph : ProfileId::flat;
  s.domain = domain;
  s.height = std::move(height);
  return s;
}

MetricSpec constant_spec(const ParamDomain& domain, const Tensor& g) {
  MetricSpec s;
  s.kind = MetricKind::constant;
  s.domain = domain;
  s.constant = g;
  return s;
}

MetricField sample_metric(const MetricSpec& spec, std::shared_ptr<const Mesh> mesh) {
  if (!mesh) throw Error(Errc::invalid_argument, "null mesh");
  if (!spec.domain.same_as(mesh->domain())) throw Error(Errc::domain_mismatch, "spec domain differs from mesh domain");
  const int d = mesh->dim();
  const FamilyParams p = spec.params;
  MetricEvaluator eval;
  RefineHint hint;
  switch (spec.kind) {
    case MetricKind::constant: {
      Tensor g = spec.constant.size() == 0 ? Tensor(Tensor::Identity(d, d)) : spec.constant;
      if (g.rows() != d) throw Error(Errc::domain_mismatch, "constant tensor dimension mismatch");
      if (mesh->domain().kind == DomainKind::annulus) {
        eval = [](const Vec& x) { return spherical_base(x); };
      } else {
        eval = [g](const Vec&) { return g; };
      }
      break;
    }
    case MetricKind::warped: {
      std::function<double(double)> f = spec.profile;
      if (!f) {
        const ProfileId id = spec.family;
        f = [id, p](double r) { return warping_profile(id, p, r); };
        hint = family_hint(p);
      }
      eval = [f, d](const Vec& x) {
        Tensor g = Tensor::Identity(d, d);
        const double fr = f(x(0));
        for (int a = 1; a < d; ++a) g(a, a) = fr * fr;
        return g;
      };
      break;
    }
    case MetricKind::conformal: {
      const ProfileId id = spec.family;
      std::function<double(double)> f = spec.profile;
      if (!f) {
        f = [id, p](double r) { return warping_profile(id, p, r); };
        hint = family_hint(p);
      }
      if (id == ProfileId::cinched_sphere) {
        eval = [f](const Vec& x) {
          Tensor g = Tensor::Zero(2, 2);
          const double fr = f(x(0));
          const double s = std::sin(x(0));
          g(0, 0) = fr * fr;
          g(1, 1) = fr * fr * s * s;
          return g;
        };
      } else {
        eval = [f, d](const Vec& x) {
          const double fr = f(torus_radius(x));
          return Tensor(fr * fr * Tensor::Identity(d, d));
        };
      }
      break;
    }
    case MetricKind::graph: {
      const bool spherical = mesh->domain().kind == DomainKind::annulus;
      if (spec.height) {
        std::vector<double> step(d);
        for (int a = 0; a < d; ++a) {
          const auto& nd = mesh->nodes(a);
          step[a] = nd[1] - nd[0];
        }
        auto height = spec.height;
        eval = [height, step, spherical, d](const Vec& x) {
          Tensor g = spherical ? spherical_base(x) : Tensor(Tensor::Identity(d, d));
          Vec grad(d);
          for (int a = 0; a < d; ++a) {
            Vec xp = x;
            Vec xm = x;
            xp(a) += step[a];
            xm(a) -= step[a];
            grad(a) = (height(xp) - height(xm)) / (2.0 * step[a]);
          }
          g += grad * grad.transpose();
          return g;
        };
      } else {
        if (!spherical) throw Error(Errc::domain_mismatch, "Schwarzschild graph needs an annulus domain");
        const int n = p.n;
        const double m = p.mass;
        if (n != d) throw Error(Errc::domain_mismatch, "annulus dimension differs from n");
        eval = [n, m](const Vec& x) {
          Tensor g = spherical_base(x);
          g(0, 0) += schwarzschild_slope_sq(n, m, x(0));
          return g;
        };
      }
      break;
    }
  }
  return MetricField(std::move(mesh), std::move(eval), std::move(hint));
}

}  // namespace vadb
