#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "vadb/metric_field.hpp"

namespace vadb {

enum class ProfileId {
  cinched_torus,
  cinched_sphere,
  taxi_finsler,
  bubble_torus,
  single_ridge,
  spline_torus,
  pmt_graph,
  flat,
};

const char* profile_name(ProfileId id) noexcept;
ProfileId parse_profile(std::string_view name);
std::vector<ProfileId> all_profiles();

enum class FlatDomain { cylinder, torus, square };
const char* flat_domain_name(FlatDomain d) noexcept;
FlatDomain parse_flat_domain(std::string_view name);

// Largest taxi-finsler index: the family has 2^j cinches of width 4^-j.
inline constexpr int kMaxTaxiJ = 12;

struct FamilyParams {
  ProfileId family = ProfileId::flat;
  int j = 1;
  double h0 = std::numeric_limits<double>::quiet_NaN();  // NaN selects the family default
  double eta = 2.0;
  double mass = 0.01;
  int n = 3;
  double r = 1.0;
  double r0 = 0.5;
  double gamma = 0.0;
  double alpha = 0.0;
  double Lambda = 0.0;
  double hole_radius = 0.3;
  bool taxi_boundary_cinches = true;
  double neck_width = 0.125;  // smoothstep transition width of the bubble and spline necks
  FlatDomain flat_domain = FlatDomain::cylinder;

  double h0_or_default() const;
};

struct FamilyTraits {
  bool dominating;   // g_0 <= g_j expected
  bool dominated;    // g_j <= g_0 expected
  bool convex_interior;
  bool conformal;
};
FamilyTraits family_traits(ProfileId id);

// Canonical smooth pieces.
double smoothstep(double u);
double cinch_bump(double h0, double s);   // 1 - (1 - h0)(1 - s^2)^2 on [-1, 1]
double taxi_bump(double s);               // 5 - 4(1 - s^2)^2 on [-1, 1]
double ridge_bump(double h0, double s);   // 1 + (h0 - 1)(1 - s^2)^2 on [0, 1]
double bubble_neck(int j, double s, double width);  // j^(1 - sigma((s - 1)/width)) on [1, 2]
double spline_neck(int j, double s, double width);  // (j/(1+ln j))^(1 - sigma((s - 1)/width)) on [1, 2]

// f_j(r) for the warped and radially conformal families.
double warping_profile(ProfileId id, const FamilyParams& p, double r);

// Schwarzschild graph height and its squared radial slope, n in {3, 4}.
double schwarzschild_inner_radius(int n, double m);
double schwarzschild_height(int n, double m, double rho);
double schwarzschild_slope_sq(int n, double m, double rho);

// (1/j^m) * integral_1^2 h_j(s)^m s^(m-1) ds for the bubble neck.
double bubble_integral_condition(int j, int m, double width);

enum class MetricKind { warped, conformal, graph, constant };

struct MetricSpec {
  MetricKind kind = MetricKind::constant;
  ProfileId family = ProfileId::flat;
  FamilyParams params;
  ParamDomain domain;
  Tensor constant;                                  // constant kind; empty means identity
  std::function<double(double)> profile;            // warped kind: overrides the family warping function
  std::function<double(const Vec&)> height;         // graph kind: overrides the family height function
  bool declared_dominating = false;
  bool declared_dominated = false;
};

// Parameter domain of a family. `radial_resolution` fixes the annulus inner
// radius of the graph family (2m + max(1e-3, grid step)); ignored otherwise.
ParamDomain family_domain(const FamilyParams& p, int radial_resolution = 0);

MetricSpec family_spec(const FamilyParams& p, const ParamDomain& domain);
MetricSpec background_spec(const FamilyParams& p, const ParamDomain& domain);
MetricSpec warped_spec(const ParamDomain& domain, std::function<double(double)> f);
MetricSpec graph_spec(const ParamDomain& domain, std::function<double(const Vec&)> height);
MetricSpec constant_spec(const ParamDomain& domain, const Tensor& g);

MetricField sample_metric(const MetricSpec& spec, std::shared_ptr<const Mesh> mesh);

}  // namespace vadb
