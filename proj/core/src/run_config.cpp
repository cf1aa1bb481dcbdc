#include "vadb/run_config.hpp"

#include <cmath>

#include <json.hpp>

#include "vadb/error.hpp"

namespace vadb {

namespace {

using Json = nlohmann::ordered_json;

// NaN has no JSON spelling; it round-trips through null.
Json number(double x) { return std::isnan(x) ? Json(nullptr) : Json(x); }

double to_double(const Json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

}  // namespace

FamilyParams RunConfig::family_params(int j) const {
  FamilyParams p;
  p.family = parse_profile(family);
  p.j = j;
  p.h0 = h0;
  p.eta = eta;
  p.mass = mass;
  p.n = n;
  p.r = r;
  p.r0 = r0;
  p.gamma = gamma;
  p.alpha = alpha;
  p.Lambda = Lambda;
  p.hole_radius = hole_radius;
  p.taxi_boundary_cinches = taxi_boundary_cinches;
  p.neck_width = neck_width;
  p.flat_domain = parse_flat_domain(domain);
  return p;
}

std::string RunConfig::to_json() const {
  Json j;
  j["command"] = command;
  j["family"] = family;
  j["domain"] = domain;
  j["j_list"] = j_list;
  j["resolution"] = resolution;
  j["stencil"] = stencil;
  j["samples"] = samples;
  j["seed"] = seed;
  j["kappa"] = kappa;
  j["eps"] = eps;
  j["tolerance"] = tolerance;
  j["deltas"] = deltas;
  j["neck_intervals"] = neck_intervals;
  j["mode"] = mode;
  j["dominance_slack"] = dominance_slack;
  j["h0"] = number(h0);
  j["eta"] = eta;
  j["mass"] = mass;
  j["masses"] = masses;
  j["n"] = n;
  j["r"] = r;
  j["r0"] = r0;
  j["gamma"] = gamma;
  j["alpha"] = alpha;
  j["Lambda"] = Lambda;
  j["hole_radius"] = hole_radius;
  j["taxi_boundary_cinches"] = taxi_boundary_cinches;
  j["neck_width"] = neck_width;
  j["workers"] = workers;
  j["strict"] = strict;
  j["out_dir"] = out_dir;
  return j.dump(2) + "\n";
}

void RunConfig::merge_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::io, std::string("config parse error: ") + e.what());
  }
  if (!j.is_object()) throw Error(Errc::io, "config must be a JSON object");
  try {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const std::string& k = it.key();
      const Json& v = it.value();
      if (k == "command") command = v.get<std::string>();
      else if (k == "family") family = v.get<std::string>();
      else if (k == "domain") domain = v.get<std::string>();
      else if (k == "j_list") j_list = v.get<std::vector<int>>();
      else if (k == "resolution") resolution = v.get<std::vector<int>>();
      else if (k == "stencil") stencil = v.get<int>();
      else if (k == "samples") samples = v.get<std::size_t>();
      else if (k == "seed") seed = v.get<std::uint64_t>();
      else if (k == "kappa") kappa = v.get<double>();
      else if (k == "eps") eps = v.get<double>();
      else if (k == "tolerance") tolerance = v.get<double>();
      else if (k == "deltas") deltas = v.get<std::vector<double>>();
      else if (k == "neck_intervals") neck_intervals = v.get<int>();
      else if (k == "mode") mode = v.get<std::string>();
      else if (k == "dominance_slack") dominance_slack = v.get<bool>();
      else if (k == "h0") h0 = to_double(v);
      else if (k == "eta") eta = v.get<double>();
      else if (k == "mass") mass = v.get<double>();
      else if (k == "masses") masses = v.get<std::vector<double>>();
      else if (k == "n") n = v.get<int>();
      else if (k == "r") r = v.get<double>();
      else if (k == "r0") r0 = v.get<double>();
      else if (k == "gamma") gamma = v.get<double>();
      else if (k == "alpha") alpha = v.get<double>();
      else if (k == "Lambda") Lambda = v.get<double>();
      else if (k == "hole_radius") hole_radius = v.get<double>();
      else if (k == "taxi_boundary_cinches") taxi_boundary_cinches = v.get<bool>();
      else if (k == "neck_width") neck_width = v.get<double>();
      else if (k == "workers") workers = v.get<int>();
      else if (k == "strict") strict = v.get<bool>();
      else if (k == "out_dir") out_dir = v.get<std::string>();
      else throw Error(Errc::invalid_argument, "unknown config key: " + k);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::invalid_argument, std::string("config value error: ") + e.what());
  }
}

RunConfig RunConfig::from_json(const std::string& text) {
  RunConfig cfg;
  cfg.merge_json(text);
  return cfg;
}

}  // namespace vadb
