#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "vadb/error.hpp"
#include "vadb/geometry.hpp"

namespace vadb {

std::vector<double> SampleSet::weights(const MetricField& field) const {
  const auto& w = field.volume_weights();
  std::vector<double> out;
  out.reserve(strata.size());
  for (const auto& s : strata) {
    double t = 0.0;
    for (std::size_t v : s) {
      if (v >= w.size()) throw Error(Errc::domain_mismatch, "sample set does not belong to this field's mesh");
      t += w[v];
    }
    out.push_back(t);
  }
  return out;
}

SampleSet all_vertices(const Mesh& mesh) {
  SampleSet s;
  for (std::size_t v = 0; v < mesh.num_vertices(); ++v) {
    s.ids.push_back(v);
    s.strata.push_back({v});
  }
  return s;
}

SampleSet stratified_samples(const Mesh& mesh, std::size_t max_samples, std::uint64_t seed) {
  if (max_samples == 0) throw Error(Errc::invalid_argument, "sample count must be positive");
  if (mesh.num_vertices() <= max_samples) {
    SampleSet s = all_vertices(mesh);
    s.seed = seed;
    return s;
  }
  const int d = mesh.dim();
  const auto& res = mesh.resolution();
  std::vector<int> blocks(d);
  const int per_axis = std::max(1, static_cast<int>(std::floor(std::pow(static_cast<double>(max_samples), 1.0 / d) + 1e-9)));
  std::size_t product = 1;
  for (int a = 0; a < d; ++a) {
    blocks[a] = std::min(res[a], per_axis);
    product *= blocks[a];
  }
  // Grow the first axes while the block budget allows.
  for (bool grew = true; grew;) {
    grew = false;
    for (int a = 0; a < d; ++a) {
      if (blocks[a] >= res[a]) continue;
      const std::size_t next = product / blocks[a] * (blocks[a] + 1);
      if (next <= max_samples) {
        product = next;
        ++blocks[a];
        grew = true;
      }
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> by_block;
  for (std::size_t v = 0; v < mesh.num_vertices(); ++v) {
    const GridIndex idx = mesh.grid_index(v);
    std::size_t key = 0;
    for (int a = 0; a < d; ++a) {
      const std::size_t b = static_cast<std::size_t>(idx[a]) * blocks[a] / res[a];
      key = key * blocks[a] + b;
    }
    by_block[key].push_back(v);
  }
  SampleSet s;
  s.seed = seed;
  std::mt19937_64 rng(seed);
  for (auto& [key, members] : by_block) {
    const std::size_t pick = members[rng() % members.size()];
    s.ids.push_back(pick);
    s.strata.push_back(std::move(members));
  }
  return s;
}

}  // namespace vadb
