#pragma once

#include <stdexcept>
#include <string>

namespace vadb {

enum class Errc {
  invalid_domain,
  resolution_too_small,
  invalid_argument,
  out_of_domain,
  domain_mismatch,
  not_positive_definite,
  disconnected_graph,
  no_such_component,
  unsupported,
  positivity_failure,
  dominance_failure,
  infeasible,
  negative_input,
  inner_radius_violation,
  io,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace vadb
