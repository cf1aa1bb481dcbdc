#include "vadb/error.hpp"

namespace vadb {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_domain: return "invalid-domain";
    case Errc::resolution_too_small: return "resolution-too-small";
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::out_of_domain: return "out-of-domain";
    case Errc::domain_mismatch: return "domain-mismatch";
    case Errc::not_positive_definite: return "not-positive-definite";
    case Errc::disconnected_graph: return "disconnected-graph";
    case Errc::no_such_component: return "no-such-component";
    case Errc::unsupported: return "unsupported";
    case Errc::positivity_failure: return "positivity-failure";
    case Errc::dominance_failure: return "dominance-failure";
    case Errc::infeasible: return "infeasible";
    case Errc::negative_input: return "negative-input";
    case Errc::inner_radius_violation: return "inner-radius-violation";
    case Errc::io: return "io";
  }
  return "unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

}  // namespace vadb
