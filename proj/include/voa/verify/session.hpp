#pragma once

#include <memory>
#include <optional>
#include <string>

#include "voa/core/context.hpp"
#include "voa/zhu/descriptor.hpp"

namespace voa {

/// Raised for invalid command-line or configuration input (exit code 64).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SessionParams {
  Backend backend = Backend::Heisenberg;
  Rational central_charge = 1;
  int T = 1;
  Automorphism g1 = Automorphism::Identity;

  std::string voa_name() const { return backend == Backend::Heisenberg ? "heisenberg" : "virasoro"; }

  json to_json() const {
    json j = {{"voa", voa_name()}, {"T", T}, {"g1", automorphism_name(g1)}};
    if (backend == Backend::Virasoro) j["central_charge"] = central_charge.get_str();
    return j;
  }

  static SessionParams make(const std::string& voa, const std::string& c, int T, const std::string& g1) {
    SessionParams p;
    if (voa == "heisenberg") p.backend = Backend::Heisenberg;
    else if (voa == "virasoro") p.backend = Backend::Virasoro;
    else throw UsageError("unknown voa '" + voa + "' (expected heisenberg or virasoro)");
    if (T <= 0) throw UsageError("T must be positive");
    p.T = T;
    if (g1 == "id") p.g1 = Automorphism::Identity;
    else if (g1 == "neg") p.g1 = Automorphism::Negation;
    else throw UsageError("unknown automorphism '" + g1 + "' (expected id or neg)");
    if (p.g1 == Automorphism::Negation && p.backend != Backend::Heisenberg)
      throw UsageError("g1=neg requires the heisenberg backend");
    if (p.g1 == Automorphism::Negation && T % 2 != 0) throw UsageError("g1=neg requires an even T");
    if (p.backend == Backend::Virasoro) {
      try {
        p.central_charge = parse_rational(c);
      } catch (const DomainError& e) {
        throw UsageError(std::string("bad central charge: ") + e.what());
      }
    }
    return p;
  }

  static SessionParams from_json(const json& j) {
    if (!j.is_object() || !j.contains("voa") || !j.contains("T") || !j.contains("g1"))
      throw DomainError("params need voa, T and g1");
    if (!j.at("voa").is_string() || !j.at("T").is_number_integer() || !j.at("g1").is_string())
      throw DomainError("params have the wrong types");
    std::string c = "1";
    if (j.contains("central_charge")) {
      if (!j.at("central_charge").is_string()) throw DomainError("central_charge must be a string");
      c = j.at("central_charge").get<std::string>();
    }
    try {
      return make(j.at("voa").get<std::string>(), c, j.at("T").get<int>(), j.at("g1").get<std::string>());
    } catch (const UsageError& e) {
      throw DomainError(e.what());
    }
  }

  std::unique_ptr<VoaContext> context() const {
    return std::make_unique<VoaContext>(backend, central_charge, T, g1);
  }
};

}  // namespace voa
