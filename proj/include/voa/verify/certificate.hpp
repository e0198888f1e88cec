#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "voa/verify/expression.hpp"
#include "voa/verify/session.hpp"
#include "voa/verify/span_cache.hpp"

namespace voa {

inline json coefficient_json(const CycScalar& c) {
  json poly = json::array();
  for (int k = 0; k < c.degree_bound(); ++k) {
    const Rational q = c.coefficient(static_cast<std::size_t>(k));
    poly.push_back(json::array({q.get_num().get_str(), q.get_den().get_str()}));
  }
  return {{"poly", poly}};
}

inline CycScalar coefficient_from_json(const json& j, int T) {
  if (!j.is_object() || !j.contains("poly") || !j.at("poly").is_array()) throw DomainError("coefficient needs a poly");
  std::vector<Rational> cs;
  for (const auto& pair : j.at("poly")) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string())
      throw DomainError("poly entries must be [\"num\", \"den\"]");
    cs.push_back(rational_from_strings(pair[0].get<std::string>(), pair[1].get<std::string>()));
  }
  CycScalar probe(T);
  if (static_cast<int>(cs.size()) > probe.degree_bound()) throw DomainError("poly longer than the field degree");
  return CycScalar(std::move(cs), T);
}

inline json certificate_json(const VoaContext& ctx, const std::string& label, const json& target,
                             const SpanFamily& family, int cap, const std::vector<CertificateTerm>& terms) {
  json span = family.to_json();
  span["cap"] = cap;
  json jt = json::array();
  for (const auto& t : terms)
    jt.push_back({{"generator", to_json(ctx, t.generator)}, {"coefficient", coefficient_json(t.coefficient)}});
  return {{"case", label}, {"target", target}, {"span", span}, {"terms", jt}};
}

struct CertifyVerdict {
  std::string label;
  bool ok = false;
  long offending_term = -1;  // -1: no single term explains the residual
  std::string message;
};

/// Replays one certificate from raw definitions in ctx; no span is rebuilt.
inline CertifyVerdict certify_one(const VoaContext& ctx, const json& cert) {
  CertifyVerdict v;
  if (!cert.is_object() || !cert.contains("case") || !cert.contains("target") || !cert.contains("span") ||
      !cert.contains("terms") || !cert.at("terms").is_array())
    throw DomainError("certificate entries need case, target, span and terms");
  v.label = cert.at("case").is_string() ? cert.at("case").get<std::string>() : cert.at("case").dump();
  const int T = ctx.order();
  const SpanFamily family = SpanFamily::from_json(cert.at("span"), T);
  std::vector<CycStateVector> gens;
  CycStateVector replay;
  const auto& terms = cert.at("terms");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& t = terms[i];
    if (!t.is_object() || !t.contains("generator") || !t.contains("coefficient"))
      throw DomainError("certificate terms need generator and coefficient");
    GeneratorDescriptor d = descriptor_from_json(ctx, t.at("generator"));
    if (!belongs_to(d, family)) {
      v.offending_term = static_cast<long>(i);
      v.message = "generator does not belong to the declared span " + family.key();
      return v;
    }
    CycScalar c = coefficient_from_json(t.at("coefficient"), T);
    gens.push_back(to_cyclotomic(regenerate(ctx, d), T));
    for (const auto& [k, x] : gens.back().terms()) replay.add(k, c * x);
  }
  CycStateVector target = to_cyclotomic(expr::evaluate(ctx, cert.at("target")), T);
  CycStateVector residual = replay - target;
  if (residual.is_zero()) {
    v.ok = true;
    return v;
  }
  // Find a single term whose generator is parallel to the residual.
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const auto& g = gens[i];
    if (g.is_zero() || g.size() != residual.size()) continue;
    const auto& [k0, g0] = *g.terms().begin();
    const CycScalar ratio = residual.coefficient(k0) / g0;
    CycStateVector scaled;
    for (const auto& [k, x] : g.terms()) scaled.add(k, ratio * x);
    if (scaled == residual) {
      v.offending_term = static_cast<long>(i);
      break;
    }
  }
  v.message = "replayed combination differs from the target";
  return v;
}

struct CertifyOutcome {
  std::vector<CertifyVerdict> verdicts;
  bool all_ok() const {
    for (const auto& v : verdicts)
      if (!v.ok) return false;
    return true;
  }
};

/// Throws DomainError on malformed input.
inline CertifyOutcome certify_document(const json& doc) {
  if (!doc.is_object() || !doc.contains("params") || !doc.contains("certificates") ||
      !doc.at("certificates").is_array())
    throw DomainError("certificate file needs params and certificates");
  const SessionParams params = SessionParams::from_json(doc.at("params"));
  auto ctx = params.context();  // fresh caches, nothing shared with the producer
  CertifyOutcome out;
  for (const auto& cert : doc.at("certificates")) out.verdicts.push_back(certify_one(*ctx, cert));
  return out;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw DomainError(std::string("malformed JSON in '") + path + "': " + e.what());
  }
}

}  // namespace voa
