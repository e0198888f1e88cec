#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "voa/twisted/twisted_fock.hpp"
#include "voa/verify/certificate.hpp"
#include "voa/verify/kernel_checks.hpp"

namespace voa {

struct CheckConfig {
  SessionParams session;
  std::optional<std::string> n, m, p;  // unset: range over the parameter grid
  int cutoff = 6;
  int slack = 2;
  int probe_cap = 4;
  int param_cap = 1;
  int weight_cap = 3;
  unsigned long seed = 0;
  int jobs = 1;

  json caps_json() const {
    return {{"cutoff", cutoff}, {"slack", slack}, {"probe_cap", probe_cap}, {"param_cap", param_cap},
            {"weight_cap", weight_cap}};
  }
  json params_json() const {
    json j = session.to_json();
    if (n) j["n"] = *n;
    if (m) j["m"] = *m;
    if (p) j["p"] = *p;
    j["seed"] = seed;
    return j;
  }
};

struct CaseResult {
  std::string label;
  std::string kind;    // membership | exact
  std::string status;  // pass | fail | inconclusive
  json detail = json::object();
  std::optional<json> certificate;
};

struct CheckResult {
  std::string check;
  std::vector<CaseResult> cases;
  json stability = json::object();
  json notes = json::object();
  double seconds = 0;

  std::string status() const {
    bool inconclusive = false;
    for (const auto& c : cases) {
      if (c.status == "fail") return "fail";
      if (c.status == "inconclusive") inconclusive = true;
    }
    if (stability.contains("stable") && !stability.at("stable").get<bool>()) inconclusive = true;
    return inconclusive ? "inconclusive" : "pass";
  }

  int exit_code() const {
    const std::string s = status();
    return s == "pass" ? 0 : s == "fail" ? 1 : 2;
  }
};

inline const std::vector<std::string>& check_ids() {
  static const std::vector<std::string> ids = {
      "kernel-invariants", "zhu-assoc", "zhu-unit-center", "zhu-epimorphism", "zhu-theta", "zhu-ideal",
      "twist-anomaly", "o-vanishing", "prop-k-s-O", "thm-bimodule-1", "thm-bimodule-2", "thm-bimodule-3",
      "closing-prop", "prop-two-actions-commute", "prop-two-right-actions", "congruence-relation",
      "lemma-O-star-a", "lemma-assoc-3", "lemma-well-define", "dj-conjecture"};
  return ids;
}

namespace checks {

/// A sub-case: membership of target in family, exact vanishing of target, or a custom test.
struct Case {
  std::string label;
  json target;
  std::optional<SpanFamily> family;
  std::function<CaseResult()> custom;
};

inline std::vector<FracIndex> grid(const VoaContext& ctx, const std::optional<std::string>& fixed, int param_cap) {
  if (fixed) {
    FracIndex x(0, ctx.order());
    try {
      x = ctx.parse_index(*fixed);
    } catch (const DomainError& e) {
      throw UsageError(std::string("bad index: ") + e.what());
    }
    if (x.numerator() < 0) throw UsageError("indices must be nonnegative");
    return {x};
  }
  std::vector<FracIndex> out;
  for (long k = 0; k <= static_cast<long>(param_cap) * ctx.order(); ++k) out.push_back(ctx.index(k));
  return out;
}

/// k-tuples of basis monomials, each of weight <= cap, in basis order.
inline std::vector<std::vector<Monomial>> tuples(const VoaContext& ctx, int k, int cap) {
  std::vector<std::vector<Monomial>> out;
  if (cap < 0) return out;
  const auto basis = ctx.algebra().basis_upto(cap);
  std::vector<Monomial> cur;
  std::function<void(int)> rec = [&](int left) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (const auto& b : basis) {
      cur.push_back(b);
      rec(left - 1);
      cur.pop_back();
    }
  };
  rec(k);
  return out;
}

struct Member {
  GeneratorDescriptor descriptor;
  std::string text;
};

/// Generators of a family with nominal output weight <= cap, zero vectors dropped.
inline std::vector<Member> family_members(const VoaContext& ctx, const SpanFamily& f, int cap) {
  std::vector<Member> out;
  auto t = [&](const Monomial& x) { return ctx.text(x); };
  for (auto& g : enumerate_family(ctx, f, cap)) {
    if (regenerate(ctx, g.descriptor).is_zero()) continue;
    std::string text = std::visit(
        [&](const auto& d) -> std::string {
          using D = std::decay_t<decltype(d)>;
          if constexpr (std::is_same_v<D, CircleZhu>) return "circ(" + t(d.a) + "," + t(d.b) + ")";
          else if constexpr (std::is_same_v<D, CircleBimod>) return "circ(" + t(d.a) + "," + t(d.v) + ")";
          else if constexpr (std::is_same_v<D, LShiftZhu>) return "shift(" + t(d.a) + ")";
          else if constexpr (std::is_same_v<D, LShiftBimod>) return "shift(" + t(d.v) + ")";
          else return "gen";
        },
        g.descriptor);
    out.push_back({std::move(g.descriptor), std::move(text)});
  }
  return out;
}

inline std::string idx(const char* name, const FracIndex& x) { return std::string(name) + "=" + x.to_string(); }

inline std::string join_labels(std::initializer_list<std::string> parts) {
  std::string out;
  for (const auto& s : parts) {
    if (!out.empty()) out += " ";
    out += s;
  }
  return out;
}

inline std::string mono_list(const VoaContext& ctx, const std::vector<Monomial>& ms, const char* names) {
  std::string out;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    if (i) out += " ";
    out += std::string(1, names[i]) + "=" + ctx.text(ms[i]);
  }
  return out;
}

// ---- case builders -------------------------------------------------------

using Builder = std::function<std::vector<Case>(const VoaContext&, const CheckConfig&, CheckResult&)>;

inline std::vector<Case> zhu_assoc(const VoaContext& ctx, const CheckConfig& cfg, CheckResult&) {
  std::vector<Case> out;
  for (const auto& n : grid(ctx, cfg.n, cfg.param_cap))
    for (const auto& tr : tuples(ctx, 3, cfg.weight_cap)) {
      json a = expr::basis(ctx, tr[0]), b = expr::basis(ctx, tr[1]), c = expr::basis(ctx, tr[2]);
      json target = expr::sub(expr::star_zhu(expr::star_zhu(a, b, n), c, n), expr::star_zhu(a, expr::star_zhu(b, c, n), n));
      out.push_back({join_labels({idx("n", n), mono_list(ctx, tr, "abc")}), target, SpanFamily::zhu(n), {}});
    }
  return out;
}

inline std::vector<Case> zhu_unit_center(const VoaContext& ctx, const CheckConfig& cfg, CheckResult&) {
  std::vector<Case> out;
  const Monomial vac;
  for (const auto& n : grid(ctx, cfg.n, cfg.param_cap))
    for (const auto& a : ctx.algebra().basis_upto(cfg.weight_cap)) {
      json ja = expr::basis(ctx, a), one = expr::basis(ctx, vac);
      const std::string base = join_labels({idx("n", n), "a=" + ctx.text(a)});
      out.push_back({"left-unit " + base, expr::sub(expr::star_zhu(one, ja, n), ja), std::nullopt, {}});
      out.push_back({"right-unit " + base, expr::sub(expr::star_zhu(ja, one, n), ja), SpanFamily::zhu(n), {}});
      out.push_back({"omega-central " + base,
                     expr::sub(expr::star_zhu(expr::omega(), ja, n), expr::star_zhu(ja, expr::omega(), n)),
                     SpanFamily::zhu(n), {}});
    }
  return out;
}

inline std::vector<Case> zhu_epimorphism(const VoaContext& ctx, const CheckConfig& cfg, CheckResult&) {
  std::vector<Case> out;
  for (const auto& n : grid(ctx, cfg.n, cfg.param_cap)) {
    if (n.numerator() == 0) continue;  // no lower level
    const FracIndex lower = n - FracIndex(1, ctx.order());
    // generators up to weight weight_cap + 2 (5 at the default cap)
    for (const auto& g : family_members(ctx, SpanFamily::zhu(n), cfg.weight_cap + 2))
      out.push_back({join_labels({idx("n", n), g.text}), expr::gen(ctx, g.descriptor), SpanFamily::zhu(lower), {}});
  }
  return out;
}

inline std::vector<Case> zhu_theta(const VoaContext& ctx, const CheckConfig& cfg, CheckResult&) {
  std::vector<Case> out;
  for (const auto& n : grid(ctx, cfg.n, cfg.param_cap))
    for (const auto& pr : tuples(ctx, 2, cfg.weight_cap)) {
      json a = expr::basis(ctx, pr[0]), b = expr::basis(ctx, pr[1]);
      json target = expr::sub(expr::theta(expr::star_zhu(a, b, n)), expr::star_zhu(expr::theta(b), expr::theta(a), n));
      out.push_back({join_labels({idx("n", n), mono_list(ctx, pr, "ab")}), target, SpanFamily::zhu(n), {}});
    }
  return out;
}

inline std::vector<Case> zhu_ideal(const VoaContext& ctx, const CheckConfig& cfg, CheckResult&) {
  std::vector<Case> out;
  for (const auto& n : grid(ctx, cfg.n, cfg.param_cap))
    for (const auto& g : family_members(ctx, SpanFamily::zhu(n), cfg.weight_cap))
      for (const auto& a : ctx.algebra().basis_upto(cfg.weight_cap)) {
        json ja = expr::basis(ctx, a), jo = expr::gen(ctx, g.descriptor);
        const std::string base = join_labels({idx("n", n), "a=" + ctx.text(a), "o=" + g.text});
        out.push_back({"a*o " + base, expr::star_zhu(ja, jo, n), SpanFamily::zhu(n), {}});
        out.push_back({"o*a " + base, expr::star_zhu(jo, ja, n), SpanFamily::zhu(n), {}});
      }
  return out;
}

inline std::vector<Case> kernel_invariants(const VoaContext& ctx, const CheckConfig& cfg, CheckResult&) {
  std::vector<Case> out;
  auto wrap = [](std::string label, std::function<InvariantTally()> fn) {
    return Case{label, json(), std::nullopt, [label, fn] {
                  InvariantTally t = fn();
                  CaseResult r{label, "exact", t.ok() ? "pass" : "fail"};
                  r.detail = {{"checked", t.checked}, {"failures", t.failures}};
                  return r;
                }};
  };
  const int w = cfg.weight_cap;
  out.push_back(wrap("grading", [&ctx, w] { return check_grading(ctx, w + 1); }));
  out.push_back(wrap("skew-symmetry", [&ctx, w] { return check_skew_symmetry(ctx, w, 6); }));
  out.push_back(wrap("borcherds-commutator", [&ctx, w] { return check_borcherds(ctx, w, -1, 2); }));
  return out;
}

/// L_0 on the twisted Fock module by normal ordering: degree plus the anomaly 1/16.
inline TwistedVector normal_ordered_l0(const TwistedMonomial& w) {
  return TwistedVector(w, make_rational(w.weight, 2) + make_rational(1, 16));
}

inline std::vector<Case> twist_anomaly(const VoaContext& ctx, const CheckConfig& cfg, CheckResult& res) {
  std::vector<Case> out;
  if (ctx.backend() != Backend::Heisenberg) throw UsageError("twist-anomaly needs the heisenberg backend");
  const TwistedVector vac = TwistedVector::basis(TwistedMonomial());
  const Rational anomaly = zero_mode(ctx, ctx.algebra().omega(), vac).coefficient(TwistedMonomial());
  res.notes["anomaly"] = anomaly.get_str();
  out.push_back({"vacuum", json(), std::nullopt, [&ctx, vac] {
                   TwistedVector got = zero_mode(ctx, ctx.algebra().omega(), vac);
                   CaseResult r{"vacuum", "exact", got == normal_ordered_l0(TwistedMonomial()) ? "pass" : "fail"};
                   r.detail = {{"value", TwistedFockModule{}.text(got)}};
                   return r;
                 }});
  TwistedFockModule mod;
  for (int d2 = 1; d2 <= 2 * cfg.weight_cap; ++d2)
    for (const auto& w : mod.basis(d2)) {
      const std::string label = "L0 " + monomial_text(w);
      out.push_back({label, json(), std::nullopt, [&ctx, w, label] {
                       TwistedVector got = zero_mode(ctx, ctx.algebra().omega(), TwistedVector::basis(w));
                       return CaseResult{label, "exact", got == normal_ordered_l0(w) ? "pass" : "fail"};
                     }});
    }
  return out;
}

inline std::vector<Case> o_vanishing(const VoaContext& ctx, const CheckConfig& cfg, CheckResult& res) {
  std::vector<Case> out;
  if (ctx.backend() != Backend::Heisenberg || ctx.g1() != Automorphism::Negation)
    throw UsageError("o-vanishing runs on the twisted Fock module (heisenberg, g1=neg)");
  bool all_stable = true;
  json dims = json::object();
  for (const auto& n : grid(ctx, cfg.n, cfg.param_cap)) {
    auto omega = std::make_shared<OmegaSpace<TwistedMonomial>>(
        omega_n_twisted(ctx, n, Rational(cfg.cutoff), cfg.probe_cap));
    all_stable = all_stable && omega->stable;
    dims[n.to_string()] = omega->dimension();
    const auto vs = omega->all();
    for (const auto& pr : tuples(ctx, 2, cfg.weight_cap)) {
      const std::string label = join_labels({"product", idx("n", n), mono_list(ctx, pr, "ab")});
      out.push_back({label, json(), std::nullopt, [&ctx, vs, pr, n, label] {
                       StateVector a = StateVector::basis(pr[0]), b = StateVector::basis(pr[1]);
                       StateVector ab = star_zhu(ctx, a, b, n);
                       bool ok = true;
                       for (const auto& v : vs) ok = ok && zero_mode(ctx, ab, v) == zero_mode(ctx, a, zero_mode(ctx, b, v));
                       CaseResult r{label, "exact", ok ? "pass" : "fail"};
                       r.detail = {{"vectors", vs.size()}};
                       return r;
                     }});
    }
    for (const auto& g : family_members(ctx, SpanFamily::zhu(n), cfg.weight_cap)) {
      const std::string label = join_labels({"kills-O", idx("n", n), g.text});
      out.push_back({label, json(), std::nullopt, [&ctx, vs, g, label] {
                       StateVector o = regenerate(ctx, g.descriptor);
                       bool ok = true;
                       for (const auto& v : vs) ok = ok && zero_mode(ctx, o, v).is_zero();
                       return CaseResult{label, "exact", ok ? "pass" : "fail"};
                     }});
    }
  }
  res.stability = {{"probe_cap", cfg.probe_cap}, {"stable", all_stable}, {"dimensions", dims}};
  return out;
}

inline std::vector<Case> prop_k_s_o(const VoaContext& ctx, const CheckConfig& cfg, CheckResult&) {
  std::vector<Case> out;
  const auto ms = grid(ctx, cfg.m, cfg.param_cap);
  const auto ns = grid(ctx, cfg.n, cfg.param_cap);
  for (const auto& m : ms)
    for (const auto& n : ns) {
      for (const auto& pr : tuples(ctx, 2, cfg.weight_cap)) {
        if (!circle_bimod_top(ctx, pr[0], pr[1].weight, m, n)) continue;
        for (int k = 0; k <= 3; ++k)
          for (int s = 0; s <= k; ++s) {
            json target = expr::gen_circle(expr::basis(ctx, pr[0]), expr::basis(ctx, pr[1]), m, n, k, s);
            out.push_back({join_labels({"ks", idx("m", m), idx("n", n), "k=" + std::to_string(k), "s=" + std::to_string(s),
                                        mono_list(ctx, pr, "av")}),
                           target, SpanFamily::odag(m, n), {}});
          }
      }
      for (const auto& p : grid(ctx, std::nullopt, cfg.param_cap)) {
        if (p < m) continue;
        for (const auto& g : family_members(ctx, SpanFamily::odag(p, n), cfg.weight_cap))
          out.push_back({join_labels({"nest", idx("m", m), idx("n", n), idx("p", p), g.text}), expr::gen(ctx, g.descriptor),
                         SpanFamily::odag(m, n), {}});
      }
    }
  return out;
}

inline std::vector<Case> thm_bimodule_1(const VoaContext& ctx, const CheckConfig& cfg, CheckResult&) {
  std::vector<Case> out;
  for (const auto& m : grid(ctx, cfg.m, cfg.param_cap))
    for (const auto& n : grid(ctx, cfg.n, cfg.param_cap)) {
      for (const auto& g : family_members(ctx, SpanFamily::zhu(m), cfg.weight_cap))
        for (const auto& u : ctx.algebra().basis_upto(cfg.weight_cap))
          out.push_back({join_labels({"u*O", idx("m", m), idx("n", n), "u=" + ctx.text(u), g.text}),
                         expr::right(expr::basis(ctx, u), expr::gen(ctx, g.descriptor), m, n), SpanFamily::odag(m, n), {}});
      for (const auto& tr : tuples(ctx, 3, cfg.weight_cap)) {
        json u = expr::basis(ctx, tr[0]), b = expr::basis(ctx, tr[1]), a = expr::basis(ctx, tr[2]);
        json target = expr::sub(expr::right(expr::right(u, b, m, n), a, m, n), expr::right(u, expr::star_zhu(b, a, m), m, n));
        out.push_back({join_labels({"law", idx("m", m), idx("n", n), mono_list(ctx, tr, "uba")}), target,
                       SpanFamily::odag(m, n), {}});
      }
    }
  return out;
}

inline std::vector<Case> thm_bimodule_2(const VoaContext& ctx, const CheckConfig& cfg, CheckResult&) {
  std::vector<Case> out;
  for (const auto& m : grid(ctx, cfg.m, cfg.param_cap))
    for (const auto& n : grid(ctx, cfg.n, cfg.param_cap)) {
      for (const auto& g : family_members(ctx, SpanFamily::zhu(n), cfg.weight_cap))
        for (const auto& u : ctx.algebra().basis_upto(cfg.weight_cap))
          out.push_back({join_labels({"O*u", idx("m", m), idx("n", n), g.text, "u=" + ctx.text(u)}),
                         expr::left(expr::gen(ctx, g.descriptor), expr::basis(ctx, u), m, n, n), SpanFamily::odag(m, n), {}});
      for (const auto& tr : tuples(ctx, 3, cfg.weight_cap)) {
        json a = expr::basis(ctx, tr[0]), b = expr::basis(ctx, tr[1]), u = expr::basis(ctx, tr[2]);
        json target = expr::sub(expr::left(expr::star_zhu(a, b, n), u, m, n, n),
                                expr::left(a, expr::left(b, u, m, n, n), m, n, n));
        out.push_back({join_labels({"law", idx("m", m), idx("n", n), mono_list(ctx, tr, "abu")}), target,
                       SpanFamily::odag(m, n), {}});
      }
    }
  return out;
}

inline std::vector<Case> thm_bimodule_3(const VoaContext& ctx, const CheckConfig& cfg, CheckResult&) {
  std::vector<Case> out;
  for (const auto& m : grid(ctx, cfg.m, cfg.param_cap))
    for (const auto& n : grid(ctx, cfg.n, cfg.param_cap))
      for (const auto& tr : tuples(ctx, 3, cfg.weight_cap)) {
        json a = expr::basis(ctx, tr[0]), u = expr::basis(ctx, tr[1]), b = expr::basis(ctx, tr[2]);
        json target = expr::sub(expr::right(expr::left(a, u, m, n, n), b, m, n), expr::left(a, expr::right(u, b, m, n), m, n, n));
        out.push_back({join_labels({idx("m", m), idx("n", n), mono_list(ctx, tr, "aub")}), target, SpanFamily::odag(m, n), {}});
      }
  return out;
}

inline std::vector<Case> closing_prop(const VoaContext& ctx, const CheckConfig& cfg, CheckResult&) {
  std::vector<Case> out;
  for (const auto& m : grid(ctx, cfg.m, cfg.param_cap))
    for (const auto& n : grid(ctx, cfg.n, cfg.param_cap))
      for (const auto& p : grid(ctx, cfg.p, cfg.param_cap))
        for (const auto& g : family_members(ctx, SpanFamily::odag(m, p), cfg.weight_cap))
          for (const auto& a : ctx.algebra().basis_upto(cfg.weight_cap))
            out.push_back({join_labels({idx("m", m), idx("n", n), idx("p", p), "a=" + ctx.text(a), g.text}),
                           expr::left(expr::basis(ctx, a), expr::gen(ctx, g.descriptor), m, p, n), SpanFamily::odag(m, n), {}});
  return out;
}

inline std::vector<Case> two_actions_commute(const VoaContext& ctx, const CheckConfig& cfg, CheckResult&) {
  std::vector<Case> out;
  for (const auto& m : grid(ctx, cfg.m, cfg.param_cap))
    for (const auto& n : grid(ctx, cfg.n, cfg.param_cap))
      for (const auto& p : grid(ctx, cfg.p, cfg.param_cap))
        for (const auto& tr : tuples(ctx, 3, cfg.weight_cap)) {
          json b = expr::basis(ctx, tr[0]), v = expr::basis(ctx, tr[1]), a = expr::basis(ctx, tr[2]);
          json target = expr::sub(expr::left(b, expr::right(v, a, m, p), m, p, n), expr::right(expr::left(b, v, m, p, n), a, m, n));
          out.push_back({join_labels({idx("m", m), idx("n", n), idx("p", p), mono_list(ctx, tr, "bva")}), target,
                         SpanFamily::oprime(m, n), {}});
        }
  return out;
}

inline std::vector<Case> two_right_actions(const VoaContext& ctx, const CheckConfig& cfg, CheckResult&) {
  std::vector<Case> out;
  for (const auto& m : grid(ctx, cfg.m, cfg.param_cap))
    for (const auto& n : grid(ctx, cfg.n, cfg.param_cap))
      for (const auto& pr : tuples(ctx, 2, cfg.weight_cap)) {
        json a = expr::basis(ctx, pr[0]), b = expr::basis(ctx, pr[1]);
        const std::string branch = "r=" + std::to_string(ctx.eigen_index(pr[0])) + " s=" + std::to_string(ctx.eigen_index(pr[1]));
        out.push_back({join_labels({idx("m", m), idx("n", n), mono_list(ctx, pr, "ab"), branch}),
                       expr::sub(expr::dj_star(a, b, m, n), expr::right(a, b, m, n)), SpanFamily::oprime(m, n), {}});
      }
  return out;
}

inline std::vector<Case> congruence(const VoaContext& ctx, const CheckConfig& cfg, CheckResult&) {
  std::vector<Case> out;
  for (const auto& m : grid(ctx, cfg.m, cfg.param_cap))
    for (const auto& n : grid(ctx, cfg.n, cfg.param_cap))
      for (const auto& pr : tuples(ctx, 2, cfg.weight_cap))
        for (int N = 0; N <= 6; ++N)
          out.push_back({join_labels({idx("m", m), idx("n", n), mono_list(ctx, pr, "ab"), "x^" + std::to_string(N)}),
                         expr::congruence(expr::basis(ctx, pr[0]), expr::basis(ctx, pr[1]), m, n, N), SpanFamily::shift(m, n), {}});
  return out;
}

inline std::vector<Case> lemma_o_star_a(const VoaContext& ctx, const CheckConfig& cfg, CheckResult&) {
  std::vector<Case> out;
  for (const auto& m : grid(ctx, cfg.m, cfg.param_cap))
    for (const auto& n : grid(ctx, cfg.n, cfg.param_cap))
      for (const auto& p : grid(ctx, cfg.p, cfg.param_cap))
        for (const auto& g : family_members(ctx, SpanFamily::oprime(p, n), cfg.weight_cap))
          for (const auto& b : ctx.algebra().basis_upto(cfg.weight_cap))
            out.push_back({join_labels({idx("m", m), idx("n", n), idx("p", p), g.text, "b=" + ctx.text(b)}),
                           expr::left(expr::gen(ctx, g.descriptor), expr::basis(ctx, b), m, p, n), SpanFamily::oprime(m, n), {}});
  return out;
}

inline std::vector<Case> lemma_assoc_3(const VoaContext& ctx, const CheckConfig& cfg, CheckResult&) {
  std::vector<Case> out;
  const auto ps = grid(ctx, std::nullopt, cfg.param_cap);
  for (const auto& m : grid(ctx, cfg.m, cfg.param_cap))
    for (const auto& p1 : ps)
      for (const auto& p2 : ps)
        for (const auto& p3 : ps)
          for (const auto& tr : tuples(ctx, 3, cfg.weight_cap)) {
            json a = expr::basis(ctx, tr[0]), b = expr::basis(ctx, tr[1]), c = expr::basis(ctx, tr[2]);
            json target = expr::sub(expr::left(expr::left(a, b, p1, p2, p3), c, m, p1, p3),
                                    expr::left(a, expr::left(b, c, m, p1, p2), m, p2, p3));
            out.push_back({join_labels({idx("m", m), idx("p1", p1), idx("p2", p2), idx("p3", p3), mono_list(ctx, tr, "abc")}),
                           target, SpanFamily::oprime(m, p3), {}});
          }
  return out;
}

inline std::vector<Case> lemma_well_define(const VoaContext& ctx, const CheckConfig& cfg, CheckResult&) {
  std::vector<Case> out;
  for (const auto& m : grid(ctx, cfg.m, cfg.param_cap))
    for (const auto& n : grid(ctx, cfg.n, cfg.param_cap))
      for (const auto& p : grid(ctx, cfg.p, cfg.param_cap))
        for (const auto& g : family_members(ctx, SpanFamily::oprime(m, p), cfg.weight_cap))
          for (const auto& a : ctx.algebra().basis_upto(cfg.weight_cap))
            out.push_back({join_labels({idx("m", m), idx("n", n), idx("p", p), "a=" + ctx.text(a), g.text}),
                           expr::left(expr::basis(ctx, a), expr::gen(ctx, g.descriptor), m, p, n), SpanFamily::oprime(m, n), {}});
  return out;
}

inline std::vector<Case> dj_conjecture(const VoaContext& ctx, const CheckConfig& cfg, CheckResult&) {
  std::vector<Case> out;
  const auto ps = grid(ctx, std::nullopt, cfg.param_cap);
  for (const auto& m : grid(ctx, cfg.m, cfg.param_cap))
    for (const auto& n : grid(ctx, cfg.n, cfg.param_cap)) {
      for (const auto& p1 : ps)
        for (const auto& p2 : ps)
          for (const auto& p3 : ps)
            for (const auto& q : tuples(ctx, 4, cfg.weight_cap)) {
              OppGen g{q[0], q[1], q[2], q[3], m, n, p1, p2, p3};
              out.push_back({join_labels({"O''", idx("m", m), idx("n", n), idx("p1", p1), idx("p2", p2), idx("p3", p3),
                                          mono_list(ctx, q, "abcd")}),
                             expr::gen(ctx, g), SpanFamily::oprime(m, n), {}});
            }
      for (const auto& p1 : ps)
        for (const auto& p2 : ps)
          for (const auto& o : family_members(ctx, SpanFamily::oprime(p1, p2), cfg.weight_cap))
            for (const auto& pr : tuples(ctx, 2, cfg.weight_cap)) {
              OpppGen g{pr[0], pr[1], m, n, p1, p2, LShiftBimod{}};
              if (auto* c = std::get_if<CircleBimod>(&o.descriptor)) g.inner = *c;
              else g.inner = std::get<LShiftBimod>(o.descriptor);
              out.push_back({join_labels({"O'''", idx("m", m), idx("n", n), idx("p1", p1), idx("p2", p2),
                                          "a=" + ctx.text(pr[0]), "o=" + o.text, "c=" + ctx.text(pr[1])}),
                             expr::gen(ctx, g), SpanFamily::oprime(m, n), {}});
            }
    }
  return out;
}

inline const std::map<std::string, Builder>& builders() {
  static const std::map<std::string, Builder> table = {
      {"kernel-invariants", kernel_invariants},
      {"zhu-assoc", zhu_assoc},
      {"zhu-unit-center", zhu_unit_center},
      {"zhu-epimorphism", zhu_epimorphism},
      {"zhu-theta", zhu_theta},
      {"zhu-ideal", zhu_ideal},
      {"twist-anomaly", twist_anomaly},
      {"o-vanishing", o_vanishing},
      {"prop-k-s-O", prop_k_s_o},
      {"thm-bimodule-1", thm_bimodule_1},
      {"thm-bimodule-2", thm_bimodule_2},
      {"thm-bimodule-3", thm_bimodule_3},
      {"closing-prop", closing_prop},
      {"prop-two-actions-commute", two_actions_commute},
      {"prop-two-right-actions", two_right_actions},
      {"congruence-relation", congruence},
      {"lemma-O-star-a", lemma_o_star_a},
      {"lemma-assoc-3", lemma_assoc_3},
      {"lemma-well-define", lemma_well_define},
      {"dj-conjecture", dj_conjecture},
  };
  return table;
}

/// Runs fn(i) for i in [0, count) on up to jobs threads.
inline void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn) {
  if (jobs <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mu;
  for (int t = 0; t < jobs; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < count;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace checks

/// Runs one named check. Membership failures after the retry are reported as
/// inconclusive, exact-equality failures as fail.
inline CheckResult run_check(const std::string& id, const CheckConfig& cfg, const VoaContext& ctx, SpanCache& cache) {
  const auto& table = checks::builders();
  auto it = table.find(id);
  if (it == table.end()) {
    std::string valid;
    for (const auto& s : check_ids()) valid += (valid.empty() ? "" : ", ") + s;
    throw UsageError("unknown check '" + id + "'; valid checks: " + valid);
  }
  const auto start = std::chrono::steady_clock::now();
  CheckResult res;
  res.check = id;
  std::vector<checks::Case> cases = it->second(ctx, cfg, res);
  res.cases.resize(cases.size());

  std::vector<StateVector> targets(cases.size());
  checks::parallel_for(cases.size(), cfg.jobs, [&](std::size_t i) {
    if (cases[i].custom) res.cases[i] = cases[i].custom();
    else targets[i] = expr::evaluate(ctx, cases[i].target);
  });

  // One cap per family: the largest target weight decides it.
  std::map<std::string, int> family_top;
  for (std::size_t i = 0; i < cases.size(); ++i)
    if (cases[i].family) {
      int& top = family_top[cases[i].family->key()];
      top = std::max(top, targets[i].max_weight());
    }
  checks::parallel_for(cases.size(), cfg.jobs, [&](std::size_t i) {
    const auto& c = cases[i];
    if (c.custom) return;
    CaseResult& r = res.cases[i];
    r.label = c.label;
    if (!c.family) {
      r.kind = "exact";
      r.status = targets[i].is_zero() ? "pass" : "fail";
      if (!targets[i].is_zero()) r.detail["residual"] = ctx.text(targets[i]);
      return;
    }
    r.kind = "membership";
    const int cutoff = std::max(cfg.cutoff, family_top[c.family->key()]);
    Membership mem = span_member(cache, ctx, *c.family, targets[i], cutoff, cfg.slack);
    json span = c.family->to_json();
    span["cap"] = mem.cap;
    r.detail = {{"span", span}, {"retried", mem.retried}, {"target_weight", targets[i].max_weight()}};
    if (mem.certificate) {
      r.status = "pass";
      r.certificate = certificate_json(ctx, c.label, c.target, *c.family, mem.cap, *mem.certificate);
    } else {
      r.status = "inconclusive";
    }
  });
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

inline json report_json(const CheckResult& res, const CheckConfig& cfg, const std::optional<std::string>& cert_file) {
  json cases = json::array();
  std::size_t ncert = 0;
  std::map<std::string, std::size_t> tally;
  for (std::size_t i = 0; i < res.cases.size(); ++i) {
    const auto& c = res.cases[i];
    ++tally[c.status];
    json jc = {{"case", c.label}, {"kind", c.kind}, {"status", c.status}, {"detail", c.detail}};
    if (c.certificate) jc["certificate"] = ncert++;
    cases.push_back(jc);
  }
  json summary = json::object();
  for (const auto& [k, v] : tally) summary[k] = v;
  json certs = {{"count", ncert}};
  if (cert_file) certs["file"] = *cert_file;
  json out = {{"check", res.check},       {"params", cfg.params_json()}, {"caps", cfg.caps_json()},
              {"status", res.status()},   {"vacuous", res.cases.empty()}, {"summary", summary},
              {"cases", cases},           {"certificates", certs},        {"stability", res.stability}};
  if (!res.notes.empty()) out["notes"] = res.notes;
  out["timing"] = {{"seconds", res.seconds}};
  return out;
}

inline json certificate_document(const CheckResult& res, const CheckConfig& cfg) {
  json certs = json::array();
  for (const auto& c : res.cases)
    if (c.certificate) certs.push_back(*c.certificate);
  return {{"check", res.check}, {"params", cfg.session.to_json()}, {"certificates", certs}};
}

/// Truncated V / O_{g,n}(V): representatives of weight <= cutoff.
struct ZhuQuotient {
  std::vector<Monomial> representatives;
  int cap = 0;
  int relation_rank = 0;
};

inline ZhuQuotient zhu_quotient(const VoaContext&, SpanCache& cache, const SpanFamily& family, int cutoff, int slack) {
  ZhuQuotient q;
  q.cap = cutoff + slack;
  auto span = cache.get(family, q.cap);
  q.relation_rank = span->rank();
  for (int col : span->echelon().free_columns()) {
    const Monomial& mono = span->columns().key(col);
    if (mono.weight <= cutoff) q.representatives.push_back(mono);
  }
  std::sort(q.representatives.begin(), q.representatives.end());
  return q;
}

}  // namespace voa
