#pragma once

#include <algorithm>
#include <string>
#include <tuple>
#include <vector>

#include "voa/bimodule/bimodule.hpp"
#include "voa/zhu/descriptor.hpp"
#include "voa/zhu/zhu_algebra.hpp"

namespace voa {

/// Named spanning families. ZhuO uses n only; Shift is (L_(-1) + L_(0) + m - n)V.
struct SpanFamily {
  enum class Kind { ZhuO, Odag, Oprime, Shift };
  Kind kind;
  FracIndex m, n;

  static SpanFamily zhu(const FracIndex& n) { return {Kind::ZhuO, FracIndex(0, n.order()), n}; }
  static SpanFamily odag(const FracIndex& m, const FracIndex& n) { return {Kind::Odag, m, n}; }
  static SpanFamily oprime(const FracIndex& m, const FracIndex& n) { return {Kind::Oprime, m, n}; }
  static SpanFamily shift(const FracIndex& m, const FracIndex& n) { return {Kind::Shift, m, n}; }

  std::string name() const {
    switch (kind) {
      case Kind::ZhuO: return "ZhuO";
      case Kind::Odag: return "Odag";
      case Kind::Oprime: return "Oprime";
      case Kind::Shift: return "Shift";
    }
    return "";
  }

  std::string key() const { return name() + "/" + m.to_string() + "/" + n.to_string(); }

  json to_json() const {
    if (kind == Kind::ZhuO) return {{"family", name()}, {"n", n.to_string()}};
    return {{"family", name()}, {"m", m.to_string()}, {"n", n.to_string()}};
  }

  static SpanFamily from_json(const json& j, int T) {
    if (!j.is_object() || !j.contains("family") || !j.at("family").is_string())
      throw DomainError("span needs a family");
    const std::string f = j.at("family").get<std::string>();
    const FracIndex n = detail::index_from(j, "n", T);
    if (f == "ZhuO") return zhu(n);
    const FracIndex m = detail::index_from(j, "m", T);
    if (f == "Odag") return odag(m, n);
    if (f == "Oprime") return oprime(m, n);
    if (f == "Shift") return shift(m, n);
    throw DomainError("unknown span family '" + f + "'");
  }
};

inline StateVector regenerate(const VoaContext& ctx, const GeneratorDescriptor& g) {
  auto basis = [](const Monomial& x) { return StateVector::basis(x); };
  return std::visit(
      [&](const auto& d) -> StateVector {
        using D = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<D, CircleZhu>) {
          return circle_zhu(ctx, basis(d.a), basis(d.b), d.n);
        } else if constexpr (std::is_same_v<D, LShiftZhu>) {
          return l_shift(ctx, basis(d.a));
        } else if constexpr (std::is_same_v<D, CircleBimod>) {
          return generalized_circle(ctx, basis(d.a), basis(d.v), d.m, d.n, d.k, d.s);
        } else if constexpr (std::is_same_v<D, LShiftBimod>) {
          return l_shift(ctx, basis(d.v), (d.m - d.n).value());
        } else if constexpr (std::is_same_v<D, OppGen>) {
          return opp_element(ctx, basis(d.a), basis(d.b), basis(d.c), basis(d.d), d.m, d.n, d.p1, d.p2, d.p3);
        } else {
          StateVector inner = std::visit([&](const auto& x) { return regenerate(ctx, GeneratorDescriptor(x)); }, d.inner);
          return oppp_element(ctx, basis(d.a), inner, basis(d.c), d.m, d.n, d.p1, d.p2);
        }
      },
      g);
}

inline bool belongs_to(const GeneratorDescriptor& g, const SpanFamily& f) {
  using K = SpanFamily::Kind;
  if (auto* c = std::get_if<CircleZhu>(&g)) return f.kind == K::ZhuO && c->n == f.n;
  if (std::holds_alternative<LShiftZhu>(g)) return f.kind == K::ZhuO;
  if (auto* c = std::get_if<CircleBimod>(&g))
    return (f.kind == K::Odag || f.kind == K::Oprime) && c->k == 0 && c->s == 0 && c->m == f.m && c->n == f.n;
  if (auto* l = std::get_if<LShiftBimod>(&g))
    return (f.kind == K::Oprime || f.kind == K::Shift) && l->m == f.m && l->n == f.n;
  return false;
}

struct SpanGenerator {
  GeneratorDescriptor descriptor;
  int top_weight;  // nominal upper bound on the weights in the vector
};

/// Deterministic enumeration of the family's generators with nominal top weight <= cap.
/// Grouped by top weight, so the list at cap N is a prefix of the list at cap N+1;
/// within a group circles come first, ordered by (wt a, wt b, a, b), then shifts.
inline std::vector<SpanGenerator> enumerate_family(const VoaContext& ctx, const SpanFamily& f, int cap) {
  using K = SpanFamily::Kind;
  const auto& alg = ctx.algebra();
  std::vector<Monomial> all = alg.basis_upto(std::max(cap, 0));
  std::vector<std::vector<std::tuple<int, int, Monomial, Monomial>>> circles(static_cast<std::size_t>(cap) + 1);
  if (f.kind != K::Shift) {
    for (const auto& a : all) {
      for (int wb = 0; wb <= cap; ++wb) {
        int top;
        if (f.kind == K::ZhuO) {
          top = a.weight + wb + circle_zhu_depth(f.n, ctx.eigen_index(a)) - 1;
        } else {
          auto t = circle_bimod_top(ctx, a, wb, f.m, f.n);
          if (!t) break;
          top = *t;
        }
        if (top > cap) break;
        if (top < 0) continue;
        for (const auto& b : alg.basis(wb)) circles[top].emplace_back(a.weight, wb, a, b);
      }
    }
  }
  std::vector<SpanGenerator> out;
  for (int t = 0; t <= cap; ++t) {
    auto& group = circles[t];
    std::sort(group.begin(), group.end());
    for (auto& [wa, wb, a, b] : group) {
      if (f.kind == K::ZhuO) out.push_back({CircleZhu{a, b, f.n}, t});
      else out.push_back({CircleBimod{a, b, f.m, f.n, 0, 0}, t});
    }
    if (t >= 1 && f.kind == K::ZhuO) {
      for (const auto& a : alg.basis(t - 1))
        if (!a.is_vacuum()) out.push_back({LShiftZhu{a}, t});
    }
    if (t >= 1 && (f.kind == K::Oprime || f.kind == K::Shift)) {
      for (const auto& v : alg.basis(t - 1)) out.push_back({LShiftBimod{v, f.m, f.n}, t});
    }
  }
  return out;
}

}  // namespace voa
