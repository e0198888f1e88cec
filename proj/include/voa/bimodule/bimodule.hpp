#pragma once

#include "voa/core/context.hpp"
#include "voa/core/residue.hpp"
#include "voa/zhu/zhu_algebra.hpp"

// Bimodule structures on W = V with g2 = g1^{-1}. Indices m, n, p live in (1/T)N.

namespace voa {

using CycStateVector = LinComb<Monomial, CycScalar>;

/// Components of a by (weight, bidegree).
inline std::map<std::pair<int, Bidegree>, StateVector> bidegree_parts(const VoaContext& ctx, const StateVector& a) {
  std::map<std::pair<int, Bidegree>, StateVector> out;
  for (const auto& [k, c] : a.terms()) out[{k.weight, ctx.bidegree(k)}].add(k, c);
  return out;
}

/// Res (1+x)^{wt a + lambda(m,j1) + s} / x^{lambda(m,j1) + lambda(n,j2) + 2 + k} Y(a, x) v.
inline StateVector generalized_circle(const VoaContext& ctx, const StateVector& a, const StateVector& v,
                                      const FracIndex& m, const FracIndex& n, int k, int s) {
  if (k < s || s < 0) throw DomainError("generalized circle needs k >= s >= 0");
  StateVector out;
  for (const auto& [key, comp] : bidegree_parts(ctx, a)) {
    const auto& [w, bd] = key;
    const Rational lm = lambda(m, bd.j1);
    out += residue(ctx, comp, w, Rational(w + s) + lm, lm + lambda(n, bd.j2) + 2 + k, v);
  }
  return out;
}

inline StateVector circle_bimod(const VoaContext& ctx, const StateVector& a, const StateVector& v,
                                const FracIndex& m, const FracIndex& n) {
  return generalized_circle(ctx, a, v, m, n, 0, 0);
}

/// Nominal top weight of a o^n_m v for basis inputs, or nullopt when the depth is fractional.
inline std::optional<int> circle_bimod_top(const VoaContext& ctx, const Monomial& a, int wt_v, const FracIndex& m,
                                           const FracIndex& n, int k = 0) {
  const Bidegree bd = ctx.bidegree(a);
  const Rational depth = lambda(m, bd.j1) + lambda(n, bd.j2) + 2 + k;
  if (depth.get_den() != 1) return std::nullopt;
  return a.weight + wt_v + static_cast<int>(depth.get_num().get_si()) - 1;
}

/// u *_ ^n_{g1,m} a with the root of unity (-1)^{-lambda(n,j2)} kept exact.
inline CycStateVector right_action_cyc(const VoaContext& ctx, const StateVector& u, const StateVector& a,
                                       const FracIndex& m, const FracIndex& n) {
  CycStateVector out;
  const long fm = m.floor();
  for (const auto& [key, comp] : bidegree_parts(ctx, a)) {
    const auto& [w, bd] = key;
    if (bd.j1 != 0) continue;
    const Rational ln = lambda(n, bd.j2);
    const CycScalar phase = root_of_unity_power(FracIndex::from_rational(-ln, ctx.order()), ctx.order());
    StateVector acc;
    for (long i = 0; i <= fm; ++i)
      acc.axpy(gen_binomial(ln + i, static_cast<unsigned>(i)), residue(ctx, comp, w, Rational(w + i - 1), ln + i + 1, u));
    for (const auto& [mono, c] : acc.terms()) out.add(mono, phase * c);
  }
  return out;
}

/// Rational form of the right action. On W = V, j1 = 0 forces j2 = 0, so the phase is a sign.
inline StateVector right_action(const VoaContext& ctx, const StateVector& u, const StateVector& a,
                                const FracIndex& m, const FracIndex& n) {
  StateVector out;
  const CycStateVector cyc = right_action_cyc(ctx, u, a, m, n);
  for (const auto& [mono, c] : cyc.terms()) out.add(mono, c.rational_value());
  return out;
}

/// a *- ^n_{m,p} u. Components whose exponent lambda(m,j1) + n - p is fractional vanish,
/// which is the sector condition j2 = n~ - p~ (mod T).
inline StateVector left_action(const VoaContext& ctx, const StateVector& a, const StateVector& u, const FracIndex& m,
                               const FracIndex& p, const FracIndex& n) {
  StateVector out;
  const long fp = p.floor();
  for (const auto& [key, comp] : bidegree_parts(ctx, a)) {
    const auto& [w, bd] = key;
    const Rational lm = lambda(m, bd.j1);
    const Rational e0 = lm + (n - p).value();
    if (e0.get_den() != 1) continue;
    for (long i = 0; i <= fp; ++i) {
      Rational c = gen_binomial(e0 + i, static_cast<unsigned>(i));
      if (i % 2) c = -c;
      out.axpy(c, residue(ctx, comp, w, Rational(w) + lm, e0 + i + 1, u));
    }
  }
  return out;
}

/// a *^n_{g1,m} b, nonzero only on components with (m~ - n~) mod T = r.
inline StateVector dj_star(const VoaContext& ctx, const StateVector& a, const StateVector& b, const FracIndex& m,
                           const FracIndex& n) {
  StateVector out;
  const int T = ctx.order();
  const int want = ((m.tilde() - n.tilde()) % T + T) % T;
  const long fm = m.floor();
  const long fn = n.floor();
  for (const auto& [key, comp] : ctx.homogeneous_parts(a)) {
    const auto [w, r] = key;
    if (r != want) continue;
    const Rational lm = lambda(m, r);
    for (long i = 0; i <= fm; ++i) {
      Rational c = gen_binomial(Rational(fn + i), static_cast<unsigned>(i));
      if (i % 2) c = -c;
      out.axpy(c, residue(ctx, comp, w, Rational(w) + lm, Rational(fn + i + 1), b));
    }
  }
  return out;
}

/// (a *-^{p3}_{p1,p2} b) *-^{p3}_{m,p1} c - a *-^{p3}_{m,p2} (b *-^{p2}_{m,p1} c).
inline StateVector associator3(const VoaContext& ctx, const StateVector& a, const StateVector& b,
                               const StateVector& c, const FracIndex& m, const FracIndex& p1, const FracIndex& p2,
                               const FracIndex& p3) {
  StateVector lhs = left_action(ctx, left_action(ctx, a, b, p1, p2, p3), c, m, p1, p3);
  StateVector rhs = left_action(ctx, a, left_action(ctx, b, c, m, p1, p2), m, p2, p3);
  return lhs - rhs;
}

/// Element of O'': d *-^n_{m,p3} (associator).
inline StateVector opp_element(const VoaContext& ctx, const StateVector& a, const StateVector& b, const StateVector& c,
                               const StateVector& d, const FracIndex& m, const FracIndex& n, const FracIndex& p1,
                               const FracIndex& p2, const FracIndex& p3) {
  return left_action(ctx, d, associator3(ctx, a, b, c, m, p1, p2, p3), m, p3, n);
}

/// Element of O''': (a *-^n_{p1,p2} o) *-^n_{m,p1} c with o in O'_{p2,p1}.
inline StateVector oppp_element(const VoaContext& ctx, const StateVector& a, const StateVector& o, const StateVector& c,
                                const FracIndex& m, const FracIndex& n, const FracIndex& p1, const FracIndex& p2) {
  return left_action(ctx, left_action(ctx, a, o, p1, p2, n), c, m, p1, n);
}

/// Graded action a_{(p)} on v + O'_{n,m}: lands in grade n' = n + wt a - p - 1, zero when n' < 0.
struct GradedImage {
  StateVector representative;
  std::optional<FracIndex> grade;  // empty for the zero class
};

inline GradedImage graded_action(const VoaContext& ctx, const StateVector& a, const FracIndex& p, const StateVector& v,
                                 const FracIndex& n, const FracIndex& m) {
  GradedImage out;
  for (const auto& [w, comp] : a.by_weight()) {
    const FracIndex target = n + (w - 1) - p;
    if (target.numerator() < 0) continue;
    if (out.grade && !(*out.grade == target)) throw DomainError("graded action needs homogeneous input");
    out.grade = target;
    out.representative += left_action(ctx, comp, v, m, n, target);
  }
  return out;
}

}  // namespace voa

namespace voa {

/// Coefficient of x^N in e^{x L_(-1)} Y(a, -x) b - (1+x)^{n - m - wt a - wt b} Y(a, -x/(1+x)) b.
inline StateVector congruence_coefficient(const VoaContext& ctx, const StateVector& a, const StateVector& b,
                                          const FracIndex& m, const FracIndex& n, int N) {
  StateVector out;
  for (const auto& [wa, ac] : a.by_weight()) {
    for (const auto& [wb, bc] : b.by_weight()) {
      // left: sum_k (-1)^{N-k}/k! L_(-1)^k a_{(k-N-1)} b
      Rational inv_fact = 1;
      for (int k = 0; k <= N + wa + wb; ++k) {
        StateVector term = ctx.l_power(-1, k, ctx.mode_product(ac, k - N - 1, bc));
        out.axpy(((N - k) % 2 == 0 ? inv_fact : Rational(-inv_fact)), term);
        inv_fact /= k + 1;
      }
      // right: sum_{j >= -N-1} (-1)^{j+1} binom(beta + j + 1, N + j + 1) a_{(j)} b
      const Rational beta = (n - m).value() - wa - wb;
      for (int j = -N - 1; j < wa + wb; ++j) {
        Rational c = gen_binomial(beta + j + 1, static_cast<unsigned>(N + j + 1));
        if ((j + 1) % 2 != 0) c = -c;
        out.axpy(-c, ctx.mode_product(ac, j, bc));
      }
    }
  }
  return out;
}

}  // namespace voa
