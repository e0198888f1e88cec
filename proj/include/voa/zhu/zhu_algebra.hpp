#pragma once

#include "voa/core/context.hpp"
#include "voa/core/residue.hpp"

namespace voa {

/// delta_i(r) = 1 if i >= r. For r = T this is 0 since i < T.
inline int delta(int i, int r) { return i >= r ? 1 : 0; }

/// lambda(x, r) = -1 + floor(x) + delta_{x~}(r) + r/T.
inline Rational lambda(const FracIndex& x, int r) {
  if (r < 0 || r >= x.order()) throw DomainError("eigen index " + std::to_string(r) + " outside [0, T)");
  return Rational(-1 + x.floor() + delta(x.tilde(), r)) + make_rational(r, x.order());
}

inline int circle_zhu_depth(const FracIndex& n, int r) {
  const int T = n.order();
  return static_cast<int>(2 * n.floor()) + delta(n.tilde(), r) + delta(n.tilde(), T - r) + 1;
}

/// a o_{g,n} b for the session automorphism g = g1.
inline StateVector circle_zhu(const VoaContext& ctx, const StateVector& a, const StateVector& b, const FracIndex& n) {
  StateVector out;
  for (const auto& [key, comp] : ctx.homogeneous_parts(a)) {
    const auto [w, r] = key;
    out += residue(ctx, comp, w, Rational(w) + lambda(n, r), Rational(circle_zhu_depth(n, r)), b);
  }
  return out;
}

/// a *_{g,n} b; components of a with nonzero eigen index contribute 0.
inline StateVector star_zhu(const VoaContext& ctx, const StateVector& a, const StateVector& b, const FracIndex& n) {
  StateVector out;
  const long fn = n.floor();
  for (const auto& [key, comp] : ctx.homogeneous_parts(a)) {
    const auto [w, r] = key;
    if (r != 0) continue;
    for (long i = 0; i <= fn; ++i) {
      Rational c = gen_binomial(Rational(fn + i), static_cast<unsigned>(i));
      if (i % 2) c = -c;
      out.axpy(c, residue(ctx, comp, w, Rational(w + fn), Rational(fn + i + 1), b));
    }
  }
  return out;
}

inline StateVector l_shift_zhu(const VoaContext& ctx, const StateVector& a) { return l_shift(ctx, a); }

}  // namespace voa
