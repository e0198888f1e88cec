#pragma once

#include "voa/core/context.hpp"

namespace voa {

/// Res_x (1+x)^alpha x^{-D} Y(a, x) v = sum_i binom(alpha, i) a_{(i-D)} v for a of
/// weight wt_a. Zero when D is not an integer (V has integral modes). The sum stops
/// where the grading kills a_{(i-D)} v.
inline StateVector residue(const VoaContext& ctx, const StateVector& a, int wt_a, const Rational& alpha,
                           const Rational& D, const StateVector& v) {
  StateVector out;
  if (a.is_zero() || v.is_zero() || D.get_den() != 1) return out;
  const long d = D.get_num().get_si();
  const long imax = static_cast<long>(wt_a) + v.max_weight() - 1 + d;
  BinomialSeries binom(alpha);
  for (long i = 0; i <= imax; ++i, binom.advance()) {
    if (sgn(binom.value()) == 0) break;  // stays zero once it hits zero
    out.axpy(binom.value(), ctx.mode_product(a, i - d, v));
  }
  return out;
}

/// (L_(-1) + L_(0) + shift) v.
inline StateVector l_shift(const VoaContext& ctx, const StateVector& v, const Rational& shift = 0) {
  StateVector out = ctx.l_operator(-1, v);
  out += ctx.l_operator(0, v);
  out.axpy(shift, v);
  return out;
}

}  // namespace voa
