#pragma once

#include <string>
#include <vector>

#include "voa/core/context.hpp"

namespace voa {

struct InvariantTally {
  std::size_t checked = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
  void record(bool pass, const std::string& what) {
    ++checked;
    if (!pass && failures.size() < 20) failures.push_back(what);
  }
};

/// a_{(n)} b is homogeneous of weight wt a + wt b - n - 1.
inline InvariantTally check_grading(const VoaContext& ctx, int max_weight) {
  InvariantTally t;
  const auto basis = ctx.algebra().basis_upto(max_weight);
  for (const auto& a : basis)
    for (const auto& b : basis)
      for (int n = -2; n <= a.weight + b.weight; ++n) {
        StateVector r = ctx.mode_product(a, n, b);
        const int expect = a.weight + b.weight - n - 1;
        bool ok = true;
        for (const auto& [k, c] : r.terms()) ok = ok && k.weight == expect;
        if (expect < 0) ok = ok && r.is_zero();
        t.record(ok, ctx.text(a) + " (" + std::to_string(n) + ") " + ctx.text(b));
      }
  return t;
}

/// a_{(n)} b = sum_i (-1)^{n+1+i}/i! L_(-1)^i b_{(n+i)} a.
inline InvariantTally check_skew_symmetry(const VoaContext& ctx, int max_weight, int max_abs_n) {
  InvariantTally t;
  const auto basis = ctx.algebra().basis_upto(max_weight);
  for (const auto& a : basis)
    for (const auto& b : basis)
      for (int n = -max_abs_n; n <= max_abs_n; ++n) {
        StateVector lhs = ctx.mode_product(a, n, b);
        StateVector rhs;
        Rational inv_fact = 1;
        for (int i = 0; n + i < a.weight + b.weight; ++i) {
          StateVector term = ctx.l_power(-1, i, ctx.mode_product(b, n + i, a));
          rhs.axpy((n + 1 + i) % 2 == 0 ? inv_fact : Rational(-inv_fact), term);
          inv_fact /= i + 1;
        }
        t.record(lhs == rhs, ctx.text(a) + " (" + std::to_string(n) + ") " + ctx.text(b));
      }
  return t;
}

/// [a_{(m)}, b_{(n)}] w = sum_i binom(m, i) (a_{(i)} b)_{(m+n-i)} w for wt a + wt b <= max_weight.
inline InvariantTally check_borcherds(const VoaContext& ctx, int max_weight, int mode_lo, int mode_hi) {
  InvariantTally t;
  const auto basis = ctx.algebra().basis_upto(max_weight);
  for (const auto& a : basis)
    for (const auto& b : basis) {
      if (a.weight + b.weight > max_weight) continue;
      for (const auto& w : basis)
        for (int m = mode_lo; m <= mode_hi; ++m)
          for (int n = mode_lo; n <= mode_hi; ++n) {
            StateVector wv = StateVector::basis(w);
            StateVector av = StateVector::basis(a), bv = StateVector::basis(b);
            StateVector lhs = ctx.mode_product(av, m, ctx.mode_product(bv, n, wv)) -
                              ctx.mode_product(bv, n, ctx.mode_product(av, m, wv));
            StateVector rhs;
            BinomialSeries binom{Rational(m)};
            for (int i = 0; i < a.weight + b.weight; ++i, binom.advance())
              rhs.axpy(binom.value(), ctx.mode_product(ctx.mode_product(av, i, bv), m + n - i, wv));
            t.record(lhs == rhs, ctx.text(a) + "," + ctx.text(b) + " on " + ctx.text(w) + " m=" + std::to_string(m) +
                                     " n=" + std::to_string(n));
          }
    }
  return t;
}

}  // namespace voa
