#include <catch2/catch_amalgamated.hpp>

#include "voa/twisted/twisted_fock.hpp"

using namespace voa;

namespace {

Rational q(long a, long b = 1) { return make_rational(a, b); }
StateVector basis(std::vector<int> parts) { return StateVector::basis(Monomial(std::move(parts))); }
TwistedVector tw(std::vector<int> parts2) { return TwistedVector::basis(TwistedMonomial(std::move(parts2))); }

// alpha_{s2/2} on raw oscillators
TwistedVector osc(int s2, const TwistedVector& v) { return twisted_generator_mode(FracIndex(s2, 2), v); }

// L_n = 1/2 sum_r :alpha_r alpha_{n-r}: + delta_{n,0}/16, half-integer r
TwistedVector normal_ordered_l(int n, const TwistedVector& v, int max_deg2) {
  TwistedVector out;
  const int bound = 2 * (max_deg2 + 2 * std::abs(n)) + 3;  // odd
  for (int r2 = -bound; r2 <= bound; r2 += 2) {
    const int s2 = 2 * n - r2;
    TwistedVector t = r2 <= s2 ? osc(r2, osc(s2, v)) : osc(s2, osc(r2, v));
    out.axpy(q(1, 2), t);
  }
  if (n == 0) out.axpy(q(1, 16), v);
  return out;
}

int max_deg2(const TwistedVector& v) {
  int d = 0;
  for (const auto& [k, c] : v.terms()) d = std::max(d, k.weight);
  return d;
}

}  // namespace

TEST_CASE("twisted oscillators satisfy the Heisenberg commutator") {
  TwistedFockModule mod;
  for (int d2 = 0; d2 <= 6; ++d2)
    for (const auto& w : mod.basis(d2)) {
      const TwistedVector v = TwistedVector::basis(w);
      for (int r2 = -5; r2 <= 5; r2 += 2)
        for (int s2 = -5; s2 <= 5; s2 += 2) {
          TwistedVector lhs = osc(r2, osc(s2, v)) - osc(s2, osc(r2, v));
          TwistedVector rhs = (r2 + s2 == 0) ? v * q(r2, 2) : TwistedVector();
          CHECK(lhs == rhs);
        }
    }
  CHECK_THROWS_AS(twisted_generator_mode(FracIndex(2, 2), tw({})), DomainError);
}

TEST_CASE("twisted field of the generator reproduces the oscillators") {
  auto ctx = VoaContext::heisenberg(2, Automorphism::Negation);
  const StateVector a = basis({1});
  for (int r2 = -5; r2 <= 5; r2 += 2)
    for (const auto& v : {tw({}), tw({1}), tw({3, 1}), tw({1, 1, 1})})
      CHECK(twisted_mode_product(ctx, a, FracIndex(r2, 2), v) == osc(r2, v));
}

TEST_CASE("sector constraint: odd states only carry half-integer modes") {
  auto ctx = VoaContext::heisenberg(2, Automorphism::Negation);
  for (const auto& v : {tw({}), tw({1}), tw({3})}) {
    for (long k = -3; k <= 3; ++k) {
      CHECK(twisted_mode_product(ctx, basis({1}), FracIndex::integer(k, 2), v).is_zero());
      CHECK(twisted_mode_product(ctx, basis({2, 1}), FracIndex(2 * k + 1, 2), v).is_zero());
    }
  }
}

TEST_CASE("Virasoro modes of omega match normal ordering with the 1/16 anomaly") {
  auto ctx = VoaContext::heisenberg(2, Automorphism::Negation);
  const StateVector omega = ctx.algebra().omega();
  CHECK(zero_mode(ctx, omega, tw({})) == tw({}) * q(1, 16));
  TwistedFockModule mod;
  for (int d2 = 0; d2 <= 6; ++d2)
    for (const auto& w : mod.basis(d2)) {
      const TwistedVector v = TwistedVector::basis(w);
      for (int n = -2; n <= 2; ++n)
        CHECK(module_mode(ctx.twisted(), omega, Rational(n + 1), v) == normal_ordered_l(n, v, max_deg2(v)));
    }
}

TEST_CASE("twisted commutator formula") {
  auto ctx = VoaContext::heisenberg(2, Automorphism::Negation);
  const auto& eng = ctx.twisted();
  const auto states = ctx.algebra().basis_upto(3);
  for (const auto& am : states)
    for (const auto& bm : states) {
      const StateVector a = StateVector::basis(am), b = StateVector::basis(bm);
      const Rational ha = am.length() % 2 ? q(1, 2) : q(0), hb = bm.length() % 2 ? q(1, 2) : q(0);
      for (int mi = -1; mi <= 2; ++mi)
        for (int ni = -1; ni <= 1; ++ni) {
          const Rational m = ha + mi, n = hb + ni;
          for (const auto& v : {tw({}), tw({1}), tw({3})}) {
            TwistedVector lhs = module_mode(eng, a, m, module_mode(eng, b, n, v)) - module_mode(eng, b, n, module_mode(eng, a, m, v));
            TwistedVector rhs;
            for (unsigned i = 0; i <= static_cast<unsigned>(am.weight + bm.weight); ++i) {
              StateVector ab = ctx.mode_product(a, static_cast<long>(i), b);
              rhs.axpy(gen_binomial(m, i), module_mode(eng, ab, m + n - i, v));
            }
            CHECK(lhs == rhs);
          }
        }
    }
}

TEST_CASE("deformed modes agree with the upper-negated series") {
  auto ctx = VoaContext::heisenberg(2, Automorphism::Negation);
  const auto& eng = ctx.twisted();
  for (const auto& am : ctx.algebra().basis_upto(3)) {
    const StateVector a = StateVector::basis(am);
    const int w = am.weight;
    const Rational shift = am.length() % 2 ? q(1, 2) : q(0);
    for (const Rational& z0 : {q(0), q(1), q(-2, 3)})
      for (int mi = -2; mi <= 2; ++mi) {
        const Rational m = shift + mi;
        for (const auto& v : {tw({}), tw({1}), tw({3, 1})}) {
          TwistedVector oracle;
          StateVector term = a;
          Rational outer = 1;
          for (int i = 0; !term.is_zero(); ++i) {
            for (unsigned l = 0; l <= 12; ++l) {
              Rational zl = 1;
              for (unsigned k = 0; k < l; ++k) zl *= z0;
              Rational c = outer * gen_binomial(Rational(i - 2 * w + 1) + m + l, l) * zl;
              oracle.axpy(c, module_mode(eng, term, m + l, v));
            }
            term = ctx.l_operator(1, term);
            outer *= -z0;
            outer /= i + 1;
          }
          CHECK(deformed_mode_on(ctx, eng, a, m, z0, v) == oracle);
        }
      }
  }
}

TEST_CASE("deformed mode at z0 = 0 is the plain mode") {
  auto ctx = VoaContext::heisenberg(2, Automorphism::Negation);
  for (const auto& am : ctx.algebra().basis_upto(3))
    for (const auto& v : {tw({}), tw({1}), tw({1, 1})}) {
      const StateVector a = StateVector::basis(am);
      CHECK(bullet_action(ctx, a, q(0), v) == zero_mode(ctx, a, v));
    }
}

TEST_CASE("Omega spaces of the twisted Fock module") {
  auto ctx = VoaContext::heisenberg(2, Automorphism::Negation);
  auto o0 = omega_n_twisted(ctx, ctx.index(0), q(3), 3);
  CHECK(o0.stable);
  CHECK(o0.dimension() == 1);
  REQUIRE(o0.by_degree.count(0));
  CHECK(o0.by_degree.at(0).size() == 1);
  auto o1 = omega_n_twisted(ctx, ctx.index(1), q(3), 3);
  CHECK(o1.dimension() == 2);  // degrees 0 and 1/2
  // every vector is killed by the probing modes
  for (const auto& v : o1.all())
    for (const auto& am : ctx.algebra().basis_upto(3))
      for (long knum = 2; knum <= 6; ++knum)
        CHECK(module_mode(ctx.twisted(), StateVector::basis(am), Rational(am.weight - 1) + q(knum, 2), v).is_zero());
  CHECK_THROWS_AS(VoaContext::virasoro(q(1, 2)).twisted(), DomainError);
}

TEST_CASE("Omega_0 of V is spanned by the vacuum") {
  auto ctx = VoaContext::heisenberg();
  auto om = omega_n_adjoint(ctx, ctx.index(0), 4, 3);
  CHECK(om.stable);
  CHECK(om.dimension() == 1);
}
