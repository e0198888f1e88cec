#include <catch2/catch_amalgamated.hpp>

#include "voa/core/context.hpp"
#include "voa/verify/kernel_checks.hpp"

using namespace voa;

namespace {

Rational q(long a, long b = 1) { return make_rational(a, b); }
StateVector basis(std::vector<int> parts) { return StateVector::basis(Monomial(std::move(parts))); }

// Partition numbers by Euler's pentagonal recurrence.
long partition_count(int n) {
  std::vector<long> p(n + 1);
  p[0] = 1;
  for (int k = 1; k <= n; ++k)
    for (int j = 1;; ++j) {
      const int g1 = j * (3 * j - 1) / 2, g2 = j * (3 * j + 1) / 2;
      if (g1 > k) break;
      const long s = (j % 2) ? 1 : -1;
      p[k] += s * p[k - g1];
      if (g2 <= k) p[k] += s * p[k - g2];
    }
  return p[n];
}

// Sugawara: L_n = 1/2 sum_j :alpha_j alpha_{n-j}: built from raw oscillators.
StateVector sugawara(const VertexAlgebra& alg, int n, const StateVector& v, int max_deg) {
  StateVector out;
  for (int j = -max_deg - std::abs(n) - 1; j <= max_deg + std::abs(n) + 1; ++j) {
    const int k = n - j;
    // normal order: annihilators (positive index) to the right
    StateVector t = j <= k ? alg.generator_mode(j, alg.generator_mode(k, v)) : alg.generator_mode(k, alg.generator_mode(j, v));
    out.axpy(q(1, 2), t);
  }
  return out;
}

}  // namespace

TEST_CASE("PBW basis sizes are partition numbers") {
  VertexAlgebra heis(Backend::Heisenberg, 1);
  VertexAlgebra vir(Backend::Virasoro, q(1, 2));
  for (int w = 0; w <= 10; ++w) {
    CHECK(static_cast<long>(heis.basis(w).size()) == partition_count(w));
    // parts >= 2 only: p(w) - p(w-1)
    CHECK(static_cast<long>(vir.basis(w).size()) == (w == 0 ? 1 : partition_count(w) - partition_count(w - 1)));
  }
  // odd-part partitions of 7/2 units: 1+1+...
  CHECK(partitions(7, 1, 2).size() == 5);
  CHECK(partitions(3, 2, 1).size() == 1);
}

TEST_CASE("monomial text and canonical order") {
  Monomial m({3, 1});
  CHECK(monomial_text(m, 'a') == "a[-3]a[-1]|1>");
  CHECK(monomial_text(Monomial(), 'a') == "|1>");
  CHECK(monomial_text(TwistedMonomial({3, 1})).find("a[-3/2]") != std::string::npos);
  CHECK(Monomial({1}) < Monomial({2}));
}

TEST_CASE("Heisenberg mode examples") {
  auto ctx = VoaContext::heisenberg();
  const Monomial a({1}), vac;
  CHECK(ctx.mode_product(a, 1, a) == StateVector::basis(vac));
  CHECK(ctx.mode_product(a, 0, a).is_zero());
  CHECK(ctx.mode_product(a, -1, a) == basis({1, 1}));
  CHECK(ctx.l_operator(-1, StateVector::basis(a)) == basis({2}));
  CHECK(ctx.l_operator(0, basis({2, 1})) == basis({2, 1}) * q(3));
  // vacuum is the identity field
  for (int n = -3; n <= 3; ++n)
    CHECK(ctx.mode_product(vac, n, Monomial({2, 1})) == (n == -1 ? basis({2, 1}) : StateVector()));
}

TEST_CASE("Heisenberg Virasoro modes agree with the Sugawara oracle") {
  auto ctx = VoaContext::heisenberg();
  for (int w = 0; w <= 5; ++w)
    for (const auto& m : ctx.algebra().basis(w))
      for (int n = -2; n <= 3; ++n) {
        StateVector v = StateVector::basis(m);
        CHECK(ctx.l_operator(n, v) == sugawara(ctx.algebra(), n, v, w));
      }
}

TEST_CASE("Virasoro commutation relations hold on the vacuum module") {
  const Rational c = q(1, 2);
  auto ctx = VoaContext::virasoro(c);
  CHECK(ctx.l_operator(2, basis({2})) == StateVector::basis(Monomial()) * q(1, 4));
  CHECK(ctx.mode_product(Monomial({2}), 3, Monomial({2})) == StateVector::basis(Monomial()) * q(1, 4));
  for (int w = 0; w <= 5; ++w)
    for (const auto& mono : ctx.algebra().basis(w)) {
      const StateVector v = StateVector::basis(mono);
      for (int m = -2; m <= 2; ++m)
        for (int n = -2; n <= 2; ++n) {
          StateVector lhs = ctx.l_operator(m, ctx.l_operator(n, v)) - ctx.l_operator(n, ctx.l_operator(m, v));
          StateVector rhs = ctx.l_operator(m + n, v) * Rational(m - n);
          if (m + n == 0) rhs += v * Rational(c * Rational(m * m * m - m) / 12);
          CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("kernel invariants for both backends", "[kernel]") {
  auto heis = VoaContext::heisenberg();
  auto vir = VoaContext::virasoro(q(1, 2));
  for (const VoaContext* ctx : {&heis, &vir}) {
    auto g = check_grading(*ctx, 4);
    CHECK(g.ok());
    auto s = check_skew_symmetry(*ctx, 3, 4);
    CHECK(s.ok());
    auto b = check_borcherds(*ctx, 3, -1, 2);
    CHECK(b.ok());
  }
}

TEST_CASE("theta is an involution and fixes the vacuum") {
  auto h = VoaContext::heisenberg();
  auto vir = VoaContext::virasoro(q(-22, 5));
  for (const VoaContext* c : {&h, &vir}) {
    for (const auto& m : c->algebra().basis_upto(5)) {
      StateVector v = StateVector::basis(m);
      CHECK(c->theta(c->theta(v)) == v);
    }
    CHECK(c->theta(StateVector::basis(Monomial())) == StateVector::basis(Monomial()));
  }
  // theta(alpha) = -alpha, theta(omega) = omega
  auto ctx = VoaContext::heisenberg();
  CHECK(ctx.theta(basis({1})) == -basis({1}));
  CHECK(ctx.theta(ctx.algebra().omega()) == ctx.algebra().omega());
}

TEST_CASE("y_circ on a primary of weight one") {
  auto ctx = VoaContext::heisenberg();
  const StateVector a = basis({1});
  for (const auto& m : ctx.algebra().basis_upto(3)) {
    StateVector v = StateVector::basis(m);
    CHECK(ctx.y_circ_mode(a, ctx.integer(0), v) == -ctx.mode_product(a, 0, v));
    CHECK(ctx.y_circ_mode(a, ctx.integer(1), v) == -ctx.mode_product(a, -1, v));
  }
  // fractional modes have no untwisted component
  auto ctx2 = VoaContext::heisenberg(2);
  CHECK(ctx2.y_circ_mode(a, ctx2.index(1), basis({1})).is_zero());
}

TEST_CASE("eigen grading under negation") {
  auto ctx = VoaContext::heisenberg(2, Automorphism::Negation);
  CHECK(ctx.eigen_index(Monomial({1})) == 1);
  CHECK(ctx.eigen_index(Monomial({1, 1})) == 0);
  CHECK(ctx.bidegree(Monomial({2})) == Bidegree{1, 1});
  CHECK_THROWS_AS(VoaContext(Backend::Heisenberg, 1, 3, Automorphism::Negation), DomainError);
  CHECK_THROWS_AS(VoaContext(Backend::Virasoro, 1, 2, Automorphism::Negation), DomainError);
}

TEST_CASE("memoization does not change results") {
  auto ctx = VoaContext::virasoro(q(1, 2));
  StateVector with = ctx.mode_product(basis({3, 2}), 1, basis({2, 2}));
  ctx.clear_caches();
  ctx.set_memo_enabled(false);
  CHECK(ctx.mode_product(basis({3, 2}), 1, basis({2, 2})) == with);
}
