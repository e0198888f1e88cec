#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>

#include "voa/core/linear_combination.hpp"
#include "voa/core/mode_engine.hpp"
#include "voa/core/vertex_algebra.hpp"
#include "voa/exact/cyclotomic.hpp"
#include "voa/exact/frac_index.hpp"
#include "voa/twisted/twisted_fock_module.hpp"

namespace voa {

enum class Automorphism { Identity, Negation };

inline std::string automorphism_name(Automorphism g) { return g == Automorphism::Identity ? "id" : "neg"; }

struct Bidegree {
  int j1 = 0;
  int j2 = 0;
  auto operator<=>(const Bidegree&) const = default;
};

/// Session state: backend, the order T, g1 (g2 = g1^{-1}) and the mode caches.
class VoaContext {
 public:
  using AdjointEngine = ModeEngine<VertexAlgebra, AdjointModule>;
  using TwistedEngine = ModeEngine<VertexAlgebra, TwistedFockModule>;

  VoaContext(Backend backend, Rational central_charge, int T, Automorphism g1)
      : algebra_(backend, std::move(central_charge)), order_(T), g1_(g1) {
    if (T <= 0) throw DomainError("T must be positive");
    if (g1 == Automorphism::Negation) {
      if (backend != Backend::Heisenberg) throw DomainError("negation is only defined on the Heisenberg backend");
      if (T % 2 != 0) throw DomainError("negation needs an even T");
    }
    adjoint_ = std::make_unique<AdjointEngine>(algebra_, AdjointModule{&algebra_});
    if (backend == Backend::Heisenberg) twisted_ = std::make_unique<TwistedEngine>(algebra_, TwistedFockModule{});
  }

  static VoaContext heisenberg(int T = 1, Automorphism g1 = Automorphism::Identity) {
    return VoaContext(Backend::Heisenberg, Rational(1), T, g1);
  }
  static VoaContext virasoro(Rational c, int T = 1) {
    return VoaContext(Backend::Virasoro, std::move(c), T, Automorphism::Identity);
  }

  VoaContext(const VoaContext&) = delete;
  VoaContext& operator=(const VoaContext&) = delete;
  VoaContext(VoaContext&& o) noexcept
      : algebra_(o.algebra_.backend(), o.algebra_.central_charge()), order_(o.order_), g1_(o.g1_) {
    adjoint_ = std::make_unique<AdjointEngine>(algebra_, AdjointModule{&algebra_});
    if (algebra_.backend() == Backend::Heisenberg)
      twisted_ = std::make_unique<TwistedEngine>(algebra_, TwistedFockModule{});
  }

  const VertexAlgebra& algebra() const { return algebra_; }
  Backend backend() const { return algebra_.backend(); }
  int order() const { return order_; }
  Automorphism g1() const { return g1_; }
  Automorphism g2() const { return g1_; }  // both supported automorphisms are involutions

  FracIndex index(long num) const { return FracIndex(num, order_); }
  FracIndex integer(long k) const { return FracIndex::integer(k, order_); }
  FracIndex parse_index(const std::string& s) const { return FracIndex::parse(s, order_); }

  void set_memo_enabled(bool on) {
    adjoint_->set_memo_enabled(on);
    if (twisted_) twisted_->set_memo_enabled(on);
  }
  void clear_caches() {
    adjoint_->clear_cache();
    if (twisted_) twisted_->clear_cache();
  }

  const AdjointEngine& adjoint() const { return *adjoint_; }
  const TwistedEngine& twisted() const {
    if (!twisted_) throw DomainError("the twisted Fock module needs the Heisenberg backend");
    return *twisted_;
  }

  std::string text(const StateVector& v) const { return algebra_.text(v); }
  std::string text(const Monomial& m) const { return algebra_.text(m); }

  // ---- generators, modes, L-operators

  StateVector generator_mode_apply(int index, const StateVector& v) const {
    return algebra_.generator_mode(index, v);
  }

  StateVector mode_product(const Monomial& a, long n, const Monomial& b) const {
    return adjoint_->apply(a, static_cast<int>(n), b);
  }
  StateVector mode_product(const StateVector& a, long n, const StateVector& b) const {
    return adjoint_->apply(a, static_cast<int>(n), b);
  }

  /// L_{(k)} a = omega_{(k+1)} a.
  StateVector l_operator(int k, const StateVector& a) const {
    if (backend() == Backend::Virasoro) return algebra_.generator_mode(k, a);
    return mode_product(algebra_.omega(), k + 1, a);
  }

  StateVector l_power(int k, int power, StateVector a) const {
    for (int i = 0; i < power && !a.is_zero(); ++i) a = l_operator(k, a);
    return a;
  }

  /// e^{L_(1)} (-1)^{L_(0)} a.
  StateVector theta(const StateVector& a) const {
    StateVector out;
    for (const auto& [w, comp] : a.by_weight()) {
      StateVector term = comp;
      if (w % 2 != 0) term = -term;
      Rational inv_fact = 1;
      for (int i = 0; !term.is_zero(); ++i) {
        out.axpy(inv_fact, term);
        term = l_operator(1, term);
        inv_fact /= i + 1;
      }
    }
    return out;
  }

  // ---- automorphisms

  /// g1-eigen index r in [0, T) of a basis monomial.
  int eigen_index(const Monomial& a) const {
    if (g1_ == Automorphism::Identity) return 0;
    return a.length() % 2 == 0 ? 0 : order_ / 2;
  }

  Bidegree bidegree(const Monomial& a) const {
    const int j1 = eigen_index(a);
    return {j1, (order_ - j1) % order_};
  }

  std::map<Bidegree, StateVector> bidegree_decompose(const StateVector& a) const {
    std::map<Bidegree, StateVector> out;
    for (const auto& [k, c] : a.terms()) out[bidegree(k)].add(k, c);
    return out;
  }

  /// Components of a by (weight, g1-eigen index).
  std::map<std::pair<int, int>, StateVector> homogeneous_parts(const StateVector& a) const {
    std::map<std::pair<int, int>, StateVector> out;
    for (const auto& [k, c] : a.terms()) out[{k.weight, eigen_index(k)}].add(k, c);
    return out;
  }

  // ---- contragredient-type field

  /// Res_x x^m Y(e^{x L_(1)} (-x^{-2})^{L_(0)} a, x^{-1}) v on V.
  StateVector y_circ_mode(const StateVector& a, const FracIndex& m, const StateVector& v) const {
    if (!m.is_integer()) return {};
    const long mi = m.floor();
    StateVector out;
    for (const auto& [w, comp] : a.by_weight()) {
      StateVector term = comp;
      Rational coef = (w % 2 == 0) ? Rational(1) : Rational(-1);
      for (int i = 0; !term.is_zero(); ++i) {
        out.axpy(coef, mode_product(term, 2L * w - i - mi - 2, v));
        term = l_operator(1, term);
        coef /= i + 1;
      }
    }
    return out;
  }

 private:
  VertexAlgebra algebra_;
  int order_;
  Automorphism g1_;
  std::unique_ptr<AdjointEngine> adjoint_;
  std::unique_ptr<TwistedEngine> twisted_;
};

}  // namespace voa
