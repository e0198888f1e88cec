#pragma once

#include <map>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include "voa/core/linear_combination.hpp"
#include "voa/core/mode_engine.hpp"
#include "voa/core/monomial.hpp"

namespace voa {

enum class Backend { Heisenberg, Virasoro };

/// Rank-one Heisenberg VOA or the universal Virasoro VOA at central charge c.
/// The strong generator u is alpha (weight 1) or omega (weight 2).
class VertexAlgebra {
 public:
  explicit VertexAlgebra(Backend backend, Rational central_charge = Rational(1))
      : backend_(backend), c_(std::move(central_charge)) {
    if (backend_ == Backend::Heisenberg) c_ = 1;
  }

  Backend backend() const { return backend_; }
  const Rational& central_charge() const { return c_; }
  int min_part() const { return backend_ == Backend::Heisenberg ? 1 : 2; }
  int generator_weight() const { return min_part(); }
  char letter() const { return backend_ == Backend::Heisenberg ? 'a' : 'L'; }

  std::string text(const Monomial& m) const { return monomial_text(m, letter()); }
  std::string text(const StateVector& v) const {
    return v.to_string([this](const Monomial& m) { return text(m); });
  }

  std::vector<Monomial> basis(int weight) const {
    std::vector<Monomial> out;
    if (weight < 0) return out;
    for (auto& p : partitions(weight, min_part())) out.emplace_back(std::move(p));
    return out;
  }

  /// Canonical order: weight ascending.
  std::vector<Monomial> basis_upto(int max_weight) const {
    std::vector<Monomial> out;
    for (int w = 0; w <= max_weight; ++w)
      for (auto& m : basis(w)) out.push_back(std::move(m));
    return out;
  }

  /// Heisenberg alpha_j or Virasoro L_j on a basis monomial.
  StateVector generator_mode(int j, const Monomial& v) const {
    return backend_ == Backend::Heisenberg ? heisenberg(j, v) : virasoro(j, v);
  }

  StateVector generator_mode(int j, const StateVector& v) const {
    StateVector out;
    for (const auto& [k, c] : v.terms()) out.axpy(c, generator_mode(j, k));
    return out;
  }

  /// u_{(j)}: alpha_{(j)} = alpha_j, omega_{(j)} = L_{j-1}.
  StateVector apply_generator(int j, const Monomial& v) const {
    return backend_ == Backend::Heisenberg ? heisenberg(j, v) : virasoro(j - 1, v);
  }

  /// a = u_{(m)} a' for the leading part.
  std::pair<int, Monomial> split(const Monomial& a) const {
    const int k = a.first();
    return {backend_ == Backend::Heisenberg ? -k : 1 - k, a.rest()};
  }

  StateVector omega() const {
    if (backend_ == Backend::Heisenberg) return StateVector(Monomial({1, 1}), make_rational(1, 2));
    return StateVector::basis(Monomial({2}));
  }

 private:
  static StateVector heisenberg(int j, const Monomial& v) {
    if (j < 0) return StateVector::basis(v.inserted(-j));
    if (j == 0) return {};
    const int mult = v.multiplicity(j);
    if (mult == 0) return {};
    return StateVector(v.removed(j), Rational(j * mult));
  }

  StateVector virasoro(int m, const Monomial& v) const {
    if (v.is_vacuum()) return m <= -2 ? StateVector::basis(Monomial({-m})) : StateVector();
    if (-m >= v.first()) return StateVector::basis(v.inserted(-m));
    if (m == 0) return StateVector(v, Rational(v.weight));
    const std::pair<int, Monomial> key{m, v};
    {
      std::shared_lock lock(vir_mu_);
      if (auto it = vir_memo_.find(key); it != vir_memo_.end()) return it->second;
    }
    const int n1 = v.first();
    const Monomial rest = v.rest();
    StateVector out;
    const StateVector inner = virasoro(m, rest);
    for (const auto& [k, c] : inner.terms()) out.axpy(c, virasoro(-n1, k));
    out.axpy(Rational(m + n1), virasoro(m - n1, rest));
    if (m == n1) out.axpy(c_ * Rational(static_cast<long>(m) * m * m - m) / 12, StateVector::basis(rest));
    std::unique_lock lock(vir_mu_);
    vir_memo_.try_emplace(key, out);
    return out;
  }

  Backend backend_;
  Rational c_;
  mutable std::shared_mutex vir_mu_;
  mutable std::map<std::pair<int, Monomial>, StateVector> vir_memo_;
};

/// V as a module over itself.
struct AdjointModule {
  using Key = Monomial;
  static constexpr int denominator = 1;
  const VertexAlgebra* algebra;

  int degree(const Key& w) const { return w.weight; }
  int generator_offset() const { return 0; }
  StateVector apply_generator(int s, const Key& w) const { return algebra->apply_generator(s, w); }
  bool in_sector(const Monomial&, int) const { return true; }
};

}  // namespace voa
