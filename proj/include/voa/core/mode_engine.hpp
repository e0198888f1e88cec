#pragma once

#include <mutex>
#include <shared_mutex>
#include <unordered_map>
#include <utility>

#include "voa/core/linear_combination.hpp"
#include "voa/core/monomial.hpp"
#include "voa/exact/rational.hpp"

namespace voa {

using StateVector = LinComb<Monomial>;

/// Computes a_{(t)}w for a PBW monomial a of V and a basis vector w of a (possibly
/// twisted) module, by peeling the leading generator a = u_{(m)}a' and expanding the
/// iterate formula. Modes are integers in units of 1/Module::denominator.
///
/// Module requirements:
///   Key, static constexpr int denominator
///   int degree(const Key&)               in units of 1/denominator
///   int generator_offset()               p for u, in units of 1/denominator
///   LinComb<Key> apply_generator(int s, const Key&)      u_{(s)} w
///   bool in_sector(const Monomial& a, int t)
/// Algebra requirements:
///   std::pair<int, Monomial> split(const Monomial&)      a = u_{(m)} a'
///   int generator_weight()
///   StateVector apply_generator(int j, const Monomial&)  u_{(j)} on V
template <class Algebra, class Module>
class ModeEngine {
 public:
  using Key = typename Module::Key;
  using Vector = LinComb<Key>;
  static constexpr int D = Module::denominator;

  ModeEngine(const Algebra& algebra, Module module) : alg_(algebra), mod_(std::move(module)) {}

  const Module& module() const { return mod_; }
  void set_memo_enabled(bool on) { memo_enabled_ = on; }
  void clear_cache() {
    std::unique_lock lock(mu_);
    memo_.clear();
  }
  std::size_t cache_size() const {
    std::shared_lock lock(mu_);
    return memo_.size();
  }

  Vector apply(const Monomial& a, int t, const Key& w) const {
    if (a.is_vacuum()) return t == -D ? Vector::basis(w) : Vector();
    const int wt_a = a.weight;
    if (mod_.degree(w) + D * wt_a - t - D < 0) return Vector();
    if (!mod_.in_sector(a, t)) return Vector();

    MemoKey key{a, t, w};
    if (memo_enabled_) {
      std::shared_lock lock(mu_);
      if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    }
    Vector out = expand(a, t, w);
    if (memo_enabled_) {
      std::unique_lock lock(mu_);
      memo_.try_emplace(std::move(key), out);
    }
    return out;
  }

  Vector apply(const StateVector& a, int t, const Vector& w) const {
    Vector out;
    for (const auto& [am, ac] : a.terms())
      for (const auto& [wm, wc] : w.terms()) out.axpy(ac * wc, apply(am, t, wm));
    return out;
  }

 private:
  struct MemoKey {
    Monomial a;
    int t;
    Key w;
    bool operator==(const MemoKey& o) const { return t == o.t && a == o.a && w == o.w; }
  };
  struct MemoHash {
    std::size_t operator()(const MemoKey& k) const {
      MonomialHash h;
      return h(k.a) * 31 + h(k.w) * 1000003 + static_cast<std::size_t>(k.t + 4096);
    }
  };

  static long floor_div(long a, long b) {
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
  }

  Vector expand(const Monomial& a, int t, const Key& w) const {
    const auto [m, rest] = alg_.split(a);
    const int wt_u = alg_.generator_weight();
    const int wt_rest = rest.weight;
    const int p = mod_.generator_offset();
    const int dw = mod_.degree(w);
    const Rational sign_m = (m % 2 == 0) ? Rational(1) : Rational(-1);

    Vector out;
    const long max_a = floor_div(dw + D * wt_rest - t + p - D, D);
    const long max_b = floor_div(dw + D * wt_u - p - D, D);
    const long max_i = std::max(max_a, max_b);
    BinomialSeries binom{Rational(m)};
    for (long i = 0; i <= max_i; ++i, binom.advance()) {
      if (sgn(binom.value()) == 0) break;
      const Rational s = (i % 2 == 0) ? binom.value() : Rational(-binom.value());
      if (i <= max_a) {
        // u_{(p+m-i)} (a'_{(t-p+i)} w)
        Vector inner = apply(rest, t - p + D * static_cast<int>(i), w);
        const int s_mode = p + D * (m - static_cast<int>(i));
        for (const auto& [k, c] : inner.terms()) out.axpy(s * c, mod_.apply_generator(s_mode, k));
      }
      if (i <= max_b) {
        // -(-1)^m a'_{(m+t-p-i)} (u_{(p+i)} w)
        Vector inner = mod_.apply_generator(p + D * static_cast<int>(i), w);
        const int r_mode = D * m + t - p - D * static_cast<int>(i);
        const Rational f = -s * sign_m;
        for (const auto& [k, c] : inner.terms()) out.axpy(f * c, apply(rest, r_mode, k));
      }
    }
    if (p != 0) {
      // - sum_{i>=1} binom(p, i) (u_{(m+i)} a')_{(t-i)} w
      BinomialSeries bp{make_rational(p, D)};
      bp.advance();
      for (int i = 1; i <= wt_rest + wt_u - m - 1; ++i, bp.advance()) {
        StateVector head = alg_.apply_generator(m + i, rest);
        for (const auto& [mono, c] : head.terms()) out.axpy(-bp.value() * c, apply(mono, t - D * i, w));
      }
    }
    return out;
  }

  const Algebra& alg_;
  Module mod_;
  bool memo_enabled_ = true;
  mutable std::shared_mutex mu_;
  mutable std::unordered_map<MemoKey, Vector, MemoHash> memo_;
};

}  // namespace voa
