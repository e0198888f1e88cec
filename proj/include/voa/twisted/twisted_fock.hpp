#pragma once

#include <map>
#include <vector>

#include "voa/core/context.hpp"
#include "voa/exact/linear_algebra.hpp"
#include "voa/twisted/twisted_fock_module.hpp"

namespace voa {

/// a_{(mode)} v on a module handled by engine; modes outside (1/D)Z give 0.
template <class Engine>
LinComb<typename Engine::Key> module_mode(const Engine& engine, const StateVector& a, const Rational& mode,
                                          const LinComb<typename Engine::Key>& v) {
  Rational scaled = mode * Engine::D;
  if (scaled.get_den() != 1) return {};
  return engine.apply(a, static_cast<int>(scaled.get_num().get_si()), v);
}

inline TwistedVector twisted_generator_mode(const FracIndex& r, const TwistedVector& v) {
  Rational twice = r.value() * 2;
  if (twice.get_den() != 1 || twice.get_num() % 2 == 0)
    throw DomainError("twisted modes live in Z+1/2, got " + r.to_string());
  TwistedFockModule mod;
  const int s2 = static_cast<int>(twice.get_num().get_si());
  TwistedVector out;
  for (const auto& [k, c] : v.terms()) out.axpy(c, mod.apply_generator(s2, k));
  return out;
}

inline TwistedVector twisted_mode_product(const VoaContext& ctx, const StateVector& a, const FracIndex& p,
                                          const TwistedVector& v) {
  return module_mode(ctx.twisted(), a, p.value(), v);
}

/// o(a) = a_{(wt a - 1)} extended over homogeneous components.
template <class Engine>
LinComb<typename Engine::Key> zero_mode_on(const Engine& engine, const StateVector& a,
                                           const LinComb<typename Engine::Key>& v) {
  LinComb<typename Engine::Key> out;
  for (const auto& [w, comp] : a.by_weight()) out += module_mode(engine, comp, Rational(w - 1), v);
  return out;
}

inline TwistedVector zero_mode(const VoaContext& ctx, const StateVector& a, const TwistedVector& v) {
  return zero_mode_on(ctx.twisted(), a, v);
}

/// Res_x x^m (1 - z0 x)^{2 wt a - m - 2} Y(exp(-z0 (1 - z0 x)^{-1} L_(1)) a, x) v.
template <class Engine>
LinComb<typename Engine::Key> deformed_mode_on(const VoaContext& ctx, const Engine& engine, const StateVector& a,
                                               const Rational& m, const Rational& z0,
                                               const LinComb<typename Engine::Key>& v) {
  using Vec = LinComb<typename Engine::Key>;
  Vec out;
  int max_deg = -1;
  for (const auto& [k, c] : v.terms()) max_deg = std::max(max_deg, engine.module().degree(k));
  if (max_deg < 0) return out;
  for (const auto& [w, comp] : a.by_weight()) {
    StateVector term = comp;
    Rational outer = 1;  // (-z0)^i / i!
    for (int i = 0; !term.is_zero(); ++i) {
      const int wt_term = w - i;
      // (L1^i a)_{(m+l)} v vanishes once m + l > wt_term + deg v - 1.
      Rational top = Rational(wt_term - 1) + make_rational(max_deg, Engine::D) - m;
      const long lmax = floor_rational(top);
      BinomialSeries binom(Rational(2 * w) - m - 2 - i);
      Rational zpow = 1;
      for (long l = 0; l <= lmax; ++l) {
        out.axpy(outer * binom.value() * zpow, module_mode(engine, term, m + l, v));
        binom.advance();
        zpow *= -z0;
      }
      term = ctx.l_operator(1, term);
      outer *= -z0;
      outer /= i + 1;
    }
  }
  return out;
}

template <class Engine>
LinComb<typename Engine::Key> bullet_action_on(const VoaContext& ctx, const Engine& engine, const StateVector& a,
                                               const Rational& z0, const LinComb<typename Engine::Key>& u) {
  LinComb<typename Engine::Key> out;
  for (const auto& [w, comp] : a.by_weight()) out += deformed_mode_on(ctx, engine, comp, Rational(w - 1), z0, u);
  return out;
}

inline TwistedVector deformed_mode(const VoaContext& ctx, const StateVector& a, const FracIndex& m,
                                   const Rational& z0, const TwistedVector& v) {
  return deformed_mode_on(ctx, ctx.twisted(), a, m.value(), z0, v);
}

inline TwistedVector bullet_action(const VoaContext& ctx, const StateVector& a, const Rational& z0,
                                   const TwistedVector& u) {
  return bullet_action_on(ctx, ctx.twisted(), a, z0, u);
}

enum class ModuleKind { TwistedFock, Adjoint };

/// Truncated Omega_n: per degree, the common kernel of a_{(wt a - 1 + k)} over basis
/// probes a with wt a <= probe_cap and k in (1/T)N, k > n.
template <class Key>
struct OmegaSpace {
  std::map<int, std::vector<LinComb<Key>>> by_degree;  // degree in module units
  std::vector<LinComb<Key>> all() const {
    std::vector<LinComb<Key>> out;
    for (const auto& [d, vs] : by_degree) out.insert(out.end(), vs.begin(), vs.end());
    return out;
  }
  std::size_t dimension() const {
    std::size_t n = 0;
    for (const auto& [d, vs] : by_degree) n += vs.size();
    return n;
  }
  bool stable = false;
};

namespace detail {

template <class Engine, class BasisFn, class ModeFn>
OmegaSpace<typename Engine::Key> omega_space_once(const VoaContext& ctx, const Engine&, BasisFn basis,
                                                  ModeFn mode, const FracIndex& n, int cutoff_units,
                                                  int probe_cap) {
  using Key = typename Engine::Key;
  using Vec = LinComb<Key>;
  const int D = Engine::D;
  OmegaSpace<Key> out;
  std::vector<Monomial> probes = ctx.algebra().basis_upto(probe_cap);
  for (int d = 0; d <= cutoff_units; ++d) {
    std::vector<Key> dom = basis(d);
    if (dom.empty()) continue;
    std::vector<DenseVector> rows;
    // k ranges over (1/T)Z with n < k <= degree.
    for (const auto& a : probes) {
      for (long knum = n.numerator() + 1; make_rational(knum, ctx.order()) * D <= d; ++knum) {
        const Rational k(knum, ctx.order());
        const Rational md = Rational(a.weight - 1) + k;
        std::map<Key, std::vector<Rational>> images;
        bool any = false;
        for (std::size_t col = 0; col < dom.size(); ++col) {
          Vec img = mode(StateVector::basis(a), md, Vec::basis(dom[col]));
          for (const auto& [key, c] : img.terms()) {
            auto& row = images[key];
            if (row.empty()) row.resize(dom.size());
            row[col] = c;
            any = true;
          }
        }
        if (!any) continue;
        for (auto& [key, row] : images) rows.push_back(std::move(row));
      }
    }
    auto ker = kernel_basis(rows, static_cast<int>(dom.size()));
    for (auto& kv : ker) {
      Vec v;
      for (std::size_t col = 0; col < dom.size(); ++col) v.add(dom[col], kv[col]);
      out.by_degree[d].push_back(std::move(v));
    }
  }
  return out;
}

}  // namespace detail

/// cutoff is a degree (may be fractional for the twisted module); stability compares
/// dimensions against a rerun with probe_cap + 1.
inline OmegaSpace<TwistedMonomial> omega_n_twisted(const VoaContext& ctx, const FracIndex& n,
                                                    const Rational& cutoff, int probe_cap) {
  const auto& eng = ctx.twisted();
  TwistedFockModule mod;
  auto basis = [&](int d2) { return mod.basis(d2); };
  auto mode = [&](const StateVector& a, const Rational& md, const TwistedVector& v) {
    return module_mode(eng, a, md, v);
  };
  const int cut = static_cast<int>(floor_rational(cutoff * 2));
  auto first = detail::omega_space_once(ctx, eng, basis, mode, n, cut, probe_cap);
  auto second = detail::omega_space_once(ctx, eng, basis, mode, n, cut, probe_cap + 1);
  first.stable = first.dimension() == second.dimension();
  return first;
}

inline OmegaSpace<Monomial> omega_n_adjoint(const VoaContext& ctx, const FracIndex& n, int cutoff,
                                            int probe_cap) {
  const auto& eng = ctx.adjoint();
  auto basis = [&](int d) { return ctx.algebra().basis(d); };
  auto mode = [&](const StateVector& a, const Rational& md, const StateVector& v) {
    return module_mode(eng, a, md, v);
  };
  auto first = detail::omega_space_once(ctx, eng, basis, mode, n, cutoff, probe_cap);
  auto second = detail::omega_space_once(ctx, eng, basis, mode, n, cutoff, probe_cap + 1);
  first.stable = first.dimension() == second.dimension();
  return first;
}

}  // namespace voa
