#pragma once

#include "voa/core/linear_combination.hpp"
#include "voa/core/monomial.hpp"

namespace voa {

using TwistedVector = LinComb<TwistedMonomial>;

/// Order-2 twisted Fock space: alpha_r with r in Z+1/2, [alpha_r, alpha_s] = r delta_{r+s,0}.
/// Modes and degrees are stored in units of 1/2.
struct TwistedFockModule {
  using Key = TwistedMonomial;
  static constexpr int denominator = 2;

  int degree(const Key& w) const { return w.weight; }
  int generator_offset() const { return 1; }

  TwistedVector apply_generator(int s2, const Key& w) const {
    if (s2 < 0) return TwistedVector::basis(w.inserted(-s2));
    const int mult = w.multiplicity(s2);
    if (mult == 0) return {};
    return TwistedVector(w.removed(s2), make_rational(static_cast<long>(s2) * mult, 2));
  }

  /// Y_M(a, x) only carries modes in (len(a)/2) + Z.
  bool in_sector(const Monomial& a, int t2) const {
    const int parity = static_cast<int>(a.length() % 2);
    return ((t2 - parity) % 2 + 2) % 2 == 0;
  }

  std::vector<Key> basis(int degree2) const {
    std::vector<Key> out;
    if (degree2 < 0) return out;
    for (auto& p : partitions(degree2, 1, 2)) out.emplace_back(std::move(p));
    return out;
  }

  std::string text(const TwistedVector& v) const {
    return v.to_string([](const Key& k) { return monomial_text(k); });
  }
};

}  // namespace voa
