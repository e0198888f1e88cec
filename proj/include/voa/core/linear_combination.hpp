#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "voa/exact/cyclotomic.hpp"
#include "voa/exact/rational.hpp"

namespace voa {

namespace detail {
inline bool scalar_is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool scalar_is_zero(const CycScalar& q) { return q.is_zero(); }
inline std::string scalar_text(const Rational& q) { return q.get_str(); }
inline std::string scalar_text(const CycScalar& q) { return q.to_string(); }
}  // namespace detail

/// Sparse exact combination of basis keys; zero coefficients are never stored.
template <class Key, class Scalar = Rational>
class LinComb {
 public:
  using key_type = Key;
  using scalar_type = Scalar;
  using Map = std::map<Key, Scalar>;

  LinComb() = default;
  LinComb(const Key& k, Scalar c) { add(k, std::move(c)); }
  static LinComb basis(const Key& k) { return LinComb(k, Scalar(1)); }

  const Map& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Scalar coefficient(const Key& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Scalar() : it->second;
  }

  void add(const Key& k, const Scalar& c) {
    if (detail::scalar_is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (detail::scalar_is_zero(it->second)) terms_.erase(it);
    }
  }

  /// this += c * other
  void axpy(const Scalar& c, const LinComb& other) {
    if (detail::scalar_is_zero(c)) return;
    for (const auto& [k, v] : other.terms_) add(k, c * v);
  }

  LinComb& operator+=(const LinComb& o) {
    for (const auto& [k, v] : o.terms_) add(k, v);
    return *this;
  }
  LinComb& operator-=(const LinComb& o) {
    for (const auto& [k, v] : o.terms_) add(k, -v);
    return *this;
  }
  LinComb& operator*=(const Scalar& c) {
    if (detail::scalar_is_zero(c)) {
      terms_.clear();
      return *this;
    }
    for (auto& [k, v] : terms_) v *= c;
    return *this;
  }

  friend LinComb operator+(LinComb a, const LinComb& b) { return a += b; }
  friend LinComb operator-(LinComb a, const LinComb& b) { return a -= b; }
  friend LinComb operator*(const Scalar& c, LinComb a) { return a *= c; }
  friend LinComb operator*(LinComb a, const Scalar& c) { return a *= c; }
  LinComb operator-() const {
    LinComb r = *this;
    for (auto& [k, v] : r.terms_) v = -v;
    return r;
  }
  bool operator==(const LinComb& o) const { return terms_ == o.terms_; }

  int max_weight() const {
    int w = -1;
    for (const auto& [k, v] : terms_) w = std::max(w, k.weight);
    return w;
  }

  /// Component of the given weight.
  LinComb component(int weight) const {
    LinComb r;
    for (const auto& [k, v] : terms_)
      if (k.weight == weight) r.terms_.emplace(k, v);
    return r;
  }

  std::map<int, LinComb> by_weight() const {
    std::map<int, LinComb> out;
    for (const auto& [k, v] : terms_) out[k.weight].terms_.emplace(k, v);
    return out;
  }

  template <class KeyText>
  std::string to_string(KeyText&& key_text) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [k, v] : terms_) {
      if (!out.empty()) out += " + ";
      out += detail::scalar_text(v) + " * " + key_text(k);
    }
    return out;
  }

 private:
  Map terms_;
};

/// Splits a cyclotomic combination into rational combinations, one per power of z.
template <class Key>
std::vector<LinComb<Key, Rational>> split_powers(const LinComb<Key, CycScalar>& v) {
  std::vector<LinComb<Key, Rational>> out;
  for (const auto& [k, c] : v.terms()) {
    const auto& cs = c.coefficients();
    if (out.size() < cs.size()) out.resize(cs.size());
    for (std::size_t i = 0; i < cs.size(); ++i) out[i].add(k, cs[i]);
  }
  return out;
}

template <class Key>
LinComb<Key, CycScalar> to_cyclotomic(const LinComb<Key, Rational>& v, int order) {
  LinComb<Key, CycScalar> out;
  for (const auto& [k, c] : v.terms()) out.add(k, CycScalar(c, order));
  return out;
}

}  // namespace voa
