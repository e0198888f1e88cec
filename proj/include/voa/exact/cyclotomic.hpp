#pragma once

#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "voa/exact/frac_index.hpp"
#include "voa/exact/rational.hpp"

namespace voa {

namespace detail {

using IntPoly = std::vector<long>;  // low degree first

inline IntPoly poly_divide_exact(IntPoly num, const IntPoly& den) {
  IntPoly q(num.size() - den.size() + 1, 0);
  for (std::size_t k = q.size(); k-- > 0;) {
    long c = num[k + den.size() - 1] / den.back();
    q[k] = c;
    for (std::size_t j = 0; j < den.size(); ++j) num[k + j] -= c * den[j];
  }
  return q;
}

inline IntPoly cyclotomic_poly(int n) {
  static std::mutex mu;
  static std::map<int, IntPoly> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  IntPoly p(static_cast<std::size_t>(n) + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (int d = 1; d < n; ++d)
    if (n % d == 0) p = poly_divide_exact(p, cyclotomic_poly(d));
  std::lock_guard lock(mu);
  cache.emplace(n, p);
  return p;
}

}  // namespace detail

/// Element of Q(z), z = exp(i*pi/T), stored as a polynomial in z of degree < phi(2T).
class CycScalar {
 public:
  CycScalar() = default;
  explicit CycScalar(int order) : order_(order) {}
  CycScalar(Rational value, int order) : order_(order) {
    if (value != 0) coeffs_.push_back(std::move(value));
  }
  CycScalar(std::vector<Rational> coeffs, int order) : order_(order), coeffs_(std::move(coeffs)) {
    reduce();
  }

  static CycScalar one(int order) { return CycScalar(Rational(1), order); }

  int order() const { return order_; }
  int degree_bound() const { return static_cast<int>(modulus().size()) - 1; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  bool is_zero() const { return coeffs_.empty(); }
  bool is_rational() const { return coeffs_.size() <= 1; }
  Rational rational_value() const {
    if (!is_rational()) throw DomainError("scalar is not rational: " + to_string());
    return coeffs_.empty() ? Rational(0) : coeffs_[0];
  }
  Rational coefficient(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rational(0); }

  CycScalar operator+(const CycScalar& o) const {
    check(o);
    std::vector<Rational> c(std::max(coeffs_.size(), o.coeffs_.size()));
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = coefficient(k) + o.coefficient(k);
    return CycScalar(std::move(c), order_);
  }
  CycScalar operator-(const CycScalar& o) const { return *this + (-o); }
  CycScalar operator-() const {
    CycScalar r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }
  CycScalar operator*(const CycScalar& o) const {
    check(o);
    if (is_zero() || o.is_zero()) return CycScalar(order_);
    std::vector<Rational> c(coeffs_.size() + o.coeffs_.size() - 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      for (std::size_t j = 0; j < o.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * o.coeffs_[j];
    return CycScalar(std::move(c), order_);
  }
  CycScalar operator*(const Rational& q) const {
    if (q == 0) return CycScalar(order_);
    CycScalar r = *this;
    for (auto& c : r.coeffs_) c *= q;
    return r;
  }
  CycScalar& operator+=(const CycScalar& o) { return *this = *this + o; }
  CycScalar& operator-=(const CycScalar& o) { return *this = *this - o; }
  CycScalar& operator*=(const CycScalar& o) { return *this = *this * o; }

  /// Solves (this * y) = 1 in the power basis.
  CycScalar inverse() const {
    if (is_zero()) throw DomainError("inverse of zero");
    if (is_rational()) return CycScalar(Rational(1) / coeffs_[0], order_);
    const int d = degree_bound();
    std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d + 1));
    CycScalar basis = one(order_);
    const CycScalar z = generator(order_);
    for (int col = 0; col < d; ++col) {
      CycScalar prod = *this * basis;
      for (int row = 0; row < d; ++row) m[row][col] = prod.coefficient(row);
      basis = basis * z;
    }
    m[0][d] = 1;
    for (int col = 0; col < d; ++col) {
      int piv = col;
      while (m[piv][col] == 0) ++piv;
      std::swap(m[piv], m[col]);
      Rational inv = Rational(1) / m[col][col];
      for (auto& x : m[col]) x *= inv;
      for (int row = 0; row < d; ++row) {
        if (row == col || m[row][col] == 0) continue;
        Rational f = m[row][col];
        for (int k = col; k <= d; ++k) m[row][k] -= f * m[col][k];
      }
    }
    std::vector<Rational> c(d);
    for (int k = 0; k < d; ++k) c[k] = m[k][d];
    return CycScalar(std::move(c), order_);
  }
  CycScalar operator/(const CycScalar& o) const { return *this * o.inverse(); }

  bool operator==(const CycScalar& o) const { return order_ == o.order_ && coeffs_ == o.coeffs_; }

  static CycScalar generator(int order) {
    std::vector<Rational> c{Rational(0), Rational(1)};
    return CycScalar(std::move(c), order);
  }

  /// "a/b" when rational, otherwise "(c0 + c1*z + c2*z^2 ...)".
  std::string to_string() const {
    if (is_rational()) return rational_value().get_str();
    std::string out = "(";
    bool first = true;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      if (coeffs_[k] == 0) continue;
      if (!first) out += " + ";
      first = false;
      out += coeffs_[k].get_str();
      if (k == 1) out += "*z";
      if (k > 1) out += "*z^" + std::to_string(k);
    }
    return out + ")";
  }

 private:
  const detail::IntPoly& modulus() const {
    static thread_local std::map<int, detail::IntPoly> local;
    auto it = local.find(order_);
    if (it == local.end()) it = local.emplace(order_, detail::cyclotomic_poly(2 * order_)).first;
    return it->second;
  }

  void check(const CycScalar& o) const {
    if (order_ != o.order_)
      throw ContextError("cyclotomic orders differ: " + std::to_string(order_) + " vs " +
                         std::to_string(o.order_));
  }

  void reduce() {
    const auto& phi = modulus();
    const std::size_t d = phi.size() - 1;
    for (std::size_t k = coeffs_.size(); k-- > d;) {
      if (coeffs_[k] == 0) continue;
      Rational c = coeffs_[k];
      for (std::size_t j = 0; j <= d; ++j) coeffs_[k - d + j] -= c * phi[j];
    }
    if (coeffs_.size() > d) coeffs_.resize(d);
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  int order_ = 1;
  std::vector<Rational> coeffs_;
};

inline CycScalar operator*(const Rational& q, const CycScalar& s) { return s * q; }

/// exp(i*pi*lambda) for lambda in (1/T)Z.
inline CycScalar root_of_unity_power(const FracIndex& lambda, int session_order) {
  if (lambda.order() != session_order)
    throw ContextError("index order " + std::to_string(lambda.order()) + " differs from session order " +
                       std::to_string(session_order));
  const long two_t = 2L * session_order;
  long e = lambda.numerator() % two_t;
  if (e < 0) e += two_t;
  std::vector<Rational> c(static_cast<std::size_t>(e) + 1);
  c[e] = 1;
  return CycScalar(std::move(c), session_order);
}

}  // namespace voa
