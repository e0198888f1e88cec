#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace voa {

using Integer = mpz_class;
using Rational = mpq_class;

/// Raised when values built for different sessions (different T) are mixed.
class ContextError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Raised when an argument lies outside the domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when vectors are not expressed over a shared index.
class StructuralError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw DomainError("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline std::string numerator_string(const Rational& r) { return r.get_num().get_str(); }
inline std::string denominator_string(const Rational& r) { return r.get_den().get_str(); }

/// Parses "a", "-a" or "a/b". Floats are rejected.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw DomainError("empty rational");
  for (char ch : s) {
    if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '-' || ch == '+' || ch == '/'))
      throw DomainError("malformed rational '" + s + "'");
  }
  if (s.front() == '+') s.erase(s.begin());
  Rational r;
  if (r.set_str(s, 10) != 0) throw DomainError("malformed rational '" + s + "'");
  if (r.get_den() == 0) throw DomainError("zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

inline Rational rational_from_strings(const std::string& num, const std::string& den) {
  Integer n, d;
  if (n.set_str(num, 10) != 0 || d.set_str(den, 10) != 0)
    throw DomainError("malformed rational pair '" + num + "','" + den + "'");
  if (d == 0) throw DomainError("zero denominator");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

/// prod_{k<i} (alpha - k) / i!
inline Rational gen_binomial(const Rational& alpha, unsigned i) {
  Rational acc = 1;
  for (unsigned k = 0; k < i; ++k) {
    acc *= alpha - static_cast<long>(k);
    acc /= static_cast<long>(k + 1);
  }
  return acc;
}

/// Iterates C(alpha, 0), C(alpha, 1), ... by the ratio recurrence.
class BinomialSeries {
 public:
  explicit BinomialSeries(Rational alpha) : alpha_(std::move(alpha)), value_(1) {}

  const Rational& value() const { return value_; }
  unsigned index() const { return index_; }

  void advance() {
    value_ *= alpha_ - static_cast<long>(index_);
    ++index_;
    value_ /= static_cast<long>(index_);
  }

 private:
  Rational alpha_;
  Rational value_;
  unsigned index_ = 0;
};

inline long floor_rational(const Rational& q) {
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return f.get_si();
}

inline Rational factorial(unsigned n) {
  Rational r = 1;
  for (unsigned k = 2; k <= n; ++k) r *= static_cast<long>(k);
  return r;
}

}  // namespace voa
