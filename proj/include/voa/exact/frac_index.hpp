#pragma once

#include <compare>
#include <cstdlib>
#include <string>
#include <string_view>

#include "voa/exact/rational.hpp"

namespace voa {

/// A number num/T with T fixed for the whole session.
class FracIndex {
 public:
  FracIndex() = default;
  FracIndex(long num, int order) : num_(num), order_(order) {
    if (order <= 0) throw DomainError("FracIndex order must be positive");
  }

  static FracIndex integer(long value, int order) { return FracIndex(value * order, order); }

  /// Exact conversion; the denominator of q must divide T.
  static FracIndex from_rational(const Rational& q, int order) {
    Rational scaled = q * order;
    if (scaled.get_den() != 1)
      throw DomainError("value " + q.get_str() + " is not in (1/" + std::to_string(order) + ")Z");
    if (!scaled.get_num().fits_slong_p()) throw DomainError("FracIndex numerator overflow");
    return FracIndex(scaled.get_num().get_si(), order);
  }

  static FracIndex parse(std::string_view text, int order) {
    return from_rational(parse_rational(text), order);
  }

  long numerator() const { return num_; }
  int order() const { return order_; }

  long floor() const {
    long q = num_ / order_;
    if (num_ % order_ != 0 && num_ < 0) --q;
    return q;
  }

  /// T*x mod T, in [0, T).
  int tilde() const {
    long r = num_ % order_;
    if (r < 0) r += order_;
    return static_cast<int>(r);
  }

  bool is_integer() const { return num_ % order_ == 0; }
  Rational value() const { return make_rational(num_, order_); }

  FracIndex operator+(const FracIndex& o) const {
    check(o);
    return FracIndex(num_ + o.num_, order_);
  }
  FracIndex operator-(const FracIndex& o) const {
    check(o);
    return FracIndex(num_ - o.num_, order_);
  }
  FracIndex operator-() const { return FracIndex(-num_, order_); }
  FracIndex operator+(long k) const { return FracIndex(num_ + k * order_, order_); }
  FracIndex operator-(long k) const { return FracIndex(num_ - k * order_, order_); }

  bool operator==(const FracIndex& o) const {
    check(o);
    return num_ == o.num_;
  }
  std::strong_ordering operator<=>(const FracIndex& o) const {
    check(o);
    return num_ <=> o.num_;
  }

  std::string to_string() const { return value().get_str(); }

 private:
  void check(const FracIndex& o) const {
    if (order_ != o.order_)
      throw ContextError("FracIndex orders differ: " + std::to_string(order_) + " vs " +
                         std::to_string(o.order_));
  }

  long num_ = 0;
  int order_ = 1;
};

}  // namespace voa
