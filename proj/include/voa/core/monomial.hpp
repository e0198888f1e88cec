#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "voa/exact/rational.hpp"

namespace voa {

/// PBW monomial X_{-n1} ... X_{-nk} |vac> with n1 >= ... >= nk. For twisted
/// monomials the stored parts are 2*r (odd), so all arithmetic stays integral.
template <class Tag>
struct BasicMonomial {
  std::vector<int> parts;
  int weight = 0;  // sum of parts, in the units of the stored parts

  BasicMonomial() = default;
  explicit BasicMonomial(std::vector<int> p) : parts(std::move(p)) {
    std::sort(parts.begin(), parts.end(), std::greater<>());
    for (int x : parts) weight += x;
  }

  bool is_vacuum() const { return parts.empty(); }
  std::size_t length() const { return parts.size(); }
  int first() const { return parts.front(); }

  BasicMonomial rest() const {
    BasicMonomial r;
    r.parts.assign(parts.begin() + 1, parts.end());
    r.weight = weight - parts.front();
    return r;
  }

  BasicMonomial inserted(int part) const {
    BasicMonomial r = *this;
    auto it = std::upper_bound(r.parts.begin(), r.parts.end(), part, std::greater<>());
    r.parts.insert(it, part);
    r.weight += part;
    return r;
  }

  int multiplicity(int part) const { return static_cast<int>(std::count(parts.begin(), parts.end(), part)); }

  BasicMonomial removed(int part) const {
    BasicMonomial r = *this;
    r.parts.erase(std::find(r.parts.begin(), r.parts.end(), part));
    r.weight -= part;
    return r;
  }

  bool operator==(const BasicMonomial& o) const { return parts == o.parts; }

  /// Canonical order: weight ascending, then parts lexicographically descending.
  bool operator<(const BasicMonomial& o) const {
    if (weight != o.weight) return weight < o.weight;
    return std::lexicographical_compare(parts.begin(), parts.end(), o.parts.begin(), o.parts.end(),
                                        std::greater<>());
  }
};

struct UntwistedTag {};
struct TwistedTag {};

using Monomial = BasicMonomial<UntwistedTag>;
using TwistedMonomial = BasicMonomial<TwistedTag>;

struct MonomialHash {
  template <class Tag>
  std::size_t operator()(const BasicMonomial<Tag>& m) const {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (int p : m.parts) h = (h ^ static_cast<std::size_t>(p)) * 0x100000001b3ull;
    return h;
  }
};

/// Letter used in the text form ("a" for the boson, "L" for Virasoro).
inline std::string monomial_text(const Monomial& m, char letter) {
  std::string s;
  for (int p : m.parts) s += std::string(1, letter) + "[-" + std::to_string(p) + "]";
  return s + "|1>";
}

inline std::string monomial_text(const TwistedMonomial& m) {
  std::string s;
  for (int p : m.parts) s += "a[-" + std::to_string(p) + "/2]";
  return s + "|s>";
}

/// All partitions of w with parts >= min_part, in canonical order.
inline std::vector<std::vector<int>> partitions(int w, int min_part, int step = 1) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int remaining, int max_part) {
    if (remaining == 0) {
      out.push_back(cur);
      return;
    }
    int start = std::min(max_part, remaining);
    if (start < min_part) return;
    start -= (start - min_part) % step;
    for (int p = start; p >= min_part; p -= step) {
      cur.push_back(p);
      rec(remaining - p, p);
      cur.pop_back();
    }
  };
  rec(w, w);
  return out;
}

}  // namespace voa
