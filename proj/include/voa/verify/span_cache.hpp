#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "voa/exact/linear_algebra.hpp"
#include "voa/verify/families.hpp"

namespace voa {

/// Ambient columns for V_{<=cap}: weight descending, canonical order inside a weight,
/// so pivots land on high weights and quotient representatives on low ones.
class ColumnIndex {
 public:
  ColumnIndex(const VertexAlgebra& alg, int cap) : cap_(cap) {
    for (int w = cap; w >= 0; --w)
      for (auto& m : alg.basis(w)) {
        index_.emplace(m, static_cast<int>(keys_.size()));
        keys_.push_back(std::move(m));
      }
  }

  int size() const { return static_cast<int>(keys_.size()); }
  int cap() const { return cap_; }
  const Monomial& key(int col) const { return keys_[col]; }

  bool covers(const StateVector& v) const { return v.max_weight() <= cap_; }

  DenseVector dense(const StateVector& v) const {
    DenseVector out(keys_.size());
    for (const auto& [k, c] : v.terms()) {
      auto it = index_.find(k);
      if (it == index_.end()) throw StructuralError("monomial outside the column index: weight " + std::to_string(k.weight));
      out[it->second] = c;
    }
    return out;
  }

  StateVector sparse(const DenseVector& d) const {
    StateVector out;
    for (std::size_t i = 0; i < d.size(); ++i) out.add(keys_[i], d[i]);
    return out;
  }

 private:
  int cap_;
  std::vector<Monomial> keys_;
  std::unordered_map<Monomial, int, MonomialHash> index_;
};

struct CertificateTerm {
  GeneratorDescriptor generator;
  CycScalar coefficient;
};

/// Row-reduced span of one family truncated at cap.
class GeneratorSpan {
 public:
  GeneratorSpan(const VoaContext& ctx, SpanFamily family, int cap)
      : family_(std::move(family)), columns_(ctx.algebra(), cap), echelon_(columns_.size()) {
    for (auto& g : enumerate_family(ctx, family_, cap)) {
      StateVector v = regenerate(ctx, g.descriptor);
      ++generated_;
      if (v.is_zero()) continue;
      if (!columns_.covers(v)) continue;  // nominal bound violated; never expected
      const std::size_t id = descriptors_.size();
      descriptors_.push_back(std::move(g.descriptor));
      if (!echelon_.insert(columns_.dense(v), id)) descriptors_.pop_back();
    }
  }

  const SpanFamily& family() const { return family_; }
  int cap() const { return columns_.cap(); }
  int rank() const { return echelon_.rank(); }
  std::size_t generated() const { return generated_; }
  const ColumnIndex& columns() const { return columns_; }
  const EchelonSpan& echelon() const { return echelon_; }

  bool contains(const StateVector& v) const { return columns_.covers(v) && echelon_.contains(columns_.dense(v)); }

  /// Combination of generators equal to target, or nullopt.
  std::optional<std::vector<CertificateTerm>> express(const StateVector& target, int order) const {
    if (!columns_.covers(target)) return std::nullopt;
    auto coeffs = echelon_.express(columns_.dense(target));
    if (!coeffs) return std::nullopt;
    std::vector<CertificateTerm> out;
    for (auto& [id, c] : *coeffs) out.push_back({descriptors_[id], CycScalar(c, order)});
    return out;
  }

  std::optional<std::vector<CertificateTerm>> express(const CycStateVector& target, int order) const {
    std::map<std::size_t, std::vector<Rational>> acc;
    const auto parts = split_powers(target);
    for (std::size_t pw = 0; pw < parts.size(); ++pw) {
      if (!columns_.covers(parts[pw])) return std::nullopt;
      auto coeffs = echelon_.express(columns_.dense(parts[pw]));
      if (!coeffs) return std::nullopt;
      for (auto& [id, c] : *coeffs) {
        auto& slot = acc[id];
        if (slot.size() <= pw) slot.resize(pw + 1);
        slot[pw] = c;
      }
    }
    std::vector<CertificateTerm> out;
    for (auto& [id, cs] : acc) out.push_back({descriptors_[id], CycScalar(std::move(cs), order)});
    return out;
  }

 private:
  SpanFamily family_;
  ColumnIndex columns_;
  EchelonSpan echelon_;
  std::vector<GeneratorDescriptor> descriptors_;  // indexed by source id
  std::size_t generated_ = 0;
};

/// Spans keyed by (family, cap); building is serialized, lookups are shared.
class SpanCache {
 public:
  explicit SpanCache(const VoaContext& ctx) : ctx_(ctx) {}

  std::shared_ptr<const GeneratorSpan> get(const SpanFamily& f, int cap) {
    const std::string key = f.key() + "@" + std::to_string(cap);
    std::lock_guard lock(mu_);
    auto it = spans_.find(key);
    if (it != spans_.end()) return it->second;
    auto span = std::make_shared<const GeneratorSpan>(ctx_, f, cap);
    spans_.emplace(key, span);
    return span;
  }

  std::size_t size() const {
    std::lock_guard lock(mu_);
    return spans_.size();
  }

 private:
  const VoaContext& ctx_;
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<const GeneratorSpan>> spans_;
};

/// Result of a membership query against the truncated family span.
struct Membership {
  std::optional<std::vector<CertificateTerm>> certificate;
  int cap = 0;
  bool retried = false;
};

/// cap = max(cutoff, top weight of target) + slack, retried once with slack + 2.
template <class Vec>
Membership span_member(SpanCache& cache, const VoaContext& ctx, const SpanFamily& f, const Vec& target, int cutoff,
                       int slack) {
  Membership out;
  if (target.is_zero()) {
    out.certificate = std::vector<CertificateTerm>{};
    return out;
  }
  const int base = std::max(cutoff, target.max_weight());
  for (int attempt = 0; attempt < 2; ++attempt) {
    out.cap = base + slack + 2 * attempt;
    out.retried = attempt > 0;
    auto span = cache.get(f, out.cap);
    out.certificate = span->express(target, ctx.order());
    if (out.certificate) return out;
  }
  return out;
}

/// Plain span_membership over an explicit generator list sharing one column index.
template <class Descriptor>
std::optional<std::vector<std::pair<Descriptor, Rational>>> span_membership(
    const ColumnIndex& columns, const StateVector& target, const std::vector<std::pair<Descriptor, StateVector>>& gens) {
  EchelonSpan span(columns.size());
  for (std::size_t i = 0; i < gens.size(); ++i) span.insert(columns.dense(gens[i].second), i);
  auto coeffs = span.express(columns.dense(target));
  if (!coeffs) return std::nullopt;
  std::vector<std::pair<Descriptor, Rational>> out;
  for (auto& [id, c] : *coeffs) out.emplace_back(gens[id].first, c);
  return out;
}

}  // namespace voa
