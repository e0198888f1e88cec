#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "voa/exact/rational.hpp"

namespace voa {

using DenseVector = std::vector<Rational>;
using SparseRow = std::vector<std::pair<int, Rational>>;

/// Incremental row echelon form over Q. Pivot of a row is its lowest nonzero column.
/// Every stored row remembers how it was built from inserted sources, so a reduction
/// to zero can be turned into a combination of the original inputs.
class EchelonSpan {
 public:
  explicit EchelonSpan(int ncols = 0) : ncols_(ncols), pivot_row_(static_cast<std::size_t>(ncols), -1) {}

  int ncols() const { return ncols_; }
  int rank() const { return static_cast<int>(rows_.size()); }
  bool is_pivot(int col) const { return pivot_row_[col] >= 0; }
  const std::vector<std::size_t>& sources() const { return source_; }

  /// Returns true if v was independent of the current rows.
  bool insert(DenseVector v, std::size_t source_id) {
    check(v);
    std::vector<std::pair<int, Rational>> factors;
    const int lead = reduce(v, &factors);
    if (lead < 0) return false;
    Rational inv = Rational(1) / v[lead];
    SparseRow row;
    for (int c = lead; c < ncols_; ++c)
      if (sgn(v[c]) != 0) row.emplace_back(c, v[c] * inv);
    pivot_row_[lead] = rank();
    pivot_col_.push_back(lead);
    rows_.push_back(std::move(row));
    source_.push_back(source_id);
    history_.push_back(std::move(factors));
    scale_.push_back(std::move(inv));
    return true;
  }

  /// Reduces v in place against the rows (ascending column scan). Returns the first
  /// surviving column or -1 when v reduces to zero. Factors f record v -= f*row.
  int reduce(DenseVector& v, std::vector<std::pair<int, Rational>>* factors = nullptr) const {
    check(v);
    int lead = -1;
    Rational f;
    for (int c = 0; c < ncols_; ++c) {
      if (sgn(v[c]) == 0) continue;
      const int r = pivot_row_[c];
      if (r < 0) {
        if (lead < 0) lead = c;
        continue;
      }
      f = v[c];
      for (const auto& [col, val] : rows_[r]) v[col] -= f * val;
      if (factors) factors->emplace_back(r, f);
    }
    return lead;
  }

  /// Non-pivot part of v; idempotent, zero iff v lies in the span.
  DenseVector normal_form(DenseVector v) const {
    reduce(v);
    return v;
  }

  bool contains(DenseVector v) const { return reduce(v) < 0; }

  /// Coefficients over source ids expressing v, or nullopt when v is outside the span.
  std::optional<std::map<std::size_t, Rational>> express(DenseVector v) const {
    std::vector<std::pair<int, Rational>> factors;
    if (reduce(v, &factors) >= 0) return std::nullopt;
    std::vector<Rational> on_row(rows_.size());
    for (auto& [r, f] : factors) on_row[r] += f;
    // row_k = scale_k * (source_k - sum_j f_kj row_j) with j < k.
    std::map<std::size_t, Rational> out;
    for (std::size_t k = rows_.size(); k-- > 0;) {
      if (sgn(on_row[k]) == 0) continue;
      Rational c = on_row[k] * scale_[k];
      for (const auto& [j, f] : history_[k]) on_row[j] -= c * f;
      out[source_[k]] += c;
    }
    for (auto it = out.begin(); it != out.end();) it = sgn(it->second) == 0 ? out.erase(it) : std::next(it);
    return out;
  }

  std::vector<int> free_columns() const {
    std::vector<int> out;
    for (int c = 0; c < ncols_; ++c)
      if (pivot_row_[c] < 0) out.push_back(c);
    return out;
  }

 private:
  void check(const DenseVector& v) const {
    if (static_cast<int>(v.size()) != ncols_) throw StructuralError("vector length does not match column index");
  }

  int ncols_;
  std::vector<int> pivot_row_;
  std::vector<int> pivot_col_;
  std::vector<SparseRow> rows_;
  std::vector<std::size_t> source_;
  std::vector<std::vector<std::pair<int, Rational>>> history_;
  std::vector<Rational> scale_;
};

/// Representatives are the free columns after eliminating the relation rows.
struct QuotientBasis {
  EchelonSpan relations;
  std::vector<int> representatives;

  DenseVector reduce(const DenseVector& v) const { return relations.normal_form(v); }
};

inline QuotientBasis quotient_basis(int ncols, const std::vector<DenseVector>& relation_rows) {
  QuotientBasis q{EchelonSpan(ncols), {}};
  for (std::size_t i = 0; i < relation_rows.size(); ++i) q.relations.insert(relation_rows[i], i);
  q.representatives = q.relations.free_columns();
  return q;
}

/// Basis of {x : M x = 0} for M given by rows of length ncols.
inline std::vector<DenseVector> kernel_basis(const std::vector<DenseVector>& rows, int ncols) {
  std::vector<DenseVector> m;
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != ncols) throw StructuralError("row length mismatch");
    m.push_back(r);
  }
  std::vector<int> pivots;
  std::size_t rank = 0;
  for (int c = 0; c < ncols && rank < m.size(); ++c) {
    std::size_t p = rank;
    while (p < m.size() && sgn(m[p][c]) == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[rank]);
    Rational inv = Rational(1) / m[rank][c];
    for (auto& x : m[rank]) x *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || sgn(m[r][c]) == 0) continue;
      Rational f = m[r][c];
      for (int k = c; k < ncols; ++k) m[r][k] -= f * m[rank][k];
    }
    pivots.push_back(c);
    ++rank;
  }
  std::vector<bool> is_pivot(static_cast<std::size_t>(ncols), false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<DenseVector> out;
  for (int free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    DenseVector v(static_cast<std::size_t>(ncols));
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace voa
