#pragma once

// Exact sparse linear algebra over Q: sparse vectors keyed by an arbitrary
// totally ordered index type, and an incrementally maintained span in
// reduced row-echelon form.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "sl2fusion/scalar.hpp"

namespace sl2f {

template <class Index>
class SparseVector {
 public:
  using Entry = std::pair<Index, Scalar>;

  SparseVector() = default;

  /// Single basis vector `coeff * e_index`.
  SparseVector(Index index, Scalar coeff) {
    if (!is_zero(coeff)) entries_.emplace_back(std::move(index), std::move(coeff));
  }

  /// Builds from arbitrary (index, coeff) pairs; duplicates are summed and
  /// zeros dropped.
  static SparseVector from_terms(std::vector<Entry> terms) {
    // sort a permutation; moving heavy index objects around is the slow part
    std::vector<std::uint32_t> order(terms.size());
    for (std::uint32_t k = 0; k < order.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(),
              [&](std::uint32_t a, std::uint32_t b) { return terms[a].first < terms[b].first; });
    SparseVector out;
    out.entries_.reserve(terms.size());
    for (std::uint32_t k : order) {
      auto& term = terms[k];
      if (!out.entries_.empty() && !(out.entries_.back().first < term.first)) {
        out.entries_.back().second += term.second;
        if (is_zero(out.entries_.back().second)) out.entries_.pop_back();
      } else if (!is_zero(term.second)) {
        out.entries_.push_back(std::move(term));
      }
    }
    return out;
  }

  /// Builds from an ordered accumulator, dropping zeros.
  static SparseVector from_map(std::map<Index, Scalar>&& acc) {
    SparseVector out;
    out.entries_.reserve(acc.size());
    for (auto& [index, coeff] : acc) {
      if (!is_zero(coeff)) out.entries_.emplace_back(index, std::move(coeff));
    }
    return out;
  }

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool is_zero_vector() const { return entries_.empty(); }

  const Index& leading_index() const { return entries_.front().first; }
  const Scalar& leading_coeff() const { return entries_.front().second; }

  Scalar coefficient(const Index& index) const {
    auto it = find(index);
    return it == entries_.end() ? Scalar(0) : it->second;
  }

  bool has(const Index& index) const { return find(index) != entries_.end(); }

  /// this += factor * other
  void add_scaled(const SparseVector& other, const Scalar& factor) {
    if (is_zero(factor) || other.entries_.empty()) return;
    std::vector<Entry> merged;
    merged.reserve(entries_.size() + other.entries_.size());
    auto a = entries_.begin();
    auto b = other.entries_.begin();
    while (a != entries_.end() || b != other.entries_.end()) {
      if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
        merged.push_back(std::move(*a++));
      } else if (a == entries_.end() || b->first < a->first) {
        merged.emplace_back(b->first, factor * b->second);
        ++b;
      } else {
        Scalar sum = a->second + factor * b->second;
        if (!is_zero(sum)) merged.emplace_back(std::move(a->first), std::move(sum));
        ++a;
        ++b;
      }
    }
    entries_ = std::move(merged);
  }

  void scale(const Scalar& factor) {
    if (is_zero(factor)) {
      entries_.clear();
      return;
    }
    for (auto& entry : entries_) entry.second *= factor;
  }

  SparseVector& operator+=(const SparseVector& other) {
    add_scaled(other, Scalar(1));
    return *this;
  }
  SparseVector& operator-=(const SparseVector& other) {
    add_scaled(other, Scalar(-1));
    return *this;
  }
  friend SparseVector operator+(SparseVector a, const SparseVector& b) { return a += b; }
  friend SparseVector operator-(SparseVector a, const SparseVector& b) { return a -= b; }
  friend SparseVector operator*(const Scalar& factor, SparseVector v) {
    v.scale(factor);
    return v;
  }

  friend bool operator==(const SparseVector& a, const SparseVector& b) {
    if (a.entries_.size() != b.entries_.size()) return false;
    for (std::size_t k = 0; k < a.entries_.size(); ++k) {
      const auto& x = a.entries_[k];
      const auto& y = b.entries_[k];
      if (x.first < y.first || y.first < x.first || x.second != y.second) return false;
    }
    return true;
  }

 private:
  typename std::vector<Entry>::const_iterator find(const Index& index) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                               [](const Entry& e, const Index& i) { return e.first < i; });
    if (it != entries_.end() && !(index < it->first)) return it;
    return entries_.end();
  }

  std::vector<Entry> entries_;
};

/// Span of a set of sparse vectors, kept in reduced row-echelon form: every
/// row has a distinct pivot (its smallest index) with coefficient 1, and no
/// other row has a nonzero entry at that pivot.
///
/// Mutation is single-writer; a finished basis may be shared read-only.
template <class Index>
class SpanBasis {
 public:
  using Vector = SparseVector<Index>;

  std::size_t dimension() const { return rows_.size(); }

  /// Rows ordered by pivot.
  const std::map<Index, Vector>& rows() const { return rows_; }

  /// Residual of v after full elimination; zero iff v lies in the span.
  Vector reduce(const Vector& v) const {
    Vector residual = v;
    for (const auto& [index, coeff] : v.entries()) {
      auto row = rows_.find(index);
      // Rows vanish at every other pivot, so v's pivot coefficients stay
      // untouched while earlier rows are subtracted.
      if (row != rows_.end()) residual.add_scaled(row->second, -coeff);
    }
    return residual;
  }

  bool contains(const Vector& v) const { return reduce(v).is_zero_vector(); }

  /// Adds v to the span; returns whether the dimension grew.
  bool insert(const Vector& v) {
    Vector residual = reduce(v);
    if (residual.is_zero_vector()) return false;
    const Index pivot = residual.leading_index();
    residual.scale(Scalar(1) / residual.leading_coeff());
    for (auto& [row_pivot, row] : rows_) {
      Scalar c = row.coefficient(pivot);
      if (!is_zero(c)) row.add_scaled(residual, -c);
    }
    rows_.emplace(pivot, std::move(residual));
    return true;
  }

 private:
  std::map<Index, Vector> rows_;
};

}  // namespace sl2f
