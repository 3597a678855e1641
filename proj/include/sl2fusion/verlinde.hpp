#pragma once

// Level-k sl_2 fusion ring, the limit multiplicities of the generalized
// affine Grassmannian sections, and the character stabilization check for
// the modules M^{A^{(i)}}, A^{(i)} = (B + 1, (b_n + 1)^{2i}).

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "sl2fusion/errors.hpp"
#include "sl2fusion/fusion.hpp"
#include "sl2fusion/schubert.hpp"

namespace sl2f {

/// Σ coeff[c]·[c], c = 0 … k.
struct FusionRingElement {
  int level = 0;
  std::vector<std::uint64_t> coeffs;

  static FusionRingElement basis(int k, int c) {
    require(k >= 0, "level must be >= 0");
    require(c >= 0 && c <= k, "weight must lie in [0, k]");
    FusionRingElement out{k, std::vector<std::uint64_t>(static_cast<std::size_t>(k) + 1, 0)};
    out.coeffs[static_cast<std::size_t>(c)] = 1;
    return out;
  }

  std::uint64_t operator[](int c) const { return coeffs[static_cast<std::size_t>(c)]; }

  friend bool operator==(const FusionRingElement&, const FusionRingElement&) = default;
};

/// [a]·[b] = Σ [c], c ≡ a+b mod 2, |a−b| ≤ c ≤ min(a+b, 2k−a−b).
inline FusionRingElement fuse(int k, int a, int b) {
  require(k >= 0, "level must be >= 0");
  require(a >= 0 && a <= k && b >= 0 && b <= k, "weights must lie in [0, k]");
  FusionRingElement out{k, std::vector<std::uint64_t>(static_cast<std::size_t>(k) + 1, 0)};
  const int hi = std::min(a + b, 2 * k - a - b);
  for (int c = std::abs(a - b); c <= hi; c += 2) out.coeffs[static_cast<std::size_t>(c)] += 1;
  return out;
}

/// Bilinear extension of fuse.
inline FusionRingElement fuse(const FusionRingElement& x, const FusionRingElement& y) {
  require(x.level == y.level, "fusion of elements at different levels");
  const int k = x.level;
  FusionRingElement out{k, std::vector<std::uint64_t>(static_cast<std::size_t>(k) + 1, 0)};
  for (int a = 0; a <= k; ++a) {
    if (x[a] == 0) continue;
    for (int b = 0; b <= k; ++b) {
      if (y[b] == 0) continue;
      const auto term = fuse(k, a, b);
      for (int c = 0; c <= k; ++c) out.coeffs[static_cast<std::size_t>(c)] += x[a] * y[b] * term[c];
    }
  }
  return out;
}

/// ((w_1 · w_2) · …) · w_m; the empty product is [0].
inline FusionRingElement product_chain(int k, const std::vector<int>& weights) {
  FusionRingElement acc = FusionRingElement::basis(k, 0);
  for (int w : weights) acc = fuse(acc, FusionRingElement::basis(k, w));
  return acc;
}

struct LimitDecomposition {
  std::vector<int> weights;  // B
  int level = 0;             // b_n + 1
  std::vector<std::uint64_t> coeffs;  // c_0 … c_{b_n}
  std::uint64_t boundary = 0;         // coefficient of [b_n + 1]
  bool boundary_flag = false;
};

inline LimitDecomposition limit_multiplicities(const BundleWeights& b) {
  for (int x : b.entries()) require(x >= 0, "limit multiplicities need non-negative weights");
  LimitDecomposition out;
  out.weights = b.entries();
  out.level = b.entries().back() + 1;
  const auto product = product_chain(out.level, b.entries());
  out.coeffs.assign(product.coeffs.begin(), product.coeffs.end() - 1);
  out.boundary = product.coeffs.back();
  out.boundary_flag = out.boundary != 0;
  return out;
}

/// At level Σ b_i nothing truncates: Σ coeff_c (c+1) = ∏ (b_i + 1).
inline bool classical_limit_check(const std::vector<int>& b) {
  int k = 0;
  std::vector<std::uint64_t> factors;
  for (int x : b) {
    require(x >= 0, "weights must be >= 0");
    k += x;
    factors.push_back(static_cast<std::uint64_t>(x) + 1);
  }
  const auto product = product_chain(k, b);
  std::uint64_t dims = 0;
  for (int c = 0; c <= k; ++c) dims += product[c] * static_cast<std::uint64_t>(c + 1);
  return dims == checked_product(factors);
}

/// B^{(i)} = (b_1, …, b_n, b_n^{2i})
inline std::vector<int> extended_weights(const std::vector<int>& b, int i) {
  require(!b.empty(), "weights must be non-empty");
  require(i >= 0, "need i >= 0");
  std::vector<int> out = b;
  out.insert(out.end(), 2 * static_cast<std::size_t>(i), b.back());
  return out;
}

/// dim H^0(O(B^{(i)})) = ∏ (b_j + 1) · (b_n + 1)^{2i}
inline std::uint64_t grassmannian_section_dims(const std::vector<int>& b, int i) {
  for (int x : b) require(x >= 0, "weights must be >= 0");
  std::vector<std::uint64_t> factors;
  for (int x : extended_weights(b, i)) factors.push_back(static_cast<std::uint64_t>(x) + 1);
  return checked_product(factors);
}

/// Top-anchored window of a character: depth d = tdeg_max − tdeg, weight
/// measured down from the largest weight occurring at depth 0.
using TopWindow = std::map<int, std::map<int, std::size_t>>;  // d → (w_ref − w) → mult

inline TopWindow top_window(const BigradedCharacter& ch, int deg_max) {
  TopWindow out;
  if (ch.terms().empty()) return out;
  int tdeg_max = ch.terms().begin()->first.tdeg;
  for (const auto& [g, mult] : ch.terms()) tdeg_max = std::max(tdeg_max, g.tdeg);
  std::optional<int> w_ref;
  for (const auto& [g, mult] : ch.terms()) {
    if (g.tdeg == tdeg_max && (!w_ref || g.weight > *w_ref)) w_ref = g.weight;
  }
  for (int d = 0; d <= deg_max; ++d) out[d];
  for (const auto& [g, mult] : ch.terms()) {
    const int d = tdeg_max - g.tdeg;
    if (d <= deg_max) out[d][*w_ref - g.weight] += mult;
  }
  return out;
}

struct StabilizationStep {
  int i = 0;  // compares i with i + 1
  std::vector<bool> equal_at_degree;  // d = 0 … deg_max
  bool all_equal() const {
    for (bool e : equal_at_degree) {
      if (!e) return false;
    }
    return true;
  }
};

struct StabilizationReport {
  std::vector<int> weights;
  int i_max = 0;
  int deg_max = 0;
  std::vector<std::size_t> dims;                // dim M^{A^{(i)}}
  std::vector<std::uint64_t> expected_dims;     // ∏ (b_j + 1) (b_n + 1)^{2i}
  std::vector<TopWindow> windows;
  std::vector<StabilizationStep> steps;
  /// Smallest i₀ < i_max with every comparison from i₀ on equal.
  std::optional<int> stabilized_from;
};

inline StabilizationReport character_stabilization(const std::vector<int>& b, int i_max, int deg_max,
                                                   std::size_t cap = kDefaultDimensionCap) {
  require(!b.empty(), "weights must be non-empty");
  require(std::is_sorted(b.begin(), b.end()), "weights must be weakly increasing");
  for (int x : b) require(x >= 0, "weights must be >= 0");
  require(i_max >= 0 && deg_max >= 0, "need i_max >= 0 and deg_max >= 0");
  StabilizationReport r;
  r.weights = b;
  r.i_max = i_max;
  r.deg_max = deg_max;
  for (int i = 0; i <= i_max; ++i) {
    std::vector<int> a = extended_weights(b, i);
    for (int& x : a) x += 1;
    r.expected_dims.push_back(grassmannian_section_dims(b, i));
    if (r.expected_dims.back() > cap) {
      throw ResourceLimit("module dimension exceeds cap of " + std::to_string(cap));
    }
    const FusionModule mod = build_module(WeightVector(a), cap, false);
    r.dims.push_back(mod.dimension());
    r.windows.push_back(top_window(mod.character, deg_max));
  }
  for (int i = 0; i < i_max; ++i) {
    StabilizationStep step{i, {}};
    for (int d = 0; d <= deg_max; ++d) {
      step.equal_at_degree.push_back(r.windows[static_cast<std::size_t>(i)].at(d) ==
                                     r.windows[static_cast<std::size_t>(i) + 1].at(d));
    }
    r.steps.push_back(std::move(step));
  }
  for (int i0 = i_max - 1; i0 >= 0 && r.steps[static_cast<std::size_t>(i0)].all_equal(); --i0) {
    r.stabilized_from = i0;
  }
  return r;
}

}  // namespace sl2f
