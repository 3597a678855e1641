#pragma once

// Schubert varieties Sh_c as labels with computable invariants: isomorphism
// and morphism criteria, Poincare factorization along bundles, line bundles
// and their sections, the coordinate ring, and the flag-chain model with the
// SL_2(Q[t]/t^n) action.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sl2fusion/errors.hpp"
#include "sl2fusion/fock.hpp"
#include "sl2fusion/fusion.hpp"
#include "sl2fusion/linalg.hpp"
#include "sl2fusion/types.hpp"

namespace sl2f {

struct SchubertLabel {
  Composition type;

  explicit SchubertLabel(Composition c) : type(std::move(c)) {}
  int n() const { return type.total(); }
  std::size_t s() const { return type.length(); }
  WeightVector canonical_weights() const { return canonical_A(type); }
};

/// B = (b_1 ≤ … ≤ b_n), any integers.
class BundleWeights {
 public:
  explicit BundleWeights(std::vector<int> b) : b_(std::move(b)) {
    require(!b_.empty(), "bundle weights must be non-empty");
    require(std::is_sorted(b_.begin(), b_.end()), "bundle weights must be weakly increasing");
  }
  const std::vector<int>& entries() const { return b_; }
  std::size_t size() const { return b_.size(); }
  Composition type() const { return type_of(b_); }

 private:
  std::vector<int> b_;
};

inline bool isomorphic(const WeightVector& a, const WeightVector& b) {
  for (int x : a.entries()) require(x >= 2, "isomorphism criterion needs entries >= 2");
  for (int x : b.entries()) require(x >= 2, "isomorphism criterion needs entries >= 2");
  if (a.size() != b.size() || a.empty()) return a.size() == b.size();
  return type_of(a) == type_of(b);
}

/// Equivariant surjection Sh_from → Sh_to exists iff to ≤ from.
inline bool morphism_exists(const Composition& from, const Composition& to) { return leq(to, from); }

struct BundleSplit {
  Composition fiber;
  Composition base;
  bool identity_holds = false;
};

inline BundleSplit bundle_split(const Composition& c, std::size_t t) {
  require(t >= 1 && t + 1 <= c.length(), "split point must satisfy 1 <= t <= s-1");
  const auto& p = c.parts();
  BundleSplit out{Composition({p.begin(), p.begin() + static_cast<std::ptrdiff_t>(t)}),
                  Composition({p.begin() + static_cast<std::ptrdiff_t>(t), p.end()}), false};
  out.identity_holds = poincare(c) == poincare(out.fiber) * poincare(out.base);
  return out;
}

inline bool line_bundle_exists(const BundleWeights& b, const Composition& c) {
  require(static_cast<int>(b.size()) == c.total(), "bundle length must equal n");
  return leq(b.type(), c);
}

/// Degree of O(B) on the curve C_j: b_1 + … + b_{n-j}, j = 0 … n−1.
inline std::vector<long long> curve_degrees(const BundleWeights& b) {
  std::vector<long long> out;
  const auto n = b.size();
  for (std::size_t j = 0; j < n; ++j) {
    long long sum = 0;
    for (std::size_t k = 0; k < n - j; ++k) sum += b.entries()[k];
    out.push_back(sum);
  }
  return out;
}

/// ∏ x_k with overflow reported as a resource limit.
inline std::uint64_t checked_product(const std::vector<std::uint64_t>& xs) {
  std::uint64_t p = 1;
  for (auto x : xs) {
    if (__builtin_mul_overflow(p, x, &p)) throw ResourceLimit("product exceeds 64 bits");
  }
  return p;
}

/// dim H^0(O(B)) = dim M^{B+1}.
inline std::uint64_t sections_dim(const BundleWeights& b, const Composition& c) {
  for (int x : b.entries()) require(x >= 0, "sections need non-negative bundle weights");
  require(line_bundle_exists(b, c), "bundle does not exist on this Schubert variety");
  std::vector<std::uint64_t> factors;
  for (int x : b.entries()) factors.push_back(static_cast<std::uint64_t>(x) + 1);
  return checked_product(factors);
}

/// Rank of the lattice of admissible B, i.e. of vectors constant on blocks.
inline std::size_t picard_rank(const Composition& c) { return c.length(); }

/// Entry i: ∏_j (i(a_j − 1) + 1), i = 0 … i_max.
inline std::vector<std::uint64_t> coordinate_ring_dims(const WeightVector& a, int i_max) {
  require(i_max >= 0, "need i_max >= 0");
  std::vector<std::uint64_t> out;
  for (int i = 0; i <= i_max; ++i) {
    std::vector<std::uint64_t> factors;
    for (int x : a.entries()) {
      factors.push_back(static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(x - 1) + 1);
    }
    out.push_back(checked_product(factors));
  }
  return out;
}

/// Vector in C^2 ⊗ Q[t]/t^n, coordinates v_0..v_{n-1}, u_0..u_{n-1}.
using FlagVector = SparseVector<Particle>;

/// W_1 ⊇ … ⊇ W_s inside the 2n-dimensional space; W_0 is the whole space.
struct FlagChain {
  int truncation = 0;
  std::vector<SpanBasis<Particle>> subspaces;

  std::size_t ambient_dimension() const { return 2 * static_cast<std::size_t>(truncation); }
};

inline FlagVector basis_vector(ParticleKind kind, int mode) { return FlagVector(Particle{kind, mode}, Scalar(1)); }

inline FlagChain make_flag(int n, const std::vector<std::vector<FlagVector>>& spanning) {
  require(n >= 1, "flag truncation must be >= 1");
  FlagChain chain;
  chain.truncation = n;
  for (const auto& vectors : spanning) {
    SpanBasis<Particle> w;
    for (const auto& v : vectors) {
      for (const auto& [p, coeff] : v.entries()) {
        require(p.mode >= 0 && p.mode < n, "flag vector outside the ambient space");
      }
      w.insert(v);
    }
    chain.subspaces.push_back(std::move(w));
  }
  return chain;
}

/// W_α = span(all v_i, u_j for j ≥ i_s + … + i_{s−α+1}).
inline FlagChain canonical_flag(const Composition& c) {
  const int n = c.total();
  const auto s = c.length();
  std::vector<std::vector<FlagVector>> spanning;
  int threshold = 0;
  for (std::size_t alpha = 1; alpha <= s; ++alpha) {
    threshold += c.parts()[s - alpha];
    std::vector<FlagVector> w;
    for (int i = 0; i < n; ++i) w.push_back(basis_vector(ParticleKind::V, i));
    for (int j = threshold; j < n; ++j) w.push_back(basis_vector(ParticleKind::U, j));
    spanning.push_back(std::move(w));
  }
  return make_flag(n, spanning);
}

/// t^power · v, truncated.
inline FlagVector shift_t(const FlagVector& v, int power, int n) {
  std::vector<FlagVector::Entry> terms;
  for (const auto& [p, coeff] : v.entries()) {
    if (p.mode + power < n) terms.emplace_back(Particle{p.kind, p.mode + power}, coeff);
  }
  return FlagVector::from_terms(std::move(terms));
}

inline bool subspace_contains(const SpanBasis<Particle>& outer, const SpanBasis<Particle>& inner) {
  for (const auto& [pivot, row] : inner.rows()) {
    if (!outer.contains(row)) return false;
  }
  return true;
}

inline SpanBasis<Particle> whole_space(int n) {
  SpanBasis<Particle> w;
  for (int i = 0; i < n; ++i) {
    w.insert(basis_vector(ParticleKind::V, i));
    w.insert(basis_vector(ParticleKind::U, i));
  }
  return w;
}

/// Nesting, t-stability, dim W_α/W_{α+1} = i_{s−α} and t^{i_{s−α}} W_α ⊆ W_{α+1}.
inline bool flag_membership(const FlagChain& chain, const Composition& c) {
  require(chain.truncation == c.total(), "flag ambient space does not match n");
  const int n = chain.truncation;
  const auto s = c.length();
  if (chain.subspaces.size() != s) return false;
  std::vector<SpanBasis<Particle>> w{whole_space(n)};
  w.insert(w.end(), chain.subspaces.begin(), chain.subspaces.end());
  for (std::size_t alpha = 0; alpha < s; ++alpha) {
    const auto& outer = w[alpha];
    const auto& inner = w[alpha + 1];
    const int part = c.parts()[s - 1 - alpha];
    if (!subspace_contains(outer, inner)) return false;
    if (outer.dimension() - inner.dimension() != static_cast<std::size_t>(part)) return false;
    for (const auto& [pivot, row] : inner.rows()) {
      if (!inner.contains(shift_t(row, 1, n))) return false;
    }
    for (const auto& [pivot, row] : outer.rows()) {
      if (!inner.contains(shift_t(row, part, n))) return false;
    }
  }
  return true;
}

/// Truncated polynomial in Q[t]/t^n.
using TruncPoly = std::vector<Scalar>;

inline TruncPoly poly_mul(const TruncPoly& a, const TruncPoly& b) {
  TruncPoly out(a.size(), Scalar(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (is_zero(a[i])) continue;
    for (std::size_t j = 0; i + j < a.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

inline TruncPoly poly_add(const TruncPoly& a, const TruncPoly& b, bool subtract = false) {
  TruncPoly out(a);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = subtract ? out[i] - b[i] : out[i] + b[i];
  return out;
}

/// 2×2 matrix over Q[t]/t^n in the basis (v, u); e maps v to u.
class GroupElement {
 public:
  GroupElement(int n, TruncPoly a, TruncPoly b, TruncPoly c, TruncPoly d)
      : n_(n), m_{std::move(a), std::move(b), std::move(c), std::move(d)} {
    require(n >= 1, "truncation must be >= 1");
    for (const auto& p : m_) require(static_cast<int>(p.size()) == n, "entry has wrong truncation");
    TruncPoly one(static_cast<std::size_t>(n), Scalar(0));
    one[0] = Scalar(1);
    require(poly_add(poly_mul(m_[0], m_[3]), poly_mul(m_[1], m_[2]), true) == one,
            "group element must have determinant 1");
  }

  static GroupElement identity(int n) {
    TruncPoly one(static_cast<std::size_t>(n), Scalar(0)), zero = one;
    one[0] = Scalar(1);
    return GroupElement(n, one, zero, zero, one);
  }

  /// exp(z e_j) = 1 + z t^j e
  static GroupElement exp_e(int n, int j, const Scalar& z) {
    require(j >= 0, "mode must be >= 0");
    auto g = identity(n);
    if (j < n) g.m_[2][static_cast<std::size_t>(j)] = z;
    return g;
  }

  /// exp(z f_j) = 1 + z t^j f
  static GroupElement exp_f(int n, int j, const Scalar& z) {
    require(j >= 0, "mode must be >= 0");
    auto g = identity(n);
    if (j < n) g.m_[1][static_cast<std::size_t>(j)] = z;
    return g;
  }

  int truncation() const { return n_; }
  /// Entries a, b, c, d of [[a, b], [c, d]] acting on column (v-part, u-part).
  const TruncPoly& entry(int k) const { return m_[static_cast<std::size_t>(k)]; }

  friend GroupElement operator*(const GroupElement& x, const GroupElement& y) {
    require(x.n_ == y.n_, "group elements of different truncation");
    auto mul = [&](int i, int k, int l, int j) {
      return poly_add(poly_mul(x.entry(i), y.entry(k)), poly_mul(x.entry(l), y.entry(j)));
    };
    return GroupElement(x.n_, mul(0, 0, 1, 2), mul(0, 1, 1, 3), mul(2, 0, 3, 2), mul(2, 1, 3, 3));
  }

  FlagVector apply(const FlagVector& v) const {
    const auto n = static_cast<std::size_t>(n_);
    TruncPoly pv(n, Scalar(0)), pu(n, Scalar(0));
    for (const auto& [p, coeff] : v.entries()) {
      require(p.mode >= 0 && p.mode < n_, "vector outside the ambient space");
      (p.kind == ParticleKind::V ? pv : pu)[static_cast<std::size_t>(p.mode)] += coeff;
    }
    const TruncPoly qv = poly_add(poly_mul(m_[0], pv), poly_mul(m_[1], pu));
    const TruncPoly qu = poly_add(poly_mul(m_[2], pv), poly_mul(m_[3], pu));
    std::vector<FlagVector::Entry> terms;
    for (std::size_t i = 0; i < n; ++i) {
      terms.emplace_back(Particle{ParticleKind::V, static_cast<int>(i)}, qv[i]);
      terms.emplace_back(Particle{ParticleKind::U, static_cast<int>(i)}, qu[i]);
    }
    return FlagVector::from_terms(std::move(terms));
  }

 private:
  int n_;
  std::array<TruncPoly, 4> m_;
};

inline FlagChain group_act(const GroupElement& g, const FlagChain& chain) {
  require(g.truncation() == chain.truncation, "group element and flag have different truncation");
  FlagChain out;
  out.truncation = chain.truncation;
  for (const auto& w : chain.subspaces) {
    SpanBasis<Particle> image;
    for (const auto& [pivot, row] : w.rows()) image.insert(g.apply(row));
    out.subspaces.push_back(std::move(image));
  }
  return out;
}

/// Product of `factors` random exp(z e_j) / exp(z f_j) with z = p/q,
/// |p| ≤ 5, 1 ≤ q ≤ 4.
inline GroupElement random_group_element(int n, std::mt19937_64& rng, int factors = 4) {
  std::uniform_int_distribution<int> mode(0, n - 1), num(-5, 5), den(1, 4), coin(0, 1);
  GroupElement g = GroupElement::identity(n);
  for (int k = 0; k < factors; ++k) {
    const Scalar z(num(rng), den(rng));
    const int j = mode(rng);
    g = g * (coin(rng) ? GroupElement::exp_e(n, j, z) : GroupElement::exp_f(n, j, z));
  }
  return g;
}

}  // namespace sl2f
