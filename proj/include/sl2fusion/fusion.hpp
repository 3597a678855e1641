#pragma once

// Fusion modules M^A realized inside tensor products of wedge models, the
// submodules S_{i,i+1}(A), and the relations and monomial basis of M^{(2^n)}.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/container_hash/hash.hpp>

#include "sl2fusion/errors.hpp"
#include "sl2fusion/fock.hpp"
#include "sl2fusion/linalg.hpp"

namespace sl2f {

/// A = (a_1 ≤ … ≤ a_n), entries ≥ 1.
class WeightVector {
 public:
  WeightVector() = default;
  explicit WeightVector(std::vector<int> entries) : entries_(std::move(entries)) {
    for (int a : entries_) require(a >= 1, "weight vector entries must be >= 1");
    require(std::is_sorted(entries_.begin(), entries_.end()),
            "weight vector must be weakly increasing");
  }

  const std::vector<int>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  int operator[](std::size_t k) const { return entries_[k]; }
  int back() const { return entries_.back(); }

  /// ∏ a_i, the dimension of M^A.
  std::uint64_t product() const {
    std::uint64_t p = 1;
    for (int a : entries_) p *= static_cast<std::uint64_t>(a);
    return p;
  }

  friend bool operator==(const WeightVector&, const WeightVector&) = default;

 private:
  std::vector<int> entries_;
};

/// Truncations m_j = #{α : a_α ≥ j+1}, j = 1 … a_n − 1, of the wedge
/// factors hosting M^A.
inline std::vector<FactorShape> factor_shapes(const WeightVector& a, int block = 0) {
  std::vector<FactorShape> shapes;
  if (a.empty()) return shapes;
  for (int j = 1; j < a.back(); ++j) {
    const auto m = std::count_if(a.entries().begin(), a.entries().end(),
                                 [j](int x) { return x >= j + 1; });
    if (m > 0) shapes.push_back({static_cast<int>(m), block});
  }
  return shapes;
}

/// Map (weight, tdeg) → multiplicity.
class BigradedCharacter {
 public:
  BigradedCharacter() = default;
  explicit BigradedCharacter(std::map<Bigrade, std::size_t> terms) : terms_(std::move(terms)) {}

  const std::map<Bigrade, std::size_t>& terms() const { return terms_; }

  std::size_t coefficient(int weight, int tdeg) const {
    auto it = terms_.find({weight, tdeg});
    return it == terms_.end() ? 0 : it->second;
  }

  /// χ(1, 1)
  std::size_t total() const {
    std::size_t sum = 0;
    for (const auto& [g, mult] : terms_) sum += mult;
    return sum;
  }

  /// Character with tdeg shifted by `shift`.
  BigradedCharacter shifted(int shift) const {
    std::map<Bigrade, std::size_t> out;
    for (const auto& [g, mult] : terms_) out[{g.weight, g.tdeg + shift}] = mult;
    return BigradedCharacter(std::move(out));
  }

  friend bool operator==(const BigradedCharacter&, const BigradedCharacter&) = default;

 private:
  std::map<Bigrade, std::size_t> terms_;
};

/// Interns state keys as dense ids in first-encounter order.
class KeyDictionary {
 public:
  std::uint32_t intern(const StateKey& key) {
    auto [it, inserted] = ids_.try_emplace(key, static_cast<std::uint32_t>(ids_.size()));
    return it->second;
  }
  std::optional<std::uint32_t> find(const StateKey& key) const {
    auto it = ids_.find(key);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t size() const { return ids_.size(); }

 private:
  struct Hash {
    std::size_t operator()(const StateKey& key) const {
      return boost::hash_range(key.begin(), key.end());
    }
  };
  std::unordered_map<StateKey, std::uint32_t, Hash> ids_;
};

/// A span decomposed into bihomogeneous pieces. Each piece interns its
/// own keys as dense ids, so pivots follow first-encounter order of the
/// keys. Pieces may be retired (basis and keys dropped, dimension kept)
/// once no further vectors can land in them.
class GradedSpan {
 public:
  using Basis = SpanBasis<std::uint32_t>;
  struct Piece {
    KeyDictionary keys;
    Basis basis;
  };

  std::size_t dimension() const { return dimension_; }
  const std::map<Bigrade, Piece>& pieces() const { return pieces_; }
  bool has_retired_pieces() const { return !retired_.empty(); }

  /// Keys currently interned across live pieces.
  std::size_t ambient_keys_seen() const {
    std::size_t n = 0;
    for (const auto& [g, piece] : pieces_) n += piece.keys.size();
    return n;
  }

  /// Inserts a bihomogeneous state; returns whether the span grew.
  bool insert_homogeneous(const WedgeState& state) {
    if (state.is_zero()) return false;
    const Bigrade g = bigrade(state.coefficients().leading_index(), state.layout());
    require(!retired_.contains(g), "insertion into a retired piece");
    Piece& piece = pieces_[g];
    std::vector<std::pair<std::uint32_t, Scalar>> terms;
    terms.reserve(state.coefficients().size());
    for (const auto& [key, coeff] : state.coefficients().entries()) {
      terms.emplace_back(piece.keys.intern(key), coeff);
    }
    if (piece.basis.insert(SparseVector<std::uint32_t>::from_terms(std::move(terms)))) {
      ++dimension_;
      return true;
    }
    return false;
  }

  /// Drops the pieces with weight below `weight`, keeping their dimensions.
  void retire_below(int weight) {
    for (auto it = pieces_.begin(); it != pieces_.end();) {
      if (it->first.weight >= weight) {
        ++it;
        continue;
      }
      retired_[it->first] = it->second.basis.dimension();
      it = pieces_.erase(it);
    }
  }

  /// Membership for an arbitrary (not necessarily homogeneous) state.
  bool contains(const WedgeState& state) const {
    if (has_retired_pieces()) throw InvalidInput("membership test on a span with retired pieces");
    std::map<Bigrade, std::vector<std::pair<std::uint32_t, Scalar>>> split;
    for (const auto& [key, coeff] : state.coefficients().entries()) {
      const Bigrade g = bigrade(key, state.layout());
      auto piece = pieces_.find(g);
      if (piece == pieces_.end()) return false;
      auto id = piece->second.keys.find(key);
      if (!id) return false;  // coordinate never touched by the span
      split[g].emplace_back(*id, coeff);
    }
    for (auto& [g, terms] : split) {
      const Basis& basis = pieces_.at(g).basis;
      if (!basis.contains(SparseVector<std::uint32_t>::from_terms(std::move(terms)))) return false;
    }
    return true;
  }

  /// Character with tdeg shifted so that `origin` sits at 0.
  BigradedCharacter character(int origin) const {
    std::map<Bigrade, std::size_t> terms;
    for (const auto& [g, dim] : retired_) {
      if (dim > 0) terms[{g.weight, g.tdeg - origin}] = dim;
    }
    for (const auto& [g, piece] : pieces_) {
      if (piece.basis.dimension() > 0) terms[{g.weight, g.tdeg - origin}] = piece.basis.dimension();
    }
    return BigradedCharacter(std::move(terms));
  }

 private:
  std::map<Bigrade, Piece> pieces_;
  std::map<Bigrade, std::size_t> retired_;
  std::size_t dimension_ = 0;
};

struct Generator {
  Current kind = Current::E;
  int mode = 0;
  std::optional<int> block;
};

inline constexpr std::size_t kDefaultDimensionCap = 100000;

/// Breadth-first closure of a cyclic vector under pairwise commuting
/// generators, level by level in monomial length.
///
/// Monomials within a level are inserted in lex order of their exponent
/// vectors. That order is multiplicative, so the monomials whose vectors
/// are not in the span of smaller ones form an order ideal; each level only
/// extends those, each monomial reached once through its largest generator.
///
/// Every generator raises the h_0-weight by 2, so with `keep_basis` false the
/// pieces of a finished level are retired and only their dimensions kept.
inline GradedSpan close_cyclic(const WedgeState& cyclic, const std::vector<Generator>& generators,
                               std::size_t cap, bool keep_basis = true) {
  struct Node {
    std::vector<int> exponents;
    std::size_t last = 0;  // largest generator index used
    WedgeState vector;
  };
  struct Candidate {
    std::vector<int> exponents;
    std::size_t parent = 0;
    std::size_t generator = 0;
  };
  GradedSpan span;
  if (!span.insert_homogeneous(cyclic)) return span;
  std::vector<Node> frontier;
  frontier.push_back({std::vector<int>(generators.size(), 0), 0, cyclic});
  while (!frontier.empty()) {
    std::vector<Candidate> candidates;
    for (std::size_t p = 0; p < frontier.size(); ++p) {
      for (std::size_t g = frontier[p].last; g < generators.size(); ++g) {
        Candidate c{frontier[p].exponents, p, g};
        ++c.exponents[g];
        candidates.push_back(std::move(c));
      }
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const Candidate& a, const Candidate& b) { return a.exponents > b.exponents; });
    std::vector<Node> next;
    for (auto& c : candidates) {
      const auto& gen = generators[c.generator];
      WedgeState image = apply_current(gen.kind, gen.mode, frontier[c.parent].vector, gen.block);
      if (!span.insert_homogeneous(image)) continue;
      if (span.dimension() > cap) {
        throw ResourceLimit("module dimension exceeds cap of " + std::to_string(cap));
      }
      next.push_back({std::move(c.exponents), c.generator, std::move(image)});
    }
    if (!keep_basis && !next.empty()) {
      span.retire_below(bigrade(next.front().vector.coefficients().leading_index(),
                                next.front().vector.layout())
                            .weight + 1);
    }
    frontier = std::move(next);
  }
  return span;
}

struct FusionModule {
  WeightVector weights;
  std::shared_ptr<const FactorLayout> layout;
  WedgeState cyclic;
  GradedSpan span;
  /// tdeg normalized so the cyclic vector sits at 0.
  BigradedCharacter character;

  std::size_t dimension() const { return span.dimension(); }
};

inline std::vector<Generator> global_e_generators(std::size_t n) {
  std::vector<Generator> gens;
  for (std::size_t j = 0; j < n; ++j) gens.push_back({Current::E, static_cast<int>(j), std::nullopt});
  return gens;
}

inline int cyclic_tdeg(const WedgeState& cyclic) {
  return bigrade(cyclic.coefficients().leading_index(), cyclic.layout()).tdeg;
}

/// M^A = C[e_0, …, e_{n-1}] · v_A.
///
/// With `keep_basis` false only the character survives (lower memory); the
/// span then rejects membership queries.
inline FusionModule build_module(const WeightVector& a, std::size_t cap = kDefaultDimensionCap,
                                 bool keep_basis = true) {
  FusionModule mod;
  mod.weights = a;
  mod.layout = make_layout(factor_shapes(a));
  mod.cyclic = top_wedge(mod.layout);
  mod.span = close_cyclic(mod.cyclic, global_e_generators(a.size()), cap, keep_basis);
  mod.character = mod.span.character(cyclic_tdeg(mod.cyclic));
  return mod;
}

inline BigradedCharacter character(const WeightVector& a, std::size_t cap = kDefaultDimensionCap) {
  return build_module(a, cap).character;
}

/// e^{(n)}(z) = e_{n-1} + z e_{n-2} + … + z^{n-1} e_0 applied i times to the
/// top wedge of one truncation-n factor, as z-coefficients.
inline std::vector<WedgeState> current_series_power(int n, int power) {
  require(n >= 1 && power >= 0, "need n >= 1 and a non-negative power");
  auto layout = make_layout({{n, 0}});
  std::vector<WedgeState> coeffs{top_wedge(layout)};
  for (int r = 0; r < power; ++r) {
    std::vector<WedgeState> next(coeffs.size() + static_cast<std::size_t>(n - 1),
                                 WedgeState(layout, {}));
    for (std::size_t d = 0; d < coeffs.size(); ++d) {
      if (coeffs[d].is_zero()) continue;
      for (int k = 0; k < n; ++k) {
        next[d + static_cast<std::size_t>(n - 1 - k)] += apply_current(Current::E, k, coeffs[d]);
      }
    }
    coeffs = std::move(next);
  }
  return coeffs;
}

struct RelationsReport {
  bool ok = true;
  /// First (power i, z-degree k) whose coefficient should vanish but does not.
  std::optional<std::pair<int, int>> violation;
};

/// Checks that e^{(n)}(z)^i · (v_0∧…∧v_{n-1}) is divisible by z^{n(i-1)}
/// for i = 1 … i_max.
inline RelationsReport check_relations(int n, int i_max) {
  require(n >= 1 && i_max >= 1, "need n >= 1 and i_max >= 1");
  RelationsReport report;
  for (int i = 1; i <= i_max; ++i) {
    const auto coeffs = current_series_power(n, i);
    const int bound = n * (i - 1);
    for (int k = 0; k < bound && k < static_cast<int>(coeffs.size()); ++k) {
      if (!coeffs[static_cast<std::size_t>(k)].is_zero()) {
        report.ok = false;
        report.violation = std::make_pair(i, k);
        return report;
      }
    }
  }
  return report;
}

/// e-monomial e_{i_1} … e_{i_k}, modes weakly increasing.
using EMonomial = std::vector<int>;

/// All e_{i_1}…e_{i_k} with 0 ≤ i_1 ≤ … ≤ i_k ≤ n − k, k = 0 … n.
inline std::vector<EMonomial> monomial_basis(int n) {
  require(n >= 1, "need n >= 1");
  std::vector<EMonomial> out;
  for (int k = 0; k <= n; ++k) {
    const int top = n - k;
    EMonomial mono(static_cast<std::size_t>(k), 0);
    while (true) {
      out.push_back(mono);
      int pos = k - 1;
      while (pos >= 0 && mono[static_cast<std::size_t>(pos)] == top) --pos;
      if (pos < 0) break;
      const int value = mono[static_cast<std::size_t>(pos)] + 1;
      for (int q = pos; q < k; ++q) mono[static_cast<std::size_t>(q)] = value;
    }
  }
  return out;
}

inline WedgeState apply_monomial(const EMonomial& mono, WedgeState state) {
  for (auto it = mono.rbegin(); it != mono.rend(); ++it) state = apply_current(Current::E, *it, state);
  return state;
}

enum class SubmoduleCase { Generic, EqualEntries };

struct SubmoduleS {
  int index = 0;  // 1-based i
  WeightVector parent;
  WeightVector first_block;   // A'
  WeightVector second_block;  // A''
  SubmoduleCase construction = SubmoduleCase::Generic;
  GradedSpan span;

  std::size_t dimension() const { return span.dimension(); }
};

inline void require_submodule_index(const WeightVector& a, int i) {
  require(i >= 1 && static_cast<std::size_t>(i) < a.size(), "submodule index must satisfy 1 <= i < n");
}

/// S_{i,i+1}(A). For a_i < a_{i+1} this is the span of
/// C[e_0, …, e_{n-1}, e^{(2)}_{n-i-1}] · (v_{A'} ⊗ v_{A''}) inside
/// M^{A'} ⊗ M^{A''}; for a_i = a_{i+1} it is M^A with entries i, i+1 deleted.
inline SubmoduleS build_submodule(const WeightVector& a, int i,
                                  std::size_t cap = kDefaultDimensionCap) {
  require_submodule_index(a, i);
  const auto n = a.size();
  const auto ai = static_cast<std::size_t>(i - 1);
  SubmoduleS sub;
  sub.index = i;
  sub.parent = a;
  std::vector<int> first;
  for (std::size_t k = 0; k < n; ++k) {
    if (k != ai && k != ai + 1) first.push_back(a[k]);
  }
  sub.first_block = WeightVector(first);

  if (a[ai] == a[ai + 1]) {
    sub.construction = SubmoduleCase::EqualEntries;
    FusionModule mod = build_module(sub.first_block, cap);
    sub.span = std::move(mod.span);
    return sub;
  }

  std::vector<int> second;
  for (std::size_t k = ai + 1; k < n; ++k) second.push_back(a[k] - a[ai] + 1);
  sub.second_block = WeightVector(second);

  // M^{A'} sits on the first a_i − 1 wedge factors of M^A, where its
  // entries are capped at a_i
  std::vector<int> capped = first;
  for (int& x : capped) x = std::min(x, a[ai]);
  std::vector<FactorShape> shapes = factor_shapes(WeightVector(capped), 0);
  for (const auto& s : factor_shapes(sub.second_block, 1)) shapes.push_back(s);
  auto layout = make_layout(std::move(shapes));
  std::vector<Generator> gens = global_e_generators(n);
  gens.push_back({Current::E, static_cast<int>(n) - i - 1, 1});
  sub.span = close_cyclic(top_wedge(layout), gens, cap);
  return sub;
}

/// (a_1, …, a_i − 1, a_{i+1} + 1, …, a_n), sorted.
inline WeightVector quotient_weights(const WeightVector& a, int i) {
  require_submodule_index(a, i);
  std::vector<int> q = a.entries();
  const auto ai = static_cast<std::size_t>(i - 1);
  require(q[ai] >= 2, "quotient entry a_i - 1 must stay >= 1");
  q[ai] -= 1;
  q[ai + 1] += 1;
  std::sort(q.begin(), q.end());
  return WeightVector(q);
}

struct ExactSequenceReport {
  std::size_t submodule_dim = 0;
  std::size_t module_dim = 0;
  std::uint64_t quotient_dim = 0;
  WeightVector quotient;
  bool holds = false;
};

/// dim S_{i,i+1}(A) + dim M^{quotient} = dim M^A.
inline ExactSequenceReport exact_sequence_check(const WeightVector& a, int i,
                                                std::size_t cap = kDefaultDimensionCap) {
  ExactSequenceReport r;
  r.quotient = quotient_weights(a, i);
  r.quotient_dim = r.quotient.product();
  r.submodule_dim = build_submodule(a, i, cap).dimension();
  r.module_dim = build_module(a, cap).dimension();
  r.holds = r.submodule_dim + r.quotient_dim == r.module_dim;
  return r;
}

/// Closed forms of S_{i,i+1}(A) available for i = 1, i = n − 1 and
/// a_i = a_{i+1}; nullopt otherwise.
inline std::optional<std::uint64_t> submodule_closed_form_dim(const WeightVector& a, int i) {
  require_submodule_index(a, i);
  const auto n = a.size();
  const auto ai = static_cast<std::size_t>(i - 1);
  if (a[ai] == a[ai + 1]) {
    std::uint64_t p = 1;
    for (std::size_t k = 0; k < n; ++k) {
      if (k != ai && k != ai + 1) p *= static_cast<std::uint64_t>(a[k]);
    }
    return p;
  }
  if (i == 1) {
    std::uint64_t p = static_cast<std::uint64_t>(a[1] - a[0] + 1);
    for (std::size_t k = 2; k < n; ++k) p *= static_cast<std::uint64_t>(a[k]);
    return p;
  }
  if (static_cast<std::size_t>(i) == n - 1) {
    std::uint64_t p = static_cast<std::uint64_t>(a[n - 1] - a[n - 2] + 1);
    for (std::size_t k = 0; k + 2 < n; ++k) p *= static_cast<std::uint64_t>(a[k]);
    return p;
  }
  return std::nullopt;
}

}  // namespace sl2f
