#pragma once

// Finite wedge models Λ^m(C^2 ⊗ C[t]/t^m), their tensor products, and the
// action of the current operators e_j, f_j, h_j.
//
// A single-factor monomial is a bitmask over the 2m particles of its
// factor: bit `mode` is v_mode and bit `m + mode` is u_mode. The canonical
// particle order (V before U, then ascending mode) is the bit order, so a
// sorted wedge is just the set of bits and the top wedge v_0∧…∧v_{m-1} has
// sign +1.
//
// Runs of identical consecutive factors (same truncation, same block) are
// stored in symmetric coordinates: a state is Σ c(M)·Sym(M) over multisets
// M of monomials, where Sym(M) is the sum of all distinct orderings of M.
// The key of Sym(M) lists the run's masks in ascending order. The cyclic
// vectors and every operator used here act diagonally, so all reachable
// states are symmetric within each run.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "sl2fusion/errors.hpp"
#include "sl2fusion/linalg.hpp"

namespace sl2f {

enum class ParticleKind : std::uint8_t { V = 0, U = 1 };

struct Particle {
  ParticleKind kind;
  int mode;
  friend auto operator<=>(const Particle&, const Particle&) = default;
};

/// Sorted wedge of particles inside one factor, as a bitmask.
struct WedgeMonomial {
  std::uint64_t bits = 0;
  friend auto operator<=>(const WedgeMonomial&, const WedgeMonomial&) = default;
};

inline constexpr int kMaxTruncation = 32;

inline int particle_bit(const Particle& p, int truncation) {
  return static_cast<int>(p.kind) * truncation + p.mode;
}

inline Particle bit_particle(int bit, int truncation) {
  return bit >= truncation ? Particle{ParticleKind::U, bit - truncation}
                           : Particle{ParticleKind::V, bit};
}

/// Sorts a particle list into canonical order. Returns the monomial and the
/// sign of the sorting permutation, or nullopt when a particle repeats (the
/// wedge vanishes).
inline std::optional<std::pair<WedgeMonomial, int>> canonical_monomial(
    std::span<const Particle> particles, int truncation) {
  require(truncation >= 0 && truncation <= kMaxTruncation, "truncation out of range");
  std::vector<int> bits;
  bits.reserve(particles.size());
  for (const auto& p : particles) {
    require(p.mode >= 0 && p.mode < truncation, "particle mode exceeds truncation");
    bits.push_back(particle_bit(p, truncation));
  }
  int sign = 1;
  // insertion sort, counting transpositions
  for (std::size_t i = 1; i < bits.size(); ++i) {
    for (std::size_t k = i; k > 0 && bits[k - 1] >= bits[k]; --k) {
      if (bits[k - 1] == bits[k]) return std::nullopt;
      std::swap(bits[k - 1], bits[k]);
      sign = -sign;
    }
  }
  WedgeMonomial m;
  for (int b : bits) m.bits |= std::uint64_t{1} << b;
  return std::make_pair(m, sign);
}

inline std::vector<Particle> particles_of(WedgeMonomial m, int truncation) {
  std::vector<Particle> out;
  for (int b = 0; b < 2 * truncation; ++b) {
    if ((m.bits >> b) & 1U) out.push_back(bit_particle(b, truncation));
  }
  return out;
}

struct FactorShape {
  int truncation = 0;
  /// Tensor block the factor belongs to; block-restricted operators act on
  /// one block only.
  int block = 0;
  friend bool operator==(const FactorShape&, const FactorShape&) = default;
};

/// Factor shapes plus the runs of identical factors derived from them.
class FactorLayout {
 public:
  explicit FactorLayout(std::vector<FactorShape> shapes) : shapes_(std::move(shapes)) {
    for (const auto& s : shapes_) {
      require(s.truncation >= 1 && s.truncation <= kMaxTruncation,
              "factor truncation must lie in [1, 32]");
    }
    std::size_t begin = 0;
    for (std::size_t k = 1; k <= shapes_.size(); ++k) {
      if (k == shapes_.size() || !(shapes_[k] == shapes_[begin])) {
        runs_.emplace_back(begin, k);
        begin = k;
      }
    }
    run_of_.resize(shapes_.size());
    for (std::size_t r = 0; r < runs_.size(); ++r) {
      for (std::size_t k = runs_[r].first; k < runs_[r].second; ++k) run_of_[k] = r;
    }
  }

  const std::vector<FactorShape>& shapes() const { return shapes_; }
  std::size_t size() const { return shapes_.size(); }
  const std::vector<std::pair<std::size_t, std::size_t>>& runs() const { return runs_; }
  std::size_t run_of(std::size_t factor) const { return run_of_[factor]; }

  friend bool operator==(const FactorLayout& a, const FactorLayout& b) {
    return a.shapes_ == b.shapes_;
  }

 private:
  std::vector<FactorShape> shapes_;
  std::vector<std::pair<std::size_t, std::size_t>> runs_;
  std::vector<std::size_t> run_of_;
};

/// One monomial per factor, sorted within runs of identical factors.
using StateKey = boost::container::small_vector<std::uint64_t, 4>;

class WedgeState {
 public:
  using Vector = SparseVector<StateKey>;

  WedgeState() : layout_(std::make_shared<const FactorLayout>(std::vector<FactorShape>{})) {}
  WedgeState(std::shared_ptr<const FactorLayout> layout, Vector coeffs)
      : layout_(std::move(layout)), coeffs_(std::move(coeffs)) {}

  const FactorLayout& layout() const { return *layout_; }
  const std::shared_ptr<const FactorLayout>& layout_ptr() const { return layout_; }
  const Vector& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.is_zero_vector(); }

  WedgeState& operator+=(const WedgeState& other) {
    coeffs_ += other.coeffs_;
    return *this;
  }

  friend bool operator==(const WedgeState& a, const WedgeState& b) {
    return a.layout() == b.layout() && a.coeffs_ == b.coeffs_;
  }

 private:
  std::shared_ptr<const FactorLayout> layout_;
  Vector coeffs_;
};

inline std::shared_ptr<const FactorLayout> make_layout(std::vector<FactorShape> shapes) {
  return std::make_shared<const FactorLayout>(std::move(shapes));
}

inline WedgeMonomial top_monomial(int truncation) {
  return {truncation == 0 ? 0 : (std::uint64_t{1} << truncation) - 1};
}

/// Pure tensor of top wedges v_0∧…∧v_{m-1}, coefficient 1.
inline WedgeState top_wedge(std::shared_ptr<const FactorLayout> layout) {
  StateKey key;
  for (const auto& s : layout->shapes()) key.push_back(top_monomial(s.truncation).bits);
  return WedgeState(layout, WedgeState::Vector(std::move(key), Scalar(1)));
}

inline WedgeState top_wedge(const std::vector<FactorShape>& shapes) {
  return top_wedge(make_layout(shapes));
}

/// Builds a state from one explicit monomial per factor, sorting runs.
/// Only meaningful when the caller supplies symmetric data; used by tests.
inline WedgeState basis_state(std::shared_ptr<const FactorLayout> layout, StateKey key,
                              Scalar coeff = Scalar(1)) {
  require(key.size() == layout->size(), "key length does not match layout");
  for (const auto& [b, e] : layout->runs()) std::sort(key.begin() + b, key.begin() + e);
  return WedgeState(layout, WedgeState::Vector(std::move(key), std::move(coeff)));
}

enum class Current { E, F, H };

namespace detail {

/// Image of one particle (bit) under the mode-j current in a truncation-m
/// factor: the replacement bit and scalar, or nullopt when killed.
inline std::optional<std::pair<int, int>> particle_image(Current kind, int bit, int j, int m) {
  const bool is_u = bit >= m;
  const int mode = is_u ? bit - m : bit;
  const int target = mode + j;
  if (target >= m) return std::nullopt;
  switch (kind) {
    case Current::E:
      if (is_u) return std::nullopt;
      return std::make_pair(m + target, 1);
    case Current::F:
      if (!is_u) return std::nullopt;
      return std::make_pair(target, 1);
    case Current::H:
      return is_u ? std::make_pair(m + target, 1) : std::make_pair(target, -1);
  }
  return std::nullopt;
}

}  // namespace detail

/// Calls `sink(image, coeff)` for each term of the image of a single-factor
/// monomial under a current: Leibniz rule, with the sign from re-sorting the
/// replaced particle into canonical position.
template <class Sink>
void for_each_image(Current kind, int mode, WedgeMonomial mono, int truncation, Sink&& sink) {
  const std::uint64_t x = mono.bits;
  for (std::uint64_t rem = x; rem != 0; rem &= rem - 1) {
    const int b = std::countr_zero(rem);
    auto image = detail::particle_image(kind, b, mode, truncation);
    if (!image) continue;
    const auto [nb, coeff] = *image;
    if (nb == b) {
      sink(mono, coeff);
      continue;
    }
    const std::uint64_t rest = x & ~(std::uint64_t{1} << b);
    if ((rest >> nb) & 1U) continue;
    const int lo = std::min(b, nb);
    const int hi = std::max(b, nb);
    const std::uint64_t between = rest & (((std::uint64_t{1} << hi) - 1) & ~((std::uint64_t{2} << lo) - 1));
    const int sign = (std::popcount(between) % 2 == 0) ? 1 : -1;
    sink(WedgeMonomial{rest | (std::uint64_t{1} << nb)}, sign * coeff);
  }
}

inline std::vector<std::pair<WedgeMonomial, int>> apply_to_monomial(Current kind, int mode,
                                                                    WedgeMonomial mono,
                                                                    int truncation) {
  std::vector<std::pair<WedgeMonomial, int>> out;
  for_each_image(kind, mode, mono, truncation,
                 [&out](WedgeMonomial m, int c) { out.emplace_back(m, c); });
  return out;
}

/// Applies x_j (x ∈ {e, f, h}) through the coproduct to every factor, or to
/// the factors of one block when `block` is given.
inline WedgeState apply_current(Current kind, int mode, const WedgeState& state,
                                std::optional<int> block = std::nullopt) {
  require(mode >= 0, "current mode must be non-negative");
  const FactorLayout& layout = state.layout();
  std::vector<std::pair<StateKey, Scalar>> terms;
  for (const auto& [key, coeff] : state.coefficients().entries()) {
    for (std::size_t p = 0; p < key.size(); ++p) {
      const FactorShape& shape = layout.shapes()[p];
      if (block && shape.block != *block) continue;
      const auto [run_begin, run_end] = layout.runs()[layout.run_of(p)];
      // one representative per distinct mask in the run
      if (p > run_begin && key[p - 1] == key[p]) continue;
      for_each_image(kind, mode, WedgeMonomial{key[p]}, shape.truncation,
                     [&, p = p, run_begin = run_begin, run_end = run_end](WedgeMonomial image,
                                                                           int sign) {
        StateKey next = key;
        next[p] = image.bits;
        long multiplicity = 1;
        if (run_end - run_begin > 1) {
          std::sort(next.begin() + static_cast<std::ptrdiff_t>(run_begin),
                    next.begin() + static_cast<std::ptrdiff_t>(run_end));
          multiplicity = std::count(next.begin() + static_cast<std::ptrdiff_t>(run_begin),
                                    next.begin() + static_cast<std::ptrdiff_t>(run_end), image.bits);
        }
        terms.emplace_back(std::move(next), coeff * Scalar(sign * multiplicity));
      });
    }
  }
  return WedgeState(state.layout_ptr(), WedgeState::Vector::from_terms(std::move(terms)));
}

struct Bigrade {
  int weight = 0;
  int tdeg = 0;
  friend auto operator<=>(const Bigrade&, const Bigrade&) = default;
};

/// h_0-weight (#U − #V) and t-degree (sum of modes) of a monomial tuple.
inline Bigrade bigrade(const StateKey& key, const FactorLayout& layout) {
  require(key.size() == layout.size(), "key length does not match layout");
  Bigrade g;
  for (std::size_t p = 0; p < key.size(); ++p) {
    const int m = layout.shapes()[p].truncation;
    for (int b = 0; b < 2 * m; ++b) {
      if (!((key[p] >> b) & 1U)) continue;
      if (b >= m) {
        g.weight += 1;
        g.tdeg += b - m;
      } else {
        g.weight -= 1;
        g.tdeg += b;
      }
    }
  }
  return g;
}

}  // namespace sl2f
