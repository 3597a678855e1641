#pragma once

// Types of weight vectors (run lengths of equal entries), the refinement
// order on them, canonical representatives, and Poincare polynomials of the
// corresponding Schubert varieties.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "sl2fusion/errors.hpp"
#include "sl2fusion/fusion.hpp"

namespace sl2f {

/// (i_1, …, i_s), parts ≥ 1.
class Composition {
 public:
  Composition() = default;
  explicit Composition(std::vector<int> parts) : parts_(std::move(parts)) {
    require(!parts_.empty(), "composition must have at least one part");
    for (int p : parts_) require(p >= 1, "composition parts must be >= 1");
  }

  const std::vector<int>& parts() const { return parts_; }
  std::size_t length() const { return parts_.size(); }  // s
  int total() const {                                    // n
    int n = 0;
    for (int p : parts_) n += p;
    return n;
  }

  std::string str() const {
    std::string out = "{";
    for (std::size_t k = 0; k < parts_.size(); ++k) {
      if (k) out += ",";
      out += std::to_string(parts_[k]);
    }
    return out + "}";
  }

  friend bool operator==(const Composition&, const Composition&) = default;
  friend auto operator<=>(const Composition&, const Composition&) = default;

 private:
  std::vector<int> parts_;
};

/// All compositions of n, in lex order of parts.
inline std::vector<Composition> compositions_of(int n) {
  require(n >= 1, "compositions need n >= 1");
  std::vector<Composition> out;
  std::vector<int> parts;
  auto rec = [&](auto&& self, int rest) -> void {
    if (rest == 0) {
      out.emplace_back(parts);
      return;
    }
    for (int p = 1; p <= rest; ++p) {
      parts.push_back(p);
      self(self, rest - p);
      parts.pop_back();
    }
  };
  rec(rec, n);
  return out;
}

/// Run lengths of equal consecutive entries. Works for any weakly
/// increasing integer vector (bundle weights may be 0 or negative).
inline Composition type_of(const std::vector<int>& a) {
  require(!a.empty(), "type of an empty vector is undefined");
  std::vector<int> parts{1};
  for (std::size_t k = 1; k < a.size(); ++k) {
    require(a[k - 1] <= a[k], "vector must be weakly increasing");
    if (a[k] == a[k - 1]) {
      ++parts.back();
    } else {
      parts.push_back(1);
    }
  }
  return Composition(std::move(parts));
}

inline Composition type_of(const WeightVector& a) { return type_of(a.entries()); }

/// lo ≤ hi: every part of lo is a sum of consecutive parts of hi.
inline bool leq(const Composition& lo, const Composition& hi) {
  require(lo.total() == hi.total(), "compositions of different n are not comparable");
  std::size_t h = 0;
  for (int part : lo.parts()) {
    int sum = 0;
    while (sum < part && h < hi.length()) sum += hi.parts()[h++];
    if (sum != part) return false;
  }
  return h == hi.length();
}

/// (2^{i_1}, 3^{i_2}, …, (s+1)^{i_s})
inline WeightVector canonical_A(const Composition& c) {
  std::vector<int> a;
  for (std::size_t k = 0; k < c.length(); ++k) {
    a.insert(a.end(), static_cast<std::size_t>(c.parts()[k]), static_cast<int>(k) + 2);
  }
  return WeightVector(std::move(a));
}

/// Polynomial in q with only even powers; coefficient k is that of q^{2k}.
class PoincarePolynomial {
 public:
  PoincarePolynomial() : coeffs_{1} {}
  explicit PoincarePolynomial(std::vector<std::uint64_t> even_coeffs) : coeffs_(std::move(even_coeffs)) {
    while (coeffs_.size() > 1 && coeffs_.back() == 0) coeffs_.pop_back();
    if (coeffs_.empty()) coeffs_.push_back(0);
  }

  const std::vector<std::uint64_t>& even_coefficients() const { return coeffs_; }
  int degree() const { return 2 * (static_cast<int>(coeffs_.size()) - 1); }

  /// Coefficient of q^power.
  std::uint64_t coefficient(int power) const {
    if (power < 0 || power % 2 != 0) return 0;
    const auto k = static_cast<std::size_t>(power / 2);
    return k < coeffs_.size() ? coeffs_[k] : 0;
  }

  std::uint64_t at_one() const {
    std::uint64_t sum = 0;
    for (auto c : coeffs_) sum += c;
    return sum;
  }

  friend PoincarePolynomial operator*(const PoincarePolynomial& a, const PoincarePolynomial& b) {
    std::vector<std::uint64_t> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return PoincarePolynomial(std::move(out));
  }

  friend PoincarePolynomial operator+(const PoincarePolynomial& a, const PoincarePolynomial& b) {
    std::vector<std::uint64_t> out(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) out[i] += b.coeffs_[i];
    return PoincarePolynomial(std::move(out));
  }

  friend bool operator==(const PoincarePolynomial&, const PoincarePolynomial&) = default;

  std::string str() const {
    std::string out;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      if (coeffs_[k] == 0) continue;
      if (!out.empty()) out += " + ";
      const std::string c = std::to_string(coeffs_[k]);
      if (k == 0) {
        out += c;
      } else {
        if (coeffs_[k] != 1) out += c;
        out += k == 1 ? "q^2" : "q^" + std::to_string(2 * k);
      }
    }
    return out.empty() ? "0" : out;
  }

 private:
  std::vector<std::uint64_t> coeffs_;
};

/// ∏_α (1 + q² + … + q^{2 i_α})
inline PoincarePolynomial poincare(const Composition& c) {
  PoincarePolynomial p;
  for (int part : c.parts()) {
    p = p * PoincarePolynomial(std::vector<std::uint64_t>(static_cast<std::size_t>(part) + 1, 1));
  }
  return p;
}

/// P_{n} = q^{2n} + q^{2n-2} + P_{n-2}, from the orbit / boundary splitting.
inline PoincarePolynomial poincare_recursive_single(int n) {
  require(n >= 0, "need n >= 0");
  if (n == 0) return PoincarePolynomial({1});
  if (n == 1) return PoincarePolynomial({1, 1});
  std::vector<std::uint64_t> orbit(static_cast<std::size_t>(n) + 1, 0);
  orbit[static_cast<std::size_t>(n)] = 1;
  orbit[static_cast<std::size_t>(n - 1)] = 1;
  return PoincarePolynomial(std::move(orbit)) + poincare_recursive_single(n - 2);
}

}  // namespace sl2f
