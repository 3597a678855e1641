#pragma once

// Exact rational scalar. Values whose numerator and denominator fit in a
// signed 64-bit word are held inline; anything larger falls back to a GMP
// rational. The representation is canonical: lowest terms, positive
// denominator, and the inline form whenever the value fits, so equality is
// a field comparison.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <limits>
#include <memory>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace sl2f {

class Rational {
 public:
  Rational() = default;
  Rational(int value) : num_(value) {}   // NOLINT(google-explicit-constructor)
  Rational(long value) : num_(value) {   // NOLINT(google-explicit-constructor)
    if (value == std::numeric_limits<long>::min()) set_big(mpq_class(mpz_class(value)));
  }
  Rational(long long value) : Rational(static_cast<long>(value)) {}  // NOLINT

  Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    *this = from_i128(num, den);
  }

  explicit Rational(const mpq_class& q) { assign_mpq(q); }

  Rational(const Rational& other) : num_(other.num_), den_(other.den_) {
    if (other.big_) big_ = std::make_unique<mpq_class>(*other.big_);
  }
  Rational(Rational&&) noexcept = default;
  Rational& operator=(const Rational& other) {
    if (this != &other) {
      num_ = other.num_;
      den_ = other.den_;
      big_ = other.big_ ? std::make_unique<mpq_class>(*other.big_) : nullptr;
    }
    return *this;
  }
  Rational& operator=(Rational&&) noexcept = default;

  bool is_small() const { return !big_; }

  int sign() const {
    if (big_) return sgn(*big_);
    return (num_ > 0) - (num_ < 0);
  }

  mpq_class to_mpq() const {
    if (big_) return *big_;
    mpq_class q(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
    return q;
  }

  std::string str() const {
    if (big_) return big_->get_str();
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }

  double to_double() const { return big_ ? big_->get_d() : static_cast<double>(num_) / static_cast<double>(den_); }

  Rational operator-() const {
    Rational out(*this);
    if (out.big_) {
      *out.big_ = -*out.big_;
    } else {
      out.num_ = -out.num_;
    }
    return out;
  }

  Rational& operator+=(const Rational& o) { return *this = add(*this, o, false); }
  Rational& operator-=(const Rational& o) { return *this = add(*this, o, true); }
  Rational& operator*=(const Rational& o) { return *this = mul(*this, o); }
  Rational& operator/=(const Rational& o) { return *this = mul(*this, o.inverse()); }

  friend Rational operator+(const Rational& a, const Rational& b) { return add(a, b, false); }
  friend Rational operator-(const Rational& a, const Rational& b) { return add(a, b, true); }
  friend Rational operator*(const Rational& a, const Rational& b) { return mul(a, b); }
  friend Rational operator/(const Rational& a, const Rational& b) { return mul(a, b.inverse()); }

  friend bool operator==(const Rational& a, const Rational& b) {
    if (a.big_ || b.big_) return a.big_ && b.big_ && *a.big_ == *b.big_;
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (a.big_ || b.big_) {
      const int c = cmp(a.to_mpq(), b.to_mpq());
      return c < 0 ? std::strong_ordering::less
                   : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }
    const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
    const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
    return lhs <=> rhs;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

  Rational inverse() const {
    if (sign() == 0) throw std::domain_error("division by zero rational");
    if (big_) return Rational(mpq_class(1) / *big_);
    return from_i128(den_, num_);
  }

 private:
  using i128 = __int128;
  using u128 = unsigned __int128;

  static constexpr i128 kMax = std::numeric_limits<std::int64_t>::max();

  static u128 gcd(u128 a, u128 b) {
    if ((a >> 64) == 0 && (b >> 64) == 0) {
      return std::gcd(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
    }
    while (b != 0) {
      const u128 r = a % b;
      a = b;
      b = r;
    }
    return a;
  }

  static u128 magnitude(i128 x) { return x < 0 ? static_cast<u128>(-x) : static_cast<u128>(x); }

  static mpz_class to_mpz(i128 x) {
    const bool negative = x < 0;
    u128 m = magnitude(x);
    mpz_class hi(static_cast<unsigned long>(m >> 64));
    mpz_class lo(static_cast<unsigned long>(m & 0xFFFFFFFFFFFFFFFFULL));
    mpz_class out = (hi << 64) + lo;
    return negative ? mpz_class(-out) : out;
  }

  // num/den with |num|, |den| < 2^127; reduces and picks the representation.
  static Rational from_i128(i128 num, i128 den) {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const u128 g = den == 1 ? 1 : gcd(magnitude(num), static_cast<u128>(den));
    if (g > 1) {
      num /= static_cast<i128>(g);
      den /= static_cast<i128>(g);
    }
    Rational out;
    if (num <= kMax && num >= -kMax && den <= kMax) {
      out.num_ = static_cast<std::int64_t>(num);
      out.den_ = static_cast<std::int64_t>(den);
    } else {
      mpq_class q(to_mpz(num), to_mpz(den));
      out.set_big(q);
    }
    return out;
  }

  void set_big(const mpq_class& q) {
    big_ = std::make_unique<mpq_class>(q);
    num_ = 0;
    den_ = 1;
  }

  void assign_mpq(const mpq_class& q) {
    if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p() &&
        q.get_num() != std::numeric_limits<long>::min()) {
      num_ = q.get_num().get_si();
      den_ = q.get_den().get_si();
      big_.reset();
    } else {
      set_big(q);
    }
  }

  static Rational add(const Rational& a, const Rational& b, bool subtract) {
    if (!a.big_ && !b.big_) {
      const i128 bn = subtract ? -static_cast<i128>(b.num_) : static_cast<i128>(b.num_);
      if (a.den_ == 1 && b.den_ == 1) return from_i128(a.num_ + bn, 1);
      return from_i128(static_cast<i128>(a.num_) * b.den_ + bn * a.den_,
                       static_cast<i128>(a.den_) * b.den_);
    }
    Rational out;
    out.assign_mpq(subtract ? mpq_class(a.to_mpq() - b.to_mpq()) : mpq_class(a.to_mpq() + b.to_mpq()));
    return out;
  }

  static Rational mul(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      return from_i128(static_cast<i128>(a.num_) * b.num_, static_cast<i128>(a.den_) * b.den_);
    }
    Rational out;
    out.assign_mpq(mpq_class(a.to_mpq() * b.to_mpq()));
    return out;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<mpq_class> big_;
};

using Scalar = Rational;

inline Scalar make_scalar(std::int64_t num, std::int64_t den = 1) { return Scalar(num, den); }

inline bool is_zero(const Scalar& x) { return x.sign() == 0; }

inline std::string to_string(const Scalar& x) { return x.str(); }

}  // namespace sl2f
