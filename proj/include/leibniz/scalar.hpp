#pragma once

#include <compare>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace leibniz {

/// Exact Gaussian rational re + im*i. Both parts are kept as reduced GMP
/// rationals with positive denominators, so equality is structural.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long value) : re_(value) {}  // NOLINT(google-explicit-constructor)
  Scalar(mpq_class re, mpq_class im = 0);

  /// Parses the grammar
  ///   scalar := real | imag | real sign imag
  ///   real := rat ; imag := [rat] "i" ; rat := ["-"] int ["/" posint]
  /// Throws ParseError on malformed input or a zero denominator.
  static Scalar parse(std::string_view text);

  static Scalar i() { return Scalar(0, 1); }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  Scalar conj() const { return Scalar(re_, -im_); }
  /// |z|^2 = re^2 + im^2.
  mpq_class norm() const { return re_ * re_ + im_ * im_; }
  Scalar inverse() const;

  /// Largest absolute numerator or denominator over both parts.
  mpz_class height() const;
  bool height_at_most(long bound) const;

  /// Canonical text; parse(str()) == *this.
  std::string str() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend Scalar operator-(const Scalar& a) { return Scalar(-a.re_, -a.im_); }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  /// Lexicographic on (re, im); only used for canonical orderings.
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b);

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

/// Exact square root inside Q(i), if one exists. Returns the root with
/// positive real part (or positive imaginary part when the real part is 0).
std::optional<Scalar> sqrt_exact(const Scalar& z);

/// Exact square root of a nonnegative rational, if rational.
std::optional<mpq_class> sqrt_rational(const mpq_class& q);

}  // namespace leibniz
