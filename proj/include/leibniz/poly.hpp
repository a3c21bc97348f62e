#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "leibniz/scalar.hpp"

namespace leibniz {

/// Upper bound on the number of variables of a Poly.
inline constexpr std::size_t kMaxVars = 48;

struct Monomial {
  std::array<std::uint8_t, kMaxVars> exp{};

  unsigned degree() const;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// Sparse multivariate polynomial over Q(i) with terms sorted by monomial.
class Poly {
 public:
  struct Term {
    Monomial m;
    Scalar c;
  };

  Poly() = default;
  Poly(const Scalar& c);  // NOLINT(google-explicit-constructor)
  Poly(long c) : Poly(Scalar(c)) {}  // NOLINT(google-explicit-constructor)
  static Poly var(std::size_t v);

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Coefficient of the constant monomial.
  Scalar constant() const;
  unsigned degree() const;
  unsigned degree_in(std::size_t v) const;
  unsigned min_degree_in(std::size_t v) const;
  bool contains(std::size_t v) const { return degree_in(v) > 0; }
  std::vector<std::size_t> variables() const;

  /// Coefficients of v^0, v^1, ..., v^d as polynomials free of v.
  std::vector<Poly> coefficients_in(std::size_t v) const;
  Poly substitute(std::size_t v, const Poly& q) const;
  Poly substitute(std::size_t v, const Scalar& value) const;
  /// Divides every term by v^k (k <= min_degree_in(v)).
  Poly divide_by_var(std::size_t v, unsigned k) const;
  Scalar evaluate(std::span<const Scalar> values) const;
  /// Renames variable v to to[v].
  Poly rename(std::span<const std::size_t> to) const;
  /// Scales so that the leading (largest monomial) coefficient is 1.
  Poly monic() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Scalar& s);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(const Poly& a);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Scalar& s) { return a *= s; }
  friend Poly operator*(const Scalar& s, Poly a) { return a *= s; }
  friend bool operator==(const Poly& a, const Poly& b);

  Poly pow(unsigned e) const;
  std::string str(std::span<const std::string> names = {}) const;

 private:
  static Poly from_unsorted(std::vector<Term> terms);
  std::vector<Term> terms_;
};

/// Dense univariate polynomial, coefficients in ascending degree.
using UPoly = std::vector<Scalar>;

namespace upoly {

void trim(UPoly& p);
int degree(const UPoly& p);  // -1 for the zero polynomial
Scalar evaluate(const UPoly& p, const Scalar& t);
UPoly derivative(const UPoly& p);
/// Quotient and remainder of a / b (b nonzero).
std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
/// Monic greatest common divisor.
UPoly gcd(UPoly a, UPoly b);
UPoly squarefree(const UPoly& p);
UPoly from_poly(const Poly& p, std::size_t v);

struct Roots {
  std::vector<Scalar> roots;  ///< distinct roots lying in Q(i)
  bool all_found = true;      ///< true when every complex root is among them
};

/// Distinct roots in Q(i). Degrees <= 2 are solved exactly; higher degrees
/// use the rational root theorem (real coefficients) plus deflation.
Roots roots(const UPoly& p);

}  // namespace upoly

}  // namespace leibniz
