#include "leibniz/scalar.hpp"

#include <cctype>

#include "leibniz/errors.hpp"

namespace leibniz {

namespace {

mpz_class abs_max(const mpq_class& q) {
  mpz_class n = abs(q.get_num());
  return n > q.get_den() ? n : mpz_class(q.get_den());
}

std::string rat_str(const mpq_class& q) { return q.get_str(); }

// Cursor over the scalar grammar. Each production consumes from pos_.
class ScalarParser {
 public:
  explicit ScalarParser(std::string_view text) : text_(text) {}

  Scalar run() {
    if (text_.empty()) fail("empty scalar");
    // Leading rational (possibly followed by "i"), or a bare "i".
    mpq_class first;
    bool first_is_imag = false;
    if (peek() == 'i') {
      ++pos_;
      first = 1;
      first_is_imag = true;
    } else {
      first = rat();
      if (peek() == 'i') {
        ++pos_;
        first_is_imag = true;
      }
    }
    if (at_end()) return first_is_imag ? Scalar(0, first) : Scalar(first, 0);
    if (first_is_imag) fail("imaginary part must come last");
    const char sign = peek();
    if (sign != '+' && sign != '-') fail("expected sign before imaginary part");
    ++pos_;
    mpq_class im = 1;
    if (peek() != 'i') {
      if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected digits or 'i'");
      im = rat_unsigned();
    }
    if (peek() != 'i') fail("expected 'i'");
    ++pos_;
    if (!at_end()) fail("trailing characters");
    if (sign == '-') im = -im;
    return Scalar(first, im);
  }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  bool at_end() const { return pos_ >= text_.size(); }

  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("invalid scalar '" + std::string(text_) + "': " + why);
  }

  mpz_class digits() {
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (pos_ == start) fail("expected digits");
    return mpz_class(std::string(text_.substr(start, pos_ - start)), 10);
  }

  mpq_class rat_unsigned() {
    mpz_class num = digits();
    mpz_class den = 1;
    if (peek() == '/') {
      ++pos_;
      den = digits();
      if (den == 0) fail("zero denominator");
    }
    mpq_class q(num, den);
    q.canonicalize();
    return q;
  }

  mpq_class rat() {
    bool neg = false;
    if (peek() == '-') {
      neg = true;
      ++pos_;
    }
    if (neg && peek() == 'i') return mpq_class(-1);  // "-i"
    mpq_class q = rat_unsigned();
    return neg ? mpq_class(-q) : q;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Scalar::Scalar(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

Scalar Scalar::parse(std::string_view text) { return ScalarParser(text).run(); }

Scalar Scalar::inverse() const {
  if (is_zero()) throw SingularMatrix("division by zero scalar");
  const mpq_class n = norm();
  return Scalar(re_ / n, -im_ / n);
}

mpz_class Scalar::height() const {
  mpz_class a = abs_max(re_);
  mpz_class b = abs_max(im_);
  return a > b ? a : b;
}

bool Scalar::height_at_most(long bound) const { return height() <= bound; }

std::string Scalar::str() const {
  if (sgn(im_) == 0) return rat_str(re_);
  std::string imag;
  const mpq_class mag = abs(im_);
  imag = (mag == 1 ? std::string() : rat_str(mag)) + "i";
  if (sgn(re_) == 0) {
    if (sgn(im_) < 0) return mag == 1 ? "-1i" : "-" + imag;
    return imag;
  }
  return rat_str(re_) + (sgn(im_) < 0 ? "-" : "+") + imag;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class r = re_ * o.re_ - im_ * o.im_;
  mpq_class i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw SingularMatrix("division by zero scalar");
  if (sgn(o.im_) == 0) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  return *this *= o.inverse();
}

std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
  const int c = cmp(a.re_, b.re_);
  if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  const int d = cmp(a.im_, b.im_);
  if (d != 0) return d < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::optional<mpq_class> sqrt_rational(const mpq_class& q) {
  if (sgn(q) < 0) return std::nullopt;
  const mpz_class& n = q.get_num();
  const mpz_class& d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) {
    return std::nullopt;
  }
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  return mpq_class(rn, rd);
}

std::optional<Scalar> sqrt_exact(const Scalar& z) {
  const mpq_class& a = z.re();
  const mpq_class& b = z.im();
  if (sgn(b) == 0) {
    if (sgn(a) >= 0) {
      auto r = sqrt_rational(a);
      if (!r) return std::nullopt;
      return Scalar(*r, 0);
    }
    auto r = sqrt_rational(-a);
    if (!r) return std::nullopt;
    return Scalar(0, *r);
  }
  // (x + y i)^2 = a + b i  =>  x^2 = (a + |z|)/2, y = b / (2x).
  auto modulus = sqrt_rational(a * a + b * b);
  if (!modulus) return std::nullopt;
  auto x = sqrt_rational((a + *modulus) / 2);
  if (!x || sgn(*x) == 0) return std::nullopt;
  mpq_class y = b / (2 * *x);
  return Scalar(*x, y);
}

}  // namespace leibniz
