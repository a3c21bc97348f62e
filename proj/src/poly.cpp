#include "leibniz/poly.hpp"

#include <algorithm>
#include <sstream>

#include "leibniz/errors.hpp"

namespace leibniz {

unsigned Monomial::degree() const {
  unsigned d = 0;
  for (auto e : exp) d += e;
  return d;
}

Poly::Poly(const Scalar& c) {
  if (!c.is_zero()) terms_.push_back({Monomial{}, c});
}

Poly Poly::var(std::size_t v) {
  if (v >= kMaxVars) throw DimensionMismatch("polynomial variable index out of range");
  Poly p;
  Monomial m;
  m.exp[v] = 1;
  p.terms_.push_back({m, Scalar(1)});
  return p;
}

Poly Poly::from_unsorted(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.m < b.m; });
  Poly out;
  for (auto& t : terms) {
    if (!out.terms_.empty() && out.terms_.back().m == t.m) {
      out.terms_.back().c += t.c;
      if (out.terms_.back().c.is_zero()) out.terms_.pop_back();
    } else if (!t.c.is_zero()) {
      out.terms_.push_back(std::move(t));
    }
  }
  return out;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].m == Monomial{});
}

Scalar Poly::constant() const {
  if (!terms_.empty() && terms_[0].m == Monomial{}) return terms_[0].c;
  return Scalar(0);
}

unsigned Poly::degree() const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.m.degree());
  return d;
}

unsigned Poly::degree_in(std::size_t v) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max<unsigned>(d, t.m.exp[v]);
  return d;
}

unsigned Poly::min_degree_in(std::size_t v) const {
  if (terms_.empty()) return 0;
  unsigned d = 255;
  for (const auto& t : terms_) d = std::min<unsigned>(d, t.m.exp[v]);
  return d;
}

std::vector<std::size_t> Poly::variables() const {
  std::array<bool, kMaxVars> seen{};
  for (const auto& t : terms_)
    for (std::size_t v = 0; v < kMaxVars; ++v)
      if (t.m.exp[v]) seen[v] = true;
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < kMaxVars; ++v)
    if (seen[v]) out.push_back(v);
  return out;
}

std::vector<Poly> Poly::coefficients_in(std::size_t v) const {
  std::vector<std::vector<Term>> buckets(degree_in(v) + 1);
  for (const auto& t : terms_) {
    Term u = t;
    const unsigned e = u.m.exp[v];
    u.m.exp[v] = 0;
    buckets[e].push_back(std::move(u));
  }
  std::vector<Poly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(from_unsorted(std::move(b)));
  return out;
}

Poly Poly::substitute(std::size_t v, const Poly& q) const {
  if (!contains(v)) return *this;
  const auto coeffs = coefficients_in(v);
  // Horner in q.
  Poly acc = coeffs.back();
  for (std::size_t k = coeffs.size() - 1; k-- > 0;) acc = acc * q + coeffs[k];
  return acc;
}

Poly Poly::substitute(std::size_t v, const Scalar& value) const {
  if (!contains(v)) return *this;
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Term u = t;
    for (unsigned e = u.m.exp[v]; e > 0; --e) u.c *= value;
    u.m.exp[v] = 0;
    out.push_back(std::move(u));
  }
  return from_unsorted(std::move(out));
}

Poly Poly::rename(std::span<const std::size_t> to) const {
  std::vector<Term> out = terms_;
  for (auto& t : out) {
    Monomial m;
    for (std::size_t v = 0; v < to.size(); ++v) m.exp[to[v]] = t.m.exp[v];
    t.m = m;
  }
  return from_unsorted(std::move(out));
}

Poly Poly::divide_by_var(std::size_t v, unsigned k) const {
  Poly out = *this;
  for (auto& t : out.terms_) {
    if (t.m.exp[v] < k) throw Error("divide_by_var: term not divisible");
    t.m.exp[v] = static_cast<std::uint8_t>(t.m.exp[v] - k);
  }
  // Dividing every monomial by the same power preserves the order.
  return out;
}

Scalar Poly::evaluate(std::span<const Scalar> values) const {
  Scalar acc;
  for (const auto& t : terms_) {
    Scalar term = t.c;
    for (std::size_t v = 0; v < kMaxVars; ++v)
      for (unsigned e = t.m.exp[v]; e > 0; --e) term *= values[v];
    acc += term;
  }
  return acc;
}

Poly Poly::monic() const {
  if (terms_.empty()) return *this;
  Poly out = *this;
  const Scalar inv = terms_.back().c.inverse();
  for (auto& t : out.terms_) t.c *= inv;
  return out;
}

Poly& Poly::operator+=(const Poly& o) {
  std::vector<Term> merged;
  merged.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  while (a != terms_.end() || b != o.terms_.end()) {
    if (b == o.terms_.end() || (a != terms_.end() && a->m < b->m)) {
      merged.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->m < a->m) {
      merged.push_back(*b++);
    } else {
      Scalar c = a->c + b->c;
      if (!c.is_zero()) merged.push_back({a->m, std::move(c)});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) { return *this += -o; }

Poly& Poly::operator*=(const Scalar& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.c *= s;
  return *this;
}

Poly operator-(const Poly& a) {
  Poly out = a;
  for (auto& t : out.terms_) t.c = -t.c;
  return out;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  if (a.is_constant()) return b * a.terms_[0].c;
  if (b.is_constant()) return a * b.terms_[0].c;
  std::vector<Poly::Term> out;
  out.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) {
      Poly::Term u{s.m, s.c * t.c};
      for (std::size_t v = 0; v < kMaxVars; ++v) {
        const unsigned e = unsigned(u.m.exp[v]) + t.m.exp[v];
        if (e > 255) throw Error("polynomial exponent overflow");
        u.m.exp[v] = static_cast<std::uint8_t>(e);
      }
      out.push_back(std::move(u));
    }
  }
  return Poly::from_unsorted(std::move(out));
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t k = 0; k < a.terms_.size(); ++k)
    if (a.terms_[k].m != b.terms_[k].m || a.terms_[k].c != b.terms_[k].c) return false;
  return true;
}

Poly Poly::pow(unsigned e) const {
  Poly out(1);
  Poly base = *this;
  while (e) {
    if (e & 1u) out = out * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return out;
}

std::string Poly::str(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    os << "(" << it->c.str() << ")";
    for (std::size_t v = 0; v < kMaxVars; ++v) {
      if (!it->m.exp[v]) continue;
      os << "*" << (v < names.size() ? names[v] : "v" + std::to_string(v));
      if (it->m.exp[v] > 1) os << "^" << unsigned(it->m.exp[v]);
    }
  }
  return os.str();
}

namespace upoly {

void trim(UPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

int degree(const UPoly& p) {
  for (std::size_t k = p.size(); k-- > 0;)
    if (!p[k].is_zero()) return static_cast<int>(k);
  return -1;
}

Scalar evaluate(const UPoly& p, const Scalar& t) {
  Scalar acc;
  for (std::size_t k = p.size(); k-- > 0;) acc = acc * t + p[k];
  return acc;
}

UPoly derivative(const UPoly& p) {
  UPoly out;
  for (std::size_t k = 1; k < p.size(); ++k) out.push_back(p[k] * Scalar(static_cast<long>(k)));
  trim(out);
  return out;
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  const int db = degree(b);
  if (db < 0) throw SingularMatrix("polynomial division by zero");
  UPoly r = a;
  trim(r);
  const int da = degree(r);
  if (da < db) return {UPoly{}, r};
  UPoly q(static_cast<std::size_t>(da - db + 1));
  const Scalar lead_inv = b[static_cast<std::size_t>(db)].inverse();
  for (int k = da; k >= db; --k) {
    const Scalar c = r[static_cast<std::size_t>(k)] * lead_inv;
    if (c.is_zero()) continue;
    q[static_cast<std::size_t>(k - db)] = c;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k - db + j)] -= c * b[static_cast<std::size_t>(j)];
  }
  trim(r);
  trim(q);
  return {q, r};
}

namespace {

UPoly make_monic(UPoly p) {
  trim(p);
  if (p.empty()) return p;
  const Scalar inv = p.back().inverse();
  for (auto& c : p) c *= inv;
  return p;
}

}  // namespace

UPoly gcd(UPoly a, UPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(std::move(a));
}

UPoly squarefree(const UPoly& p) {
  UPoly q = make_monic(p);
  if (degree(q) <= 1) return q;
  const UPoly g = gcd(q, derivative(q));
  if (degree(g) <= 0) return q;
  return make_monic(divmod(q, g).first);
}

UPoly from_poly(const Poly& p, std::size_t v) {
  UPoly out(p.degree_in(v) + 1);
  for (const auto& t : p.terms()) {
    for (std::size_t w = 0; w < kMaxVars; ++w)
      if (w != v && t.m.exp[w]) throw Error("from_poly: polynomial is not univariate");
    out[t.m.exp[v]] += t.c;
  }
  trim(out);
  return out;
}

namespace {

// Trial division bound for factoring the constant term.
constexpr unsigned long kTrialBound = 100000;
// Cap on candidate Gaussian integers tested per polynomial.
constexpr std::size_t kCandidateCap = 50000;
// Highly composite norms are given up rather than enumerated.
constexpr std::size_t kDivisorCap = 100000;

// Positive divisors of n, or nullopt when n could not be fully factored.
std::optional<std::vector<mpz_class>> divisors(mpz_class n) {
  std::vector<std::pair<mpz_class, unsigned>> factors;
  for (unsigned long p = 2; p <= kTrialBound && p * p <= n; ++p) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      unsigned e = 0;
      while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
        mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
        ++e;
      }
      factors.emplace_back(mpz_class(p), e);
    }
  }
  if (n > 1) {
    if (mpz_class(kTrialBound) * kTrialBound < n && mpz_probab_prime_p(n.get_mpz_t(), 30) == 0) {
      return std::nullopt;
    }
    factors.emplace_back(n, 1);
  }
  std::vector<mpz_class> out{1};
  for (const auto& [p, e] : factors) {
    const std::size_t count = out.size();
    mpz_class pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t j = 0; j < count; ++j) out.push_back(out[j] * pk);
      if (out.size() > kDivisorCap) return std::nullopt;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Roots of a monic polynomial of degree 1 or 2.
std::vector<Scalar> low_degree_roots(const UPoly& p, bool& all_found) {
  const int d = degree(p);
  if (d == 1) return {-p[0] / p[1]};
  // t^2 + b t + c with p monic.
  const Scalar& b = p[1];
  const Scalar& c = p[0];
  const Scalar disc = b * b - Scalar(4) * c;
  auto s = sqrt_exact(disc);
  if (!s) {
    all_found = false;
    return {};
  }
  if (s->is_zero()) return {-b / Scalar(2)};
  return {(-b + *s) / Scalar(2), (-b - *s) / Scalar(2)};
}

mpz_class lcm_denominators(const UPoly& p) {
  mpz_class l = 1;
  for (const auto& c : p) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.re().get_den().get_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.im().get_den().get_mpz_t());
  }
  return l;
}

}  // namespace

Roots roots(const UPoly& input) {
  Roots out;
  UPoly p = squarefree(input);
  if (p.empty()) {
    out.all_found = false;
    return out;
  }
  if (degree(p) == 0) return out;

  if (p[0].is_zero()) {
    out.roots.push_back(Scalar(0));
    p.erase(p.begin());
  }

  if (degree(p) >= 3) {
    // s = D t turns p into a monic polynomial with Gaussian-integer
    // coefficients; its roots in Z[i] divide the constant term.
    const int n = degree(p);
    const mpz_class den = lcm_denominators(p);
    UPoly monic_int(p.size());
    mpz_class scale = 1;
    for (int k = n; k >= 0; --k) {
      monic_int[static_cast<std::size_t>(k)] = p[static_cast<std::size_t>(k)] * Scalar(mpq_class(scale));
      scale *= den;
    }
    const Scalar& b0 = monic_int[0];
    const mpz_class norm_b0 = mpz_class(b0.norm());
    mpz_class bound = 0;
    for (int k = 0; k < n; ++k) {
      mpz_class m = mpz_class(monic_int[static_cast<std::size_t>(k)].norm());
      if (m > bound) bound = m;
    }
    // Cauchy bound: |root| <= 1 + max |b_k|, so |root|^2 <= (1 + sqrt(bound))^2.
    mpz_class root_bound;
    mpz_sqrt(root_bound.get_mpz_t(), bound.get_mpz_t());
    root_bound += 2;
    const mpz_class norm_limit = root_bound * root_bound;

    auto divs = divisors(norm_b0);
    if (!divs) out.all_found = false;
    std::size_t work = 0;
    UPoly rest = monic_int;
    if (divs) {
      for (const auto& d : *divs) {
        if (d > norm_limit || degree(rest) <= 2) break;
        // Representations d = x^2 + y^2.
        mpz_class x = 0;
        while (x * x <= d && degree(rest) > 2) {
          if (++work > kCandidateCap) {
            out.all_found = false;
            break;
          }
          const mpz_class y2 = d - x * x;
          if (mpz_perfect_square_p(y2.get_mpz_t())) {
            mpz_class y;
            mpz_sqrt(y.get_mpz_t(), y2.get_mpz_t());
            for (int sx : {1, -1}) {
              for (int sy : {1, -1}) {
                if ((sx < 0 && x == 0) || (sy < 0 && y == 0)) continue;
                const Scalar z(mpq_class(sx * x), mpq_class(sy * y));
                if (degree(rest) > 0 && evaluate(rest, z).is_zero()) {
                  out.roots.push_back(z / Scalar(mpq_class(den)));
                  rest = divmod(rest, UPoly{-z, Scalar(1)}).first;
                }
              }
            }
          }
          ++x;
        }
        if (work > kCandidateCap) break;
      }
    }
    // Map the remaining factor back to t.
    if (degree(rest) <= 2 && degree(rest) >= 1) {
      const int m = degree(rest);
      UPoly back(rest.size());
      Scalar power = Scalar(1);
      for (int k = 0; k <= m; ++k) {
        back[static_cast<std::size_t>(k)] = rest[static_cast<std::size_t>(k)] * power;
        power *= Scalar(mpq_class(den));
      }
      // back(t) = rest(den t), made monic.
      back = make_monic(back);
      bool found = true;
      for (auto& r : low_degree_roots(back, found)) out.roots.push_back(r);
      if (!found) out.all_found = false;
      rest = UPoly{Scalar(1)};
    }
    if (degree(rest) > 0) out.all_found = false;
  } else if (degree(p) >= 1) {
    bool found = true;
    for (auto& r : low_degree_roots(make_monic(p), found)) out.roots.push_back(r);
    if (!found) out.all_found = false;
  }
  std::sort(out.roots.begin(), out.roots.end());
  out.roots.erase(std::unique(out.roots.begin(), out.roots.end()), out.roots.end());
  return out;
}

}  // namespace upoly

}  // namespace leibniz
