#pragma once

#include <cstdint>
#include <random>

#include "leibniz/matrix.hpp"

namespace leibniz::testing {

/// Rational in [-height, height] with denominator at most height, never 0.
inline Scalar random_rational(std::mt19937_64& rng, long height) {
  std::uniform_int_distribution<long> num(-height, height);
  std::uniform_int_distribution<long> den(1, height);
  long n = 0;
  while (n == 0) n = num(rng);
  return Scalar(mpq_class(mpz_class(n), mpz_class(den(rng))));
}

/// Invertible matrix with entries of height at most `height` (about half zero).
inline Matrix random_invertible(std::mt19937_64& rng, std::size_t n, long height = 8) {
  std::bernoulli_distribution keep(0.6);
  while (true) {
    Matrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        if (keep(rng)) m(r, c) = random_rational(rng, height);
    if (!determinant(m).is_zero()) return m;
  }
}

}  // namespace leibniz::testing
