#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace powerops {

/// Arbitrary-precision integer used for every exact computation in the library.
using Int = mpz_class;
using Rational = mpq_class;

/// Thrown when an internal integrality invariant is violated. Never a valid
/// outcome of a correct computation.
class defect_error : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Input outside the supported grammar or domain (e.g. a presentation with
/// torsion coprime to the working prime).
class unsupported_input : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

inline Int ipow(const Int &base, unsigned long exponent) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

inline Int ipow(long base, unsigned long exponent) { return ipow(Int(base), exponent); }

inline Int factorial(unsigned long n) {
  Int r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

/// Generalized binomial n(n-1)...(n-k+1)/k!, valid for negative n.
inline Int binomial(const Int &n, long k) {
  if (k < 0) return 0;
  Int num = 1;
  for (long i = 0; i < k; ++i) num *= n - i;
  Int r;
  mpz_divexact(r.get_mpz_t(), num.get_mpz_t(), factorial(static_cast<unsigned long>(k)).get_mpz_t());
  return r;
}

inline Int exact_div(const Int &a, const Int &b) {
  Int r;
  mpz_divexact(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline bool divides(const Int &d, const Int &a) {
  if (d == 0) return a == 0;
  return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

/// Largest e with p^e | n (n != 0).
inline unsigned valuation(Int n, long p) {
  unsigned e = 0;
  if (n == 0) return 0;
  while (divides(Int(p), n)) {
    n /= p;
    ++e;
  }
  return e;
}

/// True when n = p^e for some e >= 1.
inline bool is_power_of(Int n, long p) {
  if (n < p) return false;
  while (divides(Int(p), n)) n /= p;
  return n == 1;
}

inline std::string to_string(const Int &x) { return x.get_str(); }

} // namespace powerops
