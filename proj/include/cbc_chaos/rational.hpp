// Exact rational arithmetic used as the source of truth for distance values
// and series sums. Floating point is a projection for reporting only.
#pragma once

#include <gmpxx.h>

#include <cstdint>

namespace cbc_chaos {

using Rational = mpq_class;

inline double to_double(const Rational& r) { return r.get_d(); }

// base^exp as an exact integer.
inline mpz_class pow_int(std::uint64_t base, std::uint64_t exp) {
  mpz_class result;
  mpz_ui_pow_ui(result.get_mpz_t(), base, exp);
  return result;
}

// base^-exp as an exact rational.
inline Rational pow_inv(std::uint64_t base, std::uint64_t exp) {
  Rational r(mpz_class(1), pow_int(base, exp));
  r.canonicalize();
  return r;
}

}  // namespace cbc_chaos
