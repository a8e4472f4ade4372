// Weighted series over eventually periodic integer sequences:
// sum_{k>=1} c(k-1) * base^-k. The exact form folds the periodic tail with
// a geometric closed form; the truncated form carries a certified tail
// bound computed by the caller from the sequence's max term.
#pragma once

#include <cstdint>
#include <stdexcept>

#include "cbc_chaos/rational.hpp"

namespace cbc_chaos {

// Exact-form work is linear in preperiod+period; keep it desk-scale.
constexpr std::uint64_t kMaxExactSpan = 16384;

template <typename TermFn>
Rational periodic_series_exact(std::uint64_t base, std::uint64_t preperiod_len,
                               std::uint64_t period_len, TermFn term) {
  if (period_len == 0) throw std::invalid_argument("period must be nonempty");
  if (preperiod_len + period_len > kMaxExactSpan)
    throw std::length_error("series span too large for the exact form");
  mpz_class head(0);
  for (std::uint64_t k = 0; k < preperiod_len; ++k)
    head = head * static_cast<unsigned long>(base) +
           static_cast<unsigned long>(term(k));
  mpz_class block(0);
  for (std::uint64_t j = 0; j < period_len; ++j)
    block = block * static_cast<unsigned long>(base) +
            static_cast<unsigned long>(term(preperiod_len + j));
  const mpz_class scale = pow_int(base, preperiod_len);
  Rational sum(head, scale);
  sum.canonicalize();
  Rational tail(block, (pow_int(base, period_len) - 1) * scale);
  tail.canonicalize();
  return sum + tail;
}

// Truncated sum of the first K terms, accumulated smallest-first.
template <typename TermFn>
double truncated_series(std::uint64_t base, int terms, TermFn term) {
  if (terms < 1) throw std::invalid_argument("need at least one series term");
  long double weight = 1.0L;
  for (int k = 0; k < terms; ++k) weight /= static_cast<long double>(base);
  long double sum = 0.0L;
  for (int k = terms; k >= 1; --k) {
    sum += static_cast<long double>(term(static_cast<std::uint64_t>(k - 1))) *
           weight;
    weight *= static_cast<long double>(base);
  }
  return static_cast<double>(sum);
}

}  // namespace cbc_chaos
