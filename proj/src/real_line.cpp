#include "cbc_chaos/real_line.hpp"

#include <numeric>
#include <stdexcept>

#include "cbc_chaos/series.hpp"

namespace cbc_chaos {

DigitReal embed(const PhasePoint& x, int base) {
  if (x.stream().mode() != StreamMode::strategy)
    throw std::invalid_argument("only strategy-mode points embed");
  const int n = x.state().size();
  if (base == 0) base = default_digit_base(n);
  if (base < n)
    throw std::invalid_argument("digit base must cover the strategy alphabet");
  if (x.stream().period_is_constant(static_cast<std::uint64_t>(base) - 1))
    throw std::invalid_argument(
        "stream with an all-(B-1) tail has no canonical digit expansion");
  return DigitReal(n, base, x.state().value(), x.stream().preperiod(),
                   x.stream().period());
}

BlockState state_component(const DigitReal& x) {
  return BlockState(x.block_bits(), x.int_part());
}

MessageStream stream_component(const DigitReal& x) { return x.digits(); }

PhasePoint preimage(const DigitReal& x) {
  const auto n = static_cast<std::uint64_t>(x.block_bits());
  for (std::uint64_t d : x.digits().preperiod())
    if (d >= n)
      throw std::domain_error("digit names no state bit; no preimage");
  for (std::uint64_t d : x.digits().period())
    if (d >= n)
      throw std::domain_error("digit names no state bit; no preimage");
  MessageStream stream(StreamMode::strategy, n, x.digits().preperiod(),
                       x.digits().period());
  return PhasePoint(state_component(x), std::move(stream));
}

namespace {

DigitReal real_step_with_flip(const DigitReal& x, const CipherSpec& cipher,
                              int flip_offset) {
  if (cipher.n_bits != x.block_bits())
    throw std::invalid_argument("cipher width does not match the point");
  const std::uint64_t lead = x.digit(0);
  if (lead >= static_cast<std::uint64_t>(x.block_bits()))
    throw std::domain_error(
        "leading digit names no state bit; point is outside the embedded "
        "phase space");
  const int target =
      (static_cast<int>(lead) + flip_offset) % x.block_bits();
  const BlockState next_state =
      encrypt(cipher, flip_bit(state_component(x), target));
  const MessageStream rest = x.digits().shifted();
  return DigitReal(x.block_bits(), x.base(), next_state.value(),
                   rest.preperiod(), rest.period());
}

}  // namespace

DigitReal real_step(const DigitReal& x, const CipherSpec& cipher) {
  return real_step_with_flip(x, cipher, 0);
}

DigitReal real_step_wrong_bit(const DigitReal& x, const CipherSpec& cipher) {
  return real_step_with_flip(x, cipher, 1);
}

std::uint64_t Breakpoints::count() const {
  if (n_bits < 1 || n_bits > 50)
    throw std::invalid_argument("breakpoint count supported for N <= 50");
  return (std::uint64_t{1} << n_bits) * static_cast<std::uint64_t>(base) + 1;
}

bool Breakpoints::contains(const DigitReal& x) const {
  if (x.block_bits() != n_bits || x.base() != base)
    throw std::invalid_argument("point does not live on this interval");
  // x = n/B exactly iff every digit after the first is zero.
  return x.terminating() && x.last_nonzero_digit() <= 0;
}

std::optional<double> slope_at(const DigitReal& x) {
  const Breakpoints bp{x.block_bits(), x.base()};
  if (bp.contains(x)) return std::nullopt;
  return static_cast<double>(x.base());
}

bool in_exceptional_set(const DigitReal& x, std::uint64_t horizon,
                        const CipherSpec& cipher) {
  (void)cipher;  // the digit tail alone decides membership
  if (!x.terminating()) return false;
  // Iterate k has digit stream shifted k places, so the first iterate on a
  // breakpoint is the index of the last nonzero digit (clamped to 0).
  const std::int64_t last = x.last_nonzero_digit();
  const std::uint64_t first_hit =
      last <= 0 ? 0 : static_cast<std::uint64_t>(last);
  return first_hit <= horizon;
}

DistanceValue int_bits_distance(const DigitReal& x, const DigitReal& y) {
  if (x.block_bits() != y.block_bits() || x.base() != y.base())
    throw std::invalid_argument("points live on different intervals");
  return state_distance(state_component(x), state_component(y));
}

namespace {

std::uint64_t digit_diff(const DigitReal& x, const DigitReal& y,
                         std::uint64_t k) {
  const std::uint64_t a = x.digit(k);
  const std::uint64_t b = y.digit(k);
  return a > b ? a - b : b - a;
}

}  // namespace

DistanceValue digit_series_distance(const DigitReal& x, const DigitReal& y,
                                    int terms) {
  if (x.block_bits() != y.block_bits() || x.base() != y.base())
    throw std::invalid_argument("points live on different intervals");
  const auto base = static_cast<std::uint64_t>(x.base());
  const double value = truncated_series(
      base, terms, [&](std::uint64_t k) { return digit_diff(x, y, k); });
  // Tail of sum_{k>terms} (B-1)/B^k is exactly B^-terms.
  const double bound = std::pow(static_cast<double>(base), -terms);
  return {value, bound};
}

Rational digit_series_distance_exact(const DigitReal& x, const DigitReal& y) {
  if (x.block_bits() != y.block_bits() || x.base() != y.base())
    throw std::invalid_argument("points live on different intervals");
  const std::uint64_t pre =
      std::max(x.digits().preperiod().size(), y.digits().preperiod().size());
  const std::uint64_t lcm = std::lcm<std::uint64_t>(
      x.digits().period().size(), y.digits().period().size());
  return periodic_series_exact(
      static_cast<std::uint64_t>(x.base()), pre, lcm,
      [&](std::uint64_t k) { return digit_diff(x, y, k); });
}

DistanceValue refined_distance(const DigitReal& x, const DigitReal& y,
                               int terms) {
  const DistanceValue de = int_bits_distance(x, y);
  const DistanceValue ds = digit_series_distance(x, y, terms);
  return {de.value + ds.value, ds.truncation_error_bound};
}

Rational refined_distance_exact(const DigitReal& x, const DigitReal& y) {
  const DistanceValue de = int_bits_distance(x, y);
  return Rational(static_cast<long>(de.value)) +
         digit_series_distance_exact(x, y);
}

DistanceValue euclidean_distance(const DigitReal& x, const DigitReal& y) {
  return {to_double(euclidean_distance_exact(x, y)), 0.0};
}

Rational euclidean_distance_exact(const DigitReal& x, const DigitReal& y) {
  if (x.block_bits() != y.block_bits() || x.base() != y.base())
    throw std::invalid_argument("points live on different intervals");
  Rational diff = x.value_exact() - y.value_exact();
  if (diff < 0) diff = -diff;
  return diff;
}

DigitReal nines_witness(int n, int n_bits, int base) {
  if (n < 1) throw std::invalid_argument("witness index must be >= 1");
  std::vector<std::uint64_t> digits(static_cast<std::size_t>(n),
                                    static_cast<std::uint64_t>(base) - 1);
  return DigitReal(n_bits, base, 1, std::move(digits), {0});
}

}  // namespace cbc_chaos
