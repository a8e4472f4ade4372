// Interval picture of the chaining dynamics. A strategy-mode phase point
// embeds into [0, 2^N) by writing the state as the integral part and the
// stream as the fractional digits; one dynamics step becomes the
// piecewise-linear interval map (flip the bit named by the leading digit,
// encrypt, shift the digits left). The embedding commutes with the step
// digit-for-digit, which the analysis module checks exhaustively.
#pragma once

#include <cstdint>
#include <optional>

#include "cbc_chaos/cipher.hpp"
#include "cbc_chaos/digit_real.hpp"
#include "cbc_chaos/phase_space.hpp"
#include "cbc_chaos/rational.hpp"

namespace cbc_chaos {

// Strategy-mode points only; the digit base defaults to max(10, N).
// Streams ending in an all-(B-1) tail are rejected: they name a real whose
// canonical expansion differs, so the embedding is not digit-exact there.
DigitReal embed(const PhasePoint& x, int base = 0);

// Integral-part bits as a state block.
BlockState state_component(const DigitReal& x);

// Fractional digits as a stream (alphabet = digit base).
MessageStream stream_component(const DigitReal& x);

// Reads the digits back into a strategy stream; requires every digit < N.
PhasePoint preimage(const DigitReal& x);

// One step of the interval map. Requires the leading digit to name a state
// bit (digit < N); otherwise the point lies outside the embedded phase
// space and a std::domain_error is thrown.
DigitReal real_step(const DigitReal& x, const CipherSpec& cipher);

// Negative-control variant that flips the wrong bit ((digit+1) mod N).
DigitReal real_step_wrong_bit(const DigitReal& x, const CipherSpec& cipher);

// The map's linearity cells are [n/B, (n+1)/B); their left endpoints form
// the breakpoint set.
struct Breakpoints {
  int n_bits;
  int base;
  std::uint64_t count() const;
  bool contains(const DigitReal& x) const;
};

// Slope of the map at x: the digit base everywhere off the breakpoint set,
// undefined on it.
std::optional<double> slope_at(const DigitReal& x);

// True when some iterate x, g(x), ..., g^horizon(x) lands on a breakpoint.
// Membership only depends on the digit tail, so the cipher never matters;
// it is part of the signature because the orbit formally depends on it.
bool in_exceptional_set(const DigitReal& x, std::uint64_t horizon,
                        const CipherSpec& cipher);

// Hamming distance between integral parts (exact).
DistanceValue int_bits_distance(const DigitReal& x, const DigitReal& y);

// Weighted digit series sum_{k>=1} |d_k - e_k| / B^k, truncated/exact.
DistanceValue digit_series_distance(const DigitReal& x, const DigitReal& y,
                                    int terms);
Rational digit_series_distance_exact(const DigitReal& x, const DigitReal& y);

// Product metric: integral-part Hamming + digit series.
DistanceValue refined_distance(const DigitReal& x, const DigitReal& y,
                               int terms);
Rational refined_distance_exact(const DigitReal& x, const DigitReal& y);

// Ordinary absolute difference |x - y|, computed from exact values.
DistanceValue euclidean_distance(const DigitReal& x, const DigitReal& y);
Rational euclidean_distance_exact(const DigitReal& x, const DigitReal& y);

// The sequence 1.9, 1.99, ... contrasting the two topologies: it converges
// to 2 in absolute value while staying at refined distance >= 1.
DigitReal nines_witness(int n, int n_bits = 10, int base = 10);

}  // namespace cbc_chaos
