// Deterministic random generators for states, streams, phase points, and
// digit reals. Periods that sit constantly at the top symbol are resampled:
// such tails are the non-canonical expansions the embedding refuses.
#pragma once

#include <cstdint>

#include "cbc_chaos/block_state.hpp"
#include "cbc_chaos/digit_real.hpp"
#include "cbc_chaos/message_stream.hpp"
#include "cbc_chaos/phase_space.hpp"
#include "cbc_chaos/rng.hpp"

namespace cbc_chaos {

BlockState random_state(int n_bits, Rng& rng);

MessageStream random_stream(StreamMode mode, int n_bits,
                            std::uint64_t pre_len, std::uint64_t per_len,
                            Rng& rng);

PhasePoint random_phase_point(StreamMode mode, int n_bits,
                              std::uint64_t pre_len, std::uint64_t per_len,
                              Rng& rng);

// digit_bound = 0 draws digits from the full base; orbits of the interval
// map need digits below N, so dynamics callers pass digit_bound = n_bits.
// nonterminating resamples all-zero periods, which keeps the point (and its
// whole forward orbit) off the breakpoint set.
DigitReal random_digit_real(int n_bits, int base, std::uint64_t pre_len,
                            std::uint64_t per_len, Rng& rng,
                            int digit_bound = 0, bool nonterminating = true);

}  // namespace cbc_chaos
