#include "cbc_chaos/sampling.hpp"

#include <stdexcept>
#include <vector>

namespace cbc_chaos {
namespace {

std::vector<std::uint64_t> draw_symbols(std::uint64_t count,
                                        std::uint64_t alphabet, Rng& rng) {
  std::vector<std::uint64_t> out(count);
  for (auto& v : out) v = rng.below(alphabet);
  return out;
}

bool constant_at(const std::vector<std::uint64_t>& v, std::uint64_t symbol) {
  for (const auto x : v)
    if (x != symbol) return false;
  return true;
}

std::vector<std::uint64_t> draw_period(std::uint64_t per_len,
                                       std::uint64_t alphabet, Rng& rng,
                                       bool forbid_zero) {
  if (per_len == 0) throw std::invalid_argument("period length must be >= 1");
  if (alphabet < 2 && forbid_zero)
    throw std::invalid_argument(
        "a one-symbol alphabet cannot avoid the all-zero period");
  for (;;) {
    auto per = draw_symbols(per_len, alphabet, rng);
    if (alphabet > 1 && constant_at(per, alphabet - 1)) continue;
    if (forbid_zero && constant_at(per, 0)) continue;
    return per;
  }
}

}  // namespace

BlockState random_state(int n_bits, Rng& rng) {
  return BlockState(n_bits, rng.below(std::uint64_t{1} << n_bits));
}

MessageStream random_stream(StreamMode mode, int n_bits,
                            std::uint64_t pre_len, std::uint64_t per_len,
                            Rng& rng) {
  const std::uint64_t alphabet = mode == StreamMode::full_block
                                     ? std::uint64_t{1} << n_bits
                                     : static_cast<std::uint64_t>(n_bits);
  auto pre = draw_symbols(pre_len, alphabet, rng);
  auto per = draw_period(per_len, alphabet, rng, false);
  return MessageStream(mode, alphabet, std::move(pre), std::move(per));
}

PhasePoint random_phase_point(StreamMode mode, int n_bits,
                              std::uint64_t pre_len, std::uint64_t per_len,
                              Rng& rng) {
  BlockState state = random_state(n_bits, rng);
  MessageStream stream = random_stream(mode, n_bits, pre_len, per_len, rng);
  return PhasePoint(state, stream);
}

DigitReal random_digit_real(int n_bits, int base, std::uint64_t pre_len,
                            std::uint64_t per_len, Rng& rng, int digit_bound,
                            bool nonterminating) {
  const std::uint64_t alphabet =
      digit_bound > 0 ? static_cast<std::uint64_t>(digit_bound)
                      : static_cast<std::uint64_t>(base);
  if (alphabet > static_cast<std::uint64_t>(base))
    throw std::invalid_argument("digit bound exceeds the base");
  const std::uint64_t int_part = rng.below(std::uint64_t{1} << n_bits);
  auto pre = draw_symbols(pre_len, alphabet, rng);
  auto per = draw_period(per_len, alphabet, rng, nonterminating);
  return DigitReal(n_bits, base, int_part, std::move(pre), std::move(per));
}

}  // namespace cbc_chaos
