// Point of [0, 2^N) held exactly: an N-bit integral part plus an eventually
// periodic base-B fractional digit stream. Construction normalizes away
// all-(B-1) tails, so every value keeps its unique canonical expansion and
// digitwise comparison decides real equality. Floating projections exist
// for reporting only; exact rationals are the source of truth.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cbc_chaos/block_state.hpp"
#include "cbc_chaos/message_stream.hpp"
#include "cbc_chaos/rational.hpp"

namespace cbc_chaos {

inline int default_digit_base(int n_bits) { return n_bits > 10 ? n_bits : 10; }

class DigitReal {
public:
  DigitReal(int n_bits, int base, std::uint64_t int_part,
            std::vector<std::uint64_t> pre_digits,
            std::vector<std::uint64_t> per_digits);

  int block_bits() const { return n_; }
  int base() const { return base_; }
  std::uint64_t int_part() const { return int_part_; }
  const MessageStream& digits() const { return digits_; }
  std::uint64_t digit(std::uint64_t k) const { return digits_.at(k); }

  // True when the fractional expansion ends in zeros.
  bool terminating() const { return digits_.period_is_constant(0); }
  // Index of the last nonzero digit, -1 when all digits are zero; only
  // meaningful for terminating expansions.
  std::int64_t last_nonzero_digit() const {
    return digits_.last_nonzero_index();
  }

  Rational value_exact() const;
  double to_float(int digits_kept = 64) const;

  // Adds sign * base^-position (position >= 1 counts fractional places).
  // Throws std::domain_error when the result leaves [0, 2^N).
  DigitReal offset_ulp(int position, int sign) const;

  bool same_real(const DigitReal& other) const;

  // Text form: int.predigits;per:[..] (digits contiguous for B <= 10,
  // space-separated above).
  std::string to_text() const;
  static DigitReal parse(const std::string& text, int n_bits, int base);

private:
  int n_;
  int base_;
  std::uint64_t int_part_;
  MessageStream digits_;
};

}  // namespace cbc_chaos
