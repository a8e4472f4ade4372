// Eventually periodic symbol stream: finite preperiod followed by a nonempty
// period repeated forever. This represents infinite message sequences
// exactly; shifting never grows the representation.
//
// Two phase-space modes share the type: full-block streams carry whole
// N-bit blocks (alphabet 2^N), strategy streams carry bit indices
// (alphabet N). Base-B digit expansions reuse the strategy mode with the
// alphabet widened to B.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cbc_chaos {

enum class StreamMode { full_block, strategy };

class MessageStream {
public:
  MessageStream(StreamMode mode, std::uint64_t alphabet_size,
                std::vector<std::uint64_t> preperiod,
                std::vector<std::uint64_t> period);

  static MessageStream full_block(int n_bits,
                                  std::vector<std::uint64_t> preperiod,
                                  std::vector<std::uint64_t> period);
  static MessageStream strategy(int n_bits,
                                std::vector<std::uint64_t> preperiod,
                                std::vector<std::uint64_t> period);

  StreamMode mode() const { return mode_; }
  std::uint64_t alphabet_size() const { return alphabet_; }
  const std::vector<std::uint64_t>& preperiod() const { return preperiod_; }
  const std::vector<std::uint64_t>& period() const { return period_; }

  // Block width implied by the alphabet: log2(A) in full-block mode, A in
  // strategy mode.
  int block_bits() const;

  std::uint64_t at(std::uint64_t k) const;
  std::uint64_t first() const { return at(0); }
  MessageStream shifted() const;

  // Replaces the symbol at index k, materializing the preperiod up to k.
  MessageStream with_symbol(std::uint64_t k, std::uint64_t value) const;

  // True when the two streams agree at every index (sequence equality,
  // independent of how preperiod/period split the representation).
  bool same_sequence(const MessageStream& other) const;

  // True when every period symbol equals `symbol` (e.g. terminating digit
  // tails are all-zero periods).
  bool period_is_constant(std::uint64_t symbol) const;

  // Index of the last position whose symbol differs from zero, or -1 when
  // the whole sequence is zero; only defined for terminating sequences
  // (all-zero period), otherwise returns -2.
  std::int64_t last_nonzero_index() const;

  // Text form: pre:[a,b];per:[c];mode:strategy|full
  std::string to_text() const;
  static MessageStream parse(const std::string& text, int n_bits);

private:
  StreamMode mode_;
  std::uint64_t alphabet_;
  std::vector<std::uint64_t> preperiod_;
  std::vector<std::uint64_t> period_;
};

MessageStream shift(const MessageStream& s);
std::uint64_t first_block(const MessageStream& s);

}  // namespace cbc_chaos
