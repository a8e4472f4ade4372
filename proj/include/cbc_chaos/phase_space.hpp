// Phase space of the chaining construction: a pair of (cipher state block,
// remaining message stream). One step absorbs the stream's first symbol
// into the state, encrypts, and shifts the stream.
//
// Distances follow the product form: an integer Hamming distance on states
// plus a geometrically weighted series over the stream difference. The
// series factor defaults to 9/N; the numerator is exposed as a constant
// so the reference weighting can be retuned in one place.
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "cbc_chaos/block_state.hpp"
#include "cbc_chaos/cipher.hpp"
#include "cbc_chaos/message_stream.hpp"
#include "cbc_chaos/rational.hpp"

namespace cbc_chaos {

class PhasePoint {
public:
  PhasePoint(BlockState state, MessageStream stream);

  const BlockState& state() const { return state_; }
  const MessageStream& stream() const { return stream_; }

  friend bool operator==(const PhasePoint& a, const PhasePoint& b) {
    return a.state_ == b.state_ && a.stream_.same_sequence(b.stream_) &&
           a.stream_.mode() == b.stream_.mode();
  }

private:
  BlockState state_;
  MessageStream stream_;
};

using SubstitutionFn = std::function<BlockState(const BlockState&)>;

// Keeps the state bits selected by the block's 1-bits and substitutes
// f(state)'s bits elsewhere. The default substitution is bitwise negation,
// which makes the absorb an XOR with the complemented block.
BlockState absorb_block(const BlockState& state, std::uint64_t block);
BlockState absorb_block(const BlockState& state, std::uint64_t block,
                        const SubstitutionFn& f);

PhasePoint step(const PhasePoint& x, const CipherSpec& cipher);

// Trajectory x, G(x), ..., G^n(x); n+1 entries.
std::vector<PhasePoint> iterate(const PhasePoint& x, const CipherSpec& cipher,
                                std::uint64_t n);

struct DistanceValue {
  double value = 0.0;
  double truncation_error_bound = 0.0;
};

constexpr int kStreamWeightNumerator = 9;

// Hamming distance between state blocks; exact, bound 0.
DistanceValue state_distance(const BlockState& a, const BlockState& b);

// Weighted series over per-index symbol differences (bitwise for full-block
// streams, |a-b| for strategy streams), truncated after `terms` indices with
// a certified tail bound.
DistanceValue stream_distance(const MessageStream& a, const MessageStream& b,
                              int terms,
                              int weight_numerator = kStreamWeightNumerator);

// Exact closed form over the eventually periodic difference sequence.
Rational stream_distance_exact(const MessageStream& a, const MessageStream& b,
                               int weight_numerator = kStreamWeightNumerator);

// Product distance: state Hamming + stream series.
DistanceValue phase_distance(const PhasePoint& x, const PhasePoint& y,
                             int terms);
Rational phase_distance_exact(const PhasePoint& x, const PhasePoint& y);

}  // namespace cbc_chaos
