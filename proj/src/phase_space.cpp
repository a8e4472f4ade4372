#include "cbc_chaos/phase_space.hpp"

#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "cbc_chaos/series.hpp"

namespace cbc_chaos {

PhasePoint::PhasePoint(BlockState state, MessageStream stream)
    : state_(std::move(state)), stream_(std::move(stream)) {
  if (stream_.block_bits() != state_.size())
    throw std::invalid_argument(
        "stream alphabet does not match the state width");
}

BlockState absorb_block(const BlockState& state, std::uint64_t block) {
  return absorb_block(state, block, bitwise_negation);
}

BlockState absorb_block(const BlockState& state, std::uint64_t block,
                        const SubstitutionFn& f) {
  if (block >> state.size())
    throw std::invalid_argument("block does not fit the state width");
  const BlockState substituted = f(state);
  if (substituted.size() != state.size())
    throw std::invalid_argument("substitution changed the block width");
  const std::uint64_t kept = state.value() & block;
  const std::uint64_t replaced = substituted.value() & ~block & state.mask();
  return BlockState(state.size(), kept | replaced);
}

PhasePoint step(const PhasePoint& x, const CipherSpec& cipher) {
  if (cipher.n_bits != x.state().size())
    throw std::invalid_argument("cipher width does not match the state");
  const std::uint64_t symbol = x.stream().first();
  const BlockState mixed =
      x.stream().mode() == StreamMode::strategy
          ? flip_bit(x.state(), static_cast<int>(symbol))
          : absorb_block(x.state(), symbol);
  return PhasePoint(encrypt(cipher, mixed), x.stream().shifted());
}

std::vector<PhasePoint> iterate(const PhasePoint& x, const CipherSpec& cipher,
                                std::uint64_t n) {
  std::vector<PhasePoint> orbit;
  orbit.reserve(n + 1);
  orbit.push_back(x);
  for (std::uint64_t i = 0; i < n; ++i)
    orbit.push_back(step(orbit.back(), cipher));
  return orbit;
}

DistanceValue state_distance(const BlockState& a, const BlockState& b) {
  return {static_cast<double>(hamming_distance(a, b)), 0.0};
}

namespace {

struct StreamPairShape {
  int width;             // N
  std::uint64_t max_diff;  // largest per-index difference
};

StreamPairShape check_pair(const MessageStream& a, const MessageStream& b) {
  if (a.mode() != b.mode() || a.alphabet_size() != b.alphabet_size())
    throw std::invalid_argument(
        "stream distance needs matching mode and alphabet");
  const int width = a.block_bits();
  const std::uint64_t max_diff =
      a.mode() == StreamMode::full_block
          ? static_cast<std::uint64_t>(width)
          : a.alphabet_size() - 1;
  return {width, max_diff};
}

std::uint64_t symbol_diff(StreamMode mode, std::uint64_t u, std::uint64_t v) {
  if (mode == StreamMode::full_block)
    return static_cast<std::uint64_t>(std::popcount(u ^ v));
  return u > v ? u - v : v - u;
}

}  // namespace

DistanceValue stream_distance(const MessageStream& a, const MessageStream& b,
                              int terms, int weight_numerator) {
  const StreamPairShape shape = check_pair(a, b);
  // Equal sequences are decidable, so the zero result carries a zero bound.
  if (a.same_sequence(b)) return {0.0, 0.0};
  const auto diff = [&](std::uint64_t k) {
    return symbol_diff(a.mode(), a.at(k), b.at(k));
  };
  const double factor =
      static_cast<double>(weight_numerator) / static_cast<double>(shape.width);
  const double value = factor * truncated_series(10, terms, diff);
  // Tail of sum_{k>terms} max_diff/10^k is max_diff * 10^-terms / 9.
  const double bound = factor * static_cast<double>(shape.max_diff) *
                       std::pow(10.0, -terms) / 9.0;
  return {value, bound};
}

Rational stream_distance_exact(const MessageStream& a, const MessageStream& b,
                               int weight_numerator) {
  const StreamPairShape shape = check_pair(a, b);
  const auto diff = [&](std::uint64_t k) {
    return symbol_diff(a.mode(), a.at(k), b.at(k));
  };
  const std::uint64_t pre =
      std::max(a.preperiod().size(), b.preperiod().size());
  const std::uint64_t lcm =
      std::lcm<std::uint64_t>(a.period().size(), b.period().size());
  Rational factor(weight_numerator, shape.width);
  factor.canonicalize();
  return factor * periodic_series_exact(10, pre, lcm, diff);
}

DistanceValue phase_distance(const PhasePoint& x, const PhasePoint& y,
                             int terms) {
  const DistanceValue de = state_distance(x.state(), y.state());
  const DistanceValue dm = stream_distance(x.stream(), y.stream(), terms);
  return {de.value + dm.value, dm.truncation_error_bound};
}

Rational phase_distance_exact(const PhasePoint& x, const PhasePoint& y) {
  const int de = hamming_distance(x.state(), y.state());
  return Rational(de) + stream_distance_exact(x.stream(), y.stream());
}

}  // namespace cbc_chaos
