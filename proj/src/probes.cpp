#include "cbc_chaos/probes.hpp"

#include <cstddef>
#include <deque>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cbc_chaos/rational.hpp"
#include "cbc_chaos/real_line.hpp"
#include "cbc_chaos/rng.hpp"
#include "cbc_chaos/sampling.hpp"

namespace cbc_chaos {
namespace {

// State-space walks (breadth-first steering, cycle detection) enumerate all
// 2^N states; keep them desk-scale.
constexpr int kMaxWalkBits = 20;
// Longest stream prefix any probe will materialize to meet a radius.
constexpr int kMaxPrefixDepth = 4096;

// Smallest t >= 0 with 10^-t below the bound (strictly or not).
int decimal_depth(const Rational& bound, bool strict) {
  for (int t = 0; t <= kMaxPrefixDepth; ++t) {
    const Rational w = pow_inv(10, t);
    if (strict ? w < bound : w <= bound) return t;
  }
  throw std::invalid_argument("radius is too small for a desk-scale prefix");
}

void require_same_space(const PhasePoint& a, const PhasePoint& b) {
  if (a.state().size() != b.state().size() ||
      a.stream().mode() != b.stream().mode())
    throw std::invalid_argument("phase points live in different spaces");
}

std::vector<std::uint64_t> stream_prefix(const MessageStream& s,
                                         std::uint64_t len) {
  std::vector<std::uint64_t> out(len);
  for (std::uint64_t i = 0; i < len; ++i) out[i] = s.at(i);
  return out;
}

// Steering symbols that drive `from` onto `target` in strategy mode: a
// shortest path in the graph whose edges are u -> encrypt(flip_j(u)). Every
// edge family is a permutation, so reachability is an honest question; an
// empty result with `found` false means the target sits in another
// component.
std::vector<std::uint64_t> steer_breadth_first(const BlockState& from,
                                               const BlockState& target,
                                               const CipherSpec& cipher,
                                               bool& found) {
  const int n = from.size();
  if (n > kMaxWalkBits)
    throw std::invalid_argument("state space too large for steering search");
  found = true;
  if (from == target) return {};
  const std::size_t count = std::size_t{1} << n;
  std::vector<std::int64_t> parent(count, -1);
  std::vector<std::uint8_t> via(count, 0);
  std::deque<std::uint64_t> queue;
  parent[from.value()] = static_cast<std::int64_t>(from.value());
  queue.push_back(from.value());
  while (!queue.empty()) {
    const std::uint64_t u = queue.front();
    queue.pop_front();
    for (int j = 0; j < n; ++j) {
      const BlockState next =
          encrypt(cipher, BlockState(n, u).with_bit_flipped(j));
      const std::uint64_t w = next.value();
      if (parent[w] >= 0) continue;
      parent[w] = static_cast<std::int64_t>(u);
      via[w] = static_cast<std::uint8_t>(j);
      if (w == target.value()) {
        std::vector<std::uint64_t> path;
        for (std::uint64_t v = w; v != from.value();
             v = static_cast<std::uint64_t>(parent[v]))
          path.push_back(via[v]);
        return {path.rbegin(), path.rend()};
      }
      queue.push_back(w);
    }
  }
  found = false;
  return {};
}

// One full-block symbol that drives `from` onto `target`: the absorb keeps
// bits under the block's 1s and complements under its 0s, so matching the
// decrypted target is a bitwise equation.
std::uint64_t steer_block(const BlockState& from, const BlockState& target,
                          const CipherSpec& cipher) {
  const BlockState pre_image = decrypt(cipher, target);
  return ~(from.value() ^ pre_image.value()) & from.mask();
}

}  // namespace

std::string phase_point_text(const PhasePoint& x) {
  return "state:" + x.state().to_string() + ";" + x.stream().to_text();
}

CommuteReport check_semiconjugacy(std::uint64_t samples, std::uint64_t iters,
                                  const CipherSpec& cipher, std::uint64_t seed,
                                  bool corrupt_real_map) {
  validate(cipher);
  CommuteReport report;
  report.samples = samples;
  report.iters = iters;
  report.seed = seed;
  Rng rng(seed, {0x5e,  // probe-local substream tag
                 static_cast<std::uint32_t>(cipher.n_bits)});
  for (std::uint64_t s = 0; s < samples; ++s) {
    const std::uint64_t pre_len = rng.below(3);
    const std::uint64_t per_len = 1 + rng.below(5);
    PhasePoint x = random_phase_point(StreamMode::strategy, cipher.n_bits,
                                      pre_len, per_len, rng);
    DigitReal r = embed(x);
    bool clean = true;
    for (std::uint64_t k = 1; k <= iters && clean; ++k) {
      x = step(x, cipher);
      r = corrupt_real_map ? real_step_wrong_bit(r, cipher)
                           : real_step(r, cipher);
      if (!embed(x).same_real(r)) {
        clean = false;
        ++report.mismatches;
        if (!report.first_mismatch_sample) {
          report.first_mismatch_sample = s;
          report.first_mismatch_iterate = k;
        }
      }
    }
  }
  report.success = report.mismatches == 0;
  return report;
}

SensitivityReport sensitivity_probe(const PhasePoint& x,
                                    const CipherSpec& cipher, double radius,
                                    std::uint64_t horizon, double threshold) {
  validate(cipher);
  if (!(radius > 0.0)) throw std::invalid_argument("radius must be positive");
  const int n = x.state().size();
  const MessageStream& stream = x.stream();
  if (stream.mode() == StreamMode::strategy && n < 2)
    throw std::invalid_argument(
        "a one-symbol strategy alphabet admits no perturbation");

  SensitivityReport report;
  report.radius = radius;
  report.threshold = threshold;
  report.horizon = horizon;

  // Edit one symbol deep enough that the weighted tail stays inside the
  // radius; full-block edits flip two bits so one absorb changes two state
  // bits at once.
  const Rational rad(radius);
  const Rational thr(threshold);
  std::uint64_t index = 0;
  std::optional<PhasePoint> candidate;
  Rational start_dist;
  for (int depth = 0; depth <= kMaxPrefixDepth; ++depth) {
    const std::uint64_t old_symbol = stream.at(index);
    const std::uint64_t new_symbol =
        stream.mode() == StreamMode::strategy
            ? (old_symbol + 1) % static_cast<std::uint64_t>(n)
            : old_symbol ^ (n >= 2 ? 3u : 1u);
    PhasePoint y(x.state(), stream.with_symbol(index, new_symbol));
    start_dist = phase_distance_exact(x, y);
    if (start_dist < rad) {
      candidate = std::move(y);
      break;
    }
    ++index;
  }
  if (!candidate)
    throw std::invalid_argument("radius is too small for a desk-scale prefix");
  report.perturb_index = index;
  report.start_distance = to_double(start_dist);
  report.witness_point = candidate;
  report.witness_text = phase_point_text(*candidate);

  PhasePoint a = x;
  PhasePoint b = *candidate;
  double best = 0.0;
  for (std::uint64_t k = 0; k <= horizon; ++k) {
    const Rational d = phase_distance_exact(a, b);
    const double dv = to_double(d);
    if (d > thr) {
      report.success = true;
      report.separation_step = k;
      report.separation = dv;
      return report;
    }
    if (dv > best) best = dv;
    if (k < horizon) {
      a = step(a, cipher);
      b = step(b, cipher);
    }
  }
  report.success = false;
  report.separation = best;
  return report;
}

TransitivityReport transitivity_probe(const PhasePoint& u_center,
                                      double u_radius,
                                      const PhasePoint& v_center,
                                      double v_radius,
                                      const CipherSpec& cipher,
                                      std::uint64_t horizon) {
  validate(cipher);
  require_same_space(u_center, v_center);
  if (!(u_radius > 0.0) || !(v_radius > 0.0))
    throw std::invalid_argument("ball radii must be positive");

  TransitivityReport report;
  report.u_radius = u_radius;
  report.v_radius = v_radius;
  report.horizon = horizon;

  const Rational urad(u_radius);
  const Rational vrad(v_radius);

  // The centers may already overlap: the U center itself is a witness.
  const Rational direct = phase_distance_exact(u_center, v_center);
  if (direct < vrad) {
    report.success = true;
    report.k = 0;
    report.dist_to_u = 0.0;
    report.dist_to_v = to_double(direct);
    report.witness_point = u_center;
    report.witness_text = phase_point_text(u_center);
    return report;
  }

  // Keeping `a` leading symbols bounds the stream tail by 10^-a, which must
  // sit strictly inside the U radius.
  const std::uint64_t a =
      static_cast<std::uint64_t>(decimal_depth(urad, /*strict=*/true));
  report.prefix_len = a;

  PhasePoint walker = u_center;
  for (std::uint64_t i = 0; i < a; ++i) walker = step(walker, cipher);
  const BlockState reached = walker.state();

  std::vector<std::uint64_t> steering;
  if (u_center.stream().mode() == StreamMode::strategy) {
    bool found = false;
    steering =
        steer_breadth_first(reached, v_center.state(), cipher, found);
    if (!found) {
      report.failure_reason =
          "target state is unreachable from the prefix state";
      return report;
    }
  } else {
    steering = {steer_block(reached, v_center.state(), cipher)};
  }
  report.steering_len = steering.size();
  report.k = a + steering.size();
  if (report.k > horizon) {
    report.failure_reason = "constructed entry step exceeds the horizon";
    return report;
  }

  std::vector<std::uint64_t> pre = stream_prefix(u_center.stream(), a);
  pre.insert(pre.end(), steering.begin(), steering.end());
  const auto& v_pre = v_center.stream().preperiod();
  pre.insert(pre.end(), v_pre.begin(), v_pre.end());
  MessageStream spliced(u_center.stream().mode(),
                        u_center.stream().alphabet_size(), std::move(pre),
                        v_center.stream().period());
  PhasePoint witness(u_center.state(), std::move(spliced));

  // Replay both claims before reporting success.
  const Rational du = phase_distance_exact(witness, u_center);
  PhasePoint end = witness;
  for (std::uint64_t i = 0; i < report.k; ++i) end = step(end, cipher);
  const Rational dv = phase_distance_exact(end, v_center);
  report.dist_to_u = to_double(du);
  report.dist_to_v = to_double(dv);
  report.witness_point = witness;
  report.witness_text = phase_point_text(witness);
  report.success = du < urad && dv < vrad;
  if (!report.success)
    report.failure_reason = "replay left a ball: splice invariant broken";
  return report;
}

RegularityReport regularity_construct(const PhasePoint& x, double epsilon,
                                      const CipherSpec& cipher) {
  validate(cipher);
  if (!(epsilon > 0.0))
    throw std::invalid_argument("epsilon must be positive");
  if (x.stream().mode() != StreamMode::strategy)
    throw std::invalid_argument(
        "periodic-point construction works on strategy streams");
  const int n = x.state().size();
  if (n > kMaxWalkBits)
    throw std::invalid_argument("state space too large for cycle detection");

  RegularityReport report;
  report.epsilon = epsilon;

  // One symbol deeper than the epsilon's decimal depth, so the periodized
  // tail differs from X only below epsilon.
  const std::uint64_t k = static_cast<std::uint64_t>(
                              decimal_depth(Rational(epsilon),
                                            /*strict=*/false)) +
                          1;
  report.k = k;

  std::vector<std::uint64_t> window = stream_prefix(x.stream(), k);
  MessageStream periodized(StreamMode::strategy,
                           static_cast<std::uint64_t>(n), {}, window);
  PhasePoint witness(x.state(), std::move(periodized));

  // Feeding the fixed k-symbol window once is a permutation of the state
  // space; the witness's period is the state's cycle length under it.
  const auto advance_window = [&](BlockState s) {
    for (const std::uint64_t symbol : window)
      s = encrypt(cipher, s.with_bit_flipped(static_cast<int>(symbol)));
    return s;
  };
  std::uint64_t cycle = 0;
  BlockState s = x.state();
  do {
    s = advance_window(s);
    ++cycle;
  } while (s != x.state());
  report.period = cycle * k;

  const Rational dist = phase_distance_exact(x, witness);
  report.distance = to_double(dist);
  report.witness_point = witness;
  report.witness_text = phase_point_text(witness);

  // Replay: the witness must return to itself after exactly `period` steps
  // and sit inside epsilon of X.
  PhasePoint replay = witness;
  for (std::uint64_t i = 0; i < report.period; ++i)
    replay = step(replay, cipher);
  report.success = replay == witness && dist < Rational(epsilon);
  return report;
}

}  // namespace cbc_chaos
