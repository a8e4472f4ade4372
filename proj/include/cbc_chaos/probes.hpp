// Empirical probes of the chaining dynamics on the phase space:
//
//  - commutation of the interval embedding with the step map, checked
//    digit-for-digit over random samples (with a corrupted-map negative
//    control);
//  - sensitive dependence: an arbitrarily small stream perturbation that a
//    finite horizon amplifies past a unit separation;
//  - topological transitivity, demonstrated constructively by splicing a
//    steering segment between two target neighborhoods;
//  - dense periodic points: an explicit periodic point within epsilon of
//    any given point.
//
// Every report carries the witness it found so callers can replay and
// re-validate it independently.
#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "cbc_chaos/cipher.hpp"
#include "cbc_chaos/phase_space.hpp"

namespace cbc_chaos {

struct CommuteReport {
  std::uint64_t samples = 0;
  std::uint64_t iters = 0;
  std::uint64_t mismatches = 0;
  bool success = false;
  // Set when a mismatch exists: which sample, and at which iterate.
  std::optional<std::uint64_t> first_mismatch_sample;
  std::optional<std::uint64_t> first_mismatch_iterate;
  std::uint64_t seed = 0;
};

// Embeds random strategy-mode points and asserts that stepping then
// embedding equals embedding then applying the interval map, exactly, for
// every iterate up to `iters`. corrupt_real_map swaps in the wrong-bit
// interval map as a negative control; it must mismatch at the first step.
CommuteReport check_semiconjugacy(std::uint64_t samples, std::uint64_t iters,
                                  const CipherSpec& cipher, std::uint64_t seed,
                                  bool corrupt_real_map = false);

struct SensitivityReport {
  bool success = false;
  std::uint64_t perturb_index = 0;   // first stream index that was changed
  std::uint64_t separation_step = 0; // step where the orbits split apart
  double start_distance = 0.0;       // d(X, Y), below the requested radius
  double separation = 0.0;  // distance reached (max seen when unsuccessful)
  std::optional<PhasePoint> witness_point;
  std::string witness_text;
  double radius = 0.0;
  double threshold = 0.0;
  std::uint64_t horizon = 0;
};

// Builds Y within `radius` of X by editing one stream symbol past the
// radius's decimal depth, then scans up to `horizon` steps for a separation
// beyond `threshold` (compared exactly).
SensitivityReport sensitivity_probe(const PhasePoint& x,
                                    const CipherSpec& cipher, double radius,
                                    std::uint64_t horizon,
                                    double threshold = 1.0);

struct TransitivityReport {
  bool success = false;
  std::uint64_t k = 0;           // steps from the witness into the V ball
  std::uint64_t prefix_len = 0;  // U-stream symbols kept verbatim
  std::uint64_t steering_len = 0;
  double dist_to_u = 0.0;  // d(witness, U center), below u_radius
  double dist_to_v = 0.0;  // d(G^k(witness), V center), below v_radius
  std::optional<PhasePoint> witness_point;
  std::string witness_text;
  std::string failure_reason;
  double u_radius = 0.0;
  double v_radius = 0.0;
  std::uint64_t horizon = 0;
};

// Constructs a point of the U ball whose orbit enters the V ball: keep
// enough of U's stream to stay inside U, steer the state onto V's state
// (breadth-first over flip symbols in strategy mode, one closed-form block
// in full-block mode), then continue with V's stream. The result is
// replay-verified before reporting success.
TransitivityReport transitivity_probe(const PhasePoint& u_center,
                                      double u_radius,
                                      const PhasePoint& v_center,
                                      double v_radius,
                                      const CipherSpec& cipher,
                                      std::uint64_t horizon);

struct RegularityReport {
  bool success = false;
  std::uint64_t k = 0;       // periodized prefix length
  std::uint64_t period = 0;  // verified full period of the witness
  double distance = 0.0;     // d(X, witness), below epsilon
  std::optional<PhasePoint> witness_point;
  std::string witness_text;
  double epsilon = 0.0;
};

// Periodizes the first k stream symbols of X (k chosen so the tail
// dominates epsilon). Each fixed-symbol step is a bijection on states, so
// the k-symbol composite is a permutation and the constructed point is
// exactly periodic; its period is the state's cycle length times k.
// Strategy mode only.
RegularityReport regularity_construct(const PhasePoint& x, double epsilon,
                                      const CipherSpec& cipher);

// Shared text form for probe witnesses: state bits plus stream text.
std::string phase_point_text(const PhasePoint& x);

}  // namespace cbc_chaos
