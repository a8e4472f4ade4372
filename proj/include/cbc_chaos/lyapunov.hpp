// Lyapunov exponent estimators.
//
// analytic: off the breakpoint set the interval map has constant slope B,
// so once the orbit is certified to avoid every breakpoint the per-step
// terms are all ln B; the estimate is their mean.
//
// two-trajectory: Benettin-style companion tracking. The companion sits at
// a signed offset h0 from the base point, both advance one step, the
// growth ln(d_after/d_before) is recorded, and the companion is re-seated
// at the same side. Steps whose pair straddles a linearity-cell boundary
// measure no true slope; they are excluded and counted.
//
// generic: direct mean of ln|f'| along the orbit of a calibration map,
// with the derivative from the closed form or from a central finite
// difference.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cbc_chaos/calibration.hpp"
#include "cbc_chaos/cipher.hpp"
#include "cbc_chaos/digit_real.hpp"

namespace cbc_chaos {

enum class LyapunovMethod { analytic_slope, two_trajectory, finite_difference };

struct LyapunovReport {
  LyapunovMethod method = LyapunovMethod::analytic_slope;
  std::uint64_t n = 0;  // recorded (non-excluded) steps
  double estimate = 0.0;
  std::uint64_t excluded = 0;
  std::optional<std::vector<double>> per_step_terms;
};

// Requires the orbit to stay off the breakpoint set for `n` steps; throws
// ExceptionalPointError naming the first offending step otherwise.
LyapunovReport lyapunov_analytic(const DigitReal& x0, const CipherSpec& cipher,
                                 std::uint64_t n, bool keep_terms = false);

// h0 must be a power of base^-1 below base^-2 so the companion offset is
// representable exactly in digits.
LyapunovReport lyapunov_two_trajectory(const DigitReal& x0,
                                       const CipherSpec& cipher,
                                       std::uint64_t n, double h0,
                                       bool keep_terms = false);

// Same estimator driven by a calibration map (floating point).
LyapunovReport lyapunov_two_trajectory_map(const CalibrationMap& map,
                                           double x0, std::uint64_t n,
                                           double h0, bool keep_terms = false);

enum class DerivativeRoute { closed_form, finite_difference };

// Mean of ln|f'| along the orbit; throws DerivativeError when the
// derivative is undefined or zero at an iterate.
LyapunovReport lyapunov_generic(const CalibrationMap& map, double x0,
                                std::uint64_t n,
                                DerivativeRoute route =
                                    DerivativeRoute::closed_form,
                                bool keep_terms = false);

}  // namespace cbc_chaos
