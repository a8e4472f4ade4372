#include "cbc_chaos/lyapunov.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cbc_chaos/errors.hpp"
#include "cbc_chaos/real_line.hpp"

namespace cbc_chaos {
namespace {

constexpr int kPreferredSide = 1;
constexpr int kMaxSeparationExponent = 60;
constexpr std::uint64_t kMaxKeptTerms = std::uint64_t{1} << 24;
constexpr double kFiniteDifferenceStep = 1e-7;

// Compensated accumulator: summing 10^4 equal terms naively drifts by a few
// parts in 10^12, above what the constant-slope estimate has to hold.
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double value) {
    const double y = value - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

void require_count(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("iteration count must be >= 1");
}

void require_term_budget(std::uint64_t n, bool keep_terms) {
  if (keep_terms && n > kMaxKeptTerms)
    throw std::length_error("too many per-step terms requested");
}

// First step at which a terminating expansion reaches a breakpoint: the
// digits shift left once per step, so the tail empties at the index of the
// last nonzero digit (step 0 when the point is already a grid multiple).
std::uint64_t first_breakpoint_hit(const DigitReal& x) {
  const std::int64_t last = x.last_nonzero_digit();
  return last <= 0 ? 0 : static_cast<std::uint64_t>(last);
}

// h0 must be an exact digit ulp base^-p with p >= 3; only then can the
// companion be placed without rounding.
int separation_exponent(int base, double h0) {
  const double cap = 1.0 / (static_cast<double>(base) * base);
  if (!(h0 > 0.0) || h0 >= cap)
    throw std::invalid_argument(
        "separation must lie strictly inside (0, base^-2)");
  const long p =
      std::lround(-std::log(h0) / std::log(static_cast<double>(base)));
  const double expected =
      std::pow(static_cast<double>(base), -static_cast<double>(p));
  if (p < 3 || p > kMaxSeparationExponent ||
      std::abs(h0 - expected) > 1e-9 * expected)
    throw std::invalid_argument(
        "separation must be a power of 1/base, at least base^-3");
  return static_cast<int>(p);
}

// The linearity cells of the interval map are [c/B, (c+1)/B); two points
// share one exactly when integral part and leading digit agree.
std::pair<std::uint64_t, std::uint64_t> cell_label(const DigitReal& x) {
  return {x.int_part(), x.digit(0)};
}

// Companion at exact offset base^-p, preferring `side`; the opposite side
// is used when the preferred one leaves [0, 2^N). Domain-edge flips are
// placement details, not exclusions.
DigitReal seat_blind(const DigitReal& x, int p, int side) {
  try {
    return x.offset_ulp(p, side);
  } catch (const std::domain_error&) {
    return x.offset_ulp(p, -side);
  }
}

// Same, but also demands the companion land in x's linearity cell. Used to
// recover after a straddle. Some side always qualifies: the offset is at
// most base^-3 while cells are base^-1 wide.
DigitReal seat_in_cell(const DigitReal& x, int p, int side) {
  for (const int s : {side, -side}) {
    try {
      DigitReal y = x.offset_ulp(p, s);
      if (cell_label(y) == cell_label(x)) return y;
    } catch (const std::domain_error&) {
    }
  }
  throw std::logic_error("no companion side fits the linearity cell");
}

LyapunovReport finish(LyapunovMethod method, const KahanSum& acc,
                      std::uint64_t recorded, std::uint64_t excluded,
                      std::vector<double>&& terms, bool keep_terms) {
  if (recorded == 0)
    throw DegenerateMeasurementError(
        "every step was excluded; nothing was measured");
  LyapunovReport report;
  report.method = method;
  report.n = recorded;
  report.estimate = acc.sum / static_cast<double>(recorded);
  report.excluded = excluded;
  if (keep_terms) report.per_step_terms = std::move(terms);
  return report;
}

// Piece index under the map's cell decomposition.
std::size_t map_cell(const CalibrationMap& map, double x) {
  std::size_t idx = 0;
  while (idx < map.cell_boundaries.size() && x >= map.cell_boundaries[idx])
    ++idx;
  return idx;
}

double seat_blind_map(const CalibrationMap& map, double x, double h0,
                      int side) {
  const double y = x + side * h0;
  if (map.in_domain(y)) return y;
  return x - side * h0;
}

double seat_in_cell_map(const CalibrationMap& map, double x, double h0,
                        int side) {
  for (const int s : {side, -side}) {
    const double y = x + s * h0;
    if (map.in_domain(y) && map_cell(map, y) == map_cell(map, x)) return y;
  }
  throw std::logic_error("no companion side fits the map cell");
}

}  // namespace

LyapunovReport lyapunov_analytic(const DigitReal& x0, const CipherSpec& cipher,
                                 std::uint64_t n, bool keep_terms) {
  require_count(n);
  require_term_budget(n, keep_terms);
  // Certify the whole horizon up front; membership depends only on the
  // digit tail, so nothing is gained by walking the orbit.
  if (in_exceptional_set(x0, n, cipher))
    throw ExceptionalPointError(
        first_breakpoint_hit(x0),
        "trajectory reaches a breakpoint at step " +
            std::to_string(first_breakpoint_hit(x0)));
  const double term = std::log(static_cast<double>(x0.base()));
  KahanSum acc;
  std::vector<double> terms;
  if (keep_terms) terms.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    acc.add(term);
    if (keep_terms) terms.push_back(term);
  }
  return finish(LyapunovMethod::analytic_slope, acc, n, 0, std::move(terms),
                keep_terms);
}

LyapunovReport lyapunov_two_trajectory(const DigitReal& x0,
                                       const CipherSpec& cipher,
                                       std::uint64_t n, double h0,
                                       bool keep_terms) {
  require_count(n);
  require_term_budget(n, keep_terms);
  const int p = separation_exponent(x0.base(), h0);
  if (in_exceptional_set(x0, n, cipher))
    throw ExceptionalPointError(
        first_breakpoint_hit(x0),
        "trajectory reaches a breakpoint at step " +
            std::to_string(first_breakpoint_hit(x0)));

  DigitReal x = x0;
  DigitReal y = seat_blind(x, p, kPreferredSide);
  KahanSum acc;
  std::uint64_t recorded = 0;
  std::uint64_t excluded = 0;
  std::vector<double> terms;
  if (keep_terms) terms.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    if (cell_label(x) != cell_label(y)) {
      // The pair straddles a breakpoint: no slope to measure here. Count
      // it, advance the base orbit, and re-seat inside the new cell.
      ++excluded;
      x = real_step(x, cipher);
      y = seat_in_cell(x, p, kPreferredSide);
      continue;
    }
    const Rational before = euclidean_distance_exact(x, y);
    DigitReal xn = real_step(x, cipher);
    DigitReal yn = real_step(y, cipher);
    const Rational after = euclidean_distance_exact(xn, yn);
    const double term = std::log(to_double(after / before));
    acc.add(term);
    ++recorded;
    if (keep_terms) terms.push_back(term);
    x = std::move(xn);
    y = seat_blind(x, p, kPreferredSide);
  }
  return finish(LyapunovMethod::two_trajectory, acc, recorded, excluded,
                std::move(terms), keep_terms);
}

LyapunovReport lyapunov_two_trajectory_map(const CalibrationMap& map,
                                           double x0, std::uint64_t n,
                                           double h0, bool keep_terms) {
  require_count(n);
  require_term_budget(n, keep_terms);
  const double width = map.hi - map.lo;
  if (!(h0 > 0.0) || h0 >= width / 100.0)
    throw std::invalid_argument(
        "separation must be positive and well below the domain width");
  if (!map.in_domain(x0))
    throw std::invalid_argument("start lies outside the map domain");

  double x = x0;
  double y = seat_blind_map(map, x, h0, kPreferredSide);
  KahanSum acc;
  std::uint64_t recorded = 0;
  std::uint64_t excluded = 0;
  std::vector<double> terms;
  if (keep_terms) terms.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    const bool straddle = map_cell(map, x) != map_cell(map, y);
    const double before = std::abs(y - x);
    const double xn = map.apply(x);
    const double yn = map.apply(y);
    const double after = std::abs(yn - xn);
    const double term = std::log(after / before);
    // Collapsed pairs measure no slope either; treat them like straddles.
    if (straddle || before == 0.0 || after == 0.0 || !std::isfinite(term)) {
      ++excluded;
      x = xn;
      y = seat_in_cell_map(map, x, h0, kPreferredSide);
      continue;
    }
    acc.add(term);
    ++recorded;
    if (keep_terms) terms.push_back(term);
    x = xn;
    y = seat_blind_map(map, x, h0, kPreferredSide);
  }
  return finish(LyapunovMethod::two_trajectory, acc, recorded, excluded,
                std::move(terms), keep_terms);
}

LyapunovReport lyapunov_generic(const CalibrationMap& map, double x0,
                                std::uint64_t n, DerivativeRoute route,
                                bool keep_terms) {
  require_count(n);
  require_term_budget(n, keep_terms);
  if (!map.in_domain(x0))
    throw std::invalid_argument("start lies outside the map domain");

  KahanSum acc;
  std::vector<double> terms;
  if (keep_terms) terms.reserve(n);
  double x = x0;
  for (std::uint64_t i = 0; i < n; ++i) {
    double deriv = 0.0;
    if (route == DerivativeRoute::closed_form) {
      const std::optional<double> d = map.derivative(x);
      if (!d)
        throw DerivativeError(i, "derivative undefined at step " +
                                     std::to_string(i));
      deriv = *d;
    } else {
      // Central difference; refusing to difference across a cell boundary
      // keeps the route honest where the map has a kink.
      const double h = kFiniteDifferenceStep;
      double a = x - h;
      double b = x + h;
      if (!map.in_domain(a)) a = x;
      if (!map.in_domain(b)) b = x;
      if (map_cell(map, a) != map_cell(map, b) || a == b)
        throw DerivativeError(
            i, "finite difference spans a breakpoint at step " +
                   std::to_string(i));
      deriv = (map.apply(b) - map.apply(a)) / (b - a);
    }
    if (deriv == 0.0 || !std::isfinite(deriv))
      throw DerivativeError(i,
                            "derivative vanishes at step " + std::to_string(i));
    const double term = std::log(std::abs(deriv));
    acc.add(term);
    if (keep_terms) terms.push_back(term);
    x = map.apply(x);
  }
  const LyapunovMethod method = route == DerivativeRoute::closed_form
                                    ? LyapunovMethod::analytic_slope
                                    : LyapunovMethod::finite_difference;
  return finish(method, acc, n, 0, std::move(terms), keep_terms);
}

}  // namespace cbc_chaos
