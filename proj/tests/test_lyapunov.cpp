// Lyapunov estimators: constant-slope sums, paired trajectories, generic maps.
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cbc_chaos/calibration.hpp"
#include "cbc_chaos/cipher.hpp"
#include "cbc_chaos/errors.hpp"
#include "cbc_chaos/lyapunov.hpp"
#include "cbc_chaos/rng.hpp"
#include "cbc_chaos/sampling.hpp"

using namespace cbc_chaos;

namespace {

const double kLn10 = std::log(10.0);
const double kLn2 = std::log(2.0);

DigitReal nonexceptional_start(Rng& rng) {
  return random_digit_real(10, 10, rng.below(4), 1 + rng.below(6), rng);
}

}  // namespace

TEST_CASE("constant-slope estimate equals ln of the base") {
  CipherSpec cipher = random_cipher(CipherFamily::mini_feistel, 10, 3);
  Rng rng(301);
  for (int trial = 0; trial < 25; ++trial) {
    DigitReal x0 = nonexceptional_start(rng);
    LyapunovReport r = lyapunov_analytic(x0, cipher, 10000);
    CHECK(std::fabs(r.estimate - kLn10) <= 1e-13);
    CHECK(r.n == 10000);
    CHECK(r.excluded == 0);
    CHECK(r.method == LyapunovMethod::analytic_slope);
  }
  DigitReal x0 = nonexceptional_start(rng);
  CHECK(lyapunov_analytic(x0, cipher, 1).estimate == kLn10);
}

TEST_CASE("constant-slope estimator keeps its terms on request") {
  CipherSpec cipher = identity_cipher(10);
  Rng rng(302);
  LyapunovReport r = lyapunov_analytic(nonexceptional_start(rng), cipher, 50,
                                       true);
  REQUIRE(r.per_step_terms.has_value());
  REQUIRE(r.per_step_terms->size() == 50);
  double sum = 0.0;
  for (double t : *r.per_step_terms) {
    CHECK(t == kLn10);
    sum += t;
  }
  CHECK(sum / 50.0 == doctest::Approx(r.estimate).epsilon(1e-15));
}

TEST_CASE("exceptional starts are rejected with the hitting index") {
  CipherSpec id = identity_cipher(10);
  DigitReal half(10, 10, 0, {5}, {0});
  CHECK_THROWS_AS(lyapunov_analytic(half, id, 1), ExceptionalPointError);
  try {
    lyapunov_analytic(half, id, 10);
  } catch (const ExceptionalPointError& e) {
    CHECK(e.index() == 0);
  }

  // 0.123456 only reaches a breakpoint at orbit index 5, so the horizon
  // certificate accepts n = 4 and rejects n = 5.
  DigitReal x(10, 10, 0, {1, 2, 3, 4, 5, 6}, {0});
  CHECK_NOTHROW(lyapunov_analytic(x, id, 4));
  try {
    lyapunov_analytic(x, id, 5);
    FAIL("expected an exceptional-point rejection");
  } catch (const ExceptionalPointError& e) {
    CHECK(e.index() == 5);
  }

  CHECK_THROWS_AS(lyapunov_analytic(x, id, 0), std::invalid_argument);
}

TEST_CASE("paired-trajectory estimate approximates ln of the base") {
  CipherSpec cipher = random_cipher(CipherFamily::mini_feistel, 10, 3);
  Rng rng(303);
  for (int trial = 0; trial < 5; ++trial) {
    DigitReal x0 = nonexceptional_start(rng);
    LyapunovReport r = lyapunov_two_trajectory(x0, cipher, 1000, 1e-6);
    CHECK(std::fabs(r.estimate - kLn10) <= 1e-2);
    CHECK(r.excluded < 50);
    CHECK(r.n + r.excluded == 1000);
    CHECK(r.method == LyapunovMethod::two_trajectory);
  }
}

TEST_CASE("paired-trajectory companion straddling a cell seam is excluded") {
  CipherSpec id = identity_cipher(10);
  // The +1e-6 companion of 0.599999... carries into the lead digit.
  DigitReal x0(10, 10, 0, {5, 9, 9, 9, 9, 9}, {1});
  LyapunovReport r = lyapunov_two_trajectory(x0, id, 100, 1e-6);
  CHECK(r.excluded >= 1);
  CHECK(r.n + r.excluded == 100);
  CHECK(std::fabs(r.estimate - kLn10) <= 1e-2);
}

TEST_CASE("paired-trajectory separation must be a small power of the base") {
  CipherSpec id = identity_cipher(10);
  DigitReal x0(10, 10, 0, {1, 2, 3}, {4});
  CHECK_THROWS_AS(lyapunov_two_trajectory(x0, id, 10, 1e-2),
                  std::invalid_argument);
  CHECK_THROWS_AS(lyapunov_two_trajectory(x0, id, 10, 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(lyapunov_two_trajectory(x0, id, 10, 3e-5),
                  std::invalid_argument);
  CHECK_THROWS_AS(lyapunov_two_trajectory(x0, id, 10, 0.0),
                  std::invalid_argument);
  CHECK_NOTHROW(lyapunov_two_trajectory(x0, id, 10, 1e-3));
}

TEST_CASE("paired-trajectory driver works on calibration maps") {
  LyapunovReport tent =
      lyapunov_two_trajectory_map(CalibrationMap::tent(), 0.123456789, 1000,
                                  1e-6);
  CHECK(std::fabs(tent.estimate - kLn2) <= 1e-2);
  CHECK(tent.excluded <= 50);
  CHECK(tent.n + tent.excluded == 1000);

  LyapunovReport dbl =
      lyapunov_two_trajectory_map(CalibrationMap::doubling(), 0.323, 1000,
                                  1e-6, true);
  CHECK(std::fabs(dbl.estimate - kLn2) <= 1e-2);
  REQUIRE(dbl.per_step_terms.has_value());
  CHECK(dbl.per_step_terms->size() == dbl.n);

  CHECK_THROWS_AS(
      lyapunov_two_trajectory_map(CalibrationMap::tent(), 0.3, 10, 0.02),
      std::invalid_argument);
  CHECK_THROWS_AS(
      lyapunov_two_trajectory_map(CalibrationMap::tent(), 0.3, 10, 0.0),
      std::invalid_argument);
}

TEST_CASE("a vanishing separation degenerates honestly") {
  // 0.3 + 1e-18 rounds back to 0.3, so no step can be measured.
  CHECK_THROWS_AS(
      lyapunov_two_trajectory_map(CalibrationMap::tent(), 0.3, 10, 1e-18),
      DegenerateMeasurementError);
}

TEST_CASE("generic estimator on the tent map gives ln 2") {
  // The dyadic orbit stays off the kink for the first 50 steps.
  LyapunovReport r =
      lyapunov_generic(CalibrationMap::tent(), 0.123456789, 40);
  CHECK(r.estimate == doctest::Approx(kLn2).epsilon(1e-15));
  CHECK(r.method == LyapunovMethod::analytic_slope);
  CHECK(r.n == 40);
}

TEST_CASE("generic estimator reports the step where the slope is undefined") {
  // 0.375 -> 0.75 -> 0.5 lands on the tent kink at step two.
  for (DerivativeRoute route :
       {DerivativeRoute::closed_form, DerivativeRoute::finite_difference}) {
    try {
      lyapunov_generic(CalibrationMap::tent(), 0.375, 10, route);
      FAIL("expected a derivative rejection");
    } catch (const DerivativeError& e) {
      CHECK(e.index() == 2);
    }
  }
}

TEST_CASE("generic estimator on the doubling map gives ln 2") {
  LyapunovReport r = lyapunov_generic(CalibrationMap::doubling(), 0.323, 10000);
  CHECK(r.estimate == doctest::Approx(kLn2).epsilon(1e-14));
}

TEST_CASE("generic estimator on the chaotic logistic map is positive") {
  LyapunovReport r =
      lyapunov_generic(CalibrationMap::logistic(3.9), 0.3, 10000);
  CHECK(r.estimate > 0.0);
  CHECK(r.estimate < 1.0);
  LyapunovReport fd = lyapunov_generic(CalibrationMap::logistic(3.9), 0.3, 300,
                                       DerivativeRoute::finite_difference);
  LyapunovReport cf = lyapunov_generic(CalibrationMap::logistic(3.9), 0.3, 300);
  CHECK(std::fabs(fd.estimate - cf.estimate) <= 1e-6);
  CHECK(fd.method == LyapunovMethod::finite_difference);
}

TEST_CASE("generic estimator on a contracting logistic map is negative") {
  LyapunovReport r = lyapunov_generic(CalibrationMap::logistic(2.0), 0.3, 5);
  CHECK(r.estimate < 0.0);
  // Direct-iteration oracle recomputed here.
  double x = 0.3;
  double sum = 0.0;
  for (int k = 0; k < 5; ++k) {
    sum += std::log(std::fabs(2.0 * (1.0 - 2.0 * x)));
    x = 2.0 * x * (1.0 - x);
  }
  CHECK(r.estimate == doctest::Approx(sum / 5.0).epsilon(1e-12));
}

TEST_CASE("generic estimator validates its inputs") {
  CHECK_THROWS_AS(lyapunov_generic(CalibrationMap::tent(), 1.5, 10),
                  std::invalid_argument);
  CHECK_THROWS_AS(lyapunov_generic(CalibrationMap::tent(), 0.3, 0),
                  std::invalid_argument);
}
