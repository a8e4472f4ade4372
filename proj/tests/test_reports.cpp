// Report serialization: shared schema, stable keys, honest numbers.
#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "cbc_chaos/cipher.hpp"
#include "cbc_chaos/lyapunov.hpp"
#include "cbc_chaos/probes.hpp"
#include "cbc_chaos/reports.hpp"
#include "cbc_chaos/rng.hpp"
#include "cbc_chaos/sampling.hpp"

using namespace cbc_chaos;

namespace {

std::vector<std::string> keys_of(const Json& j) {
  std::vector<std::string> out;
  for (auto it = j.begin(); it != j.end(); ++it) out.push_back(it.key());
  return out;
}

}  // namespace

TEST_CASE("method names") {
  CHECK(method_name(LyapunovMethod::analytic_slope) == "analytic_slope");
  CHECK(method_name(LyapunovMethod::two_trajectory) == "two_trajectory");
  CHECK(method_name(LyapunovMethod::finite_difference) ==
        "finite_difference");
}

TEST_CASE("doubles are printed shortest-roundtrip") {
  for (double v : {2.302585092994046, 0.1, -1.0, 0.0, 1e-12, 12345.6789}) {
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(0.1) == "0.1");
}

TEST_CASE("non-finite values never reach a report") {
  CHECK(require_finite(1.5) == 1.5);
  CHECK_THROWS_AS(require_finite(std::numeric_limits<double>::infinity()),
                  std::domain_error);
  CHECK_THROWS_AS(require_finite(std::nan("")), std::domain_error);
  LyapunovReport bad;
  bad.estimate = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(to_json(bad), std::domain_error);
}

TEST_CASE("estimator reports share one schema") {
  Rng rng(601);
  CipherSpec cipher = identity_cipher(10);
  DigitReal x0 = random_digit_real(10, 10, 1, 3, rng);
  LyapunovReport r = lyapunov_analytic(x0, cipher, 25, true);
  Json j = to_json(r);
  CHECK(keys_of(j) == std::vector<std::string>{"method", "n", "estimate",
                                               "excluded", "witness",
                                               "per_step_terms"});
  CHECK(j["method"] == "analytic_slope");
  CHECK(j["n"] == 25);
  CHECK(j["estimate"].get<double>() == r.estimate);
  CHECK(j["witness"].is_null());
  CHECK(j["per_step_terms"].size() == 25);

  LyapunovReport plain = lyapunov_analytic(x0, cipher, 5);
  CHECK(keys_of(to_json(plain)) ==
        std::vector<std::string>{"method", "n", "estimate", "excluded",
                                 "witness"});
}

TEST_CASE("per-step terms average to the estimate") {
  LyapunovReport r = lyapunov_two_trajectory_map(CalibrationMap::tent(),
                                                 0.123456789, 200, 1e-6, true);
  REQUIRE(r.per_step_terms.has_value());
  REQUIRE(r.per_step_terms->size() == r.n);
  double sum = 0.0;
  for (double t : *r.per_step_terms) sum += t;
  CHECK(sum / static_cast<double>(r.n) ==
        doctest::Approx(r.estimate).epsilon(1e-12));
}

TEST_CASE("probe reports carry success and parameters") {
  CommuteReport c = check_semiconjugacy(5, 3, identity_cipher(10), 42);
  Json jc = to_json(c);
  CHECK(keys_of(jc) == std::vector<std::string>{"method", "n", "estimate",
                                                "excluded", "witness",
                                                "success", "parameters",
                                                "mismatches"});
  CHECK(jc["method"] == "commute-check");
  CHECK(jc["success"] == true);
  CHECK(jc["parameters"]["samples"] == 5);
  CHECK(jc["parameters"]["iters"] == 3);
  CHECK(jc["parameters"]["seed"] == 42);
  CHECK(jc["mismatches"] == 0);

  CommuteReport bad = check_semiconjugacy(2, 3, identity_cipher(10), 42, true);
  Json jb = to_json(bad);
  CHECK(jb["success"] == false);
  CHECK(jb["witness"]["sample"] == 0);
  CHECK(jb["witness"]["iterate"] == 1);

  PhasePoint x(BlockState(10, 5), MessageStream::strategy(10, {1}, {2}));
  SensitivityReport s = sensitivity_probe(x, identity_cipher(10), 1e-4, 50);
  Json js = to_json(s);
  CHECK(js["method"] == "sensitivity");
  CHECK(js["success"] == true);
  CHECK(js["parameters"]["radius"].get<double>() == 1e-4);
  CHECK(js["parameters"]["threshold"].get<double>() == 1.0);
  CHECK(js["parameters"]["horizon"] == 50);
  CHECK(js["witness"]["point"].is_string());
  CHECK(js["n"] == s.separation_step);

  PhasePoint v(BlockState(10, 9), MessageStream::strategy(10, {}, {3}));
  TransitivityReport t =
      transitivity_probe(x, 0.05, v, 0.05, identity_cipher(10), 10240);
  Json jt = to_json(t);
  CHECK(jt["method"] == "transitivity");
  CHECK(jt["success"] == true);
  CHECK(jt["witness"]["prefix_len"] == t.prefix_len);
  CHECK(jt["witness"]["steering_len"] == t.steering_len);
  CHECK(jt["parameters"]["u_radius"].get<double>() == 0.05);

  RegularityReport g = regularity_construct(x, 0.1, identity_cipher(10));
  Json jg = to_json(g);
  CHECK(jg["method"] == "regularity");
  CHECK(jg["success"] == true);
  CHECK(jg["n"] == g.period);
  CHECK(jg["witness"]["k"] == g.k);
  CHECK(jg["parameters"]["epsilon"].get<double>() == 0.1);
}

TEST_CASE("failed transitivity reports carry the reason") {
  PhasePoint u(BlockState(10, 0), MessageStream::strategy(10, {}, {1}));
  PhasePoint v(BlockState(10, 1023), MessageStream::strategy(10, {}, {2}));
  TransitivityReport t =
      transitivity_probe(u, 0.01, v, 0.01, identity_cipher(10), 0);
  Json j = to_json(t);
  CHECK(j["success"] == false);
  CHECK(j.contains("failure_reason"));
  CHECK_FALSE(j["failure_reason"].get<std::string>().empty());
}

TEST_CASE("terms render as a two-column csv") {
  std::string csv = terms_csv({0.5, -1.25});
  CHECK(csv == "index,term\n0,0.5\n1,-1.25\n");
}
