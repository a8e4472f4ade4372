#include "cbc_chaos/reports.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <system_error>

namespace cbc_chaos {
namespace {

Json witness_or_null(const std::string& text) {
  if (text.empty()) return nullptr;
  return text;
}

}  // namespace

std::string method_name(LyapunovMethod m) {
  switch (m) {
    case LyapunovMethod::analytic_slope:
      return "analytic_slope";
    case LyapunovMethod::two_trajectory:
      return "two_trajectory";
    case LyapunovMethod::finite_difference:
      return "finite_difference";
  }
  throw std::logic_error("unknown estimator method");
}

std::string format_double(double v) {
  require_finite(v);
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  if (res.ec != std::errc())
    throw std::runtime_error("double formatting failed");
  return std::string(buf, res.ptr);
}

double require_finite(double v) {
  if (!std::isfinite(v))
    throw std::domain_error("non-finite value reached a report");
  return v;
}

Json to_json(const LyapunovReport& r) {
  Json j;
  j["method"] = method_name(r.method);
  j["n"] = r.n;
  j["estimate"] = require_finite(r.estimate);
  j["excluded"] = r.excluded;
  j["witness"] = nullptr;
  if (r.per_step_terms) {
    Json terms = Json::array();
    for (const double t : *r.per_step_terms) terms.push_back(require_finite(t));
    j["per_step_terms"] = std::move(terms);
  }
  return j;
}

Json to_json(const CommuteReport& r) {
  Json j;
  j["method"] = "commute-check";
  j["n"] = r.iters;
  j["estimate"] = nullptr;
  j["excluded"] = 0;
  if (r.first_mismatch_sample) {
    Json w;
    w["sample"] = *r.first_mismatch_sample;
    w["iterate"] = *r.first_mismatch_iterate;
    j["witness"] = std::move(w);
  } else {
    j["witness"] = nullptr;
  }
  j["success"] = r.success;
  Json p;
  p["samples"] = r.samples;
  p["iters"] = r.iters;
  p["seed"] = r.seed;
  j["parameters"] = std::move(p);
  j["mismatches"] = r.mismatches;
  return j;
}

Json to_json(const SensitivityReport& r) {
  Json j;
  j["method"] = "sensitivity";
  j["n"] = r.separation_step;
  j["estimate"] = require_finite(r.separation);
  j["excluded"] = 0;
  Json w;
  w["point"] = witness_or_null(r.witness_text);
  w["perturb_index"] = r.perturb_index;
  w["start_distance"] = require_finite(r.start_distance);
  j["witness"] = std::move(w);
  j["success"] = r.success;
  Json p;
  p["radius"] = require_finite(r.radius);
  p["threshold"] = require_finite(r.threshold);
  p["horizon"] = r.horizon;
  j["parameters"] = std::move(p);
  return j;
}

Json to_json(const TransitivityReport& r) {
  Json j;
  j["method"] = "transitivity";
  j["n"] = r.k;
  j["estimate"] = require_finite(r.dist_to_v);
  j["excluded"] = 0;
  Json w;
  w["point"] = witness_or_null(r.witness_text);
  w["prefix_len"] = r.prefix_len;
  w["steering_len"] = r.steering_len;
  w["dist_to_u"] = require_finite(r.dist_to_u);
  j["witness"] = std::move(w);
  j["success"] = r.success;
  Json p;
  p["u_radius"] = require_finite(r.u_radius);
  p["v_radius"] = require_finite(r.v_radius);
  p["horizon"] = r.horizon;
  j["parameters"] = std::move(p);
  if (!r.failure_reason.empty()) j["failure_reason"] = r.failure_reason;
  return j;
}

Json to_json(const RegularityReport& r) {
  Json j;
  j["method"] = "regularity";
  j["n"] = r.period;
  j["estimate"] = require_finite(r.distance);
  j["excluded"] = 0;
  Json w;
  w["point"] = witness_or_null(r.witness_text);
  w["k"] = r.k;
  j["witness"] = std::move(w);
  j["success"] = r.success;
  Json p;
  p["epsilon"] = require_finite(r.epsilon);
  j["parameters"] = std::move(p);
  return j;
}

std::string terms_csv(const std::vector<double>& terms) {
  std::string out = "index,term\n";
  for (std::size_t i = 0; i < terms.size(); ++i) {
    out += std::to_string(i);
    out += ',';
    out += format_double(terms[i]);
    out += '\n';
  }
  return out;
}

}  // namespace cbc_chaos
