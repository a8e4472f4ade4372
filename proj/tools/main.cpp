// Command-line front end: experiment orchestration and data emission.
//
// Subcommands: simulate, lyapunov, calibrate, commute-check,
// distance-compare, probe. Identical configuration and seed produce
// byte-identical output. Exit codes: 0 success, 1 validation error,
// 2 probe failure (a probe or commutation check that reports failure).
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cbc_chaos/calibration.hpp"
#include "cbc_chaos/cipher.hpp"
#include "cbc_chaos/digit_real.hpp"
#include "cbc_chaos/lyapunov.hpp"
#include "cbc_chaos/phase_space.hpp"
#include "cbc_chaos/probes.hpp"
#include "cbc_chaos/rational.hpp"
#include "cbc_chaos/real_line.hpp"
#include "cbc_chaos/reports.hpp"
#include "cbc_chaos/rng.hpp"
#include "cbc_chaos/sampling.hpp"

namespace cc = cbc_chaos;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitProbeFailure = 2;

struct Config {
  int n_bits = 10;
  int base = 0;  // 0 -> max(10, N)
  std::string cipher_text;
  std::string stream_text;
  std::string start_text;
  std::string state_text;
  std::uint64_t n = 1000;
  int trunc_k = 17;
  std::uint64_t seed = 0;
  std::string out_path;
  std::string format = "json";
  // lyapunov / calibrate
  std::string method = "analytic";
  double h0 = 1e-6;
  bool keep_terms = false;
  std::string map_name = "tent";
  double mu = 3.9;
  std::string x0_text;
  // commute-check
  std::uint64_t samples = 1000;
  bool corrupt = false;
  // simulate
  std::string mode_name = "strategy";
  // distance-compare
  std::string center_text = "1.5";
  std::string span_text = "0..4";
  std::string step_text = "0.01";
  // probe
  std::string kind = "sensitivity";
  double radius = 1e-5;
  double threshold = 1.0;
  std::uint64_t horizon = 0;  // 0 -> kind-specific default
  double epsilon = 1e-3;
  double u_radius = 0.1;
  double v_radius = 0.1;
  std::string u_state_text, u_stream_text, v_state_text, v_stream_text;
};

std::uint64_t parse_u64(const std::string& text, const std::string& what) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse " + what + ": " + text);
  }
  if (pos != text.size())
    throw std::invalid_argument("cannot parse " + what + ": " + text);
  return static_cast<std::uint64_t>(v);
}

std::uint64_t env_seed() {
  const char* env = std::getenv("CBC_CHAOS_SEED");
  if (env == nullptr || *env == '\0') return 0;
  return parse_u64(env, "CBC_CHAOS_SEED");
}

int digit_base(const Config& cfg) {
  return cfg.base > 0 ? cfg.base : cc::default_digit_base(cfg.n_bits);
}

// --cipher accepts inline JSON, a file path, or a bare family name; keyed
// families named barely are drawn deterministically from the run seed.
cc::CipherSpec resolve_cipher(const Config& cfg) {
  if (cfg.cipher_text.empty()) return cc::identity_cipher(cfg.n_bits);
  cc::CipherSpec spec;
  if (cfg.cipher_text.front() == '{') {
    spec = cc::cipher_from_json(nlohmann::json::parse(cfg.cipher_text));
  } else {
    bool bare_family = true;
    try {
      const cc::CipherFamily family = cc::family_from_name(cfg.cipher_text);
      spec = cc::random_cipher(family, cfg.n_bits, cfg.seed);
    } catch (const std::invalid_argument&) {
      bare_family = false;
    }
    if (!bare_family) {
      std::ifstream f(cfg.cipher_text);
      if (!f)
        throw std::invalid_argument("cannot open cipher file: " +
                                    cfg.cipher_text);
      nlohmann::json j;
      f >> j;
      spec = cc::cipher_from_json(j);
    }
  }
  cc::validate(spec);
  if (spec.n_bits != cfg.n_bits)
    throw std::invalid_argument("cipher width disagrees with --N");
  return spec;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open output file: " + out_path);
  f << text;
}

std::string dump(const cc::Json& j) { return j.dump(2) + "\n"; }

void require_json_format(const Config& cfg) {
  if (cfg.format != "json")
    throw std::invalid_argument("this subcommand only emits json");
}

cc::StreamMode parse_mode(const std::string& name) {
  if (name == "strategy") return cc::StreamMode::strategy;
  if (name == "full" || name == "full_block") return cc::StreamMode::full_block;
  throw std::invalid_argument("unknown stream mode: " + name);
}

cc::MessageStream resolve_stream(const Config& cfg, cc::StreamMode mode,
                                 const std::string& text,
                                 std::uint32_t salt) {
  if (!text.empty()) {
    cc::MessageStream s = cc::MessageStream::parse(text, cfg.n_bits);
    if (s.mode() != mode)
      throw std::invalid_argument("stream mode disagrees with the command");
    return s;
  }
  cc::Rng rng(cfg.seed, {salt, static_cast<std::uint32_t>(cfg.n_bits)});
  return cc::random_stream(mode, cfg.n_bits, 0, 8, rng);
}

cc::BlockState resolve_state(const Config& cfg, const std::string& text,
                             std::uint32_t salt) {
  if (!text.empty())
    return cc::BlockState(cfg.n_bits, parse_u64(text, "state value"));
  cc::Rng rng(cfg.seed, {salt, static_cast<std::uint32_t>(cfg.n_bits)});
  return cc::random_state(cfg.n_bits, rng);
}

cc::DigitReal resolve_start(const Config& cfg, std::uint32_t salt) {
  if (!cfg.start_text.empty())
    return cc::DigitReal::parse(cfg.start_text, cfg.n_bits, digit_base(cfg));
  cc::Rng rng(cfg.seed, {salt, static_cast<std::uint32_t>(cfg.n_bits)});
  // Digits stay below N so the whole orbit remains inside the embedded
  // phase space; a nonterminating tail keeps it off every breakpoint.
  return cc::random_digit_real(cfg.n_bits, digit_base(cfg), 0, 8, rng,
                               cfg.n_bits, true);
}

int run_simulate(const Config& cfg) {
  const cc::CipherSpec cipher = resolve_cipher(cfg);
  const cc::StreamMode mode = parse_mode(cfg.mode_name);
  cc::PhasePoint start(resolve_state(cfg, cfg.state_text, 11),
                       resolve_stream(cfg, mode, cfg.stream_text, 12));
  const std::vector<cc::PhasePoint> track =
      cc::iterate(start, cipher, cfg.n);
  if (cfg.format == "csv") {
    std::string out = "step,state_bits,state_value,next_symbol\n";
    for (std::size_t i = 0; i < track.size(); ++i) {
      out += std::to_string(i) + ',' + track[i].state().to_string() + ',' +
             std::to_string(track[i].state().value()) + ',' +
             std::to_string(track[i].stream().first()) + '\n';
    }
    emit(out, cfg.out_path);
  } else {
    cc::Json rows = cc::Json::array();
    for (std::size_t i = 0; i < track.size(); ++i) {
      cc::Json row;
      row["step"] = i;
      row["state_bits"] = track[i].state().to_string();
      row["state_value"] = track[i].state().value();
      row["stream"] = track[i].stream().to_text();
      rows.push_back(std::move(row));
    }
    cc::Json j;
    j["trajectory"] = std::move(rows);
    emit(dump(j), cfg.out_path);
  }
  return kExitOk;
}

int run_lyapunov(const Config& cfg) {
  const cc::CipherSpec cipher = resolve_cipher(cfg);
  const cc::DigitReal start = resolve_start(cfg, 21);
  const bool want_terms = cfg.keep_terms || cfg.format == "csv";
  cc::LyapunovReport report;
  if (cfg.method == "analytic") {
    report = cc::lyapunov_analytic(start, cipher, cfg.n, want_terms);
  } else if (cfg.method == "two-trajectory") {
    report =
        cc::lyapunov_two_trajectory(start, cipher, cfg.n, cfg.h0, want_terms);
  } else {
    throw std::invalid_argument("unknown method: " + cfg.method +
                                " (expected analytic or two-trajectory)");
  }
  if (cfg.format == "csv") {
    emit(cc::terms_csv(*report.per_step_terms), cfg.out_path);
  } else {
    cc::Json j = cc::to_json(report);
    j["witness"] = start.to_text();
    emit(dump(j), cfg.out_path);
  }
  return kExitOk;
}

int run_calibrate(const Config& cfg) {
  cc::CalibrationMap map = cc::CalibrationMap::tent();
  if (cfg.map_name == "tent") {
    map = cc::CalibrationMap::tent();
  } else if (cfg.map_name == "logistic") {
    map = cc::CalibrationMap::logistic(cfg.mu);
  } else if (cfg.map_name == "doubling") {
    map = cc::CalibrationMap::doubling();
  } else {
    throw std::invalid_argument("unknown map: " + cfg.map_name);
  }
  double x0 = 0.0;
  if (!cfg.x0_text.empty()) {
    x0 = std::stod(cfg.x0_text);
  } else {
    cc::Rng rng(cfg.seed, {31});
    do {
      x0 = map.lo + (map.hi - map.lo) * rng.unit();
    } while (x0 == map.lo);
  }
  const bool want_terms = cfg.keep_terms || cfg.format == "csv";
  cc::LyapunovReport report;
  if (cfg.method == "closed-form" || cfg.method == "analytic") {
    report = cc::lyapunov_generic(map, x0, cfg.n,
                                  cc::DerivativeRoute::closed_form,
                                  want_terms);
  } else if (cfg.method == "finite-difference") {
    report = cc::lyapunov_generic(map, x0, cfg.n,
                                  cc::DerivativeRoute::finite_difference,
                                  want_terms);
  } else if (cfg.method == "two-trajectory") {
    report = cc::lyapunov_two_trajectory_map(map, x0, cfg.n, cfg.h0,
                                             want_terms);
  } else {
    throw std::invalid_argument(
        "unknown method: " + cfg.method +
        " (expected closed-form, finite-difference, or two-trajectory)");
  }
  if (cfg.format == "csv") {
    emit(cc::terms_csv(*report.per_step_terms), cfg.out_path);
  } else {
    cc::Json j = cc::to_json(report);
    cc::Json w;
    w["map"] = map.name();
    w["x0"] = cc::require_finite(x0);
    j["witness"] = std::move(w);
    emit(dump(j), cfg.out_path);
  }
  return kExitOk;
}

int run_commute_check(const Config& cfg) {
  require_json_format(cfg);
  const cc::CipherSpec cipher = resolve_cipher(cfg);
  const cc::CommuteReport report = cc::check_semiconjugacy(
      cfg.samples, cfg.n, cipher, cfg.seed, cfg.corrupt);
  emit(dump(cc::to_json(report)), cfg.out_path);
  return report.success ? kExitOk : kExitProbeFailure;
}

// Exact decimal: value = units / 10^places.
struct Decimal {
  mpz_class units;
  int places = 0;
};

Decimal parse_decimal(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty decimal");
  std::string digits;
  int places = 0;
  bool seen_dot = false;
  for (const char c : text) {
    if (c == '.') {
      if (seen_dot) throw std::invalid_argument("bad decimal: " + text);
      seen_dot = true;
    } else if (c >= '0' && c <= '9') {
      digits += c;
      if (seen_dot) ++places;
    } else {
      throw std::invalid_argument("bad decimal: " + text);
    }
  }
  if (digits.empty()) throw std::invalid_argument("bad decimal: " + text);
  return {mpz_class(digits, 10), places};
}

int run_distance_compare(const Config& cfg) {
  const std::size_t dots = cfg.span_text.find("..");
  if (dots == std::string::npos)
    throw std::invalid_argument("span must look like a..b");
  Decimal lo = parse_decimal(cfg.span_text.substr(0, dots));
  Decimal hi = parse_decimal(cfg.span_text.substr(dots + 2));
  Decimal step = parse_decimal(cfg.step_text);
  if (step.units == 0) throw std::invalid_argument("step must be positive");

  // Bring everything to one power-of-ten denominator.
  int places = std::max(lo.places, std::max(hi.places, step.places));
  const auto rescale = [places](Decimal& d) {
    for (int i = d.places; i < places; ++i) d.units *= 10;
    d.places = places;
  };
  rescale(lo);
  rescale(hi);
  rescale(step);
  if (lo.units > hi.units)
    throw std::invalid_argument("span must run upward");

  const cc::DigitReal center =
      cc::DigitReal::parse(cfg.center_text, cfg.n_bits, 10);
  const mpz_class denom = cc::pow_int(10, static_cast<std::uint64_t>(places));

  std::string out = "index,x,D,delta\n";
  std::uint64_t index = 0;
  cc::Json rows = cc::Json::array();
  for (mpz_class v = lo.units; v <= hi.units; v += step.units, ++index) {
    mpz_class q = v / denom;
    mpz_class r = v % denom;
    if (!q.fits_ulong_p())
      throw std::invalid_argument("span exceeds the block range");
    std::vector<std::uint64_t> frac(static_cast<std::size_t>(places), 0);
    std::string rs = r.get_str();
    for (std::size_t i = 0; i < rs.size(); ++i)
      frac[frac.size() - rs.size() + i] =
          static_cast<std::uint64_t>(rs[i] - '0');
    const cc::DigitReal x(cfg.n_bits, 10, q.get_ui(), frac, {0});
    const double d_refined =
        cc::to_double(cc::refined_distance_exact(x, center));
    const double d_euclid =
        cc::to_double(cc::euclidean_distance_exact(x, center));
    std::string x_text = q.get_str();
    if (places > 0) {
      x_text += '.';
      for (const std::uint64_t digit : frac)
        x_text += static_cast<char>('0' + digit);
    }
    if (cfg.format == "csv") {
      out += std::to_string(index) + ',' + x_text + ',' +
             cc::format_double(d_refined) + ',' + cc::format_double(d_euclid) +
             '\n';
    } else {
      cc::Json row;
      row["index"] = index;
      row["x"] = x_text;
      row["D"] = cc::require_finite(d_refined);
      row["delta"] = cc::require_finite(d_euclid);
      rows.push_back(std::move(row));
    }
  }
  if (cfg.format == "csv") {
    emit(out, cfg.out_path);
  } else {
    cc::Json j;
    j["center"] = center.to_text();
    j["rows"] = std::move(rows);
    emit(dump(j), cfg.out_path);
  }
  return kExitOk;
}

int run_probe(const Config& cfg) {
  require_json_format(cfg);
  const cc::CipherSpec cipher = resolve_cipher(cfg);
  if (cfg.kind == "sensitivity") {
    cc::PhasePoint x(resolve_state(cfg, cfg.state_text, 41),
                     resolve_stream(cfg, cc::StreamMode::strategy,
                                    cfg.stream_text, 42));
    const std::uint64_t horizon = cfg.horizon > 0 ? cfg.horizon : 100;
    const cc::SensitivityReport report =
        cc::sensitivity_probe(x, cipher, cfg.radius, horizon, cfg.threshold);
    emit(dump(cc::to_json(report)), cfg.out_path);
    return report.success ? kExitOk : kExitProbeFailure;
  }
  if (cfg.kind == "transitivity") {
    cc::PhasePoint u(resolve_state(cfg, cfg.u_state_text, 43),
                     resolve_stream(cfg, cc::StreamMode::strategy,
                                    cfg.u_stream_text, 44));
    cc::PhasePoint v(resolve_state(cfg, cfg.v_state_text, 45),
                     resolve_stream(cfg, cc::StreamMode::strategy,
                                    cfg.v_stream_text, 46));
    const std::uint64_t horizon =
        cfg.horizon > 0
            ? cfg.horizon
            : (std::uint64_t{1} << cfg.n_bits) *
                  static_cast<std::uint64_t>(cfg.n_bits);
    const cc::TransitivityReport report = cc::transitivity_probe(
        u, cfg.u_radius, v, cfg.v_radius, cipher, horizon);
    emit(dump(cc::to_json(report)), cfg.out_path);
    return report.success ? kExitOk : kExitProbeFailure;
  }
  if (cfg.kind == "regularity") {
    cc::PhasePoint x(resolve_state(cfg, cfg.state_text, 47),
                     resolve_stream(cfg, cc::StreamMode::strategy,
                                    cfg.stream_text, 48));
    const cc::RegularityReport report =
        cc::regularity_construct(x, cfg.epsilon, cipher);
    emit(dump(cc::to_json(report)), cfg.out_path);
    return report.success ? kExitOk : kExitProbeFailure;
  }
  throw std::invalid_argument("unknown probe kind: " + cfg.kind);
}

void add_common(CLI::App* sub, Config& cfg) {
  sub->add_option("--N", cfg.n_bits, "Block width in bits")
      ->check(CLI::Range(1, 60));
  sub->add_option("--base", cfg.base, "Digit base (default max(10, N))");
  sub->add_option("--cipher", cfg.cipher_text,
                  "Cipher: inline JSON, a JSON file path, or a family name");
  sub->add_option("--seed", cfg.seed,
                  "Random seed (default: CBC_CHAOS_SEED or 0)");
  sub->add_option("--out", cfg.out_path, "Output file (default stdout)");
  sub->add_option("--format", cfg.format, "Output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--trunc-K", cfg.trunc_k,
                  "Series truncation depth for approximate distances")
      ->check(CLI::Range(1, 1000));
}

}  // namespace

int run(int argc, char** argv) {
  Config cfg;
  cfg.seed = env_seed();

  CLI::App app{"Chaining-mode chaos laboratory"};
  app.require_subcommand(1);

  CLI::App* sim = app.add_subcommand(
      "simulate", "Iterate the phase-space dynamics and dump the trajectory");
  add_common(sim, cfg);
  sim->add_option("--n", cfg.n, "Step count (trajectory has n+1 entries)");
  sim->add_option("--mode", cfg.mode_name, "Stream mode: strategy or full")
      ->check(CLI::IsMember({"strategy", "full"}));
  sim->add_option("--state", cfg.state_text, "Initial state value");
  sim->add_option("--stream", cfg.stream_text, "Stream text form");

  CLI::App* lya = app.add_subcommand(
      "lyapunov", "Estimate the interval map's Lyapunov exponent");
  add_common(lya, cfg);
  lya->add_option("--n", cfg.n, "Iteration count");
  lya->add_option("--method", cfg.method,
                  "Estimator: analytic or two-trajectory");
  lya->add_option("--h0", cfg.h0, "Companion separation (two-trajectory)");
  lya->add_option("--start", cfg.start_text, "Starting digit real");
  lya->add_flag("--terms", cfg.keep_terms, "Keep per-step terms in the JSON");

  CLI::App* cal = app.add_subcommand(
      "calibrate", "Run an estimator against a classical interval map");
  add_common(cal, cfg);
  cal->add_option("--n", cfg.n, "Iteration count");
  cal->add_option("--map", cfg.map_name, "Map: tent, logistic, or doubling")
      ->check(CLI::IsMember({"tent", "logistic", "doubling"}));
  cal->add_option("--mu", cfg.mu, "Logistic parameter");
  cal->add_option("--x0", cfg.x0_text, "Starting point");
  cal->add_option("--method", cfg.method,
                  "closed-form, finite-difference, or two-trajectory");
  cal->add_option("--h0", cfg.h0, "Companion separation (two-trajectory)");
  cal->add_flag("--terms", cfg.keep_terms, "Keep per-step terms in the JSON");

  CLI::App* com = app.add_subcommand(
      "commute-check",
      "Verify that embedding and stepping commute, digit for digit");
  add_common(com, cfg);
  com->add_option("--samples", cfg.samples, "Random sample count");
  com->add_option("--n", cfg.n, "Iterations per sample");
  com->add_flag("--corrupt", cfg.corrupt,
                "Negative control: use the wrong-bit interval map");

  CLI::App* dis = app.add_subcommand(
      "distance-compare",
      "Tabulate the refined metric against |x - c| over a decimal grid");
  add_common(dis, cfg);
  dis->add_option("--center", cfg.center_text, "Grid center point c");
  dis->add_option("--span", cfg.span_text, "Grid range a..b");
  dis->add_option("--step", cfg.step_text, "Grid step (exact decimal)");

  CLI::App* prb = app.add_subcommand(
      "probe", "Sensitivity, transitivity, or regularity experiment");
  add_common(prb, cfg);
  prb->add_option("--kind", cfg.kind,
                  "sensitivity, transitivity, or regularity")
      ->required()
      ->check(CLI::IsMember({"sensitivity", "transitivity", "regularity"}));
  prb->add_option("--radius", cfg.radius, "Perturbation radius (sensitivity)");
  prb->add_option("--threshold", cfg.threshold,
                  "Separation threshold (sensitivity)");
  prb->add_option("--horizon", cfg.horizon,
                  "Step horizon (0 = kind default)");
  prb->add_option("--epsilon", cfg.epsilon, "Target distance (regularity)");
  prb->add_option("--state", cfg.state_text, "Center state value");
  prb->add_option("--stream", cfg.stream_text, "Center stream text");
  prb->add_option("--u-state", cfg.u_state_text, "U center state");
  prb->add_option("--u-stream", cfg.u_stream_text, "U center stream");
  prb->add_option("--v-state", cfg.v_state_text, "V center state");
  prb->add_option("--v-stream", cfg.v_stream_text, "V center stream");
  prb->add_option("--u-radius", cfg.u_radius, "U ball radius");
  prb->add_option("--v-radius", cfg.v_radius, "V ball radius");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  // Subcommand-specific defaults, applied only when the flag is absent.
  try {
    if (sim->parsed()) {
      if (sim->count("--n") == 0) cfg.n = 16;
      return run_simulate(cfg);
    }
    if (lya->parsed()) {
      if (lya->count("--n") == 0) cfg.n = 10000;
      return run_lyapunov(cfg);
    }
    if (cal->parsed()) {
      if (cal->count("--n") == 0) cfg.n = 10000;
      if (cal->count("--method") == 0) cfg.method = "closed-form";
      return run_calibrate(cfg);
    }
    if (com->parsed()) {
      if (com->count("--samples") == 0) cfg.samples = 1000;
      if (com->count("--n") == 0) cfg.n = 50;
      return run_commute_check(cfg);
    }
    if (dis->parsed()) {
      if (dis->count("--format") == 0) cfg.format = "csv";
      return run_distance_compare(cfg);
    }
    if (prb->parsed()) return run_probe(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitValidation;
}

int main(int argc, char** argv) { return run(argc, argv); }
