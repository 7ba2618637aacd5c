#include "entorder/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "entorder/convertibility.hpp"
#include "entorder/error.hpp"
#include "entorder/families.hpp"
#include "entorder/numfmt.hpp"
#include "entorder/oscillation.hpp"
#include "entorder/report.hpp"
#include "entorder/spectrum.hpp"
#include "entorder/spectrum_io.hpp"

namespace entorder::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A file named on the command line could not be read or is not a valid spectrum.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct WindowFlags {
  std::optional<std::size_t> n_min;
  std::optional<std::size_t> n_max;
};

struct Flags {
  // gen
  std::string family;
  std::optional<double> q;
  std::optional<double> delta;
  std::string convention = "schmidt";
  std::size_t n = 1000;
  unsigned k = 0;
  double r = 1.0;
  std::optional<double> offset;
  double grid_step = 0.01;
  double margin = 0.0;
  std::size_t rank = 4;
  std::uint64_t seed = 1;

  // inputs and output
  std::string a;
  std::string b;
  std::string output;
  std::string mode = "slocc";

  // estimate-r
  std::string ref_family = "xi";
  double r_min = 1.0;
  double r_max = 2.0;
  std::size_t steps = 21;
  std::optional<std::size_t> family_n;

  WindowFlags window;
  TrendThresholds thresholds;
};

SchmidtSpectrum load(const std::string& path) {
  try {
    return read_spectrum(path);
  } catch (const Error& e) {
    throw InputError(path + ": " + e.what());
  }
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file || !(file << text)) throw Error(Errc::InvalidArgument, "cannot write " + path);
}

void add_window_flags(CLI::App& cmd, Flags& f) {
  cmd.add_option("--n-min", f.window.n_min, "First index of the comparison window");
  cmd.add_option("--n-max", f.window.n_max, "Last index of the comparison window (default: safe horizon)");
  cmd.add_option("--drift", f.thresholds.drift_nats, "Running-extreme drift threshold in nats")
      ->capture_default_str();
  cmd.add_option("--min-windows", f.thresholds.min_windows, "Dyadic windows that must extend a drift")
      ->capture_default_str();
  cmd.add_option("--min-points", f.thresholds.min_points, "Minimum window length")->capture_default_str();
  cmd.add_option("--target-step", f.thresholds.target_step_nats, "Minimum move of a targeted extreme in nats")
      ->capture_default_str();
}

Window resolve_window(const Flags& f, const SchmidtSpectrum& a, const SchmidtSpectrum& b) {
  Window w{0, 0};
  if (!f.window.n_max) w = default_window(a, b);
  else w.n_max = *f.window.n_max;
  w.n_min = f.window.n_min.value_or(0);
  if (w.n_max < w.n_min) throw UsageError("--n-max must not be below --n-min");
  return w;
}

void check_thresholds(const TrendThresholds& t) {
  if (!(t.drift_nats > 0.0) || t.min_windows == 0 || t.min_points == 0 || !(t.target_step_nats > 0.0))
    throw UsageError("trend thresholds must be positive");
}

SchmidtSpectrum random_spectrum(std::size_t rank, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> w(rank);
  double total = 0.0;
  // Portable uniform (0, 1): the top 53 bits plus half a unit.
  for (double& x : w) total += x = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
  for (double& x : w) x /= total;
  auto s = build_spectrum(w, Ordering::SortInput);
  Metadata meta{{"family", "random"}, {"rank", std::to_string(rank)}, {"seed", std::to_string(seed)}};
  std::vector<double> lw(s.log_weights().begin(), s.log_weights().end());
  return SchmidtSpectrum::from_log_weights(std::move(lw), s.log_tail_bound(), std::move(meta));
}

SchmidtSpectrum cmd_gen(const Flags& f) {
  if (f.family == "random") {
    if (f.rank == 0) throw UsageError("--rank must be at least 1");
    return random_spectrum(f.rank, f.seed);
  }
  FamilyParams params;
  params.family = *parse_family(f.family);
  params.q = f.q;
  params.delta = f.delta;
  params.convention = *parse_delta_convention(f.convention);
  params.r = f.r;
  params.k = f.k;
  params.n = f.n;
  params.offset = f.offset;
  params.grid_step = f.grid_step;
  params.margin = f.margin;
  if (params.n == 0) throw UsageError("--n must be at least 1");
  if (f.q && !(*f.q >= 0.0 && *f.q < 1.0)) throw UsageError("--q must lie in [0, 1)");
  if (params.family != Family::Tmss && f.q && *f.q == 0.0 && !f.delta)
    throw UsageError("--q 0 gives no grid step; pass --delta");
  return generate(params);
}

Json cmd_info(const SchmidtSpectrum& s) {
  const auto stats = summary_stats(s);
  const double log_rem = log_excitation_remainder_bound(s);
  Json meta = Json::object();
  for (const auto& [key, value] : s.metadata()) meta[key] = value;
  return {{"command", "info"},
          {"size", s.size()},
          {"exact", s.is_exact()},
          {"log_tail_bound", json_number(s.log_tail_bound())},
          {"metadata", meta},
          {"stats", to_json(stats)},
          {"conditions", to_json(vidal_conditions(s))},
          {"log_excitation_remainder_bound", json_number(log_rem)},
          {"mean_excitation_upper", json_number(stats.mean_excitation + std::exp(log_rem))}};
}

Json cmd_compare(const Flags& f) {
  const auto a = load(f.a);
  const auto b = load(f.b);
  ComparisonReport report;
  if (f.mode == "locc") {
    report = locc_compare(a, b);
  } else if (f.mode == "prob") {
    report = probability_compare(a, b);
  } else {
    check_thresholds(f.thresholds);
    report = slocc_decide(a, b, resolve_window(f, a, b), f.thresholds);
  }
  Json out = to_json(report);
  out["command"] = "compare";
  return out;
}

Json cmd_certify(const Flags& f) {
  const auto a = load(f.a);
  const auto b = load(f.b);
  check_thresholds(f.thresholds);
  const Window window = resolve_window(f, a, b);
  const auto cert = incomparability_certificate(a, b, window, f.thresholds);
  const auto seq = log_ratio_sequence(a, b, window);
  const auto extrema = targeted_extrema(a, b, seq);
  auto witnesses = [](const std::vector<Witness>& list) {
    Json arr = Json::array();
    for (const auto& w : list) arr.push_back({{"n", w.n}, {"value", json_number(w.value)}});
    return arr;
  };
  return {{"command", "certify"},
          {"found", cert.has_value()},
          {"verified", cert ? verify_certificate(*cert, a, b) : false},
          {"certificate", cert ? to_json(*cert) : Json(nullptr)},
          {"window", to_json(window)},
          {"targeted", {{"maxima", witnesses(extrema.maxima)}, {"minima", witnesses(extrema.minima)}}}};
}

Json cmd_estimate(const Flags& f) {
  const auto psi = load(f.a);
  check_thresholds(f.thresholds);
  if (!(f.r_min > 0.0) || !(f.r_min <= f.r_max) || !std::isfinite(f.r_max))
    throw UsageError("need 0 < --r-min <= --r-max");
  if (f.steps == 0) throw UsageError("--steps must be at least 1");
  const double delta = f.delta ? *f.delta : psi.metadata_number("delta").value_or(NAN);
  if (!(delta > 0.0)) throw UsageError("psi has no delta metadata; pass --delta");
  const std::size_t n = f.family_n.value_or(psi.size());
  if (n == 0) throw UsageError("--n must be at least 1");

  const auto rs = sample_grid(f.r_min, f.r_max, f.steps);
  const XiFamily family(delta, n, rs, f.grid_step, f.margin);
  std::optional<Window> window;
  if (f.window.n_max) {
    window = Window{f.window.n_min.value_or(0), *f.window.n_max};
    if (window->n_max < window->n_min) throw UsageError("--n-max must not be below --n-min");
  }
  const auto estimate = estimate_r_bounds(psi, family, f.r_min, f.r_max, f.steps, window, f.thresholds);
  Json out = to_json(estimate);
  out["command"] = "estimate-r";
  out["family"] = {{"name", f.ref_family},
                   {"delta", json_number(delta)},
                   {"n", n},
                   {"offset", json_number(family.offset())}};
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Convertibility order of pure bipartite states from Schmidt spectra", "entorder"};
  app.require_subcommand(1);
  Flags f;

  auto* validate = app.add_subcommand("validate", "Check the Vidal tail-function conditions of a spectrum file");
  validate->add_option("file", f.a, "Spectrum file")->required();
  validate->add_option("-o,--output", f.output, "Write the report here instead of stdout");

  auto* info = app.add_subcommand("info", "Summary statistics, conditions and energy bound");
  info->add_option("file", f.a, "Spectrum file")->required();
  info->add_option("-o,--output", f.output, "Write the report here instead of stdout");

  auto* gen = app.add_subcommand("gen", "Generate a spectrum file");
  gen->add_option("family", f.family, "tmss | xi | psi | random")
      ->required()
      ->check(CLI::IsMember({"tmss", "xi", "psi", "random"}));
  gen->add_option("--q", f.q, "Squeezing parameter; sets Delta through --delta-convention");
  gen->add_option("--delta", f.delta, "Grid step Delta (overrides --q for xi and psi)")
      ->check(CLI::PositiveNumber);
  gen->add_option("--delta-convention", f.convention, "schmidt (Delta = -2 ln q) or amplitude (Delta = -ln q)")
      ->check(CLI::IsMember({"schmidt", "amplitude"}))
      ->capture_default_str();
  gen->add_option("--n", f.n, "Horizon N")->capture_default_str();
  gen->add_option("--k", f.k, "Exponent k of the psi family")->capture_default_str();
  gen->add_option("--r", f.r, "Parameter r of the xi family")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  gen->add_option("--offset", f.offset, "Curve offset a (default: smallest valid grid offset)")
      ->check(CLI::NonNegativeNumber);
  gen->add_option("--grid-step", f.grid_step, "Offset search step")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  gen->add_option("--margin", f.margin, "Required margin on the monotonicity functional")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  gen->add_option("--rank", f.rank, "Rank of a random spectrum")->capture_default_str();
  gen->add_option("--seed", f.seed, "Seed of a random spectrum")->capture_default_str();
  gen->add_option("-o,--output", f.output, "Write the spectrum here instead of stdout");

  auto* compare = app.add_subcommand("compare", "Decide convertibility of a into b");
  compare->add_option("a", f.a, "Source spectrum")->required();
  compare->add_option("b", f.b, "Target spectrum")->required();
  compare->add_option("--mode", f.mode, "locc | prob | slocc")
      ->check(CLI::IsMember({"locc", "prob", "slocc"}))
      ->capture_default_str();
  compare->add_option("-o,--output", f.output, "Write the report here instead of stdout");
  add_window_flags(*compare, f);

  auto* certify = app.add_subcommand("certify", "Search for an incomparability certificate");
  certify->add_option("a", f.a, "First spectrum")->required();
  certify->add_option("b", f.b, "Second spectrum")->required();
  certify->add_option("-o,--output", f.output, "Write the report here instead of stdout");
  add_window_flags(*certify, f);

  auto* estimate = app.add_subcommand("estimate-r", "Locate a state against the xi_r family");
  estimate->add_option("psi", f.a, "Spectrum to locate")->required();
  estimate->add_option("--family", f.ref_family, "Reference family")
      ->check(CLI::IsMember({"xi"}))
      ->capture_default_str();
  estimate->add_option("--r-min", f.r_min)->capture_default_str();
  estimate->add_option("--r-max", f.r_max)->capture_default_str();
  estimate->add_option("--steps", f.steps)->capture_default_str();
  estimate->add_option("--delta", f.delta, "Family grid step (default: psi's delta metadata)")
      ->check(CLI::PositiveNumber);
  estimate->add_option("--n", f.family_n, "Family horizon (default: size of psi)");
  estimate->add_option("--grid-step", f.grid_step, "Offset search step")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  estimate->add_option("--margin", f.margin)->check(CLI::NonNegativeNumber)->capture_default_str();
  estimate->add_option("-o,--output", f.output, "Write the report here instead of stdout");
  add_window_flags(*estimate, f);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (validate->parsed()) {
      const auto s = load(f.a);
      Json report{{"command", "validate"}, {"conditions", to_json(vidal_conditions(s))}, {"size", s.size()}};
      emit(canonical_dump(report), f.output, out);
    } else if (info->parsed()) {
      emit(canonical_dump(cmd_info(load(f.a))), f.output, out);
    } else if (gen->parsed()) {
      emit(format_spectrum(cmd_gen(f)), f.output, out);
    } else if (compare->parsed()) {
      emit(canonical_dump(cmd_compare(f)), f.output, out);
    } else if (certify->parsed()) {
      emit(canonical_dump(cmd_certify(f)), f.output, out);
    } else if (estimate->parsed()) {
      emit(canonical_dump(cmd_estimate(f)), f.output, out);
    }
  } catch (const UsageError& e) {
    err << "usage: " << e.what() << '\n';
    return kUsage;
  } catch (const InputError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kBadInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kOperationFailed;
  }
  return kOk;
}

}  // namespace entorder::cli
