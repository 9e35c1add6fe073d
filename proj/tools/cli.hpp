#ifndef PARETO_CFAR_TOOLS_CLI_HPP_
#define PARETO_CFAR_TOOLS_CLI_HPP_

// Command-line front end. Subcommands: threshold, detect, roc, cfar-sweep,
// compare, scan, validate.
//
// Exit codes: 0 success, 1 validation error, 2 in-run assertion failure,
// 3 I/O error.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pareto_cfar/pareto_cfar.hpp"

namespace pareto_cfar::cli {

enum ExitCode : int { kOk = 0, kValidationError = 1, kAssertionFailure = 2, kIoError = 3 };

inline constexpr const char *kSeedEnvironment = "PARETO_CFAR_SEED";

/// Accepts INI/TOML key=value files, or a JSON object whose nested objects
/// name subcommands: {"roc": {"trials": "1e6"}}.
class KeyValueOrJsonConfig : public CLI::ConfigTOML {
 public:
  std::vector<CLI::ConfigItem> from_config(std::istream &input) const override {
    const std::string text((std::istreambuf_iterator<char>(input)), std::istreambuf_iterator<char>());
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos || text[first] != '{') {
      std::istringstream rest(text);
      return CLI::ConfigTOML::from_config(rest);
    }
    nlohmann::json document;
    try {
      document = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception &e) {
      throw CLI::ConversionError("config", std::string("invalid JSON config: ") + e.what());
    }
    std::vector<CLI::ConfigItem> items;
    flatten(document, {}, items);
    return items;
  }

 private:
  static std::string scalar(const nlohmann::json &value) {
    if (value.is_string()) return value.get<std::string>();
    return value.dump();
  }

  static void flatten(const nlohmann::json &object, const std::vector<std::string> &parents,
                      std::vector<CLI::ConfigItem> &items) {
    for (const auto &[key, value] : object.items()) {
      if (value.is_object()) {
        auto nested = parents;
        nested.push_back(key);
        flatten(value, nested, items);
        continue;
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = key;
      if (value.is_array()) {
        for (const auto &element : value) item.inputs.push_back(scalar(element));
      } else {
        item.inputs.push_back(scalar(value));
      }
      items.push_back(std::move(item));
    }
  }
};

namespace detail {

struct AssertionFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OutputOptions {
  std::string path = "-";
  std::string format = "csv";
};

inline void write_text(const std::string &path, const std::string &text, std::ostream &out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) pareto_cfar::detail::fail(ErrorKind::Io, "cannot open '" + path + "' for writing");
  file << text;
  if (!file) pareto_cfar::detail::fail(ErrorKind::Io, "failed writing '" + path + "'");
}

/// CSV goes to the path with metadata in a `<path>.meta.json` sidecar; JSON
/// wraps metadata and result in one document.
inline void emit(const OutputOptions &output, const std::string &csv, const nlohmann::json &result,
                 const nlohmann::json &metadata, std::ostream &out) {
  if (output.format == "json") {
    write_text(output.path, nlohmann::json{{"metadata", metadata}, {"result", result}}.dump(2) + "\n",
               out);
    return;
  }
  write_text(output.path, csv, out);
  if (!output.path.empty() && output.path != "-") {
    write_text(output.path + ".meta.json", metadata.dump(2) + "\n", out);
  }
}

inline void add_output_options(CLI::App *cmd, OutputOptions &output) {
  cmd->add_option("--out,-o", output.path, "Output file ('-' for standard output)");
  cmd->add_option("--format", output.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
}

inline void add_seed_option(CLI::App *cmd, std::string &seed) {
  cmd->add_option("--seed", seed, "Random seed")->envname(kSeedEnvironment);
}

inline std::uint64_t parse_seed(const std::string &text) {
  std::uint64_t value = 0;
  const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || result.ec != std::errc() || result.ptr != text.data() + text.size()) {
    pareto_cfar::detail::fail(ErrorKind::InvalidParameters, "seed must be an unsigned integer, got '" + text + "'");
  }
  return value;
}

inline DetectorSpec make_spec(DetectorKind kind, double pfa, std::size_t n,
                              std::optional<double> alpha, std::optional<double> h) {
  switch (kind) {
    case DetectorKind::Clairvoyant:
      if (!alpha || !h) {
        pareto_cfar::detail::fail(ErrorKind::InvalidParameters, "clairvoyant needs --alpha and --h");
      }
      return DetectorSpec::clairvoyant(pfa, ParetoParams(*alpha, *h), n);
    case DetectorKind::CaseA:
      if (!h) pareto_cfar::detail::fail(ErrorKind::InvalidParameters, "case-a needs the known scale --h");
      return DetectorSpec::case_a(pfa, n, *h);
    case DetectorKind::CaseB:
      return DetectorSpec::case_b(pfa, n);
  }
  pareto_cfar::detail::fail(ErrorKind::InvalidParameters, "unknown detector");
}

inline std::optional<double> opt(const CLI::Option *option, double value) {
  if (option->count() > 0) return value;
  return std::nullopt;
}

inline std::string summary_number(double value) {
  std::ostringstream s;
  s.precision(6);
  s << value;
  return s.str();
}

// ---------------------------------------------------------------------------

struct ThresholdArgs {
  std::string kind;
  double pfa = 0.0;
  std::size_t n = 0;
  double alpha = 0.0;
  double h = 0.0;
  CLI::Option *alphaOpt = nullptr;
  CLI::Option *hOpt = nullptr;
};

inline int run_threshold(const ThresholdArgs &a, std::ostream &out) {
  const DetectorKind kind = parse_detector_kind(a.kind);
  // The known scale plays no role in the case-a threshold.
  const auto h = kind == DetectorKind::CaseA ? std::optional<double>(opt(a.hOpt, a.h).value_or(1.0))
                                             : opt(a.hOpt, a.h);
  const DetectorSpec spec = make_spec(kind, a.pfa, a.n, opt(a.alphaOpt, a.alpha), h);
  const ThresholdInfo info = describe_threshold(spec);
  out << "kind=" << to_string(kind) << '\n'
      << "pfa=" << format_number(a.pfa) << '\n'
      << "n=" << a.n << '\n'
      << "threshold=" << format_number(info.value) << '\n'
      << "regime=" << (info.exactRegime ? "exact" : "approximate") << '\n';
  return kOk;
}

struct DetectArgs {
  std::string kind;
  double pfa = 0.0;
  double y = 0.0;
  std::string window;
  double alpha = 0.0;
  double h = 0.0;
  CLI::Option *alphaOpt = nullptr;
  CLI::Option *hOpt = nullptr;
};

inline int run_detect(const DetectArgs &a, std::ostream &out) {
  const DetectorKind kind = parse_detector_kind(a.kind);
  DetectionInput input;
  input.cut = a.y;
  if (!a.window.empty()) input.window = parse_grid(a.window);
  input.knownScale = opt(a.hOpt, a.h);
  const DetectorSpec spec =
      make_spec(kind, a.pfa, input.window.size(), opt(a.alphaOpt, a.alpha), input.knownScale);
  const Decision decision = detect(spec, input);
  out << "target_present=" << (decision.targetPresent ? 1 : 0) << '\n'
      << "statistic=" << format_number(decision.statistic) << '\n'
      << "threshold=" << format_number(decision.threshold) << '\n';
  return kOk;
}

struct RocArgs {
  std::string kind;
  std::size_t n = 4;
  double alpha = 0.0;
  double rho = 0.0;
  double h = 1.0;
  std::string pfaGrid;
  std::string trials = "1e6";
  bool fullScale = false;
  std::string mode = "both";
  std::string seed = "1";
  unsigned threads = 0;
  OutputOptions output;
};

inline int run_roc(const RocArgs &a, std::ostream &out, std::ostream &log) {
  const DetectorKind kind = parse_detector_kind(a.kind);
  const std::vector<double> grid = parse_grid(a.pfaGrid);
  const std::uint64_t trials = a.fullScale ? kFullScaleTrials : parse_count(a.trials);
  const std::uint64_t seed = parse_seed(a.seed);
  const ParetoParams clutter(a.alpha, a.h);
  const ParetoParams target(a.rho, a.h);
  const DetectorSpec spec = make_spec(kind, grid.front(), a.n, a.alpha, a.h);
  const EngineOptions engine{a.threads};

  std::optional<RocCurve> theory;
  std::optional<RocCurve> simulation;
  if (a.mode != "simulation") {
    theory = roc_curve(spec, clutter, target, grid, RocSource::Theory, trials, seed, engine);
  }
  if (a.mode != "theory") {
    simulation = roc_curve(spec, clutter, target, grid, RocSource::Simulation, trials, seed, engine);
  }
  const auto rows = roc_rows(theory ? &*theory : nullptr, simulation ? &*simulation : nullptr);

  nlohmann::json result = nlohmann::json::object();
  if (theory) result["theory"] = *theory;
  if (simulation) result["simulation"] = *simulation;
  const nlohmann::json metadata = {{"command", "roc"},  {"detector", a.kind}, {"window_size", a.n},
                                   {"alpha", a.alpha},  {"rho", a.rho},       {"h", a.h},
                                   {"trials", trials},  {"seed", seed},       {"mode", a.mode},
                                   {"point_seed_rule", "seed + point index"}};
  emit(a.output, roc_csv(rows), result, metadata, out);

  std::size_t violations = 0;
  double worst = 0.0;
  if (theory && simulation) {
    worst = max_sigma_deviation(*theory, *simulation);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (!simulation->points[i].estimate->contains(theory->points[i].pd)) ++violations;
    }
  }
  log << "roc: points=" << grid.size() << " max_sigma=" << summary_number(worst)
      << " ci_violations=" << violations << '\n';
  if (worst > 3.0) throw AssertionFailure("simulated ROC deviates from theory by more than 3 sigma");
  return kOk;
}

struct SweepArgs {
  std::string kind;
  std::size_t n = kDefaultSweepWindow;
  std::string alphaGrid;
  std::string hGrid;
  double pfa = 0.0;
  std::string trials = "1e6";
  bool fullScale = false;
  std::string seed = "1";
  unsigned threads = 0;
  OutputOptions output;
};

inline int run_sweep(const SweepArgs &a, std::ostream &out, std::ostream &log) {
  const DetectorKind kind = parse_detector_kind(a.kind);
  const std::vector<double> alphas = parse_grid(a.alphaGrid);
  const std::vector<double> hs = parse_grid(a.hGrid);
  std::uint64_t trials = parse_count(a.trials);
  if (a.fullScale) {
    trials = kFullScaleTrials;
  } else if (trials > kSweepTrialCap) {
    pareto_cfar::detail::fail(ErrorKind::InvalidParameters,
                              "sweeps are capped at 1e7 trials per point; pass --full-scale for 1e8");
  }
  if (kind == DetectorKind::Clairvoyant) {
    pareto_cfar::detail::fail(ErrorKind::InvalidParameters,
                              "the clairvoyant detector is not adaptive; sweep case-a or case-b");
  }
  const std::uint64_t seed = parse_seed(a.seed);
  const DetectorSpec spec = make_spec(kind, a.pfa, a.n, std::nullopt, hs.front());
  const SweepResult sweep = cfar_sweep(spec, alphas, hs, trials, seed, EngineOptions{a.threads});

  const nlohmann::json metadata = {
      {"command", "cfar-sweep"}, {"detector", a.kind},   {"window_size", a.n},
      {"pfa_nominal", a.pfa},    {"trials", trials},     {"seed", seed},
      {"window_size_default", kDefaultSweepWindow},      {"point_seed_rule", "seed + point index"}};
  emit(a.output, sweep_csv(sweep), nlohmann::json(sweep), metadata, out);

  std::size_t violations = 0;
  double worstRelative = 0.0;
  for (const TrialEstimate &e : sweep.estimates) {
    if (!e.contains(sweep.nominal)) ++violations;
    worstRelative = std::max(worstRelative, std::abs(e.probability - sweep.nominal) / sweep.nominal);
  }
  log << "cfar-sweep: points=" << sweep.estimates.size()
      << " max_rel_dev=" << summary_number(worstRelative) << " ci_violations=" << violations
      << " flatness_z=" << summary_number(sweep_flatness_z(sweep)) << '\n';
  if (violations > 0) throw AssertionFailure("empirical pfa outside its 99% interval");
  return kOk;
}

struct CompareArgs {
  std::size_t n = 4;
  double alpha = 0.0;
  double rho = 0.0;
  double h = 1.0;
  std::string pfaGrid;
  std::string mode = "theory";
  std::string trials = "1e6";
  std::string seed = "1";
  unsigned threads = 0;
  OutputOptions output;
};

inline int run_compare(const CompareArgs &a, std::ostream &out, std::ostream &log) {
  const std::vector<double> grid = parse_grid(a.pfaGrid);
  const RocSource source = a.mode == "simulation" ? RocSource::Simulation : RocSource::Theory;
  const std::uint64_t trials = parse_count(a.trials);
  const std::uint64_t seed = parse_seed(a.seed);
  const ComparisonResult result =
      compare_to_clairvoyant(a.n, ParetoParams(a.alpha, a.h), ParetoParams(a.rho, a.h), grid,
                             source, trials, seed, EngineOptions{a.threads});
  const nlohmann::json metadata = {{"command", "compare"}, {"window_size", a.n}, {"alpha", a.alpha},
                                   {"rho", a.rho},         {"h", a.h},          {"mode", a.mode},
                                   {"trials", trials},     {"seed", seed}};
  emit(a.output, compare_csv(compare_rows(result)), nlohmann::json(result), metadata, out);

  double minGapA = std::numeric_limits<double>::infinity();
  double maxGapA = -std::numeric_limits<double>::infinity();
  for (const double g : result.gapA) {
    minGapA = std::min(minGapA, g);
    maxGapA = std::max(maxGapA, g);
  }
  log << "compare: points=" << grid.size() << " gap_a_min=" << summary_number(minGapA)
      << " gap_a_max=" << summary_number(maxGapA) << '\n';
  if (source == RocSource::Theory && minGapA < 0.0) {
    throw AssertionFailure("case-a ROC exceeds the clairvoyant bound");
  }
  return kOk;
}

struct ScanArgs {
  std::string kind;
  double pfa = 0.0;
  std::size_t n = kDefaultSweepWindow;
  std::size_t guard = kDefaultGuardCells;
  std::string cells = "100012";
  double alpha = 0.0;
  double h = 1.0;
  std::vector<std::string> targets;
  std::string seed = "1";
  unsigned threads = 0;
  std::string profileOut;
  OutputOptions output;
};

inline int run_scan(const ScanArgs &a, std::ostream &out, std::ostream &log) {
  const DetectorKind kind = parse_detector_kind(a.kind);
  if (a.n % 2 != 0) pareto_cfar::detail::fail(ErrorKind::InvalidParameters, "scan needs an even --n");
  ProfileConfig config;
  config.cellCount = static_cast<std::size_t>(parse_count(a.cells));
  config.clutter = ParetoParams(a.alpha, a.h);
  config.halfWindow = a.n / 2;
  config.guard = a.guard;
  config.seed = parse_seed(a.seed);
  for (const std::string &t : a.targets) {
    const auto colon = t.find(':');
    if (colon == std::string::npos) {
      pareto_cfar::detail::fail(ErrorKind::InvalidParameters, "--target expects index:rho, got '" + t + "'");
    }
    config.targets.push_back({static_cast<std::size_t>(parse_number(t.substr(0, colon))),
                              parse_number(t.substr(colon + 1))});
  }
  const DetectorSpec spec = make_spec(kind, a.pfa, a.n, a.alpha, a.h);
  const RangeProfile profile = generate_profile(config);
  const ProfileScan scan = scan_profile(profile.intensities, spec, a.guard, EngineOptions{a.threads});
  const auto rows = scan_rows(scan);

  const nlohmann::json metadata = {{"command", "scan"},
                                   {"detector", a.kind},
                                   {"window_size", a.n},
                                   {"half_window", config.halfWindow},
                                   {"guard", a.guard},
                                   {"guard_default", kDefaultGuardCells},
                                   {"cells", config.cellCount},
                                   {"alpha", a.alpha},
                                   {"h", a.h},
                                   {"pfa", a.pfa},
                                   {"seed", config.seed},
                                   {"targets", a.targets},
                                   {"interfering_targets", profile.interferingTargets}};
  emit(a.output, scan_csv(rows), nlohmann::json(rows), metadata, out);
  if (!a.profileOut.empty()) write_text(a.profileOut, profile_csv(profile), out);

  const auto eligible = scan.decision_count();
  const auto detections = scan.detection_count();
  const TrialEstimate fraction = TrialEstimate::from_counts(detections, eligible);
  log << "scan: eligible=" << eligible << " detections=" << detections
      << " fraction=" << summary_number(fraction.probability)
      << (profile.interferingTargets ? " warning=interfering-targets" : "") << '\n';
  if (config.targets.empty() && !fraction.contains(a.pfa)) {
    throw AssertionFailure("clutter-only false-alarm fraction outside its 99% interval");
  }
  return kOk;
}

struct ValidateArgs {
  std::string samples = "1e5";
  std::string seed = "1";
  double alpha = 5.0;
  double h = 0.7;
  bool forceMismatch = false;
  std::string out = "-";
};

inline int run_validate(const ValidateArgs &a, std::ostream &out, std::ostream &log) {
  ValidationConfig config;
  config.samples = static_cast<std::size_t>(parse_count(a.samples));
  config.seed = parse_seed(a.seed);
  config.alpha = a.alpha;
  config.h = a.h;
  config.forceMismatch = a.forceMismatch;
  static_cast<void>(ParetoParams(a.alpha, a.h));
  const ValidationReport report = run_identity_suite(config);
  write_text(a.out, to_json_report(report).dump(2) + "\n", out);
  std::size_t failed = 0;
  for (const auto &c : report.checks) failed += c.passed ? 0 : 1;
  log << "validate: checks=" << report.checks.size() << " failed=" << failed << '\n';
  if (failed > 0) throw AssertionFailure("identity checks failed");
  return kOk;
}

}  // namespace detail

/// Runs one CLI invocation. `out` receives results, `log` summaries and errors.
inline int run(int argc, const char *const *argv, std::ostream &out, std::ostream &log) {
  CLI::App app{"GLRT CFAR detection of Pareto targets in Pareto clutter"};
  // "--h" names the clutter scale, so help is long-form only.
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  app.fallthrough();
  app.config_formatter(std::make_shared<KeyValueOrJsonConfig>());
  app.set_config("--config", "", "Key/value (INI/TOML) or JSON config file; flags override it");

  detail::ThresholdArgs threshold;
  auto *cThreshold = app.add_subcommand("threshold", "Print the detection threshold for a design pfa");
  cThreshold->add_option("--kind", threshold.kind, "clairvoyant | case-a | case-b")->required();
  cThreshold->add_option("--pfa", threshold.pfa, "Design false-alarm probability")->required();
  cThreshold->add_option("--n", threshold.n, "Reference window size");
  threshold.alphaOpt = cThreshold->add_option("--alpha", threshold.alpha, "Clutter shape (clairvoyant)");
  threshold.hOpt = cThreshold->add_option("--h", threshold.h, "Clutter scale");

  detail::DetectArgs det;
  auto *cDetect = app.add_subcommand("detect", "Run one detection on a CUT value and window");
  cDetect->add_option("--kind", det.kind, "clairvoyant | case-a | case-b")->required();
  cDetect->add_option("--pfa", det.pfa, "Design false-alarm probability")->required();
  cDetect->add_option("--y", det.y, "Cell-under-test observation")->required();
  cDetect->add_option("--x", det.window, "Reference window, comma separated");
  det.alphaOpt = cDetect->add_option("--alpha", det.alpha, "Clutter shape (clairvoyant)");
  det.hOpt = cDetect->add_option("--h", det.h, "Known clutter scale");

  detail::RocArgs roc;
  auto *cRoc = app.add_subcommand("roc", "ROC curve, closed form and/or Monte Carlo");
  cRoc->add_option("--kind", roc.kind, "clairvoyant | case-a | case-b")->required();
  cRoc->add_option("--n", roc.n, "Reference window size");
  cRoc->add_option("--alpha", roc.alpha, "Clutter shape")->required();
  cRoc->add_option("--rho", roc.rho, "Target shape")->required();
  cRoc->add_option("--h", roc.h, "Common scale");
  cRoc->add_option("--pfa-grid", roc.pfaGrid, "Increasing pfa values")->required();
  cRoc->add_option("--trials", roc.trials, "Monte Carlo trials per point");
  cRoc->add_flag("--full-scale", roc.fullScale, "Use 1e8 trials per point");
  cRoc->add_option("--mode", roc.mode, "theory | simulation | both")
      ->check(CLI::IsMember({"theory", "simulation", "both"}));
  cRoc->add_option("--threads", roc.threads, "Worker threads (0: all cores)");
  detail::add_seed_option(cRoc, roc.seed);
  detail::add_output_options(cRoc, roc.output);

  detail::SweepArgs sweep;
  auto *cSweep = app.add_subcommand("cfar-sweep", "Empirical pfa across clutter parameters");
  cSweep->add_option("--kind", sweep.kind, "case-a | case-b")->required();
  cSweep->add_option("--n", sweep.n, "Reference window size");
  cSweep->add_option("--alpha", sweep.alphaGrid, "Clutter shape grid")->required();
  cSweep->add_option("--h", sweep.hGrid, "Clutter scale grid")->required();
  cSweep->add_option("--pfa", sweep.pfa, "Design false-alarm probability")->required();
  cSweep->add_option("--trials", sweep.trials, "Monte Carlo trials per point (max 1e7)");
  cSweep->add_flag("--full-scale", sweep.fullScale, "Use 1e8 trials per point");
  cSweep->add_option("--threads", sweep.threads, "Worker threads (0: all cores)");
  detail::add_seed_option(cSweep, sweep.seed);
  detail::add_output_options(cSweep, sweep.output);

  detail::CompareArgs cmp;
  auto *cCompare = app.add_subcommand("compare", "Clairvoyant bound against both GLRT detectors");
  cCompare->add_option("--n", cmp.n, "Reference window size");
  cCompare->add_option("--alpha", cmp.alpha, "Clutter shape")->required();
  cCompare->add_option("--rho", cmp.rho, "Target shape")->required();
  cCompare->add_option("--h", cmp.h, "Common scale");
  cCompare->add_option("--pfa-grid", cmp.pfaGrid, "Increasing pfa values")->required();
  cCompare->add_option("--mode", cmp.mode, "theory | simulation")
      ->check(CLI::IsMember({"theory", "simulation"}));
  cCompare->add_option("--trials", cmp.trials, "Monte Carlo trials per point");
  cCompare->add_option("--threads", cmp.threads, "Worker threads (0: all cores)");
  detail::add_seed_option(cCompare, cmp.seed);
  detail::add_output_options(cCompare, cmp.output);

  detail::ScanArgs scan;
  auto *cScan = app.add_subcommand("scan", "Generate a range profile and scan it");
  cScan->add_option("--kind", scan.kind, "clairvoyant | case-a | case-b")->required();
  cScan->add_option("--pfa", scan.pfa, "Design false-alarm probability")->required();
  cScan->add_option("--n", scan.n, "Reference window size (even)");
  cScan->add_option("--guard", scan.guard, "Guard cells per side");
  cScan->add_option("--cells", scan.cells, "Profile length");
  cScan->add_option("--alpha", scan.alpha, "Clutter shape")->required();
  cScan->add_option("--h", scan.h, "Clutter scale");
  cScan->add_option("--target", scan.targets, "Planted target index:rho (repeatable)");
  cScan->add_option("--profile-out", scan.profileOut, "Also write the profile CSV here");
  cScan->add_option("--threads", scan.threads, "Worker threads (0: all cores)");
  detail::add_seed_option(cScan, scan.seed);
  detail::add_output_options(cScan, scan.output);

  detail::ValidateArgs val;
  auto *cValidate = app.add_subcommand("validate", "Run the distributional identity checks");
  cValidate->add_option("--samples", val.samples, "Samples per identity");
  cValidate->add_option("--alpha", val.alpha, "Clutter shape");
  cValidate->add_option("--h", val.h, "Clutter scale");
  cValidate->add_flag("--force-mismatch", val.forceMismatch, "Add a negative control that must fail");
  cValidate->add_option("--out,-o", val.out, "Report file ('-' for standard output)");
  detail::add_seed_option(cValidate, val.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    std::ostringstream help;
    const int code = app.exit(e, help, help);
    (code == 0 ? out : log) << help.str();
    return code == 0 ? kOk : kValidationError;
  }

  try {
    if (cThreshold->parsed()) return detail::run_threshold(threshold, out);
    if (cDetect->parsed()) return detail::run_detect(det, out);
    if (cRoc->parsed()) return detail::run_roc(roc, out, log);
    if (cSweep->parsed()) return detail::run_sweep(sweep, out, log);
    if (cCompare->parsed()) return detail::run_compare(cmp, out, log);
    if (cScan->parsed()) return detail::run_scan(scan, out, log);
    if (cValidate->parsed()) return detail::run_validate(val, out, log);
  } catch (const detail::AssertionFailure &e) {
    log << "assertion failed: " << e.what() << '\n';
    return kAssertionFailure;
  } catch (const Error &e) {
    log << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::Io ? kIoError : kValidationError;
  }
  return kValidationError;
}

}  // namespace pareto_cfar::cli

#endif  // PARETO_CFAR_TOOLS_CLI_HPP_
