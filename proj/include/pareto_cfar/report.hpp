#ifndef PARETO_CFAR_REPORT_HPP_
#define PARETO_CFAR_REPORT_HPP_

// Plot-ready serialization. CSV headers are a fixed contract:
//
//   roc      pfa,pd_theory,pd_sim,ci_low,ci_high,trials
//   sweep    alpha,h,pfa_nominal,pfa_emp,ci_low,ci_high,trials
//   compare  pfa,pd_clairvoyant,pd_case_a,pd_case_b,gap_a,gap_b
//   scan     index,statistic,threshold,decision
//   profile  index,intensity,isTarget
//
// Numbers are written with 17 significant digits so every double reloads
// bit-exactly. Absent values are empty fields.

#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "pareto_cfar/detectors.hpp"
#include "pareto_cfar/errors.hpp"
#include "pareto_cfar/montecarlo.hpp"
#include "pareto_cfar/rangeprofile.hpp"

namespace pareto_cfar {

inline constexpr std::string_view kRocHeader = "pfa,pd_theory,pd_sim,ci_low,ci_high,trials";
inline constexpr std::string_view kSweepHeader =
    "alpha,h,pfa_nominal,pfa_emp,ci_low,ci_high,trials";
inline constexpr std::string_view kCompareHeader =
    "pfa,pd_clairvoyant,pd_case_a,pd_case_b,gap_a,gap_b";
inline constexpr std::string_view kScanHeader = "index,statistic,threshold,decision";
inline constexpr std::string_view kProfileHeader = "index,intensity,isTarget";

// ---------------------------------------------------------------------------
// Numbers and grids

inline std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[64];
  const auto result =
      std::to_chars(buffer, buffer + sizeof(buffer), value, std::chars_format::general, 17);
  return std::string(buffer, result.ptr);
}

inline double parse_number(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\r')) text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || result.ec != std::errc() || result.ptr != text.data() + text.size()) {
    detail::fail(ErrorKind::InvalidParameters, "not a number: '" + std::string(text) + "'");
  }
  return value;
}

/// Trial counts are accepted in floating notation ("1e6") but must be whole.
inline std::uint64_t parse_count(std::string_view text) {
  const double value = parse_number(text);
  if (!(value >= 1.0) || value != std::floor(value) || value > 9.0e15) {
    detail::fail(ErrorKind::InvalidParameters,
                 "expected a positive whole count, got '" + std::string(text) + "'");
  }
  return static_cast<std::uint64_t>(value);
}

/// "start:stop:step" (endpoints inclusive within half a step), a comma list,
/// or a single value.
inline std::vector<double> parse_grid(std::string_view text) {
  std::vector<double> values;
  if (text.find(':') != std::string_view::npos) {
    std::vector<double> parts;
    std::size_t begin = 0;
    while (true) {
      const std::size_t colon = text.find(':', begin);
      parts.push_back(parse_number(text.substr(begin, colon - begin)));
      if (colon == std::string_view::npos) break;
      begin = colon + 1;
    }
    if (parts.size() != 3) {
      detail::fail(ErrorKind::InvalidParameters,
                   "range grid needs start:stop:step, got '" + std::string(text) + "'");
    }
    const double start = parts[0];
    const double stop = parts[1];
    const double step = parts[2];
    if (!(step > 0.0) || stop < start) {
      detail::fail(ErrorKind::InvalidParameters,
                   "range grid needs step > 0 and stop >= start: '" + std::string(text) + "'");
    }
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 0.5));
    for (std::size_t k = 0; k <= count; ++k) values.push_back(start + step * static_cast<double>(k));
    return values;
  }
  std::size_t begin = 0;
  while (true) {
    const std::size_t comma = text.find(',', begin);
    values.push_back(parse_number(text.substr(begin, comma - begin)));
    if (comma == std::string_view::npos) break;
    begin = comma + 1;
  }
  return values;
}

// ---------------------------------------------------------------------------
// CSV plumbing

namespace detail {

inline std::string optional_number(const std::optional<double> &value) {
  return value ? format_number(*value) : std::string();
}

inline std::optional<double> parse_optional(std::string_view text) {
  if (text.empty() || text == "\r") return std::nullopt;
  return parse_number(text);
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t begin = 0;
  while (true) {
    const std::size_t comma = line.find(',', begin);
    fields.push_back(line.substr(begin, comma - begin));
    if (comma == std::string_view::npos) break;
    begin = comma + 1;
  }
  return fields;
}

/// Data lines of a CSV document after checking its header; each line is
/// split into exactly `columns` fields.
inline std::vector<std::vector<std::string_view>> read_csv(std::string_view text,
                                                           std::string_view header) {
  std::vector<std::vector<std::string_view>> rows;
  bool sawHeader = false;
  std::size_t columns = split_fields(header).size();
  std::size_t begin = 0;
  while (begin < text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(begin, end - begin);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    begin = end + 1;
    if (line.empty()) continue;
    if (!sawHeader) {
      if (line != header) {
        fail(ErrorKind::InvalidParameters, "unexpected CSV header '" + std::string(line) +
                                               "', expected '" + std::string(header) + "'");
      }
      sawHeader = true;
      continue;
    }
    auto fields = split_fields(line);
    if (fields.size() != columns) {
      fail(ErrorKind::InvalidParameters, "CSV row has " + std::to_string(fields.size()) +
                                             " fields, expected " + std::to_string(columns));
    }
    rows.push_back(std::move(fields));
  }
  if (!sawHeader) fail(ErrorKind::InvalidParameters, "CSV document has no header");
  return rows;
}

inline std::uint64_t parse_index(std::string_view text) {
  std::uint64_t value = 0;
  const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || result.ec != std::errc() || result.ptr != text.data() + text.size()) {
    fail(ErrorKind::InvalidParameters, "not an index: '" + std::string(text) + "'");
  }
  return value;
}

inline TrialEstimate estimate_from_fields(double probability, double ciLow, double ciHigh,
                                          std::uint64_t trials) {
  const auto hits = static_cast<std::uint64_t>(std::llround(probability * static_cast<double>(trials)));
  return {probability, trials, hits, ciLow, ciHigh};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// roc

struct RocRow {
  double pfa = 0.0;
  std::optional<double> pdTheory;
  std::optional<TrialEstimate> simulation;

  friend bool operator==(const RocRow &, const RocRow &) = default;
};

/// Merges aligned theory and/or simulation curves into table rows.
inline std::vector<RocRow> roc_rows(const RocCurve *theory, const RocCurve *simulation) {
  const RocCurve *base = theory != nullptr ? theory : simulation;
  if (base == nullptr) detail::fail(ErrorKind::InvalidParameters, "no curve to tabulate");
  if (theory && simulation && theory->points.size() != simulation->points.size()) {
    detail::fail(ErrorKind::InvalidParameters, "theory and simulation curves are not aligned");
  }
  std::vector<RocRow> rows;
  for (std::size_t i = 0; i < base->points.size(); ++i) {
    RocRow row{base->points[i].pfa, std::nullopt, std::nullopt};
    if (theory) row.pdTheory = theory->points[i].pd;
    if (simulation) row.simulation = simulation->points[i].estimate;
    rows.push_back(row);
  }
  return rows;
}

inline std::string roc_csv(const std::vector<RocRow> &rows) {
  std::ostringstream out;
  out << kRocHeader << '\n';
  for (const RocRow &row : rows) {
    out << format_number(row.pfa) << ',' << detail::optional_number(row.pdTheory) << ',';
    if (row.simulation) {
      const TrialEstimate &e = *row.simulation;
      out << format_number(e.probability) << ',' << format_number(e.ciLow) << ','
          << format_number(e.ciHigh) << ',' << e.trials;
    } else {
      out << ",,,";
    }
    out << '\n';
  }
  return out.str();
}

inline std::vector<RocRow> parse_roc_csv(std::string_view text) {
  std::vector<RocRow> rows;
  for (const auto &f : detail::read_csv(text, kRocHeader)) {
    RocRow row{parse_number(f[0]), detail::parse_optional(f[1]), std::nullopt};
    if (!f[2].empty()) {
      row.simulation = detail::estimate_from_fields(parse_number(f[2]), parse_number(f[3]),
                                                    parse_number(f[4]), detail::parse_index(f[5]));
    }
    rows.push_back(row);
  }
  return rows;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepRow {
  double alpha = 0.0;
  double h = 0.0;
  double nominal = 0.0;
  TrialEstimate estimate;

  friend bool operator==(const SweepRow &, const SweepRow &) = default;
};

inline std::vector<SweepRow> sweep_rows(const SweepResult &sweep) {
  std::vector<SweepRow> rows;
  for (std::size_t i = 0; i < sweep.axis.size(); ++i) {
    rows.push_back({sweep.axis[i].alpha, sweep.axis[i].h, sweep.nominal, sweep.estimates[i]});
  }
  return rows;
}

/// Rebuilds a sweep from its table; kind and window size live in metadata.
inline SweepResult sweep_from_rows(const std::vector<SweepRow> &rows, DetectorKind kind,
                                   std::size_t windowSize) {
  SweepResult sweep{kind, windowSize, rows.empty() ? 0.0 : rows.front().nominal, {}, {}};
  for (const SweepRow &row : rows) {
    sweep.axis.push_back({row.alpha, row.h});
    sweep.estimates.push_back(row.estimate);
  }
  return sweep;
}

inline std::string sweep_csv(const SweepResult &sweep) {
  std::ostringstream out;
  out << kSweepHeader << '\n';
  for (const SweepRow &row : sweep_rows(sweep)) {
    const TrialEstimate &e = row.estimate;
    out << format_number(row.alpha) << ',' << format_number(row.h) << ','
        << format_number(row.nominal) << ',' << format_number(e.probability) << ','
        << format_number(e.ciLow) << ',' << format_number(e.ciHigh) << ',' << e.trials << '\n';
  }
  return out.str();
}

inline std::vector<SweepRow> parse_sweep_csv(std::string_view text) {
  std::vector<SweepRow> rows;
  for (const auto &f : detail::read_csv(text, kSweepHeader)) {
    rows.push_back({parse_number(f[0]), parse_number(f[1]), parse_number(f[2]),
                    detail::estimate_from_fields(parse_number(f[3]), parse_number(f[4]),
                                                 parse_number(f[5]), detail::parse_index(f[6]))});
  }
  return rows;
}

// ---------------------------------------------------------------------------
// compare

struct CompareRow {
  double pfa = 0.0;
  double pdClairvoyant = 0.0;
  double pdCaseA = 0.0;
  double pdCaseB = 0.0;
  double gapA = 0.0;
  double gapB = 0.0;

  friend bool operator==(const CompareRow &, const CompareRow &) = default;
};

inline std::vector<CompareRow> compare_rows(const ComparisonResult &result) {
  std::vector<CompareRow> rows;
  for (std::size_t i = 0; i < result.clairvoyant.points.size(); ++i) {
    rows.push_back({result.clairvoyant.points[i].pfa, result.clairvoyant.points[i].pd,
                    result.caseA.points[i].pd, result.caseB.points[i].pd, result.gapA[i],
                    result.gapB[i]});
  }
  return rows;
}

inline std::string compare_csv(const std::vector<CompareRow> &rows) {
  std::ostringstream out;
  out << kCompareHeader << '\n';
  for (const CompareRow &r : rows) {
    out << format_number(r.pfa) << ',' << format_number(r.pdClairvoyant) << ','
        << format_number(r.pdCaseA) << ',' << format_number(r.pdCaseB) << ','
        << format_number(r.gapA) << ',' << format_number(r.gapB) << '\n';
  }
  return out.str();
}

inline std::vector<CompareRow> parse_compare_csv(std::string_view text) {
  std::vector<CompareRow> rows;
  for (const auto &f : detail::read_csv(text, kCompareHeader)) {
    rows.push_back({parse_number(f[0]), parse_number(f[1]), parse_number(f[2]),
                    parse_number(f[3]), parse_number(f[4]), parse_number(f[5])});
  }
  return rows;
}

// ---------------------------------------------------------------------------
// scan and profile

struct ScanRow {
  std::size_t index = 0;
  Decision decision;

  friend bool operator==(const ScanRow &, const ScanRow &) = default;
};

inline std::vector<ScanRow> scan_rows(const ProfileScan &scan) {
  std::vector<ScanRow> rows;
  for (std::size_t i = 0; i < scan.decisions.size(); ++i) {
    if (scan.decisions[i]) rows.push_back({i, *scan.decisions[i]});
  }
  return rows;
}

inline std::string scan_csv(const std::vector<ScanRow> &rows) {
  std::ostringstream out;
  out << kScanHeader << '\n';
  for (const ScanRow &r : rows) {
    out << r.index << ',' << format_number(r.decision.statistic) << ','
        << format_number(r.decision.threshold) << ',' << (r.decision.targetPresent ? 1 : 0)
        << '\n';
  }
  return out.str();
}

inline std::vector<ScanRow> parse_scan_csv(std::string_view text) {
  std::vector<ScanRow> rows;
  for (const auto &f : detail::read_csv(text, kScanHeader)) {
    const std::uint64_t flag = detail::parse_index(f[3]);
    if (flag > 1) detail::fail(ErrorKind::InvalidParameters, "decision must be 0 or 1");
    rows.push_back({static_cast<std::size_t>(detail::parse_index(f[0])),
                    {flag == 1, parse_number(f[1]), parse_number(f[2])}});
  }
  return rows;
}

inline std::string profile_csv(const RangeProfile &profile) {
  std::ostringstream out;
  out << kProfileHeader << '\n';
  for (std::size_t i = 0; i < profile.intensities.size(); ++i) {
    out << i << ',' << format_number(profile.intensities[i]) << ','
        << (profile.isTarget[i] ? 1 : 0) << '\n';
  }
  return out.str();
}

inline RangeProfile parse_profile_csv(std::string_view text) {
  RangeProfile profile;
  for (const auto &f : detail::read_csv(text, kProfileHeader)) {
    if (detail::parse_index(f[0]) != profile.intensities.size()) {
      detail::fail(ErrorKind::InvalidParameters, "profile rows must be consecutive from 0");
    }
    profile.intensities.push_back(parse_number(f[1]));
    profile.isTarget.push_back(detail::parse_index(f[2]) == 1);
  }
  return profile;
}

// ---------------------------------------------------------------------------
// JSON

namespace detail {

// JSON has no infinity; encode non-finite numbers as strings.
inline nlohmann::json json_number(double value) {
  if (std::isfinite(value)) return value;
  return format_number(value);
}

inline double number_from_json(const nlohmann::json &j) {
  if (j.is_string()) return parse_number(j.get<std::string>());
  return j.get<double>();
}

}  // namespace detail

inline void to_json(nlohmann::json &j, const TrialEstimate &e) {
  j = {{"probability", e.probability}, {"trials", e.trials}, {"hits", e.hits},
       {"ci_low", e.ciLow},            {"ci_high", e.ciHigh}};
}

inline void from_json(const nlohmann::json &j, TrialEstimate &e) {
  e.probability = j.at("probability").get<double>();
  e.trials = j.at("trials").get<std::uint64_t>();
  e.hits = j.at("hits").get<std::uint64_t>();
  e.ciLow = j.at("ci_low").get<double>();
  e.ciHigh = j.at("ci_high").get<double>();
}

inline void to_json(nlohmann::json &j, const SweepResult &s) {
  j = {{"detector", std::string(to_string(s.kind))},
       {"window_size", s.windowSize},
       {"pfa_nominal", s.nominal},
       {"points", nlohmann::json::array()}};
  for (std::size_t i = 0; i < s.axis.size(); ++i) {
    j["points"].push_back({{"alpha", s.axis[i].alpha}, {"h", s.axis[i].h}, {"estimate", s.estimates[i]}});
  }
}

inline void from_json(const nlohmann::json &j, SweepResult &s) {
  s.kind = parse_detector_kind(j.at("detector").get<std::string>());
  s.windowSize = j.at("window_size").get<std::size_t>();
  s.nominal = j.at("pfa_nominal").get<double>();
  s.axis.clear();
  s.estimates.clear();
  for (const auto &p : j.at("points")) {
    s.axis.push_back({p.at("alpha").get<double>(), p.at("h").get<double>()});
    s.estimates.push_back(p.at("estimate").get<TrialEstimate>());
  }
}

inline void to_json(nlohmann::json &j, const RocCurve &c) {
  j = {{"source", std::string(to_string(c.source))},
       {"detector", std::string(to_string(c.kind))},
       {"window_size", c.windowSize},
       {"alpha", c.alpha},
       {"rho", c.rho},
       {"h", c.h},
       {"points", nlohmann::json::array()}};
  for (const RocPoint &p : c.points) {
    nlohmann::json point = {{"pfa", p.pfa}, {"pd", p.pd}};
    if (p.estimate) point["estimate"] = *p.estimate;
    j["points"].push_back(point);
  }
}

inline void from_json(const nlohmann::json &j, RocCurve &c) {
  const auto source = j.at("source").get<std::string>();
  if (source != "theory" && source != "simulation") {
    detail::fail(ErrorKind::InvalidParameters, "unknown ROC source '" + source + "'");
  }
  c.source = source == "theory" ? RocSource::Theory : RocSource::Simulation;
  c.kind = parse_detector_kind(j.at("detector").get<std::string>());
  c.windowSize = j.at("window_size").get<std::size_t>();
  c.alpha = j.at("alpha").get<double>();
  c.rho = j.at("rho").get<double>();
  c.h = j.at("h").get<double>();
  c.points.clear();
  for (const auto &p : j.at("points")) {
    RocPoint point{p.at("pfa").get<double>(), p.at("pd").get<double>(), std::nullopt};
    if (p.contains("estimate")) point.estimate = p.at("estimate").get<TrialEstimate>();
    c.points.push_back(point);
  }
}

inline void to_json(nlohmann::json &j, const ComparisonResult &r) {
  j = {{"window_size", r.windowSize}, {"clairvoyant", r.clairvoyant}, {"case_a", r.caseA},
       {"case_b", r.caseB},           {"gap_a", r.gapA},              {"gap_b", r.gapB}};
}

inline void from_json(const nlohmann::json &j, ComparisonResult &r) {
  r.windowSize = j.at("window_size").get<std::size_t>();
  r.clairvoyant = j.at("clairvoyant").get<RocCurve>();
  r.caseA = j.at("case_a").get<RocCurve>();
  r.caseB = j.at("case_b").get<RocCurve>();
  r.gapA = j.at("gap_a").get<std::vector<double>>();
  r.gapB = j.at("gap_b").get<std::vector<double>>();
}

inline void to_json(nlohmann::json &j, const ScanRow &r) {
  j = {{"index", r.index},
       {"statistic", detail::json_number(r.decision.statistic)},
       {"threshold", detail::json_number(r.decision.threshold)},
       {"decision", r.decision.targetPresent}};
}

inline void from_json(const nlohmann::json &j, ScanRow &r) {
  r.index = j.at("index").get<std::size_t>();
  r.decision.statistic = detail::number_from_json(j.at("statistic"));
  r.decision.threshold = detail::number_from_json(j.at("threshold"));
  r.decision.targetPresent = j.at("decision").get<bool>();
}

}  // namespace pareto_cfar

#endif  // PARETO_CFAR_REPORT_HPP_
