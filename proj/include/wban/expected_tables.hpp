#pragma once

// Published reference tables for the default eight-sensor network, embedded
// as a regression corpus, and the cell-by-cell comparison behind `reproduce`.
//
// Cell keys are "<sensor>/<column>". Energy cells below 1 J/day are compared
// with an absolute tolerance of 0.05 J/day; the published floor for the
// sub-1 mHz sensors (0.26 J/day) sits above what the stated radio constants
// give (0.22 J/day).

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wban/catalog.hpp"
#include "wban/report.hpp"
#include "wban/schemes.hpp"

namespace wban {

enum class ToleranceKind { Relative, Absolute, LeadingDigit };

struct Tolerance {
  ToleranceKind kind = ToleranceKind::Relative;
  // Fraction for Relative, value units for Absolute, unused for LeadingDigit.
  double value = 0.0;
};

inline Tolerance relative(double fraction) { return {ToleranceKind::Relative, fraction}; }
inline Tolerance absolute(double amount) { return {ToleranceKind::Absolute, amount}; }

struct ExpectedCell {
  std::string key;
  double expected = 0.0;
  Tolerance tolerance;
  std::function<double(const Catalog&)> compute;
  // Non-empty when the published value is known to be inconsistent with the
  // rest of the published data; the cell is still computed and reported.
  std::string known_discrepancy;
};

struct ExpectedTable {
  std::string id;
  std::string provenance;
  std::vector<ExpectedCell> cells;
};

// Same decade and same truncated leading digit.
inline bool leading_digit_match(double computed, double expected) {
  if (!(computed > 0.0) || !(expected > 0.0)) return computed == expected;
  const double ec = std::floor(std::log10(computed));
  const double ee = std::floor(std::log10(expected));
  if (ec != ee) return false;
  const double scale = std::pow(10.0, ec);
  // Small slack so a mantissa like 4.999999 still truncates to 4.
  return std::floor(computed / scale + 1e-9) == std::floor(expected / scale + 1e-9);
}

inline bool within(double computed, double expected, const Tolerance& t) {
  switch (t.kind) {
    case ToleranceKind::Relative: return std::abs(computed - expected) <= t.value * std::abs(expected);
    case ToleranceKind::Absolute: return std::abs(computed - expected) <= t.value;
    case ToleranceKind::LeadingDigit: return leading_digit_match(computed, expected);
  }
  return false;
}

namespace detail {

struct PublishedSensorRow {
  const char* sensor;
  double min;
  double max;
};

// Energy tolerance policy: 2% relative, or 0.05 J/day absolute under 1 J/day.
inline Tolerance energy_tolerance(double expected) {
  return expected < 1.0 ? absolute(0.05) : relative(0.02);
}

inline SchemeResult eval_at(const Catalog& c, const std::string& sensor, const SchemeConfig& s,
                            bool at_max) {
  const SensorSpec& spec = c.sensor(sensor);
  return evaluate(spec, s, at_max ? spec.f_max_hz : spec.f_min_hz, c);
}

inline SchemeConfig aggregate_full(const Catalog& c, const std::string& sensor) {
  return Aggregation{max_samples_per_packet(c.sensor(sensor), c.radio)};
}

inline SchemeConfig cs_default() { return CsBased{seizure_profile(), std::nullopt, CsConfig::from_ratio(256, 8.0), false}; }

inline SchemeConfig anomaly_default() { return AnomalyDriven{seizure_profile(), std::nullopt}; }

}  // namespace detail

inline std::vector<ExpectedTable> expected_tables() {
  using detail::eval_at;
  using detail::PublishedSensorRow;
  std::vector<ExpectedTable> tables;

  // Upper-bound sampling energy at f_max, published to one significant figure.
  {
    ExpectedTable t{"sampling_energy", "ADC sampling-energy upper bounds per sensor (J/day, f_max)", {}};
    const PublishedSensorRow rows[] = {
        {"HeartRate", 0, 2e-6},     {"BloodPressure", 0, 1e-1}, {"OxygenSaturation", 0, 4e-8},
        {"Temperature", 0, 4e-8},   {"BloodSugar", 0, 1e-1},    {"Accelerometer", 0, 2e-3},
        {"ECG", 0, 5e-3},           {"EEG", 0, 5e-3}};
    for (const auto& r : rows) {
      std::string s = r.sensor;
      ExpectedCell cell{s + "/e_s", r.max, {ToleranceKind::LeadingDigit, 0.0},
                        [s](const Catalog& c) {
                          const SensorSpec& spec = c.sensor(s);
                          return sampling_energy_per_day(spec.f_max_hz, spec.resolution_bits);
                        },
                        {}};
      if (s == "Temperature")
        cell.known_discrepancy =
            "published 4e-8 equals the OxygenSaturation (2 Hz) entry; 1 Hz at 8 bits gives 2.16e-8";
      t.cells.push_back(std::move(cell));
    }
    tables.push_back(std::move(t));
  }

  // Baseline energy and lifetime.
  const PublishedSensorRow baseline_energy[] = {
      {"HeartRate", 13.99, 55.23},      {"BloodPressure", 0.26, 686.88}, {"OxygenSaturation", 0.26, 14.00},
      {"Temperature", 0.26, 7.13},      {"BloodSugar", 0.26, 686.88},    {"Accelerometer", 14.00, 2747.52},
      {"ECG", 686.88, 6868.80},         {"EEG", 686.88, 6868.80}};
  {
    ExpectedTable t{"baseline_energy", "Baseline total energy per day at f_min / f_max (J/day)", {}};
    for (const auto& r : baseline_energy) {
      std::string s = r.sensor;
      for (bool at_max : {false, true}) {
        const double e = at_max ? r.max : r.min;
        t.cells.push_back({s + (at_max ? "/max" : "/min"), e, detail::energy_tolerance(e),
                           [s, at_max](const Catalog& c) {
                             return eval_at(c, s, Baseline{}, at_max).energy.e_total();
                           },
                           {}});
      }
    }
    tables.push_back(std::move(t));
  }

  // Lifetime columns: "min" lifetime comes from the max sampling rate.
  const PublishedSensorRow baseline_life[] = {
      {"HeartRate", 48.8, 192.90},        {"BloodPressure", 3.93, 10125.69}, {"OxygenSaturation", 192.86, 10125.69},
      {"Temperature", 378.68, 10125.69},  {"BloodSugar", 3.93, 10125.69},    {"Accelerometer", 0.98, 192.86},
      {"ECG", 0.39, 3.93},                {"EEG", 0.39, 3.93}};
  {
    ExpectedTable t{"baseline_lifetime", "Baseline battery lifetime, 2700 J coin cell (days)", {}};
    for (const auto& r : baseline_life) {
      std::string s = r.sensor;
      for (bool min_col : {true, false}) {
        const double e = min_col ? r.min : r.max;
        ExpectedCell cell{s + (min_col ? "/min" : "/max"), e, relative(0.02),
                          [s, min_col](const Catalog& c) {
                            return eval_at(c, s, Baseline{}, min_col).lifetime_days;
                          },
                          {}};
        if (!min_col && e == 10125.69)
          cell.known_discrepancy =
              "implies 0.2667 J/day; the stated 2.5 uW standby gives 0.2229 J/day, while the "
              "aggregation floor (0.64 J/day) is consistent with 2.5 uW";
        t.cells.push_back(std::move(cell));
      }
    }
    tables.push_back(std::move(t));
  }

  // Baseline storage: min column in MiB/yr, max column in GiB/yr, printed to 2 decimals.
  {
    const PublishedSensorRow rows[] = {
        {"HeartRate", 75.18, 0.29},    {"BloodPressure", 0.07, 5.87}, {"OxygenSaturation", 0.03, 0.06},
        {"Temperature", 0.03, 0.03},   {"BloodSugar", 0.07, 5.87},    {"Accelerometer", 90.23, 17.62},
        {"ECG", 4511.26, 44.06},       {"EEG", 4511.26, 44.06}};
    ExpectedTable t{"baseline_storage", "Yearly raw-data storage, min (MiB) / max (GiB)", {}};
    for (const auto& r : rows) {
      std::string s = r.sensor;
      t.cells.push_back({s + "/min_mib", r.min, absolute(0.01), [s](const Catalog& c) {
                           return eval_at(c, s, Baseline{}, false).storage.display_mib();
                         }, {}});
      t.cells.push_back({s + "/max_gib", r.max, absolute(0.01), [s](const Catalog& c) {
                           return eval_at(c, s, Baseline{}, true).storage.display_gib();
                         }, {}});
    }
    tables.push_back(std::move(t));
  }

  {
    const PublishedSensorRow rows[] = {{"HeartRate", 16, 0},   {"BloodPressure", 10, 0}, {"OxygenSaturation", 20, 0},
                                       {"Temperature", 20, 0}, {"BloodSugar", 10, 0},    {"Accelerometer", 13, 0},
                                       {"ECG", 13, 0},         {"EEG", 13, 0}};
    ExpectedTable t{"samples_per_packet", "Maximum samples per 20-byte packet", {}};
    for (const auto& r : rows) {
      std::string s = r.sensor;
      t.cells.push_back({s + "/k_max", r.min, absolute(0.0), [s](const Catalog& c) {
                           return static_cast<double>(max_samples_per_packet(c.sensor(s), c.radio));
                         }, {}});
    }
    tables.push_back(std::move(t));
  }

  {
    const PublishedSensorRow rows[] = {
        {"HeartRate", 1.50, 4.07},     {"BloodPressure", 0.65, 69.38}, {"OxygenSaturation", 0.65, 1.33},
        {"Temperature", 0.64, 0.98},   {"BloodSugar", 0.65, 69.38},    {"Accelerometer", 1.70, 212.13},
        {"ECG", 53.52, 529.36},        {"EEG", 53.52, 529.36}};
    ExpectedTable t{"aggregation_energy", "Sample-aggregation total energy per day (J/day)", {}};
    for (const auto& r : rows) {
      std::string s = r.sensor;
      for (bool at_max : {false, true}) {
        const double e = at_max ? r.max : r.min;
        t.cells.push_back({s + (at_max ? "/max" : "/min"), e, detail::energy_tolerance(e),
                           [s, at_max](const Catalog& c) {
                             return eval_at(c, s, detail::aggregate_full(c, s), at_max).energy.e_total();
                           },
                           {}});
      }
    }
    tables.push_back(std::move(t));
  }

  {
    const PublishedSensorRow rows[] = {
        {"HeartRate", 663.39, 1800},     {"BloodPressure", 38.92, 4153.85}, {"OxygenSaturation", 2030.08, 4153.85},
        {"Temperature", 2715.10, 4218.75}, {"BloodSugar", 38.92, 4153.85},  {"Accelerometer", 12.73, 1588.24},
        {"ECG", 5.10, 50.45},            {"EEG", 5.10, 50.45}};
    ExpectedTable t{"aggregation_lifetime", "Sample-aggregation battery lifetime (days)", {}};
    for (const auto& r : rows) {
      std::string s = r.sensor;
      for (bool min_col : {true, false}) {
        t.cells.push_back({s + (min_col ? "/min" : "/max"), min_col ? r.min : r.max, relative(0.02),
                           [s, min_col](const Catalog& c) {
                             return eval_at(c, s, detail::aggregate_full(c, s), min_col).lifetime_days;
                           },
                           {}});
      }
    }
    tables.push_back(std::move(t));
  }

  // EEG seizure detection, 4.7 events/month of 3.8 min.
  auto eeg_table = [&](std::string id, std::string prov, SchemeConfig scheme, double e_min, double e_max,
                       double l_min, double l_max) {
    ExpectedTable te{id + "_energy", prov + " energy (J/day)", {}};
    te.cells.push_back({"EEG/min", e_min, relative(0.01), [scheme](const Catalog& c) {
                          return eval_at(c, "EEG", scheme, false).energy.e_total();
                        }, {}});
    te.cells.push_back({"EEG/max", e_max, relative(0.01), [scheme](const Catalog& c) {
                          return eval_at(c, "EEG", scheme, true).energy.e_total();
                        }, {}});
    ExpectedTable tl{id + "_lifetime", prov + " lifetime (days)", {}};
    tl.cells.push_back({"EEG/min", l_min, relative(0.02), [scheme](const Catalog& c) {
                          return eval_at(c, "EEG", scheme, true).lifetime_days;
                        }, {}});
    tl.cells.push_back({"EEG/max", l_max, relative(0.02), [scheme](const Catalog& c) {
                          return eval_at(c, "EEG", scheme, false).lifetime_days;
                        }, {}});
    tables.push_back(std::move(te));
    tables.push_back(std::move(tl));
  };
  eeg_table("anomaly_eeg", "Anomaly-driven EEG seizure detection", detail::anomaly_default(), 36.27, 38.83,
            69.53, 74.44);
  eeg_table("cs_eeg", "CS-based EEG seizure detection (alpha = 8)", detail::cs_default(), 6.93, 9.50, 284.43,
            389.45);

  {
    ExpectedTable t{"event_storage", "Yearly storage of seizure segments (MiB/yr)", {}};
    auto add = [&](std::string key, double e, double tol, SchemeConfig scheme, bool at_max) {
      t.cells.push_back({std::move(key), e, relative(tol), [scheme, at_max](const Catalog& c) {
                           return eval_at(c, "EEG", scheme, at_max).storage.display_mib();
                         }, {}});
    };
    add("EEG-anomaly/min", 1.87, 0.01, detail::anomaly_default(), false);
    add("EEG-anomaly/max", 18.65, 0.01, detail::anomaly_default(), true);
    add("EEG-compressed/min", 0.23, 0.02, detail::cs_default(), false);
    add("EEG-compressed/max", 2.33, 0.02, detail::cs_default(), true);
    tables.push_back(std::move(t));
  }

  {
    ExpectedTable t{"savings", "Savings ratios relative to the baseline", {}};
    auto ratio = [](std::string sensor, SchemeConfig other, bool at_max, SavingsMetric metric) {
      return [=](const Catalog& c) {
        SchemeConfig o = other;
        if (std::holds_alternative<Aggregation>(o)) o = detail::aggregate_full(c, sensor);
        return savings_ratio(eval_at(c, sensor, Baseline{}, at_max), eval_at(c, sensor, o, at_max), metric);
      };
    };
    using enum SavingsMetric;
    t.cells.push_back({"HeartRate/aggregation_max", 13.58, relative(0.02),
                       ratio("HeartRate", Aggregation{}, true, Energy), {}});
    t.cells.push_back({"EEG/aggregation_max", 12.98, relative(0.02), ratio("EEG", Aggregation{}, true, Energy), {}});
    t.cells.push_back({"EEG/aggregation_min", 12.83, relative(0.02), ratio("EEG", Aggregation{}, false, Energy), {}});
    t.cells.push_back({"EEG/anomaly_energy_max", 177, relative(0.03),
                       ratio("EEG", detail::anomaly_default(), true, Energy), {}});
    t.cells.push_back({"EEG/cs_energy_max", 724, relative(0.03), ratio("EEG", detail::cs_default(), true, Energy), {}});
    t.cells.push_back({"EEG/anomaly_storage_max", 2418, relative(0.03),
                       ratio("EEG", detail::anomaly_default(), true, Storage), {}});
    t.cells.push_back({"EEG/cs_over_anomaly_storage", 8, relative(0.03), [](const Catalog& c) {
                         return savings_ratio(eval_at(c, "EEG", detail::anomaly_default(), true),
                                              eval_at(c, "EEG", detail::cs_default(), true), Storage);
                       }, {}});
    t.cells.push_back({"EEG/cs_storage_max", 19344, relative(0.03),
                       ratio("EEG", detail::cs_default(), true, Storage), {}});
    tables.push_back(std::move(t));
  }

  return tables;
}

// ---------------------------------------------------------------------------
// Reproduction

struct ReproduceOptions {
  // Replace every relative tolerance (fraction) / absolute tolerance.
  std::optional<double> relative_tolerance;
  std::optional<double> absolute_tolerance;
};

enum class CellStatus { Pass, Fail, KnownDiscrepancy, Error };

inline std::string_view to_string(CellStatus s) {
  switch (s) {
    case CellStatus::Pass: return "PASS";
    case CellStatus::Fail: return "FAIL";
    case CellStatus::KnownDiscrepancy: return "XFAIL";
    case CellStatus::Error: return "ERROR";
  }
  return "?";
}

struct CellOutcome {
  std::string table;
  std::string key;
  double expected = 0.0;
  double computed = 0.0;
  Tolerance tolerance;
  CellStatus status = CellStatus::Pass;
  std::string note;

  double delta() const { return computed - expected; }
};

struct ReproduceReport {
  std::vector<CellOutcome> cells;

  std::size_t count(CellStatus s) const {
    return static_cast<std::size_t>(
        std::count_if(cells.begin(), cells.end(), [s](const CellOutcome& c) { return c.status == s; }));
  }
  // Known discrepancies do not fail the run.
  bool passed() const { return count(CellStatus::Fail) == 0 && count(CellStatus::Error) == 0; }
};

inline ReproduceReport reproduce(const Catalog& catalog, const ReproduceOptions& opts = {}) {
  ReproduceReport report;
  for (const auto& table : expected_tables()) {
    for (const auto& cell : table.cells) {
      CellOutcome out{table.id, cell.key, cell.expected, 0.0, cell.tolerance, CellStatus::Pass, {}};
      if (out.tolerance.kind == ToleranceKind::Relative && opts.relative_tolerance)
        out.tolerance.value = *opts.relative_tolerance;
      if (out.tolerance.kind == ToleranceKind::Absolute && opts.absolute_tolerance)
        out.tolerance.value = *opts.absolute_tolerance;
      try {
        out.computed = cell.compute(catalog);
        const bool ok = within(out.computed, out.expected, out.tolerance);
        if (!cell.known_discrepancy.empty()) {
          out.status = ok ? CellStatus::Pass : CellStatus::KnownDiscrepancy;
          out.note = cell.known_discrepancy;
        } else {
          out.status = ok ? CellStatus::Pass : CellStatus::Fail;
        }
      } catch (const std::exception& e) {
        out.status = CellStatus::Error;
        out.note = e.what();
      }
      report.cells.push_back(std::move(out));
    }
  }
  return report;
}

inline Report make_report(const ReproduceReport& rr) {
  Report r;
  r.columns = {{"table"}, {"cell"}, {"expected", 4}, {"computed", 4}, {"delta", 4},
               {"rel_delta_pct", 3}, {"tolerance"}, {"status"}, {"note"}};
  for (const auto& c : rr.cells) {
    std::string tol;
    switch (c.tolerance.kind) {
      case ToleranceKind::Relative: tol = detail::exact_double(c.tolerance.value * 100.0) + "%"; break;
      case ToleranceKind::Absolute: tol = "+/-" + detail::exact_double(c.tolerance.value); break;
      case ToleranceKind::LeadingDigit: tol = "1 sig. fig."; break;
    }
    const double rel = c.expected != 0.0 ? 100.0 * c.delta() / c.expected : 0.0;
    r.rows.push_back({c.table, c.key, c.expected, c.computed, c.delta(), rel, tol,
                      std::string(to_string(c.status)), c.note});
  }
  return r;
}

}  // namespace wban
