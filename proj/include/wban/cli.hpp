#pragma once

// Command-line front end. Kept in a header so tests can drive it in-process.
//
//   wban [--config PATH] [--format table|csv|json] [--out PATH] [--battery-capacity J] <command>
//
//   energy | lifetime | storage   per-sensor evaluation of one scheme
//   sweep arrhythmia              events-per-day grid for an anomaly/cs ECG-style sensor
//   sweep compression             compression-ratio grid for the cs scheme
//   reproduce                     compare against the embedded reference tables
//
// The config path may also come from the WBAN_CONFIG environment variable.
// Exit codes: 0 success, 1 validation or model error, 2 reproduction mismatch.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wban/catalog.hpp"
#include "wban/expected_tables.hpp"
#include "wban/report.hpp"
#include "wban/schemes.hpp"

namespace wban::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitReproduceFailed = 2;

struct GlobalArgs {
  std::string config;
  std::string format = "table";
  std::string out;
  std::optional<double> battery_capacity_j;
};

struct EvalArgs {
  std::vector<std::string> sensors;
  std::string scheme = "baseline";
  std::string rate = "max";
  std::optional<int> samples_per_packet;
  double alpha = 8.0;
  int cs_n = 256;
  std::optional<double> events_per_month;
  std::optional<double> event_duration_s;
  std::optional<double> events_per_day;
  std::optional<double> compute_energy;
  bool transmit_compressed = false;
  bool allow_out_of_range = false;
};

struct ArrhythmiaArgs {
  std::string sensor = "ECG";
  std::string scheme = "anomaly";
  std::string rate = "max";
  int from = 0;
  int to = 64;
  int step = 8;
  double alpha = 8.0;
  std::optional<double> compute_energy;
};

struct CompressionArgs {
  std::string sensor = "EEG";
  std::string rate = "max";
  std::vector<double> alphas;
  std::optional<double> from;
  std::optional<double> to;
  double factor = 2.0;
  int n = 256;
  int sparsity = 8;
  int trials = 200;
  std::uint64_t seed = 1;
  bool orthonormal = false;
  std::optional<double> events_per_month;
  std::optional<double> compute_energy;
};

struct ReproduceArgs {
  std::string tolerance;
  std::optional<double> abs_tolerance;
};

// "min", "max" or a rate in Hz.
inline double resolve_rate(const std::string& rate, const SensorSpec& spec) {
  if (rate == "min") return spec.f_min_hz;
  if (rate == "max") return spec.f_max_hz;
  try {
    std::size_t pos = 0;
    const double v = std::stod(rate, &pos);
    if (pos == rate.size()) return v;
  } catch (const std::exception&) {
  }
  throw ValidationError("rate", "expected min, max or a rate in Hz, got '" + rate + "'");
}

// "0.5%" or "0.5" (percent either way) -> fraction.
inline double parse_percent(std::string s) {
  if (!s.empty() && s.back() == '%') s.pop_back();
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos == s.size() && v >= 0.0) return v / 100.0;
  } catch (const std::exception&) {
  }
  throw ValidationError("tolerance", "expected a non-negative percentage such as 0.5%");
}

inline Catalog load_catalog_for(const GlobalArgs& g) {
  std::string path = g.config;
  if (path.empty()) {
    if (const char* env = std::getenv("WBAN_CONFIG"); env != nullptr) path = env;
  }
  Catalog c = path.empty() ? default_catalog() : load_catalog(path);
  if (g.battery_capacity_j) {
    c.battery.capacity_j = *g.battery_capacity_j;
    validate(c.battery);
  }
  return c;
}

inline std::optional<ComputeProfile> explicit_compute(const std::optional<double>& e_c, ComputeLabel label) {
  if (!e_c) return std::nullopt;
  return ComputeProfile{*e_c, label, false};
}

inline SchemeConfig build_scheme(const EvalArgs& a, const SensorSpec& spec, const Catalog& catalog) {
  if (a.scheme == "baseline") return Baseline{};
  if (a.scheme == "aggregate")
    return Aggregation{a.samples_per_packet.value_or(max_samples_per_packet(spec, catalog.radio))};
  if (a.scheme != "anomaly" && a.scheme != "cs")
    throw ValidationError("scheme", "expected baseline, aggregate, anomaly or cs");

  EventProfile events;
  if (a.events_per_day) {
    events = arrhythmia_profile(*a.events_per_day);
  } else if (spec.name == "ECG") {
    events = arrhythmia_profile(32);
  } else {
    events = seizure_profile();
  }
  if (a.events_per_month) events.events_per_month = *a.events_per_month;
  if (a.event_duration_s) events.event_duration_s = *a.event_duration_s;

  if (a.scheme == "anomaly")
    return AnomalyDriven{events, explicit_compute(a.compute_energy, ComputeLabel::TraditionalAnomaly)};
  return CsBased{events, explicit_compute(a.compute_energy, ComputeLabel::CsBased),
                 CsConfig::from_ratio(a.cs_n, a.alpha), a.transmit_compressed};
}

inline void add_eval_options(CLI::App* sub, EvalArgs& a) {
  sub->add_option("--sensor", a.sensors, "Sensor name (repeatable; default: all)");
  sub->add_option("--scheme", a.scheme, "baseline | aggregate | anomaly | cs")
      ->check(CLI::IsMember({"baseline", "aggregate", "anomaly", "cs"}));
  sub->add_option("--rate", a.rate, "min | max | sampling rate in Hz");
  sub->add_option("--samples-per-packet", a.samples_per_packet, "Aggregation factor (default: payload max)");
  sub->add_option("--alpha", a.alpha, "CS compression ratio");
  sub->add_option("--cs-window", a.cs_n, "CS window length in samples");
  sub->add_option("--events-per-month", a.events_per_month, "Anomaly events per 30-day month");
  sub->add_option("--event-duration", a.event_duration_s, "Anomaly duration (s)");
  sub->add_option("--events-per-day", a.events_per_day, "Arrhythmia-style events per day (one-minute strip each)");
  sub->add_option("--compute-energy", a.compute_energy, "On-sensor computation energy (J/day)");
  sub->add_flag("--transmit-compressed", a.transmit_compressed, "Charge CS event transmission at the compressed rate");
  sub->add_flag("--allow-out-of-range", a.allow_out_of_range, "Accept rates outside [f_min, f_max]");
}

class Output {
public:
  Output(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ValidationError("out", "cannot open '" + path + "' for writing");
      os_ = &file_;
    }
  }
  std::ostream& stream() { return *os_; }

private:
  std::ofstream file_;
  std::ostream* os_;
};

inline int run_eval(const GlobalArgs& g, const EvalArgs& a, RowView view, std::ostream& out, std::ostream& err) {
  const Catalog catalog = load_catalog_for(g);
  const OutputFormat fmt = parse_output_format(g.format);

  std::vector<const SensorSpec*> selected;
  if (a.sensors.empty()) {
    for (const auto& s : catalog.sensors) selected.push_back(&s);
  } else {
    for (const auto& name : a.sensors) selected.push_back(&catalog.sensor(name));
  }

  std::vector<ReportRow> rows;
  bool any_error = false;
  for (const SensorSpec* spec : selected) {
    ReportRow row{spec->name, a.scheme, std::nullopt, {}};
    try {
      const double f_s = resolve_rate(a.rate, *spec);
      row.result = evaluate(*spec, build_scheme(a, *spec, catalog), f_s, catalog,
                            EvaluateOptions{a.allow_out_of_range});
    } catch (const Error& e) {
      row.error = e.what();
      any_error = true;
    }
    rows.push_back(std::move(row));
  }

  Output o(g.out, out);
  write_report(o.stream(), make_report(rows, view, fmt), fmt);
  if (any_error) err << "error: one or more rows failed to evaluate\n";
  return any_error ? kExitError : kExitOk;
}

inline int run_arrhythmia(const GlobalArgs& g, const ArrhythmiaArgs& a, std::ostream& out) {
  const Catalog catalog = load_catalog_for(g);
  const OutputFormat fmt = parse_output_format(g.format);
  const SensorSpec& spec = catalog.sensor(a.sensor);
  const SchemeKind kind = a.scheme == "cs" ? SchemeKind::CsBased : SchemeKind::AnomalyDriven;
  const ComputeLabel label = kind == SchemeKind::CsBased ? ComputeLabel::CsBased : ComputeLabel::TraditionalAnomaly;

  ComputeProfile compute;
  if (a.compute_energy) {
    compute = {*a.compute_energy, label, false};
  } else if (const auto* p = catalog.find_compute(spec.name, label); p != nullptr && p->calibrated) {
    compute = *p;
  } else {
    throw MissingComputeProfile("no calibrated computation energy for '" + spec.name +
                                "'; pass --compute-energy");
  }

  const auto grid = integer_grid(a.from, a.to, a.step);
  const auto points = sweep_arrhythmia(spec, grid, compute, kind, resolve_rate(a.rate, spec), catalog,
                                       CsConfig::from_ratio(256, a.alpha));
  Report r;
  r.columns = {{"events_per_day", 0}, {"e_s_j_per_day", -1}, {"e_t_j_per_day"}, {"e_c_j_per_day"},
               {"e_total_j_per_day"}, {"lifetime_days"}, {"storage_mib_per_year"}, {"flags"}};
  for (const auto& p : points) {
    const auto& res = p.result;
    r.rows.push_back({static_cast<long long>(p.events_per_day), res.energy.e_s(), res.energy.e_t(),
                      res.energy.e_c(), res.energy.e_total(), res.lifetime_days, res.storage.display_mib(),
                      flags_text(res.flags)});
  }
  Output o(g.out, out);
  write_report(o.stream(), r, fmt);
  return kExitOk;
}

inline int run_compression(const GlobalArgs& g, const CompressionArgs& a, std::ostream& out) {
  const Catalog catalog = load_catalog_for(g);
  const OutputFormat fmt = parse_output_format(g.format);
  const SensorSpec& spec = catalog.sensor(a.sensor);

  std::vector<double> alphas = a.alphas;
  if (alphas.empty()) {
    if (!a.from || !a.to) throw RangeError("give --alphas or both --from and --to");
    alphas = geometric_grid(*a.from, *a.to, a.factor);
  }
  EventProfile events = seizure_profile();
  if (a.events_per_month) events.events_per_month = *a.events_per_month;

  const auto points =
      sweep_compression(spec, alphas, events, explicit_compute(a.compute_energy, ComputeLabel::CsBased),
                        resolve_rate(a.rate, spec), catalog,
                        DistortionSettings{a.n, a.sparsity, a.trials, a.seed, a.orthonormal});
  Report r;
  r.columns = {{"alpha", 3}, {"m", 0}, {"e_total_j_per_day"}, {"lifetime_days"}, {"storage_mib_per_year"},
               {"distortion_mean", -1}, {"distortion_p95", -1}, {"flags"}};
  for (const auto& p : points) {
    const auto& res = p.result;
    r.rows.push_back({p.alpha, static_cast<long long>(p.cs.m), res.energy.e_total(), res.lifetime_days,
                      res.storage.display_mib(), p.distortion.mean, p.distortion.p95, flags_text(res.flags)});
  }
  Output o(g.out, out);
  write_report(o.stream(), r, fmt);
  return kExitOk;
}

inline int run_reproduce(const GlobalArgs& g, const ReproduceArgs& a, std::ostream& out) {
  const Catalog catalog = load_catalog_for(g);
  const OutputFormat fmt = parse_output_format(g.format);
  ReproduceOptions opts;
  if (!a.tolerance.empty()) opts.relative_tolerance = parse_percent(a.tolerance);
  opts.absolute_tolerance = a.abs_tolerance;

  const ReproduceReport rr = reproduce(catalog, opts);
  Output o(g.out, out);
  write_report(o.stream(), make_report(rr), fmt);
  if (fmt == OutputFormat::Table) {
    o.stream() << '\n'
               << rr.cells.size() << " cells: " << rr.count(CellStatus::Pass) << " pass, "
               << rr.count(CellStatus::Fail) << " fail, " << rr.count(CellStatus::KnownDiscrepancy)
               << " known discrepancies, " << rr.count(CellStatus::Error) << " errors\n";
  }
  return rr.passed() ? kExitOk : kExitReproduceFailed;
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Energy and storage model for body-area sensor networks", "wban"};
  app.require_subcommand(1);
  // Global options may also follow the subcommand.
  app.fallthrough();

  GlobalArgs g;
  app.add_option("--config", g.config, "Catalog config file (JSON); also WBAN_CONFIG");
  app.add_option("--format", g.format, "table | csv | json")->check(CLI::IsMember({"table", "csv", "json"}));
  app.add_option("--out", g.out, "Write output to this file");
  app.add_option("--battery-capacity", g.battery_capacity_j, "Override battery capacity (J)");

  EvalArgs energy_args, lifetime_args, storage_args;
  auto* energy = app.add_subcommand("energy", "Per-day energy breakdown");
  add_eval_options(energy, energy_args);
  auto* lifetime = app.add_subcommand("lifetime", "Battery lifetime");
  add_eval_options(lifetime, lifetime_args);
  auto* storage = app.add_subcommand("storage", "Yearly storage requirement");
  add_eval_options(storage, storage_args);

  auto* sweep = app.add_subcommand("sweep", "Parameter sweeps");
  sweep->require_subcommand(1);
  ArrhythmiaArgs arr;
  auto* arrhythmia = sweep->add_subcommand("arrhythmia", "Sweep detected events per day");
  arrhythmia->add_option("--sensor", arr.sensor, "Sensor (default ECG)");
  arrhythmia->add_option("--scheme", arr.scheme, "anomaly | cs")->check(CLI::IsMember({"anomaly", "cs"}));
  arrhythmia->add_option("--rate", arr.rate, "min | max | Hz");
  arrhythmia->add_option("--from", arr.from, "First events/day (inclusive)");
  arrhythmia->add_option("--to", arr.to, "Last events/day (inclusive)");
  arrhythmia->add_option("--step", arr.step, "Grid step");
  arrhythmia->add_option("--alpha", arr.alpha, "CS compression ratio");
  arrhythmia->add_option("--compute-energy", arr.compute_energy, "Computation energy (J/day)");

  CompressionArgs comp;
  auto* compression = sweep->add_subcommand("compression", "Sweep CS compression ratio");
  compression->add_option("--sensor", comp.sensor, "Sensor (default EEG)");
  compression->add_option("--rate", comp.rate, "min | max | Hz");
  compression->add_option("--alphas", comp.alphas, "Comma-separated ratios")->delimiter(',');
  compression->add_option("--from", comp.from, "First ratio of a geometric grid");
  compression->add_option("--to", comp.to, "Last ratio of a geometric grid (inclusive)");
  compression->add_option("--factor", comp.factor, "Geometric grid factor");
  compression->add_option("--window", comp.n, "CS window length n");
  compression->add_option("--sparsity", comp.sparsity, "Non-zeros per synthetic signal");
  compression->add_option("--trials", comp.trials, "Distortion trials per ratio");
  compression->add_option("--seed", comp.seed, "Projection seed");
  compression->add_flag("--orthonormal", comp.orthonormal, "Orthonormalise projection rows");
  compression->add_option("--events-per-month", comp.events_per_month, "Events per 30-day month");
  compression->add_option("--compute-energy", comp.compute_energy, "Computation energy (J/day)");

  ReproduceArgs rep;
  auto* reproduce_cmd = app.add_subcommand("reproduce", "Check the model against the reference tables");
  reproduce_cmd->add_option("--tolerance", rep.tolerance, "Override relative tolerances, e.g. 0.5%");
  reproduce_cmd->add_option("--abs-tolerance", rep.abs_tolerance, "Override absolute tolerances");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (energy->parsed()) return run_eval(g, energy_args, RowView::Energy, out, err);
    if (lifetime->parsed()) return run_eval(g, lifetime_args, RowView::Lifetime, out, err);
    if (storage->parsed()) return run_eval(g, storage_args, RowView::Storage, out, err);
    if (arrhythmia->parsed()) return run_arrhythmia(g, arr, out);
    if (compression->parsed()) return run_compression(g, comp, out);
    if (reproduce_cmd->parsed()) return run_reproduce(g, rep, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace wban::cli
