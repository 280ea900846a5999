#pragma once

// End-to-end evaluation of the four transmission schemes (baseline, sample
// aggregation, anomaly-driven, compressive-sensing based), savings ratios and
// parameter sweeps.

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "wban/catalog.hpp"
#include "wban/cs_config.hpp"
#include "wban/cs_core.hpp"
#include "wban/energy_model.hpp"
#include "wban/errors.hpp"
#include "wban/storage_model.hpp"

namespace wban {

// Event rates are expressed per 30-day month.
inline constexpr double kDaysPerMonth = 30.0;
inline constexpr double kMonthsPerYear = 365.0 / kDaysPerMonth;

// Statistics of the anomalies that trigger raw-data transmission.
struct EventProfile {
  double events_per_month = 0.0;
  double event_duration_s = 0.0;
  // Raw data sent per event on top of the event itself.
  double transmit_extra_s = 0.0;

  void validate() const {
    if (!(events_per_month >= 0.0)) throw ValidationError("events_per_month", "must be >= 0");
    if (!(event_duration_s >= 0.0)) throw ValidationError("event_duration_s", "must be >= 0");
    if (!(transmit_extra_s >= 0.0)) throw ValidationError("transmit_extra_s", "must be >= 0");
  }

  double seconds_per_event() const noexcept { return event_duration_s + transmit_extra_s; }

  friend bool operator==(const EventProfile&, const EventProfile&) = default;
};

// Epileptic seizures: 4.7 per month, 3.8 minutes each.
inline EventProfile seizure_profile() { return {4.7, 228.0, 0.0}; }

// Arrhythmia: each detection ships a one-minute ECG strip.
inline EventProfile arrhythmia_profile(double events_per_day) {
  return {events_per_day * kDaysPerMonth, 0.0, 60.0};
}

/// Fraction of the time a sensor spends sending event data.
inline double duty_fraction(const EventProfile& ev) {
  return ev.events_per_month * ev.seconds_per_event() / (kDaysPerMonth * kSecondsPerDay);
}

inline double active_seconds_per_year(const EventProfile& ev) {
  return ev.events_per_month * kMonthsPerYear * ev.seconds_per_event();
}

// ---------------------------------------------------------------------------
// Scheme configuration

struct Baseline {};

struct Aggregation {
  int samples_per_packet = 1;
};

struct AnomalyDriven {
  EventProfile events = seizure_profile();
  // Empty: look the profile up in the catalog.
  std::optional<ComputeProfile> compute;
};

struct CsBased {
  EventProfile events = seizure_profile();
  std::optional<ComputeProfile> compute;
  CsConfig cs = CsConfig::from_ratio(256, 8.0);
  // Charge event transmission at the compressed rate (transmission / alpha)
  // instead of the Nyquist rate.
  bool transmit_compressed = false;
};

using SchemeConfig = std::variant<Baseline, Aggregation, AnomalyDriven, CsBased>;

enum class SchemeKind { Baseline, Aggregation, AnomalyDriven, CsBased };

inline SchemeKind kind_of(const SchemeConfig& s) { return static_cast<SchemeKind>(s.index()); }

inline std::string_view to_string(SchemeKind k) {
  switch (k) {
    case SchemeKind::Baseline: return "baseline";
    case SchemeKind::Aggregation: return "aggregate";
    case SchemeKind::AnomalyDriven: return "anomaly";
    case SchemeKind::CsBased: return "cs";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Qualitative comparison

enum class Latency { Low, Varies };
enum class RawData { AllRawData, PortionCollected, PortionCompressed };
enum class Extensibility { High, Low };

struct QualitativeProfile {
  Latency latency = Latency::Low;
  RawData raw_data = RawData::AllRawData;
  Extensibility extensibility = Extensibility::High;

  friend bool operator==(const QualitativeProfile&, const QualitativeProfile&) = default;
};

inline std::string_view to_string(Latency l) { return l == Latency::Low ? "Low" : "Varies"; }

inline std::string_view to_string(RawData r) {
  switch (r) {
    case RawData::AllRawData: return "All raw data";
    case RawData::PortionCollected: return "A portion of collected data";
    case RawData::PortionCompressed: return "A portion of compressed data";
  }
  return "?";
}

inline std::string_view to_string(Extensibility e) { return e == Extensibility::High ? "High" : "Low"; }

inline QualitativeProfile qualitative_profile(SchemeKind k) {
  switch (k) {
    case SchemeKind::Baseline: return {Latency::Low, RawData::AllRawData, Extensibility::High};
    case SchemeKind::Aggregation: return {Latency::Varies, RawData::AllRawData, Extensibility::High};
    case SchemeKind::AnomalyDriven: return {Latency::Low, RawData::PortionCollected, Extensibility::Low};
    case SchemeKind::CsBased: return {Latency::Low, RawData::PortionCompressed, Extensibility::Low};
  }
  return {};
}

inline std::array<std::pair<SchemeKind, QualitativeProfile>, 4> qualitative_comparison() {
  return {{{SchemeKind::Baseline, qualitative_profile(SchemeKind::Baseline)},
           {SchemeKind::Aggregation, qualitative_profile(SchemeKind::Aggregation)},
           {SchemeKind::AnomalyDriven, qualitative_profile(SchemeKind::AnomalyDriven)},
           {SchemeKind::CsBased, qualitative_profile(SchemeKind::CsBased)}}};
}

// ---------------------------------------------------------------------------
// Evaluation

// Model caveats carried alongside a result.
struct ModelFlags {
  bool saturated = false;             // radio period <= send time
  bool uncalibrated_compute = false;  // E_c supplied without calibration
  bool extrapolated_adc = false;      // resolution outside 8..16 bits

  friend bool operator==(const ModelFlags&, const ModelFlags&) = default;
};

struct SchemeResult {
  SchemeKind scheme = SchemeKind::Baseline;
  double f_s_hz = 0.0;
  EnergyBreakdown energy;
  double lifetime_days = 0.0;
  StorageEstimate storage;
  QualitativeProfile qualitative;
  ModelFlags flags;
};

/// Samples of `spec` that fit one radio payload.
inline int max_samples_per_packet(const SensorSpec& spec, const RadioProfile& radio) {
  const int payload_bits = 8 * radio.max_payload_bytes;
  if (spec.resolution_bits > payload_bits)
    throw DomainError("max_samples_per_packet: one " + std::to_string(spec.resolution_bits) +
                      "-bit sample exceeds the " + std::to_string(radio.max_payload_bytes) +
                      "-byte payload");
  return payload_bits / spec.resolution_bits;
}

struct EvaluateOptions {
  // Accept sampling rates outside the sensor's [f_min, f_max].
  bool allow_out_of_range = false;
};

namespace detail {

inline ComputeProfile resolve_compute(const std::optional<ComputeProfile>& explicit_profile,
                                      const SensorSpec& spec, ComputeLabel label,
                                      const Catalog& catalog, ModelFlags& flags) {
  if (explicit_profile) {
    if (!(explicit_profile->e_c_j_per_day >= 0.0))
      throw ValidationError("compute.e_c_j_per_day", "must be >= 0");
    flags.uncalibrated_compute = !explicit_profile->calibrated;
    return *explicit_profile;
  }
  const ComputeProfile* p = catalog.find_compute(spec.name, label);
  if (p == nullptr || !p->calibrated)
    throw MissingComputeProfile("no calibrated " +
                                std::string(label == ComputeLabel::CsBased ? "CS-based" : "anomaly-detection") +
                                " computation energy for sensor '" + spec.name + "'" +
                                (p != nullptr ? " (catalog entry is marked uncalibrated)" : "") +
                                "; supply one explicitly");
  return *p;
}

}  // namespace detail

inline SchemeResult evaluate(const SensorSpec& spec, const SchemeConfig& scheme, double f_s_hz,
                             const Catalog& catalog, EvaluateOptions opts = {}) {
  if (!(f_s_hz > 0.0)) throw RateOutOfRange("sampling rate must be > 0");
  if (!opts.allow_out_of_range && (f_s_hz < spec.f_min_hz || f_s_hz > spec.f_max_hz))
    throw RateOutOfRange("sampling rate " + std::to_string(f_s_hz) + " Hz outside [" +
                         std::to_string(spec.f_min_hz) + ", " + std::to_string(spec.f_max_hz) +
                         "] Hz for sensor '" + spec.name + "'");

  SchemeResult r;
  r.scheme = kind_of(scheme);
  r.f_s_hz = f_s_hz;
  r.qualitative = qualitative_profile(r.scheme);
  r.flags.extrapolated_adc = adc_energy_bound(spec.resolution_bits).extrapolated;

  const double e_s = sampling_energy_per_day(f_s_hz, spec.resolution_bits);
  const RadioProfile& radio = catalog.radio;

  std::visit(
      [&](const auto& cfg) {
        using T = std::decay_t<decltype(cfg)>;
        if constexpr (std::is_same_v<T, Baseline>) {
          r.flags.saturated = per_packet_energy(f_s_hz, radio).saturated;
          r.energy = {e_s, transmission_energy_per_day(f_s_hz, radio), 0.0, 0.0};
          r.storage = yearly_storage(f_s_hz, spec.resolution_bits);
        } else if constexpr (std::is_same_v<T, Aggregation>) {
          const int k = cfg.samples_per_packet;
          const int k_max = max_samples_per_packet(spec, radio);
          if (k < 1 || k > k_max)
            throw DomainError("samples per packet must be in [1, " + std::to_string(k_max) +
                              "] for sensor '" + spec.name + "'");
          const double f_t = f_s_hz / k;
          r.flags.saturated = per_packet_energy(f_t, radio).saturated;
          r.energy = {e_s, transmission_energy_per_day(f_t, radio), 0.0,
                      catalog.buffer.energy_per_day_j};
          r.storage = yearly_storage(f_s_hz, spec.resolution_bits);
        } else {
          cfg.events.validate();
          constexpr bool is_cs = std::is_same_v<T, CsBased>;
          const ComputeLabel label = is_cs ? ComputeLabel::CsBased : ComputeLabel::TraditionalAnomaly;
          const ComputeProfile compute =
              detail::resolve_compute(cfg.compute, spec, label, catalog, r.flags);

          double alpha = 1.0;
          double tx_rate = f_s_hz;
          double tx_scale = 1.0;
          if constexpr (is_cs) {
            cfg.cs.validate();
            alpha = cfg.cs.alpha;
            if (cfg.transmit_compressed) {
              tx_scale = 1.0 / alpha;
              tx_rate = f_s_hz / alpha;
            }
          }
          r.flags.saturated = per_packet_energy(tx_rate, radio).saturated;
          const double e_t =
              duty_fraction(cfg.events) * transmission_energy_per_day(f_s_hz, radio) * tx_scale;
          r.energy = {e_s, e_t, compute.e_c_j_per_day, 0.0};
          r.storage = event_storage(active_seconds_per_year(cfg.events), f_s_hz,
                                    spec.resolution_bits, alpha);
        }
      },
      scheme);

  r.lifetime_days = battery_lifetime_days(r.energy.e_total(), catalog.battery);
  return r;
}

enum class SavingsMetric { Energy, Storage };

inline double savings_ratio(const SchemeResult& baseline, const SchemeResult& other,
                            SavingsMetric metric) {
  const bool energy = metric == SavingsMetric::Energy;
  const double num = energy ? baseline.energy.e_total() : baseline.storage.bytes_per_year;
  const double den = energy ? other.energy.e_total() : other.storage.bytes_per_year;
  if (!(den > 0.0)) throw DivisionByZero("savings_ratio: comparison value is zero");
  return num / den;
}

// ---------------------------------------------------------------------------
// Sweeps

/// Inclusive arithmetic grid first, first+step, ..., <= last.
inline std::vector<int> integer_grid(int first, int last, int step) {
  if (step <= 0) throw RangeError("grid step must be > 0");
  if (first > last) throw RangeError("empty range: first > last");
  std::vector<int> out;
  for (long v = first; v <= last; v += step) out.push_back(static_cast<int>(v));
  return out;
}

/// Inclusive geometric grid first, first*factor, ..., <= last (with 1e-9 slack).
inline std::vector<double> geometric_grid(double first, double last, double factor) {
  if (!(factor > 1.0)) throw RangeError("geometric factor must be > 1");
  if (!(first > 0.0)) throw RangeError("geometric grid must start above 0");
  if (first > last) throw RangeError("empty range: first > last");
  std::vector<double> out;
  for (double v = first; v <= last * (1.0 + 1e-9); v *= factor) out.push_back(v);
  return out;
}

/// Energy to send `seconds` of raw data sampled at f_s, one sample per packet.
inline double event_transmission_energy(double f_s_hz, double seconds, const RadioProfile& radio) {
  return seconds * f_s_hz * per_packet_energy(f_s_hz, radio).joules;
}

struct ArrhythmiaPoint {
  int events_per_day = 0;
  SchemeResult result;
};

/// Energy/lifetime/storage of an ECG-style sensor as a function of the number
/// of detected events per day; E(n) = e_s + e_c + n * e_strip.
inline std::vector<ArrhythmiaPoint> sweep_arrhythmia(const SensorSpec& spec,
                                                     const std::vector<int>& events_per_day,
                                                     const ComputeProfile& compute,
                                                     SchemeKind kind, double f_s_hz,
                                                     const Catalog& catalog,
                                                     CsConfig cs = CsConfig::from_ratio(256, 8.0)) {
  if (kind != SchemeKind::AnomalyDriven && kind != SchemeKind::CsBased)
    throw DomainError("arrhythmia sweep needs the anomaly or cs scheme");
  std::vector<ArrhythmiaPoint> out;
  out.reserve(events_per_day.size());
  for (int n : events_per_day) {
    if (n < 0) throw RangeError("events per day must be >= 0");
    const EventProfile ev = arrhythmia_profile(n);
    SchemeConfig scheme = kind == SchemeKind::AnomalyDriven
                              ? SchemeConfig{AnomalyDriven{ev, compute}}
                              : SchemeConfig{CsBased{ev, compute, cs, false}};
    out.push_back({n, evaluate(spec, scheme, f_s_hz, catalog)});
  }
  return out;
}

struct DistortionSettings {
  int n = 256;
  int sparsity = 8;
  int trials = 200;
  std::uint64_t seed = 1;
  bool orthonormal = false;
};

struct CompressionPoint {
  double alpha = 1.0;
  CsConfig cs;
  SchemeResult result;
  DistortionStats distortion;
};

/// CS-scheme results and projection distortion across compression ratios.
inline std::vector<CompressionPoint> sweep_compression(
    const SensorSpec& spec, const std::vector<double>& alphas, const EventProfile& events,
    const std::optional<ComputeProfile>& compute, double f_s_hz, const Catalog& catalog,
    const DistortionSettings& signal = {}) {
  if (alphas.empty()) throw RangeError("no compression ratios given");
  std::vector<CompressionPoint> out;
  out.reserve(alphas.size());
  for (double alpha : alphas) {
    if (!(alpha >= 1.0)) throw RangeError("compression ratio must be >= 1");
    CompressionPoint p;
    p.alpha = alpha;
    p.cs = CsConfig::from_ratio(signal.n, alpha, signal.seed);
    p.result = evaluate(spec, CsBased{events, compute, p.cs, false}, f_s_hz, catalog);
    p.distortion = inner_product_distortion(p.cs, signal.trials, signal.sparsity,
                                            ProjectionOptions{signal.orthonormal});
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace wban
