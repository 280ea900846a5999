// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails. Expected values and tolerances are written out here rather
// than read from the reproduction corpus, so the two checks stay independent.

#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "wban/cli.hpp"
#include "wban/cs_core.hpp"
#include "wban/schemes.hpp"

namespace {

using namespace wban;

struct Check {
  int failures = 0;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures;
    notes.push_back(what);
  }
  void near_rel(double got, double want, double rel, const std::string& what) {
    std::ostringstream os;
    os << what << ": got " << got << ", want " << want << " +/-" << rel * 100 << "%";
    expect(std::abs(got - want) <= rel * std::abs(want), os.str());
  }
  void near_abs(double got, double want, double abs_tol, const std::string& what) {
    std::ostringstream os;
    os << what << ": got " << got << ", want " << want << " +/-" << abs_tol;
    expect(std::abs(got - want) <= abs_tol, os.str());
  }
};

struct Row {
  const char* sensor;
  double min;
  double max;
};

const Catalog& catalog() {
  static const Catalog c = default_catalog();
  return c;
}

SchemeResult at(const char* sensor, const SchemeConfig& scheme, bool at_max) {
  const SensorSpec& s = catalog().sensor(sensor);
  return evaluate(s, scheme, at_max ? s.f_max_hz : s.f_min_hz, catalog());
}

SchemeConfig aggregate(const char* sensor) {
  return Aggregation{max_samples_per_packet(catalog().sensor(sensor), catalog().radio)};
}

const SchemeConfig kAnomaly = AnomalyDriven{seizure_profile(), std::nullopt};
const SchemeConfig kCs = CsBased{seizure_profile(), std::nullopt, CsConfig::from_ratio(256, 8.0), false};

void criterion1(Check& c) {
  const Row rows[] = {{"HeartRate", 13.99, 55.23},     {"BloodPressure", 0.26, 686.88},
                      {"OxygenSaturation", 0.26, 14.00}, {"Temperature", 0.26, 7.13},
                      {"BloodSugar", 0.26, 686.88},    {"Accelerometer", 14.00, 2747.52},
                      {"ECG", 686.88, 6868.80},        {"EEG", 686.88, 6868.80}};
  for (const auto& r : rows) {
    for (bool hi : {false, true}) {
      const double want = hi ? r.max : r.min;
      const double got = at(r.sensor, Baseline{}, hi).energy.e_total();
      const std::string what = std::string(r.sensor) + (hi ? " f_max" : " f_min");
      if (want < 1.0) c.near_abs(got, want, 0.05, what);
      else c.near_rel(got, want, 0.02, what);
    }
  }
}

void criterion2(Check& c) {
  // Lifetime "min" comes from f_max and "max" from f_min.
  const Row baseline[] = {{"HeartRate", 48.8, 192.90},       {"BloodPressure", 3.93, 10125.69},
                          {"OxygenSaturation", 192.86, 10125.69}, {"Temperature", 378.68, 10125.69},
                          {"BloodSugar", 3.93, 10125.69},    {"Accelerometer", 0.98, 192.86},
                          {"ECG", 0.39, 3.93},               {"EEG", 0.39, 3.93}};
  const Row aggregated[] = {{"HeartRate", 663.39, 1800},        {"BloodPressure", 38.92, 4153.85},
                            {"OxygenSaturation", 2030.08, 4153.85}, {"Temperature", 2715.10, 4218.75},
                            {"BloodSugar", 38.92, 4153.85},     {"Accelerometer", 12.73, 1588.24},
                            {"ECG", 5.10, 50.45},               {"EEG", 5.10, 50.45}};
  for (const auto& r : baseline) {
    c.near_rel(at(r.sensor, Baseline{}, true).lifetime_days, r.min, 0.02, std::string("baseline ") + r.sensor + " min");
    c.near_rel(at(r.sensor, Baseline{}, false).lifetime_days, r.max, 0.02, std::string("baseline ") + r.sensor + " max");
  }
  for (const auto& r : aggregated) {
    c.near_rel(at(r.sensor, aggregate(r.sensor), true).lifetime_days, r.min, 0.02,
               std::string("aggregated ") + r.sensor + " min");
    c.near_rel(at(r.sensor, aggregate(r.sensor), false).lifetime_days, r.max, 0.02,
               std::string("aggregated ") + r.sensor + " max");
  }
}

void criterion3(Check& c) {
  const std::pair<const char*, int> rows[] = {{"HeartRate", 16}, {"BloodPressure", 10}, {"OxygenSaturation", 20},
                                              {"Temperature", 20}, {"BloodSugar", 10}, {"Accelerometer", 13},
                                              {"ECG", 13}, {"EEG", 13}};
  for (const auto& [sensor, k] : rows) {
    const int got = max_samples_per_packet(catalog().sensor(sensor), catalog().radio);
    c.expect(got == k, std::string(sensor) + ": got " + std::to_string(got) + ", want " + std::to_string(k));
  }
}

void criterion4(Check& c) {
  const Row rows[] = {{"HeartRate", 1.50, 4.07},     {"BloodPressure", 0.65, 69.38},
                      {"OxygenSaturation", 0.65, 1.33}, {"Temperature", 0.64, 0.98},
                      {"BloodSugar", 0.65, 69.38},   {"Accelerometer", 1.70, 212.13},
                      {"ECG", 53.52, 529.36},        {"EEG", 53.52, 529.36}};
  for (const auto& r : rows) {
    c.near_rel(at(r.sensor, aggregate(r.sensor), false).energy.e_total(), r.min, 0.02, std::string(r.sensor) + " f_min");
    c.near_rel(at(r.sensor, aggregate(r.sensor), true).energy.e_total(), r.max, 0.02, std::string(r.sensor) + " f_max");
  }
  auto ratio = [](const char* s, bool hi) {
    return savings_ratio(at(s, Baseline{}, hi), at(s, aggregate(s), hi), SavingsMetric::Energy);
  };
  c.near_rel(ratio("HeartRate", true), 13.58, 0.02, "HeartRate savings");
  c.near_rel(ratio("EEG", true), 12.98, 0.02, "EEG savings f_max");
  c.near_rel(ratio("EEG", false), 12.83, 0.02, "EEG savings f_min");
}

void criterion5(Check& c) {
  c.near_abs(catalog().find_compute("EEG", ComputeLabel::TraditionalAnomaly)->e_c_j_per_day, 35.99, 0.0, "E_c");
  c.near_rel(at("EEG", kAnomaly, false).energy.e_total(), 36.27, 0.01, "energy f_min");
  c.near_rel(at("EEG", kAnomaly, true).energy.e_total(), 38.83, 0.01, "energy f_max");
  c.near_rel(at("EEG", kAnomaly, true).lifetime_days, 69.53, 0.02, "lifetime min");
  c.near_rel(at("EEG", kAnomaly, false).lifetime_days, 74.44, 0.02, "lifetime max");
}

void criterion6(Check& c) {
  c.near_abs(catalog().find_compute("EEG", ComputeLabel::CsBased)->e_c_j_per_day, 6.65, 0.0, "E_c");
  c.near_rel(at("EEG", kCs, false).energy.e_total(), 6.93, 0.01, "energy f_min");
  c.near_rel(at("EEG", kCs, true).energy.e_total(), 9.50, 0.01, "energy f_max");
  c.near_rel(at("EEG", kCs, true).lifetime_days, 284.43, 0.02, "lifetime min");
  c.near_rel(at("EEG", kCs, false).lifetime_days, 389.45, 0.02, "lifetime max");
  const auto base = at("EEG", Baseline{}, true);
  c.near_rel(savings_ratio(base, at("EEG", kCs, true), SavingsMetric::Energy), 724, 0.03, "CS savings");
  c.near_rel(savings_ratio(base, at("EEG", kAnomaly, true), SavingsMetric::Energy), 177, 0.03, "anomaly savings");
}

void criterion7(Check& c) {
  // Baseline storage is printed to two decimals: "exact" means within 0.005 rounding plus
  // representation, i.e. 0.01 on the printed value.
  const Row rows[] = {{"HeartRate", 75.18, 0.29},  {"BloodPressure", 0.07, 5.87}, {"OxygenSaturation", 0.03, 0.06},
                      {"Temperature", 0.03, 0.03}, {"BloodSugar", 0.07, 5.87},    {"Accelerometer", 90.23, 17.62},
                      {"ECG", 4511.26, 44.06},     {"EEG", 4511.26, 44.06}};
  for (const auto& r : rows) {
    c.near_abs(at(r.sensor, Baseline{}, false).storage.display_mib(), r.min, 0.01, std::string(r.sensor) + " MiB");
    c.near_abs(at(r.sensor, Baseline{}, true).storage.display_gib(), r.max, 0.01, std::string(r.sensor) + " GiB");
  }
  c.near_rel(at("EEG", kAnomaly, false).storage.display_mib(), 1.87, 0.01, "anomaly f_min");
  c.near_rel(at("EEG", kAnomaly, true).storage.display_mib(), 18.65, 0.01, "anomaly f_max");
  c.near_rel(at("EEG", kCs, false).storage.display_mib(), 0.23, 0.02, "compressed f_min");
  c.near_rel(at("EEG", kCs, true).storage.display_mib(), 2.33, 0.02, "compressed f_max");
  const auto base = at("EEG", Baseline{}, true);
  const auto anomaly = at("EEG", kAnomaly, true);
  const auto cs = at("EEG", kCs, true);
  c.near_rel(savings_ratio(base, anomaly, SavingsMetric::Storage), 2418, 0.03, "anomaly ratio");
  c.near_rel(savings_ratio(anomaly, cs, SavingsMetric::Storage), 8, 0.03, "CS over anomaly ratio");
  c.near_rel(savings_ratio(base, cs, SavingsMetric::Storage), 19344, 0.03, "CS ratio");
}

// One significant figure, by truncation of the computed mantissa.
bool same_leading_digit(double got, double want) {
  const double e = std::floor(std::log10(want));
  return std::floor(std::log10(got)) == e &&
         std::floor(got / std::pow(10.0, e) + 1e-9) == std::floor(want / std::pow(10.0, e) + 1e-9);
}

void criterion8(Check& c) {
  const Row rows[] = {{"HeartRate", 0, 2e-6},   {"BloodPressure", 0, 1e-1}, {"OxygenSaturation", 0, 4e-8},
                      {"Temperature", 0, 4e-8}, {"BloodSugar", 0, 1e-1},    {"Accelerometer", 0, 2e-3},
                      {"ECG", 0, 5e-3},         {"EEG", 0, 5e-3}};
  for (const auto& r : rows) {
    const SensorSpec& s = catalog().sensor(r.sensor);
    const double got = sampling_energy_per_day(s.f_max_hz, s.resolution_bits);
    std::ostringstream os;
    os << r.sensor << ": got " << got << ", want " << r.max << " (1 sig. fig.)";
    c.expect(same_leading_digit(got, r.max), os.str());
  }
}

void criterion9(Check& c) {
  const RadioProfile& radio = catalog().radio;
  double prev = transmission_energy_per_day(1e-3, radio);
  for (double f = 1.2e-3; f < 2000.0; f *= 1.2) {
    const double cur = transmission_energy_per_day(f, radio);
    c.expect(cur > prev, "E_t not increasing at f_t = " + std::to_string(f));
    prev = cur;
  }
  const double burst = radio.t_send_s * radio.p_send_w;
  c.expect(per_packet_energy(1.0 / radio.t_send_s, radio).joules == burst, "standby clamp at 1/T_send");
  c.expect(per_packet_energy(2.0 / radio.t_send_s, radio).joules == burst, "standby clamp above 1/T_send");

  for (const auto& s : catalog().sensors) {
    const auto r = evaluate(s, Baseline{}, s.f_max_hz, catalog());
    c.expect(r.energy.e_s() / r.energy.e_total() < 1e-3, s.name + ": E_s/E_total >= 1e-3");
  }

  const auto phi = make_projection(CsConfig::from_ratio(256, 8.0));
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> g;
  for (int i = 0; i < 20; ++i) {
    const Vector x = Vector::NullaryExpr(256, [&] { return g(rng); });
    const Vector y = Vector::NullaryExpr(256, [&] { return g(rng); });
    const double a = g(rng), b = g(rng);
    const Vector rhs = a * compress(phi, x) + b * compress(phi, y);
    c.expect((compress(phi, a * x + b * y) - rhs).norm() <= 1e-9 * (1.0 + rhs.norm()), "compress linearity");
  }

  const auto square = make_projection(CsConfig::from_dims(64, 64, 7), {.orthonormal = true});
  Matrix h(3, 64);
  for (Eigen::Index i = 0; i < h.size(); ++i) h.data()[i] = g(rng);
  const Vector x = Vector::NullaryExpr(64, [&] { return g(rng); });
  const Vector exact = h * x;
  const Vector via = derive_compressed_operator(h, square) * compress(square, x);
  c.expect((via - exact).norm() <= 1e-10 * exact.norm(), "H_hat exact for square orthonormal Phi");

  // Mean distortion falls like 1/sqrt(m); with 200 seeded trials the sampling
  // noise is a few percent, so each step may exceed the previous by at most 5%.
  double prev_mean = 1e300;
  for (int m : {16, 32, 64, 128}) {
    const auto s = inner_product_distortion(CsConfig::from_dims(256, m, 1), 200, 8);
    c.expect(s.mean <= 1.05 * prev_mean, "distortion increased at m = " + std::to_string(m));
    prev_mean = s.mean;
  }
}

// Per-packet summation of a one-minute strip, independent of the closed form.
double strip_by_summation(double f_s, const RadioProfile& radio) {
  const long packets = std::lround(60.0 * f_s);
  const double standby = std::max(0.0, 1.0 / f_s - radio.t_send_s);
  double total = 0.0;
  for (long i = 0; i < packets; ++i) total += radio.t_send_s * radio.p_send_w + standby * radio.p_standby_w;
  return total;
}

void criterion10(Check& c) {
  const char* argv[] = {"wban", "reproduce", "--format", "csv"};
  std::ostringstream out, err;
  const int code = cli::run(4, argv, out, err);
  c.expect(code == 0, "reproduce exited " + std::to_string(code) + ": " + err.str());

  const double strip = strip_by_summation(1000.0, catalog().radio);
  c.near_abs(strip, 4.77, 0.02, "e_strip");
  const ComputeProfile compute{10.0, ComputeLabel::TraditionalAnomaly, false};
  for (auto kind : {SchemeKind::AnomalyDriven, SchemeKind::CsBased}) {
    const auto pts = sweep_arrhythmia(catalog().sensor("ECG"), {3, 16, 32, 61}, compute, kind, 1000.0, catalog());
    for (std::size_t i = 1; i < pts.size(); ++i) {
      const double d = pts[i].result.energy.e_total() - pts[0].result.energy.e_total();
      const double want = (pts[i].events_per_day - pts[0].events_per_day) * strip;
      c.near_abs(d, want, 1e-9 * want, "affine step to n = " + std::to_string(pts[i].events_per_day));
    }
  }
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<void(Check&)>> criteria[] = {
      {"baseline energy table", criterion1},
      {"battery lifetimes", criterion2},
      {"samples per packet", criterion3},
      {"aggregation energy and savings", criterion4},
      {"anomaly-driven EEG", criterion5},
      {"CS-based EEG", criterion6},
      {"storage", criterion7},
      {"sampling-energy bounds", criterion8},
      {"property suite", criterion9},
      {"reproduce and arrhythmia affinity", criterion10},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    Check check;
    try {
      run(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    std::printf("%-4s criterion %2d  %s\n", check.failures ? "FAIL" : "PASS", index, name);
    for (const auto& note : check.notes) std::printf("        %s\n", note.c_str());
    if (check.failures) ++failed;
  }
  std::printf("%d/%d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
