#pragma once

// Analytical per-day energy model of a sensor node: ADC sampling, cyclic
// radio transmission and battery lifetime.

#include <algorithm>
#include <cmath>

#include "wban/catalog.hpp"
#include "wban/errors.hpp"

namespace wban {

inline constexpr double kSecondsPerDay = 86400.0;

// Per-day energy decomposition. The total is formed once, at construction.
class EnergyBreakdown {
public:
  EnergyBreakdown() = default;
  EnergyBreakdown(double sampling, double transmission, double computation, double buffer)
      : e_s_(sampling), e_t_(transmission), e_c_(computation), e_buf_(buffer),
        e_total_(e_s_ + e_t_ + e_c_ + e_buf_) {
    if (e_s_ < 0 || e_t_ < 0 || e_c_ < 0 || e_buf_ < 0)
      throw DomainError("energy components must be non-negative");
  }

  double e_s() const noexcept { return e_s_; }
  double e_t() const noexcept { return e_t_; }
  double e_c() const noexcept { return e_c_; }
  double e_buf() const noexcept { return e_buf_; }
  double e_total() const noexcept { return e_total_; }

  friend bool operator==(const EnergyBreakdown&, const EnergyBreakdown&) = default;

private:
  double e_s_ = 0.0;
  double e_t_ = 0.0;
  double e_c_ = 0.0;
  double e_buf_ = 0.0;
  double e_total_ = 0.0;
};

/// Effective number of bits for a signal-to-noise ratio in dB.
inline double enob_from_snr(double snr_db) {
  if (!(snr_db > 1.76)) throw DomainError("enob_from_snr: SNR must exceed 1.76 dB");
  return (snr_db - 1.76) / 6.02;
}

struct AdcEnergy {
  double joules_per_sample = 0.0;
  // Resolution outside the 8..16 bit medium-resolution band the bound was fitted on.
  bool extrapolated = false;
};

/// Upper bound on ADC energy per conversion, 4^(N-9) pJ.
inline AdcEnergy adc_energy_bound(int n_bits) {
  return {std::pow(4.0, n_bits - 9) * 1e-12, n_bits < 8 || n_bits > 16};
}

inline double sampling_energy_per_day(double f_s_hz, int n_bits) {
  if (!(f_s_hz > 0.0)) throw DomainError("sampling_energy_per_day: f_s must be > 0");
  return f_s_hz * kSecondsPerDay * adc_energy_bound(n_bits).joules_per_sample;
}

struct PacketEnergy {
  double joules = 0.0;
  // The cycle period is no longer than the send time; standby is clamped to zero.
  bool saturated = false;
};

/// Energy of one transmit cycle at rate f_t: a send burst plus the standby
/// remainder of the period, max(0, 1/f_t - t_send).
inline PacketEnergy per_packet_energy(double f_t_hz, const RadioProfile& radio) {
  if (!(f_t_hz > 0.0)) throw DomainError("per_packet_energy: f_t must be > 0");
  const double send = radio.t_send_s * radio.p_send_w;
  const double period = 1.0 / f_t_hz;
  if (period <= radio.t_send_s) return {send, true};
  return {send + (period - radio.t_send_s) * radio.p_standby_w, false};
}

inline double transmission_energy_per_day(double f_t_hz, const RadioProfile& radio) {
  return per_packet_energy(f_t_hz, radio).joules * f_t_hz * kSecondsPerDay;
}

inline double battery_lifetime_days(double e_total_j_per_day, const BatteryModel& battery) {
  if (!(e_total_j_per_day > 0.0))
    throw DomainError("battery_lifetime_days: daily energy must be > 0");
  return battery.capacity_j / e_total_j_per_day;
}

}  // namespace wban
