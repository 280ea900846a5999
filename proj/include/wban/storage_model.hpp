#pragma once

#include "wban/errors.hpp"

namespace wban {

inline constexpr double kSecondsPerYear = 31'536'000.0;  // 365 days
inline constexpr double kBytesPerMiB = 1024.0 * 1024.0;
inline constexpr double kBytesPerGiB = 1024.0 * 1024.0 * 1024.0;

struct StorageEstimate {
  double bytes_per_year = 0.0;

  double display_mib() const noexcept { return bytes_per_year / kBytesPerMiB; }
  double display_gib() const noexcept { return bytes_per_year / kBytesPerGiB; }

  friend bool operator==(const StorageEstimate&, const StorageEstimate&) = default;
};

/// Raw data volume for a year of continuous sampling.
inline StorageEstimate yearly_storage(double f_s_hz, int n_bits) {
  if (!(f_s_hz >= 0.0)) throw DomainError("yearly_storage: f_s must be >= 0");
  return {f_s_hz * n_bits / 8.0 * kSecondsPerYear};
}

/// Volume when only `active_seconds_per_year` of raw data are kept, reduced by
/// a compression ratio alpha >= 1.
inline StorageEstimate event_storage(double active_seconds_per_year, double f_s_hz, int n_bits,
                                     double compression_ratio = 1.0) {
  if (!(active_seconds_per_year >= 0.0))
    throw DomainError("event_storage: active seconds must be >= 0");
  if (!(f_s_hz >= 0.0)) throw DomainError("event_storage: f_s must be >= 0");
  if (!(compression_ratio >= 1.0)) throw DomainError("event_storage: alpha must be >= 1");
  return {active_seconds_per_year * f_s_hz * n_bits / 8.0 / compression_ratio};
}

}  // namespace wban
