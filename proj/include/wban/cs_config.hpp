#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "wban/errors.hpp"

namespace wban {

// Compressive-sensing setup: n-sample windows projected onto m measurements.
// alpha keeps the ratio as requested; m is its rounded realisation.
struct CsConfig {
  int n = 256;
  int m = 32;
  double alpha = 8.0;
  std::uint64_t seed = 1;

  // m = round(n / alpha), at least 1.
  static CsConfig from_ratio(int n, double alpha, std::uint64_t seed = 1) {
    if (n < 1) throw DimensionError("CsConfig: n must be >= 1");
    if (!(alpha >= 1.0)) throw DimensionError("CsConfig: alpha must be >= 1");
    const int m = std::max(1, static_cast<int>(std::lround(n / alpha)));
    return {n, m, alpha, seed};
  }

  static CsConfig from_dims(int n, int m, std::uint64_t seed = 1) {
    CsConfig cfg{n, m, m > 0 ? static_cast<double>(n) / m : 0.0, seed};
    cfg.validate();
    return cfg;
  }

  void validate() const {
    if (m < 1 || n < 1 || m > n)
      throw DimensionError("CsConfig: need 1 <= m <= n, got n=" + std::to_string(n) +
                           " m=" + std::to_string(m));
    if (!(alpha >= 1.0)) throw DimensionError("CsConfig: alpha must be >= 1");
    if (m != std::max(1L, std::lround(n / alpha)))
      throw DimensionError("CsConfig: m must equal round(n / alpha)");
  }

  friend bool operator==(const CsConfig&, const CsConfig&) = default;
};

}  // namespace wban
