#pragma once

// Compressive-sensing primitives: seeded Gaussian projections, projection of a
// signal window, the compressed-domain counterpart of a linear feature
// extractor, and an inner-product distortion diagnostic.
//
// Random streams: the projection matrix for seed s is drawn from a
// std::mt19937_64 seeded with seed_seq{lo32(s), hi32(s), 0}. Distortion trial t
// (0-based) draws its vector pair from seed_seq{lo32(s), hi32(s), t + 1}, so
// trials are independent of each other and of the matrix and can be evaluated
// in any order.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <Eigen/QR>

#include "wban/cs_config.hpp"
#include "wban/errors.hpp"

namespace wban {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline std::mt19937_64 cs_stream(std::uint64_t seed, std::uint32_t substream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                    static_cast<std::uint32_t>(seed >> 32), substream};
  return std::mt19937_64(seq);
}

struct ProjectionOptions {
  // Replace the Gaussian rows by an orthonormal basis of their span, scaled by
  // sqrt(n/m). For m = n this gives an orthogonal matrix.
  bool orthonormal = false;
};

class ProjectionMatrix {
public:
  ProjectionMatrix(CsConfig cfg, Matrix entries) : cfg_(cfg), entries_(std::move(entries)) {
    if (entries_.rows() != cfg_.m || entries_.cols() != cfg_.n)
      throw DimensionError("ProjectionMatrix: entries do not match the configuration");
  }

  int rows() const noexcept { return cfg_.m; }
  int cols() const noexcept { return cfg_.n; }
  const CsConfig& config() const noexcept { return cfg_; }
  const Matrix& entries() const noexcept { return entries_; }

private:
  CsConfig cfg_;
  Matrix entries_;
};

/// m x n matrix with i.i.d. N(0, 1/m) entries, deterministic in cfg.seed.
inline ProjectionMatrix make_projection(const CsConfig& cfg, ProjectionOptions opts = {}) {
  cfg.validate();
  auto rng = cs_stream(cfg.seed, 0);
  std::normal_distribution<double> gauss(0.0, 1.0 / std::sqrt(static_cast<double>(cfg.m)));
  Matrix phi(cfg.m, cfg.n);
  for (int i = 0; i < cfg.m; ++i)
    for (int j = 0; j < cfg.n; ++j) phi(i, j) = gauss(rng);

  if (opts.orthonormal) {
    Eigen::HouseholderQR<Matrix> qr(phi.transpose());
    Matrix q = qr.householderQ() * Matrix::Identity(cfg.n, cfg.m);
    phi = std::sqrt(static_cast<double>(cfg.n) / cfg.m) * q.transpose();
  }
  return {cfg, std::move(phi)};
}

/// Compressed measurements of one n-sample window.
inline Vector compress(const ProjectionMatrix& phi, const Vector& x) {
  if (x.size() != phi.cols())
    throw DimensionError("compress: signal length " + std::to_string(x.size()) +
                         " does not match n = " + std::to_string(phi.cols()));
  return phi.entries() * x;
}

/// Feature operator acting on compressed measurements: H Phi^T (Phi Phi^T)^-1,
/// so that H_hat * compress(x) is the least-squares estimate of H * x.
inline Matrix derive_compressed_operator(const Matrix& h, const ProjectionMatrix& phi) {
  if (h.cols() != phi.cols())
    throw DimensionError("derive_compressed_operator: H has " + std::to_string(h.cols()) +
                         " columns, expected " + std::to_string(phi.cols()));
  const Matrix& p = phi.entries();
  const Matrix gram = p * p.transpose();
  Eigen::LLT<Matrix> llt(gram);
  if (llt.info() != Eigen::Success || llt.rcond() < 1e-10)
    throw SingularProjection("derive_compressed_operator: Phi Phi^T is rank-deficient");
  // H_hat^T = (Phi Phi^T)^-1 Phi H^T
  return llt.solve(p * h.transpose()).transpose();
}

/// Random vector with exactly k non-zeros at uniformly chosen positions,
/// unit-Gaussian magnitudes.
template <typename Rng>
Vector random_sparse_vector(int n, int k, Rng& rng) {
  std::vector<int> idx(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
  // Partial Fisher-Yates: the first k entries form the support.
  for (int i = 0; i < k; ++i) {
    std::uniform_int_distribution<int> pick(i, n - 1);
    std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(pick(rng))]);
  }
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector x = Vector::Zero(n);
  for (int i = 0; i < k; ++i) x(idx[static_cast<std::size_t>(i)]) = gauss(rng);
  return x;
}

struct DistortionStats {
  double mean = 0.0;
  double p95 = 0.0;
  int trials = 0;
};

/// Relative inner-product error |<Phi x, Phi y> - <x, y>| / (|x| |y|) over
/// `trials` pairs of k-sparse vectors.
inline DistortionStats inner_product_distortion(const ProjectionMatrix& phi, int trials,
                                                int sparsity) {
  const int n = phi.cols();
  if (trials < 1) throw DomainError("inner_product_distortion: trials must be >= 1");
  if (sparsity < 1 || sparsity > n)
    throw DomainError("inner_product_distortion: sparsity must be in [1, n]");

  std::vector<double> errors(static_cast<std::size_t>(trials));
  for (int t = 0; t < trials; ++t) {
    auto rng = cs_stream(phi.config().seed, static_cast<std::uint32_t>(t) + 1);
    const Vector x = random_sparse_vector(n, sparsity, rng);
    const Vector y = random_sparse_vector(n, sparsity, rng);
    const double exact = x.dot(y);
    const double projected = compress(phi, x).dot(compress(phi, y));
    errors[static_cast<std::size_t>(t)] = std::abs(projected - exact) / (x.norm() * y.norm());
  }

  DistortionStats stats;
  stats.trials = trials;
  for (double e : errors) stats.mean += e;
  stats.mean /= trials;
  std::sort(errors.begin(), errors.end());
  // Nearest-rank percentile.
  const auto rank = static_cast<std::size_t>(std::ceil(0.95 * trials));
  stats.p95 = errors[std::max<std::size_t>(rank, 1) - 1];
  return stats;
}

inline DistortionStats inner_product_distortion(const CsConfig& cfg, int trials, int sparsity,
                                                ProjectionOptions opts = {}) {
  return inner_product_distortion(make_projection(cfg, opts), trials, sparsity);
}

}  // namespace wban
