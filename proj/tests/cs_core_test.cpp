#include <cmath>
#include <random>

#include <Eigen/SVD>
#include <gtest/gtest.h>

#include "wban/cs_core.hpp"

namespace wban {
namespace {

// Second route to the compressed operator: H * pinv(Phi), with the
// pseudo-inverse taken from an SVD instead of the normal equations.
Matrix svd_compressed_operator(const Matrix& h, const Matrix& phi) {
  Eigen::JacobiSVD<Matrix> svd(phi, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector inv_s = svd.singularValues().cwiseInverse();
  const Matrix pinv = svd.matrixV() * inv_s.asDiagonal() * svd.matrixU().transpose();
  return h * pinv;
}

Matrix random_matrix(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = g(rng);
  return m;
}

TEST(CsConfig, RatioAndDims) {
  const auto c = CsConfig::from_ratio(256, 8.0);
  EXPECT_EQ(c.n, 256);
  EXPECT_EQ(c.m, 32);
  EXPECT_EQ(c.alpha, 8.0);
  EXPECT_EQ(CsConfig::from_dims(100, 25).alpha, 4.0);
  EXPECT_THROW(CsConfig::from_dims(10, 11).validate(), DimensionError);
  EXPECT_THROW(CsConfig::from_dims(10, 0).validate(), DimensionError);
}

TEST(CsCore, ProjectionIsDeterministicInSeed) {
  const auto cfg = CsConfig::from_ratio(256, 8.0, 42);
  const auto a = make_projection(cfg);
  const auto b = make_projection(cfg);
  EXPECT_EQ(a.rows(), 32);
  EXPECT_EQ(a.cols(), 256);
  EXPECT_TRUE(a.entries() == b.entries());
  EXPECT_FALSE(a.entries() == make_projection(CsConfig::from_ratio(256, 8.0, 43)).entries());
}

TEST(CsCore, ProjectionEntryVariance) {
  const auto phi = make_projection(CsConfig::from_ratio(512, 4.0, 9));
  const double n = static_cast<double>(phi.entries().size());
  const double mean = phi.entries().mean();
  const double var = (phi.entries().array() - mean).square().sum() / (n - 1.0);
  // 65536 samples of N(0, 1/128): sd of the variance estimate is about 0.5%.
  EXPECT_NEAR(mean, 0.0, 4.0 * std::sqrt(1.0 / 128.0 / n));
  EXPECT_NEAR(var, 1.0 / 128.0, 0.03 / 128.0);
}

TEST(CsCore, CompressShapesAndLinearity) {
  const auto phi = make_projection(CsConfig::from_ratio(256, 8.0));
  EXPECT_EQ(compress(phi, Vector::Zero(256)), Vector::Zero(32));
  EXPECT_THROW(compress(phi, Vector::Zero(255)), DimensionError);

  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  for (int i = 0; i < 50; ++i) {
    const Vector x = Vector::NullaryExpr(256, [&] { return g(rng); });
    const Vector y = Vector::NullaryExpr(256, [&] { return g(rng); });
    const double a = g(rng), b = g(rng);
    const Vector lhs = compress(phi, a * x + b * y);
    const Vector rhs = a * compress(phi, x) + b * compress(phi, y);
    EXPECT_LT((lhs - rhs).norm(), 1e-9 * (1.0 + rhs.norm()));
  }
}

TEST(CsCore, IdentityProjectionIsNoOp) {
  const ProjectionMatrix eye(CsConfig::from_dims(16, 16), Matrix::Identity(16, 16));
  const Vector x = Vector::LinSpaced(16, -1.0, 1.0);
  EXPECT_EQ(compress(eye, x), x);
  const Matrix h = random_matrix(3, 16, 5);
  EXPECT_LT((derive_compressed_operator(h, eye) - h).norm(), 1e-12);
}

TEST(CsCore, OrthonormalProjectionRows) {
  const auto phi = make_projection(CsConfig::from_ratio(64, 4.0), {.orthonormal = true});
  const Matrix gram = phi.entries() * phi.entries().transpose();
  EXPECT_LT((gram - 4.0 * Matrix::Identity(16, 16)).norm(), 1e-10);
}

TEST(CsCore, SquareOrthogonalProjectionRecoversFeaturesExactly) {
  const auto phi = make_projection(CsConfig::from_dims(32, 32, 3), {.orthonormal = true});
  const Matrix h = random_matrix(4, 32, 8);
  const Matrix h_hat = derive_compressed_operator(h, phi);
  const Vector x = random_matrix(32, 1, 10).col(0);
  EXPECT_LT((h_hat * compress(phi, x) - h * x).norm(), 1e-10 * (h * x).norm());
}

TEST(CsCore, CompressedOperatorOfPhiIsIdentity) {
  const auto phi = make_projection(CsConfig::from_ratio(128, 4.0, 2));
  const Matrix h_hat = derive_compressed_operator(phi.entries(), phi);
  EXPECT_LT((h_hat - Matrix::Identity(32, 32)).norm(), 1e-9);
}

TEST(CsCore, CompressedOperatorMatchesSvdRoute) {
  for (int n : {16, 32, 64}) {
    const auto phi = make_projection(CsConfig::from_ratio(n, 4.0, static_cast<std::uint64_t>(n)));
    const Matrix h = random_matrix(5, n, static_cast<std::uint64_t>(n) + 100);
    const Matrix normal_eq = derive_compressed_operator(h, phi);
    const Matrix svd = svd_compressed_operator(h, phi.entries());
    EXPECT_LT((normal_eq - svd).norm(), 1e-9 * svd.norm()) << "n = " << n;
  }
}

TEST(CsCore, CompressedOperatorErrors) {
  const auto phi = make_projection(CsConfig::from_ratio(64, 4.0));
  EXPECT_THROW(derive_compressed_operator(Matrix::Zero(2, 63), phi), DimensionError);

  Matrix dup = phi.entries();
  dup.row(1) = dup.row(0);
  const ProjectionMatrix singular(phi.config(), dup);
  EXPECT_THROW(derive_compressed_operator(Matrix::Zero(2, 64), singular), SingularProjection);
}

TEST(CsCore, SparseVectorHasExactSupport) {
  std::mt19937_64 rng(77);
  for (int k : {1, 8, 64}) {
    const Vector x = random_sparse_vector(64, k, rng);
    EXPECT_EQ((x.array() != 0.0).count(), k);
  }
}

TEST(CsCore, DistortionSingleTrialMeanEqualsP95) {
  const auto s = inner_product_distortion(CsConfig::from_ratio(128, 4.0), 1, 4);
  EXPECT_EQ(s.trials, 1);
  EXPECT_EQ(s.mean, s.p95);
  EXPECT_THROW(inner_product_distortion(CsConfig::from_ratio(128, 4.0), 0, 4), DomainError);
  EXPECT_THROW(inner_product_distortion(CsConfig::from_ratio(128, 4.0), 10, 129), DomainError);
}

TEST(CsCore, DistortionIsDeterministicAndOrderIndependent) {
  const auto cfg = CsConfig::from_ratio(256, 8.0, 5);
  const auto a = inner_product_distortion(cfg, 100, 8);
  const auto b = inner_product_distortion(cfg, 100, 8);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.p95, b.p95);

  // Trial 0 can be rebuilt on its own from substream 1.
  const auto phi = make_projection(cfg);
  auto rng = cs_stream(cfg.seed, 1);
  const Vector x = random_sparse_vector(256, 8, rng);
  const Vector y = random_sparse_vector(256, 8, rng);
  const double expected = std::abs(compress(phi, x).dot(compress(phi, y)) - x.dot(y)) / (x.norm() * y.norm());
  EXPECT_DOUBLE_EQ(inner_product_distortion(cfg, 1, 8).mean, expected);
}

TEST(CsCore, DistortionShrinksWithMoreMeasurements) {
  const auto wide = inner_product_distortion(CsConfig::from_dims(256, 64, 1), 200, 8);
  const auto narrow = inner_product_distortion(CsConfig::from_dims(256, 16, 1), 200, 8);
  EXPECT_LT(wide.mean, narrow.mean);
}

TEST(CsCoreProperty, DistortionNonIncreasingInM) {
  // Mean error scales like 1/sqrt(m); 200 trials leave a few percent of noise,
  // so each step must drop below 1.05 times the previous mean.
  double prev = 1e300;
  for (int m : {16, 32, 64, 128}) {
    const auto s = inner_product_distortion(CsConfig::from_dims(256, m, 1), 200, 8);
    EXPECT_LT(s.mean, 1.05 * prev) << "m = " << m;
    EXPECT_LE(s.mean, s.p95 + 1e-15);
    prev = s.mean;
  }
}

}  // namespace
}  // namespace wban
