#include <cmath>
#include <random>

#include <Eigen/SVD>
#include <gtest/gtest.h>

#include "padelab/errors.hpp"
#include "padelab/linalg.hpp"
#include "padelab/number.hpp"

using namespace padelab;

namespace {

Eigen::MatrixXcd random_matrix(std::mt19937_64& rng, Eigen::Index r, Eigen::Index c, bool is_complex) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd m(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = Complex(g(rng), is_complex ? g(rng) : 0.0);
  }
  return m;
}

}  // namespace

TEST(Svd, K2CounterexampleBlock) {
  Eigen::MatrixXcd b(2, 3);
  b << 64, 16, 256, 256, 64, 16;
  const SingularSpectrum s = svd(b);
  ASSERT_EQ(s.sigmas.size(), 2);
  EXPECT_NEAR(s.sigmas(0), std::sqrt(91392.0), 1e-10);
  EXPECT_NEAR(s.sigmas(1), std::sqrt(48384.0), 1e-10);
  EXPECT_NEAR(s.ratio, std::sqrt(91392.0 / 48384.0), 1e-12);
  const Eigen::VectorXcd v = s.null_vector;
  EXPECT_NEAR(std::abs(v(1) / v(0) + 4.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(v(2)), 0.0, 1e-12);
  EXPECT_GT(v(0).real(), 0.0);
  EXPECT_EQ(v(0).imag(), 0.0);
  EXPECT_LE(s.null_residual, 1e-14);
}

TEST(Svd, ReconstructionOnRandomMatrices) {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<int> size(1, 64);
  for (int trial = 0; trial < 200; ++trial) {
    const int r = size(rng);
    const int c = trial % 3 == 0 ? r + 1 : size(rng) + 1;
    const Eigen::MatrixXcd m = random_matrix(rng, r, std::min(c, 65), trial % 2 == 0);
    const SingularSpectrum s = svd(m);
    const double err = (s.reconstruct() - m).cwiseAbs().maxCoeff();
    EXPECT_LE(err, 1e-10 * s.sigmas(0)) << r << "x" << m.cols();
    const Eigen::MatrixXcd vv = s.right.adjoint() * s.right;
    EXPECT_LE((vv - Eigen::MatrixXcd::Identity(m.cols(), m.cols())).cwiseAbs().maxCoeff(), 1e-12);
    for (Eigen::Index i = 1; i < s.sigmas.size(); ++i) EXPECT_GE(s.sigmas(i - 1), s.sigmas(i));
  }
}

TEST(Svd, AgreesWithEigenJacobi) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const Eigen::Index r = 1 + trial % 20;
    const Eigen::MatrixXcd m = random_matrix(rng, r, r + 1, trial % 2 == 1);
    const SingularSpectrum s = svd(m);
    Eigen::JacobiSVD<Eigen::MatrixXcd> ref(m);
    ASSERT_EQ(ref.singularValues().size(), s.sigmas.size());
    for (Eigen::Index i = 0; i < s.sigmas.size(); ++i) {
      EXPECT_NEAR(s.sigmas(i), ref.singularValues()(i), 1e-12 * s.sigmas(0));
    }
  }
}

TEST(Svd, NullVectorOfWideMatrix) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::MatrixXcd m = random_matrix(rng, 10, 11, true);
    const SingularSpectrum s = svd(m);
    EXPECT_NEAR(s.null_vector.norm(), 1.0, 1e-13);
    EXPECT_LE((m * s.null_vector).norm(), 1e-13 * s.sigmas(0));
  }
}

TEST(Svd, Deterministic) {
  std::mt19937_64 rng(3);
  const Eigen::MatrixXcd m = random_matrix(rng, 9, 10, true);
  const SingularSpectrum a = svd(m);
  const SingularSpectrum b = svd(m);
  EXPECT_EQ(a.sigmas, b.sigmas);
  EXPECT_EQ(a.right, b.right);
}

TEST(Svd, RankDeficientAndZero) {
  Eigen::MatrixXcd m(3, 4);
  m << 1, 2, 3, 4, 2, 4, 6, 8, 0, 0, 0, 0;
  const SingularSpectrum s = svd(m);
  EXPECT_NEAR(s.sigmas(0), std::sqrt(5.0 * 30.0), 1e-12);
  EXPECT_LE(s.sigmas(1), 1e-14);
  EXPECT_EQ(s.ratio, std::numeric_limits<double>::infinity());
  const SingularSpectrum z = svd(Eigen::MatrixXcd::Zero(2, 3));
  EXPECT_EQ(z.sigmas(0), 0.0);
}

TEST(Svd, InvalidInput) {
  EXPECT_THROW(svd(Eigen::MatrixXcd(0, 3)), InvalidParameter);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Ones(2, 2);
  m(0, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(svd(m), InvalidParameter);
}

TEST(Svd, SweepCapRaisesConvergenceError) {
  std::mt19937_64 rng(5);
  const Eigen::MatrixXcd m = random_matrix(rng, 8, 9, false);
  try {
    svd(m, SvdOptions{1});
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& e) {
    EXPECT_GT(e.residual(), 0.0);
  }
}

TEST(Weyl, RandomPerturbations) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> size(1, 24);
  std::uniform_real_distribution<double> eps(-12.0, 0.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int r = size(rng);
    const Eigen::MatrixXcd m = random_matrix(rng, r, r + 1, trial % 2 == 0);
    const Eigen::MatrixXcd d = std::pow(10.0, eps(rng)) * random_matrix(rng, r, r + 1, trial % 2 == 0);
    const PerturbationCheck c = singular_value_perturbation_check(m, d);
    EXPECT_TRUE(c.pass) << "trial " << trial;
    EXPECT_LE(c.max_shift, c.norm_delta * (1 + 1e-10) + 1e-10 * spectral_norm(m));
  }
}

TEST(SpectralNorm, MatchesLargestSingularValue) {
  Eigen::MatrixXcd b(2, 3);
  b << 64, 16, 256, 256, 64, 16;
  EXPECT_NEAR(spectral_norm(b), std::sqrt(91392.0), 1e-10);
}
