#include <cmath>
#include <random>

#include <Eigen/SVD>
#include <gtest/gtest.h>

#include "padelab/errors.hpp"
#include "padelab/exact_linalg.hpp"
#include "padelab/series.hpp"
#include "padelab/toeplitz.hpp"

using namespace padelab;

namespace {

RationalMatrix from_ints(std::size_t r, std::size_t c, std::initializer_list<long> values) {
  RationalMatrix m(r, c);
  auto it = values.begin();
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) m(i, j) = QComplex(*it++);
  }
  return m;
}

}  // namespace

TEST(ExactNullspace, K2Block) {
  const RationalMatrix b = from_ints(2, 3, {64, 16, 256, 256, 64, 16});
  const auto v = exact_nullspace(b);
  const std::vector<QComplex> want{1, -4, 0};
  EXPECT_EQ(v, want);
  for (const auto& x : b.apply(v)) EXPECT_TRUE(x.is_zero());
}

TEST(ExactNullspace, RankDeficiencyCarriesBasis) {
  const RationalMatrix m = from_ints(2, 4, {1, 2, 3, 4, 2, 4, 6, 8});
  try {
    exact_nullspace(m);
    FAIL();
  } catch (const RankDeficiency& e) {
    EXPECT_EQ(e.rank(), 1u);
    ASSERT_EQ(e.basis().size(), 3u);
    for (const auto& v : e.basis()) {
      for (const auto& x : m.apply(v)) EXPECT_TRUE(x.is_zero());
    }
  }
}

TEST(ExactNullspace, RationalAndComplexEntries) {
  RationalMatrix m(2, 3);
  m(0, 0) = QComplex::parse("1/3");
  m(0, 1) = QComplex::parse("1/2i");
  m(0, 2) = QComplex::parse("2");
  m(1, 0) = QComplex::parse("1+i");
  m(1, 1) = QComplex::parse("-3/7");
  m(1, 2) = QComplex::parse("5/11");
  const auto v = exact_nullspace(m);
  for (const auto& x : m.apply(v)) EXPECT_TRUE(x.is_zero());
  std::size_t lead = 0;
  while (v[lead].is_zero()) ++lead;
  EXPECT_EQ(v[lead], QComplex(1));
}

TEST(ExactNullspace, CounterexampleBlocks) {
  const PowerSeries s = build_mascarenhas_series(6, PoleSequence::harmonic_repeated(5));
  for (int k = 2; k <= 6; ++k) {
    const std::size_t n = mascarenhas_degree(k);
    const RationalMatrix b = build_b_exact(s, n);
    const auto v = exact_nullspace(b);
    for (const auto& x : b.apply(v)) EXPECT_TRUE(x.is_zero());
    EXPECT_EQ(v[0], QComplex(1));
  }
}

TEST(ExactNullspace, CapEnforced) {
  RationalMatrix m(kExactNullspaceCap + 1, kExactNullspaceCap + 2);
  EXPECT_THROW(exact_nullspace(m), UnsupportedInput);
}

TEST(SigmaOracle, K2CharacteristicPolynomial) {
  const RationalMatrix b = from_ints(2, 3, {64, 16, 256, 256, 64, 16});
  const SigmaRatioOracle o = exact_sigma_ratio_bounds(b);
  ASSERT_EQ(o.gram_char_poly.size(), 3u);
  EXPECT_EQ(o.gram_char_poly[0], mpq_class(1));
  EXPECT_EQ(o.gram_char_poly[1], mpq_class(-139776));
  EXPECT_EQ(o.gram_char_poly[2], mpq_class(mpz_class(69888) * 69888 - mpz_class(21504) * 21504));
  EXPECT_NEAR(o.sigma_max, std::sqrt(91392.0), 1e-12 * std::sqrt(91392.0));
  EXPECT_NEAR(o.sigma_min, std::sqrt(48384.0), 1e-12 * std::sqrt(48384.0));
  EXPECT_NEAR(o.float_ratio, std::sqrt(91392.0 / 48384.0), 1e-15);
}

TEST(SigmaOracle, AgreesWithEigenOnRandomIntegerMatrices) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> entry(-50, 50);
  for (std::size_t n = 1; n <= 14; ++n) {
    RationalMatrix m(n, n + 1);
    Eigen::MatrixXd f(n, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j <= n; ++j) {
        const long v = entry(rng);
        m(i, j) = QComplex(v);
        f(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = static_cast<double>(v);
      }
    }
    const SigmaRatioOracle o = exact_sigma_ratio_bounds(m);
    Eigen::JacobiSVD<Eigen::MatrixXd> ref(f);
    const auto& sv = ref.singularValues();
    EXPECT_NEAR(o.sigma_max, sv(0), 1e-10 * sv(0)) << n;
    EXPECT_NEAR(o.sigma_min, sv(sv.size() - 1), 1e-8 * sv(0)) << n;
  }
}

TEST(SigmaOracle, SingularMatrixHasInfiniteRatio) {
  const SigmaRatioOracle o = exact_sigma_ratio_bounds(from_ints(2, 3, {1, 2, 3, 2, 4, 6}));
  EXPECT_EQ(o.sigma_min, 0.0);
  EXPECT_EQ(o.float_ratio, std::numeric_limits<double>::infinity());
}

TEST(SigmaOracle, CapEnforced) {
  EXPECT_THROW(exact_sigma_ratio_bounds(RationalMatrix(kCharPolyCap + 1, kCharPolyCap + 2)),
               UnsupportedInput);
}
