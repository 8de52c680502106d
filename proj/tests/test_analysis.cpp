#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <gtest/gtest.h>

#include "padelab/analysis.hpp"
#include "padelab/errors.hpp"

using namespace padelab;

namespace {

PoleSequence quarter() { return PoleSequence::explicit_list({Number::parse("1/4")}); }

PoleSequence harmonic(int k_max) {
  return PoleSequence::harmonic_repeated(static_cast<std::size_t>(k_max - 1));
}

std::vector<Complex> expand(const std::vector<Complex>& roots, Complex lead) {
  std::vector<Complex> c{lead};
  for (const Complex& r : roots) {
    std::vector<Complex> next(c.size() + 1);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = std::move(next);
  }
  return c;
}

}  // namespace

TEST(PolynomialRoots, KnownRoots) {
  const std::vector<Complex> roots{Complex(0.25), Complex(-2.0), Complex(1.0, 1.0), Complex(0.5, -3.0)};
  const auto found = polynomial_roots(expand(roots, Complex(3.0, -1.0)));
  ASSERT_EQ(found.size(), roots.size());
  for (const auto& r : roots) {
    const auto best = *std::min_element(found.begin(), found.end(), [&](Complex a, Complex b) {
      return std::abs(a - r) < std::abs(b - r);
    });
    EXPECT_NEAR(std::abs(best - r), 0.0, 1e-12);
  }
}

TEST(PolynomialRoots, DegenerateInputs) {
  EXPECT_TRUE(polynomial_roots({Complex(1.0)}).empty());
  EXPECT_TRUE(polynomial_roots({Complex(1.0), Complex(0.0), Complex(0.0)}).empty());
  const auto lin = polynomial_roots({Complex(1.0), Complex(-4.0), Complex(0.0)});
  ASSERT_EQ(lin.size(), 1u);
  EXPECT_EQ(lin[0], Complex(0.25));
}

TEST(NumeratorAtPole, DeflationMatchesExactValue) {
  const PowerSeries s = build_mascarenhas_series(5, harmonic(5));
  for (int k = 2; k <= 5; ++k) {
    const std::size_t n = mascarenhas_degree(k);
    const PadeApproximant r = classical_pade(s, n);
    const QComplex z = *harmonic(5).at(k).exact;
    const QComplex want = pow(QComplex(16), static_cast<unsigned long>(k)) * pow(z, 2 * n);
    const NumeratorAtPole p = numerator_at_pole(s, r, z.to_complex());
    EXPECT_NEAR(std::abs(p.value - want.to_complex()) / std::abs(want.to_complex()), 0.0, 1e-10) << k;
  }
}

TEST(FindPoles, CounterexampleK2) {
  const PowerSeries s = build_mascarenhas_series(2, quarter());
  const PadeApproximant r = classical_pade(s, 2, true);
  const PoleReport rep = find_poles(r, s.radius_hint());
  ASSERT_EQ(rep.poles.size(), 1u);
  EXPECT_NEAR(std::abs(rep.poles[0].location - 0.25), 0.0, 1e-15);
  EXPECT_NEAR(rep.poles[0].numerator_magnitude, 1.0, 1e-12);
  EXPECT_TRUE(rep.poles[0].spurious);
  ASSERT_EQ(rep.spurious.size(), 1u);
  EXPECT_TRUE(rep.doublets.empty());
  EXPECT_EQ(rep.zeros.size(), 2u);
  const PoleReport with_series = find_poles(r, s.radius_hint(), {}, &s);
  EXPECT_NEAR(with_series.poles[0].numerator_magnitude, 1.0, 1e-12);
}

TEST(FindPoles, GeometricPoleOnBoundaryNotSpurious) {
  const PowerSeries s = PowerSeries::exact(std::vector<QComplex>(5, QComplex(1)), 1.0);
  const PadeApproximant r = classical_pade(s, 1);
  const PoleReport rep = find_poles(r, 1.0);
  ASSERT_EQ(rep.poles.size(), 1u);
  EXPECT_NEAR(std::abs(rep.poles[0].location - 1.0), 0.0, 1e-12);
  EXPECT_FALSE(rep.poles[0].spurious);
  EXPECT_TRUE(rep.spurious.empty());
}

TEST(FindPoles, ConstantDenominatorHasNoPoles) {
  PadeApproximant r;
  r.a = {Complex(1.0), Complex(2.0)};
  r.b = {Complex(1.0)};
  const PoleReport rep = find_poles(r, 1.0);
  EXPECT_TRUE(rep.poles.empty());
  EXPECT_EQ(rep.zeros.size(), 1u);
}

TEST(FindPoles, FlagsDoublets) {
  PadeApproximant r;
  r.a = {Complex(-0.5 - 1e-5), Complex(1.0)};  // zero at 0.5 + 1e-5
  r.b = {Complex(-0.5), Complex(1.0)};         // pole at 0.5
  const PoleReport rep = find_poles(r, 1.0);
  ASSERT_EQ(rep.doublets.size(), 1u);
  EXPECT_NEAR(rep.doublets[0].separation, 1e-5, 1e-12);
  EXPECT_TRUE(rep.poles[0].spurious);  // |p(pole)| = 1e-5 against a scale near 1
  EXPECT_TRUE(find_poles(r, 1.0, PoleOptions{1e-6, 1e-6}).doublets.empty());

  // A cancellation below tol_spurious is not spurious.
  r.a = {Complex(-0.5 - 1e-9), Complex(1.0)};
  EXPECT_FALSE(find_poles(r, 1.0).poles[0].spurious);
}

TEST(FindPoles, ResidualAndSpuriousForCounterexample) {
  const PowerSeries s = build_mascarenhas_series(5, harmonic(5));
  for (int k = 2; k <= 5; ++k) {
    const PadeApproximant r = classical_pade(s, mascarenhas_degree(k));
    const PoleReport rep = find_poles(r, s.radius_hint(), {}, &s);
    ASSERT_EQ(rep.poles.size(), 1u);
    double bnorm = 0.0;
    for (const auto& b : r.b) bnorm += std::norm(b);
    EXPECT_LE(rep.poles[0].denominator_residual, 1e-8);
    EXPECT_TRUE(rep.poles[0].spurious) << k;
    EXPECT_NEAR(std::abs(rep.poles[0].location - harmonic(5).at(k).value), 0.0, 1e-12);
  }
}

TEST(PoleReportJson, Layout) {
  const PowerSeries s = build_mascarenhas_series(2, quarter());
  const Json j = pole_report_to_json(find_poles(classical_pade(s, 2), 1.0));
  EXPECT_EQ(j["poles"].size(), 1u);
  EXPECT_EQ(j["poles"][0]["spurious"], true);
  EXPECT_EQ(j["spurious"].size(), 1u);
  EXPECT_TRUE(j["doublets"].empty());
}

TEST(VerifyTheorem, K2ExactExample) {
  const TheoremReport r = verify_theorem(2, quarter(), true);
  EXPECT_TRUE(r.exact);
  EXPECT_EQ(r.n, 2u);
  EXPECT_EQ(r.q_match, 0.0);
  EXPECT_TRUE(r.q_match_exact_zero);
  ASSERT_TRUE(r.p_at_zk_exact.has_value());
  EXPECT_EQ(*r.p_at_zk_exact, QComplex(1));
  EXPECT_NEAR(r.sigma_ratio, std::sqrt(91392.0 / 48384.0), 1e-12);
  EXPECT_TRUE(r.coeff_bound_ok);
  EXPECT_TRUE(r.coeff_bound.j1_equality);
  ASSERT_TRUE(r.oracle_ratio.has_value());
  EXPECT_NEAR(*r.oracle_ratio, r.sigma_ratio, 1e-12);
  EXPECT_EQ(r.S_value, 80.0);
  EXPECT_TRUE(r.pass);
  EXPECT_TRUE(r.audit());
}

TEST(VerifyTheorem, K3FloatExample) {
  const PoleSequence poles = PoleSequence::explicit_list({Number(0.25), Number(0.2)});
  const TheoremReport r = verify_theorem(3, poles, false);
  EXPECT_FALSE(r.exact);
  EXPECT_TRUE(r.pass);
  EXPECT_TRUE(r.audit());
  EXPECT_EQ(r.sums.head_sum, 592.0);
  EXPECT_DOUBLE_EQ(r.S_value, 592.0 + r.sums.tail_sum);
  EXPECT_LT(r.S_value, 2.0 * 4096.0 / 3.0);
}

TEST(VerifyTheorem, AllAdmissibleSequencesPass) {
  const std::vector<const char*> choices{"1/4", "1/5", "1/6", "1/7"};
  for (int k = 2; k <= 5; ++k) {
    for (std::size_t shift = 0; shift < choices.size(); ++shift) {
      std::vector<Number> pts;
      for (int j = 2; j <= k; ++j) pts.push_back(Number::parse(choices[(shift + static_cast<std::size_t>(j)) % 4]));
      const PoleSequence poles = PoleSequence::explicit_list(pts);
      for (bool exact : {false, true}) {
        const TheoremReport r = verify_theorem(k, poles, exact);
        EXPECT_TRUE(r.pass) << "k " << k << " shift " << shift << " exact " << exact;
        EXPECT_TRUE(r.audit());
        EXPECT_LT(r.sigma_ratio, 5.0);
      }
    }
  }
}

TEST(VerifyTheorem, ComplexPoles) {
  const PoleSequence poles = PoleSequence::explicit_list({Number::parse("1/5i"), Number::parse("1/6+1/6i")});
  const TheoremReport r = verify_theorem(3, poles, true);
  EXPECT_TRUE(r.exact);
  EXPECT_TRUE(r.pass);
  EXPECT_TRUE(r.audit());
}

TEST(VerifyTheorem, PreconditionsEnforced) {
  EXPECT_THROW(verify_theorem(2, PoleSequence::explicit_list({Number(0.4)}), false), InvalidParameter);
  EXPECT_THROW(verify_theorem(1, quarter(), false), InvalidParameter);
  EXPECT_THROW(verify_theorem(3, quarter(), false), InvalidParameter);
}

TEST(VerifyTheorem, AuditCatchesTampering) {
  TheoremReport r = verify_theorem(3, harmonic(3), true);
  ASSERT_TRUE(r.audit());
  TheoremReport bad = r;
  bad.sigma_ratio_pass = false;
  EXPECT_FALSE(bad.audit());
  bad = r;
  bad.sigma_n = bad.sandwich_lower - 1.0;
  EXPECT_FALSE(bad.audit());
  bad = r;
  bad.q_match_exact_zero = false;
  EXPECT_FALSE(bad.audit());
}

TEST(VerifyTheorem, CsvHeader) {
  const std::string csv = theorem_reports_to_csv({verify_theorem(2, quarter(), true)});
  std::istringstream in(csv);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_EQ(header, "k,n,sigma1,sigman,ratio,S,S_limit,q_match,p_at_zk_re,p_at_zk_im,pass");
  EXPECT_EQ(row.substr(0, 4), "2,2,");
  EXPECT_EQ(row.substr(row.size() - 9), ",1,0,true");
}

TEST(VerifyTheorem, JsonExactValues) {
  const Json j = theorem_report_to_json(verify_theorem(2, quarter(), true));
  EXPECT_EQ(j["p_at_zk"], Json::array({"1", "0"}));
  EXPECT_EQ(j["z_k"], Json::array({"1/4", "0"}));
  EXPECT_EQ(j["pass"], true);
}

TEST(DivergenceScan, KMax2HasOneRow) {
  const DivergenceScan scan = divergence_scan(2, harmonic(2));
  ASSERT_EQ(scan.rows.size(), 1u);
  ASSERT_EQ(scan.rows[0].entries.size(), 1u);
  EXPECT_TRUE(scan.rows[0].entries[0].pole_hit);
  EXPECT_EQ(scan.rows[0].entries[0].q_abs, 0.0);
  EXPECT_EQ(scan.rows[0].entries[0].error, std::numeric_limits<double>::infinity());
}

TEST(DivergenceScan, RepeatedTargetsHitExactly) {
  const DivergenceScan scan = divergence_scan(5, harmonic(5));
  ASSERT_EQ(scan.rows.size(), 4u);
  ASSERT_EQ(scan.targets.size(), 2u);  // 1/4, 1/5
  const std::vector<const char*> zk{"1/4", "1/4", "1/5", "1/4"};
  for (std::size_t i = 0; i < scan.rows.size(); ++i) {
    const ScanRow& row = scan.rows[i];
    EXPECT_EQ(*row.z_k.exact, QComplex::parse(zk[i]));
    EXPECT_TRUE(row.exact);
    for (const auto& e : row.entries) {
      const bool same = *e.target.exact == *row.z_k.exact;
      EXPECT_EQ(e.pole_hit, same);
      if (same) {
        EXPECT_EQ(e.q_abs, 0.0);
        EXPECT_TRUE(std::isinf(e.error));
      } else {
        EXPECT_GT(e.q_abs, 0.0);
        EXPECT_TRUE(std::isfinite(e.error));
      }
    }
  }
}

TEST(DivergenceScan, ExtraPointIsFinite) {
  ScanOptions opt;
  opt.extra_points = {Number::parse("0.9")};
  const DivergenceScan scan = divergence_scan(3, harmonic(3), opt);
  for (const auto& row : scan.rows) {
    const ScanEntry& e = row.entries.back();
    EXPECT_FALSE(e.pole_hit);
    EXPECT_TRUE(std::isfinite(e.error));
  }
  opt.extra_points = {Number(1.5)};
  EXPECT_THROW(divergence_scan(3, harmonic(3), opt), DomainError);
}

TEST(DivergenceScan, FloatModeUsesTolerance) {
  ScanOptions opt;
  opt.exact = false;
  const DivergenceScan scan = divergence_scan(4, harmonic(4), opt);
  for (const auto& row : scan.rows) {
    EXPECT_FALSE(row.exact);
    for (const auto& e : row.entries) {
      if (e.target.value == row.z_k.value) {
        EXPECT_TRUE(e.pole_hit);
      }
    }
  }
}

TEST(DivergenceScan, CsvAndJson) {
  const DivergenceScan scan = divergence_scan(2, harmonic(2));
  const std::string csv = scan_to_csv(scan);
  EXPECT_NE(csv.find("k,n,z_k_re,z_k_im,target_re,target_im,q_abs,error\n2,2,0.25,0,0.25,0,0,inf\n"),
            std::string::npos);
  const Json j = scan_to_json(scan);
  EXPECT_EQ(j["rows"][0]["entries"][0]["error"], std::numeric_limits<double>::infinity());
  EXPECT_NE(dump_json(j).find("\"error\": \"inf\""), std::string::npos);
}
