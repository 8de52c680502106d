#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "padelab/json_io.hpp"
#include "padelab/pade.hpp"
#include "padelab/series.hpp"
#include "padelab/toeplitz.hpp"

namespace padelab {

/// Roots of sum_i c_i z^i (ascending coefficients) from the eigenvalues of
/// the companion matrix, refined by Newton steps. Highest-order zero
/// coefficients are ignored; a constant polynomial has no roots.
std::vector<Complex> polynomial_roots(const std::vector<Complex>& coeffs);

struct NumeratorAtPole {
  Complex value;
  double scale = 0.0;  // sum of term magnitudes; |value| / scale measures cancellation
};

/// p(pole) from the numerator coefficients: sum a_j pole^j.
NumeratorAtPole numerator_at_pole(const PadeApproximant& r, Complex pole);

/// p(pole) for p = [f q] truncated at degree m, using q = (z - pole) h:
/// p(pole) = -pole^{m+1} sum_i c_{m-i} h_i. Avoids the cancellation of the
/// direct sum when p(pole) is tiny compared to the coefficients of p.
NumeratorAtPole numerator_at_pole(const PowerSeries& s, const PadeApproximant& r, Complex pole);

struct PoleOptions {
  double delta_doublet = 1e-3;
  double tol_spurious = 1e-6;
};

struct PoleEntry {
  Complex location;
  double residue_magnitude = 0.0;      // |p(pole) / q'(pole)|
  double numerator_magnitude = 0.0;    // |p(pole)|
  double numerator_scale = 0.0;        // see NumeratorAtPole::scale
  double denominator_residual = 0.0;   // |q(pole)| / ||b||_2
  bool spurious = false;
};

struct Doublet {
  Complex pole;
  Complex zero;
  double separation = 0.0;
};

struct PoleReport {
  std::vector<PoleEntry> poles;
  std::vector<Complex> zeros;
  std::vector<Doublet> doublets;
  std::vector<Complex> spurious;  // subset of the pole locations
};

/// A pole is spurious when |pole| < radius_hint and
/// |p(pole)| > tol_spurious * scale. With a series the numerator value comes
/// from the deflated form above, otherwise from the coefficients of p.
PoleReport find_poles(const PadeApproximant& r, double radius_hint, const PoleOptions& options = {},
                      const PowerSeries* series = nullptr);

Json pole_report_to_json(const PoleReport& report);

// ---------------------------------------------------------------------------

/// Per-block check of the counterexample claims at n = n_k = 2^k - 2.
struct TheoremReport {
  int k = 0;
  std::size_t n = 0;
  Number z_k;
  bool exact = false;  // exact elimination produced the denominator

  CoefficientBoundReport coeff_bound;  // 0 < |c_j| <= (j+3)^4, 2 <= j <= 2n
  bool coeff_bound_ok = false;

  double q_match = 0.0;  // max_i |b_i - (1, -1/z_k, 0, ...)_i|
  double q_tol = 0.0;
  bool q_match_exact_zero = false;
  bool q_ok = false;

  Complex p_at_zk;      // exact mode: p(z_k); float mode: p at the computed pole
  Complex p_expected;   // 16^k z_k^{2n}
  std::optional<QComplex> p_at_zk_exact;
  std::optional<QComplex> p_expected_exact;
  double p_rel_error = 0.0;
  bool p_ok = false;

  double sigma_1 = 0.0;
  double sigma_n = 0.0;
  double sigma_ratio = 0.0;
  bool sigma_ratio_pass = false;
  std::optional<double> oracle_ratio;  // characteristic-polynomial oracle, n <= 16
  bool oracle_ok = true;

  SumBounds sums;
  double S_value = 0.0;
  double S_limit = 0.0;
  double sandwich_lower = 0.0;  // 16^k - S
  double sandwich_upper = 0.0;  // 16^k + S
  bool sandwich_ok = false;

  bool pass = false;

  /// Recomputes every flag from the stored numbers; true when they agree.
  bool audit() const;
};

inline constexpr double kSandwichSlack = 1e-10;
inline constexpr double kOracleAgreement = 1e-8;

/// Builds the counterexample through block k and checks every claim.
/// Requires k >= 2 and 0 < |z_j| < 1/3 for 2 <= j <= k.
TheoremReport verify_theorem(int k, const PoleSequence& poles, bool exact);

Json theorem_report_to_json(const TheoremReport& report);
/// Header: k,n,sigma1,sigman,ratio,S,S_limit,q_match,p_at_zk_re,p_at_zk_im,pass
std::string theorem_reports_to_csv(const std::vector<TheoremReport>& reports);

// ---------------------------------------------------------------------------

struct ScanEntry {
  Number target;
  double q_abs = 0.0;  // |q_{n_k}(target)|
  double error = 0.0;  // |f(target) - r(target)|, +inf at a pole hit
  bool pole_hit = false;
};

struct ScanRow {
  int k = 0;
  std::size_t n = 0;
  Number z_k;
  bool exact = false;
  std::vector<ScanEntry> entries;
};

struct ScanOptions {
  bool exact = true;
  std::vector<Number> extra_points;
};

struct DivergenceScan {
  int k_max = 0;
  std::vector<Number> targets;
  std::vector<ScanRow> rows;
  std::string note;
};

/// For k = 2..k_max evaluates the (n_k, n_k) approximant of the series
/// truncated at block k_max at every distinct pole value and extra point.
/// f is the truncated series, so errors compare against that polynomial.
DivergenceScan divergence_scan(int k_max, const PoleSequence& poles, const ScanOptions& options = {});

Json scan_to_json(const DivergenceScan& scan);
/// Long format, one line per (k, target):
/// k,n,z_k_re,z_k_im,target_re,target_im,q_abs,error
std::string scan_to_csv(const DivergenceScan& scan);

/// %.17g
std::string format_double(double v);

}  // namespace padelab
