#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "padelab/json_io.hpp"
#include "padelab/number.hpp"
#include "padelab/series.hpp"

namespace padelab {

enum class PadeMode { classical, robust };

std::string to_string(PadeMode mode);

/// One pass of the robust degree-reduction loop.
struct ReductionStep {
  std::size_t nu = 0;          // size of B_nu examined
  std::size_t deficiency = 0;  // singular values <= tol_rel * sigma_1
  double sigma_1 = 0.0;
};

struct PadeDiagnostics {
  std::vector<double> sigmas;  // spectrum of the final B
  double ratio = 1.0;          // sigma_1 / sigma_min of the final B
  double threshold_used = 0.0;
  std::vector<ReductionStep> reductions;
  bool b0_degenerate = false;
  bool fully_reduced = false;
  bool exact_oracle = false;      // denominator from exact elimination
  std::size_t nullity = 1;        // numerical nullspace dimension of B_n (classical)
  double null_residual = 0.0;     // ||B b|| / sigma_1 before normalization
};

/// p(z)/q(z) with p = sum a_j z^j, q = sum b_j z^j, trailing coefficients trimmed.
struct PadeApproximant {
  std::vector<Complex> a;
  std::vector<Complex> b;
  std::optional<std::vector<QComplex>> a_exact;
  std::optional<std::vector<QComplex>> b_exact;
  std::size_t requested_n = 0;
  std::size_t numerator_order = 0;  // a = [f q] truncated at this degree, before trimming
  PadeMode mode = PadeMode::classical;
  PadeDiagnostics diagnostics;

  std::pair<std::size_t, std::size_t> effective_degrees() const {
    return {a.size() - 1, b.size() - 1};
  }
  bool exact() const { return b_exact.has_value(); }

  Complex numerator(Complex z) const;
  Complex denominator(Complex z) const;
  Complex operator()(Complex z) const { return numerator(z) / denominator(z); }
};

struct PadeOptions {
  double rank_tol = 1e-12;  // sigma_i <= rank_tol * sigma_1 counts as zero (classical)
  double trim_tol = 1e-12;  // trailing |coefficient| <= trim_tol * max (classical, float)
  double b0_tol = 1e-8;     // |b_0| <= b0_tol * ||b||_2 is degenerate
};

/// Solves B_n b = 0 and sets a = A_n b. With exact = true and an exact series
/// of degree n <= kExactNullspaceCap the denominator comes from exact
/// elimination (NonUniqueDenominator when the nullspace is larger than one);
/// otherwise from the SVD, taking the minimal-degree null vector when the
/// numerical nullspace has dimension > 1.
PadeApproximant classical_pade(const PowerSeries& s, std::size_t n, bool exact = false,
                               const PadeOptions& options = {});

/// SVD-based robust variant: starting from nu = n, drop nu by the number of
/// singular values of B_nu at or below tol_rel * sigma_1 until none are,
/// then solve as in the classical mode and trim at tol_rel.
PadeApproximant robust_pade(const PowerSeries& s, std::size_t n, double tol_rel,
                            const PadeOptions& options = {});

/// Coefficients of z^0 ... z^{m+nu} of a(z) - f(z) b(z).
std::vector<Complex> order_residual(const PowerSeries& s, const PadeApproximant& r);
std::vector<QComplex> order_residual_exact(const PowerSeries& s, const PadeApproximant& r);

Json approximant_to_json(const PadeApproximant& r);
PadeApproximant approximant_from_json(const Json& doc);

}  // namespace padelab
