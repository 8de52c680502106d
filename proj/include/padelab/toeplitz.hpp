#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "padelab/exact_linalg.hpp"
#include "padelab/series.hpp"

namespace padelab {

// Index convention: storage is 0-based. The 1-based entry (i, j) of B_n,
// c_{n+i-j+1}, is stored at (i-1, j-1), i.e. B(i, j) = c_{n+i-j+1} for
// 0-based i, j; A(i, j) = c_{i-j} for i >= j.

/// Matrices of the linear system B_n b = 0, a = A_n b.
struct ToeplitzPair {
  std::size_t n = 0;
  Eigen::MatrixXcd A;  // (n+1) x (n+1), lower triangular
  Eigen::MatrixXcd B;  // n x (n+1)
  std::optional<RationalMatrix> A_exact;
  std::optional<RationalMatrix> B_exact;

  bool exact() const { return B_exact.has_value(); }
};

/// Requires c_0 ... c_{2n}; exact matrices are built when the series is exact.
ToeplitzPair build_pair(const PowerSeries& s, std::size_t n);

/// n x (n+1) window of B_n alone, for callers that do not need A_n.
Eigen::MatrixXcd build_b(const PowerSeries& s, std::size_t n);
RationalMatrix build_b_exact(const PowerSeries& s, std::size_t n);

/// 0/1 matrices of the decomposition B_{n_k} = 16^k U + V (1-based):
/// u_{n,1} = u_{i,i+2} = 1; (v_j)_{i,i+j+1} = 1 for i <= n-j;
/// (w_j)_{i,i-j+1} = 1 for j <= i <= n.
Eigen::MatrixXd shift_u(std::size_t n);
Eigen::MatrixXd shift_v(std::size_t n, std::size_t j);
Eigen::MatrixXd shift_w(std::size_t n, std::size_t j);

enum class ShiftKind { v, w };

struct ShiftTerm {
  ShiftKind kind;
  std::size_t j;            // shift index; v with j = 0 is the c_n term
  std::size_t coeff_index;  // m in c_m
  Number coefficient;
};

/// V = c_n V_0 + sum_{j=2}^{n-1} c_{n-j} V_j + sum_{j=1}^{n-1} c_{n+j} W_j.
struct StructuredDecomposition {
  int k = 0;
  std::size_t n = 0;
  Number scale;  // 16^k
  Eigen::MatrixXd U;
  std::vector<ShiftTerm> terms;
  double S_bound = 0.0;  // sum_{j=1}^{n-2} |c_j| + sum_{j=n}^{2n-1} |c_j|

  Eigen::MatrixXd shift(const ShiftTerm& t) const;
  Eigen::MatrixXcd V() const;
  Eigen::MatrixXcd reconstruct() const;
  /// Exact 16^k U + V; requires exact coefficients.
  RationalMatrix reconstruct_exact() const;
};

/// Requires a series from the counterexample family with 2 <= k <= k_max.
StructuredDecomposition build_structured(const PowerSeries& s, int k);

struct SumBounds {
  double tail_sum = 0.0;  // sum_{j=n}^{2n-1} |c_j|, must be < 16^k / 2
  double head_sum = 0.0;  // sum_{j=1}^{n-2} |c_j|, must be < 16^k / 6
  double S = 0.0;
  double S_limit = 0.0;  // 2 16^k / 3
  bool tail_ok = false;
  bool head_ok = false;
  bool S_ok = false;
  bool pass = false;
};

SumBounds check_sum_bounds(const PowerSeries& s, int k);

}  // namespace padelab
