#pragma once

#include <Eigen/Dense>

namespace padelab {

struct SvdOptions {
  int max_sweeps = 60;
};

/// Singular values and vectors of an r x c matrix from one-sided Jacobi
/// rotations applied to its columns.
struct SingularSpectrum {
  Eigen::VectorXd sigmas;        // min(r, c) values, descending
  Eigen::MatrixXcd left;         // r x min(r, c), columns u_i (zero where sigma_i = 0)
  Eigen::MatrixXcd right;        // c x c unitary; column i pairs with sigma_i
  Eigen::VectorXcd null_vector;  // last column of `right`, unit norm, phase fixed
  double ratio = 1.0;            // sigma_1 / sigma_min, +inf when sigma_min = 0
  double null_residual = 0.0;    // ||M v|| / sigma_1 for v = null_vector
  int sweeps = 0;

  /// sum_i sigma_i u_i v_i^H
  Eigen::MatrixXcd reconstruct() const;
};

/// Deterministic: fixed cyclic pair order, ties in the ordering broken by
/// column index, and the first non-negligible component of null_vector is
/// made real and positive. Throws InvalidParameter on empty or non-finite
/// input and ConvergenceError after `max_sweeps` sweeps.
SingularSpectrum svd(const Eigen::MatrixXcd& m, const SvdOptions& options = {});

double spectral_norm(const Eigen::MatrixXcd& m);

struct PerturbationCheck {
  double max_shift = 0.0;   // max_i |sigma_i(M + Delta) - sigma_i(M)|
  double norm_delta = 0.0;  // ||Delta||_2
  bool pass = false;        // max_shift <= norm_delta + 1e-10 sigma_1(M)
};

PerturbationCheck singular_value_perturbation_check(const Eigen::MatrixXcd& m,
                                                    const Eigen::MatrixXcd& delta);

}  // namespace padelab
