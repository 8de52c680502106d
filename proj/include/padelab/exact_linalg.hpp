#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "padelab/number.hpp"

namespace padelab {

/// Dense row-major matrix of exact complex rationals.
class RationalMatrix {
public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  QComplex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const QComplex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_real() const;
  Eigen::MatrixXcd to_complex() const;
  std::vector<QComplex> apply(const std::vector<QComplex>& v) const;

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<QComplex> data_;
};

/// Row limit of the exact nullspace routine.
inline constexpr std::size_t kExactNullspaceCap = 64;
/// Row limit of the characteristic-polynomial oracle.
inline constexpr std::size_t kCharPolyCap = 16;

struct ExactNullspace {
  std::size_t rank = 0;
  std::vector<std::vector<QComplex>> basis;  // one vector per free column
};

/// Rank and nullspace basis by fraction-free (Bareiss) elimination over the
/// integers (or Gaussian integers) after clearing row denominators.
ExactNullspace exact_nullspace_basis(const RationalMatrix& m);

/// The unique (up to scale) nullspace vector, normalized so its first nonzero
/// entry is 1. Throws RankDeficiency when the nullspace is not one
/// dimensional and UnsupportedInput above kExactNullspaceCap rows.
std::vector<QComplex> exact_nullspace(const RationalMatrix& m);

struct SigmaRatioOracle {
  std::vector<mpq_class> gram_char_poly;  // monic, highest degree first
  double sigma_max = 0.0;
  double sigma_min = 0.0;
  double float_ratio = 0.0;  // sigma_max / sigma_min, +inf when sigma_min = 0
};

/// Exact characteristic polynomial of M M^H and the extreme singular values
/// from its roots, computed with 320-bit Newton iterations. Rows <= kCharPolyCap.
SigmaRatioOracle exact_sigma_ratio_bounds(const RationalMatrix& m);

}  // namespace padelab
