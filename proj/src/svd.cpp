#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "padelab/errors.hpp"
#include "padelab/linalg.hpp"
#include "padelab/number.hpp"

namespace padelab {

Eigen::MatrixXcd SingularSpectrum::reconstruct() const {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(left.rows(), right.rows());
  for (Eigen::Index i = 0; i < sigmas.size(); ++i) {
    out += sigmas(i) * left.col(i) * right.col(i).adjoint();
  }
  return out;
}

SingularSpectrum svd(const Eigen::MatrixXcd& m, const SvdOptions& options) {
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  if (rows == 0 || cols == 0) throw InvalidParameter("svd of an empty matrix");
  if (!m.allFinite()) throw InvalidParameter("svd input has non-finite entries");

  Eigen::MatrixXcd w = m;
  Eigen::MatrixXcd v = Eigen::MatrixXcd::Identity(cols, cols);
  const double eps = std::numeric_limits<double>::epsilon();
  const double tol = static_cast<double>(std::max<Eigen::Index>(rows, 4)) * eps;

  int sweep = 0;
  double worst = 0.0;
  for (;; ++sweep) {
    if (sweep == options.max_sweeps) {
      throw ConvergenceError("Jacobi SVD did not converge in " + std::to_string(sweep) +
                                 " sweeps (relative coupling " + std::to_string(worst) + ")",
                             worst);
    }
    bool rotated = false;
    worst = 0.0;
    for (Eigen::Index p = 0; p + 1 < cols; ++p) {
      for (Eigen::Index q = p + 1; q < cols; ++q) {
        const double alpha = w.col(p).squaredNorm();
        const double beta = w.col(q).squaredNorm();
        if (alpha == 0.0 || beta == 0.0) continue;
        const Complex gamma = w.col(p).dot(w.col(q));
        const double g = std::abs(gamma);
        const double coupling = g / (std::sqrt(alpha) * std::sqrt(beta));
        worst = std::max(worst, coupling);
        if (coupling <= tol) continue;
        rotated = true;

        const Complex phase = std::polar(1.0, -std::arg(gamma));
        const double zeta = (beta - alpha) / (2.0 * g);
        double t;
        if (std::abs(zeta) > 1e150) {
          t = 0.5 / zeta;
        } else {
          t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;

        const Eigen::VectorXcd wp = w.col(p);
        const Eigen::VectorXcd wq = phase * w.col(q);
        w.col(p) = c * wp - s * wq;
        w.col(q) = s * wp + c * wq;
        const Eigen::VectorXcd vp = v.col(p);
        const Eigen::VectorXcd vq = phase * v.col(q);
        v.col(p) = c * vp - s * vq;
        v.col(q) = s * vp + c * vq;
      }
    }
    if (!rotated) break;
  }

  std::vector<double> norms(static_cast<std::size_t>(cols));
  for (Eigen::Index j = 0; j < cols; ++j) norms[static_cast<std::size_t>(j)] = w.col(j).norm();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(cols));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return norms[static_cast<std::size_t>(a)] > norms[static_cast<std::size_t>(b)];
  });

  const Eigen::Index r = std::min(rows, cols);
  SingularSpectrum out;
  out.sweeps = sweep;
  out.sigmas.resize(r);
  out.left = Eigen::MatrixXcd::Zero(rows, r);
  out.right.resize(cols, cols);
  for (Eigen::Index i = 0; i < cols; ++i) {
    const Eigen::Index j = order[static_cast<std::size_t>(i)];
    out.right.col(i) = v.col(j);
    if (i < r) {
      const double sigma = norms[static_cast<std::size_t>(j)];
      out.sigmas(i) = sigma;
      if (sigma > 0.0) out.left.col(i) = w.col(j) / sigma;
    }
  }

  Eigen::VectorXcd nv = out.right.col(cols - 1);
  nv.normalize();
  const double big = nv.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < nv.size(); ++i) {
    const double mag = std::abs(nv(i));
    if (mag > 1e-10 * big) {
      const Complex phase = std::conj(nv(i)) / mag;
      nv *= phase;
      nv(i) = mag;
      if (cols - 1 < r) out.left.col(cols - 1) *= phase;
      break;
    }
  }
  out.right.col(cols - 1) = nv;
  out.null_vector = nv;

  const double s1 = out.sigmas(0);
  const double smin = out.sigmas(r - 1);
  out.ratio = smin > 0.0 ? s1 / smin : std::numeric_limits<double>::infinity();
  out.null_residual = s1 > 0.0 ? (m * nv).norm() / s1 : 0.0;
  return out;
}

double spectral_norm(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  return svd(m).sigmas(0);
}

PerturbationCheck singular_value_perturbation_check(const Eigen::MatrixXcd& m,
                                                    const Eigen::MatrixXcd& delta) {
  if (m.rows() != delta.rows() || m.cols() != delta.cols()) {
    throw InvalidParameter("perturbation check: shape mismatch");
  }
  const SingularSpectrum base = svd(m);
  const SingularSpectrum moved = svd(m + delta);
  PerturbationCheck out;
  out.max_shift = (moved.sigmas - base.sigmas).cwiseAbs().maxCoeff();
  out.norm_delta = spectral_norm(delta);
  out.pass = out.max_shift <= out.norm_delta + 1e-10 * base.sigmas(0);
  return out;
}

}  // namespace padelab
