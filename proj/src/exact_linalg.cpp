#include "padelab/exact_linalg.hpp"

#include <cmath>
#include <limits>

#include <mpfr.h>

#include "padelab/errors.hpp"

namespace padelab {

bool RationalMatrix::is_real() const {
  for (const auto& v : data_) {
    if (!v.is_real()) return false;
  }
  return true;
}

Eigen::MatrixXcd RationalMatrix::to_complex() const {
  Eigen::MatrixXcd out(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols_));
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = (*this)(i, j).to_complex();
    }
  }
  return out;
}

std::vector<QComplex> RationalMatrix::apply(const std::vector<QComplex>& v) const {
  if (v.size() != cols_) throw InvalidParameter("matrix-vector size mismatch");
  std::vector<QComplex> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
  }
  return out;
}

namespace {

// Gaussian integer with exact division.
struct GaussInt {
  mpz_class re{0};
  mpz_class im{0};

  GaussInt() = default;
  GaussInt(mpz_class r, mpz_class i = 0) : re(std::move(r)), im(std::move(i)) {}  // NOLINT

  friend GaussInt operator+(const GaussInt& a, const GaussInt& b) { return {a.re + b.re, a.im + b.im}; }
  friend GaussInt operator-(const GaussInt& a, const GaussInt& b) { return {a.re - b.re, a.im - b.im}; }
  friend GaussInt operator-(const GaussInt& a) { return {-a.re, -a.im}; }
  friend GaussInt operator*(const GaussInt& a, const GaussInt& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
};

bool is_zero(const mpz_class& a) { return sgn(a) == 0; }
bool is_zero(const GaussInt& a) { return sgn(a.re) == 0 && sgn(a.im) == 0; }

mpz_class divexact(const mpz_class& a, const mpz_class& b) {
  mpz_class q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

GaussInt divexact(const GaussInt& a, const GaussInt& b) {
  const mpz_class n = b.re * b.re + b.im * b.im;
  const mpz_class re = a.re * b.re + a.im * b.im;
  const mpz_class im = a.im * b.re - a.re * b.im;
  return {divexact(re, n), divexact(im, n)};
}

GaussInt conj(const GaussInt& a) { return {a.re, -a.im}; }
mpz_class conj(const mpz_class& a) { return a; }

QComplex to_q(const mpz_class& a) { return QComplex(mpq_class(a)); }
QComplex to_q(const GaussInt& a) { return QComplex(mpq_class(a.re), mpq_class(a.im)); }

template <class R>
R from_scaled(const QComplex& v, const mpz_class& scale);

template <>
mpz_class from_scaled<mpz_class>(const QComplex& v, const mpz_class& scale) {
  const mpq_class s = v.real() * scale;
  return s.get_num();
}

template <>
GaussInt from_scaled<GaussInt>(const QComplex& v, const mpz_class& scale) {
  const mpq_class re = v.real() * scale;
  const mpq_class im = v.imag() * scale;
  return {re.get_num(), im.get_num()};
}

void lcm_in(mpz_class& acc, const QComplex& v) {
  mpz_lcm(acc.get_mpz_t(), acc.get_mpz_t(), v.real().get_den_mpz_t());
  mpz_lcm(acc.get_mpz_t(), acc.get_mpz_t(), v.imag().get_den_mpz_t());
}

template <class R>
using RingMatrix = std::vector<std::vector<R>>;

// Each row multiplied by the lcm of its denominators.
template <class R>
RingMatrix<R> integer_rows(const RationalMatrix& m) {
  RingMatrix<R> a(m.rows(), std::vector<R>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    mpz_class scale = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) lcm_in(scale, m(i, j));
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = from_scaled<R>(m(i, j), scale);
  }
  return a;
}

// Fraction-free row echelon form in place; returns the pivot columns.
template <class R>
std::vector<std::size_t> bareiss_echelon(RingMatrix<R>& a, std::size_t cols) {
  const std::size_t rows = a.size();
  std::vector<std::size_t> pivots;
  R prev = R(mpz_class(1));
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && is_zero(a[p][c])) ++p;
    if (p == rows) continue;
    std::swap(a[r], a[p]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        a[i][j] = divexact(a[r][c] * a[i][j] - a[i][c] * a[r][j], prev);
      }
      a[i][c] = R(mpz_class(0));
    }
    prev = a[r][c];
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class R>
ExactNullspace nullspace_in_ring(const RationalMatrix& m) {
  RingMatrix<R> a = integer_rows<R>(m);
  const std::size_t cols = m.cols();
  const std::vector<std::size_t> pivots = bareiss_echelon(a, cols);
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : pivots) is_pivot[c] = true;

  ExactNullspace out;
  out.rank = pivots.size();
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<QComplex> x(cols);
    x[free] = QComplex(1);
    for (std::size_t r = pivots.size(); r-- > 0;) {
      const std::size_t pc = pivots[r];
      QComplex acc;
      for (std::size_t j = pc + 1; j < cols; ++j) {
        if (!x[j].is_zero() && !is_zero(a[r][j])) acc += to_q(a[r][j]) * x[j];
      }
      x[pc] = -acc / to_q(a[r][pc]);
    }
    out.basis.push_back(std::move(x));
  }
  return out;
}

}  // namespace

ExactNullspace exact_nullspace_basis(const RationalMatrix& m) {
  if (m.rows() > kExactNullspaceCap) {
    throw UnsupportedInput("exact nullspace limited to " + std::to_string(kExactNullspaceCap) +
                           " rows, got " + std::to_string(m.rows()));
  }
  return m.is_real() ? nullspace_in_ring<mpz_class>(m) : nullspace_in_ring<GaussInt>(m);
}

std::vector<QComplex> exact_nullspace(const RationalMatrix& m) {
  ExactNullspace ns = exact_nullspace_basis(m);
  if (ns.basis.size() != 1) throw RankDeficiency(ns.rank, std::move(ns.basis));
  std::vector<QComplex> v = std::move(ns.basis.front());
  for (const auto& x : v) {
    if (!x.is_zero()) {
      const QComplex lead = x;
      for (auto& y : v) y /= lead;
      break;
    }
  }
  return v;
}

// ---------------------------------------------------------------------------

namespace {

class BigFloat {
public:
  static constexpr mpfr_prec_t kPrecision = 320;

  BigFloat() { mpfr_init2(v_, kPrecision); mpfr_set_zero(v_, 1); }
  explicit BigFloat(const mpz_class& z) { mpfr_init2(v_, kPrecision); mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN); }
  BigFloat(const BigFloat& o) { mpfr_init2(v_, kPrecision); mpfr_set(v_, o.v_, MPFR_RNDN); }
  BigFloat& operator=(const BigFloat& o) { mpfr_set(v_, o.v_, MPFR_RNDN); return *this; }
  ~BigFloat() { mpfr_clear(v_); }

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b) { BigFloat r; mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b) { BigFloat r; mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b) { BigFloat r; mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b) { BigFloat r; mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  BigFloat abs() const { BigFloat r; mpfr_abs(r.v_, v_, MPFR_RNDN); return r; }
  BigFloat sqrt() const { BigFloat r; mpfr_sqrt(r.v_, v_, MPFR_RNDN); return r; }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  // |this| <= 2^exp2 * |ref|
  bool negligible_against(const BigFloat& ref, long exp2) const {
    if (is_zero()) return true;
    if (ref.is_zero()) return false;
    return mpfr_get_exp(v_) <= mpfr_get_exp(ref.v_) + exp2;
  }

private:
  mpfr_t v_;
};

// Largest root of a real-rooted polynomial (coefficients ascending) by
// Newton's method started at an upper bound; the iterates decrease
// monotonically to the root.
BigFloat largest_real_root(const std::vector<BigFloat>& coeffs, BigFloat x) {
  const std::size_t deg = coeffs.size() - 1;
  for (int iter = 0; iter < 100000; ++iter) {
    BigFloat p = coeffs[deg];
    BigFloat dp;
    for (std::size_t i = deg; i-- > 0;) {
      dp = dp * x + p;
      p = p * x + coeffs[i];
    }
    if (p.is_zero() || dp.is_zero()) return x;
    const BigFloat step = p / dp;
    // From above the exact steps are positive; a non-positive step means
    // rounding noise in p dominates and x is as good as it gets.
    if (step.sign() <= 0) return x;
    x = x - step;
    if (step.negligible_against(x, -(BigFloat::kPrecision - 24))) return x;
  }
  throw ConvergenceError("characteristic polynomial root iteration did not converge", 0.0);
}

template <class R>
std::vector<mpz_class> gram_char_poly(const RationalMatrix& m, const mpz_class& scale) {
  const std::size_t n = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::vector<R>> a(n, std::vector<R>(cols));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = from_scaled<R>(m(i, j), scale);
  }
  std::vector<std::vector<R>> g(n, std::vector<R>(n, R(mpz_class(0))));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      R acc = R(mpz_class(0));
      for (std::size_t l = 0; l < cols; ++l) acc = acc + a[i][l] * conj(a[j][l]);
      g[i][j] = acc;
    }
  }

  // Faddeev-LeVerrier; every division by k is exact for integer matrices.
  std::vector<R> c(n + 1, R(mpz_class(0)));
  c[n] = R(mpz_class(1));
  std::vector<std::vector<R>> mk(n, std::vector<R>(n, R(mpz_class(0))));
  for (std::size_t i = 0; i < n; ++i) mk[i][i] = R(mpz_class(1));
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<std::vector<R>> am(n, std::vector<R>(n, R(mpz_class(0))));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t l = 0; l < n; ++l) {
        if (is_zero(g[i][l])) continue;
        for (std::size_t j = 0; j < n; ++j) am[i][j] = am[i][j] + g[i][l] * mk[l][j];
      }
    }
    R trace = R(mpz_class(0));
    for (std::size_t i = 0; i < n; ++i) trace = trace + am[i][i];
    c[n - k] = divexact(-trace, R(mpz_class(static_cast<unsigned long>(k))));
    for (std::size_t i = 0; i < n; ++i) am[i][i] = am[i][i] + c[n - k];
    mk = std::move(am);
  }

  std::vector<mpz_class> out;
  out.reserve(n + 1);
  for (const auto& v : c) {
    const QComplex q = to_q(v);
    if (!q.is_real()) throw NumericalError("Gram characteristic polynomial is not real");
    out.push_back(q.real().get_num());
  }
  return out;
}

}  // namespace

SigmaRatioOracle exact_sigma_ratio_bounds(const RationalMatrix& m) {
  if (m.rows() == 0 || m.rows() > kCharPolyCap) {
    throw UnsupportedInput("characteristic-polynomial oracle supports 1.." +
                           std::to_string(kCharPolyCap) + " rows, got " + std::to_string(m.rows()));
  }
  mpz_class scale = 1;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) lcm_in(scale, m(i, j));
  }
  // Coefficients (ascending) of the characteristic polynomial of
  // (scale M)(scale M)^H; eigenvalues are scale^2 times those of M M^H.
  const std::vector<mpz_class> scaled =
      m.is_real() ? gram_char_poly<mpz_class>(m, scale) : gram_char_poly<GaussInt>(m, scale);
  const std::size_t n = m.rows();

  SigmaRatioOracle out;
  const mpz_class s2 = scale * scale;
  mpz_class power = 1;
  std::vector<mpq_class> ascending(n + 1);
  for (std::size_t i = n + 1; i-- > 0;) {
    ascending[i] = mpq_class(scaled[i], power);
    ascending[i].canonicalize();
    power *= s2;
  }
  out.gram_char_poly.assign(ascending.rbegin(), ascending.rend());

  std::vector<BigFloat> p;
  for (const auto& v : scaled) p.emplace_back(v);
  const BigFloat lambda_max = largest_real_root(p, BigFloat(mpz_class(-scaled[n - 1])));
  const BigFloat s2f{s2};
  out.sigma_max = (lambda_max / s2f).sqrt().to_double();
  if (sgn(scaled[0]) == 0) {
    out.sigma_min = 0.0;
    out.float_ratio = std::numeric_limits<double>::infinity();
    return out;
  }
  // Reversed polynomial: roots 1/lambda_i, bounded above by -c_1/c_0.
  std::vector<BigFloat> rev(p.rbegin(), p.rend());
  const BigFloat mu_max = largest_real_root(rev, BigFloat(mpz_class(-scaled[1])) / p[0]);
  const BigFloat lambda_min = BigFloat(mpz_class(1)) / mu_max;
  out.sigma_min = (lambda_min / s2f).sqrt().to_double();
  out.float_ratio = (lambda_max * mu_max).sqrt().to_double();
  return out;
}

}  // namespace padelab
