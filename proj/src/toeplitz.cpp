#include "padelab/toeplitz.hpp"

#include <cmath>

#include "padelab/errors.hpp"

namespace padelab {

namespace {

void require_coefficients(const PowerSeries& s, std::size_t n) {
  if (!s.provides(2 * n + 1)) {
    throw OutOfRange("degree " + std::to_string(n) + " needs coefficients c_0..c_" +
                     std::to_string(2 * n) + ", series has " +
                     std::to_string(s.known_len().value_or(0)));
  }
}

double magnitude(const PowerSeries& s, std::size_t j) {
  if (s.is_exact()) {
    const QComplex c = s.exact_coefficient(j);
    if (c.is_real()) return std::abs(to_double(c.real()));
  }
  return std::abs(s.coefficient(j));
}

}  // namespace

Eigen::MatrixXcd build_b(const PowerSeries& s, std::size_t n) {
  require_coefficients(s, n);
  const auto nn = static_cast<Eigen::Index>(n);
  Eigen::MatrixXcd b(nn, nn + 1);
  for (Eigen::Index i = 0; i < nn; ++i) {
    for (Eigen::Index j = 0; j <= nn; ++j) b(i, j) = s.coefficient(static_cast<std::size_t>(nn + i - j + 1));
  }
  return b;
}

RationalMatrix build_b_exact(const PowerSeries& s, std::size_t n) {
  require_coefficients(s, n);
  if (!s.is_exact()) throw UnsupportedInput("series has no exact coefficients");
  RationalMatrix b(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= n; ++j) b(i, j) = s.exact_coefficient(n + i + 1 - j);
  }
  return b;
}

ToeplitzPair build_pair(const PowerSeries& s, std::size_t n) {
  require_coefficients(s, n);
  ToeplitzPair pair;
  pair.n = n;
  const auto nn = static_cast<Eigen::Index>(n);
  pair.A = Eigen::MatrixXcd::Zero(nn + 1, nn + 1);
  for (Eigen::Index i = 0; i <= nn; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) pair.A(i, j) = s.coefficient(static_cast<std::size_t>(i - j));
  }
  pair.B = build_b(s, n);
  if (s.is_exact()) {
    RationalMatrix a(n + 1, n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
      for (std::size_t j = 0; j <= i; ++j) a(i, j) = s.exact_coefficient(i - j);
    }
    pair.A_exact = std::move(a);
    pair.B_exact = build_b_exact(s, n);
  }
  return pair;
}

// The shift builders take 1-based (i, j) from the definitions and store at
// (i-1, j-1).
Eigen::MatrixXd shift_u(std::size_t n) {
  const auto nn = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(nn, nn + 1);
  if (n == 0) return u;
  u(nn - 1, 0) = 1.0;
  for (Eigen::Index i = 1; i <= nn - 1; ++i) u(i - 1, i + 1) = 1.0;
  return u;
}

Eigen::MatrixXd shift_v(std::size_t n, std::size_t j) {
  const auto nn = static_cast<Eigen::Index>(n);
  const auto jj = static_cast<Eigen::Index>(j);
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(nn, nn + 1);
  for (Eigen::Index i = 1; i <= nn - jj; ++i) v(i - 1, i + jj) = 1.0;
  return v;
}

Eigen::MatrixXd shift_w(std::size_t n, std::size_t j) {
  const auto nn = static_cast<Eigen::Index>(n);
  const auto jj = static_cast<Eigen::Index>(j);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(nn, nn + 1);
  for (Eigen::Index i = std::max<Eigen::Index>(jj, 1); i <= nn; ++i) w(i - 1, i - jj) = 1.0;
  return w;
}

Eigen::MatrixXd StructuredDecomposition::shift(const ShiftTerm& t) const {
  return t.kind == ShiftKind::v ? shift_v(n, t.j) : shift_w(n, t.j);
}

Eigen::MatrixXcd StructuredDecomposition::V() const {
  const auto nn = static_cast<Eigen::Index>(n);
  Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(nn, nn + 1);
  for (const auto& t : terms) v += t.coefficient.value * shift(t).cast<Complex>();
  return v;
}

Eigen::MatrixXcd StructuredDecomposition::reconstruct() const {
  return scale.value * U.cast<Complex>() + V();
}

RationalMatrix StructuredDecomposition::reconstruct_exact() const {
  if (!scale.exact) throw UnsupportedInput("decomposition has no exact coefficients");
  RationalMatrix out(n, n + 1);
  auto add = [&](const Eigen::MatrixXd& pattern, const QComplex& c) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j <= n; ++j) {
        if (pattern(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) != 0.0) out(i, j) += c;
      }
    }
  };
  add(U, *scale.exact);
  for (const auto& t : terms) {
    if (!t.coefficient.exact) throw UnsupportedInput("decomposition has no exact coefficients");
    add(shift(t), *t.coefficient.exact);
  }
  return out;
}

namespace {

std::size_t require_structured(const PowerSeries& s, int k) {
  const SeriesMeta& meta = s.meta();
  if (meta.family != SeriesFamily::mascarenhas || !meta.poles) {
    throw UnsupportedInput("structured decomposition needs a counterexample-family series");
  }
  if (k < 2 || k > meta.k_max) {
    throw UnsupportedInput("block index " + std::to_string(k) + " outside 2.." +
                           std::to_string(meta.k_max));
  }
  const std::size_t n = mascarenhas_degree(k);
  require_coefficients(s, n);
  return n;
}

}  // namespace

StructuredDecomposition build_structured(const PowerSeries& s, int k) {
  const std::size_t n = require_structured(s, k);
  StructuredDecomposition d;
  d.k = k;
  d.n = n;
  mpz_class sixteen_k;
  mpz_ui_pow_ui(sixteen_k.get_mpz_t(), 16, static_cast<unsigned long>(k));
  d.scale = Number(QComplex(mpq_class(sixteen_k)));
  d.U = shift_u(n);
  d.terms.push_back({ShiftKind::v, 0, n, s.number(n)});
  for (std::size_t j = 2; j + 1 <= n; ++j) d.terms.push_back({ShiftKind::v, j, n - j, s.number(n - j)});
  for (std::size_t j = 1; j + 1 <= n; ++j) d.terms.push_back({ShiftKind::w, j, n + j, s.number(n + j)});
  const SumBounds sums = check_sum_bounds(s, k);
  d.S_bound = sums.S;
  return d;
}

SumBounds check_sum_bounds(const PowerSeries& s, int k) {
  const std::size_t n = require_structured(s, k);
  SumBounds out;
  for (std::size_t j = n; j + 1 <= 2 * n; ++j) out.tail_sum += magnitude(s, j);
  for (std::size_t j = 1; j + 2 <= n; ++j) out.head_sum += magnitude(s, j);
  const double sixteen_k = std::ldexp(1.0, 4 * k);
  out.S = out.head_sum + out.tail_sum;
  out.S_limit = 2.0 * sixteen_k / 3.0;
  out.tail_ok = out.tail_sum < sixteen_k / 2.0;
  out.head_ok = out.head_sum < sixteen_k / 6.0;
  out.S_ok = out.S < out.S_limit;
  out.pass = out.tail_ok && out.head_ok && out.S_ok;
  return out;
}

}  // namespace padelab
