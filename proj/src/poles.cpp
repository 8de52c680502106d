#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include <Eigen/Eigenvalues>

#include "padelab/analysis.hpp"
#include "padelab/errors.hpp"

namespace padelab {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

Complex horner(const std::vector<Complex>& c, Complex z) {
  Complex acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Complex horner_derivative(const std::vector<Complex>& c, Complex z) {
  Complex acc = 0.0;
  for (std::size_t i = c.size(); i-- > 1;) acc = acc * z + static_cast<double>(i) * c[i];
  return acc;
}

}  // namespace

std::vector<Complex> polynomial_roots(const std::vector<Complex>& coeffs) {
  std::size_t deg = coeffs.size();
  while (deg > 0 && coeffs[deg - 1] == 0.0) --deg;
  if (deg <= 1) return {};
  --deg;
  const std::vector<Complex> c(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(deg + 1));

  std::vector<Complex> roots;
  if (deg == 1) {
    roots.push_back(-c[0] / c[1]);
  } else {
    const auto d = static_cast<Eigen::Index>(deg);
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(d, d);
    for (Eigen::Index i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
    for (Eigen::Index i = 0; i < d; ++i) companion(i, d - 1) = -c[static_cast<std::size_t>(i)] / c[deg];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    if (solver.info() != Eigen::Success) throw NumericalError("companion eigenvalue solver failed");
    for (Eigen::Index i = 0; i < d; ++i) roots.push_back(solver.eigenvalues()(i));
  }

  // Newton refinement, kept only while it reduces |q|.
  for (auto& z : roots) {
    for (int it = 0; it < 3; ++it) {
      const Complex q = horner(c, z);
      const Complex dq = horner_derivative(c, z);
      if (q == 0.0 || dq == 0.0) break;
      const Complex next = z - q / dq;
      if (std::abs(horner(c, next)) >= std::abs(q)) break;
      z = next;
    }
  }
  std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
    if (std::abs(a) != std::abs(b)) return std::abs(a) < std::abs(b);
    return std::arg(a) < std::arg(b);
  });
  return roots;
}

NumeratorAtPole numerator_at_pole(const PadeApproximant& r, Complex pole) {
  NumeratorAtPole out;
  out.value = horner(r.a, pole);
  double zj = 1.0;
  for (const auto& a : r.a) {
    out.scale += std::abs(a) * zj;
    zj *= std::abs(pole);
  }
  return out;
}

NumeratorAtPole numerator_at_pole(const PowerSeries& s, const PadeApproximant& r, Complex pole) {
  const std::size_t nu = r.b.size() - 1;
  if (nu == 0) return numerator_at_pole(r, pole);
  // q = (z - pole) h by synthetic division from the top coefficient.
  std::vector<Complex> h(nu);
  h[nu - 1] = r.b[nu];
  for (std::size_t i = nu - 1; i >= 1; --i) h[i - 1] = r.b[i] + pole * h[i];

  const std::size_t m = r.numerator_order;
  if (!s.provides(m + 1)) throw OutOfRange("numerator evaluation needs c_0..c_" + std::to_string(m));
  Complex g = 0.0;
  double g_scale = 0.0;
  for (std::size_t i = 0; i <= std::min(m, nu - 1); ++i) {
    const Complex term = s.coefficient(m - i) * h[i];
    g += term;
    g_scale += std::abs(term);
  }
  const Complex lead = std::pow(pole, static_cast<double>(m + 1));
  return {-lead * g, std::abs(lead) * g_scale};
}

PoleReport find_poles(const PadeApproximant& r, double radius_hint, const PoleOptions& options,
                      const PowerSeries* series) {
  PoleReport report;
  report.zeros = polynomial_roots(r.a);
  double bnorm = 0.0;
  for (const auto& x : r.b) bnorm += std::norm(x);
  bnorm = std::sqrt(bnorm);

  for (const Complex& z : polynomial_roots(r.b)) {
    PoleEntry e;
    e.location = z;
    e.denominator_residual = std::abs(horner(r.b, z)) / bnorm;
    const NumeratorAtPole p = series ? numerator_at_pole(*series, r, z) : numerator_at_pole(r, z);
    e.numerator_magnitude = std::abs(p.value);
    e.numerator_scale = p.scale;
    const double dq = std::abs(horner_derivative(r.b, z));
    e.residue_magnitude = dq > 0.0 ? e.numerator_magnitude / dq : std::numeric_limits<double>::infinity();
    e.spurious = std::abs(z) < radius_hint && e.numerator_magnitude > options.tol_spurious * p.scale;
    if (e.spurious) report.spurious.push_back(z);

    const Complex* nearest = nullptr;
    for (const auto& zero : report.zeros) {
      if (!nearest || std::abs(zero - z) < std::abs(*nearest - z)) nearest = &zero;
    }
    if (nearest && std::abs(*nearest - z) < options.delta_doublet) {
      report.doublets.push_back({z, *nearest, std::abs(*nearest - z)});
    }
    report.poles.push_back(e);
  }
  return report;
}

Json pole_report_to_json(const PoleReport& report) {
  Json poles = Json::array();
  for (const auto& p : report.poles) {
    poles.push_back(Json{{"location", number_to_json(p.location)},
                         {"residue_magnitude", p.residue_magnitude},
                         {"numerator_magnitude", p.numerator_magnitude},
                         {"numerator_scale", p.numerator_scale},
                         {"denominator_residual", p.denominator_residual},
                         {"spurious", p.spurious}});
  }
  Json zeros = Json::array();
  for (const auto& z : report.zeros) zeros.push_back(number_to_json(z));
  Json doublets = Json::array();
  for (const auto& d : report.doublets) {
    doublets.push_back(Json{{"pole", number_to_json(d.pole)},
                            {"zero", number_to_json(d.zero)},
                            {"separation", d.separation}});
  }
  Json spurious = Json::array();
  for (const auto& z : report.spurious) spurious.push_back(number_to_json(z));
  return Json{{"poles", std::move(poles)},
              {"zeros", std::move(zeros)},
              {"doublets", std::move(doublets)},
              {"spurious", std::move(spurious)}};
}

}  // namespace padelab
