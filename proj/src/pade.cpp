#include "padelab/pade.hpp"

#include <algorithm>
#include <cmath>

#include "padelab/errors.hpp"
#include "padelab/exact_linalg.hpp"
#include "padelab/linalg.hpp"
#include "padelab/toeplitz.hpp"

namespace padelab {

std::string to_string(PadeMode mode) { return mode == PadeMode::robust ? "robust" : "classical"; }

namespace {

Complex horner(const std::vector<Complex>& c, Complex z) {
  Complex acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

void require_coefficients(const PowerSeries& s, std::size_t n) {
  if (!s.provides(2 * n + 1)) {
    throw OutOfRange("Pade degree " + std::to_string(n) + " needs coefficients c_0..c_" +
                     std::to_string(2 * n));
  }
}

// a_j = sum_i c_{j-i} b_i for j <= order, i.e. A_order b.
std::vector<Complex> truncated_product(const PowerSeries& s, const std::vector<Complex>& b,
                                       std::size_t order) {
  std::vector<Complex> a(order + 1, Complex(0.0));
  for (std::size_t j = 0; j <= order; ++j) {
    for (std::size_t i = 0; i <= j && i < b.size(); ++i) a[j] += s.coefficient(j - i) * b[i];
  }
  return a;
}

std::vector<QComplex> truncated_product(const PowerSeries& s, const std::vector<QComplex>& b,
                                        std::size_t order) {
  std::vector<QComplex> a(order + 1);
  for (std::size_t j = 0; j <= order; ++j) {
    for (std::size_t i = 0; i <= j && i < b.size(); ++i) {
      if (!b[i].is_zero()) a[j] += s.exact_coefficient(j - i) * b[i];
    }
  }
  return a;
}

void trim(std::vector<Complex>& v, double tol) {
  double big = 0.0;
  for (const auto& x : v) big = std::max(big, std::abs(x));
  while (v.size() > 1 && std::abs(v.back()) <= tol * big) v.pop_back();
}

void trim(std::vector<QComplex>& v) {
  while (v.size() > 1 && v.back().is_zero()) v.pop_back();
}

std::vector<Complex> to_std(const Eigen::VectorXcd& v) { return {v.data(), v.data() + v.size()}; }

std::vector<Complex> to_float(const std::vector<QComplex>& v) {
  std::vector<Complex> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.to_complex());
  return out;
}

// b_0 = 1 when |b_0| > b0_tol ||b||_2, otherwise unit 2-norm; returns true
// for the degenerate case.
bool normalize(std::vector<Complex>& b, double b0_tol) {
  double norm = 0.0;
  for (const auto& x : b) norm += std::norm(x);
  norm = std::sqrt(norm);
  if (std::abs(b[0]) > b0_tol * norm) {
    const Complex lead = b[0];
    for (auto& x : b) x /= lead;
    b[0] = 1.0;
    return false;
  }
  for (auto& x : b) x /= norm;
  return true;
}

PadeApproximant constant_approximant(const PowerSeries& s, std::size_t n, PadeMode mode) {
  PadeApproximant r;
  r.requested_n = n;
  r.mode = mode;
  r.a = {s.coefficient(0)};
  r.b = {Complex(1.0)};
  if (s.is_exact() && mode == PadeMode::classical) {
    r.a_exact = std::vector<QComplex>{s.exact_coefficient(0)};
    r.b_exact = std::vector<QComplex>{QComplex(1)};
  }
  return r;
}

std::size_t count_small(const Eigen::VectorXd& sigmas, double tol) {
  const double s1 = sigmas(0);
  std::size_t d = 0;
  for (Eigen::Index i = 0; i < sigmas.size(); ++i) {
    if (sigmas(i) <= tol * s1) ++d;
  }
  return d;
}

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

// Null vector of B_n with the most trailing zeros, searched on leading
// column blocks of B_n once the nullspace has dimension > 1.
Eigen::VectorXcd minimal_degree_null_vector(const Eigen::MatrixXcd& b, std::size_t nullity,
                                            const SingularSpectrum& full, double rank_tol) {
  const auto cols = b.cols();
  auto nu = static_cast<Eigen::Index>(cols) - static_cast<Eigen::Index>(nullity);
  while (nu > 0) {
    const SingularSpectrum sub = svd(b.leftCols(nu + 1));
    const Eigen::Index last = sub.sigmas.size() - 1;
    if (sub.sigmas(0) == 0.0) {
      nu = 0;
      break;
    }
    if (sub.sigmas(last) > rank_tol * sub.sigmas(0)) break;
    const auto d = static_cast<Eigen::Index>(count_small(sub.sigmas, rank_tol));
    if (d == 1) {
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(cols);
      v.head(nu + 1) = sub.null_vector;
      return v;
    }
    nu -= d - 1;
  }
  if (nu == 0) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(cols);
    v(0) = 1.0;
    return v;
  }
  return full.null_vector;
}

}  // namespace

Complex PadeApproximant::numerator(Complex z) const { return horner(a, z); }
Complex PadeApproximant::denominator(Complex z) const { return horner(b, z); }

PadeApproximant classical_pade(const PowerSeries& s, std::size_t n, bool exact,
                               const PadeOptions& options) {
  require_coefficients(s, n);
  if (n == 0) return constant_approximant(s, n, PadeMode::classical);

  PadeApproximant r;
  r.requested_n = n;
  r.numerator_order = n;
  r.mode = PadeMode::classical;

  const Eigen::MatrixXcd b_matrix = build_b(s, n);
  const SingularSpectrum spectrum = svd(b_matrix);
  r.diagnostics.sigmas = to_std(spectrum.sigmas);
  r.diagnostics.ratio = spectrum.ratio;

  if (exact && s.is_exact() && n <= kExactNullspaceCap) {
    const ExactNullspace ns = exact_nullspace_basis(build_b_exact(s, n));
    if (ns.basis.size() != 1) throw NonUniqueDenominator(ns.basis.size());
    std::vector<QComplex> b = ns.basis.front();
    std::size_t lead = 0;
    while (b[lead].is_zero()) ++lead;
    r.diagnostics.b0_degenerate = lead != 0;
    const QComplex pivot = b[lead];
    for (auto& x : b) x /= pivot;
    std::vector<QComplex> a = truncated_product(s, b, n);
    trim(a);
    trim(b);
    r.a = to_float(a);
    r.b = to_float(b);
    r.a_exact = std::move(a);
    r.b_exact = std::move(b);
    r.diagnostics.exact_oracle = true;
    return r;
  }

  const std::size_t small = spectrum.sigmas(0) == 0.0
                                ? n
                                : count_small(spectrum.sigmas, options.rank_tol);
  r.diagnostics.nullity = 1 + small;
  Eigen::VectorXcd null = small == 0 ? spectrum.null_vector
                                     : minimal_degree_null_vector(b_matrix, 1 + small, spectrum,
                                                                  options.rank_tol);
  if (spectrum.sigmas(0) > 0.0) {
    r.diagnostics.null_residual = (b_matrix * null).norm() / spectrum.sigmas(0);
  }
  std::vector<Complex> b = to_std(null);
  r.diagnostics.b0_degenerate = normalize(b, options.b0_tol);
  r.a = truncated_product(s, b, n);
  r.b = std::move(b);
  trim(r.a, options.trim_tol);
  trim(r.b, options.trim_tol);
  return r;
}

PadeApproximant robust_pade(const PowerSeries& s, std::size_t n, double tol_rel,
                            const PadeOptions& options) {
  if (!(tol_rel > 0.0 && tol_rel < 1.0)) throw InvalidParameter("tol_rel must lie in (0, 1)");
  require_coefficients(s, n);

  std::vector<ReductionStep> steps;
  std::size_t nu = n;
  while (nu > 0) {
    const Eigen::MatrixXcd b_matrix = build_b(s, nu);
    const SingularSpectrum spectrum = svd(b_matrix);
    const double s1 = spectrum.sigmas(0);
    const std::size_t d = s1 == 0.0 ? nu : count_small(spectrum.sigmas, tol_rel);
    steps.push_back({nu, d, s1});
    if (d > 0) {
      nu -= std::min(d, nu);
      continue;
    }

    PadeApproximant r;
    r.requested_n = n;
    r.numerator_order = nu;
    r.mode = PadeMode::robust;
    r.diagnostics.sigmas = to_std(spectrum.sigmas);
    r.diagnostics.ratio = spectrum.ratio;
    r.diagnostics.threshold_used = tol_rel * s1;
    r.diagnostics.reductions = std::move(steps);
    r.diagnostics.null_residual = spectrum.null_residual;
    std::vector<Complex> b = to_std(spectrum.null_vector);
    r.diagnostics.b0_degenerate = normalize(b, options.b0_tol);
    r.a = truncated_product(s, b, nu);
    r.b = std::move(b);
    trim(r.a, tol_rel);
    trim(r.b, tol_rel);
    return r;
  }

  PadeApproximant r = constant_approximant(s, n, PadeMode::robust);
  r.diagnostics.reductions = std::move(steps);
  r.diagnostics.fully_reduced = n > 0;
  return r;
}

std::vector<Complex> order_residual(const PowerSeries& s, const PadeApproximant& r) {
  const auto [m, nu] = r.effective_degrees();
  const std::size_t top = m + nu;
  if (!s.provides(top + 1)) throw OutOfRange("order residual needs c_0..c_" + std::to_string(top));
  std::vector<Complex> res = truncated_product(s, r.b, top);
  for (std::size_t j = 0; j <= top; ++j) res[j] = (j < r.a.size() ? r.a[j] : Complex(0.0)) - res[j];
  return res;
}

std::vector<QComplex> order_residual_exact(const PowerSeries& s, const PadeApproximant& r) {
  if (!r.exact() || !r.a_exact || !s.is_exact()) {
    throw UnsupportedInput("exact order residual needs an exact series and approximant");
  }
  const auto [m, nu] = r.effective_degrees();
  const std::size_t top = m + nu;
  if (!s.provides(top + 1)) throw OutOfRange("order residual needs c_0..c_" + std::to_string(top));
  std::vector<QComplex> res = truncated_product(s, *r.b_exact, top);
  for (std::size_t j = 0; j <= top; ++j) {
    res[j] = (j < r.a_exact->size() ? (*r.a_exact)[j] : QComplex(0)) - res[j];
  }
  return res;
}

// ---------------------------------------------------------------------------

namespace {

Json coeffs_to_json(const std::vector<Complex>& v, const std::optional<std::vector<QComplex>>& e) {
  Json out = Json::array();
  if (e) {
    for (const auto& x : *e) out.push_back(number_to_json(x));
  } else {
    for (const auto& x : v) out.push_back(number_to_json(x));
  }
  return out;
}

void coeffs_from_json(const Json& arr, const std::string& field, std::vector<Complex>& v,
                      std::optional<std::vector<QComplex>>& e) {
  if (!arr.is_array() || arr.empty()) throw ParseError("approximant: '" + field + "' must be a non-empty array");
  std::vector<QComplex> exact;
  bool all_exact = true;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    Number x = number_from_json(arr[i], field + "[" + std::to_string(i) + "]");
    v.push_back(x.value);
    if (x.exact) {
      exact.push_back(*x.exact);
    } else {
      all_exact = false;
    }
  }
  if (all_exact) e = std::move(exact);
}

}  // namespace

Json approximant_to_json(const PadeApproximant& r) {
  const auto [m, nu] = r.effective_degrees();
  Json reductions = Json::array();
  for (const auto& st : r.diagnostics.reductions) {
    reductions.push_back(Json{{"nu", st.nu}, {"deficiency", st.deficiency}, {"sigma_1", st.sigma_1}});
  }
  Json doc;
  doc["a"] = coeffs_to_json(r.a, r.a_exact);
  doc["b"] = coeffs_to_json(r.b, r.b_exact);
  doc["mode"] = to_string(r.mode);
  doc["requested_n"] = r.requested_n;
  doc["numerator_order"] = r.numerator_order;
  doc["effective_degrees"] = Json::array({m, nu});
  doc["diagnostics"] = Json{{"sigmas", r.diagnostics.sigmas},
                            {"ratio", r.diagnostics.ratio},
                            {"threshold", r.diagnostics.threshold_used},
                            {"reductions", std::move(reductions)},
                            {"b0_degenerate", r.diagnostics.b0_degenerate},
                            {"fully_reduced", r.diagnostics.fully_reduced},
                            {"exact_oracle", r.diagnostics.exact_oracle}};
  return doc;
}

PadeApproximant approximant_from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("a") || !doc.contains("b")) {
    throw ParseError("approximant: expected object with 'a' and 'b'");
  }
  PadeApproximant r;
  coeffs_from_json(doc["a"], "a", r.a, r.a_exact);
  coeffs_from_json(doc["b"], "b", r.b, r.b_exact);
  if (r.a_exact.has_value() != r.b_exact.has_value()) {
    r.a_exact.reset();
    r.b_exact.reset();
  }
  if (doc.contains("mode")) r.mode = doc["mode"] == "robust" ? PadeMode::robust : PadeMode::classical;
  if (doc.contains("requested_n")) r.requested_n = doc["requested_n"].get<std::size_t>();
  r.numerator_order = doc.contains("numerator_order") ? doc["numerator_order"].get<std::size_t>()
                                                       : r.requested_n;
  if (doc.contains("diagnostics")) {
    const Json& d = doc["diagnostics"];
    if (d.contains("sigmas")) {
      for (const auto& x : d["sigmas"]) r.diagnostics.sigmas.push_back(json_to_double(x, "diagnostics.sigmas"));
    }
    if (d.contains("ratio")) r.diagnostics.ratio = json_to_double(d["ratio"], "diagnostics.ratio");
    if (d.contains("threshold")) r.diagnostics.threshold_used = json_to_double(d["threshold"], "diagnostics.threshold");
    if (d.contains("reductions")) {
      for (const auto& st : d["reductions"]) {
        r.diagnostics.reductions.push_back({st.at("nu").get<std::size_t>(),
                                            st.at("deficiency").get<std::size_t>(),
                                            json_to_double(st.at("sigma_1"), "sigma_1")});
      }
    }
    r.diagnostics.b0_degenerate = d.value("b0_degenerate", false);
    r.diagnostics.fully_reduced = d.value("fully_reduced", false);
    r.diagnostics.exact_oracle = d.value("exact_oracle", false);
  }
  return r;
}

}  // namespace padelab
