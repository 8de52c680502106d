#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "padelab/analysis.hpp"
#include "padelab/errors.hpp"
#include "padelab/exact_linalg.hpp"

namespace padelab {

namespace {

constexpr double kPRelTol = 1e-8;
constexpr double kRatioLimit = 5.0;

double q_tolerance(const Number& z) { return 1e-8 * std::max(1.0, 1.0 / std::abs(z.value)); }

QComplex horner_exact(const std::vector<QComplex>& c, const QComplex& z) {
  QComplex acc;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    acc *= z;
    acc += *it;
  }
  return acc;
}

bool sandwich_holds(const TheoremReport& r) {
  const double slack = kSandwichSlack * std::ldexp(1.0, 4 * r.k);
  return r.sandwich_lower - slack <= r.sigma_n && r.sigma_n <= r.sigma_1 &&
         r.sigma_1 <= r.sandwich_upper + slack;
}

}  // namespace

bool TheoremReport::audit() const {
  const double sixteen_k = std::ldexp(1.0, 4 * k);
  bool ok = coeff_bound_ok == coeff_bound.ok;
  if (exact) {
    ok = ok && q_ok == q_match_exact_zero && (!q_match_exact_zero || q_match == 0.0);
    ok = ok && p_at_zk_exact && p_expected_exact &&
         p_ok == (*p_at_zk_exact == *p_expected_exact);
  } else {
    ok = ok && q_ok == (q_match <= q_tol);
    ok = ok && p_ok == (p_rel_error <= kPRelTol);
  }
  ok = ok && sigma_ratio_pass == (sigma_ratio < kRatioLimit);
  if (sigma_n > 0.0) ok = ok && std::abs(sigma_ratio - sigma_1 / sigma_n) <= 1e-15 * sigma_ratio;
  if (oracle_ratio) {
    ok = ok && oracle_ok == (std::abs(sigma_ratio - *oracle_ratio) <= kOracleAgreement * *oracle_ratio);
  } else {
    ok = ok && oracle_ok;
  }
  ok = ok && sums.tail_ok == (sums.tail_sum < sixteen_k / 2.0) &&
       sums.head_ok == (sums.head_sum < sixteen_k / 6.0) && sums.S_ok == (S_value < S_limit) &&
       sums.pass == (sums.tail_ok && sums.head_ok && sums.S_ok);
  ok = ok && S_value == sums.S && S_limit == sums.S_limit;
  ok = ok && sandwich_lower == sixteen_k - S_value && sandwich_upper == sixteen_k + S_value;
  ok = ok && sandwich_ok == sandwich_holds(*this);
  ok = ok && pass == (coeff_bound_ok && q_ok && p_ok && sigma_ratio_pass && oracle_ok && sums.pass &&
                      sandwich_ok);
  return ok;
}

TheoremReport verify_theorem(int k, const PoleSequence& poles, bool exact) {
  if (k < 2) throw InvalidParameter("k must be >= 2, got " + std::to_string(k));
  if (k > kMaxBlockIndex) {
    throw OutOfRange("k must be <= " + std::to_string(kMaxBlockIndex) + ", got " + std::to_string(k));
  }
  if (!poles.covers(2) || !poles.covers(k)) {
    throw InvalidParameter("pole sequence must provide z_2 .. z_" + std::to_string(k));
  }
  require_admissible_poles(poles, 2, k);

  const PowerSeries s = build_mascarenhas_series(k, poles);
  const std::size_t n = mascarenhas_degree(k);
  const double sixteen_k = std::ldexp(1.0, 4 * k);

  TheoremReport rep;
  rep.k = k;
  rep.n = n;
  rep.z_k = poles.at(k);

  rep.coeff_bound = check_coefficient_bound(s, 1, 2 * n);
  rep.coeff_bound_ok = rep.coeff_bound.ok;

  const bool use_exact = exact && s.is_exact() && n <= kExactNullspaceCap;
  const PadeApproximant r = classical_pade(s, n, use_exact);
  rep.exact = r.exact();

  // Expected denominator (1, -1/z_k, 0, ..., 0).
  if (rep.exact) {
    const QComplex& z = *rep.z_k.exact;
    std::vector<QComplex> expected(n + 1);
    expected[0] = 1;
    expected[1] = -(QComplex(1) / z);
    bool equal = true;
    for (std::size_t i = 0; i <= n; ++i) {
      const QComplex got = i < r.b_exact->size() ? (*r.b_exact)[i] : QComplex();
      const QComplex diff = got - expected[i];
      if (!diff.is_zero()) equal = false;
      rep.q_match = std::max(rep.q_match, std::abs(diff.to_complex()));
    }
    rep.q_match_exact_zero = equal;
    rep.q_tol = 0.0;
    rep.q_ok = equal;

    rep.p_at_zk_exact = horner_exact(*r.a_exact, z);
    rep.p_expected_exact = pow(QComplex(16), static_cast<unsigned long>(k)) *
                           pow(z, static_cast<unsigned long>(2 * n));
    rep.p_at_zk = rep.p_at_zk_exact->to_complex();
    rep.p_expected = rep.p_expected_exact->to_complex();
    const QComplex diff = *rep.p_at_zk_exact - *rep.p_expected_exact;
    rep.p_rel_error = diff.is_zero() ? 0.0 : std::abs(diff.to_complex()) / std::abs(rep.p_expected);
    rep.p_ok = *rep.p_at_zk_exact == *rep.p_expected_exact;
  } else {
    const Complex z = rep.z_k.value;
    for (std::size_t i = 0; i <= n; ++i) {
      const Complex got = i < r.b.size() ? r.b[i] : Complex();
      const Complex want = i == 0 ? Complex(1.0) : i == 1 ? -1.0 / z : Complex();
      rep.q_match = std::max(rep.q_match, std::abs(got - want));
    }
    rep.q_tol = q_tolerance(rep.z_k);
    rep.q_ok = rep.q_match <= rep.q_tol;

    rep.p_expected = sixteen_k * std::pow(z, static_cast<double>(2 * n));
    const std::vector<Complex> roots = polynomial_roots(r.b);
    if (roots.empty()) {
      rep.p_at_zk = Complex(std::numeric_limits<double>::quiet_NaN(), 0.0);
      rep.p_rel_error = std::numeric_limits<double>::infinity();
    } else {
      const Complex pole = *std::min_element(roots.begin(), roots.end(), [&](Complex a, Complex b) {
        return std::abs(a - z) < std::abs(b - z);
      });
      rep.p_at_zk = numerator_at_pole(s, r, pole).value;
      rep.p_rel_error = std::abs(rep.p_at_zk - rep.p_expected) / std::abs(rep.p_expected);
    }
    rep.p_ok = rep.p_rel_error <= kPRelTol;
  }

  rep.sigma_1 = r.diagnostics.sigmas.front();
  rep.sigma_n = r.diagnostics.sigmas.back();
  rep.sigma_ratio = rep.sigma_n > 0.0 ? rep.sigma_1 / rep.sigma_n
                                      : std::numeric_limits<double>::infinity();
  rep.sigma_ratio_pass = rep.sigma_ratio < kRatioLimit;

  if (rep.exact && n <= kCharPolyCap) {
    const SigmaRatioOracle oracle = exact_sigma_ratio_bounds(build_b_exact(s, n));
    rep.oracle_ratio = oracle.float_ratio;
    rep.oracle_ok = std::abs(rep.sigma_ratio - oracle.float_ratio) <= kOracleAgreement * oracle.float_ratio;
  }

  rep.sums = check_sum_bounds(s, k);
  rep.S_value = rep.sums.S;
  rep.S_limit = rep.sums.S_limit;
  rep.sandwich_lower = sixteen_k - rep.S_value;
  rep.sandwich_upper = sixteen_k + rep.S_value;
  rep.sandwich_ok = sandwich_holds(rep);

  rep.pass = rep.coeff_bound_ok && rep.q_ok && rep.p_ok && rep.sigma_ratio_pass && rep.oracle_ok &&
             rep.sums.pass && rep.sandwich_ok;
  return rep;
}

Json theorem_report_to_json(const TheoremReport& r) {
  Json doc;
  doc["k"] = r.k;
  doc["n"] = r.n;
  doc["z_k"] = number_to_json(r.z_k, r.exact);
  doc["exact"] = r.exact;
  Json bound{{"ok", r.coeff_bound_ok},
             {"first", r.coeff_bound.first},
             {"last", r.coeff_bound.last},
             {"j1_equality", r.coeff_bound.j1_equality}};
  bound["first_violation"] = r.coeff_bound.first_violation ? Json(*r.coeff_bound.first_violation) : Json();
  doc["coeff_bound"] = std::move(bound);
  doc["q_match"] = r.q_match;
  doc["q_tol"] = r.q_tol;
  doc["q_match_exact_zero"] = r.q_match_exact_zero;
  doc["q_ok"] = r.q_ok;
  doc["p_at_zk"] = r.p_at_zk_exact ? number_to_json(*r.p_at_zk_exact) : number_to_json(r.p_at_zk);
  doc["p_expected"] =
      r.p_expected_exact ? number_to_json(*r.p_expected_exact) : number_to_json(r.p_expected);
  doc["p_rel_error"] = r.p_rel_error;
  doc["p_ok"] = r.p_ok;
  doc["sigma_1"] = r.sigma_1;
  doc["sigma_n"] = r.sigma_n;
  doc["sigma_ratio"] = r.sigma_ratio;
  doc["sigma_ratio_pass"] = r.sigma_ratio_pass;
  doc["oracle_ratio"] = r.oracle_ratio ? Json(*r.oracle_ratio) : Json();
  doc["oracle_ok"] = r.oracle_ok;
  doc["tail_sum"] = r.sums.tail_sum;
  doc["head_sum"] = r.sums.head_sum;
  doc["tail_ok"] = r.sums.tail_ok;
  doc["head_ok"] = r.sums.head_ok;
  doc["S_value"] = r.S_value;
  doc["S_limit"] = r.S_limit;
  doc["S_ok"] = r.sums.S_ok;
  doc["sandwich_lower"] = r.sandwich_lower;
  doc["sandwich_upper"] = r.sandwich_upper;
  doc["sandwich_ok"] = r.sandwich_ok;
  doc["pass"] = r.pass;
  return doc;
}

std::string theorem_reports_to_csv(const std::vector<TheoremReport>& reports) {
  std::ostringstream out;
  out << "k,n,sigma1,sigman,ratio,S,S_limit,q_match,p_at_zk_re,p_at_zk_im,pass\n";
  for (const auto& r : reports) {
    out << r.k << ',' << r.n << ',' << format_double(r.sigma_1) << ',' << format_double(r.sigma_n)
        << ',' << format_double(r.sigma_ratio) << ',' << format_double(r.S_value) << ','
        << format_double(r.S_limit) << ',' << format_double(r.q_match) << ','
        << format_double(r.p_at_zk.real()) << ',' << format_double(r.p_at_zk.imag()) << ','
        << (r.pass ? "true" : "false") << '\n';
  }
  return out.str();
}

}  // namespace padelab
