#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "padelab/analysis.hpp"
#include "padelab/errors.hpp"
#include "padelab/exact_linalg.hpp"

namespace padelab {

namespace {

bool same_point(const Number& a, const Number& b) {
  if (a.exact && b.exact) return *a.exact == *b.exact;
  return a.value == b.value;
}

QComplex horner_exact(const std::vector<QComplex>& c, const QComplex& z) {
  QComplex acc;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    acc *= z;
    acc += *it;
  }
  return acc;
}

}  // namespace

DivergenceScan divergence_scan(int k_max, const PoleSequence& poles, const ScanOptions& options) {
  if (k_max < 2) throw InvalidParameter("k_max must be >= 2, got " + std::to_string(k_max));
  if (k_max > kMaxBlockIndex) {
    throw OutOfRange("k_max must be <= " + std::to_string(kMaxBlockIndex) + ", got " +
                     std::to_string(k_max));
  }
  if (!poles.covers(2) || !poles.covers(k_max)) {
    throw InvalidParameter("pole sequence must provide z_2 .. z_" + std::to_string(k_max));
  }
  require_admissible_poles(poles, 2, k_max);
  for (const auto& t : options.extra_points) {
    if (!std::isfinite(t.value.real()) || !std::isfinite(t.value.imag())) {
      throw InvalidParameter("scan points must be finite");
    }
  }

  const PowerSeries s = build_mascarenhas_series(k_max, poles);
  for (const auto& t : options.extra_points) {
    if (!(std::abs(t.value) < s.radius_hint())) {
      throw DomainError("scan point |z| = " + format_double(std::abs(t.value)) +
                        " is not inside radius_hint " + format_double(s.radius_hint()));
    }
  }

  DivergenceScan scan;
  scan.k_max = k_max;
  scan.note = "f is the series truncated after block k_max (c_0 .. c_" +
              std::to_string(mascarenhas_length(k_max) - 1) + ")";
  double min_pole = std::numeric_limits<double>::infinity();
  for (int k = 2; k <= k_max; ++k) {
    const Number& z = poles.at(k);
    min_pole = std::min(min_pole, std::abs(z.value));
    const bool seen = std::any_of(scan.targets.begin(), scan.targets.end(),
                                  [&](const Number& t) { return same_point(t, z); });
    if (!seen) scan.targets.push_back(z);
  }
  for (const auto& t : options.extra_points) scan.targets.push_back(t);

  for (int k = 2; k <= k_max; ++k) {
    ScanRow row;
    row.k = k;
    row.n = mascarenhas_degree(k);
    row.z_k = poles.at(k);
    const bool use_exact = options.exact && s.is_exact() && row.n <= kExactNullspaceCap;
    const PadeApproximant r = classical_pade(s, row.n, use_exact);
    row.exact = r.exact();

    for (const auto& t : scan.targets) {
      ScanEntry e;
      e.target = t;
      if (row.exact && t.exact) {
        const QComplex q = horner_exact(*r.b_exact, *t.exact);
        e.pole_hit = q.is_zero();
        e.q_abs = std::abs(q.to_complex());
      } else {
        e.q_abs = std::abs(r.denominator(t.value));
        e.pole_hit = e.q_abs <= 1e-10 * (1.0 + std::abs(t.value) / min_pole);
      }
      e.error = e.pole_hit ? std::numeric_limits<double>::infinity()
                           : std::abs(eval_series(s, t.value, 1e-15).value - r(t.value));
      row.entries.push_back(std::move(e));
    }
    scan.rows.push_back(std::move(row));
  }
  return scan;
}

Json scan_to_json(const DivergenceScan& scan) {
  Json targets = Json::array();
  for (const auto& t : scan.targets) targets.push_back(number_to_json(t, t.is_exact()));
  Json rows = Json::array();
  for (const auto& row : scan.rows) {
    Json entries = Json::array();
    for (const auto& e : row.entries) {
      entries.push_back(Json{{"target", number_to_json(e.target, e.target.is_exact())},
                             {"q_abs", e.q_abs},
                             {"error", e.error},
                             {"pole_hit", e.pole_hit}});
    }
    rows.push_back(Json{{"k", row.k},
                        {"n", row.n},
                        {"z_k", number_to_json(row.z_k, row.z_k.is_exact())},
                        {"exact", row.exact},
                        {"entries", std::move(entries)}});
  }
  return Json{{"k_max", scan.k_max},
              {"note", scan.note},
              {"targets", std::move(targets)},
              {"rows", std::move(rows)}};
}

std::string scan_to_csv(const DivergenceScan& scan) {
  std::ostringstream out;
  out << "# " << scan.note << '\n';
  out << "k,n,z_k_re,z_k_im,target_re,target_im,q_abs,error\n";
  for (const auto& row : scan.rows) {
    for (const auto& e : row.entries) {
      out << row.k << ',' << row.n << ',' << format_double(row.z_k.value.real()) << ','
          << format_double(row.z_k.value.imag()) << ',' << format_double(e.target.value.real())
          << ',' << format_double(e.target.value.imag()) << ',' << format_double(e.q_abs) << ','
          << format_double(e.error) << '\n';
    }
  }
  return out.str();
}

}  // namespace padelab
