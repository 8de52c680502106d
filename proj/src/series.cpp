#include "padelab/series.hpp"

#include <bit>
#include <cmath>

#include "padelab/errors.hpp"

namespace padelab {

QComplex harmonic_repeated_value(std::size_t position) {
  std::size_t block = 1;
  while (position >= block) {
    position -= block;
    ++block;
  }
  return QComplex(mpq_class(1, static_cast<unsigned long>(position + 4)));
}

PoleSequence PoleSequence::harmonic_repeated(std::size_t count, int first_index) {
  PoleSequence seq;
  seq.scheme_ = PoleScheme::harmonic_repeated;
  seq.first_index_ = first_index;
  seq.points_.reserve(count);
  for (std::size_t p = 0; p < count; ++p) seq.points_.emplace_back(harmonic_repeated_value(p));
  return seq;
}

PoleSequence PoleSequence::explicit_list(std::vector<Number> points, int first_index) {
  PoleSequence seq;
  seq.scheme_ = PoleScheme::explicit_list;
  seq.first_index_ = first_index;
  seq.points_ = std::move(points);
  return seq;
}

const Number& PoleSequence::at(int k) const {
  if (!covers(k)) {
    throw OutOfRange("pole z_" + std::to_string(k) + " is not defined (sequence covers " +
                     std::to_string(first_index_) + ".." + std::to_string(last_index()) + ")");
  }
  return points_[static_cast<std::size_t>(k - first_index_)];
}

bool PoleSequence::exact(int k_from, int k_to) const {
  for (int k = k_from; k <= k_to; ++k) {
    if (!at(k).is_exact()) return false;
  }
  return true;
}

void require_admissible_poles(const PoleSequence& poles, int k_from, int k_to) {
  for (int k = k_from; k <= k_to; ++k) {
    const Number& z = poles.at(k);
    bool ok;
    if (z.exact) {
      const mpq_class r2 = z.exact->norm();
      ok = sgn(r2) > 0 && r2 < mpq_class(1, 9);
    } else {
      const double r = std::abs(z.value);
      ok = r > 0.0 && r < 1.0 / 3.0;
    }
    if (!ok) {
      throw InvalidParameter("pole z_" + std::to_string(k) + " violates 0 < |z_k| < 1/3");
    }
  }
}

std::string to_string(SeriesFamily family) {
  switch (family) {
    case SeriesFamily::mascarenhas:
      return "mascarenhas";
    case SeriesFamily::gammel:
      return "gammel";
    case SeriesFamily::custom:
      break;
  }
  return "custom";
}

SeriesFamily series_family_from_string(const std::string& name) {
  if (name == "mascarenhas") return SeriesFamily::mascarenhas;
  if (name == "gammel") return SeriesFamily::gammel;
  if (name == "custom") return SeriesFamily::custom;
  throw ParseError("unknown series family '" + name + "'");
}

// ---------------------------------------------------------------------------

struct PowerSeries::Impl {
  std::optional<std::size_t> known_len;
  bool exact = false;
  double radius_hint = 1.0;
  SeriesMeta meta;
  std::vector<QComplex> exact_list;
  std::vector<Complex> float_list;
  ExactGenerator exact_gen;
  FloatGenerator float_gen;
};

namespace {

void check_radius(double radius_hint) {
  if (!(radius_hint > 0.0)) throw InvalidParameter("radius_hint must be positive");
}

}  // namespace

PowerSeries PowerSeries::exact(std::vector<QComplex> coeffs, double radius_hint,
                               SeriesMeta meta) {
  check_radius(radius_hint);
  auto impl = std::make_shared<Impl>();
  impl->known_len = coeffs.size();
  impl->exact = true;
  impl->radius_hint = radius_hint;
  impl->meta = std::move(meta);
  impl->float_list.reserve(coeffs.size());
  for (const auto& c : coeffs) impl->float_list.push_back(c.to_complex());
  impl->exact_list = std::move(coeffs);
  return PowerSeries(std::move(impl));
}

PowerSeries PowerSeries::floating(std::vector<Complex> coeffs, double radius_hint,
                                  SeriesMeta meta) {
  check_radius(radius_hint);
  for (const auto& c : coeffs) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw InvalidParameter("series coefficients must be finite");
    }
  }
  auto impl = std::make_shared<Impl>();
  impl->known_len = coeffs.size();
  impl->radius_hint = radius_hint;
  impl->meta = std::move(meta);
  impl->float_list = std::move(coeffs);
  return PowerSeries(std::move(impl));
}

PowerSeries PowerSeries::exact_stream(ExactGenerator gen, double radius_hint, SeriesMeta meta) {
  check_radius(radius_hint);
  auto impl = std::make_shared<Impl>();
  impl->exact = true;
  impl->radius_hint = radius_hint;
  impl->meta = std::move(meta);
  impl->exact_gen = std::move(gen);
  return PowerSeries(std::move(impl));
}

PowerSeries PowerSeries::float_stream(FloatGenerator gen, double radius_hint, SeriesMeta meta) {
  check_radius(radius_hint);
  auto impl = std::make_shared<Impl>();
  impl->radius_hint = radius_hint;
  impl->meta = std::move(meta);
  impl->float_gen = std::move(gen);
  return PowerSeries(std::move(impl));
}

std::optional<std::size_t> PowerSeries::known_len() const { return impl_->known_len; }

bool PowerSeries::provides(std::size_t count) const {
  return !impl_->known_len || count <= *impl_->known_len;
}

bool PowerSeries::is_exact() const { return impl_->exact; }
double PowerSeries::radius_hint() const { return impl_->radius_hint; }
const SeriesMeta& PowerSeries::meta() const { return impl_->meta; }

void PowerSeries::check_index(std::size_t j) const {
  if (impl_->known_len && j >= *impl_->known_len) {
    throw OutOfRange("coefficient c_" + std::to_string(j) + " requested but the series has " +
                     std::to_string(*impl_->known_len) + " coefficients");
  }
}

Complex PowerSeries::coefficient(std::size_t j) const {
  check_index(j);
  if (impl_->known_len) return impl_->float_list[j];
  if (impl_->exact) return impl_->exact_gen(j).to_complex();
  return impl_->float_gen(j);
}

QComplex PowerSeries::exact_coefficient(std::size_t j) const {
  if (!impl_->exact) throw UnsupportedInput("series has no exact coefficients");
  check_index(j);
  if (impl_->known_len) return impl_->exact_list[j];
  return impl_->exact_gen(j);
}

Number PowerSeries::number(std::size_t j) const {
  if (impl_->exact) return Number(exact_coefficient(j));
  return Number(coefficient(j));
}

std::vector<Complex> PowerSeries::coefficients(std::size_t count) const {
  if (!provides(count)) check_index(count - 1);
  std::vector<Complex> out;
  out.reserve(count);
  for (std::size_t j = 0; j < count; ++j) out.push_back(coefficient(j));
  return out;
}

std::vector<QComplex> PowerSeries::exact_coefficients(std::size_t count) const {
  if (!provides(count)) check_index(count - 1);
  std::vector<QComplex> out;
  out.reserve(count);
  for (std::size_t j = 0; j < count; ++j) out.push_back(exact_coefficient(j));
  return out;
}

// ---------------------------------------------------------------------------

std::size_t mascarenhas_degree(int k) { return (std::size_t{1} << k) - 2; }

std::size_t mascarenhas_length(int k_max) { return (std::size_t{1} << (k_max + 1)) - 3; }

namespace {

void check_k_max(int k_max) {
  if (k_max < 2 || k_max > kMaxBlockIndex) {
    throw InvalidParameter("k_max must lie in [2, " + std::to_string(kMaxBlockIndex) + "], got " +
                           std::to_string(k_max));
  }
}

// Block k covers indices 2^k - 3 ... 2^{k+1} - 4.
int mascarenhas_block(std::size_t j) { return std::bit_width(j + 3) - 1; }

QComplex sixteen_pow(int k) {
  mpz_class v;
  mpz_ui_pow_ui(v.get_mpz_t(), 16, static_cast<unsigned long>(k));
  return QComplex(mpq_class(v));
}

}  // namespace

Number mascarenhas_coeff(int k_max, const PoleSequence& poles, std::size_t j) {
  check_k_max(k_max);
  if (j >= mascarenhas_length(k_max)) {
    throw OutOfRange("index " + std::to_string(j) + " beyond the generated range for k_max = " +
                     std::to_string(k_max));
  }
  if (j == 0) return Number(QComplex(1));
  const int k = mascarenhas_block(j);
  const Number& z = poles.at(k);
  const std::size_t block_start = (std::size_t{1} << k) - 3;
  if (j == block_start) return Number(sixteen_pow(k));
  const auto exponent = static_cast<unsigned long>((std::size_t{1} << (k + 1)) - 4 - j);
  if (z.exact) return Number(sixteen_pow(k) * pow(*z.exact, exponent));
  return Number(std::ldexp(1.0, 4 * k) * std::pow(z.value, static_cast<double>(exponent)));
}

PowerSeries build_mascarenhas_series(int k_max, const PoleSequence& poles) {
  check_k_max(k_max);
  require_admissible_poles(poles, 2, k_max);
  const std::size_t len = mascarenhas_length(k_max);
  SeriesMeta meta{SeriesFamily::mascarenhas, k_max, poles};

  // Each block is filled from its last index downwards: c_{2^{k+1}-4} = 16^k,
  // then repeated multiplication by z_k.
  if (poles.exact(2, k_max)) {
    std::vector<QComplex> c(len);
    c[0] = QComplex(1);
    for (int k = 2; k <= k_max; ++k) {
      const QComplex& z = *poles.at(k).exact;
      const std::size_t first = (std::size_t{1} << k) - 3;
      const std::size_t last = (std::size_t{1} << (k + 1)) - 4;
      const QComplex top = sixteen_pow(k);
      c[first] = top;
      QComplex v = top;
      for (std::size_t j = last;; --j) {
        c[j] = v;
        if (j == first + 1) break;
        v *= z;
      }
    }
    return PowerSeries::exact(std::move(c), 1.0, std::move(meta));
  }

  std::vector<Complex> c(len);
  c[0] = 1.0;
  for (int k = 2; k <= k_max; ++k) {
    const Complex z = poles.at(k).value;
    const std::size_t first = (std::size_t{1} << k) - 3;
    const std::size_t last = (std::size_t{1} << (k + 1)) - 4;
    const double top = std::ldexp(1.0, 4 * k);
    c[first] = top;
    Complex v = top;
    for (std::size_t j = last;; --j) {
      c[j] = v;
      if (j == first + 1) break;
      v *= z;
    }
  }
  return PowerSeries::floating(std::move(c), 1.0, std::move(meta));
}

std::vector<Number> default_gammel_alphas(std::size_t count) {
  std::vector<Number> out;
  for (std::size_t k = 1; k <= count; ++k) {
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 4, static_cast<unsigned long>(k * k));
    out.emplace_back(QComplex(mpq_class(mpz_class(1), den)));
  }
  return out;
}

PowerSeries build_gammel_series(const GammelParams& params, std::size_t j_max) {
  // Block k covers n_k = 2^k - 1 ... 2 n_k = 2^{k+1} - 2; blocks tile [1, inf).
  const int last_block = j_max == 0 ? 0 : std::bit_width(j_max + 1) - 1;
  if (static_cast<int>(params.alphas.size()) < last_block) {
    throw InvalidParameter("Gammel series up to j = " + std::to_string(j_max) + " needs " +
                           std::to_string(last_block) + " alphas, got " +
                           std::to_string(params.alphas.size()));
  }
  if (last_block > 62) throw InvalidParameter("j_max too large");
  bool exact = true;
  for (int k = 1; k <= last_block; ++k) {
    const Number& alpha = params.alphas[static_cast<std::size_t>(k - 1)];
    if (!params.poles.covers(k)) {
      throw InvalidParameter("Gammel series needs pole z_" + std::to_string(k));
    }
    const Number& z = params.poles.at(k);
    exact = exact && alpha.is_exact() && z.is_exact();
    const bool alpha_zero = alpha.exact ? alpha.exact->is_zero() : alpha.value == 0.0;
    const bool z_zero = z.exact ? z.exact->is_zero() : z.value == 0.0;
    if (!alpha_zero && z_zero) throw InvalidParameter("Gammel pole z_" + std::to_string(k) + " is 0");
  }

  SeriesMeta meta{SeriesFamily::gammel, last_block, params.poles};
  // A finite truncation is a polynomial; it carries no finite radius.
  const double radius = std::numeric_limits<double>::max();

  if (exact) {
    std::vector<QComplex> c(j_max + 1);
    c[0] = QComplex(1);
    for (int k = 1; k <= last_block; ++k) {
      const QComplex& alpha = *params.alphas[static_cast<std::size_t>(k - 1)].exact;
      const std::size_t first = (std::size_t{1} << k) - 1;
      const std::size_t last = std::min(j_max, 2 * first);
      if (alpha.is_zero()) continue;
      const QComplex inv = QComplex(1) / *params.poles.at(k).exact;
      QComplex v = alpha * pow(inv, first);
      for (std::size_t j = first; j <= last; ++j) {
        c[j] = v;
        v *= inv;
      }
    }
    return PowerSeries::exact(std::move(c), radius, std::move(meta));
  }

  std::vector<Complex> c(j_max + 1, Complex(0.0));
  c[0] = 1.0;
  for (int k = 1; k <= last_block; ++k) {
    const Complex alpha = params.alphas[static_cast<std::size_t>(k - 1)].value;
    if (alpha == 0.0) continue;
    const std::size_t first = (std::size_t{1} << k) - 1;
    const std::size_t last = std::min(j_max, 2 * first);
    const Complex inv = 1.0 / params.poles.at(k).value;
    for (std::size_t j = first; j <= last; ++j) {
      c[j] = alpha * std::pow(inv, static_cast<double>(j));
    }
  }
  return PowerSeries::floating(std::move(c), radius, std::move(meta));
}

// ---------------------------------------------------------------------------

SeriesValue eval_series(const PowerSeries& s, Complex z, double rel_tol, std::size_t max_terms) {
  if (!(rel_tol > 0.0)) throw InvalidParameter("rel_tol must be positive");
  const double r = std::abs(z);
  if (!(r < s.radius_hint())) {
    throw DomainError("|z| = " + std::to_string(r) + " is not inside radius_hint " +
                      std::to_string(s.radius_hint()));
  }
  if (const auto len = s.known_len()) {
    Complex acc = 0.0;
    for (std::size_t j = *len; j-- > 0;) acc = acc * z + s.coefficient(j);
    return {acc, *len};
  }

  // (j+3)^4 r^j with consecutive-term ratio ((j+4)/(j+3))^4 r; once that ratio
  // is below 1 the tail after N is at most term_{N+1} / (1 - ratio).
  Complex acc = 0.0;
  Complex zj = 1.0;
  for (std::size_t n = 0; n < max_terms; ++n) {
    acc += s.coefficient(n) * zj;
    zj *= z;
    const double next = static_cast<double>(n) + 4.0;  // j = n + 1 gives j + 3
    const double ratio = std::pow((next + 1.0) / next, 4.0) * r;
    if (ratio < 1.0) {
      const double term = std::pow(next, 4.0) * std::pow(r, static_cast<double>(n + 1));
      const double tail = term / (1.0 - ratio);
      if (tail < rel_tol * std::abs(acc)) return {acc, n + 1};
    }
  }
  throw ConvergenceError("series evaluation did not reach the requested tolerance within " +
                             std::to_string(max_terms) + " terms",
                         std::abs(acc));
}

CoefficientBoundReport check_coefficient_bound(const PowerSeries& s, std::size_t first,
                                               std::size_t last) {
  CoefficientBoundReport rep;
  rep.first = first;
  rep.last = last;
  if (s.provides(2)) {
    if (s.is_exact()) {
      rep.j1_equality = s.exact_coefficient(1).norm() == mpq_class(65536);
    } else {
      rep.j1_equality = std::abs(s.coefficient(1)) == 256.0;
    }
  }
  for (std::size_t j = first; j <= last; ++j) {
    bool ok;
    if (s.is_exact()) {
      const mpq_class n2 = s.exact_coefficient(j).norm();
      mpz_class bound;
      mpz_ui_pow_ui(bound.get_mpz_t(), static_cast<unsigned long>(j + 3), 8);
      ok = sgn(n2) > 0 && n2 <= mpq_class(bound);
    } else {
      const double a = std::abs(s.coefficient(j));
      ok = a > 0.0 && a <= std::pow(static_cast<double>(j + 3), 4.0);
    }
    if (!ok) {
      rep.ok = false;
      rep.first_violation = j;
      break;
    }
  }
  return rep;
}

}  // namespace padelab
