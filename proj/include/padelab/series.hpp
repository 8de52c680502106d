#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "padelab/json_io.hpp"
#include "padelab/number.hpp"

namespace padelab {

enum class PoleScheme { harmonic_repeated, explicit_list };

/// Value at 0-based position p of the ordering 1/4, 1/4, 1/5, 1/4, 1/5, 1/6, ...
/// (block b lists 1/4 ... 1/(b+3)).
QComplex harmonic_repeated_value(std::size_t position);

/// Pole points z_k indexed from first_index (2 for the counterexample family,
/// 1 for the Gammel family).
class PoleSequence {
public:
  PoleSequence() = default;

  static PoleSequence harmonic_repeated(std::size_t count, int first_index = 2);
  static PoleSequence explicit_list(std::vector<Number> points, int first_index = 2);

  PoleScheme scheme() const { return scheme_; }
  int first_index() const { return first_index_; }
  int last_index() const { return first_index_ + static_cast<int>(points_.size()) - 1; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  bool covers(int k) const { return k >= first_index_ && k <= last_index(); }
  const std::vector<Number>& points() const { return points_; }

  /// z_k; throws OutOfRange outside [first_index, last_index].
  const Number& at(int k) const;

  /// True when every point in [k_from, k_to] is an exact rational.
  bool exact(int k_from, int k_to) const;

private:
  PoleScheme scheme_ = PoleScheme::explicit_list;
  int first_index_ = 2;
  std::vector<Number> points_;
};

/// Throws InvalidParameter unless 0 < |z_k| < 1/3 for k_from <= k <= k_to.
void require_admissible_poles(const PoleSequence& poles, int k_from, int k_to);

enum class SeriesFamily { mascarenhas, gammel, custom };

std::string to_string(SeriesFamily family);
SeriesFamily series_family_from_string(const std::string& name);

struct SeriesMeta {
  SeriesFamily family = SeriesFamily::custom;
  int k_max = 0;
  std::optional<PoleSequence> poles;
};

/// Coefficient stream c_0, c_1, ... with optional exact rational values.
/// Immutable; copies share the underlying storage.
class PowerSeries {
public:
  using ExactGenerator = std::function<QComplex(std::size_t)>;
  using FloatGenerator = std::function<Complex(std::size_t)>;

  static PowerSeries exact(std::vector<QComplex> coeffs, double radius_hint, SeriesMeta meta = {});
  static PowerSeries floating(std::vector<Complex> coeffs, double radius_hint,
                              SeriesMeta meta = {});
  /// Unbounded streams; the generators must be pure.
  static PowerSeries exact_stream(ExactGenerator gen, double radius_hint, SeriesMeta meta = {});
  static PowerSeries float_stream(FloatGenerator gen, double radius_hint, SeriesMeta meta = {});

  /// Number of stored coefficients; nullopt for an unbounded stream.
  std::optional<std::size_t> known_len() const;
  bool provides(std::size_t count) const;
  bool is_exact() const;
  double radius_hint() const;
  const SeriesMeta& meta() const;

  Complex coefficient(std::size_t j) const;
  QComplex exact_coefficient(std::size_t j) const;
  Number number(std::size_t j) const;
  std::vector<Complex> coefficients(std::size_t count) const;
  std::vector<QComplex> exact_coefficients(std::size_t count) const;

private:
  struct Impl;
  explicit PowerSeries(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  void check_index(std::size_t j) const;

  std::shared_ptr<const Impl> impl_;
};

/// Largest supported k_max for the counterexample family (2^21 coefficients).
inline constexpr int kMaxBlockIndex = 20;

/// Block length parameter n_k = 2^k - 2.
std::size_t mascarenhas_degree(int k);

/// Number of coefficients c_0 ... c_{2^{k_max+1}-4}.
std::size_t mascarenhas_length(int k_max);

/// c_j of the counterexample series: c_0 = 1, and for each k >= 2
/// c_{2^k-3} = 16^k, c_j = 16^k z_k^{2^{k+1}-4-j} for 2^k-2 <= j <= 2^{k+1}-4.
Number mascarenhas_coeff(int k_max, const PoleSequence& poles, std::size_t j);

/// Counterexample series materialized through the complete block k_max.
/// Exact iff every z_k (2 <= k <= k_max) is rational. Radius hint 1.
PowerSeries build_mascarenhas_series(int k_max, const PoleSequence& poles);

/// Gammel-type series 1 + sum_k alpha_k sum_{n=n_k}^{2n_k} (z/z_k)^n with
/// n_k = 2^k - 1, k >= 1.
struct GammelParams {
  std::vector<Number> alphas;  // alpha_1, alpha_2, ...
  PoleSequence poles;          // indexed from 1
};

/// alpha_k = 4^{-k^2}, k = 1..count.
std::vector<Number> default_gammel_alphas(std::size_t count);

PowerSeries build_gammel_series(const GammelParams& params, std::size_t j_max);

struct SeriesValue {
  Complex value;
  std::size_t terms;  // number of coefficients summed
};

/// Finite series: plain Horner evaluation. Unbounded streams: partial sums
/// until the growth-bound tail sum_{j>N} (j+3)^4 |z|^j falls below
/// rel_tol * |partial sum|.
SeriesValue eval_series(const PowerSeries& s, Complex z, double rel_tol,
                        std::size_t max_terms = 100000);

struct CoefficientBoundReport {
  bool ok = true;
  std::size_t first = 0;
  std::size_t last = 0;
  std::optional<std::size_t> first_violation;
  bool j1_equality = false;  // |c_1| == (1+3)^4
};

/// Checks 0 < |c_j| <= (j+3)^4 for first <= j <= last, exactly when the
/// series is exact.
CoefficientBoundReport check_coefficient_bound(const PowerSeries& s, std::size_t first,
                                               std::size_t last);

Json series_to_json(const PowerSeries& s);
PowerSeries series_from_json(const Json& doc);
void save_series(const PowerSeries& s, const std::string& path);
PowerSeries load_series(const std::string& path);

}  // namespace padelab
