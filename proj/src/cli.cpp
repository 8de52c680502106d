#include "padelab/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "padelab/analysis.hpp"
#include "padelab/errors.hpp"
#include "padelab/exact_linalg.hpp"
#include "padelab/pade.hpp"
#include "padelab/series.hpp"

namespace padelab::cli {

namespace {

struct Output {
  std::string path;
  std::string format = "json";
};

std::size_t max_n_from_env() {
  const char* raw = std::getenv("PADE_LAB_MAX_N");
  if (!raw || !*raw) return kDefaultMaxN;
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(raw, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != std::string(raw).size() || v == 0) {
    throw InvalidParameter(std::string("PADE_LAB_MAX_N must be a positive integer, got '") + raw + "'");
  }
  return static_cast<std::size_t>(v);
}

void require_n(std::size_t n, std::size_t cap) {
  if (n > cap) {
    throw InvalidParameter("n = " + std::to_string(n) + " exceeds PADE_LAB_MAX_N = " + std::to_string(cap));
  }
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

std::vector<Number> parse_numbers(const std::string& text, const std::string& flag) {
  std::vector<Number> out;
  for (const auto& item : split(text, ',')) {
    try {
      out.push_back(Number::parse(item));
    } catch (const ParseError& e) {
      throw ParseError(flag + ": " + e.what());
    }
  }
  if (out.empty()) throw ParseError(flag + ": empty list");
  return out;
}

/// "harmonic" or a comma list; a single value is used for every index.
PoleSequence parse_poles(const std::string& text, int first_index, int last_index) {
  const std::size_t count = static_cast<std::size_t>(last_index - first_index + 1);
  if (text == "harmonic" || text == "harmonic-repeated") {
    return PoleSequence::harmonic_repeated(count, first_index);
  }
  std::vector<Number> points = parse_numbers(text, "--poles");
  if (points.size() == 1) points.assign(count, points.front());
  if (points.size() < count) {
    throw InvalidParameter("--poles: need " + std::to_string(count) + " values for z_" +
                           std::to_string(first_index) + " .. z_" + std::to_string(last_index) +
                           ", got " + std::to_string(points.size()));
  }
  return PoleSequence::explicit_list(std::move(points), first_index);
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    std::size_t pos = 0;
    if (dots == std::string::npos) {
      const int k = std::stoi(text, &pos);
      if (pos != text.size()) throw std::invalid_argument(text);
      return {k, k};
    }
    const std::string lo = text.substr(0, dots);
    const std::string hi = text.substr(dots + 2);
    const int a = std::stoi(lo, &pos);
    if (pos != lo.size()) throw std::invalid_argument(text);
    const int b = std::stoi(hi, &pos);
    if (pos != hi.size()) throw std::invalid_argument(text);
    if (a > b) throw InvalidParameter("--k-range: empty range " + text);
    return {a, b};
  } catch (const std::invalid_argument&) {
    throw ParseError("--k-range: expected a..b, got '" + text + "'");
  } catch (const std::out_of_range&) {
    throw ParseError("--k-range: value out of range in '" + text + "'");
  }
}

void emit(const Output& o, const std::string& text, std::ostream& out) {
  if (o.path.empty() || o.path == "-") {
    out << text;
    return;
  }
  std::ofstream f(o.path, std::ios::binary);
  if (!f) throw InvalidParameter("cannot write '" + o.path + "'");
  f << text;
  if (!f) throw InvalidParameter("write to '" + o.path + "' failed");
}

std::string csv_number_columns(const std::vector<std::vector<Complex>>& cols,
                               const std::vector<std::string>& names) {
  std::ostringstream s;
  s << "j";
  for (const auto& n : names) s << ',' << n << "_re," << n << "_im";
  s << '\n';
  std::size_t rows = 0;
  for (const auto& c : cols) rows = std::max(rows, c.size());
  for (std::size_t j = 0; j < rows; ++j) {
    s << j;
    for (const auto& c : cols) {
      if (j < c.size()) {
        s << ',' << format_double(c[j].real()) << ',' << format_double(c[j].imag());
      } else {
        s << ",,";
      }
    }
    s << '\n';
  }
  return s.str();
}

void add_output_options(CLI::App* cmd, Output& o) {
  cmd->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("-o,--output", o.path, "output file (default stdout)");
}

// ---------------------------------------------------------------------------

struct GenerateArgs {
  std::string family = "mascarenhas";
  int k_max = 2;
  std::string poles = "harmonic";
  std::string alphas;
  std::optional<std::size_t> j_max;
  Output out;
};

int cmd_generate(const GenerateArgs& g, std::ostream& out) {
  PowerSeries s = [&] {
    const SeriesFamily family = series_family_from_string(g.family);
    if (family == SeriesFamily::mascarenhas) {
      if (g.k_max < 2 || g.k_max > kMaxBlockIndex) {
        throw InvalidParameter("--k-max must be in 2.." + std::to_string(kMaxBlockIndex));
      }
      const PoleSequence poles = parse_poles(g.poles, 2, g.k_max);
      require_admissible_poles(poles, 2, g.k_max);
      return build_mascarenhas_series(g.k_max, poles);
    }
    if (family == SeriesFamily::gammel) {
      if (g.alphas.empty()) throw InvalidParameter("--alphas is required for the gammel family");
      GammelParams params;
      params.alphas = parse_numbers(g.alphas, "--alphas");
      const int blocks = static_cast<int>(params.alphas.size());
      if (blocks > 30) throw InvalidParameter("--alphas: at most 30 blocks");
      params.poles = parse_poles(g.poles, 1, blocks);
      const std::size_t j_max = g.j_max ? *g.j_max : (std::size_t{1} << (blocks + 1)) - 2;
      return build_gammel_series(params, j_max);
    }
    throw InvalidParameter("--family must be mascarenhas or gammel");
  }();

  if (g.out.format == "csv") {
    const auto n = *s.known_len();
    emit(g.out, csv_number_columns({s.coefficients(n)}, {"c"}), out);
  } else {
    emit(g.out, dump_json(series_to_json(s)), out);
  }
  return kExitOk;
}

struct ApproximateArgs {
  std::string series;
  std::size_t n = 0;
  std::string mode = "classical";
  double tol = 1e-12;
  bool exact = false;
  bool poles = false;
  std::optional<double> radius;
  PoleOptions pole_options;
  Output out;
};

int cmd_approximate(const ApproximateArgs& a, std::size_t cap, std::ostream& out) {
  if (!(a.tol > 0.0 && a.tol < 1.0)) throw InvalidParameter("--tol must be in (0, 1)");
  require_n(a.n, cap);
  const PowerSeries s = load_series(a.series);
  const PadeApproximant r = a.mode == "robust" ? robust_pade(s, a.n, a.tol)
                                               : classical_pade(s, a.n, a.exact);
  if (a.out.format == "csv") {
    emit(a.out, csv_number_columns({r.a, r.b}, {"a", "b"}), out);
    return kExitOk;
  }
  Json doc = approximant_to_json(r);
  if (a.poles) {
    const PoleReport report = find_poles(r, a.radius ? *a.radius : s.radius_hint(), a.pole_options, &s);
    doc["pole_report"] = pole_report_to_json(report);
  }
  emit(a.out, dump_json(doc), out);
  return kExitOk;
}

struct VerifyArgs {
  std::string k_range = "2..5";
  std::string poles = "harmonic";
  int exact_up_to = 4;
  Output out;
};

int cmd_verify(const VerifyArgs& v, std::size_t cap, std::ostream& out) {
  const auto [k_lo, k_hi] = parse_range(v.k_range);
  if (k_lo < 2) throw InvalidParameter("--k-range must start at k >= 2");
  if (k_hi > kMaxBlockIndex) throw InvalidParameter("--k-range must end at k <= " + std::to_string(kMaxBlockIndex));
  require_n(mascarenhas_degree(k_hi), cap);
  const PoleSequence poles = parse_poles(v.poles, 2, k_hi);
  require_admissible_poles(poles, 2, k_hi);

  std::vector<TheoremReport> reports;
  for (int k = k_lo; k <= k_hi; ++k) reports.push_back(verify_theorem(k, poles, k <= v.exact_up_to));

  if (v.out.format == "csv") {
    emit(v.out, theorem_reports_to_csv(reports), out);
  } else {
    Json arr = Json::array();
    for (const auto& r : reports) arr.push_back(theorem_report_to_json(r));
    emit(v.out, dump_json(arr), out);
  }
  const bool all = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.pass; });
  return all ? kExitOk : kExitFailedCheck;
}

struct ScanArgs {
  int k_max = 4;
  std::string scheme = "harmonic-repeated";
  std::string points;
  bool float_only = false;
  Output out;
};

int cmd_scan(const ScanArgs& a, std::size_t cap, std::ostream& out) {
  if (a.k_max < 2 || a.k_max > kMaxBlockIndex) {
    throw InvalidParameter("--k-max must be in 2.." + std::to_string(kMaxBlockIndex));
  }
  require_n(mascarenhas_degree(a.k_max), cap);
  const PoleSequence poles = parse_poles(a.scheme, 2, a.k_max);
  ScanOptions options;
  options.exact = !a.float_only;
  if (!a.points.empty()) options.extra_points = parse_numbers(a.points, "--points");
  const DivergenceScan scan = divergence_scan(a.k_max, poles, options);
  emit(a.out, a.out.format == "csv" ? scan_to_csv(scan) : dump_json(scan_to_json(scan)), out);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pade approximants and the spurious-pole counterexample", "pade_lab"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "write a series file");
  generate->add_option("--family", gen.family, "mascarenhas or gammel")
      ->check(CLI::IsMember({"mascarenhas", "gammel"}));
  generate->add_option("--k-max", gen.k_max, "last block (mascarenhas)");
  generate->add_option("--poles", gen.poles, "harmonic, or a comma list of z_k (one value is repeated)");
  generate->add_option("--alphas", gen.alphas, "comma list alpha_1, alpha_2, ... (gammel)");
  generate->add_option("--j-max", gen.j_max, "last coefficient index (gammel)");
  add_output_options(generate, gen.out);

  ApproximateArgs appr;
  auto* approximate = app.add_subcommand("approximate", "compute the (n, n) approximant of a series file");
  approximate->add_option("--series", appr.series, "series JSON file")->required();
  approximate->add_option("--n", appr.n, "degree")->required();
  approximate->add_option("--mode", appr.mode, "classical or robust")
      ->check(CLI::IsMember({"classical", "robust"}));
  approximate->add_option("--tol", appr.tol, "relative singular value threshold (robust)");
  approximate->add_flag("--exact", appr.exact, "exact elimination for rational series (classical)");
  approximate->add_flag("--poles", appr.poles, "append a pole report");
  approximate->add_option("--radius", appr.radius, "analyticity radius for the pole report");
  approximate->add_option("--delta-doublet", appr.pole_options.delta_doublet, "pole-zero doublet distance");
  approximate->add_option("--tol-spurious", appr.pole_options.tol_spurious, "relative numerator threshold");
  add_output_options(approximate, appr.out);

  VerifyArgs ver;
  auto* verify = app.add_subcommand("verify", "check the counterexample claims block by block");
  verify->add_option("--k-range", ver.k_range, "a..b");
  verify->add_option("--poles", ver.poles, "harmonic, or a comma list z_2, z_3, ...");
  verify->add_option("--exact-up-to", ver.exact_up_to, "exact elimination for k up to this value");
  add_output_options(verify, ver.out);

  ScanArgs sc;
  auto* scan = app.add_subcommand("scan", "evaluate r_{n_k} at the repeated pole points");
  scan->add_option("--k-max", sc.k_max, "last block");
  scan->add_option("--scheme", sc.scheme, "harmonic-repeated, or a comma list z_2, z_3, ...");
  scan->add_option("--points", sc.points, "extra evaluation points, comma separated");
  scan->add_flag("--float", sc.float_only, "skip exact elimination");
  add_output_options(scan, sc.out);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const std::size_t cap = max_n_from_env();
    if (generate->parsed()) return cmd_generate(gen, out);
    if (approximate->parsed()) return cmd_approximate(appr, cap, out);
    if (verify->parsed()) return cmd_verify(ver, cap, out);
    return cmd_scan(sc, cap, out);
  } catch (const NumericalError& e) {
    err << "pade_lab: numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const RankDeficiency& e) {
    err << "pade_lab: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const NonUniqueDenominator& e) {
    err << "pade_lab: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const Error& e) {
    err << "pade_lab: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace padelab::cli
