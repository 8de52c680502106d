#include <cmath>

#include "padelab/errors.hpp"
#include "padelab/series.hpp"

namespace padelab {

Json series_to_json(const PowerSeries& s) {
  const auto len = s.known_len();
  if (!len) throw InvalidParameter("cannot serialize an unbounded series");
  const bool exact = s.is_exact();
  Json c = Json::array();
  for (std::size_t j = 0; j < *len; ++j) {
    c.push_back(exact ? number_to_json(s.exact_coefficient(j)) : number_to_json(s.coefficient(j)));
  }
  const SeriesMeta& meta = s.meta();
  Json poles = Json::array();
  if (meta.poles) {
    for (const auto& z : meta.poles->points()) poles.push_back(number_to_json(z, z.is_exact()));
  }
  Json doc;
  doc["c"] = std::move(c);
  doc["exact"] = exact;
  doc["radius_hint"] = s.radius_hint();
  doc["meta"] = Json{{"family", to_string(meta.family)}, {"k_max", meta.k_max}, {"poles", poles}};
  return doc;
}

PowerSeries series_from_json(const Json& doc) {
  if (!doc.is_object()) throw ParseError("series: top level must be an object");
  if (!doc.contains("c") || !doc["c"].is_array()) {
    throw ParseError("series: field 'c' missing or not an array");
  }
  bool exact = false;
  if (doc.contains("exact")) {
    if (!doc["exact"].is_boolean()) throw ParseError("series: field 'exact' must be a boolean");
    exact = doc["exact"].get<bool>();
  }
  double radius = 1.0;
  if (doc.contains("radius_hint")) {
    radius = json_to_double(doc["radius_hint"], "radius_hint");
    if (!(radius > 0.0)) throw ParseError("series: field 'radius_hint' must be positive");
  }

  SeriesMeta meta;
  if (doc.contains("meta")) {
    const Json& m = doc["meta"];
    if (!m.is_object()) throw ParseError("series: field 'meta' must be an object");
    if (m.contains("family")) {
      if (!m["family"].is_string()) throw ParseError("series: field 'meta.family' must be a string");
      meta.family = series_family_from_string(m["family"].get<std::string>());
    }
    if (m.contains("k_max")) {
      if (!m["k_max"].is_number_integer()) {
        throw ParseError("series: field 'meta.k_max' must be an integer");
      }
      meta.k_max = m["k_max"].get<int>();
    }
    if (m.contains("poles")) {
      if (!m["poles"].is_array()) throw ParseError("series: field 'meta.poles' must be an array");
      std::vector<Number> points;
      for (std::size_t i = 0; i < m["poles"].size(); ++i) {
        points.push_back(number_from_json(m["poles"][i], "meta.poles[" + std::to_string(i) + "]"));
      }
      const int first = meta.family == SeriesFamily::gammel ? 1 : 2;
      meta.poles = PoleSequence::explicit_list(std::move(points), first);
    }
  }

  const Json& c = doc["c"];
  if (exact) {
    std::vector<QComplex> coeffs;
    coeffs.reserve(c.size());
    for (std::size_t j = 0; j < c.size(); ++j) {
      const std::string field = "c[" + std::to_string(j) + "]";
      Number v = number_from_json(c[j], field);
      if (!v.exact) throw ParseError("series: field '" + field + "' must be exact in an exact series");
      coeffs.push_back(std::move(*v.exact));
    }
    return PowerSeries::exact(std::move(coeffs), radius, std::move(meta));
  }
  std::vector<Complex> coeffs;
  coeffs.reserve(c.size());
  for (std::size_t j = 0; j < c.size(); ++j) {
    coeffs.push_back(number_from_json(c[j], "c[" + std::to_string(j) + "]").value);
  }
  return PowerSeries::floating(std::move(coeffs), radius, std::move(meta));
}

void save_series(const PowerSeries& s, const std::string& path) {
  write_json_file(path, series_to_json(s));
}

PowerSeries load_series(const std::string& path) {
  const Json doc = read_json_file(path);
  try {
    return series_from_json(doc);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace padelab
