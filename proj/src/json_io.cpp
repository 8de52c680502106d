#include "padelab/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "padelab/errors.hpp"
#include "padelab/exact_linalg.hpp"

namespace padelab {

namespace {

void write_double(std::ostream& out, double v) {
  if (std::isnan(v)) {
    out << "\"nan\"";
  } else if (std::isinf(v)) {
    out << (v > 0 ? "\"inf\"" : "\"-inf\"");
  } else {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf;
  }
}

void write_value(std::ostream& out, const Json& v, int indent) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  const std::string close(static_cast<std::size_t>(indent), ' ');
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out << ",\n";
        first = false;
        out << pad << Json(it.key()).dump() << ": ";
        write_value(out, it.value(), indent + 2);
      }
      out << "\n" << close << "}";
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out << "[]";
        return;
      }
      // Short arrays of scalars stay on one line, e.g. [re, im] pairs.
      bool scalars = v.size() <= 4;
      for (const auto& e : v) scalars = scalars && !e.is_structured();
      if (scalars) {
        out << "[";
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (i) out << ", ";
          write_value(out, v[i], indent);
        }
        out << "]";
        return;
      }
      out << "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out << ",\n";
        out << pad;
        write_value(out, v[i], indent + 2);
      }
      out << "\n" << close << "]";
      return;
    }
    case Json::value_t::number_float:
      write_double(out, v.get<double>());
      return;
    default:
      out << v.dump();
  }
}

}  // namespace

void write_json(std::ostream& out, const Json& value) {
  write_value(out, value, 0);
  out << "\n";
}

std::string dump_json(const Json& value) {
  std::ostringstream out;
  write_json(out, value);
  return out.str();
}

double json_to_double(const Json& value, const std::string& field) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) {
    const auto& s = value.get_ref<const std::string&>();
    if (s == "inf") return HUGE_VAL;
    if (s == "-inf") return -HUGE_VAL;
  }
  throw ParseError("field '" + field + "': expected a number");
}

Json number_to_json(const QComplex& value) {
  return Json::array({rational_to_string(value.real()), rational_to_string(value.imag())});
}

Json number_to_json(const Complex& value) { return Json::array({value.real(), value.imag()}); }

Json number_to_json(const Number& value, bool exact) {
  if (exact && value.exact) return number_to_json(*value.exact);
  return number_to_json(value.value);
}

namespace {

struct Part {
  double value;
  std::optional<mpq_class> exact;
};

Part part_from_json(const Json& v, const std::string& field) {
  if (v.is_string()) {
    try {
      mpq_class q = parse_rational(v.get<std::string>());
      return {to_double(q), q};
    } catch (const ParseError& e) {
      throw ParseError("field '" + field + "': " + e.what());
    }
  }
  if (v.is_number()) {
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ParseError("field '" + field + "': non-finite value");
    return {d, std::nullopt};
  }
  throw ParseError("field '" + field + "': expected a number or rational string");
}

}  // namespace

Number number_from_json(const Json& value, const std::string& field) {
  if (value.is_array()) {
    if (value.size() != 2) throw ParseError("field '" + field + "': expected [re, im] pair");
    const Part re = part_from_json(value[0], field + "[0]");
    const Part im = part_from_json(value[1], field + "[1]");
    Number out(Complex(re.value, im.value));
    if (re.exact && im.exact) out.exact = QComplex(*re.exact, *im.exact);
    return out;
  }
  const Part re = part_from_json(value, field);
  Number out(Complex(re.value, 0.0));
  if (re.exact) out.exact = QComplex(*re.exact);
  return out;
}

Json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t limit = std::min<std::size_t>(e.byte, text.size());
    for (std::size_t i = 0; i + 1 < limit; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(source + ":" + std::to_string(line) + ":" + std::to_string(column) +
                     ": malformed JSON");
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParameter("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str(), path);
}

void write_json_file(const std::string& path, const Json& value) {
  std::ofstream out(path);
  if (!out) throw InvalidParameter("cannot write '" + path + "'");
  write_json(out, value);
}

Json matrix_to_json(const Eigen::MatrixXcd& m) {
  Json data = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) data.push_back(number_to_json(Complex(m(i, j))));
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Json matrix_to_json(const RationalMatrix& m) {
  Json data = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) data.push_back(number_to_json(m(i, j)));
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Eigen::MatrixXcd matrix_from_json(const Json& value) {
  if (!value.is_object() || !value.contains("rows") || !value.contains("cols") ||
      !value.contains("data")) {
    throw ParseError("matrix dump: expected object with rows, cols, data");
  }
  const auto rows = value.at("rows").get<Eigen::Index>();
  const auto cols = value.at("cols").get<Eigen::Index>();
  const Json& data = value.at("data");
  if (rows < 0 || cols < 0 || !data.is_array() ||
      data.size() != static_cast<std::size_t>(rows * cols)) {
    throw ParseError("matrix dump: data length does not match rows*cols");
  }
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      const auto k = static_cast<std::size_t>(i * cols + j);
      m(i, j) = number_from_json(data[k], "data[" + std::to_string(k) + "]").value;
    }
  }
  return m;
}

}  // namespace padelab
