#pragma once

#include <iosfwd>
#include <string>

#include <Eigen/Dense>
#include <json.hpp>

#include "padelab/number.hpp"

namespace padelab {

class RationalMatrix;

using Json = nlohmann::ordered_json;

/// Writes JSON with stable key order, two-space indentation and every
/// floating value printed with 17 significant digits. Non-finite values are
/// written as the strings "inf", "-inf" and "nan".
void write_json(std::ostream& out, const Json& value);
std::string dump_json(const Json& value);

/// Double or the strings produced by write_json for non-finite values.
double json_to_double(const Json& value, const std::string& field);

/// [re, im] pair: decimal/rational strings when exact, numbers otherwise.
Json number_to_json(const Number& value, bool exact);
Json number_to_json(const QComplex& value);
Json number_to_json(const Complex& value);

/// Inverse of number_to_json. Strings parse as exact rationals; a pair of
/// strings yields an exact Number. Non-finite entries are rejected.
Number number_from_json(const Json& value, const std::string& field);

/// Parses text as JSON, reporting syntax errors with line and column.
Json parse_json_text(const std::string& text, const std::string& source);
Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& value);

/// Matrix dump format: {"rows": r, "cols": c, "data": [[re, im], ...]} row-major.
Json matrix_to_json(const Eigen::MatrixXcd& m);
Json matrix_to_json(const RationalMatrix& m);
Eigen::MatrixXcd matrix_from_json(const Json& value);

}  // namespace padelab
