#pragma once

#include <string>

#include <json.hpp>

#include "ptlab/numerics.hpp"

namespace ptlab::cli {

using Json = nlohmann::ordered_json;

/// Malformed JSON or a document that does not describe a matrix.
class ParseError : public Error {
public:
    using Error::Error;
};

/// {"rows": R, "cols": C, "data": [[[re, im], ...], ...]}, row-major.
ComplexMatrix matrix_from_json(const Json& doc);
Json matrix_to_json(const ComplexMatrix& m);

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);

ComplexMatrix read_matrix_file(const std::string& path);
Json read_json_file(const std::string& path);
Json parse_json_text(const std::string& text);

/// One line per entry: row, col, re, im (17 significant digits).
std::string matrix_to_csv(const ComplexMatrix& m);

}  // namespace ptlab::cli
