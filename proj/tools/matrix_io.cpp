#include "matrix_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace ptlab::cli {

namespace {

double finite_number(const Json& j, const char* what) {
    if (!j.is_number()) throw ParseError(std::string(what) + " is not a number");
    const double x = j.get<double>();
    if (!std::isfinite(x)) throw ParseError(std::string(what) + " is not finite");
    return x;
}

Index size_field(const Json& doc, const char* key) {
    if (!doc.contains(key)) throw ParseError(std::string("matrix document lacks '") + key + "'");
    const Json& v = doc.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw ParseError(std::string("'") + key + "' must be a nonnegative integer");
    }
    return static_cast<Index>(v.get<long long>());
}

}  // namespace

Complex complex_from_json(const Json& j) {
    if (j.is_number()) return {finite_number(j, "value"), 0.0};
    if (!j.is_array() || j.size() != 2) throw ParseError("complex entry must be [re, im]");
    return {finite_number(j[0], "real part"), finite_number(j[1], "imaginary part")};
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

ComplexMatrix matrix_from_json(const Json& doc) {
    if (!doc.is_object()) throw ParseError("matrix document must be a JSON object");
    const Index rows = size_field(doc, "rows");
    const Index cols = size_field(doc, "cols");
    if (!doc.contains("data") || !doc.at("data").is_array()) {
        throw ParseError("matrix document lacks a 'data' array");
    }
    const Json& data = doc.at("data");
    if (static_cast<Index>(data.size()) != rows) {
        throw ParseError("'data' has " + std::to_string(data.size()) + " rows, expected " +
                         std::to_string(rows));
    }
    ComplexMatrix m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        const Json& row = data[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
            throw ParseError("row " + std::to_string(i) + " does not have " + std::to_string(cols) +
                             " entries");
        }
        for (Index k = 0; k < cols; ++k) {
            const Json& e = row[static_cast<std::size_t>(k)];
            if (!e.is_array() || e.size() != 2) {
                throw ParseError("entry (" + std::to_string(i) + ", " + std::to_string(k) +
                                 ") must be [re, im]");
            }
            m(i, k) = complex_from_json(e);
        }
    }
    return m;
}

Json matrix_to_json(const ComplexMatrix& m) {
    Json data = Json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Index k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
        data.push_back(std::move(row));
    }
    Json doc;
    doc["rows"] = m.rows();
    doc["cols"] = m.cols();
    doc["data"] = std::move(data);
    return doc;
}

Json parse_json_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    if (text.rfind("\xEF\xBB\xBF", 0) == 0) throw ParseError("'" + path + "' starts with a BOM");
    return parse_json_text(text);
}

ComplexMatrix read_matrix_file(const std::string& path) {
    return matrix_from_json(read_json_file(path));
}

std::string matrix_to_csv(const ComplexMatrix& m) {
    std::ostringstream os;
    os << "row,col,re,im\n";
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index k = 0; k < m.cols(); ++k) {
            os << i << ',' << k << ',' << format_real(m(i, k).real()) << ','
               << format_real(m(i, k).imag()) << '\n';
        }
    }
    return os.str();
}

}  // namespace ptlab::cli
