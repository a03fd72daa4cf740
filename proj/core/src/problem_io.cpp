#include "varjacobi/problem_io.hpp"

#include <json.hpp>

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

namespace varjacobi {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ProblemParseError(path.empty() ? what : path + ": " + what);
}

long long require_positive_int(const json& j, const std::string& path) {
  if (!j.is_number_integer() && !j.is_number_unsigned())
    fail(path, "expected a positive integer");
  long long v = j.get<long long>();
  if (v <= 0) fail(path, "expected a positive integer");
  return v;
}

double require_number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

// A coefficient matrix is a plain number (dim 1), a flat row-major array of
// dim*dim numbers, or an array of dim rows of dim numbers.
Eigen::MatrixXd parse_coeff(const json& j, int n, const std::string& path) {
  Eigen::MatrixXd m(n, n);
  if (j.is_number()) {
    if (n != 1) fail(path, "scalar coefficient but dim > 1");
    m(0, 0) = j.get<double>();
    return m;
  }
  if (!j.is_array()) fail(path, "expected a number or an array");
  if (!j.empty() && j.front().is_array()) {
    if (static_cast<int>(j.size()) != n)
      fail(path, "expected " + std::to_string(n) + " rows");
    for (int r = 0; r < n; ++r) {
      const json& row = j[r];
      if (!row.is_array() || static_cast<int>(row.size()) != n)
        fail(path + "[" + std::to_string(r) + "]",
             "expected a row of " + std::to_string(n) + " numbers");
      for (int c = 0; c < n; ++c)
        m(r, c) = require_number(
            row[c], path + "[" + std::to_string(r) + "][" + std::to_string(c) +
                        "]");
    }
    return m;
  }
  if (static_cast<int>(j.size()) != n * n)
    fail(path, "expected " + std::to_string(n * n) +
                   " numbers (flat row-major) or " + std::to_string(n) +
                   " rows");
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      m(r, c) =
          require_number(j[r * n + c], path + "[" + std::to_string(r * n + c) +
                                           "]");
  return m;
}

json coeff_to_json(const Eigen::MatrixXd& m) {
  if (m.rows() == 1 && m.cols() == 1) return json(m(0, 0));
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

RawCoefficients parse_problem_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ProblemParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("", "top-level value must be an object");
  for (const auto& item : doc.items()) {
    const std::string& key = item.key();
    if (key != "order" && key != "dim" && key != "interval" && key != "blocks")
      fail(key, "unknown key");
  }
  for (const char* key : {"order", "dim", "interval", "blocks"})
    if (!doc.contains(key)) fail("", std::string("missing key '") + key + "'");

  RawCoefficients raw;
  long long order = require_positive_int(doc["order"], "order");
  if (order > 9) fail("order", "problem files support order <= 9");
  raw.order_k = static_cast<int>(order);
  long long dim = require_positive_int(doc["dim"], "dim");
  raw.dim_n = static_cast<int>(dim);

  const json& interval = doc["interval"];
  if (!interval.is_array() || interval.size() != 2)
    fail("interval", "expected [a, b]");
  raw.a = require_number(interval[0], "interval[0]");
  raw.b = require_number(interval[1], "interval[1]");
  if (!(raw.a < raw.b)) fail("interval", "requires a < b");

  const json& blocks = doc["blocks"];
  if (!blocks.is_object()) fail("blocks", "expected an object");
  for (const auto& item : blocks.items()) {
    const std::string& key = item.key();
    std::string path = "blocks." + key;
    if (key.size() != 3 || key[0] != 'M' ||
        !std::isdigit(static_cast<unsigned char>(key[1])) ||
        !std::isdigit(static_cast<unsigned char>(key[2])))
      fail(path, "block keys look like \"Mij\" with digits i <= j");
    int i = key[1] - '0';
    int j = key[2] - '0';
    if (i > j || j > raw.order_k)
      fail(path, "requires 0 <= i <= j <= order");
    const json& coeffs = item.value();
    if (!coeffs.is_array()) fail(path, "expected an array of coefficients");
    std::vector<Eigen::MatrixXd> cs;
    cs.reserve(coeffs.size());
    for (int d = 0; d < static_cast<int>(coeffs.size()); ++d)
      cs.push_back(parse_coeff(coeffs[d], raw.dim_n,
                               path + "[" + std::to_string(d) + "]"));
    raw.blocks.emplace(std::make_pair(i, j),
                       MatrixPolynomial(raw.dim_n, raw.dim_n, cs));
  }
  return raw;
}

RawCoefficients load_problem_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ProblemParseError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem_json(buf.str());
}

std::string problem_to_json(const RawCoefficients& raw) {
  json doc;
  doc["order"] = raw.order_k;
  doc["dim"] = raw.dim_n;
  doc["interval"] = json::array({raw.a, raw.b});
  json blocks = json::object();
  for (const auto& [ij, poly] : raw.blocks) {
    char key[8];
    std::snprintf(key, sizeof key, "M%d%d", ij.first, ij.second);
    json cs = json::array();
    for (int d = 0; d <= poly.degree(); ++d) cs.push_back(coeff_to_json(poly.coeff(d)));
    blocks[key] = std::move(cs);
  }
  doc["blocks"] = std::move(blocks);
  return doc.dump(2);
}

}  // namespace varjacobi
