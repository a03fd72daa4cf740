#pragma once

#include "varjacobi/problem.hpp"

#include <stdexcept>
#include <string>

namespace varjacobi {

struct ProblemParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Accepted document shape (unknown keys rejected):
//   {
//     "order": int, "dim": int, "interval": [a, b],
//     "blocks": { "Mij": [coeff_0, coeff_1, ...], ... }   // 0 <= i <= j <= k
//   }
// Each coeff_d (the t^d coefficient) is a number (dim = 1), a flat row-major
// array of dim*dim numbers, or an array of dim rows. Throws ProblemParseError
// with a field path on malformed input.
RawCoefficients parse_problem_json(const std::string& text);
RawCoefficients load_problem_file(const std::string& path);

std::string problem_to_json(const RawCoefficients& raw);

}  // namespace varjacobi
