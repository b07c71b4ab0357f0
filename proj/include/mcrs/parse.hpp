#ifndef MCRS_PARSE_HPP
#define MCRS_PARSE_HPP

#include <array>
#include <string>
#include <vector>

#include "mcrs/linalg.hpp"
#include "mcrs/real.hpp"

namespace mcrs {

// Exact value syntax: integers "3", rationals "-7/2", quadratic surds
// "(1+sqrt 5)/2", "(3-2 sqrt 2)/4", "sqrt 2", "-sqrt 2/2", "2 sqrt 5/3".
// Whitespace around punctuation is ignored. Malformed input -> parse error.
Real parse_real(const std::string& s);

// Comma-separated list of values in the syntax above.
std::vector<Real> parse_real_list(const std::string& s);

// Whitespace/comma-separated row-major integer entries: 4 entries -> 2x2,
// 9 entries -> 3x3.
IMat parse_matrix(const std::string& s);

// Built-in operators addressable by name:
//   fibonacci = [[1,1],[1,0]]
//   B         = [[0,1,1],[0,0,1],[1,0,0]]        (cyclic-shift companion)
//   E1        = [[1,1,1],[1,1,0],[1,0,0]]        (3D Fibonacci operator)
//   E2        = (E1 - Id)^-1 = [[0,1,0],[1,-1,1],[0,1,-1]]
//   golden2d  = E1^2 = [[3,2,1],[2,2,1],[1,1,1]]
// Unknown name -> parse error.
IMat named_operator(const std::string& name);

// "(1,2) (2,3)" -> list of integer pairs. At least one pair required.
std::vector<std::array<Int, 2>> parse_int_pairs(const std::string& s);

}  // namespace mcrs

#endif
