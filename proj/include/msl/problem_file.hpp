#pragma once

#include "msl/adapters.hpp"

#include <string>
#include <string_view>

namespace msl {

struct ProblemSpec {
  TauExpression tau;
  BoundaryConditionSpec bc;
};

// TOML problem description. Raw measures live in [interval], [varrho],
// [varsigma], [chi]; [jacobi], [classical], [krein] and [peakon] are
// shortcuts that replace them. Measures are written as
//   atoms = [[x, re, im], ...], density = [[x0, x1, re, im], ...]
// with the imaginary part optional. Malformed input throws ValidationError.
ProblemSpec parse_problem(std::string_view text);
ProblemSpec load_problem(const std::string& path);

}  // namespace msl
