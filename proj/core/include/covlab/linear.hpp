#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace covlab {

using Rat = boost::multiprecision::cpp_rational;

std::string rat_to_string(const Rat& r);   // "p" or "p/q"
Rat rat_from_string(const std::string& s);

// Decides whether the homogeneous system Ax = 0 admits a nonzero nonnegative
// solution, entirely in exact rational arithmetic.  Maximizes the coordinate
// sum subject to x_i <= 1 with an exact simplex (Bland's rule); a positive
// optimum yields the witness.
struct LinearSolveResult {
    bool only_zero = true;
    std::vector<Rat> witness;  // nonzero solution when !only_zero
};

LinearSolveResult nonneg_solve(const std::vector<std::vector<Rat>>& rows, int nvars);

}  // namespace covlab
