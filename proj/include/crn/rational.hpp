#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace crn {

using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

/// Dense rational matrix, row-major. Desk scale (n <= ~40), so no sparsity.
using RatMatrix = std::vector<std::vector<Rat>>;
using RatVector = std::vector<Rat>;

inline std::string rat_to_string(const Rat& q) {
  return q.str();
}

/// Reduced row echelon form in place. Returns the pivot column indices
/// (their count is the rank). Exact arithmetic, no tolerances.
std::vector<std::size_t> rref(RatMatrix& m);

std::size_t rank(RatMatrix m);

/// Basis of the right null space {x : m x = 0}. Vectors have size cols(m).
std::vector<RatVector> nullspace(const RatMatrix& m);

/// Subset of the columns of m forming a basis of its column space.
std::vector<RatVector> column_space_basis(const RatMatrix& m);

RatMatrix transpose(const RatMatrix& m);

Rat dot(const RatVector& a, const RatVector& b);

/// True iff there is a nonzero x >= 0 with m x = 0 (componentwise).
/// Exact phase-1 simplex over the rationals; witness stored when found.
bool nonnegative_kernel_vector(const RatMatrix& m, RatVector& witness);

}  // namespace crn
