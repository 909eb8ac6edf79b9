#pragma once

#include <optional>

#include "crn/model.hpp"
#include "crn/rational.hpp"

namespace crn {

/// n x r integer matrix, column i = product - reactant of reaction i.
struct StoichMatrix {
  std::size_t n = 0;  // species
  std::size_t r = 0;  // reactions
  RatMatrix entries;  // integer-valued rationals

  RatVector column(std::size_t i) const {
    RatVector v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = entries[j][i];
    return v;
  }
};

struct SubspaceBasis {
  std::vector<RatVector> vectors;
  std::size_t dim() const { return vectors.size(); }
};

StoichMatrix stoich_matrix(const ReactionNetwork& net);

/// Exact basis of the stoichiometric subspace (column space).
SubspaceBasis subspace_basis(const StoichMatrix& m);

/// Exact basis of S^perp (left null space); dim S + dim S^perp = n.
SubspaceBasis conservation_basis(const StoichMatrix& m);

/// Basis of {v in S : v_j = 0 for all j in W}. The face-dimension kernel;
/// its size decides vertex/facet classification.
std::vector<RatVector> face_kernel_basis(const ReactionNetwork& net,
                                         const SpeciesSet& w);

/// dim(S ∩ ker pi_W).
std::size_t face_dimension(const ReactionNetwork& net, const SpeciesSet& w);

/// dim of the projection pi_W(S); reported alongside the kernel quantity
/// in verbose output.
std::size_t projected_dimension(const ReactionNetwork& net,
                                const SpeciesSet& w);

struct NonnegConservation {
  bool exists = false;
  RatVector witness;  // nonzero, >= 0, orthogonal to every reaction vector
};

NonnegConservation has_nonnegative_conservation(const StoichMatrix& m);

}  // namespace crn
