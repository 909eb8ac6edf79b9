#include "crn/stoich.hpp"

namespace crn {

StoichMatrix stoich_matrix(const ReactionNetwork& net) {
  StoichMatrix m;
  m.n = net.n_species();
  m.r = net.n_reactions();
  m.entries.assign(m.n, RatVector(m.r, Rat(0)));
  for (std::size_t i = 0; i < m.r; ++i) {
    const auto& rx = net.reactions[i];
    for (const auto& [j, c] : rx.product.coeffs) m.entries[j][i] += c;
    for (const auto& [j, c] : rx.reactant.coeffs) m.entries[j][i] -= c;
  }
  return m;
}

SubspaceBasis subspace_basis(const StoichMatrix& m) {
  return {column_space_basis(m.entries)};
}

SubspaceBasis conservation_basis(const StoichMatrix& m) {
  // Left null space of the n x r matrix = right null space of its transpose.
  return {nullspace(transpose(m.entries))};
}

std::vector<RatVector> face_kernel_basis(const ReactionNetwork& net,
                                         const SpeciesSet& w) {
  for (std::size_t j : w) {
    if (j >= net.n_species())
      throw UnknownSpecies("species index out of range in W");
  }
  const StoichMatrix m = stoich_matrix(net);
  const auto basis = subspace_basis(m).vectors;  // vectors of length n
  if (basis.empty()) return {};
  // Solve for combinations c with sum_k c_k basis[k][j] = 0 for all j in W.
  RatMatrix rows;
  for (std::size_t j : w) {
    RatVector row(basis.size());
    for (std::size_t k = 0; k < basis.size(); ++k) row[k] = basis[k][j];
    rows.push_back(std::move(row));
  }
  std::vector<RatVector> combos;
  if (rows.empty()) {
    // W empty: the whole subspace.
    combos.resize(basis.size());
    for (std::size_t k = 0; k < basis.size(); ++k) {
      combos[k].assign(basis.size(), Rat(0));
      combos[k][k] = 1;
    }
  } else {
    combos = nullspace(rows);
  }
  std::vector<RatVector> out;
  for (const auto& c : combos) {
    RatVector v(net.n_species(), Rat(0));
    for (std::size_t k = 0; k < basis.size(); ++k)
      for (std::size_t j = 0; j < v.size(); ++j) v[j] += c[k] * basis[k][j];
    out.push_back(std::move(v));
  }
  return out;
}

std::size_t face_dimension(const ReactionNetwork& net, const SpeciesSet& w) {
  return face_kernel_basis(net, w).size();
}

std::size_t projected_dimension(const ReactionNetwork& net,
                                const SpeciesSet& w) {
  const StoichMatrix m = stoich_matrix(net);
  RatMatrix proj(m.n, RatVector(m.r, Rat(0)));
  for (std::size_t j : w)
    for (std::size_t i = 0; i < m.r; ++i) proj[j][i] = m.entries[j][i];
  return rank(proj);
}

NonnegConservation has_nonnegative_conservation(const StoichMatrix& m) {
  // Constraints: a . column_i = 0 for every reaction column.
  RatMatrix rows = transpose(m.entries);  // r x n
  NonnegConservation result;
  RatVector witness;
  if (nonnegative_kernel_vector(rows, witness)) {
    result.exists = true;
    result.witness = std::move(witness);
  }
  return result;
}

}  // namespace crn
