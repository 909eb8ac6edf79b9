#include "crn/siphon.hpp"

#include <algorithm>
#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace crn {
namespace {

void check_subset(const ReactionNetwork& net, const SpeciesSet& w) {
  if (w.empty()) throw EmptySet("W must be nonempty");
  for (std::size_t j : w)
    if (j >= net.n_species())
      throw UnknownSpecies("species index out of range in W");
}

std::uint64_t mask_of(const SpeciesSet& w) {
  std::uint64_t m = 0;
  for (std::size_t j : w) m |= std::uint64_t(1) << j;
  return m;
}

SpeciesSet set_of(std::uint64_t mask, std::size_t n) {
  SpeciesSet s;
  for (std::size_t j = 0; j < n; ++j)
    if (mask >> j & 1) s.insert(j);
  return s;
}

struct ReactionMasks {
  std::vector<std::uint64_t> reac, prod;
};

ReactionMasks reaction_masks(const ReactionNetwork& net) {
  ReactionMasks rm;
  for (const auto& r : net.reactions) {
    rm.reac.push_back(mask_of(r.reactant.support()));
    rm.prod.push_back(mask_of(r.product.support()));
  }
  return rm;
}

bool semilocking_mask(const ReactionMasks& rm, std::uint64_t w) {
  for (std::size_t i = 0; i < rm.reac.size(); ++i) {
    if ((w & rm.prod[i]) && !(w & rm.reac[i])) return false;
  }
  return true;
}

}  // namespace

bool is_semilocking(const ReactionNetwork& net, const SpeciesSet& w) {
  check_subset(net, w);
  for (const auto& r : net.reactions) {
    bool hits_product = false;
    for (const auto& [j, c] : r.product.coeffs)
      if (w.count(j)) {
        hits_product = true;
        break;
      }
    if (!hits_product) continue;
    bool hits_reactant = false;
    for (const auto& [j, c] : r.reactant.coeffs)
      if (w.count(j)) {
        hits_reactant = true;
        break;
      }
    if (!hits_reactant) return false;
  }
  return true;
}

BoundaryClass classify_boundary(const ReactionNetwork& net,
                                const SpeciesSet& w) {
  if (!is_semilocking(net, w))
    throw NotSemilocking("W is not a semilocking set");
  const std::size_t d = face_dimension(net, w);
  const std::size_t s = subspace_basis(stoich_matrix(net)).dim();
  BoundaryClass b;
  b.face_dim = d;
  if (d == 0)
    b.kind = BoundaryKind::Vertex;
  else if (s >= 1 && d == s - 1)
    b.kind = BoundaryKind::Facet;
  else
    b.kind = BoundaryKind::Other;
  return b;
}

ComplementPartition partition_complement(const ReactionNetwork& net,
                                         const SpeciesSet& w) {
  if (!is_semilocking(net, w))
    throw NotSemilocking("W is not a semilocking set");
  ComplementPartition part;
  SpeciesSet comp;
  for (std::size_t j = 0; j < net.n_species(); ++j)
    if (!w.count(j)) comp.insert(j);

  // tf: net change in a reaction whose supports both avoid W.
  for (std::size_t i = 0; i < net.n_reactions(); ++i) {
    const auto& r = net.reactions[i];
    bool free_reaction = true;
    for (const auto& [j, c] : r.reactant.coeffs)
      if (w.count(j)) free_reaction = false;
    for (const auto& [j, c] : r.product.coeffs)
      if (w.count(j)) free_reaction = false;
    if (!free_reaction) continue;
    for (std::size_t j : comp) {
      if (r.product.coeff(j) != r.reactant.coeff(j) && !part.tf.count(j)) {
        part.tf.insert(j);
        part.tf_witness[j] = i;
      }
    }
  }
  // sr: coordinate not identically zero on S ∩ ker pi_W.
  const auto kernel = face_kernel_basis(net, w);
  for (std::size_t j : comp) {
    if (part.tf.count(j)) continue;
    bool moved = false;
    for (const auto& v : kernel)
      if (v[j] != 0) {
        moved = true;
        break;
      }
    if (moved)
      part.sr.insert(j);
    else
      part.tr.insert(j);
  }
  return part;
}

std::vector<SpeciesSet> enumerate_semilocking_serial(const ReactionNetwork& net,
                                                     std::size_t max_n) {
  const std::size_t n = net.n_species();
  if (n > max_n)
    throw TooLarge("network has " + std::to_string(n) +
                   " species, enumeration cap is " + std::to_string(max_n));
  const ReactionMasks rm = reaction_masks(net);
  std::vector<SpeciesSet> out;
  for (std::uint64_t w = 1; w < (std::uint64_t(1) << n); ++w) {
    if (semilocking_mask(rm, w)) out.push_back(set_of(w, n));
  }
  std::sort(out.begin(), out.end(),
            [](const SpeciesSet& a, const SpeciesSet& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  return out;
}

std::vector<SpeciesSet> enumerate_semilocking_masks(const ReactionNetwork& net,
                                                    std::size_t max_n) {
  const std::size_t n = net.n_species();
  if (n > max_n)
    throw TooLarge("network has " + std::to_string(n) +
                   " species, enumeration cap is " + std::to_string(max_n));
  const ReactionMasks rm = reaction_masks(net);
  const std::uint64_t total = std::uint64_t(1) << n;

  std::vector<std::uint64_t> hits;
#ifdef _OPENMP
#pragma omp parallel
  {
    std::vector<std::uint64_t> local;
#pragma omp for schedule(static)
    for (std::int64_t w = 1; w < static_cast<std::int64_t>(total); ++w) {
      if (semilocking_mask(rm, static_cast<std::uint64_t>(w)))
        local.push_back(static_cast<std::uint64_t>(w));
    }
#pragma omp critical
    hits.insert(hits.end(), local.begin(), local.end());
  }
#else
  for (std::uint64_t w = 1; w < total; ++w)
    if (semilocking_mask(rm, w)) hits.push_back(w);
#endif

  std::vector<SpeciesSet> sets;
  sets.reserve(hits.size());
  for (std::uint64_t w : hits) sets.push_back(set_of(w, n));
  std::sort(sets.begin(), sets.end(),
            [](const SpeciesSet& a, const SpeciesSet& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  return sets;
}

std::vector<SemilockingReport> enumerate_semilocking(const ReactionNetwork& net,
                                                     std::size_t max_n) {
  const std::size_t n = net.n_species();
  const auto sets = enumerate_semilocking_masks(net, max_n);

  std::vector<SemilockingReport> reports(sets.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(sets.size()); ++i) {
    SemilockingReport rep;
    rep.members = sets[i];
    rep.trivial = sets[i].size() == n;
    rep.boundary = classify_boundary(net, sets[i]);
    rep.complement = partition_complement(net, sets[i]);
    reports[i] = std::move(rep);
  }
  return reports;
}

std::vector<SpeciesSet> minimal_semilocking(const ReactionNetwork& net,
                                            std::size_t max_n) {
  const auto all = enumerate_semilocking_serial(net, max_n);
  std::vector<SpeciesSet> minimal;
  for (const auto& w : all) {
    bool has_proper_subset = false;
    for (const auto& m : minimal) {
      if (m.size() < w.size() &&
          std::includes(w.begin(), w.end(), m.begin(), m.end())) {
        has_proper_subset = true;
        break;
      }
    }
    if (!has_proper_subset) minimal.push_back(w);
  }
  return minimal;
}

}  // namespace crn
