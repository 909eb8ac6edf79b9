#pragma once

#include <cstdint>
#include <variant>

#include "crn/model.hpp"
#include "crn/stoich.hpp"

namespace crn {

struct NotSemilocking : Error {
  using Error::Error;
};
struct EmptySet : Error {
  using Error::Error;
};

enum class BoundaryKind { Vertex, Facet, Other };

struct BoundaryClass {
  BoundaryKind kind = BoundaryKind::Other;
  std::size_t face_dim = 0;  // dim(S ∩ ker pi_W)

  bool operator==(const BoundaryClass&) const = default;
};

/// W^c split per the tf / sr / tr taxonomy, precedence tf > sr > tr.
struct ComplementPartition {
  SpeciesSet tf;  // totally free: changed by a reaction living inside W^c
  SpeciesSet sr;  // semi-restricted: moved by some v in S vanishing on W
  SpeciesSet tr;  // totally restricted
  /// Reaction index witnessing membership for each tf species.
  std::map<std::size_t, std::size_t> tf_witness;
};

struct SemilockingReport {
  SpeciesSet members;
  bool trivial = false;  // W = S
  BoundaryClass boundary;
  ComplementPartition complement;
};

constexpr std::size_t kDefaultMaxN = 24;

bool is_semilocking(const ReactionNetwork& net, const SpeciesSet& w);

BoundaryClass classify_boundary(const ReactionNetwork& net,
                                const SpeciesSet& w);

ComplementPartition partition_complement(const ReactionNetwork& net,
                                         const SpeciesSet& w);

/// All semilocking sets with classification, ordered by size then
/// lexicographically on indices. OpenMP-parallel lattice scan.
std::vector<SemilockingReport> enumerate_semilocking(
    const ReactionNetwork& net, std::size_t max_n = kDefaultMaxN);

/// The parallel lattice scan alone, without boundary classification.
/// Same ordering as enumerate_semilocking.
std::vector<SpeciesSet> enumerate_semilocking_masks(
    const ReactionNetwork& net, std::size_t max_n = kDefaultMaxN);

/// Serial reference enumeration: the brute-force Definition-8 scan without
/// pruning. Kept as the oracle for the parallel kernel.
std::vector<SpeciesSet> enumerate_semilocking_serial(
    const ReactionNetwork& net, std::size_t max_n = kDefaultMaxN);

std::vector<SpeciesSet> minimal_semilocking(const ReactionNetwork& net,
                                            std::size_t max_n = kDefaultMaxN);

}  // namespace crn
