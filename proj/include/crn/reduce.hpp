#pragma once

#include "crn/model.hpp"

namespace crn {

struct EmptyKeepSet : Error {
  using Error::Error;
};

/// One reaction of a reduced system: projected complexes plus the
/// eliminated-reactant exponents folded into a time-varying rate.
struct ReducedReaction {
  std::size_t origin = 0;  // index in the source network
  Complex reactant;        // projected, indices into kept_species order
  Complex product;
  double base_rate = 1.0;
  double delay_tau = 0.0;
  /// eliminated species index (original numbering) -> reactant exponent.
  std::map<std::size_t, int> modulation;
};

struct ReducedSystem {
  SpeciesSet kept_species;                // original indices
  std::vector<std::size_t> kept_order;    // original index per local slot
  std::vector<ReducedReaction> reactions;
  std::vector<std::size_t> dropped;       // reactions with both projections empty

  std::size_t local_index(std::size_t original) const;
};

ReducedSystem reduce_on(const ReactionNetwork& net, const SpeciesSet& keep);

/// Exact rank of the projected reaction vectors over the kept species.
std::size_t reduced_subspace_dim(const ReducedSystem& rs);

struct ReducedConservativity {
  bool conservative = false;  // dim S~ < |W|
  std::size_t reduced_dim = 0;
  std::size_t w_size = 0;
};

ReducedConservativity is_reduced_conservative(const ReactionNetwork& net,
                                              const SpeciesSet& w);

/// Text rendering with rate annotations like "k*X2^1".
std::string reduced_to_string(const ReactionNetwork& net,
                              const ReducedSystem& rs);

}  // namespace crn
