#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace crn {

/// Base for every error this library throws.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : Error {
  using Error::Error;
};
struct NonPositiveRate : ParseError {
  using ParseError::ParseError;
};
struct NegativeDelay : ParseError {
  using ParseError::ParseError;
};
struct DuplicateSpeciesDecl : ParseError {
  using ParseError::ParseError;
};
struct EmptyNetwork : ParseError {
  using ParseError::ParseError;
};
struct UnknownSpecies : Error {
  using Error::Error;
};
struct NoPartition : Error {
  using Error::Error;
};
struct BlockOutOfRange : Error {
  using Error::Error;
};
struct TooLarge : Error {
  using Error::Error;
};

using SpeciesSet = std::set<std::size_t>;

struct Species {
  std::size_t index = 0;
  std::string name;
};

/// Sparse nonnegative-integer stoichiometric vector. The empty map is the
/// zero complex, written "0" in the text format.
struct Complex {
  std::map<std::size_t, int> coeffs;  // species index -> coefficient >= 1

  int coeff(std::size_t j) const {
    auto it = coeffs.find(j);
    return it == coeffs.end() ? 0 : it->second;
  }
  SpeciesSet support() const {
    SpeciesSet s;
    for (const auto& [j, c] : coeffs) s.insert(j);
    return s;
  }
  bool empty() const { return coeffs.empty(); }
  bool operator==(const Complex&) const = default;
  auto operator<=>(const Complex&) const = default;
};

struct Reaction {
  Complex reactant;
  Complex product;
  double rate_k = 1.0;
  double delay_tau = 0.0;
};

struct ReactionNetwork {
  std::vector<Species> species;
  std::vector<Reaction> reactions;
  /// Optional subnetwork partition: disjoint reaction-index blocks
  /// covering all reactions.
  std::optional<std::vector<std::vector<std::size_t>>> partition;
  std::vector<std::string> block_names;

  std::size_t n_species() const { return species.size(); }
  std::size_t n_reactions() const { return reactions.size(); }

  std::size_t species_index(const std::string& name) const;
  bool has_species(const std::string& name) const;

  /// S^(p): union of reactant/product supports over block p's reactions.
  SpeciesSet species_of_block(std::size_t p) const;

  /// Effective partition: the declared one, or a single implicit block.
  std::vector<std::vector<std::size_t>> effective_blocks() const;
};

std::vector<std::string> validate_network(const ReactionNetwork& net);

/// Canonical text rendering; reparses to a structurally equal network.
std::string serialize_network(const ReactionNetwork& net);

std::string complex_to_string(const ReactionNetwork& net, const Complex& c);

std::string species_set_to_string(const ReactionNetwork& net,
                                  const SpeciesSet& w);

ReactionNetwork parse_network(const std::string& text);

}  // namespace crn
