#pragma once

#include <optional>

#include "crn/model.hpp"

namespace crn {

struct NotWeaklyReversible : Error {
  using Error::Error;
};
struct NonPositiveConcentration : Error {
  using Error::Error;
};

/// Directed graph on the distinct complexes; one edge per reaction,
/// weighted by its rate constant.
struct ComplexGraph {
  std::vector<Complex> nodes;
  struct Edge {
    std::size_t from, to;
    double weight;
    std::size_t reaction;
  };
  std::vector<Edge> edges;

  std::size_t node_of(const Complex& c) const;
};

ComplexGraph complex_graph(const ReactionNetwork& net);

std::vector<std::vector<std::size_t>> linkage_classes(const ComplexGraph& g);

bool is_weakly_reversible(const ComplexGraph& g);

/// m - l - s with m complexes, l linkage classes, s = dim S.
std::size_t deficiency(const ReactionNetwork& net);

struct Equilibrium {
  std::vector<double> concentrations;
  bool complex_balanced = false;
  double residual = 0.0;  // max over complexes of |inflow - outflow|
};

constexpr double kBalanceTol = 1e-9;

/// Evaluates both sides of the complex balance condition at x.
Equilibrium is_complex_balanced_at(const ReactionNetwork& net,
                                   const std::vector<double>& x,
                                   double tol = kBalanceTol);

/// Laplacian-kernel + log-linear least squares search for a complex
/// balanced equilibrium. nullopt when the residual check fails.
std::optional<Equilibrium> find_complex_balanced_equilibrium(
    const ReactionNetwork& net, double tol = kBalanceTol);

/// Right-hand side of the delayed dynamics at a constant state
/// (delay-free at constant histories).
std::vector<double> mass_action_rhs(const ReactionNetwork& net,
                                    const std::vector<double>& x);

}  // namespace crn
