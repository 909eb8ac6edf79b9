#include "crn/reduce.hpp"

#include <sstream>

#include "crn/rational.hpp"
#include "crn/siphon.hpp"

namespace crn {

std::size_t ReducedSystem::local_index(std::size_t original) const {
  for (std::size_t i = 0; i < kept_order.size(); ++i)
    if (kept_order[i] == original) return i;
  throw Error("species not kept by reduction");
}

ReducedSystem reduce_on(const ReactionNetwork& net, const SpeciesSet& keep) {
  if (keep.empty()) throw EmptyKeepSet("keep set must be nonempty");
  for (std::size_t j : keep)
    if (j >= net.n_species())
      throw UnknownSpecies("species index out of range in keep set");

  ReducedSystem rs;
  rs.kept_species = keep;
  rs.kept_order.assign(keep.begin(), keep.end());

  auto project = [&](const Complex& c) {
    Complex out;
    for (const auto& [j, k] : c.coeffs)
      if (keep.count(j)) out.coeffs[rs.local_index(j)] = k;
    return out;
  };

  for (std::size_t i = 0; i < net.n_reactions(); ++i) {
    const auto& r = net.reactions[i];
    Complex lhs = project(r.reactant);
    Complex rhs = project(r.product);
    if (lhs.empty() && rhs.empty()) {
      rs.dropped.push_back(i);
      continue;
    }
    ReducedReaction rr;
    rr.origin = i;
    rr.reactant = std::move(lhs);
    rr.product = std::move(rhs);
    rr.base_rate = r.rate_k;
    rr.delay_tau = r.delay_tau;
    for (const auto& [j, k] : r.reactant.coeffs)
      if (!keep.count(j)) rr.modulation[j] = k;
    rs.reactions.push_back(std::move(rr));
  }
  return rs;
}

std::size_t reduced_subspace_dim(const ReducedSystem& rs) {
  if (rs.reactions.empty()) return 0;
  RatMatrix m(rs.kept_order.size(), RatVector(rs.reactions.size(), Rat(0)));
  for (std::size_t i = 0; i < rs.reactions.size(); ++i) {
    for (const auto& [j, c] : rs.reactions[i].product.coeffs)
      m[j][i] += c;
    for (const auto& [j, c] : rs.reactions[i].reactant.coeffs)
      m[j][i] -= c;
  }
  return rank(m);
}

ReducedConservativity is_reduced_conservative(const ReactionNetwork& net,
                                              const SpeciesSet& w) {
  if (!is_semilocking(net, w))
    throw NotSemilocking("W is not a semilocking set");
  ReducedConservativity rc;
  rc.w_size = w.size();
  rc.reduced_dim = reduced_subspace_dim(reduce_on(net, w));
  rc.conservative = rc.reduced_dim < rc.w_size;
  return rc;
}

std::string reduced_to_string(const ReactionNetwork& net,
                              const ReducedSystem& rs) {
  auto render = [&](const Complex& c) {
    if (c.empty()) return std::string("0");
    std::ostringstream os;
    bool first = true;
    for (const auto& [local, k] : c.coeffs) {
      if (!first) os << " + ";
      first = false;
      if (k != 1) os << k << " ";
      os << net.species[rs.kept_order[local]].name;
    }
    return os.str();
  };
  std::ostringstream os;
  for (const auto& rr : rs.reactions) {
    os << render(rr.reactant) << " -> " << render(rr.product) << " [k="
       << rr.base_rate;
    for (const auto& [j, e] : rr.modulation)
      os << "*" << net.species[j].name << "^" << e;
    os << ", tau=" << rr.delay_tau << "]\n";
  }
  return os.str();
}

}  // namespace crn
