#include "crn/model.hpp"

#include <algorithm>
#include <sstream>

namespace crn {

std::size_t ReactionNetwork::species_index(const std::string& name) const {
  for (const auto& s : species)
    if (s.name == name) return s.index;
  throw UnknownSpecies("unknown species '" + name + "'");
}

bool ReactionNetwork::has_species(const std::string& name) const {
  return std::any_of(species.begin(), species.end(),
                     [&](const Species& s) { return s.name == name; });
}

SpeciesSet ReactionNetwork::species_of_block(std::size_t p) const {
  if (!partition) throw NoPartition("network has no subnetwork partition");
  if (p >= partition->size())
    throw BlockOutOfRange("block index " + std::to_string(p) +
                          " out of range");
  SpeciesSet out;
  for (std::size_t ri : (*partition)[p]) {
    for (const auto& [j, c] : reactions[ri].reactant.coeffs) out.insert(j);
    for (const auto& [j, c] : reactions[ri].product.coeffs) out.insert(j);
  }
  return out;
}

std::vector<std::vector<std::size_t>> ReactionNetwork::effective_blocks()
    const {
  if (partition) return *partition;
  std::vector<std::size_t> all(n_reactions());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return {all};
}

std::vector<std::string> validate_network(const ReactionNetwork& net) {
  std::vector<std::string> diags;
  if (net.reactions.empty()) diags.push_back("network has no reactions");

  std::set<std::string> names;
  for (const auto& s : net.species) {
    if (!names.insert(s.name).second)
      diags.push_back("duplicate species name " + s.name);
  }
  for (std::size_t j = 0; j < net.species.size(); ++j) {
    if (net.species[j].index != j)
      diags.push_back("species " + net.species[j].name +
                      " has non-contiguous index");
  }

  std::vector<bool> used(net.n_species(), false);
  for (std::size_t i = 0; i < net.reactions.size(); ++i) {
    const auto& r = net.reactions[i];
    if (r.rate_k <= 0)
      diags.push_back("reaction " + std::to_string(i) + " has k <= 0");
    if (r.delay_tau < 0)
      diags.push_back("reaction " + std::to_string(i) + " has tau < 0");
    if (r.reactant == r.product)
      diags.push_back("reaction " + std::to_string(i) + " is a self-loop");
    for (const auto& [j, c] : r.reactant.coeffs) {
      if (j >= net.n_species())
        diags.push_back("reaction " + std::to_string(i) +
                        " references unknown species index");
      else
        used[j] = true;
      if (c < 1)
        diags.push_back("reaction " + std::to_string(i) +
                        " has nonpositive coefficient");
    }
    for (const auto& [j, c] : r.product.coeffs) {
      if (j >= net.n_species())
        diags.push_back("reaction " + std::to_string(i) +
                        " references unknown species index");
      else
        used[j] = true;
      if (c < 1)
        diags.push_back("reaction " + std::to_string(i) +
                        " has nonpositive coefficient");
    }
  }
  for (std::size_t j = 0; j < used.size(); ++j) {
    if (!used[j]) diags.push_back("species " + net.species[j].name + " unused");
  }

  if (net.partition) {
    std::vector<int> seen(net.n_reactions(), 0);
    for (const auto& block : *net.partition) {
      for (std::size_t ri : block) {
        if (ri >= net.n_reactions()) {
          diags.push_back("partition references unknown reaction index " +
                          std::to_string(ri));
          continue;
        }
        if (seen[ri]++)
          diags.push_back("partition blocks overlap at reaction " +
                          std::to_string(ri));
      }
    }
    for (std::size_t ri = 0; ri < seen.size(); ++ri) {
      if (!seen[ri])
        diags.push_back("partition does not cover reaction " +
                        std::to_string(ri));
    }
  }
  return diags;
}

std::string complex_to_string(const ReactionNetwork& net, const Complex& c) {
  if (c.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [j, k] : c.coeffs) {
    if (!first) os << " + ";
    first = false;
    if (k != 1) os << k << " ";
    os << net.species[j].name;
  }
  return os.str();
}

std::string species_set_to_string(const ReactionNetwork& net,
                                  const SpeciesSet& w) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (std::size_t j : w) {
    if (!first) os << ",";
    first = false;
    os << net.species[j].name;
  }
  os << "}";
  return os.str();
}

namespace {

void write_double(std::ostringstream& os, double v) {
  std::ostringstream tmp;
  tmp.precision(17);
  tmp << v;
  os << tmp.str();
}

void write_reaction(std::ostringstream& os, const ReactionNetwork& net,
                    const Reaction& r, const std::string& indent) {
  os << indent << complex_to_string(net, r.reactant) << " -> "
     << complex_to_string(net, r.product) << " [k=";
  write_double(os, r.rate_k);
  os << ", tau=";
  write_double(os, r.delay_tau);
  os << "]\n";
}

}  // namespace

std::string serialize_network(const ReactionNetwork& net) {
  std::ostringstream os;
  os << "species";
  for (const auto& s : net.species) os << " " << s.name;
  os << "\n";
  if (net.partition) {
    for (std::size_t p = 0; p < net.partition->size(); ++p) {
      const std::string name = p < net.block_names.size()
                                   ? net.block_names[p]
                                   : "B" + std::to_string(p);
      os << "subnet " << name << " {\n";
      for (std::size_t ri : (*net.partition)[p])
        write_reaction(os, net, net.reactions[ri], "  ");
      os << "}\n";
    }
  } else {
    for (const auto& r : net.reactions) write_reaction(os, net, r, "");
  }
  return os.str();
}

}  // namespace crn
