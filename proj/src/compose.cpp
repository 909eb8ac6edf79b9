#include "crn/compose.hpp"

#include <algorithm>
#include <sstream>

#include "crn/balance.hpp"
#include "crn/reduce.hpp"
#include "crn/stoich.hpp"

namespace crn {

std::string rule_name(Rule r) {
  switch (r) {
    case Rule::R1: return "R1";
    case Rule::R2: return "R2";
    case Rule::R3: return "R3";
    case Rule::R4: return "R4";
    case Rule::R5: return "R5";
    case Rule::R6: return "R6";
    case Rule::R7: return "R7";
    case Rule::R8: return "R8";
    case Rule::TrivialConservation: return "TrivialConservation";
    case Rule::Undecided: return "Undecided";
  }
  return "?";
}

std::string rule_citation(Rule r) {
  switch (r) {
    case Rule::R1: return "facet-type restriction outside the intersecting set";
    case Rule::R2: return "all restrictions vertex-type, combined boundary a vertex";
    case Rule::R3: return "vertex/empty restrictions with constant complement species";
    case Rule::R4: return "vertex/empty restrictions, complement fully unrestricted";
    case Rule::R5: return "every restriction facet-type or empty";
    case Rule::R6: return "a member species confined to facet-type restrictions";
    case Rule::R7: return "complement splits into free and constant species only";
    case Rule::R8: return "reduced system is conservative on W";
    case Rule::TrivialConservation:
      return "nonnegative conservation law excludes the origin";
    case Rule::Undecided: return "no rule applies";
  }
  return "";
}

namespace {

ReactionNetwork build_block_net(const ReactionNetwork& net,
                                const std::vector<std::size_t>& block,
                                std::vector<std::size_t>& local_to_global) {
  SpeciesSet used;
  for (std::size_t ri : block) {
    for (const auto& [j, c] : net.reactions[ri].reactant.coeffs) used.insert(j);
    for (const auto& [j, c] : net.reactions[ri].product.coeffs) used.insert(j);
  }
  local_to_global.assign(used.begin(), used.end());
  std::map<std::size_t, std::size_t> to_local;
  ReactionNetwork sub;
  for (std::size_t j : local_to_global) {
    to_local[j] = sub.species.size();
    sub.species.push_back({sub.species.size(), net.species[j].name});
  }
  for (std::size_t ri : block) {
    const auto& r = net.reactions[ri];
    Reaction sr;
    sr.rate_k = r.rate_k;
    sr.delay_tau = r.delay_tau;
    for (const auto& [j, c] : r.reactant.coeffs)
      sr.reactant.coeffs[to_local[j]] = c;
    for (const auto& [j, c] : r.product.coeffs)
      sr.product.coeffs[to_local[j]] = c;
    sub.reactions.push_back(std::move(sr));
  }
  return sub;
}

}  // namespace

Decomposition decompose(const ReactionNetwork& net) {
  if (!net.partition) throw NoPartition("network has no subnetwork partition");
  Decomposition dec;
  dec.blocks = *net.partition;
  std::map<std::size_t, int> appearances;
  for (std::size_t p = 0; p < dec.blocks.size(); ++p) {
    dec.block_species.push_back(net.species_of_block(p));
    for (std::size_t j : dec.block_species.back()) appearances[j]++;
    std::vector<std::size_t> l2g;
    ReactionNetwork sub = build_block_net(net, dec.blocks[p], l2g);
    dec.block_dims.push_back(subspace_basis(stoich_matrix(sub)).dim());
    dec.block_nets.push_back(std::move(sub));
    dec.local_to_global.push_back(std::move(l2g));
  }
  for (const auto& [j, count] : appearances)
    if (count >= 2) dec.intersecting.insert(j);
  return dec;
}

Restriction restrict_semilocking(const Decomposition& dec, const SpeciesSet& w,
                                 std::size_t p) {
  if (p >= dec.blocks.size())
    throw BlockOutOfRange("block index out of range");
  Restriction res;
  res.block_dim = dec.block_dims[p];
  for (std::size_t j : w)
    if (dec.block_species[p].count(j)) res.members.insert(j);
  if (res.members.empty()) {
    res.kind = RestrictionKind::Empty;
    return res;
  }
  // Translate into block-local indices.
  SpeciesSet local;
  const auto& l2g = dec.local_to_global[p];
  for (std::size_t j : res.members) {
    auto it = std::find(l2g.begin(), l2g.end(), j);
    local.insert(static_cast<std::size_t>(it - l2g.begin()));
  }
  const auto& sub = dec.block_nets[p];
  if (!is_semilocking(sub, local))
    throw InternalInconsistency(
        "nonempty restriction is not semilocking in its block");
  res.face_dim = face_dimension(sub, local);
  res.facet_like = res.block_dim >= 1 && res.face_dim == res.block_dim - 1;
  if (res.face_dim == 0)
    res.kind = RestrictionKind::VertexType;
  else if (res.facet_like)
    res.kind = RestrictionKind::FacetType;
  else
    res.kind = RestrictionKind::OtherType;
  return res;
}

CaseAnalysis case_label(const Decomposition& dec, const SpeciesSet& w) {
  CaseAnalysis ca;
  ca.w = w;
  for (std::size_t p = 0; p < dec.blocks.size(); ++p)
    ca.restrictions.push_back(restrict_semilocking(dec, w, p));

  bool any_facet = false, any_other = false, any_empty = false,
       any_vertex = false;
  for (const auto& r : ca.restrictions) {
    switch (r.kind) {
      case RestrictionKind::FacetType: any_facet = true; break;
      case RestrictionKind::OtherType: any_other = true; break;
      case RestrictionKind::Empty: any_empty = true; break;
      case RestrictionKind::VertexType: any_vertex = true; break;
    }
  }
  if (any_facet)
    ca.label = CaseLabel::CaseI;
  else if (any_other)
    ca.label = CaseLabel::Unclassified;
  else if (!any_empty && any_vertex)
    ca.label = CaseLabel::CaseII;
  else if (any_vertex)
    ca.label = CaseLabel::CaseIII;
  else
    ca.label = CaseLabel::Unclassified;

  for (std::size_t j : w)
    if (dec.intersecting.count(j)) ca.meets_sc = true;

  // Complement split by whether the species touches a block whose
  // restriction is empty.
  std::size_t n = 0;
  for (const auto& sp : dec.block_species)
    for (std::size_t j : sp) n = std::max(n, j + 1);
  for (std::size_t j = 0; j < n; ++j) {
    if (w.count(j)) continue;
    bool in_any = false, in_empty_block = false;
    for (std::size_t p = 0; p < dec.blocks.size(); ++p) {
      if (!dec.block_species[p].count(j)) continue;
      in_any = true;
      if (ca.restrictions[p].kind == RestrictionKind::Empty)
        in_empty_block = true;
    }
    if (!in_any) continue;
    if (in_empty_block)
      ca.cn.insert(j);
    else
      ca.cv.insert(j);
  }
  return ca;
}

namespace {

bool participating_blocks_2d(const CaseAnalysis& ca, std::string& offender) {
  for (std::size_t p = 0; p < ca.restrictions.size(); ++p) {
    const auto& r = ca.restrictions[p];
    if (r.kind == RestrictionKind::Empty) continue;
    if (r.block_dim != 2) {
      offender = "block " + std::to_string(p) + " has dimension " +
                 std::to_string(r.block_dim);
      return false;
    }
  }
  return true;
}

}  // namespace

DischargeRecord apply_rules(const ReactionNetwork& net, const Decomposition& dec,
                            const SemilockingReport& report,
                            const CaseAnalysis& analysis) {
  DischargeRecord rec;
  const SpeciesSet& w = report.members;
  const bool trivial = report.trivial;
  std::string offender;
  const bool blocks_2d = participating_blocks_2d(analysis, offender);

  auto withheld = [&](Rule r) {
    rec.withheld.push_back(rule_name(r) + " withheld for W=" +
                           species_set_to_string(net, w) + ": " + offender);
  };

  // R1..R4 come from statements quantified over nontrivial semilocking
  // sets with W disjoint from S_c.
  if (!trivial && !analysis.meets_sc) {
    if (analysis.label == CaseLabel::CaseI) {
      rec.rule = Rule::R1;
      for (std::size_t p = 0; p < analysis.restrictions.size(); ++p) {
        if (analysis.restrictions[p].kind == RestrictionKind::FacetType) {
          rec.witnesses.push_back("facet-type restriction in block " +
                                  std::to_string(p));
          break;
        }
      }
      return rec;
    }
    if (analysis.label == CaseLabel::CaseII) {
      if (blocks_2d) {
        if (report.boundary.kind == BoundaryKind::Vertex) {
          rec.rule = Rule::R2;
          rec.witnesses.push_back(
              "no nonzero stoichiometric vector vanishes on W");
          return rec;
        }
      } else {
        withheld(Rule::R2);
      }
    }
    if (analysis.label == CaseLabel::CaseIII) {
      if (blocks_2d) {
        if (!analysis.cv.empty()) {
          rec.rule = Rule::R3;
          rec.witnesses.push_back(
              "constant complement species " +
              net.species[*analysis.cv.begin()].name);
          return rec;
        }
        rec.rule = Rule::R4;
        rec.witnesses.push_back("W^cv empty, complement fully unrestricted");
        return rec;
      }
      withheld(analysis.cv.empty() ? Rule::R4 : Rule::R3);
    }
  }

  // R5: every restriction empty or facet-like (block-dimension check, so
  // 1d blocks count).
  {
    bool all_facet_or_empty = true, any_nonempty = false;
    for (const auto& r : analysis.restrictions) {
      if (r.kind == RestrictionKind::Empty) continue;
      any_nonempty = true;
      if (!r.facet_like) all_facet_or_empty = false;
    }
    if (any_nonempty && all_facet_or_empty) {
      rec.rule = Rule::R5;
      for (std::size_t p = 0; p < analysis.restrictions.size(); ++p)
        if (analysis.restrictions[p].kind != RestrictionKind::Empty)
          rec.witnesses.push_back("block " + std::to_string(p) +
                                  " restriction facet-like");
      return rec;
    }
  }

  // R6: some member species appears only in facet-like restrictions.
  for (std::size_t j : w) {
    bool in_any = false, all_facet = true;
    for (std::size_t p = 0; p < analysis.restrictions.size(); ++p) {
      if (!dec.block_species[p].count(j)) continue;
      in_any = true;
      if (!analysis.restrictions[p].facet_like) all_facet = false;
    }
    if (in_any && all_facet) {
      rec.rule = Rule::R6;
      rec.witnesses.push_back("species " + net.species[j].name +
                              " lies only in facet-like restrictions");
      return rec;
    }
  }

  // R7: complement made of free and constant species only, with at least
  // one free species.
  {
    const auto& part = report.complement;
    if (part.sr.empty() && !part.tf.empty()) {
      if (blocks_2d) {
        rec.rule = Rule::R7;
        const std::size_t j = *part.tf.begin();
        rec.witnesses.push_back(
            "free species " + net.species[j].name + " via reaction " +
            std::to_string(part.tf_witness.at(j)));
        return rec;
      }
      withheld(Rule::R7);
    }
  }

  // R8: conservative reduced system on W.
  if (!trivial) {
    const auto rc = is_reduced_conservative(net, w);
    if (rc.conservative) {
      rec.rule = Rule::R8;
      rec.witnesses.push_back("reduced dimension " +
                              std::to_string(rc.reduced_dim) + " < |W| = " +
                              std::to_string(rc.w_size));
      return rec;
    }
  }

  if (trivial) {
    const auto cons = has_nonnegative_conservation(stoich_matrix(net));
    if (cons.exists) {
      rec.rule = Rule::TrivialConservation;
      std::ostringstream os;
      os << "conservation witness (";
      for (std::size_t j = 0; j < cons.witness.size(); ++j)
        os << (j ? "," : "") << rat_to_string(cons.witness[j]);
      os << ")";
      rec.witnesses.push_back(os.str());
      return rec;
    }
  }

  rec.rule = Rule::Undecided;
  return rec;
}

PersistenceCertificate certify_persistence(const ReactionNetwork& net,
                                           std::size_t max_n) {
  ReactionNetwork work = net;
  if (!work.partition) work.partition = work.effective_blocks();

  PersistenceCertificate cert;
  const Decomposition dec = decompose(work);

  // Per-block complex balance status feeds the caveat list, not the
  // structural verdict.
  cert.complex_balance_verified = true;
  for (std::size_t p = 0; p < dec.block_nets.size(); ++p) {
    const auto& sub = dec.block_nets[p];
    const ComplexGraph g = complex_graph(sub);
    bool verified = false;
    if (is_weakly_reversible(g)) {
      if (deficiency(sub) == 0) {
        verified = true;
      } else {
        try {
          verified = find_complex_balanced_equilibrium(sub).has_value();
        } catch (const NotWeaklyReversible&) {
          verified = false;
        }
      }
    }
    if (!verified) {
      cert.complex_balance_verified = false;
      cert.caveats.push_back("block " + std::to_string(p) +
                             ": complex balance unverified");
    }
  }

  const auto reports = enumerate_semilocking(work, max_n);
  bool all_discharged = true;
  for (const auto& rep : reports) {
    PerWRecord rec;
    rec.report = rep;
    rec.analysis = case_label(dec, rep.members);
    rec.discharge = apply_rules(work, dec, rep, rec.analysis);
    for (const auto& wh : rec.discharge.withheld) cert.caveats.push_back(wh);
    if (rec.discharge.rule == Rule::Undecided) all_discharged = false;
    cert.per_w.push_back(std::move(rec));
  }
  cert.verdict = all_discharged ? Verdict::Persistent : Verdict::Undecided;
  if (cert.verdict == Verdict::Persistent && !cert.complex_balance_verified)
    cert.caveats.push_back(
        "verdict is conditional on complex balance of the flagged blocks");
  return cert;
}

}  // namespace crn
