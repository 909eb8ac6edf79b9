#pragma once

#include "crn/model.hpp"
#include "crn/siphon.hpp"

namespace crn {

struct InternalInconsistency : Error {
  using Error::Error;
};

struct Decomposition {
  std::vector<std::vector<std::size_t>> blocks;  // reaction indices
  std::vector<SpeciesSet> block_species;         // S^(p)
  SpeciesSet intersecting;                       // S_c
  std::vector<std::size_t> block_dims;           // dim S^(p)
  /// Block-local networks for per-block face computations.
  std::vector<ReactionNetwork> block_nets;
  std::vector<std::vector<std::size_t>> local_to_global;
};

enum class RestrictionKind { Empty, VertexType, FacetType, OtherType };

struct Restriction {
  SpeciesSet members;  // W ∩ S^(p), original indices
  RestrictionKind kind = RestrictionKind::Empty;
  std::size_t face_dim = 0;   // within the block
  std::size_t block_dim = 0;  // dim S^(p)
  /// face_dim == block_dim - 1 with block_dim >= 1. Coincides with
  /// VertexType for 1d blocks, which is why it is kept separately.
  bool facet_like = false;
};

enum class CaseLabel { CaseI, CaseII, CaseIII, Unclassified };

struct CaseAnalysis {
  SpeciesSet w;
  std::vector<Restriction> restrictions;
  CaseLabel label = CaseLabel::Unclassified;
  bool meets_sc = false;
  SpeciesSet cv;  // complement species only in blocks with nonempty restriction
  SpeciesSet cn;  // complement species in some block with empty restriction
};

enum class Rule {
  R1,
  R2,
  R3,
  R4,
  R5,
  R6,
  R7,
  R8,
  TrivialConservation,
  Undecided
};

std::string rule_name(Rule r);
std::string rule_citation(Rule r);

struct DischargeRecord {
  Rule rule = Rule::Undecided;
  std::string justification;
  std::vector<std::string> witnesses;
  std::vector<std::string> withheld;  // rules blocked by a dimension gate
};

struct PerWRecord {
  SemilockingReport report;
  CaseAnalysis analysis;
  DischargeRecord discharge;
};

enum class Verdict { Persistent, Undecided };

struct PersistenceCertificate {
  std::vector<PerWRecord> per_w;
  Verdict verdict = Verdict::Undecided;
  bool complex_balance_verified = false;
  std::vector<std::string> caveats;
};

Decomposition decompose(const ReactionNetwork& net);

Restriction restrict_semilocking(const Decomposition& dec, const SpeciesSet& w,
                                 std::size_t p);

CaseAnalysis case_label(const Decomposition& dec, const SpeciesSet& w);

DischargeRecord apply_rules(const ReactionNetwork& net, const Decomposition& dec,
                            const SemilockingReport& report,
                            const CaseAnalysis& analysis);

PersistenceCertificate certify_persistence(const ReactionNetwork& net,
                                           std::size_t max_n = kDefaultMaxN);

}  // namespace crn
