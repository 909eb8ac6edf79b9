#include "doctest.h"

#include <algorithm>

#include "crn/compose.hpp"
#include "crn/reduce.hpp"
#include "fixtures.hpp"

using namespace crn;

namespace {

SpeciesSet named(const ReactionNetwork& net,
                 std::initializer_list<const char*> names) {
  SpeciesSet w;
  for (const char* s : names) w.insert(net.species_index(s));
  return w;
}

const PerWRecord& record_for(const PersistenceCertificate& cert,
                             const SpeciesSet& w) {
  for (const auto& rec : cert.per_w)
    if (rec.report.members == w) return rec;
  throw std::runtime_error("no record for requested set");
}

}  // namespace

TEST_CASE("decomposition of the chain") {
  const auto net = load_fixture("net_chain.crn");
  const auto dec = decompose(net);
  REQUIRE(dec.blocks.size() == 2);
  CHECK(dec.intersecting == named(net, {"X2"}));
  CHECK(dec.block_dims == std::vector<std::size_t>{1, 1});
  CHECK(dec.block_species[0] == named(net, {"X1", "X2"}));
  CHECK(dec.block_species[1] == named(net, {"X2", "X3"}));
}

TEST_CASE("decomposition with disjoint blocks") {
  const auto net = load_fixture("net_comb_open.crn");
  const auto dec = decompose(net);
  REQUIRE(dec.blocks.size() == 2);
  CHECK(dec.intersecting.empty());
  CHECK(dec.block_dims == std::vector<std::size_t>{2, 1});
}

TEST_CASE("decompose requires a declared partition") {
  CHECK_THROWS_AS(decompose(load_fixture("net_ab.crn")), NoPartition);
}

TEST_CASE("restrictions of semilocking sets") {
  const auto net = load_fixture("net_comb_open.crn");
  const auto dec = decompose(net);

  auto r = restrict_semilocking(dec, named(net, {"X1"}), 0);
  CHECK(r.kind == RestrictionKind::FacetType);
  CHECK(r.face_dim == 1);
  CHECK(r.block_dim == 2);
  CHECK(r.facet_like);
  r = restrict_semilocking(dec, named(net, {"X1"}), 1);
  CHECK(r.kind == RestrictionKind::Empty);

  r = restrict_semilocking(dec, named(net, {"X1", "X2"}), 0);
  CHECK(r.kind == RestrictionKind::VertexType);
  CHECK(r.face_dim == 0);

  r = restrict_semilocking(dec, named(net, {"X4", "X5"}), 1);
  CHECK(r.kind == RestrictionKind::VertexType);
  CHECK(r.block_dim == 1);
  CHECK(r.facet_like);  // dim 0 = block dim - 1 in a 1d block
}

TEST_CASE("non-semilocking restriction is an internal error") {
  const auto net = load_fixture("net_comb_open.crn");
  const auto dec = decompose(net);
  CHECK_THROWS_AS(restrict_semilocking(dec, named(net, {"X2"}), 0),
                  InternalInconsistency);
}

TEST_CASE("restrictions of semilocking sets are block semilocking") {
  // restriction never throws across full enumerations of the fixtures
  for (const char* name : {"net_comb_open.crn", "net_chain.crn"}) {
    CAPTURE(name);
    const auto net = load_fixture(name);
    const auto dec = decompose(net);
    for (const auto& rec : enumerate_semilocking(net))
      for (std::size_t p = 0; p < dec.blocks.size(); ++p)
        CHECK_NOTHROW(restrict_semilocking(dec, rec.members, p));
  }
}

TEST_CASE("case labels") {
  const auto net = load_fixture("net_comb_open.crn");
  const auto dec = decompose(net);

  auto a = case_label(dec, named(net, {"X1"}));
  CHECK(a.label == CaseLabel::CaseI);
  CHECK_FALSE(a.meets_sc);

  a = case_label(dec, named(net, {"X1", "X2"}));
  CHECK(a.label == CaseLabel::CaseIII);
  CHECK(a.cv == named(net, {"X3"}));
  CHECK(a.cn == named(net, {"X4", "X5"}));

  a = case_label(dec, named(net, {"X1", "X2", "X3"}));
  CHECK(a.label == CaseLabel::CaseIII);
  CHECK(a.cv.empty());
  CHECK(a.cn == named(net, {"X4", "X5"}));

  a = case_label(dec, named(net, {"X1", "X2", "X3", "X4", "X5"}));
  CHECK(a.label == CaseLabel::CaseII);

  const auto chain = load_fixture("net_chain.crn");
  const auto cdec = decompose(chain);
  a = case_label(cdec, named(chain, {"X1", "X2", "X3"}));
  CHECK(a.label == CaseLabel::CaseII);
  CHECK(a.meets_sc);
}

TEST_CASE("cv sits in tr and cn sits in tf for case II and III sets") {
  for (const char* name : {"net_comb_open.crn", "net_chain.crn"}) {
    CAPTURE(name);
    const auto net = load_fixture(name);
    const auto dec = decompose(net);
    for (const auto& rec : enumerate_semilocking(net)) {
      const auto a = case_label(dec, rec.members);
      if (a.label != CaseLabel::CaseII && a.label != CaseLabel::CaseIII)
        continue;
      for (std::size_t j : a.cv) CHECK(rec.complement.tr.count(j));
      for (std::size_t j : a.cn) CHECK(rec.complement.tf.count(j));
    }
  }
}

TEST_CASE("rule selection on the trio network") {
  const auto net = load_fixture("net_trio.crn");
  const auto cert = certify_persistence(net);
  CHECK(cert.verdict == Verdict::Persistent);
  CHECK(cert.complex_balance_verified);
  REQUIRE(cert.per_w.size() == 4);
  CHECK(record_for(cert, named(net, {"X1"})).discharge.rule == Rule::R1);
  CHECK(record_for(cert, named(net, {"X1", "X2"})).discharge.rule == Rule::R2);
  CHECK(record_for(cert, named(net, {"X1", "X3"})).discharge.rule == Rule::R2);
  CHECK(record_for(cert, named(net, {"X1", "X2", "X3"})).discharge.rule ==
        Rule::TrivialConservation);
}

TEST_CASE("rule selection on the combined open network") {
  const auto net = load_fixture("net_comb_open.crn");
  const auto cert = certify_persistence(net);
  CHECK(cert.verdict == Verdict::Persistent);
  REQUIRE(cert.per_w.size() == 9);
  CHECK(record_for(cert, named(net, {"X1"})).discharge.rule == Rule::R1);
  CHECK(record_for(cert, named(net, {"X1", "X2"})).discharge.rule == Rule::R3);
  CHECK(record_for(cert, named(net, {"X1", "X3"})).discharge.rule == Rule::R3);
  CHECK(record_for(cert, named(net, {"X4", "X5"})).discharge.rule == Rule::R5);
  CHECK(record_for(cert, named(net, {"X1", "X2", "X3"})).discharge.rule ==
        Rule::R4);
  CHECK(record_for(cert, named(net, {"X1", "X4", "X5"})).discharge.rule ==
        Rule::R1);
  // R3 witnesses name the constant complement species
  const auto& r3 = record_for(cert, named(net, {"X1", "X2"})).discharge;
  CHECK(std::any_of(r3.witnesses.begin(), r3.witnesses.end(),
                    [](const std::string& s) {
                      return s.find("X3") != std::string::npos;
                    }));
}

TEST_CASE("chain trivial set goes through the facet rule") {
  const auto net = load_fixture("net_chain.crn");
  const auto cert = certify_persistence(net);
  CHECK(cert.verdict == Verdict::Persistent);
  const auto& rec = record_for(cert, named(net, {"X1", "X2", "X3"}));
  CHECK(rec.analysis.meets_sc);
  CHECK(rec.discharge.rule == Rule::R5);
}

TEST_CASE("vertex-only set with conserved reduction") {
  const auto net = load_fixture("net_semi.crn");
  const auto cert = certify_persistence(net);
  CHECK(cert.verdict == Verdict::Persistent);
  // the reduced system over W = {X1, X2} is conservative: dim 1 < |W| = 2,
  // so the dimension rule can discharge it regardless of what fires first
  const auto rc = is_reduced_conservative(net, named(net, {"X1", "X2"}));
  CHECK(rc.conservative);
  CHECK(rc.reduced_dim == 1);
  CHECK(rc.w_size == 2);
}

TEST_CASE("dimension gate leaves a withheld note") {
  const auto net = load_fixture("net_comb_open.crn");
  const auto cert = certify_persistence(net);
  const auto& rec = record_for(cert, named(net, {"X4", "X5"}));
  CHECK_FALSE(rec.discharge.withheld.empty());
}

TEST_CASE("unverified complex balance turns the verdict conditional") {
  const auto net = parse_network("A -> B [k=1, tau=0]");
  const auto cert = certify_persistence(net);
  CHECK_FALSE(cert.complex_balance_verified);
  CHECK(std::any_of(cert.caveats.begin(), cert.caveats.end(),
                    [](const std::string& s) {
                      return s.find("complex balance") != std::string::npos;
                    }));
}

TEST_CASE("rule names and citations are populated") {
  for (Rule r : {Rule::R1, Rule::R2, Rule::R3, Rule::R4, Rule::R5, Rule::R6,
                 Rule::R7, Rule::R8, Rule::TrivialConservation}) {
    CHECK_FALSE(rule_name(r).empty());
    CHECK_FALSE(rule_citation(r).empty());
  }
}
