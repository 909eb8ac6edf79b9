#include "doctest.h"

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

}  // namespace

TEST_CASE("trio reduced onto X1") {
  const auto net = load_fixture("net_trio.crn");
  const auto rs = reduce_on(net, named(net, {"X1"}));
  REQUIRE(rs.kept_order.size() == 1);
  CHECK(rs.kept_order[0] == net.species_index("X1"));
  REQUIRE(rs.reactions.size() == 4);
  CHECK(rs.dropped.empty());

  // X2 + X1 -> 2 X1 becomes X1 -> 2 X1 with rate modulated by x2
  const auto& r0 = rs.reactions[0];
  CHECK(r0.origin == 0);
  CHECK(r0.reactant.coeff(0) == 1);
  CHECK(r0.product.coeff(0) == 2);
  CHECK(r0.base_rate == 1.0);
  CHECK(r0.delay_tau == 0.1);
  REQUIRE(r0.modulation.size() == 1);
  CHECK(r0.modulation.at(net.species_index("X2")) == 1);

  // the reverse keeps 2 X1 -> X1 with no modulation
  const auto& r1 = rs.reactions[1];
  CHECK(r1.reactant.coeff(0) == 2);
  CHECK(r1.product.coeff(0) == 1);
  CHECK(r1.modulation.empty());

  CHECK(reduced_subspace_dim(rs) == 1);
  const auto text = reduced_to_string(net, rs);
  CHECK(text.find("X2^1") != std::string::npos);
  CHECK(text.find("X3^1") != std::string::npos);
}

TEST_CASE("reactions projecting to nothing are dropped") {
  const auto net = load_fixture("net_trio.crn");
  const auto rs = reduce_on(net, named(net, {"X2"}));
  CHECK(rs.reactions.size() == 2);
  CHECK(rs.dropped.size() == 2);
  CHECK(rs.dropped == std::vector<std::size_t>{2, 3});
  // the kept pair is X2 -> 0 and 0 -> X2
  CHECK(rs.reactions[0].product.empty());
  CHECK(rs.reactions[1].reactant.empty());
}

TEST_CASE("keeping every species is the identity") {
  const auto net = load_fixture("net_edel.crn");
  SpeciesSet all;
  for (std::size_t j = 0; j < net.n_species(); ++j) all.insert(j);
  const auto rs = reduce_on(net, all);
  REQUIRE(rs.reactions.size() == net.n_reactions());
  CHECK(rs.dropped.empty());
  for (std::size_t i = 0; i < rs.reactions.size(); ++i) {
    CHECK(rs.reactions[i].modulation.empty());
    CHECK(rs.reactions[i].base_rate == net.reactions[i].rate_k);
    CHECK(rs.reactions[i].delay_tau == net.reactions[i].delay_tau);
    for (std::size_t j = 0; j < net.n_species(); ++j) {
      CHECK(rs.reactions[i].reactant.coeff(rs.local_index(j)) ==
            net.reactions[i].reactant.coeff(j));
      CHECK(rs.reactions[i].product.coeff(rs.local_index(j)) ==
            net.reactions[i].product.coeff(j));
    }
  }
}

TEST_CASE("projection commutes with taking reaction vectors") {
  for (const char* name : {"net_trio.crn", "net_comb_open.crn", "net_edel.crn",
                           "net_semi.crn"}) {
    CAPTURE(name);
    const auto net = load_fixture(name);
    for (std::size_t j = 0; j < net.n_species(); ++j) {
      SpeciesSet keep{j};
      if (j + 1 < net.n_species()) keep.insert(j + 1);
      const auto rs = reduce_on(net, keep);
      for (const auto& rr : rs.reactions) {
        const auto& orig = net.reactions[rr.origin];
        for (std::size_t g : keep) {
          const int want = orig.product.coeff(g) - orig.reactant.coeff(g);
          const std::size_t l = rs.local_index(g);
          CHECK(rr.product.coeff(l) - rr.reactant.coeff(l) == want);
        }
        // eliminated reactant exponents all land in the modulation
        for (const auto& [g, c] : orig.reactant.coeffs) {
          if (keep.count(g)) continue;
          REQUIRE(rr.modulation.count(g));
          CHECK(rr.modulation.at(g) == c);
        }
      }
    }
  }
}

TEST_CASE("conservativity of reduced systems") {
  const auto semi = load_fixture("net_semi.crn");
  const auto rc = is_reduced_conservative(semi, named(semi, {"X1", "X2"}));
  CHECK(rc.conservative);
  CHECK(rc.reduced_dim == 1);
  CHECK(rc.w_size == 2);

  const auto trio = load_fixture("net_trio.crn");
  const auto tc = is_reduced_conservative(trio, named(trio, {"X1"}));
  CHECK_FALSE(tc.conservative);  // dim 1 is not below |W| = 1
  CHECK(tc.reduced_dim == 1);
}

TEST_CASE("empty keep set is rejected") {
  const auto net = load_fixture("net_trio.crn");
  CHECK_THROWS_AS(reduce_on(net, SpeciesSet{}), EmptyKeepSet);
}
