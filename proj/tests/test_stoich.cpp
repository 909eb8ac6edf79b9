#include "doctest.h"

#include <random>

#include "crn/stoich.hpp"
#include "fixtures.hpp"

using namespace crn;

namespace {

SpeciesSet complement_of(const ReactionNetwork& net, const SpeciesSet& w) {
  SpeciesSet c;
  for (std::size_t j = 0; j < net.n_species(); ++j)
    if (!w.count(j)) c.insert(j);
  return c;
}

ReactionNetwork random_network(std::mt19937_64& rng, std::size_t n,
                               std::size_t r) {
  std::uniform_int_distribution<std::size_t> sp(0, n - 1);
  std::uniform_int_distribution<int> coef(1, 2);
  std::uniform_int_distribution<int> nterms(1, 2);
  ReactionNetwork net;
  for (std::size_t j = 0; j < n; ++j)
    net.species.push_back({j, "S" + std::to_string(j)});
  while (net.reactions.size() < r) {
    Reaction rx;
    for (int t = 0; t < nterms(rng); ++t) rx.reactant.coeffs[sp(rng)] += coef(rng);
    for (int t = 0; t < nterms(rng); ++t) rx.product.coeffs[sp(rng)] += coef(rng);
    if (rx.reactant == rx.product) continue;
    net.reactions.push_back(std::move(rx));
  }
  return net;
}

}  // namespace

TEST_CASE("stoichiometric matrix of the two-state network") {
  const auto net = load_fixture("net_ab.crn");
  const auto m = stoich_matrix(net);
  REQUIRE(m.n == 2);
  REQUIRE(m.r == 2);
  CHECK(m.entries[0][0] == Rat(-1));
  CHECK(m.entries[1][0] == Rat(1));
  CHECK(m.entries[0][1] == Rat(1));
  CHECK(m.entries[1][1] == Rat(-1));
  CHECK(subspace_basis(m).dim() == 1);
  const auto cons = conservation_basis(m);
  REQUIRE(cons.dim() == 1);
  // any conservation vector here is a multiple of (1, 1)
  CHECK(cons.vectors[0][0] == cons.vectors[0][1]);
}

TEST_CASE("trio network dimensions") {
  const auto net = load_fixture("net_trio.crn");
  const auto m = stoich_matrix(net);
  REQUIRE(m.n == 3);
  REQUIRE(m.r == 4);
  const std::size_t x1 = net.species_index("X1");
  const std::size_t x2 = net.species_index("X2");
  // X2 + X1 -> 2 X1 gains one X1, loses one X2
  CHECK(m.entries[x1][0] == Rat(1));
  CHECK(m.entries[x2][0] == Rat(-1));
  CHECK(subspace_basis(m).dim() == 2);
  CHECK(conservation_basis(m).dim() == 1);
}

TEST_CASE("face kernel for W = {X1} in the trio network") {
  const auto net = load_fixture("net_trio.crn");
  const std::size_t x1 = net.species_index("X1");
  const std::size_t x2 = net.species_index("X2");
  const std::size_t x3 = net.species_index("X3");
  const SpeciesSet w{x1};
  const auto basis = face_kernel_basis(net, w);
  REQUIRE(basis.size() == 1);
  // the kernel is spanned by a vector with zero X1 part and opposite
  // X2 / X3 parts
  CHECK(basis[0][x1] == Rat(0));
  CHECK(basis[0][x2] == -basis[0][x3]);
  CHECK(basis[0][x2] != Rat(0));
  CHECK(face_dimension(net, w) == 1);
  // the coordinate projection onto the complement is still full
  CHECK(projected_dimension(net, complement_of(net, w)) == 2);
}

TEST_CASE("face dimensions across fixture sets") {
  const auto trio = load_fixture("net_trio.crn");
  const std::size_t x1 = trio.species_index("X1");
  const std::size_t x2 = trio.species_index("X2");
  const std::size_t x3 = trio.species_index("X3");
  CHECK(face_dimension(trio, {x1, x2}) == 0);
  CHECK(face_dimension(trio, {x1, x2, x3}) == 0);
  CHECK(face_dimension(trio, {}) == 2);

  const auto semi = load_fixture("net_semi.crn");
  const auto sw = SpeciesSet{semi.species_index("X1"), semi.species_index("X2")};
  CHECK(face_dimension(semi, sw) == 0);
}

TEST_CASE("nonnegative conservation witness on closed fixtures") {
  for (const char* name : {"net_ab.crn", "net_trio.crn", "net_chain.crn",
                           "net_semi.crn"}) {
    CAPTURE(name);
    const auto net = load_fixture(name);
    const auto m = stoich_matrix(net);
    const auto res = has_nonnegative_conservation(m);
    REQUIRE(res.exists);
    Rat total(0);
    for (std::size_t j = 0; j < m.n; ++j) {
      CHECK(res.witness[j] >= 0);
      total += res.witness[j];
    }
    CHECK(total > 0);
    for (std::size_t i = 0; i < m.r; ++i)
      CHECK(dot(res.witness, m.column(i)) == Rat(0));
  }
}

TEST_CASE("trio conservation witness is the uniform vector") {
  const auto net = load_fixture("net_trio.crn");
  const auto res = has_nonnegative_conservation(stoich_matrix(net));
  REQUIRE(res.exists);
  CHECK(res.witness[0] == res.witness[1]);
  CHECK(res.witness[1] == res.witness[2]);
}

TEST_CASE("open network has no nonnegative conservation") {
  const auto net = parse_network("X1 -> 0 [k=1, tau=0]\n0 -> X1 [k=1, tau=0]");
  CHECK_FALSE(has_nonnegative_conservation(stoich_matrix(net)).exists);

  // full-dimensional autocatalysis also rules it out
  const auto grow = parse_network("X1 <-> 2 X1 [k=1,1, tau=0,0]");
  CHECK_FALSE(has_nonnegative_conservation(stoich_matrix(grow)).exists);
}

TEST_CASE("signed conservation only is not enough") {
  // x1 - x2 is conserved but no nonnegative combination is
  const auto net =
      parse_network("0 -> X1 + X2 [k=1, tau=0]\nX1 + X2 -> 0 [k=1, tau=0]");
  const auto m = stoich_matrix(net);
  CHECK(conservation_basis(m).dim() == 1);
  CHECK_FALSE(has_nonnegative_conservation(m).exists);
}

TEST_CASE("rank-nullity on random networks") {
  std::mt19937_64 rng(20240817);
  for (int iter = 0; iter < 100; ++iter) {
    const auto net = random_network(rng, 2 + iter % 6, 1 + iter % 8);
    const auto m = stoich_matrix(net);
    const auto s = subspace_basis(m).dim();
    const auto c = conservation_basis(m).dim();
    CHECK(s + c == m.n);
    // every conservation vector is orthogonal to every reaction vector
    for (const auto& v : conservation_basis(m).vectors)
      for (std::size_t i = 0; i < m.r; ++i)
        CHECK(dot(v, m.column(i)) == Rat(0));
  }
}

TEST_CASE("face dimension is antitone in W") {
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 40; ++iter) {
    const auto net = random_network(rng, 4, 5);
    SpeciesSet w;
    std::size_t prev = face_dimension(net, w);
    for (std::size_t j = 0; j < net.n_species(); ++j) {
      w.insert(j);
      const std::size_t cur = face_dimension(net, w);
      CHECK(cur <= prev);
      prev = cur;
    }
    CHECK(prev == 0);  // vanishing on all coordinates leaves only zero
  }
}

TEST_CASE("face kernel vectors live in S and vanish on W") {
  const auto net = load_fixture("net_comb_open.crn");
  const auto m = stoich_matrix(net);
  const auto cons = conservation_basis(m);
  const SpeciesSet w{net.species_index("X1"), net.species_index("X2")};
  for (const auto& v : face_kernel_basis(net, w)) {
    for (std::size_t j : w) CHECK(v[j] == Rat(0));
    for (const auto& a : cons.vectors) CHECK(dot(a, v) == Rat(0));
  }
}
