#include "doctest.h"

#include <cmath>

#include "crn/ddesim.hpp"
#include "fixtures.hpp"

using namespace crn;

namespace {

ReactionNetwork with_delays(ReactionNetwork net, double tau) {
  for (auto& r : net.reactions) r.delay_tau = tau;
  return net;
}

}  // namespace

TEST_CASE("piecewise linear history interpolation") {
  HistoryFunction h;
  h.grid = {-1.0, 0.0};
  h.values = {{0.0}, {1.0}};
  CHECK(h.at(-1.0)[0] == 0.0);
  CHECK(h.at(-0.5)[0] == doctest::Approx(0.5));
  CHECK(h.at(0.0)[0] == 1.0);
  // clamped outside the grid
  CHECK(h.at(-2.0)[0] == 0.0);

  const auto c = HistoryFunction::constant_history({2.0, 0.5});
  CHECK(c.at(-3.7)[0] == 2.0);
  CHECK(c.at(0.0)[1] == 0.5);
}

TEST_CASE("two-state network relaxes to the class equilibrium") {
  const auto net = load_fixture("net_ab.crn");
  const auto psi = HistoryFunction::constant_history({2.0, 0.5});
  const auto res = simulate(net, psi, 50.0, 1e-3);
  REQUIRE(res.report.terminal_state.size() == 2);
  CHECK(res.report.terminal_state[0] == doctest::Approx(1.25).epsilon(1e-8));
  CHECK(res.report.terminal_state[1] == doctest::Approx(1.25).epsilon(1e-8));
  CHECK(res.report.conservation_drift < 1e-10);
  CHECK(res.report.warnings.empty());
}

TEST_CASE("closed form decay of the two-state network") {
  // x1(t) = 1.25 + 0.75 exp(-2t) for psi = (2, 0.5) with unit rates
  const auto net = load_fixture("net_ab.crn");
  const auto psi = HistoryFunction::constant_history({2.0, 0.5});
  const auto res = simulate(net, psi, 1.0, 1e-3);
  const double exact = 1.25 + 0.75 * std::exp(-2.0);
  CHECK(res.report.terminal_state[0] == doctest::Approx(exact).epsilon(1e-10));
}

TEST_CASE("delays shift the conserved quantity, not the equilibrium") {
  const auto base = load_fixture("net_ab.crn");
  const auto psi = HistoryFunction::constant_history({2.0, 0.5});
  std::vector<double> terminals;
  for (double tau : {0.0, 0.2, 0.5}) {
    const auto res = simulate(with_delays(base, tau), psi, 50.0, 1e-3);
    terminals.push_back(res.report.terminal_state[0]);
    CHECK(res.report.conservation_drift < 1e-6);
  }
  CHECK(std::abs(terminals[0] - terminals[1]) < 1e-6);
  CHECK(std::abs(terminals[0] - terminals[2]) < 1e-6);
}

TEST_CASE("compatibility class map includes the delayed integral") {
  auto net = load_fixture("net_ab.crn");
  net.reactions[0].delay_tau = 1.0;
  const auto window = [](double) { return std::vector<double>{2.0, 3.0}; };
  const auto g = compute_g(net, window, 1.0, 1e-3);
  REQUIRE(g.size() == 2);
  CHECK(g[0] == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(g[1] == doctest::Approx(3.0).epsilon(1e-9));

  CHECK_THROWS_AS(compute_g(net, window, 0.5, 1e-3), WindowTooShort);
}

TEST_CASE("lyapunov functional values") {
  const auto net = load_fixture("net_ab.crn");
  const std::vector<double> xbar{1.0, 1.0};
  const auto at_eq = [&](double) { return xbar; };
  CHECK(lyapunov_value(net, xbar, at_eq, 1e-3) == doctest::Approx(0.0));

  const auto off = [](double) { return std::vector<double>{std::exp(1.0), 1.0}; };
  CHECK(lyapunov_value(net, xbar, off, 1e-3) == doctest::Approx(1.0));

  const auto bad = [](double) { return std::vector<double>{0.0, 1.0}; };
  CHECK_THROWS_AS(lyapunov_value(net, xbar, bad, 1e-3), NonPositiveWindow);
  CHECK_THROWS_AS(lyapunov_value(net, xbar, off, 0.0), NonPositiveWindow);
}

TEST_CASE("sampled lyapunov series decreases along trio runs") {
  const auto net = load_fixture("net_trio.crn");
  const auto eq = find_complex_balanced_equilibrium(net);
  REQUIRE(eq.has_value());
  const auto psi = HistoryFunction::constant_history({0.5, 2.0, 1.5});
  const auto res = simulate(net, psi, 10.0, 1e-3, &eq->concentrations);
  REQUIRE(res.report.lyapunov_series.size() > 10);
  for (std::size_t i = 1; i < res.report.lyapunov_series.size(); ++i) {
    const double prev = res.report.lyapunov_series[i - 1];
    const double cur = res.report.lyapunov_series[i];
    CHECK(cur <= prev + 1e-8 * (1.0 + std::abs(prev)));
    CHECK(cur >= 0.0);
  }
}

TEST_CASE("step larger than the smallest delay is refused") {
  const auto net = load_fixture("net_trio.crn");
  const auto psi = HistoryFunction::constant_history({1.0, 1.0, 1.0});
  CHECK_THROWS_AS(simulate(net, psi, 1.0, 0.2), StepTooLarge);
}

TEST_CASE("off-grid delay leaves a warning") {
  auto net = load_fixture("net_ab.crn");
  net.reactions[0].delay_tau = 0.05;
  const auto psi = HistoryFunction::constant_history({1.0, 1.0});
  const auto res = simulate(net, psi, 1.0, 0.03);
  REQUIRE_FALSE(res.report.warnings.empty());
  CHECK(res.report.warnings[0].find("delay") != std::string::npos);
}

TEST_CASE("finite time blowup is reported") {
  const auto net = parse_network("2 X1 -> 3 X1 [k=1, tau=0]");
  const auto psi = HistoryFunction::constant_history({10.0});
  CHECK_THROWS_AS(simulate(net, psi, 5.0, 1e-3), NonFiniteState);
}

TEST_CASE("trajectory grid bookkeeping") {
  const auto net = load_fixture("net_trio.crn");  // tau = 0.1 everywhere
  const auto psi = HistoryFunction::constant_history({1.0, 1.0, 1.0});
  const auto res = simulate(net, psi, 1.0, 0.01);
  const auto& tr = res.trajectory;
  CHECK(tr.history_steps == 10);
  CHECK(tr.grid.size() == tr.values.size());
  CHECK(tr.grid[tr.index_of_time_zero()] == doctest::Approx(0.0));
  CHECK(tr.grid.back() == doctest::Approx(1.0));
  for (std::size_t off : tr.delay_offsets) CHECK(off == 10);
}

TEST_CASE("probe stays above the persistence floor and is reproducible") {
  const auto net = load_fixture("net_ab.crn");
  const auto a = persistence_probe(net, 4, 5.0, 1e-2, 1234);
  CHECK(a.trials == 4);
  CHECK_FALSE(a.floor_breached);
  CHECK(a.min_over_trials > kProbeFloor);
  REQUIRE(a.terminal_states.size() == 4);

  const auto b = persistence_probe(net, 4, 5.0, 1e-2, 1234);
  CHECK(a.min_over_trials == b.min_over_trials);
  CHECK(a.terminal_states == b.terminal_states);

  const auto c = persistence_probe(net, 4, 5.0, 1e-2, 99);
  CHECK(c.terminal_states != a.terminal_states);
}
