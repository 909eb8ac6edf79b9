#include "crn/ddesim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "crn/stoich.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace crn {

namespace {

double monomial(const std::vector<double>& x, const Complex& y) {
  double v = 1.0;
  for (const auto& [j, c] : y.coeffs) v *= std::pow(x[j], c);
  return v;
}

constexpr std::size_t kMaxStoredPoints = 10'000'000;

}  // namespace

std::vector<double> HistoryFunction::at(double s) const {
  if (grid.empty()) return constant;
  if (s <= grid.front()) return values.front();
  if (s >= grid.back()) return values.back();
  const auto it = std::upper_bound(grid.begin(), grid.end(), s);
  const std::size_t hi = static_cast<std::size_t>(it - grid.begin());
  const std::size_t lo = hi - 1;
  const double w = (s - grid[lo]) / (grid[hi] - grid[lo]);
  std::vector<double> out(values[lo].size());
  for (std::size_t j = 0; j < out.size(); ++j)
    out[j] = (1 - w) * values[lo][j] + w * values[hi][j];
  return out;
}

SimulationResult simulate(const ReactionNetwork& net,
                          const HistoryFunction& psi, double t_end,
                          double step_h,
                          const std::vector<double>* lyapunov_ref,
                          std::size_t sample_every) {
  const std::size_t n = net.n_species();
  const std::size_t r = net.n_reactions();
  if (t_end <= 0) throw Error("t_end must be positive");
  if (step_h <= 0) throw Error("step_h must be positive");

  SimulationResult result;
  auto& traj = result.trajectory;
  auto& rep = result.report;
  traj.step_h = step_h;

  double min_positive_delay = 0.0;
  std::size_t max_offset = 0;
  traj.delay_offsets.resize(r);
  for (std::size_t i = 0; i < r; ++i) {
    const double tau = net.reactions[i].delay_tau;
    if (tau > 0 && (min_positive_delay == 0.0 || tau < min_positive_delay))
      min_positive_delay = tau;
    const auto d = static_cast<std::size_t>(std::llround(tau / step_h));
    traj.delay_offsets[i] = d;
    max_offset = std::max(max_offset, d);
    if (std::abs(tau - static_cast<double>(d) * step_h) > 1e-12)
      rep.warnings.push_back("delay of reaction " + std::to_string(i) +
                             " rounded to the step grid");
  }
  if (min_positive_delay > 0 && step_h > min_positive_delay)
    throw StepTooLarge("step_h exceeds the smallest positive delay");

  const auto steps = static_cast<std::size_t>(std::llround(t_end / step_h));
  const std::size_t hist = max_offset;
  traj.history_steps = hist;
  const std::size_t total = hist + steps + 1;
  if (total * std::max<std::size_t>(n, 1) > kMaxStoredPoints)
    throw Error("trajectory storage would exceed the memory cap");

  traj.grid.resize(total);
  traj.values.assign(total, std::vector<double>(n));
  for (std::size_t k = 0; k < total; ++k)
    traj.grid[k] =
        (static_cast<double>(k) - static_cast<double>(hist)) * step_h;
  for (std::size_t k = 0; k <= hist; ++k) traj.values[k] = psi.at(traj.grid[k]);

  // Per-reaction running trapezoid of the reactant monomial; used for the
  // conservation map g. Lyapunov integrand tracked the same way.
  std::vector<std::vector<double>> mono_prefix(r,
                                               std::vector<double>(total, 0.0));
  std::vector<std::vector<double>> lyap_prefix;
  std::vector<double> lyap_eq_mono(r, 0.0);
  if (lyapunov_ref) {
    lyap_prefix.assign(r, std::vector<double>(total, 0.0));
    for (std::size_t i = 0; i < r; ++i)
      lyap_eq_mono[i] = monomial(*lyapunov_ref, net.reactions[i].reactant);
  }
  auto lyap_integrand = [&](std::size_t i, double z) {
    const double zb = lyap_eq_mono[i];
    return z * (std::log(z) - std::log(zb) - 1.0) + zb;
  };
  auto accumulate_prefixes = [&](std::size_t k) {
    if (k == 0) return;
    for (std::size_t i = 0; i < r; ++i) {
      const double a = monomial(traj.values[k - 1], net.reactions[i].reactant);
      const double b = monomial(traj.values[k], net.reactions[i].reactant);
      mono_prefix[i][k] = mono_prefix[i][k - 1] + 0.5 * step_h * (a + b);
      if (lyapunov_ref)
        lyap_prefix[i][k] = lyap_prefix[i][k - 1] +
                            0.5 * step_h *
                                (lyap_integrand(i, a) + lyap_integrand(i, b));
    }
  };
  for (std::size_t k = 1; k <= hist; ++k) accumulate_prefixes(k);

  // Delayed monomial for reaction i at stage offset c in [0,1] of the step
  // starting at grid index m.
  auto delayed_monomial = [&](std::size_t i, std::size_t m, double c,
                              const std::vector<double>& stage_state) {
    const std::size_t d = traj.delay_offsets[i];
    if (d == 0) return monomial(stage_state, net.reactions[i].reactant);
    const std::size_t base = m - d;
    if (c == 0.0) return monomial(traj.values[base], net.reactions[i].reactant);
    if (c == 1.0)
      return monomial(traj.values[base + 1], net.reactions[i].reactant);
    std::vector<double> interp(n);
    for (std::size_t j = 0; j < n; ++j)
      interp[j] =
          (1 - c) * traj.values[base][j] + c * traj.values[base + 1][j];
    return monomial(interp, net.reactions[i].reactant);
  };
  auto rhs = [&](std::size_t m, double c, const std::vector<double>& xs,
                 std::vector<double>& dx) {
    std::fill(dx.begin(), dx.end(), 0.0);
    for (std::size_t i = 0; i < r; ++i) {
      const auto& rx = net.reactions[i];
      const double out_rate = rx.rate_k * monomial(xs, rx.reactant);
      const double in_rate = rx.rate_k * delayed_monomial(i, m, c, xs);
      for (const auto& [j, cc] : rx.product.coeffs) dx[j] += in_rate * cc;
      for (const auto& [j, cc] : rx.reactant.coeffs) dx[j] -= out_rate * cc;
    }
  };

  std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
  for (std::size_t m = hist; m + 1 < total; ++m) {
    const auto& x = traj.values[m];
    rhs(m, 0.0, x, k1);
    for (std::size_t j = 0; j < n; ++j) tmp[j] = x[j] + 0.5 * step_h * k1[j];
    rhs(m, 0.5, tmp, k2);
    for (std::size_t j = 0; j < n; ++j) tmp[j] = x[j] + 0.5 * step_h * k2[j];
    rhs(m, 0.5, tmp, k3);
    for (std::size_t j = 0; j < n; ++j) tmp[j] = x[j] + step_h * k3[j];
    rhs(m, 1.0, tmp, k4);
    auto& next = traj.values[m + 1];
    for (std::size_t j = 0; j < n; ++j) {
      next[j] = x[j] + step_h / 6.0 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
      if (!std::isfinite(next[j]))
        throw NonFiniteState("state blew up at t=" +
                             std::to_string(traj.grid[m + 1]));
      if (next[j] < -1e-12)
        throw NegativeStateAborted("species " + net.species[j].name +
                                   " went negative at t=" +
                                   std::to_string(traj.grid[m + 1]));
    }
    accumulate_prefixes(m + 1);
  }

  // Conservation drift of a.g along the run, per S^perp basis vector.
  const auto cons = conservation_basis(stoich_matrix(net));
  std::vector<std::vector<double>> basis_d;
  for (const auto& v : cons.vectors) {
    std::vector<double> vd(n);
    for (std::size_t j = 0; j < n; ++j)
      vd[j] = static_cast<double>(v[j]);
    basis_d.push_back(std::move(vd));
  }
  auto g_at = [&](std::size_t k) {
    std::vector<double> g = traj.values[k];
    for (std::size_t i = 0; i < r; ++i) {
      const std::size_t d = traj.delay_offsets[i];
      if (d == 0) continue;
      const double integral = mono_prefix[i][k] - mono_prefix[i][k - d];
      const double w = net.reactions[i].rate_k * integral;
      for (const auto& [j, cc] : net.reactions[i].reactant.coeffs)
        g[j] += w * cc;
    }
    return g;
  };
  std::vector<std::size_t> samples;
  for (std::size_t k = hist; k < total; k += std::max<std::size_t>(
                                            1, sample_every))
    samples.push_back(k);
  if (samples.empty() || samples.back() != total - 1)
    samples.push_back(total - 1);

  const auto g0 = g_at(hist);
  double drift = 0.0;
  for (const auto& a : basis_d) {
    double ref = 0.0;
    for (std::size_t j = 0; j < n; ++j) ref += a[j] * g0[j];
    for (std::size_t k : samples) {
      const auto g = g_at(k);
      double val = 0.0;
      for (std::size_t j = 0; j < n; ++j) val += a[j] * g[j];
      drift = std::max(drift, std::abs(val - ref) / (1.0 + std::abs(ref)));
    }
  }
  rep.conservation_drift = drift;

  if (lyapunov_ref) {
    const auto& xb = *lyapunov_ref;
    for (std::size_t k : samples) {
      double v = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double z = traj.values[k][j];
        v += z * (std::log(z) - std::log(xb[j]) - 1.0) + xb[j];
      }
      for (std::size_t i = 0; i < r; ++i) {
        const std::size_t d = traj.delay_offsets[i];
        if (d == 0) continue;
        v += net.reactions[i].rate_k *
             (lyap_prefix[i][k] - lyap_prefix[i][k - d]);
      }
      rep.lyapunov_times.push_back(traj.grid[k]);
      rep.lyapunov_series.push_back(v);
    }
  }

  rep.min_concentration.assign(n, std::numeric_limits<double>::infinity());
  const std::size_t half = hist + steps / 2;
  for (std::size_t k = half; k < total; ++k)
    for (std::size_t j = 0; j < n; ++j)
      rep.min_concentration[j] =
          std::min(rep.min_concentration[j], traj.values[k][j]);

  rep.terminal_state = traj.values.back();
  double res = 0.0;
  for (double v : mass_action_rhs(net, rep.terminal_state))
    res = std::max(res, std::abs(v));
  rep.equilibrium_residual = res;
  return result;
}

std::vector<double> compute_g(
    const ReactionNetwork& net,
    const std::function<std::vector<double>(double)>& window,
    double window_span, double step_h) {
  double tau_max = 0.0;
  for (const auto& rx : net.reactions)
    tau_max = std::max(tau_max, rx.delay_tau);
  if (window_span + 1e-12 < tau_max)
    throw WindowTooShort("window does not cover the largest delay");

  std::vector<double> g = window(0.0);
  for (const auto& rx : net.reactions) {
    if (rx.delay_tau == 0.0) continue;
    const auto m = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(rx.delay_tau / step_h)));
    const double h = rx.delay_tau / static_cast<double>(m);
    double integral = 0.0;
    for (std::size_t k = 0; k <= m; ++k) {
      const double s = -rx.delay_tau + static_cast<double>(k) * h;
      const double w = (k == 0 || k == m) ? 0.5 : 1.0;
      integral += w * monomial(window(s), rx.reactant);
    }
    integral *= h;
    const double scale = rx.rate_k * integral;
    for (const auto& [j, c] : rx.reactant.coeffs) g[j] += scale * c;
  }
  return g;
}

double lyapunov_value(const ReactionNetwork& net,
                      const std::vector<double>& xbar,
                      const std::function<std::vector<double>(double)>& window,
                      double step_h) {
  if (step_h <= 0) throw NonPositiveWindow("step must be positive");
  for (double v : xbar)
    if (v <= 0) throw NonPositiveWindow("equilibrium must be positive");
  const auto x0 = window(0.0);
  double v = 0.0;
  for (std::size_t j = 0; j < xbar.size(); ++j) {
    if (x0[j] <= 0) throw NonPositiveWindow("window must be positive");
    v += x0[j] * (std::log(x0[j]) - std::log(xbar[j]) - 1.0) + xbar[j];
  }
  for (const auto& rx : net.reactions) {
    if (rx.delay_tau == 0.0) continue;
    const double zb = monomial(xbar, rx.reactant);
    const auto m = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(rx.delay_tau / step_h)));
    const double h = rx.delay_tau / static_cast<double>(m);
    double integral = 0.0;
    for (std::size_t k = 0; k <= m; ++k) {
      const double s = -rx.delay_tau + static_cast<double>(k) * h;
      const double z = monomial(window(s), rx.reactant);
      const double w = (k == 0 || k == m) ? 0.5 : 1.0;
      integral += w * (z * (std::log(z) - std::log(zb) - 1.0) + zb);
    }
    v += rx.rate_k * integral * h;
  }
  return v;
}

ProbeSummary persistence_probe(const ReactionNetwork& net, std::size_t trials,
                               double t_end, double step_h,
                               std::uint64_t seed) {
  if (trials < 1) throw Error("trials must be >= 1");
  ProbeSummary summary;
  summary.trials = trials;
  summary.min_over_trials = std::numeric_limits<double>::infinity();
  summary.terminal_states.resize(trials);

  std::vector<double> mins(trials,
                           std::numeric_limits<double>::infinity());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::int64_t t = 0; t < static_cast<std::int64_t>(trials); ++t) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(t) * 0x9e3779b9ULL);
    std::uniform_real_distribution<double> log_init(std::log(0.1),
                                                    std::log(10.0));
    std::uniform_real_distribution<double> delay(0.0, 2.0);

    ReactionNetwork trial_net = net;
    for (auto& rx : trial_net.reactions) {
      double tau = delay(rng);
      // keep tau on the step grid and >= step
      tau = std::max(step_h,
                     std::round(tau / step_h) * step_h);
      rx.delay_tau = tau;
    }
    std::vector<double> init(net.n_species());
    for (auto& v : init) v = std::exp(log_init(rng));

    const auto res = simulate(trial_net,
                              HistoryFunction::constant_history(init), t_end,
                              step_h);
    double local = std::numeric_limits<double>::infinity();
    for (double v : res.report.min_concentration) local = std::min(local, v);
    mins[t] = local;
    summary.terminal_states[t] = res.report.terminal_state;
  }
  for (double v : mins) {
    summary.min_over_trials = std::min(summary.min_over_trials, v);
    if (v < kProbeFloor) summary.floor_breached = true;
  }
  return summary;
}

}  // namespace crn
