#include "crn/balance.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include <eigen3/Eigen/Dense>

#include "crn/stoich.hpp"

namespace crn {

std::size_t ComplexGraph::node_of(const Complex& c) const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i] == c) return i;
  throw Error("complex not present in graph");
}

ComplexGraph complex_graph(const ReactionNetwork& net) {
  ComplexGraph g;
  std::map<Complex, std::size_t> index;
  auto intern = [&](const Complex& c) {
    auto [it, inserted] = index.try_emplace(c, g.nodes.size());
    if (inserted) g.nodes.push_back(c);
    return it->second;
  };
  for (std::size_t i = 0; i < net.n_reactions(); ++i) {
    const auto& r = net.reactions[i];
    g.edges.push_back({intern(r.reactant), intern(r.product), r.rate_k, i});
  }
  return g;
}

std::vector<std::vector<std::size_t>> linkage_classes(const ComplexGraph& g) {
  std::vector<std::size_t> parent(g.nodes.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : g.edges) parent[find(e.from)] = find(e.to);

  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < g.nodes.size(); ++i)
    groups[find(i)].push_back(i);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  return out;
}

namespace {

// Strongly connected components by iterative Tarjan.
std::vector<std::size_t> scc_ids(const ComplexGraph& g) {
  const std::size_t n = g.nodes.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& e : g.edges) adj[e.from].push_back(e.to);

  std::vector<std::size_t> id(n, SIZE_MAX), low(n), num(n, SIZE_MAX);
  std::vector<std::size_t> stack;
  std::vector<bool> on_stack(n, false);
  std::size_t counter = 0, comp = 0;

  struct Frame {
    std::size_t v, child;
  };
  for (std::size_t start = 0; start < n; ++start) {
    if (num[start] != SIZE_MAX) continue;
    std::vector<Frame> frames{{start, 0}};
    num[start] = low[start] = counter++;
    stack.push_back(start);
    on_stack[start] = true;
    while (!frames.empty()) {
      auto& [v, child] = frames.back();
      if (child < adj[v].size()) {
        std::size_t w = adj[v][child++];
        if (num[w] == SIZE_MAX) {
          num[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], num[w]);
        }
      } else {
        if (low[v] == num[v]) {
          for (;;) {
            std::size_t w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            id[w] = comp;
            if (w == v) break;
          }
          ++comp;
        }
        std::size_t done = v;
        frames.pop_back();
        if (!frames.empty())
          low[frames.back().v] = std::min(low[frames.back().v], low[done]);
      }
    }
  }
  return id;
}

}  // namespace

bool is_weakly_reversible(const ComplexGraph& g) {
  const auto id = scc_ids(g);
  for (const auto& e : g.edges)
    if (id[e.from] != id[e.to]) return false;
  return true;
}

std::size_t deficiency(const ReactionNetwork& net) {
  const ComplexGraph g = complex_graph(net);
  const std::size_t m = g.nodes.size();
  const std::size_t l = linkage_classes(g).size();
  const std::size_t s = subspace_basis(stoich_matrix(net)).dim();
  return m - l - s;  // never negative for a CRN
}

namespace {

double monomial(const std::vector<double>& x, const Complex& y) {
  double v = 1.0;
  for (const auto& [j, c] : y.coeffs) v *= std::pow(x[j], c);
  return v;
}

}  // namespace

std::vector<double> mass_action_rhs(const ReactionNetwork& net,
                                    const std::vector<double>& x) {
  std::vector<double> dx(net.n_species(), 0.0);
  for (const auto& r : net.reactions) {
    const double rate = r.rate_k * monomial(x, r.reactant);
    for (const auto& [j, c] : r.product.coeffs) dx[j] += rate * c;
    for (const auto& [j, c] : r.reactant.coeffs) dx[j] -= rate * c;
  }
  return dx;
}

Equilibrium is_complex_balanced_at(const ReactionNetwork& net,
                                   const std::vector<double>& x, double tol) {
  if (x.size() != net.n_species())
    throw Error("state dimension mismatch");
  for (double v : x)
    if (v <= 0) throw NonPositiveConcentration("state must be positive");

  const ComplexGraph g = complex_graph(net);
  std::vector<double> inflow(g.nodes.size(), 0.0);
  std::vector<double> outflow(g.nodes.size(), 0.0);
  for (const auto& e : g.edges) {
    const double rate = e.weight * monomial(x, g.nodes[e.from]);
    outflow[e.from] += rate;
    inflow[e.to] += rate;
  }
  double residual = 0.0, max_flow = 0.0;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    residual = std::max(residual, std::abs(inflow[i] - outflow[i]));
    max_flow = std::max({max_flow, inflow[i], outflow[i]});
  }
  Equilibrium eq;
  eq.concentrations = x;
  eq.residual = residual;
  eq.complex_balanced = residual <= tol * std::max(1.0, max_flow);
  return eq;
}

namespace {

// Principal cofactor of the class Laplacian: spanning in-tree weight at
// the given node (matrix-tree), strictly positive for a strongly
// connected class.
double tree_weight(const std::vector<std::vector<double>>& lap,
                   std::size_t skip) {
  const std::size_t n = lap.size();
  std::vector<std::vector<double>> a;
  for (std::size_t r = 0; r < n; ++r) {
    if (r == skip) continue;
    std::vector<double> row;
    for (std::size_t c = 0; c < n; ++c)
      if (c != skip) row.push_back(lap[r][c]);
    a.push_back(std::move(row));
  }
  const std::size_t m = a.size();
  if (m == 0) return 1.0;
  double det = 1.0;
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < m; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (a[piv][col] == 0.0) return 0.0;
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t r = col + 1; r < m; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < m; ++c) a[r][c] -= f * a[col][c];
    }
  }
  return det;
}

}  // namespace

std::optional<Equilibrium> find_complex_balanced_equilibrium(
    const ReactionNetwork& net, double tol) {
  const ComplexGraph g = complex_graph(net);
  if (!is_weakly_reversible(g))
    throw NotWeaklyReversible("network is not weakly reversible");

  const auto classes = linkage_classes(g);
  std::vector<std::size_t> class_of(g.nodes.size());
  for (std::size_t c = 0; c < classes.size(); ++c)
    for (std::size_t v : classes[c]) class_of[v] = c;

  // Positive kernel vector of the weighted Laplacian, per linkage class.
  std::vector<double> rho(g.nodes.size(), 0.0);
  for (const auto& cls : classes) {
    std::map<std::size_t, std::size_t> local;
    for (std::size_t i = 0; i < cls.size(); ++i) local[cls[i]] = i;
    std::vector<std::vector<double>> lap(cls.size(),
                                         std::vector<double>(cls.size(), 0.0));
    for (const auto& e : g.edges) {
      if (class_of[e.from] != class_of[e.to] ||
          class_of[e.from] != class_of[cls[0]])
        continue;
      if (!local.count(e.from)) continue;
      lap[local[e.from]][local[e.from]] += e.weight;
      lap[local[e.to]][local[e.from]] -= e.weight;
    }
    double max_w = 0.0;
    std::vector<double> w(cls.size());
    for (std::size_t i = 0; i < cls.size(); ++i) {
      w[i] = tree_weight(lap, i);
      max_w = std::max(max_w, std::abs(w[i]));
    }
    if (max_w == 0.0) return std::nullopt;
    for (std::size_t i = 0; i < cls.size(); ++i) {
      if (w[i] <= 0) return std::nullopt;  // cancellation; class degenerate
      rho[cls[i]] = w[i] / max_w;
    }
  }

  // Solve eta . u = log rho_eta + c_class in least squares (min norm).
  const std::size_t n = net.n_species();
  const std::size_t unknowns = n + classes.size();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(g.nodes.size(), unknowns);
  Eigen::VectorXd b(g.nodes.size());
  for (std::size_t v = 0; v < g.nodes.size(); ++v) {
    for (const auto& [j, c] : g.nodes[v].coeffs) a(v, j) = c;
    a(v, n + class_of[v]) = -1.0;
    b(v) = std::log(rho[v]);
  }
  Eigen::VectorXd sol =
      a.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(b);

  std::vector<double> x(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = std::exp(sol(j));
  Equilibrium eq = is_complex_balanced_at(net, x, tol);
  if (!eq.complex_balanced) return std::nullopt;
  return eq;
}

}  // namespace crn
