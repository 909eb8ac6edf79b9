#include "crn/rational.hpp"

#include <cassert>
#include <cstddef>
#include <stdexcept>

namespace crn {

std::vector<std::size_t> rref(RatMatrix& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t rows = m.size();
  const std::size_t cols = m[0].size();
  std::size_t lead = 0;
  for (std::size_t col = 0; col < cols && lead < rows; ++col) {
    std::size_t sel = lead;
    while (sel < rows && m[sel][col] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(m[sel], m[lead]);
    const Rat inv = Rat(1) / m[lead][col];
    for (auto& v : m[lead]) v *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == lead || m[r][col] == 0) continue;
      const Rat f = m[r][col];
      for (std::size_t c = col; c < cols; ++c) m[r][c] -= f * m[lead][c];
    }
    pivots.push_back(col);
    ++lead;
  }
  return pivots;
}

std::size_t rank(RatMatrix m) {
  return rref(m).size();
}

std::vector<RatVector> nullspace(const RatMatrix& m) {
  if (m.empty()) return {};
  const std::size_t cols = m[0].size();
  RatMatrix e = m;
  const auto pivots = rref(e);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;

  std::vector<RatVector> basis;
  for (std::size_t free_col = 0; free_col < cols; ++free_col) {
    if (is_pivot[free_col]) continue;
    RatVector v(cols, Rat(0));
    v[free_col] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      // row i of e has leading 1 in pivots[i]
      v[pivots[i]] = -e[i][free_col];
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<RatVector> column_space_basis(const RatMatrix& m) {
  RatMatrix e = m;
  const auto pivots = rref(e);
  std::vector<RatVector> basis;
  for (auto col : pivots) {
    RatVector v(m.size());
    for (std::size_t r = 0; r < m.size(); ++r) v[r] = m[r][col];
    basis.push_back(std::move(v));
  }
  return basis;
}

RatMatrix transpose(const RatMatrix& m) {
  if (m.empty()) return {};
  RatMatrix t(m[0].size(), RatVector(m.size()));
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < m[r].size(); ++c) t[c][r] = m[r][c];
  return t;
}

Rat dot(const RatVector& a, const RatVector& b) {
  assert(a.size() == b.size());
  Rat s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

namespace {

// Phase-1 simplex with Bland's rule on an exact tableau.
// Decides feasibility of {x >= 0 : A x = b}.
bool simplex_feasible(RatMatrix a, RatVector b, RatVector& solution) {
  const std::size_t m = a.size();
  const std::size_t n = m == 0 ? 0 : a[0].size();
  if (m == 0) {
    solution.assign(n, Rat(0));
    return true;
  }
  for (std::size_t r = 0; r < m; ++r) {
    if (b[r] < 0) {
      b[r] = -b[r];
      for (auto& v : a[r]) v = -v;
    }
  }
  // Tableau columns: n structural + m artificial + rhs.
  const std::size_t total = n + m;
  RatMatrix t(m, RatVector(total + 1, Rat(0)));
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < n; ++c) t[r][c] = a[r][c];
    t[r][n + r] = 1;
    t[r][total] = b[r];
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t r = 0; r < m; ++r) basis[r] = n + r;
  // Objective: minimize sum of artificials; reduced costs row.
  RatVector obj(total + 1, Rat(0));
  for (std::size_t c = 0; c < total; ++c) {
    Rat s(0);
    for (std::size_t r = 0; r < m; ++r)
      if (basis[r] >= n) s += t[r][c];
    obj[c] = (c >= n ? Rat(1) : Rat(0)) - s;
  }
  {
    Rat s(0);
    for (std::size_t r = 0; r < m; ++r) s += t[r][total];
    obj[total] = -s;
  }
  for (;;) {
    // Bland: smallest index with negative reduced cost.
    std::size_t enter = total;
    for (std::size_t c = 0; c < total; ++c) {
      if (obj[c] < 0) {
        enter = c;
        break;
      }
    }
    if (enter == total) break;
    std::size_t leave = m;
    for (std::size_t r = 0; r < m; ++r) {
      if (t[r][enter] <= 0) continue;
      if (leave == m) {
        leave = r;
        continue;
      }
      const Rat lhs = t[r][total] * t[leave][enter];
      const Rat rhs = t[leave][total] * t[r][enter];
      if (lhs < rhs || (lhs == rhs && basis[r] < basis[leave])) leave = r;
    }
    if (leave == m) throw std::logic_error("phase-1 simplex unbounded");
    const Rat piv = t[leave][enter];
    for (auto& v : t[leave]) v /= piv;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == leave || t[r][enter] == 0) continue;
      const Rat f = t[r][enter];
      for (std::size_t c = 0; c <= total; ++c) t[r][c] -= f * t[leave][c];
    }
    {
      const Rat f = obj[enter];
      for (std::size_t c = 0; c <= total; ++c) obj[c] -= f * t[leave][c];
    }
    basis[leave] = enter;
  }
  if (obj[total] != 0) return false;  // artificials stuck positive
  solution.assign(n, Rat(0));
  for (std::size_t r = 0; r < m; ++r)
    if (basis[r] < n) solution[basis[r]] = t[r][total];
  return true;
}

}  // namespace

bool nonnegative_kernel_vector(const RatMatrix& m, RatVector& witness) {
  if (m.empty() || m[0].empty()) return false;
  const std::size_t n = m[0].size();
  // Feasibility of m x = 0, sum x = 1, x >= 0.
  RatMatrix a = m;
  a.emplace_back(n, Rat(1));
  RatVector b(a.size(), Rat(0));
  b.back() = 1;
  RatVector sol;
  if (!simplex_feasible(a, b, sol)) return false;
  witness = std::move(sol);
  return true;
}

}  // namespace crn
