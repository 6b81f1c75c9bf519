#pragma once

// Small exact-rational linear programming: two-phase primal simplex with
// Bland's rule (no cycling, no tolerances). Sizes here are tiny; the one
// consumer is the hull-interior test, whose LP has (ambient dimension + 1)
// rows, so the tableau is kept naive and readable.

#include <cstddef>
#include <vector>

#include "instrata/rational.hpp"

namespace instrata::detail {

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
  LpStatus status;
  Rational value;
  Vec x;
};

/// maximize c.x subject to A x = b, x >= 0.
inline LpResult solve_lp_max(std::vector<Vec> a, Vec b, Vec c) {
  const std::size_t m = a.size();
  const std::size_t n = c.size();
  for (std::size_t r = 0; r < m; ++r)
    if (b[r] < 0) {
      for (auto& e : a[r]) e = -e;
      b[r] = -b[r];
    }
  // columns: n structural + m artificial
  std::vector<Vec> t(m, Vec(n + m, Rational(0)));
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t j = 0; j < n; ++j) t[r][j] = a[r][j];
    t[r][n + r] = 1;
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t r = 0; r < m; ++r) basis[r] = n + r;

  const auto pivot = [&](std::size_t pr, std::size_t pc) {
    const Rational p = t[pr][pc];
    for (auto& e : t[pr]) e /= p;
    b[pr] /= p;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == pr || t[r][pc] == 0) continue;
      const Rational f = t[r][pc];
      for (std::size_t j = 0; j < n + m; ++j) t[r][j] -= f * t[pr][j];
      b[r] -= f * b[pr];
    }
    basis[pr] = pc;
  };

  // Bland: entering = lowest column with positive reduced cost; leaving =
  // lowest basic variable among the minimum-ratio rows.
  const auto run = [&](const Vec& obj, std::size_t ncols) -> LpStatus {
    for (;;) {
      std::size_t enter = ncols;
      for (std::size_t j = 0; j < ncols && enter == ncols; ++j) {
        Rational rc = obj[j];
        for (std::size_t r = 0; r < m; ++r)
          if (t[r][j] != 0) rc -= obj[basis[r]] * t[r][j];
        if (rc > 0) enter = j;
      }
      if (enter == ncols) return LpStatus::optimal;
      std::size_t leave = m;
      Rational best;
      for (std::size_t r = 0; r < m; ++r) {
        if (t[r][enter] <= 0) continue;
        Rational ratio = b[r] / t[r][enter];
        if (leave == m || ratio < best ||
            (ratio == best && basis[r] < basis[leave])) {
          best = ratio;
          leave = r;
        }
      }
      if (leave == m) return LpStatus::unbounded;
      pivot(leave, enter);
    }
  };

  // phase 1: drive the artificials to zero
  Vec obj1(n + m, Rational(0));
  for (std::size_t r = 0; r < m; ++r) obj1[n + r] = -1;
  run(obj1, n + m);
  Rational phase1 = 0;
  for (std::size_t r = 0; r < m; ++r) phase1 += obj1[basis[r]] * b[r];
  if (phase1 < 0) return {LpStatus::infeasible, Rational(0), {}};
  // pivot any lingering zero-valued artificial out of the basis
  for (std::size_t r = 0; r < m; ++r) {
    if (basis[r] < n) continue;
    std::size_t j = 0;
    while (j < n && t[r][j] == 0) ++j;
    if (j < n) pivot(r, j);
    // an all-zero row is a redundant constraint; its artificial stays basic
    // at value zero and never re-enters phase 2 (reduced costs ignore it)
  }

  Vec obj2(n + m, Rational(0));
  for (std::size_t j = 0; j < n; ++j) obj2[j] = c[j];
  LpStatus st = run(obj2, n);
  if (st != LpStatus::optimal) return {st, Rational(0), {}};
  LpResult out{LpStatus::optimal, Rational(0), Vec(n, Rational(0))};
  for (std::size_t r = 0; r < m; ++r)
    if (basis[r] < n) out.x[basis[r]] = b[r];
  for (std::size_t j = 0; j < n; ++j) out.value += c[j] * out.x[j];
  return out;
}

/// Rank of the rational matrix whose rows are the given vectors.
inline std::size_t matrix_rank(std::vector<Vec> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows[0].size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      const Rational f = rows[r][c] / rows[rank][c];
      for (std::size_t j = c; j < cols; ++j) rows[r][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  return rank;
}

}  // namespace instrata::detail
