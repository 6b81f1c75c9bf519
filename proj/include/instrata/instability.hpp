#pragma once

// Point-level instability over the fixed maximal torus: the minimal
// eigen-exponent mu(x, lambda), its normalization nu as a signed square
// (nu itself is a square root, so only sign(mu) * mu^2 / |lambda|^2 is
// exposed, keeping every comparison rational), the optimal destabilizing
// direction beta_x (the min-norm point of the support-weight hull), the
// torus moment average, and the hull-interior test behind k-stability.
//
// All pairings between characters and one-parameter subgroups go through the
// metric's bilinear form, which identifies the two sides; for the block
// identity metric this is the plain integer pairing.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "instrata/geometry.hpp"
#include "instrata/lp.hpp"
#include "instrata/rational.hpp"
#include "instrata/rep.hpp"

namespace instrata {

/// A rational point of the representation, sparse over weight labels.
/// Labels absent from the map are zero coordinates.
struct RationalPoint {
  std::map<std::string, Rational> coords;
};

/// Indices of the nonzero coordinates (the support I_x), in system order.
inline std::vector<std::size_t> support_indices(const RationalPoint& x,
                                                const WeightSystem& ws) {
  std::vector<std::size_t> out;
  for (const auto& [label, value] : x.coords) {
    auto idx = ws.index_of(label);
    if (!idx) throw input_error("unknown coordinate label \"" + label + "\"");
    if (value != 0) out.push_back(*idx);
  }
  std::sort(out.begin(), out.end());
  if (out.empty()) throw input_error("point must be nonzero");
  return out;
}

/// An integral one-parameter subgroup of the torus, trace-zero per GL block.
struct OnePS {
  std::vector<Int> direction;
};

inline OnePS make_one_ps(std::vector<Int> direction,
                         const BlockStructure& blocks) {
  if (direction.size() != blocks.ambient_dimension())
    throw input_error("one-parameter subgroup has wrong dimension");
  bool nonzero = false;
  for (const Int& c : direction)
    if (c != 0) nonzero = true;
  if (!nonzero) throw input_error("one-parameter subgroup must be nonzero");
  for (std::size_t b = 0; b < blocks.gl_blocks.size(); ++b) {
    auto [lo, hi] = blocks.block_range(b);
    Int sum = 0;
    for (std::size_t c = lo; c < hi; ++c) sum += direction[c];
    if (sum != 0)
      throw input_error("one-parameter subgroup: block " +
                        std::to_string(b + 1) + " entries sum to " +
                        sum.str() + ", expected 0");
  }
  return OnePS{std::move(direction)};
}

/// The indivisible integral 1PS that is a positive multiple of beta.
inline OnePS indivisible_one_ps(const Vec& beta, const BlockStructure& blocks) {
  std::vector<Int> dir = scale_to_coprime_integers(beta);
  return make_one_ps(std::move(dir), blocks);
}

inline Vec one_ps_vector(const OnePS& l) {
  Vec v(l.direction.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = Rational(l.direction[i]);
  return v;
}

/// mu(x, lambda): the smallest lambda-exponent among the support weights.
inline Rational mu(const RationalPoint& x, const OnePS& lambda,
                   const WeightSystem& ws) {
  const auto support = support_indices(x, ws);
  const Vec lv = one_ps_vector(lambda);
  if (lv.size() != ws.blocks.ambient_dimension())
    throw input_error("one-parameter subgroup has wrong dimension");
  if (is_zero(lv))
    throw input_error("one-parameter subgroup must be nonzero");
  std::optional<Rational> best;
  for (std::size_t i : support) {
    Rational p = inner(ws.weights[i], lv, ws.metric);
    if (!best || p < *best) best = p;
  }
  return *best;
}

/// sign(mu) * mu^2 / |lambda|^2, positive exactly when lambda drives x to 0.
inline Rational nu_squared(const RationalPoint& x, const OnePS& lambda,
                           const WeightSystem& ws) {
  const Rational m = mu(x, lambda, ws);
  const Vec lv = one_ps_vector(lambda);
  const Rational ll = inner(lv, lv, ws.metric);
  if (ll == 0) throw input_error("one-parameter subgroup must be nonzero");
  Rational v = m * m / ll;
  return m < 0 ? -v : v;
}

struct BetaResult {
  WeightVector beta;  // dominant representative
  Rational norm_squared;
  // the min-norm point of the support hull itself, a Weyl conjugate of beta;
  // this is the direction along which the Kempf maximum is attained
  WeightVector destabilizing;
};

/// The optimal destabilizing datum of x, or nullopt when x is semistable
/// (the origin lies in the support-weight hull). nu_squared(x, .) is bounded
/// by norm_squared and attains it at the indivisible multiple of the
/// destabilizing direction.
inline std::optional<BetaResult> beta_of_point(const RationalPoint& x,
                                               const WeightSystem& ws) {
  const auto support = support_indices(x, ws);
  std::vector<Vec> pts;
  pts.reserve(support.size());
  for (std::size_t i : support) pts.push_back(ws.weights[i]);
  MinNormResult r = min_norm_point(pts, ws.metric);
  if (r.norm_squared == 0) return std::nullopt;
  return BetaResult{dominant_representative(r.point, ws.blocks).first,
                    r.norm_squared, r.point};
}

/// Torus moment average: sum x_i^2 gamma_i / sum x_i^2 over the support.
inline WeightVector moment(const RationalPoint& x, const WeightSystem& ws) {
  const auto support = support_indices(x, ws);
  Rational total = 0;
  Vec out(ws.blocks.ambient_dimension(), Rational(0));
  for (std::size_t i : support) {
    const Rational sq = x.coords.at(ws.labels[i]) * x.coords.at(ws.labels[i]);
    total += sq;
    for (std::size_t c = 0; c < out.size(); ++c)
      out[c] += sq * ws.weights[i][c];
  }
  for (auto& c : out) c /= total;
  return out;
}

/// Does the support-weight hull contain the origin in its interior relative
/// to the full trace-zero ambient space? Decided exactly: the hull must span
/// that space and admit a strictly positive convex representation of 0
/// (found by a small exact simplex maximizing the least coefficient).
inline bool is_k_stable_torus(const RationalPoint& x, const WeightSystem& ws) {
  const auto support = support_indices(x, ws);
  std::vector<Vec> gamma;
  gamma.reserve(support.size());
  for (std::size_t i : support) gamma.push_back(ws.weights[i]);
  if (detail::matrix_rank(gamma) != ws.blocks.trace_zero_dimension())
    return false;
  // maximize t  s.t.  sum_i (s_i + t) gamma_i = 0, sum_i (s_i + t) = 1,
  // s >= 0, t free (t = tp - tm). Value > 0 gives the strict representation.
  const std::size_t n = gamma.size();
  const std::size_t dim = ws.blocks.ambient_dimension();
  Vec gsum(dim, Rational(0));
  for (const auto& g : gamma)
    for (std::size_t c = 0; c < dim; ++c) gsum[c] += g[c];
  std::vector<Vec> a(dim + 1, Vec(n + 2, Rational(0)));
  Vec b(dim + 1, Rational(0));
  for (std::size_t c = 0; c < dim; ++c) {
    for (std::size_t i = 0; i < n; ++i) a[c][i] = gamma[i][c];
    a[c][n] = gsum[c];
    a[c][n + 1] = -gsum[c];
  }
  for (std::size_t i = 0; i < n; ++i) a[dim][i] = 1;
  a[dim][n] = Rational(static_cast<long>(n));
  a[dim][n + 1] = -Rational(static_cast<long>(n));
  b[dim] = 1;
  Vec c_obj(n + 2, Rational(0));
  c_obj[n] = 1;
  c_obj[n + 1] = -1;
  detail::LpResult lp = detail::solve_lp_max(std::move(a), std::move(b),
                                             std::move(c_obj));
  if (lp.status == detail::LpStatus::unbounded)
    throw internal_error("interior test LP is unbounded");
  return lp.status == detail::LpStatus::optimal && lp.value > 0;
}

}  // namespace instrata
