#pragma once

// The instability stratification of a weight system.
//
// Candidates are the minimal combinations of weights: for every nonempty
// subset of the weight multiset, the metric-closest point of its convex hull
// to the origin, brought into the dominant chamber and deduplicated. For a
// candidate beta, the pairings <gamma_i, beta> split the weights into the
// critical level Z (pairing exactly |beta|^2), the part above it W, and the
// rest; beta is always the min-norm point of the Z-level weights (exact
// Cauchy-Schwarz argument), which is asserted.
//
// Whether the stratum of beta is nonempty reduces to semistability of the
// Z-level subspace under the reductive subgroup fixing beta: shift the
// Z weights by -beta (landing in beta's metric complement), refine each
// sortable block at unequal beta coordinates (the Levi), and stratify
// recursively. The shifted system has NO semistable point exactly when some
// nonempty recursive stratum fills the whole projective space, i.e. its
// unipotent dimension plus |Y| - 1 reaches |Z| - 1; the unstable locus is
// closed, so full dimension in an irreducible projective space means
// everything. The same criterion at the top level decides whether the
// semistable locus of the input itself is nonempty. The recursion terminates
// because each level's shifted weights are metric-orthogonal to all the
// preceding betas, so the depth cannot exceed the ambient dimension.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "instrata/geometry.hpp"
#include "instrata/rational.hpp"
#include "instrata/rep.hpp"

namespace instrata {

inline constexpr std::size_t kDefaultEnumerationCap = 20;

struct LevelDecomposition {
  Int m0;                                 // positive common denominator
  std::vector<Int> levels;                // m_1 < ... < m_p, coprime with m0
  std::vector<std::size_t> multiplicities;
  std::size_t critical_index = 0;         // 1-based s with m_s/m0 = |beta|^2
};

struct Stratum {
  WeightVector beta;  // dominant
  Rational norm_squared;
  LevelDecomposition decomposition;
  std::vector<std::size_t> z_indices;  // pairing == |beta|^2
  std::vector<std::size_t> w_indices;  // pairing  > |beta|^2
  std::vector<std::size_t> y_indices;  // union, sorted
  std::vector<Int> lambda_beta;        // indivisible integer multiple of beta
  std::vector<std::vector<std::size_t>> levi_partition;  // runs per GL block
  std::size_t dim_unipotent = 0;
  // dim of the projective stratum when nonempty; disengaged means empty
  std::optional<std::size_t> dim_stratum_projective;
  bool nonempty = false;  // decided by is_nonempty / stratify
};

struct StratificationResult {
  WeightSystem system;
  // every candidate, nonempty or not, sorted by norm_squared then beta
  std::vector<Stratum> strata;
  bool semistable_nonempty = true;
};

namespace detail {

using Groups = std::vector<std::vector<std::size_t>>;

inline Vec canonical_by_groups(Vec v, const Groups& groups) {
  for (const auto& g : groups) {
    Vec vals;
    vals.reserve(g.size());
    for (std::size_t i : g) vals.push_back(v[i]);
    std::sort(vals.begin(), vals.end());
    for (std::size_t k = 0; k < g.size(); ++k) v[g[k]] = vals[k];
  }
  return v;
}

/// Split every group at unequal beta coordinates (beta is group-sorted, so
/// equal values are contiguous). These are the Levi's sortable blocks.
inline Groups refine_groups(const Groups& groups, const Vec& beta) {
  Groups out;
  for (const auto& g : groups) {
    std::vector<std::size_t> run{g.front()};
    for (std::size_t k = 1; k < g.size(); ++k) {
      if (beta[g[k]] == beta[run.back()]) {
        run.push_back(g[k]);
      } else {
        out.push_back(std::move(run));
        run = {g[k]};
      }
    }
    out.push_back(std::move(run));
  }
  return out;
}

struct CoreStratum {
  Vec beta;
  Rational nsq;
  std::vector<std::size_t> z, w;
  std::size_t dim_u = 0;
  bool nonempty = false;
};

struct CoreResult {
  std::vector<CoreStratum> strata;
  bool semistable_nonempty = true;
};

// Literal candidate enumeration: the min-norm point of every nonempty subset.
inline std::vector<Vec> core_candidates(const std::vector<Vec>& weights,
                                        const MetricForm& metric,
                                        const Groups& groups,
                                        std::size_t cap) {
  const std::size_t n = weights.size();
  if (n == 0) return {};
  if (n > cap || n > 63)
    throw input_error(
        "weight count " + std::to_string(n) + " exceeds the enumeration cap " +
        std::to_string(cap) +
        " (2^N subsets are scanned; raise the cap explicitly to proceed)");
  MinNormDriver driver(weights, metric);
  std::set<Vec> seen;
  std::vector<std::size_t> subset;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    subset.clear();
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::uint64_t{1} << i)) subset.push_back(i);
    MinNormDriver::Bary b = driver.wolfe(subset);
    if (b.nsq == 0) continue;
    seen.insert(canonical_by_groups(driver.point_of(b), groups));
  }
  std::vector<Vec> out(seen.begin(), seen.end());
  std::stable_sort(out.begin(), out.end(), [&](const Vec& a, const Vec& b) {
    return inner(a, a, metric) < inner(b, b, metric);
  });
  return out;
}

inline CoreStratum core_describe(const Vec& beta,
                                 const std::vector<Vec>& weights,
                                 const MetricForm& metric,
                                 const Groups& groups) {
  CoreStratum st;
  st.beta = beta;
  st.nsq = inner(beta, beta, metric);
  if (st.nsq == 0) throw input_error("beta must be nonzero");
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const Rational p = inner(weights[i], beta, metric);
    if (p == st.nsq)
      st.z.push_back(i);
    else if (p > st.nsq)
      st.w.push_back(i);
  }
  if (st.z.empty())
    throw input_error(
        "beta is not a minimal combination of this weight system "
        "(no pairing equals |beta|^2)");
  for (const auto& g : groups)
    for (std::size_t a = 0; a < g.size(); ++a)
      for (std::size_t b = a + 1; b < g.size(); ++b)
        if (beta[g[a]] != beta[g[b]]) ++st.dim_u;
  std::vector<Vec> zw;
  zw.reserve(st.z.size());
  for (std::size_t i : st.z) zw.push_back(weights[i]);
  MinNormResult fp = min_norm_point(zw, metric);
  if (fp.point != beta || fp.norm_squared != st.nsq)
    throw internal_error(
        "stratum fixed point violated: the min-norm point of the Z-level "
        "weights is not beta (weight system not Weyl-symmetric?)");
  return st;
}

inline CoreResult core_stratify(const std::vector<Vec>& weights,
                                const MetricForm& metric, const Groups& groups,
                                std::size_t cap, std::size_t depth);

inline bool core_nonempty(const CoreStratum& st,
                          const std::vector<Vec>& weights,
                          const MetricForm& metric, const Groups& groups,
                          std::size_t cap, std::size_t depth) {
  if (depth > metric.dimension() + 1)
    throw internal_error(
        "nonemptiness recursion exceeded the ambient dimension bound");
  std::vector<Vec> shifted;
  shifted.reserve(st.z.size());
  for (std::size_t i : st.z) shifted.push_back(sub(weights[i], st.beta));
  CoreResult sub =
      core_stratify(shifted, metric, refine_groups(groups, st.beta), cap,
                    depth + 1);
  return sub.semistable_nonempty;
}

inline CoreResult core_stratify(const std::vector<Vec>& weights,
                                const MetricForm& metric, const Groups& groups,
                                std::size_t cap, std::size_t depth) {
  CoreResult out;
  for (const Vec& beta : core_candidates(weights, metric, groups, cap)) {
    CoreStratum st = core_describe(beta, weights, metric, groups);
    st.nonempty = core_nonempty(st, weights, metric, groups, cap, depth);
    if (st.nonempty &&
        st.dim_u + st.z.size() + st.w.size() - 1 == weights.size() - 1)
      out.semistable_nonempty = false;
    out.strata.push_back(std::move(st));
  }
  return out;
}

}  // namespace detail

/// All minimal combinations of weights in the dominant chamber, sorted by
/// norm ascending then lexicographically.
inline std::vector<WeightVector> enumerate_candidates(
    const WeightSystem& ws, std::size_t cap = kDefaultEnumerationCap) {
  return detail::core_candidates(ws.weights, ws.metric,
                                 ws.blocks.coordinate_groups(), cap);
}

/// Stratum descriptor of a dominant candidate; nonemptiness not yet decided.
inline Stratum describe_stratum(const WeightVector& beta,
                                const WeightSystem& ws) {
  if (beta.size() != ws.blocks.ambient_dimension())
    throw input_error("dimension mismatch in describe_stratum");
  if (is_zero(beta)) throw input_error("beta must be nonzero");
  if (!is_dominant(beta, ws.blocks))
    throw input_error("beta is not dominant (sort each GL block ascending)");
  detail::CoreStratum core = detail::core_describe(
      beta, ws.weights, ws.metric, ws.blocks.coordinate_groups());

  Stratum st;
  st.beta = core.beta;
  st.norm_squared = core.nsq;
  st.z_indices = core.z;
  st.w_indices = core.w;
  st.y_indices = core.z;
  st.y_indices.insert(st.y_indices.end(), core.w.begin(), core.w.end());
  std::sort(st.y_indices.begin(), st.y_indices.end());
  st.dim_unipotent = core.dim_u;
  st.lambda_beta = scale_to_coprime_integers(beta);

  // pairings over a common denominator: ( m_1^{n_1} ... m_p^{n_p} ) / m0
  Int m0 = 1;
  std::vector<Rational> pairings(ws.size());
  for (std::size_t i = 0; i < ws.size(); ++i) {
    pairings[i] = inner(ws.weights[i], beta, ws.metric);
    m0 = lcm(m0, denominator(pairings[i]));
  }
  std::set<Rational> level_set(pairings.begin(), pairings.end());
  LevelDecomposition& dec = st.decomposition;
  dec.m0 = m0;
  for (const Rational& lv : level_set) {
    dec.levels.push_back(numerator(lv) * (m0 / denominator(lv)));
    dec.multiplicities.push_back(static_cast<std::size_t>(
        std::count(pairings.begin(), pairings.end(), lv)));
    if (lv == st.norm_squared)
      dec.critical_index = dec.levels.size();  // 1-based
  }
  Int g = m0;
  for (const Int& lv : dec.levels) g = gcd(g, lv);
  if (g != 1 || dec.critical_index == 0)
    throw internal_error("level decomposition invariant violated");

  for (std::size_t b = 0; b < ws.blocks.gl_blocks.size(); ++b) {
    auto [lo, hi] = ws.blocks.block_range(b);
    std::vector<std::size_t> runs;
    std::size_t len = 0;
    for (std::size_t c = lo; c < hi; ++c) {
      if (len > 0 && beta[c] != beta[c - 1]) {
        runs.push_back(len);
        len = 0;
      }
      ++len;
    }
    runs.push_back(len);
    st.levi_partition.push_back(std::move(runs));
  }
  return st;
}

/// Decide whether the stratum of beta actually contains points, by the
/// recursive semistability criterion.
inline bool is_nonempty(const Stratum& st, const WeightSystem& ws,
                        std::size_t cap = kDefaultEnumerationCap) {
  detail::CoreStratum core;
  core.beta = st.beta;
  core.nsq = st.norm_squared;
  core.z = st.z_indices;
  core.w = st.w_indices;
  core.dim_u = st.dim_unipotent;
  return detail::core_nonempty(core, ws.weights, ws.metric,
                               ws.blocks.coordinate_groups(), cap, 1);
}

inline StratificationResult stratify(const WeightSystem& ws,
                                     std::size_t cap = kDefaultEnumerationCap) {
  StratificationResult out{ws, {}, true};
  for (const WeightVector& beta : enumerate_candidates(ws, cap)) {
    Stratum st = describe_stratum(beta, ws);
    st.nonempty = is_nonempty(st, ws, cap);
    if (st.nonempty) {
      st.dim_stratum_projective = st.dim_unipotent + st.y_indices.size() - 1;
      if (*st.dim_stratum_projective == ws.size() - 1)
        out.semistable_nonempty = false;
    }
    out.strata.push_back(std::move(st));
  }
  return out;
}

}  // namespace instrata
