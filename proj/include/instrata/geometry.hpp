#pragma once

// Exact rational convex geometry under a positive-definite Gram form:
// inner products, the minimum-norm point of a convex hull with a barycentric
// certificate, origin membership, and orthogonal projection.
//
// min_norm_point is Wolfe's nearest-point algorithm run entirely in exact
// arithmetic. The state is a "corral": an affinely independent set of input
// points whose affine minimizer has strictly positive barycentric weights.
// Each major cycle adds the input point with the smallest pairing against the
// current iterate and re-minimizes, dropping points whose weight would turn
// negative. The objective strictly decreases across major cycles and a corral
// is never revisited, so the loop is finite without any tolerance. The
// optimality test is the exact KKT condition  min_j <p_j, x>  >=  <x, x>.
//
// min_norm_oracle is the independent check: it enumerates every affinely
// independent subset of size <= dimension+1, solves the bordered KKT system,
// and returns the unique feasible optimum. Both must agree exactly.

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "instrata/rational.hpp"

namespace instrata {

/// Symmetric positive-definite Gram form on rational vectors.
class MetricForm {
 public:
  explicit MetricForm(std::vector<Vec> gram) : gram_(std::move(gram)) {
    const std::size_t d = gram_.size();
    if (d == 0) throw input_error("metric dimension must be positive");
    for (const auto& row : gram_)
      if (row.size() != d) throw input_error("metric gram matrix is not square");
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j)
        if (gram_[i][j] != gram_[j][i])
          throw input_error("metric gram matrix is not symmetric");
    // Sylvester: symmetric with all leading principal minors > 0. Elimination
    // without row exchange makes pivot k equal det_k / det_{k-1}.
    std::vector<Vec> m = gram_;
    for (std::size_t k = 0; k < d; ++k) {
      if (m[k][k] <= 0)
        throw input_error("metric gram matrix is not positive definite");
      for (std::size_t r = k + 1; r < d; ++r) {
        if (m[r][k] == 0) continue;
        const Rational f = m[r][k] / m[k][k];
        for (std::size_t c = k; c < d; ++c) m[r][c] -= f * m[k][c];
      }
    }
  }

  static MetricForm identity(std::size_t dim) {
    return diagonal(Vec(dim, Rational(1)));
  }

  static MetricForm diagonal(Vec scales) {
    std::vector<Vec> g(scales.size(), Vec(scales.size(), Rational(0)));
    for (std::size_t i = 0; i < scales.size(); ++i) g[i][i] = scales[i];
    return MetricForm(std::move(g));
  }

  /// The form with gram scaled by c > 0 (same geometry, norms scaled by c).
  MetricForm scaled(const Rational& c) const {
    if (c <= 0) throw input_error("metric scale must be positive");
    std::vector<Vec> g = gram_;
    for (auto& row : g)
      for (auto& e : row) e *= c;
    return MetricForm(std::move(g));
  }

  std::size_t dimension() const { return gram_.size(); }
  const std::vector<Vec>& gram() const { return gram_; }

 private:
  std::vector<Vec> gram_;
};

inline Rational inner(const Vec& u, const Vec& v, const MetricForm& m) {
  if (u.size() != m.dimension() || v.size() != m.dimension())
    throw input_error("dimension mismatch in inner product");
  Rational acc = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] == 0) continue;
    Rational row = 0;
    for (std::size_t j = 0; j < v.size(); ++j)
      if (v[j] != 0) row += m.gram()[i][j] * v[j];
    acc += u[i] * row;
  }
  return acc;
}

inline Rational norm_squared(const Vec& v, const MetricForm& m) {
  return inner(v, v, m);
}

struct MinNormResult {
  Vec point;
  Rational norm_squared;
  // Input index -> coefficient; only nonzero coefficients are stored. For
  // duplicated input points the full coefficient sits on the lowest index.
  std::map<std::size_t, Rational> barycentric_coefficients;
  std::vector<std::size_t> active_indices;
};

namespace detail {

/// Solve A x = b by exact Gaussian elimination; nullopt if singular.
inline std::optional<Vec> solve_linear(std::vector<Vec> a, Vec b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    const Rational p = a[col][col];
    for (std::size_t c = col; c < n; ++c) a[col][c] /= p;
    b[col] /= p;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  return b;
}

// Minimum-norm machinery over a fixed list of points with the pairwise Gram
// table precomputed once, so that repeated subset solves (the stratification
// enumerates every subset of the weight set) never touch coordinates.
// Internally the points are rescaled by the common denominator: barycentric
// coefficients are scale invariant, so only the returned norm is mapped back.
class MinNormDriver {
 public:
  MinNormDriver(std::vector<Vec> points, const MetricForm& m)
      : points_(std::move(points)), metric_(&m) {
    if (points_.empty()) throw input_error("min-norm input must be nonempty");
    for (const auto& p : points_)
      if (p.size() != m.dimension())
        throw input_error("dimension mismatch in min-norm input");
    Int scale = 1;
    for (const auto& p : points_)
      for (const auto& c : p) scale = lcm(scale, denominator(c));
    std::vector<Vec> scaled = points_;
    if (scale != 1)
      for (auto& p : scaled)
        for (auto& c : p) c *= scale;
    nsq_unscale_ = Rational(1, scale * scale);
    const std::size_t n = points_.size();
    q_.assign(n, Vec(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j)
        q_[i][j] = q_[j][i] = inner(scaled[i], scaled[j], m);
  }

  // Barycentric coefficients (index into the master list -> weight > 0) of
  // the minimum-norm point of conv(points[subset]).
  struct Bary {
    std::map<std::size_t, Rational> coeff;
    Rational nsq;
  };

  Bary wolfe(const std::vector<std::size_t>& subset) const {
    std::vector<std::size_t> corral;
    std::vector<Rational> w;
    {
      std::size_t best = subset.front();
      for (std::size_t j : subset)
        if (q_[j][j] < q_[best][best]) best = j;
      corral.push_back(best);
      w.push_back(Rational(1));
    }
    for (std::size_t guard = 0;; ++guard) {
      if (guard > (std::size_t{1} << 20))
        throw internal_error("min-norm iteration bound exceeded");
      // x is the affine minimizer of its corral, so every corral member
      // pairs to exactly |x|^2
      const Rational xx = pairing(corral, w, corral.front());
      std::size_t enter = subset.front();
      Rational best;
      bool first = true;
      for (std::size_t j : subset) {
        Rational pj = pairing(corral, w, j);
        if (first || pj < best) {
          best = pj;
          enter = j;
          first = false;
        }
      }
      if (best >= xx) break;  // exact KKT optimality
      corral.push_back(enter);
      w.push_back(Rational(0));
      // minor cycles: re-minimize over the corral, dropping blocking points
      for (;;) {
        Vec v = affine_minimizer(corral);
        bool interior = true;
        for (const auto& c : v)
          if (c <= 0) interior = false;
        if (interior) {
          w.assign(v.begin(), v.end());
          break;
        }
        std::optional<Rational> theta;
        for (std::size_t i = 0; i < corral.size(); ++i) {
          if (v[i] > 0) continue;
          Rational t = w[i] / (w[i] - v[i]);
          if (!theta || t < *theta) theta = t;
        }
        if (!theta || *theta <= 0)
          throw internal_error("min-norm line search failed to progress");
        for (std::size_t i = 0; i < corral.size(); ++i)
          w[i] += *theta * (v[i] - w[i]);
        std::vector<std::size_t> keep_idx;
        for (std::size_t i = 0; i < corral.size(); ++i)
          if (w[i] != 0) keep_idx.push_back(i);
        if (keep_idx.size() == corral.size())
          throw internal_error("min-norm line search dropped no point");
        compact(corral, w, keep_idx);
      }
    }
    Bary out;
    out.nsq = pairing(corral, w, corral.front()) * nsq_unscale_;
    for (std::size_t i = 0; i < corral.size(); ++i) out.coeff[corral[i]] = w[i];
    return out;
  }

  Bary oracle(const std::vector<std::size_t>& subset) const {
    const std::size_t n = subset.size();
    const std::size_t max_size =
        std::min(n, metric_->dimension() + 1);
    std::vector<std::size_t> pick;
    for (std::size_t size = 1; size <= max_size; ++size) {
      pick.assign(size, 0);
      for (std::size_t i = 0; i < size; ++i) pick[i] = i;
      for (;;) {
        std::vector<std::size_t> t(size);
        for (std::size_t i = 0; i < size; ++i) t[i] = subset[pick[i]];
        if (auto r = try_active_set(t, subset)) {
          r->nsq *= nsq_unscale_;
          return *r;
        }
        // next combination in lexicographic order
        std::size_t i = size;
        while (i > 0 && pick[i - 1] == n - size + (i - 1)) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
      }
    }
    throw internal_error("exhaustive KKT search found no optimum");
  }

  Vec point_of(const Bary& b) const {
    Vec x(metric_->dimension(), Rational(0));
    for (const auto& [i, c] : b.coeff)
      for (std::size_t d = 0; d < x.size(); ++d) x[d] += c * points_[i][d];
    return x;
  }

  const std::vector<Vec>& points() const { return points_; }

 private:
  Rational pairing(const std::vector<std::size_t>& corral,
                   const std::vector<Rational>& w, std::size_t j) const {
    Rational acc = 0;
    for (std::size_t i = 0; i < corral.size(); ++i)
      acc += w[i] * q_[j][corral[i]];
    return acc;
  }

  // Barycentric coordinates of the min-norm point of the affine hull of the
  // corral: bordered system [Q 1; 1 0] (v; mu) = (0; 1). The corral is
  // affinely independent by construction, so the system is nonsingular.
  Vec affine_minimizer(const std::vector<std::size_t>& corral) const {
    const std::size_t k = corral.size();
    std::vector<Vec> a(k + 1, Vec(k + 1, Rational(0)));
    Vec b(k + 1, Rational(0));
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) a[i][j] = q_[corral[i]][corral[j]];
      a[i][k] = 1;
      a[k][i] = 1;
    }
    b[k] = 1;
    auto sol = solve_linear(std::move(a), std::move(b));
    if (!sol) throw internal_error("corral became affinely dependent");
    sol->pop_back();
    return *sol;
  }

  std::optional<Bary> try_active_set(
      const std::vector<std::size_t>& t,
      const std::vector<std::size_t>& subset) const {
    const std::size_t k = t.size();
    std::vector<Vec> a(k + 1, Vec(k + 1, Rational(0)));
    Vec b(k + 1, Rational(0));
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) a[i][j] = q_[t[i]][t[j]];
      a[i][k] = 1;
      a[k][i] = 1;
    }
    b[k] = 1;
    auto sol = solve_linear(std::move(a), std::move(b));
    if (!sol) return std::nullopt;  // affinely dependent
    for (std::size_t i = 0; i < k; ++i)
      if ((*sol)[i] < 0) return std::nullopt;
    Bary out;
    out.nsq = 0;
    for (std::size_t i = 0; i < k; ++i) {
      Rational pi = 0;
      for (std::size_t j = 0; j < k; ++j) pi += (*sol)[j] * q_[t[i]][t[j]];
      out.nsq += (*sol)[i] * pi;
    }
    for (std::size_t j : subset) {
      Rational pj = 0;
      for (std::size_t i = 0; i < k; ++i) pj += (*sol)[i] * q_[j][t[i]];
      if (pj < out.nsq) return std::nullopt;  // not globally optimal
    }
    for (std::size_t i = 0; i < k; ++i)
      if ((*sol)[i] != 0) out.coeff[t[i]] = (*sol)[i];
    return out;
  }

  static void compact(std::vector<std::size_t>& corral,
                      std::vector<Rational>& w,
                      const std::vector<std::size_t>& keep_idx) {
    std::vector<std::size_t> c2;
    std::vector<Rational> w2;
    for (std::size_t i : keep_idx) {
      c2.push_back(corral[i]);
      w2.push_back(w[i]);
    }
    corral.swap(c2);
    w.swap(w2);
  }

  std::vector<Vec> points_;
  const MetricForm* metric_;
  std::vector<Vec> q_;           // pairwise gram of the rescaled points
  Rational nsq_unscale_{1};      // maps scaled norms back to the input scale
};

// Deduplicate points, run the solver, and map the certificate back to the
// lowest original index of each distinct point.
template <typename Solve>
MinNormResult run_min_norm(const std::vector<Vec>& points, const MetricForm& m,
                           Solve&& solve) {
  if (points.empty()) throw input_error("min-norm input must be nonempty");
  std::map<Vec, std::size_t> first_seen;
  std::vector<Vec> distinct;
  std::vector<std::size_t> original;  // distinct index -> lowest input index
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != m.dimension())
      throw input_error("dimension mismatch in min-norm input");
    if (first_seen.emplace(points[i], distinct.size()).second) {
      distinct.push_back(points[i]);
      original.push_back(i);
    }
  }
  MinNormDriver driver(distinct, m);
  std::vector<std::size_t> all(distinct.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  MinNormDriver::Bary b = solve(driver, all);
  MinNormResult out;
  out.point = driver.point_of(b);
  out.norm_squared = b.nsq;
  for (const auto& [i, c] : b.coeff) {
    out.barycentric_coefficients[original[i]] = c;
    out.active_indices.push_back(original[i]);
  }
  return out;
}

}  // namespace detail

/// Metric-closest point of conv(points) to the origin (Wolfe's method).
inline MinNormResult min_norm_point(const std::vector<Vec>& points,
                                    const MetricForm& m) {
  return detail::run_min_norm(points, m, [](const detail::MinNormDriver& d,
                                            const std::vector<std::size_t>& s) {
    return d.wolfe(s);
  });
}

/// Independent exhaustive-KKT solution of the same problem.
inline MinNormResult min_norm_oracle(const std::vector<Vec>& points,
                                     const MetricForm& m) {
  return detail::run_min_norm(points, m, [](const detail::MinNormDriver& d,
                                            const std::vector<std::size_t>& s) {
    return d.oracle(s);
  });
}

struct OriginCertificate {
  bool contains;
  // contains: barycentric certificate of 0 over the input points
  std::map<std::size_t, Rational> coefficients;
  // !contains: <gamma, separator> >= |separator|^2 > 0 for every input
  Vec separator;
};

inline OriginCertificate contains_origin(const std::vector<Vec>& points,
                                         const MetricForm& m) {
  MinNormResult r = min_norm_point(points, m);
  OriginCertificate out;
  out.contains = r.norm_squared == 0;
  if (out.contains)
    out.coefficients = r.barycentric_coefficients;
  else
    out.separator = r.point;
  return out;
}

/// v minus its metric-orthogonal component along normal.
inline Vec project_to_complement(const Vec& v, const Vec& normal,
                                 const MetricForm& m) {
  if (is_zero(normal)) throw input_error("projection normal must be nonzero");
  const Rational f = inner(v, normal, m) / inner(normal, normal, m);
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] - f * normal[i];
  return out;
}

}  // namespace instrata
