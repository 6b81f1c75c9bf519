#pragma once

// Deterministic randomized self-checks:
//   - oracle equivalence: Wolfe's method against the exhaustive KKT oracle on
//     random small instances, plus full certificate verification of both.
//   - Kempf duality: on random supports of the sym2k3-x-k2 system,
//     nu^2(x, lambda_beta) equals |beta_x|^2 exactly, and nu^2(x, lambda)
//     never exceeds it over random integral 1PS.
// Seeds are fixed by the caller; mt19937_64 output is reduced by modulus so
// runs are reproducible byte for byte.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "instrata/builtins.hpp"
#include "instrata/geometry.hpp"
#include "instrata/instability.hpp"
#include "instrata/rational.hpp"
#include "instrata/rep.hpp"

namespace instrata::selfcheck {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  long range(long lo, long hi) {
    return lo + static_cast<long>(eng_() %
                                  static_cast<std::uint64_t>(hi - lo + 1));
  }
  std::uint64_t bits() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

struct SuiteResult {
  std::string name;
  std::size_t run = 0;
  std::size_t passed = 0;
  std::vector<std::string> failures;
  bool ok() const { return run > 0 && passed == run; }
  void record(bool pass, const std::string& what) {
    ++run;
    if (pass)
      ++passed;
    else if (failures.size() < 8)
      failures.push_back(what);
  }
};

/// Exact certificate check: reconstruction, feasibility, Caratheodory bound
/// and KKT optimality. Returns an empty string when everything holds.
inline std::string verify_certificate(const std::vector<Vec>& points,
                                      const MetricForm& m,
                                      const MinNormResult& r) {
  Rational total = 0;
  Vec rebuilt(m.dimension(), Rational(0));
  for (const auto& [i, c] : r.barycentric_coefficients) {
    if (i >= points.size()) return "certificate index out of range";
    if (c < 0) return "negative barycentric coefficient";
    total += c;
    for (std::size_t d = 0; d < rebuilt.size(); ++d)
      rebuilt[d] += c * points[i][d];
  }
  if (total != 1) return "coefficients do not sum to 1";
  if (rebuilt != r.point) return "certificate does not reconstruct the point";
  if (r.active_indices.size() > m.dimension() + 1)
    return "active set exceeds dimension+1";
  if (inner(r.point, r.point, m) != r.norm_squared)
    return "norm_squared mismatch";
  for (const auto& p : points)
    if (inner(p, r.point, m) < r.norm_squared) return "KKT optimality fails";
  return {};
}

inline Rational random_rational(Rng& rng) {
  return Rational(rng.range(-9, 9), rng.range(1, 9));
}

inline MetricForm random_metric(Rng& rng, std::size_t dim, int kind) {
  if (kind == 0) return MetricForm::identity(dim);
  if (kind == 1) {
    Vec diag(dim);
    for (auto& d : diag) d = Rational(rng.range(1, 9), rng.range(1, 9));
    return MetricForm::diagonal(std::move(diag));
  }
  // A^T A + I: symmetric and positive definite by construction
  std::vector<Vec> a(dim, Vec(dim));
  for (auto& row : a)
    for (auto& e : row) e = Rational(rng.range(-3, 3));
  std::vector<Vec> g(dim, Vec(dim, Rational(0)));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      for (std::size_t k = 0; k < dim; ++k) g[i][j] += a[k][i] * a[k][j];
      if (i == j) g[i][j] += 1;
    }
  return MetricForm(std::move(g));
}

inline SuiteResult oracle_equivalence_suite(std::size_t instances,
                                            std::uint64_t seed) {
  SuiteResult out;
  out.name = "oracle-equivalence";
  Rng rng(seed);
  for (std::size_t k = 0; k < instances; ++k) {
    const std::size_t dim = static_cast<std::size_t>(rng.range(1, 5));
    const std::size_t npts = static_cast<std::size_t>(rng.range(1, 10));
    MetricForm m = random_metric(rng, dim, static_cast<int>(k % 3));
    std::vector<Vec> pts(npts, Vec(dim));
    for (auto& p : pts)
      for (auto& c : p) c = random_rational(rng);
    MinNormResult a = min_norm_point(pts, m);
    MinNormResult b = min_norm_oracle(pts, m);
    std::string why;
    if (a.point != b.point || a.norm_squared != b.norm_squared)
      why = "wolfe and oracle disagree";
    if (why.empty()) why = verify_certificate(pts, m, a);
    if (why.empty()) why = verify_certificate(pts, m, b);
    out.record(why.empty(), "instance " + std::to_string(k) + ": " + why);
  }
  return out;
}

inline OnePS random_trace_zero_ps(Rng& rng, const BlockStructure& blocks) {
  for (;;) {
    std::vector<Int> dir(blocks.ambient_dimension(), Int(0));
    bool ok = true;
    for (std::size_t b = 0; b < blocks.gl_blocks.size() && ok; ++b) {
      auto [lo, hi] = blocks.block_range(b);
      long sum = 0;
      for (std::size_t c = lo; c + 1 < hi; ++c) {
        long e = rng.range(-5, 5);
        dir[c] = e;
        sum += e;
      }
      if (sum < -5 || sum > 5) ok = false;
      dir[hi - 1] = -sum;
    }
    for (std::size_t t = 0; t < blocks.extra_torus.size(); ++t)
      dir[blocks.gl_dimension() + t] = rng.range(-5, 5);
    if (!ok) continue;
    bool nonzero = false;
    for (const auto& e : dir)
      if (e != 0) nonzero = true;
    if (nonzero) return OnePS{std::move(dir)};
  }
}

struct DualitySuites {
  SuiteResult equality;  // nu^2 at lambda_beta equals |beta|^2
  SuiteResult bound;     // nu^2 at random lambda never exceeds |beta|^2
};

inline DualitySuites kempf_duality_suite(std::size_t unstable_supports,
                                         std::size_t lambdas_per_support,
                                         std::uint64_t seed) {
  DualitySuites out;
  out.equality.name = "kempf-duality-max";
  out.bound.name = "kempf-duality-bound";
  const WeightSystem ws = builtin_example("sym2k3-x-k2");
  Rng rng(seed);
  std::size_t attempts = 0;
  while (out.equality.run < unstable_supports) {
    if (++attempts > 1000 * unstable_supports)
      throw internal_error("duality suite failed to sample unstable supports");
    const std::uint64_t mask =
        1 + rng.bits() % ((std::uint64_t{1} << ws.size()) - 1);
    RationalPoint x;
    for (std::size_t i = 0; i < ws.size(); ++i)
      if (mask & (std::uint64_t{1} << i)) {
        long num = 0;
        while (num == 0) num = rng.range(-9, 9);
        x.coords[ws.labels[i]] = Rational(num, rng.range(1, 9));
      }
    auto beta = beta_of_point(x, ws);
    if (!beta) continue;  // semistable support: not part of this suite
    OnePS lam = indivisible_one_ps(beta->destabilizing, ws.blocks);
    out.equality.record(nu_squared(x, lam, ws) == beta->norm_squared,
                        "support mask " + std::to_string(mask) +
                            ": nu^2(lambda_beta) != |beta|^2");
    for (std::size_t j = 0; j < lambdas_per_support; ++j) {
      OnePS l = random_trace_zero_ps(rng, ws.blocks);
      out.bound.record(nu_squared(x, l, ws) <= beta->norm_squared,
                       "support mask " + std::to_string(mask) +
                           ": nu^2 exceeds |beta|^2");
    }
  }
  return out;
}

}  // namespace instrata::selfcheck
