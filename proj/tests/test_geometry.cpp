#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "instrata/builtins.hpp"
#include "instrata/geometry.hpp"
#include "instrata/selfcheck.hpp"

using namespace instrata;

namespace {

Vec v(std::initializer_list<const char*> cs) {
  Vec out;
  for (const char* c : cs) out.push_back(parse_rational(c));
  return out;
}

Rational q(const char* s) { return parse_rational(s); }

}  // namespace

TEST_CASE("inner products under a gram form") {
  MetricForm id2 = MetricForm::identity(2);
  CHECK(inner(v({"1", "0"}), v({"0", "1"}), id2) == 0);

  // the 5 trace-zero coordinates of the ternary-quadratic-pairs system
  MetricForm id5 = MetricForm::identity(5);
  Vec b = v({"-2/3", "1/3", "1/3", "-1/2", "1/2"});
  CHECK(inner(b, b, id5) == q("7/6"));

  MetricForm m = MetricForm::diagonal(v({"2", "1/14"}));
  CHECK(inner(v({"1", "1"}), v({"1", "-1"}), m) == q("27/14"));

  CHECK_THROWS_AS(inner(v({"1"}), v({"0", "1"}), id2), input_error);
}

TEST_CASE("metric validation") {
  CHECK_THROWS_AS(MetricForm({{q("1"), q("2")}, {q("2"), q("1")}}),
                  input_error);  // det < 0
  CHECK_THROWS_AS(MetricForm({{q("1"), q("2")}, {q("0"), q("1")}}),
                  input_error);  // not symmetric
  CHECK_THROWS_AS(MetricForm::diagonal(v({"1", "0"})), input_error);
  CHECK_THROWS_AS(MetricForm::diagonal(v({"-1"})), input_error);
  MetricForm ok({{q("2"), q("1")}, {q("1"), q("2")}});
  CHECK(ok.dimension() == 2);
  CHECK_THROWS_AS(ok.scaled(q("-2")), input_error);
}

TEST_CASE("min_norm_point basic cases") {
  MetricForm id2 = MetricForm::identity(2);

  MinNormResult single = min_norm_point({v({"2", "-2"})}, id2);
  CHECK(single.point == v({"2", "-2"}));
  CHECK(single.norm_squared == 8);
  CHECK(single.barycentric_coefficients.at(0) == 1);

  MinNormResult pair = min_norm_point({v({"1", "0"}), v({"-1", "0"})}, id2);
  CHECK(pair.point == v({"0", "0"}));
  CHECK(pair.norm_squared == 0);
  CHECK(pair.barycentric_coefficients.at(0) == q("1/2"));
  CHECK(pair.barycentric_coefficients.at(1) == q("1/2"));

  MinNormResult seg = min_norm_point({v({"1", "1"}), v({"2", "0"})}, id2);
  CHECK(seg.point == v({"1", "1"}));
  CHECK(seg.norm_squared == 2);

  MinNormResult zero = min_norm_point({v({"0", "0"})}, id2);
  CHECK(zero.norm_squared == 0);

  CHECK_THROWS_AS(min_norm_point({}, id2), input_error);
  CHECK_THROWS_AS(min_norm_point({v({"1"})}, id2), input_error);
}

TEST_CASE("min_norm_point on weights of the ternary-quadratic pair system") {
  MetricForm id5 = MetricForm::identity(5);
  // x_{2,22}, x_{2,23}, x_{2,33}
  std::vector<Vec> pts = {v({"-2/3", "4/3", "-2/3", "-1/2", "1/2"}),
                          v({"-2/3", "1/3", "1/3", "-1/2", "1/2"}),
                          v({"-2/3", "-2/3", "4/3", "-1/2", "1/2"})};
  MinNormResult r = min_norm_point(pts, id5);
  CHECK(r.point == v({"-2/3", "1/3", "1/3", "-1/2", "1/2"}));
  CHECK(r.norm_squared == q("7/6"));
  MinNormResult o = min_norm_oracle(pts, id5);
  CHECK(o.point == r.point);
  CHECK(o.norm_squared == r.norm_squared);
}

TEST_CASE("min_norm_oracle cases") {
  MetricForm id2 = MetricForm::identity(2);
  MinNormResult a = min_norm_oracle({v({"1", "1"}), v({"2", "0"})}, id2);
  CHECK(a.point == v({"1", "1"}));
  CHECK(a.norm_squared == 2);

  MinNormResult b = min_norm_oracle({v({"0", "0"})}, id2);
  CHECK(b.point == v({"0", "0"}));
  CHECK(b.norm_squared == 0);
}


TEST_CASE("oracle confirms the full pair system hull contains the origin") {
  WeightSystem ws = builtin_example("sym2k3-x-k2");
  MinNormResult r = min_norm_oracle(ws.weights, ws.metric);
  CHECK(r.norm_squared == 0);
  CHECK(is_zero(r.point));
  MinNormResult w = min_norm_point(ws.weights, ws.metric);
  CHECK(w.norm_squared == 0);
}

TEST_CASE("duplicate points collapse onto the lowest index") {
  MetricForm id2 = MetricForm::identity(2);
  std::vector<Vec> pts = {v({"3", "4"}), v({"3", "4"}), v({"3", "4"})};
  MinNormResult r = min_norm_point(pts, id2);
  CHECK(r.point == v({"3", "4"}));
  CHECK(r.barycentric_coefficients.size() == 1);
  CHECK(r.barycentric_coefficients.at(0) == 1);
  CHECK(r.active_indices == std::vector<std::size_t>{0});
}

TEST_CASE("certificates are exact on random instances") {
  selfcheck::SuiteResult s = selfcheck::oracle_equivalence_suite(40, 7);
  for (const auto& f : s.failures) MESSAGE(f);
  CHECK(s.ok());
  CHECK(s.run == 40);
}

TEST_CASE("metric scaling moves the norm, not the point") {
  selfcheck::Rng rng(11);
  for (int iter = 0; iter < 30; ++iter) {
    const std::size_t dim = static_cast<std::size_t>(rng.range(1, 4));
    const std::size_t n = static_cast<std::size_t>(rng.range(1, 6));
    std::vector<Vec> pts(n, Vec(dim));
    for (auto& p : pts)
      for (auto& c : p) c = selfcheck::random_rational(rng);
    MetricForm m = selfcheck::random_metric(rng, dim, iter % 3);
    const Rational c(rng.range(1, 9), rng.range(1, 9));
    MinNormResult r1 = min_norm_point(pts, m);
    MinNormResult r2 = min_norm_point(pts, m.scaled(c));
    CHECK(r1.point == r2.point);
    CHECK(r2.norm_squared == c * r1.norm_squared);
  }
}

TEST_CASE("halfspace lemma: beta in hull with pairings >= |beta|^2 is optimal") {
  selfcheck::Rng rng(13);
  for (int iter = 0; iter < 30; ++iter) {
    const std::size_t dim = static_cast<std::size_t>(rng.range(2, 4));
    MetricForm m = selfcheck::random_metric(rng, dim, iter % 3);
    Vec beta(dim);
    bool zero = true;
    for (auto& c : beta) {
      c = selfcheck::random_rational(rng);
      if (c != 0) zero = false;
    }
    if (zero) beta[0] = 1;
    // points beta + v with <v, beta> >= 0, plus beta itself
    std::vector<Vec> pts = {beta};
    for (int k = 0; k < 5; ++k) {
      Vec off(dim);
      for (auto& c : off) c = selfcheck::random_rational(rng);
      Rational t = inner(off, beta, m);
      if (t < 0)
        for (auto& c : off) c = -c;
      Vec p(dim);
      for (std::size_t d = 0; d < dim; ++d) p[d] = beta[d] + off[d];
      pts.push_back(std::move(p));
    }
    MinNormResult r = min_norm_point(pts, m);
    CHECK(r.point == beta);
    CHECK(r.norm_squared == inner(beta, beta, m));
  }
}

TEST_CASE("contains_origin with certificates") {
  MetricForm id2 = MetricForm::identity(2);
  std::vector<Vec> pts = {v({"1", "0"}), v({"-1", "0"}), v({"0", "1"}),
                          v({"0", "-1"})};
  OriginCertificate cross = contains_origin(pts, id2);
  CHECK(cross.contains);
  Vec rebuilt(2, Rational(0));
  Rational total = 0;
  for (const auto& [i, c] : cross.coefficients) {
    total += c;
    for (std::size_t d = 0; d < 2; ++d) rebuilt[d] += c * pts[i][d];
  }
  CHECK(total == 1);
  CHECK(is_zero(rebuilt));

  OriginCertificate off = contains_origin({v({"1", "1"}), v({"2", "0"})}, id2);
  CHECK(!off.contains);
  CHECK(off.separator == v({"1", "1"}));
  CHECK(inner(v({"1", "1"}), off.separator, id2) > 0);
  CHECK(inner(v({"2", "0"}), off.separator, id2) > 0);

  // the explicit binary-cubic weights form a symmetric set
  OriginCertificate cubic = contains_origin(
      {v({"3", "-3"}), v({"1", "-1"}), v({"-1", "1"}), v({"-3", "3"})}, id2);
  CHECK(cubic.contains);
}

TEST_CASE("project_to_complement") {
  MetricForm id5 = MetricForm::identity(5);
  Vec w = v({"-2/3", "-2/3", "4/3", "-1/2", "1/2"});
  CHECK(is_zero(project_to_complement(w, w, id5)));

  MetricForm id2 = MetricForm::identity(2);
  Vec a = v({"1", "1"});
  Vec n = v({"1", "-1"});
  CHECK(project_to_complement(a, n, id2) == a);  // already orthogonal

  CHECK_THROWS_AS(project_to_complement(a, v({"0", "0"}), id2), input_error);

  selfcheck::Rng rng(3);
  for (int iter = 0; iter < 20; ++iter) {
    const std::size_t dim = static_cast<std::size_t>(rng.range(1, 5));
    MetricForm m = selfcheck::random_metric(rng, dim, iter % 3);
    Vec x(dim), nrm(dim);
    for (auto& c : x) c = selfcheck::random_rational(rng);
    bool zero = true;
    for (auto& c : nrm) {
      c = selfcheck::random_rational(rng);
      if (c != 0) zero = false;
    }
    if (zero) nrm[0] = 1;
    CHECK(inner(project_to_complement(x, nrm, m), nrm, m) == 0);
  }
}
