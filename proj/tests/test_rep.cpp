#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>
#include <set>
#include <string>

#include "instrata/builtins.hpp"
#include "instrata/io.hpp"
#include "instrata/rep.hpp"
#include "instrata/selfcheck.hpp"

using namespace instrata;

namespace {

Vec v(std::initializer_list<const char*> cs) {
  Vec out;
  for (const char* c : cs) out.push_back(parse_rational(c));
  return out;
}

std::string err_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const input_error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("rational literal parsing") {
  CHECK(parse_rational("3/12") == Rational(1, 4));
  CHECK(parse_rational("-7/2") == Rational(-7, 2));
  CHECK(parse_rational("0") == 0);
  CHECK(parse_rational("-5") == -5);
  for (const char* bad : {"", "1.5", "+3", "3/-4", "3/0", "a", "1/", "/2",
                          "2 /3", "--3"})
    CHECK_THROWS_AS(parse_rational(bad), input_error);
}

TEST_CASE("parse_rep grammar") {
  RepExpr t = parse_rep("sym(2,std(1))*std(2)");
  REQUIRE(t.summands.size() == 1);
  REQUIRE(t.summands[0].factors.size() == 2);
  CHECK(std::get<RepExpr::Sym>(t.summands[0].factors[0]).degree == 2);
  CHECK(std::get<RepExpr::Sym>(t.summands[0].factors[0]).block == 1);
  CHECK(std::get<RepExpr::Std>(t.summands[0].factors[1]).block == 2);

  RepExpr s = parse_rep("std(1)+std(1)");
  CHECK(s.summands.size() == 2);

  RepExpr ws = parse_rep("  sym( 2 , std( 1 ) ) * std( 2 ) ");
  CHECK(ws.summands.size() == 1);

  RepExpr dual = parse_rep("dual(std(1))");
  CHECK(std::holds_alternative<RepExpr::Dual>(dual.summands[0].factors[0]));

  // parenthesized sums distribute over products
  RepExpr dist = parse_rep("(std(1)+sym(2,std(1)))*std(2)");
  CHECK(dist.summands.size() == 2);
  CHECK(dist.summands[0].factors.size() == 2);
}

TEST_CASE("parse_rep errors carry positions and reasons") {
  CHECK(err_of([] { parse_rep("sym(2,std(1)*std(2))"); })
            .find("expected ')'") != std::string::npos);
  CHECK(err_of([] { parse_rep("sym(2,dual(std(1)))"); })
            .find("sym argument must be std(i)") != std::string::npos);
  CHECK(err_of([] { parse_rep("dual(sym(2,std(1)))"); })
            .find("dual argument must be std(i)") != std::string::npos);
  CHECK(err_of([] { parse_rep("std(1)*std(1)"); })
            .find("repeated inside one tensor term") != std::string::npos);
  CHECK(err_of([] { parse_rep("sym(0,std(1))"); })
            .find("sym degree must be >= 1") != std::string::npos);
  CHECK(err_of([] { parse_rep("std(1)+"); }).find("at byte 7") !=
        std::string::npos);
  CHECK_THROWS_AS(parse_rep("std(1))"), input_error);
  CHECK_THROWS_AS(parse_rep(""), input_error);
}

TEST_CASE("std weights on a GL(2) block") {
  WeightSystem ws = weights_of(parse_rep("std(1)"), BlockStructure{{2}, {}});
  REQUIRE(ws.size() == 2);
  CHECK(ws.labels[0] == "x_{1}");
  CHECK(ws.weights[0] == v({"1/2", "-1/2"}));
  CHECK(ws.weights[1] == v({"-1/2", "1/2"}));

  WeightSystem dual =
      weights_of(parse_rep("dual(std(1))"), BlockStructure{{2}, {}});
  CHECK(dual.weights[0] == v({"-1/2", "1/2"}));
}

TEST_CASE("sym(3) weights on a GL(2) block") {
  WeightSystem ws =
      weights_of(parse_rep("sym(3,std(1))"), BlockStructure{{2}, {}});
  REQUIRE(ws.size() == 4);
  CHECK(ws.labels[0] == "x_{111}");
  CHECK(ws.labels[1] == "x_{112}");
  CHECK(ws.labels[2] == "x_{122}");
  CHECK(ws.labels[3] == "x_{222}");
  CHECK(ws.weights[0] == v({"3/2", "-3/2"}));
  CHECK(ws.weights[1] == v({"1/2", "-1/2"}));
  CHECK(ws.weights[2] == v({"-1/2", "1/2"}));
  CHECK(ws.weights[3] == v({"-3/2", "3/2"}));
}

TEST_CASE("tensor labels and the ternary-quadratic pair table row") {
  WeightSystem ws = weights_of(parse_rep("sym(2,std(1))*std(2)"),
                               BlockStructure{{3, 2}, {}});
  REQUIRE(ws.size() == 12);
  CHECK(ws.labels[0] == "x_{1,11}");
  CHECK(ws.weights[0] == v({"4/3", "-2/3", "-2/3", "1/2", "-1/2"}));
  CHECK(ws.labels[11] == "x_{2,33}");
  CHECK(ws.weights[11] == v({"-2/3", "-2/3", "4/3", "-1/2", "1/2"}));
  auto idx = ws.index_of("x_{2,13}");
  REQUIRE(idx.has_value());
  CHECK(ws.weights[*idx] == v({"1/3", "-2/3", "1/3", "-1/2", "1/2"}));
}

TEST_CASE("direct sum labels carry the summand index") {
  WeightSystem ws = weights_of(parse_rep("sym(2,std(1))+std(1)"),
                               BlockStructure{{2}, {}});
  REQUIRE(ws.size() == 5);
  CHECK(ws.labels[0] == "x_{1,11}");
  CHECK(ws.labels[2] == "x_{1,22}");
  CHECK(ws.labels[3] == "x_{2,1}");
  CHECK(ws.labels[4] == "x_{2,2}");
}

TEST_CASE("builder invariants") {
  selfcheck::Rng rng(17);
  const BlockStructure blocks{{3, 2}, {}};
  WeightSystem ws =
      weights_of(parse_rep("sym(2,std(1))*std(2)+dual(std(1))"), blocks);

  // trace-zero per block, exactly
  for (const auto& w : ws.weights) {
    CHECK(w[0] + w[1] + w[2] == 0);
    CHECK(w[3] + w[4] == 0);
  }

  // sym multiplicity: C(n+d-1, d)
  WeightSystem sym =
      weights_of(parse_rep("sym(4,std(1))"), BlockStructure{{3}, {}});
  CHECK(sym.size() == 15);

  // the weight multiset is invariant under block permutations
  std::multiset<Vec> original(ws.weights.begin(), ws.weights.end());
  for (int iter = 0; iter < 10; ++iter) {
    std::vector<std::size_t> p1{0, 1, 2}, p2{3, 4};
    for (int s = 0; s < 3; ++s)
      std::swap(p1[static_cast<std::size_t>(rng.range(0, 2))],
                p1[static_cast<std::size_t>(rng.range(0, 2))]);
    if (rng.range(0, 1)) std::swap(p2[0], p2[1]);
    std::multiset<Vec> permuted;
    for (const auto& w : ws.weights) {
      Vec pw(5);
      for (int c = 0; c < 3; ++c) pw[static_cast<std::size_t>(c)] = w[p1[static_cast<std::size_t>(c)]];
      for (int c = 0; c < 2; ++c) pw[static_cast<std::size_t>(3 + c)] = w[p2[static_cast<std::size_t>(c)]];
      permuted.insert(std::move(pw));
    }
    CHECK(permuted == original);
  }

  CHECK_THROWS_AS(weights_of(parse_rep("std(3)"), BlockStructure{{2}, {}}),
                  input_error);

  // a hand-built tensor term with a repeated block is rejected too
  RepExpr bad;
  bad.summands.push_back(
      {{RepExpr::Factor{RepExpr::Std{1}}, RepExpr::Factor{RepExpr::Std{1}}}});
  CHECK_THROWS_AS(weights_of(bad, BlockStructure{{2}, {}}), input_error);
}

TEST_CASE("explicit weight systems validate") {
  // the binary-cubic weights, valid
  WeightSystem ws = make_weight_system(
      BlockStructure{{2}, {}}, {{"x_1", v({"3", "-3"})},
                                {"x_2", v({"1", "-1"})},
                                {"x_3", v({"-1", "1"})},
                                {"x_4", v({"-3", "3"})}});
  CHECK(ws.size() == 4);
  CHECK(ws.metric.dimension() == 2);

  CHECK(err_of([&] {
          make_weight_system(BlockStructure{{2}, {}},
                             {{"x_1", v({"1", "0"})}});
        }).find("block 1 coordinates sum to 1, expected 0") !=
        std::string::npos);

  CHECK_THROWS_AS(
      make_weight_system(BlockStructure{{2}, {}},
                         {{"a", v({"1", "-1"})}, {"a", v({"-1", "1"})}}),
      input_error);
  CHECK_THROWS_AS(
      make_weight_system(BlockStructure{{2}, {}}, {{"a", v({"1"})}}),
      input_error);
}

TEST_CASE("document loader matches the builder on the pair system") {
  // transcription of the published weight table
  const char* doc = R"({
    "blocks": [{"kind": "GL", "n": 3}, {"kind": "GL", "n": 2}],
    "weights": [
      {"label": "x_{1,11}", "coords": ["4/3","-2/3","-2/3","1/2","-1/2"]},
      {"label": "x_{1,12}", "coords": ["1/3","1/3","-2/3","1/2","-1/2"]},
      {"label": "x_{1,13}", "coords": ["1/3","-2/3","1/3","1/2","-1/2"]},
      {"label": "x_{1,22}", "coords": ["-2/3","4/3","-2/3","1/2","-1/2"]},
      {"label": "x_{1,23}", "coords": ["-2/3","1/3","1/3","1/2","-1/2"]},
      {"label": "x_{1,33}", "coords": ["-2/3","-2/3","4/3","1/2","-1/2"]},
      {"label": "x_{2,11}", "coords": ["4/3","-2/3","-2/3","-1/2","1/2"]},
      {"label": "x_{2,12}", "coords": ["1/3","1/3","-2/3","-1/2","1/2"]},
      {"label": "x_{2,13}", "coords": ["1/3","-2/3","1/3","-1/2","1/2"]},
      {"label": "x_{2,22}", "coords": ["-2/3","4/3","-2/3","-1/2","1/2"]},
      {"label": "x_{2,23}", "coords": ["-2/3","1/3","1/3","-1/2","1/2"]},
      {"label": "x_{2,33}", "coords": ["-2/3","-2/3","4/3","-1/2","1/2"]}
    ]
  })";
  WeightSystem loaded = load_weight_system_string(doc);
  WeightSystem built = weights_of(parse_rep("sym(2,std(1))*std(2)"),
                                  BlockStructure{{3, 2}, {}});
  REQUIRE(loaded.size() == built.size());
  for (std::size_t i = 0; i < loaded.size(); ++i) {
    CHECK(loaded.labels[i] == built.labels[i]);
    CHECK(loaded.weights[i] == built.weights[i]);
  }
}

TEST_CASE("document loader rejects bad input with a location") {
  CHECK(err_of([] {
          load_weight_system_string(R"({"blocks": [], "weights": []})");
        }).find("blocks") != std::string::npos);
  CHECK(err_of([] {
          load_weight_system_string(
              R"({"blocks": [{"kind":"GL","n":2}], "weights": [], "extra": 1})");
        }).find("unknown key \"extra\"") != std::string::npos);
  CHECK(err_of([] {
          load_weight_system_string(
              R"({"blocks": [{"kind":"GL","n":2}],
                  "weights": [{"label":"a","coords":["1.5","0"]}]})");
        }).find("coords[0]") != std::string::npos);
  CHECK(err_of([] {
          load_weight_system_string(
              R"({"blocks": [{"kind":"torus","scale":"1"},{"kind":"GL","n":2}],
                  "weights": []})");
        }).find("GL blocks must precede torus blocks") != std::string::npos);
  CHECK_THROWS_AS(load_weight_system_string("not json"), input_error);
  // torus scale and metric_scales validation
  CHECK_THROWS_AS(load_weight_system_string(
                      R"({"blocks": [{"kind":"torus","scale":"0"}], "weights": []})"),
                  input_error);
  CHECK_THROWS_AS(load_weight_system_string(
                      R"({"blocks": [{"kind":"GL","n":2}], "weights": [],
                          "metric_scales": ["1","1"]})"),
                  input_error);
}

TEST_CASE("dominant_representative sorts blocks ascending") {
  BlockStructure blocks{{3, 2}, {}};
  auto [sorted, perm] = dominant_representative(
      v({"4/3", "-2/3", "-2/3", "1/2", "-1/2"}), blocks);
  CHECK(sorted == v({"-2/3", "-2/3", "4/3", "-1/2", "1/2"}));
  CHECK(perm == std::vector<std::size_t>{1, 2, 0, 4, 3});

  auto [same, id] =
      dominant_representative(v({"-2/3", "-2/3", "4/3", "-1/2", "1/2"}),
                              blocks);
  CHECK(id == std::vector<std::size_t>{0, 1, 2, 3, 4});

  BlockStructure b2{{2}, {}};
  CHECK(dominant_representative(v({"3", "-3"}), b2).first == v({"-3", "3"}));

  // idempotent and norm preserving
  selfcheck::Rng rng(5);
  WeightSystem ws = builtin_example("sym2k3-x-k2");
  for (int iter = 0; iter < 20; ++iter) {
    Vec x(5);
    for (auto& c : x) c = selfcheck::random_rational(rng);
    Rational fix = -(x[0] + x[1]);
    x[2] = fix;  // make block 1 trace-zero
    x[4] = -x[3];
    auto once = dominant_representative(x, ws.blocks).first;
    CHECK(dominant_representative(once, ws.blocks).first == once);
    CHECK(inner(once, once, ws.metric) == inner(x, x, ws.metric));
    CHECK(is_dominant(once, ws.blocks));
  }
}


TEST_CASE("builtin examples") {
  CHECK(builtin_example("binary-cubic").size() == 4);
  CHECK(builtin_example("binary-quadratic").size() == 3);
  CHECK(builtin_example("sym2k3-x-k2").size() == 12);
  WeightSystem qv = builtin_example("quad-plus-vector(3,4)");
  CHECK(qv.size() == 5);
  CHECK(qv.blocks.extra_torus == Vec{Rational(1, 25)});
  CHECK_THROWS_AS(builtin_example("no-such-example"), input_error);
  CHECK_THROWS_AS(builtin_example("quad-plus-vector(3,3)"), input_error);
  CHECK_THROWS_AS(builtin_example("quad-plus-vector(1,4)"), input_error);
  CHECK_THROWS_AS(builtin_example("quad-plus-vector(6,4)"), input_error);
  CHECK(builtin_example_list().size() == 4);
}
