#pragma once

// Built-in example weight systems.
//
//   binary-cubic           GL(1)xGL(2) on binary cubic forms, the classical
//                          explicit weights -3,-1,1,3 embedded as q -> (-q,q)
//   binary-quadratic       the quadratic analogue, weights -2,0,2
//   sym2k3-x-k2            GL(3)xGL(2) on pairs of ternary quadratic forms
//                          (built from the expression sym(2,std(1))*std(2))
//   quad-plus-vector(b1,b2) GL(2)xGL(1)^2 on (binary quadratic, vector) pairs
//                          restricted to the kernel torus; the extra torus
//                          coordinate carries metric scale 1/(b1^2+b2^2)

#include <string>
#include <utility>
#include <vector>

#include "instrata/rational.hpp"
#include "instrata/rep.hpp"

namespace instrata {

inline std::vector<std::pair<std::string, std::string>> builtin_example_list() {
  return {
      {"binary-cubic",
       "binary cubic forms under GL(1)xGL(2), explicit weights -3,-1,1,3"},
      {"binary-quadratic",
       "binary quadratic forms under GL(1)xGL(2), explicit weights -2,0,2"},
      {"sym2k3-x-k2",
       "pairs of ternary quadratics under GL(3)xGL(2); ten strata, the "
       "single-weight stratum has |beta|^2 = 19/6 (a published table "
       "misprints 17/6)"},
      {"quad-plus-vector(b1,b2)",
       "binary quadratic plus a vector under GL(2)xGL(1)^2; needs integers "
       "b1,b2 >= 1 with b2 even, 2*b1 > b2, gcd(b1+b2/2,b1,b2) = 1, e.g. "
       "quad-plus-vector(3,4)"},
  };
}

namespace detail {

inline WeightSystem quad_plus_vector(long b1, long b2) {
  if (b1 < 1 || b2 < 1)
    throw input_error("quad-plus-vector: b1 and b2 must be >= 1");
  if (b2 % 2 != 0)
    throw input_error("quad-plus-vector: b2 must be even (the determinant "
                      "exponent a = b1 + b2/2 must be integral)");
  if (2 * b1 <= b2) throw input_error("quad-plus-vector: need 2*b1 > b2");
  const long a = b1 + b2 / 2;
  if (gcd(gcd(Int(a), Int(b1)), Int(b2)) != 1)
    throw input_error("quad-plus-vector: (a, b1, b2) must be coprime");
  BlockStructure blocks{{2}, {Rational(1, b1 * b1 + b2 * b2)}};
  const Rational h(1, 2);
  std::vector<std::pair<std::string, WeightVector>> entries = {
      {"x_{1,11}", {Rational(1), Rational(-1), Rational(b2)}},
      {"x_{1,12}", {Rational(0), Rational(0), Rational(b2)}},
      {"x_{1,22}", {Rational(-1), Rational(1), Rational(b2)}},
      {"x_{2,1}", {h, -h, Rational(-b1)}},
      {"x_{2,2}", {-h, h, Rational(-b1)}},
  };
  return make_weight_system(std::move(blocks), std::move(entries));
}

}  // namespace detail

inline WeightSystem builtin_example(const std::string& name) {
  if (name == "binary-cubic") {
    std::vector<std::pair<std::string, WeightVector>> entries = {
        {"x_1", {Rational(3), Rational(-3)}},
        {"x_2", {Rational(1), Rational(-1)}},
        {"x_3", {Rational(-1), Rational(1)}},
        {"x_4", {Rational(-3), Rational(3)}},
    };
    return make_weight_system(BlockStructure{{2}, {}}, std::move(entries));
  }
  if (name == "binary-quadratic") {
    std::vector<std::pair<std::string, WeightVector>> entries = {
        {"x_1", {Rational(2), Rational(-2)}},
        {"x_2", {Rational(0), Rational(0)}},
        {"x_3", {Rational(-2), Rational(2)}},
    };
    return make_weight_system(BlockStructure{{2}, {}}, std::move(entries));
  }
  if (name == "sym2k3-x-k2")
    return weights_of(parse_rep("sym(2,std(1))*std(2)"),
                      BlockStructure{{3, 2}, {}});
  if (name.rfind("quad-plus-vector(", 0) == 0 && name.back() == ')') {
    const std::string inside =
        name.substr(17, name.size() - 18);  // between the parentheses
    const auto comma = inside.find(',');
    if (comma == std::string::npos)
      throw input_error("quad-plus-vector needs two parameters, e.g. "
                        "quad-plus-vector(3,4)");
    const auto parse_param = [&](const std::string& s) {
      if (s.empty()) throw input_error("quad-plus-vector: empty parameter");
      for (char ch : s)
        if (ch < '0' || ch > '9')
          throw input_error("quad-plus-vector: parameters must be positive "
                            "integers");
      if (s.size() > 4) throw input_error("quad-plus-vector: parameter too large");
      return std::stol(s);
    };
    return detail::quad_plus_vector(parse_param(inside.substr(0, comma)),
                                    parse_param(inside.substr(comma + 1)));
  }
  throw input_error("unknown example \"" + name +
                    "\" (see the list-examples subcommand)");
}

}  // namespace instrata
