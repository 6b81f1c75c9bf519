#pragma once

// Exact rational scalars and small vector helpers. Everything in this library
// is computed over Q; there are no tolerances and no floating point anywhere.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace instrata {

namespace mp = boost::multiprecision;

// et_off so that arithmetic yields plain values, not expression templates.
using Int = mp::number<mp::backends::cpp_int_backend<>, mp::et_off>;
using Rational =
    mp::number<mp::backends::rational_adaptor<mp::backends::cpp_int_backend<>>,
               mp::et_off>;

using Vec = std::vector<Rational>;

/// Malformed user input (CLI exit code 1).
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Violated internal invariant (CLI exit code 2).
struct internal_error : std::logic_error {
  using std::logic_error::logic_error;
};

// Rational literals are "p" or "p/q" with q > 0 and the sign, if any, on the
// numerator. Anything else (floats, signs in the denominator, blanks) is
// rejected so that input files stay exactly reproducible.
inline Rational parse_rational(std::string_view text) {
  const auto fail = [&] {
    throw input_error("bad rational literal \"" + std::string(text) +
                      "\" (expected \"p\" or \"p/q\" with q > 0)");
  };
  const auto digits = [&](std::string_view s) {
    if (s.empty()) fail();
    for (char c : s)
      if (c < '0' || c > '9') fail();
  };
  std::string_view num = text, den;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
  }
  std::string_view num_digits = num;
  if (!num.empty() && num.front() == '-') num_digits = num.substr(1);
  digits(num_digits);
  Int n{std::string(num)};
  Int d{1};
  if (!den.empty() || text.find('/') != std::string_view::npos) {
    digits(den);
    d = Int{std::string(den)};
    if (d == 0) fail();
  }
  return Rational(n, d);
}

inline std::string to_string(const Rational& r) { return r.str(); }

inline std::string to_string(const Vec& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += v[i].str();
  }
  return out + ")";
}

inline bool is_zero(const Vec& v) {
  for (const auto& c : v)
    if (c != 0) return false;
  return true;
}

inline Vec sub(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

/// The unique coprime integer vector that is a positive multiple of v.
inline std::vector<Int> scale_to_coprime_integers(const Vec& v) {
  if (is_zero(v)) throw internal_error("cannot make zero vector indivisible");
  Int den = 1;
  for (const auto& c : v) den = lcm(den, denominator(c));
  std::vector<Int> out(v.size());
  Int g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = numerator(v[i]) * (den / denominator(v[i]));
    g = gcd(g, out[i]);
  }
  for (auto& c : out) c /= g;
  return out;
}

}  // namespace instrata
