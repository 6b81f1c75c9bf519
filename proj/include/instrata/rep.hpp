#pragma once

// Weight systems for rational representations of GL(n_1) x ... x GL(n_f),
// optionally times extra one-dimensional torus factors. Weights live in the
// ambient coordinate space (one coordinate per GL column plus one per torus
// factor) and are trace-zero inside each GL block, i.e. each GL weight is
// recorded modulo the center exactly as a character of the SL(n) torus.
// The metric is block-diagonal: a positive scale times the standard dot
// product on each GL block (which restricts to the permutation-invariant
// form on the trace-zero subspace) and a positive scale per torus coordinate.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "instrata/geometry.hpp"
#include "instrata/rational.hpp"

namespace instrata {

struct BlockStructure {
  std::vector<std::size_t> gl_blocks;  // the n of each GL(n) factor
  Vec extra_torus;                     // metric scale of each extra coordinate

  std::size_t gl_dimension() const {
    return std::accumulate(gl_blocks.begin(), gl_blocks.end(),
                           std::size_t{0});
  }
  std::size_t ambient_dimension() const {
    return gl_dimension() + extra_torus.size();
  }
  /// Dimension of the space the weights actually span at most: the product of
  /// the SL-torus ranks plus the extra coordinates.
  std::size_t trace_zero_dimension() const {
    std::size_t d = extra_torus.size();
    for (std::size_t n : gl_blocks) d += n - 1;
    return d;
  }
  std::pair<std::size_t, std::size_t> block_range(std::size_t b) const {
    std::size_t begin = 0;
    for (std::size_t i = 0; i < b; ++i) begin += gl_blocks[i];
    return {begin, begin + gl_blocks[b]};
  }
  /// One sortable coordinate group per GL block (torus coordinates have no
  /// Weyl action and belong to no group).
  std::vector<std::vector<std::size_t>> coordinate_groups() const {
    std::vector<std::vector<std::size_t>> groups;
    std::size_t at = 0;
    for (std::size_t n : gl_blocks) {
      std::vector<std::size_t> g(n);
      std::iota(g.begin(), g.end(), at);
      groups.push_back(std::move(g));
      at += n;
    }
    return groups;
  }

  void validate() const {
    if (gl_blocks.empty() && extra_torus.empty())
      throw input_error("block structure must contain at least one block");
    for (std::size_t n : gl_blocks)
      if (n < 1) throw input_error("GL block size must be >= 1");
    for (const auto& s : extra_torus)
      if (s <= 0) throw input_error("torus metric scale must be positive");
  }
};

using WeightVector = Vec;

struct WeightSystem {
  BlockStructure blocks;
  Vec gl_scales;  // metric scale per GL block
  MetricForm metric;
  std::vector<std::string> labels;
  std::vector<WeightVector> weights;

  std::size_t size() const { return weights.size(); }
  std::optional<std::size_t> index_of(const std::string& label) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == label) return i;
    return std::nullopt;
  }
};

inline MetricForm block_diagonal_metric(const BlockStructure& blocks,
                                        const Vec& gl_scales) {
  Vec diag;
  for (std::size_t b = 0; b < blocks.gl_blocks.size(); ++b)
    diag.insert(diag.end(), blocks.gl_blocks[b], gl_scales[b]);
  diag.insert(diag.end(), blocks.extra_torus.begin(), blocks.extra_torus.end());
  return MetricForm::diagonal(std::move(diag));
}

inline WeightSystem make_weight_system(
    BlockStructure blocks,
    std::vector<std::pair<std::string, WeightVector>> entries,
    Vec gl_scales = {}) {
  blocks.validate();
  if (gl_scales.empty()) gl_scales.assign(blocks.gl_blocks.size(), Rational(1));
  if (gl_scales.size() != blocks.gl_blocks.size())
    throw input_error("need one metric scale per GL block");
  for (const auto& s : gl_scales)
    if (s <= 0) throw input_error("GL metric scale must be positive");
  const std::size_t dim = blocks.ambient_dimension();
  std::set<std::string> seen;
  for (auto& [label, w] : entries) {
    if (!seen.insert(label).second)
      throw input_error("duplicate label \"" + label + "\"");
    if (w.size() != dim)
      throw input_error("weight \"" + label + "\" has " +
                        std::to_string(w.size()) + " coordinates, expected " +
                        std::to_string(dim));
    for (std::size_t b = 0; b < blocks.gl_blocks.size(); ++b) {
      auto [lo, hi] = blocks.block_range(b);
      Rational sum = 0;
      for (std::size_t c = lo; c < hi; ++c) sum += w[c];
      if (sum != 0)
        throw input_error("weight \"" + label + "\": block " +
                          std::to_string(b + 1) + " coordinates sum to " +
                          sum.str() + ", expected 0");
    }
  }
  MetricForm metric = block_diagonal_metric(blocks, gl_scales);
  WeightSystem ws{std::move(blocks), std::move(gl_scales), std::move(metric),
                  {}, {}};
  for (auto& [label, w] : entries) {
    ws.labels.push_back(std::move(label));
    ws.weights.push_back(std::move(w));
  }
  return ws;
}

/// Same system with every metric block scale multiplied by c > 0.
inline WeightSystem with_scaled_metric(const WeightSystem& ws,
                                       const Rational& c) {
  if (c <= 0) throw input_error("metric scale must be positive");
  WeightSystem out = ws;
  for (auto& s : out.gl_scales) s *= c;
  for (auto& s : out.blocks.extra_torus) s *= c;
  out.metric = block_diagonal_metric(out.blocks, out.gl_scales);
  return out;
}

// ---------------------------------------------------------------------------
// Representation expressions
//
// rep    := term ('+' term)*
// term   := factor ('*' factor)*
// factor := 'std(' INT ')' | 'dual(std(' INT '))'
//         | 'sym(' INT ',std(' INT '))' | '(' rep ')'
//
// Block indices are 1-based. Products of sums are distributed into a sum of
// tensor terms; the factors of one term must sit on pairwise distinct blocks.
// ---------------------------------------------------------------------------

struct RepExpr {
  struct Std {
    std::size_t block;
  };
  struct Dual {
    std::size_t block;
  };
  struct Sym {
    std::size_t degree;
    std::size_t block;
  };
  using Factor = std::variant<Std, Dual, Sym>;
  struct Term {
    std::vector<Factor> factors;
  };
  std::vector<Term> summands;
};

inline std::size_t factor_block(const RepExpr::Factor& f) {
  return std::visit([](const auto& x) { return x.block; }, f);
}

namespace detail {

class RepParser {
 public:
  explicit RepParser(std::string_view text) : s_(text) {}

  RepExpr parse() {
    RepExpr e;
    e.summands = parse_rep();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    for (const auto& term : e.summands) {
      std::set<std::size_t> blocks;
      for (const auto& f : term.factors)
        if (!blocks.insert(factor_block(f)).second)
          throw input_error("parse error: block " +
                            std::to_string(factor_block(f)) +
                            " repeated inside one tensor term");
    }
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw input_error("parse error at byte " + std::to_string(pos_) + ": " +
                      what);
  }
  void skip_ws() {
    while (pos_ < s_.size() &&
           (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n'))
      ++pos_;
  }
  bool try_eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!try_eat(c)) fail(std::string("expected '") + c + "'");
  }
  bool try_keyword(std::string_view kw) {
    skip_ws();
    if (s_.substr(pos_, kw.size()) == kw) {
      pos_ += kw.size();
      return true;
    }
    return false;
  }
  std::size_t parse_int() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && s_[pos_] >= '0' && s_[pos_] <= '9') ++pos_;
    if (pos_ == start) fail("expected an integer");
    if (pos_ - start > 6) fail("integer too large");
    return std::stoul(std::string(s_.substr(start, pos_ - start)));
  }
  std::size_t parse_std_call() {
    if (!try_keyword("std")) fail("sym argument must be std(i)");
    expect('(');
    std::size_t b = parse_int();
    expect(')');
    return b;
  }

  std::vector<RepExpr::Term> parse_rep() {
    std::vector<RepExpr::Term> terms = parse_term();
    while (try_eat('+')) {
      auto more = parse_term();
      terms.insert(terms.end(), more.begin(), more.end());
    }
    return terms;
  }

  std::vector<RepExpr::Term> parse_term() {
    std::vector<RepExpr::Term> terms = parse_factor();
    while (try_eat('*')) {
      auto rhs = parse_factor();
      std::vector<RepExpr::Term> product;
      for (const auto& l : terms)
        for (const auto& r : rhs) {
          RepExpr::Term t = l;
          t.factors.insert(t.factors.end(), r.factors.begin(),
                           r.factors.end());
          product.push_back(std::move(t));
        }
      terms = std::move(product);
    }
    return terms;
  }

  std::vector<RepExpr::Term> parse_factor() {
    skip_ws();
    if (try_eat('(')) {
      auto inner = parse_rep();
      expect(')');
      return inner;
    }
    if (try_keyword("std")) {
      expect('(');
      std::size_t b = parse_int();
      expect(')');
      return {RepExpr::Term{{RepExpr::Std{b}}}};
    }
    if (try_keyword("dual")) {
      expect('(');
      std::size_t save = pos_;
      if (!try_keyword("std")) {
        pos_ = save;
        fail("dual argument must be std(i)");
      }
      expect('(');
      std::size_t b = parse_int();
      expect(')');
      expect(')');
      return {RepExpr::Term{{RepExpr::Dual{b}}}};
    }
    if (try_keyword("sym")) {
      expect('(');
      std::size_t d = parse_int();
      if (d < 1) fail("sym degree must be >= 1");
      expect(',');
      skip_ws();
      std::size_t save = pos_;
      if (!try_keyword("std")) {
        pos_ = save;
        fail("sym argument must be std(i)");
      }
      expect('(');
      std::size_t b = parse_int();
      expect(')');
      expect(')');
      return {RepExpr::Term{{RepExpr::Sym{d, b}}}};
    }
    fail("expected std(i), dual(std(i)), sym(d,std(i)) or '('");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline RepExpr parse_rep(std::string_view text) {
  return detail::RepParser(text).parse();
}

namespace detail {

// One basis coordinate of a factor: its printable index and its weight
// contribution inside the factor's GL block.
struct FactorCoord {
  std::string index;
  Vec block_weight;
};

inline std::vector<FactorCoord> factor_coords(const RepExpr::Factor& f,
                                              const BlockStructure& blocks) {
  const std::size_t b = factor_block(f);
  if (b < 1 || b > blocks.gl_blocks.size())
    throw input_error("block index " + std::to_string(b) +
                      " out of range (have " +
                      std::to_string(blocks.gl_blocks.size()) + " GL blocks)");
  const std::size_t n = blocks.gl_blocks[b - 1];
  const auto std_coords = [&](bool dual) {
    std::vector<FactorCoord> out;
    for (std::size_t j = 0; j < n; ++j) {
      Vec w(n, Rational(-1, static_cast<long>(n)));
      w[j] += 1;
      if (dual)
        for (auto& c : w) c = -c;
      out.push_back({std::to_string(j + 1), std::move(w)});
    }
    return out;
  };
  if (std::holds_alternative<RepExpr::Std>(f)) return std_coords(false);
  if (std::holds_alternative<RepExpr::Dual>(f)) return std_coords(true);
  const auto& sym = std::get<RepExpr::Sym>(f);
  if (sym.degree < 1) throw input_error("sym degree must be >= 1");
  // degree-d monomials over {1..n} as nondecreasing index tuples, lex order
  std::vector<FactorCoord> out;
  std::vector<std::size_t> tuple(sym.degree, 0);
  for (;;) {
    Vec w(n, Rational(0));
    std::string idx;
    for (std::size_t t : tuple) {
      w[t] += 1;
      if (n > 9 && !idx.empty()) idx += '.';
      idx += std::to_string(t + 1);
    }
    for (std::size_t c = 0; c < n; ++c)
      w[c] -= Rational(static_cast<long>(sym.degree), static_cast<long>(n));
    out.push_back({std::move(idx), std::move(w)});
    std::size_t i = sym.degree;
    while (i > 0 && tuple[i - 1] == n - 1) --i;
    if (i == 0) break;
    ++tuple[i - 1];
    for (std::size_t j = i; j < sym.degree; ++j) tuple[j] = tuple[i - 1];
  }
  return out;
}

}  // namespace detail

// Weight system of a representation expression. Tensor coordinates are
// enumerated with the LAST factor's index varying slowest, and labels list
// the factor indices in that reversed order, so sym(2,std(1))*std(2) yields
// x_{1,11}, x_{1,12}, ..., x_{2,33} with the k^2 copy index in front. The
// direct-summand index is prepended only when there are several summands.
inline WeightSystem weights_of(const RepExpr& expr,
                               const BlockStructure& blocks) {
  blocks.validate();
  if (expr.summands.empty()) throw input_error("empty representation");
  const std::size_t dim = blocks.ambient_dimension();
  std::vector<std::pair<std::string, Vec>> entries;
  for (std::size_t f = 0; f < expr.summands.size(); ++f) {
    const auto& term = expr.summands[f];
    if (term.factors.empty()) throw input_error("empty tensor term");
    std::set<std::size_t> term_blocks;
    for (const auto& factor : term.factors)
      if (!term_blocks.insert(factor_block(factor)).second)
        throw input_error("block " + std::to_string(factor_block(factor)) +
                          " repeated inside one tensor term");
    std::vector<std::vector<detail::FactorCoord>> coords;
    for (const auto& factor : term.factors)
      coords.push_back(detail::factor_coords(factor, blocks));
    const std::size_t nf = term.factors.size();
    std::vector<std::size_t> pick(nf, 0);
    for (;;) {
      Vec w(dim, Rational(0));
      std::vector<std::string> parts;
      if (expr.summands.size() > 1) parts.push_back(std::to_string(f + 1));
      for (std::size_t r = nf; r-- > 0;)
        parts.push_back(coords[r][pick[r]].index);
      for (std::size_t r = 0; r < nf; ++r) {
        auto [lo, hi] = blocks.block_range(factor_block(term.factors[r]) - 1);
        const Vec& bw = coords[r][pick[r]].block_weight;
        for (std::size_t c = lo; c < hi; ++c) w[c] += bw[c - lo];
      }
      std::string label = "x_{";
      for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) label += ',';
        label += parts[i];
      }
      label += '}';
      entries.emplace_back(std::move(label), std::move(w));
      // advance with the last factor slowest
      std::size_t r = 0;
      while (r < nf && ++pick[r] == coords[r].size()) {
        pick[r] = 0;
        ++r;
      }
      if (r == nf) break;
    }
  }
  return make_weight_system(blocks, std::move(entries));
}

/// Sort coordinates ascending within each GL block (the dominant chamber);
/// torus coordinates are fixed. Returns the sorted vector and the applied
/// permutation pi with result[i] = v[pi[i]].
inline std::pair<WeightVector, std::vector<std::size_t>>
dominant_representative(const WeightVector& v, const BlockStructure& blocks) {
  if (v.size() != blocks.ambient_dimension())
    throw input_error("dimension mismatch in dominant_representative");
  std::vector<std::size_t> perm(v.size());
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t b = 0; b < blocks.gl_blocks.size(); ++b) {
    auto [lo, hi] = blocks.block_range(b);
    std::stable_sort(perm.begin() + lo, perm.begin() + hi,
                     [&](std::size_t i, std::size_t j) { return v[i] < v[j]; });
  }
  WeightVector sorted(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) sorted[i] = v[perm[i]];
  return {std::move(sorted), std::move(perm)};
}

inline bool is_dominant(const WeightVector& v, const BlockStructure& blocks) {
  for (std::size_t b = 0; b < blocks.gl_blocks.size(); ++b) {
    auto [lo, hi] = blocks.block_range(b);
    for (std::size_t c = lo; c + 1 < hi; ++c)
      if (v[c] > v[c + 1]) return false;
  }
  return true;
}

}  // namespace instrata
