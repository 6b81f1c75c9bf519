#pragma once

// Command-line front end.
//
//   compute        stratification report for a weight system
//   classify       optimal destabilizing beta of a rational point
//   nu             signed nu^2 of a point against a 1PS
//   check          randomized self-check suites (deterministic seeds)
//   list-examples  built-in weight systems
//
// Weight sources (exactly one): --example NAME | --rep EXPR --blocks n1,n2,..
// | --input PATH. Other flags: --format text|structured, --cap N,
// --point "label=p/q,..", --lambda "c1,c2,..".
//
// Exit codes: 0 success, 1 input error, 2 internal invariant violation.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "instrata/builtins.hpp"
#include "instrata/instability.hpp"
#include "instrata/io.hpp"
#include "instrata/rational.hpp"
#include "instrata/selfcheck.hpp"
#include "instrata/strata.hpp"

namespace instrata::cli {

struct JobConfig {
  std::optional<std::string> example;
  std::optional<std::string> rep_expr;
  std::optional<std::string> blocks;
  std::optional<std::string> input_path;
  std::optional<std::string> point;
  std::optional<std::string> lambda;
  std::size_t cap = kDefaultEnumerationCap;
  bool structured = false;
};

namespace detail {

inline const char* kUsage =
    "usage: instrata <compute|classify|nu|check|list-examples> [flags]\n"
    "  sources (one of):   --example NAME | --rep EXPR --blocks n1,n2,... |\n"
    "                      --input PATH\n"
    "  flags:              --format text|structured   --cap N\n"
    "                      --point \"label=p/q,...\"     --lambda \"c1,c2,...\"\n";

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

inline JobConfig parse_flags(const std::vector<std::string>& args,
                             std::size_t from) {
  JobConfig cfg;
  for (std::size_t i = from; i < args.size(); ++i) {
    const std::string& flag = args[i];
    const auto value = [&]() -> const std::string& {
      if (i + 1 >= args.size())
        throw input_error("flag " + flag + " needs a value");
      return args[++i];
    };
    if (flag == "--example")
      cfg.example = value();
    else if (flag == "--rep")
      cfg.rep_expr = value();
    else if (flag == "--blocks")
      cfg.blocks = value();
    else if (flag == "--input")
      cfg.input_path = value();
    else if (flag == "--point")
      cfg.point = value();
    else if (flag == "--lambda")
      cfg.lambda = value();
    else if (flag == "--cap") {
      const std::string& v = value();
      for (char c : v)
        if (c < '0' || c > '9')
          throw input_error("--cap needs a positive integer");
      if (v.empty() || v.size() > 2)
        throw input_error("--cap needs a positive integer <= 63");
      cfg.cap = std::stoul(v);
      if (cfg.cap < 1 || cfg.cap > 63)
        throw input_error("--cap needs a positive integer <= 63");
    } else if (flag == "--format") {
      const std::string& v = value();
      if (v == "text")
        cfg.structured = false;
      else if (v == "structured")
        cfg.structured = true;
      else
        throw input_error("--format must be text or structured");
    } else {
      throw input_error("unknown flag \"" + flag + "\"");
    }
  }
  return cfg;
}

inline WeightSystem load_system(const JobConfig& cfg) {
  int sources = 0;
  sources += cfg.example ? 1 : 0;
  sources += cfg.rep_expr ? 1 : 0;
  sources += cfg.input_path ? 1 : 0;
  if (sources != 1)
    throw input_error(
        "exactly one weight source is required: --example NAME, "
        "--rep EXPR --blocks n1,n2,..., or --input PATH");
  if (cfg.example) return builtin_example(*cfg.example);
  if (cfg.input_path) return load_weight_system_file(*cfg.input_path);
  if (!cfg.blocks) throw input_error("--rep needs --blocks n1,n2,...");
  BlockStructure blocks;
  for (const std::string& tok : split(*cfg.blocks, ',')) {
    if (tok.empty() || tok.size() > 2)
      throw input_error("--blocks: bad GL block size \"" + tok + "\"");
    for (char c : tok)
      if (c < '0' || c > '9')
        throw input_error("--blocks: bad GL block size \"" + tok + "\"");
    blocks.gl_blocks.push_back(std::stoul(tok));
  }
  return weights_of(parse_rep(*cfg.rep_expr), blocks);
}

inline std::string normalize_label(const std::string& s) {
  std::string out;
  for (char c : s)
    if (c != '{' && c != '}' && c != ' ') out += c;
  return out;
}

// Assignments are comma separated, but labels may themselves contain commas
// ("x_2,33=1"); chunks without '=' therefore extend the pending label.
inline RationalPoint parse_point_spec(const std::string& spec,
                                      const WeightSystem& ws) {
  std::vector<std::string> assignments;
  std::string pending;
  for (const std::string& chunk : split(spec, ',')) {
    pending = pending.empty() ? chunk : pending + "," + chunk;
    if (pending.find('=') != std::string::npos) {
      assignments.push_back(pending);
      pending.clear();
    }
  }
  if (!pending.empty())
    throw input_error("--point: dangling \"" + pending +
                      "\" (assignments look like label=p/q)");
  if (assignments.empty())
    throw input_error("--point: no assignments given");
  RationalPoint x;
  for (const std::string& a : assignments) {
    const auto eq = a.find('=');
    const std::string label = normalize_label(a.substr(0, eq));
    const Rational value = parse_rational(a.substr(eq + 1));
    std::optional<std::size_t> found;
    for (std::size_t i = 0; i < ws.size(); ++i)
      if (normalize_label(ws.labels[i]) == label) {
        found = i;
        break;
      }
    if (!found)
      throw input_error("--point: no coordinate labeled \"" + label + "\"");
    if (!x.coords.emplace(ws.labels[*found], value).second)
      throw input_error("--point: label \"" + label + "\" assigned twice");
  }
  return x;
}

inline OnePS parse_lambda_spec(const std::string& spec,
                               const WeightSystem& ws) {
  std::vector<Int> dir;
  for (const std::string& tok : split(spec, ',')) {
    std::string t = tok;
    if (t.empty())
      throw input_error("--lambda: empty entry");
    std::size_t at = t.front() == '-' ? 1 : 0;
    if (at == t.size())
      throw input_error("--lambda: bad integer \"" + tok + "\"");
    for (std::size_t i = at; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9')
        throw input_error("--lambda: bad integer \"" + tok + "\"");
    dir.push_back(Int(t));
  }
  return make_one_ps(std::move(dir), ws.blocks);
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  try {
    if (args.empty() || args[0] == "--help" || args[0] == "help") {
      out << detail::kUsage;
      return args.empty() ? 1 : 0;
    }
    const std::string& cmd = args[0];

    if (cmd == "list-examples") {
      detail::parse_flags(args, 1);  // reject stray flags
      for (const auto& [name, what] : builtin_example_list())
        out << name << "\n    " << what << "\n";
      return 0;
    }

    if (cmd == "check") {
      detail::parse_flags(args, 1);
      auto oracle = selfcheck::oracle_equivalence_suite(200, 20240601);
      auto duality = selfcheck::kempf_duality_suite(100, 10, 20240602);
      bool ok = true;
      for (const auto* suite :
           {&oracle, &duality.equality, &duality.bound}) {
        out << suite->name << ": " << suite->passed << "/" << suite->run
            << " passed\n";
        for (const auto& f : suite->failures) out << "  FAIL " << f << "\n";
        ok = ok && suite->ok();
      }
      out << (ok ? "all checks passed\n" : "CHECK FAILURES\n");
      return ok ? 0 : 2;
    }

    JobConfig cfg = detail::parse_flags(args, 1);

    if (cmd == "compute") {
      WeightSystem ws = detail::load_system(cfg);
      StratificationResult r = stratify(ws, cfg.cap);
      if (cfg.structured)
        out << result_to_json(r).dump(2) << "\n";
      else
        out << render_text_report(r);
      return 0;
    }

    if (cmd == "classify") {
      WeightSystem ws = detail::load_system(cfg);
      if (!cfg.point) throw input_error("classify needs --point");
      RationalPoint x = detail::parse_point_spec(*cfg.point, ws);
      auto beta = beta_of_point(x, ws);
      if (cfg.structured) {
        Json j;
        j["semistable"] = !beta.has_value();
        if (beta) {
          j["beta"] = Json::array();
          for (const auto& c : beta->beta) j["beta"].push_back(c.str());
          j["norm_squared"] = beta->norm_squared.str();
        }
        out << j.dump(2) << "\n";
      } else if (beta) {
        out << "unstable: beta = " << format_weight(beta->beta, ws.blocks)
            << ", |beta|^2 = " << beta->norm_squared.str() << "\n";
      } else {
        out << "semistable\n";
      }
      return 0;
    }

    if (cmd == "nu") {
      WeightSystem ws = detail::load_system(cfg);
      if (!cfg.point || !cfg.lambda)
        throw input_error("nu needs --point and --lambda");
      RationalPoint x = detail::parse_point_spec(*cfg.point, ws);
      OnePS lam = detail::parse_lambda_spec(*cfg.lambda, ws);
      Rational v = nu_squared(x, lam, ws);
      if (cfg.structured) {
        Json j;
        j["nu_squared"] = v.str();
        out << j.dump(2) << "\n";
      } else {
        out << "nu^2 = " << v.str() << "\n";
      }
      return 0;
    }

    throw input_error("unknown subcommand \"" + cmd + "\"\n" +
                      detail::kUsage);
  } catch (const input_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const internal_error& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
}

inline int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace instrata::cli
