#pragma once

// The explicit-weight document format and the report renderers.
//
// A document is a UTF-8 JSON object:
//
//   {
//     "blocks":  [ {"kind": "GL", "n": 3}, {"kind": "GL", "n": 2},
//                  {"kind": "torus", "scale": "1/25"} ],
//     "weights": [ {"label": "x_{1,11}",
//                   "coords": ["4/3", "-2/3", "-2/3", "1/2", "-1/2"]}, ... ],
//     "metric_scales": ["1", "1", "1/25"]            // optional, per block
//   }
//
// Rationals are strings "p" or "p/q"; there is no floating point anywhere.
// GL blocks must precede torus blocks (that is the coordinate layout).
// Unknown top-level keys are rejected, except "strata" and
// "semistable_nonempty", which `compute --format structured` emits and the
// loader ignores, so structured output round-trips as an input document.

#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "instrata/rational.hpp"
#include "instrata/rep.hpp"
#include "instrata/strata.hpp"

namespace instrata {

using Json = nlohmann::ordered_json;

namespace detail {

inline Rational json_rational(const Json& v, const std::string& where) {
  if (!v.is_string())
    throw input_error(where + ": rationals are strings like \"p/q\"");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const input_error& e) {
    throw input_error(where + ": " + e.what());
  }
}

}  // namespace detail

inline WeightSystem load_weight_system(const Json& doc) {
  if (!doc.is_object()) throw input_error("document must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (key != "blocks" && key != "weights" && key != "metric_scales" &&
        key != "strata" && key != "semistable_nonempty")
      throw input_error("unknown key \"" + key + "\" at top level");
  }
  if (!doc.contains("blocks") || !doc["blocks"].is_array() ||
      doc["blocks"].empty())
    throw input_error("\"blocks\" must be a nonempty array");
  if (!doc.contains("weights") || !doc["weights"].is_array())
    throw input_error("\"weights\" must be an array");

  BlockStructure blocks;
  bool seen_torus = false;
  for (std::size_t b = 0; b < doc["blocks"].size(); ++b) {
    const Json& e = doc["blocks"][b];
    const std::string where = "blocks[" + std::to_string(b) + "]";
    if (!e.is_object() || !e.contains("kind") || !e["kind"].is_string())
      throw input_error(where + ": expected {\"kind\": \"GL\"|\"torus\", ...}");
    const std::string kind = e["kind"].get<std::string>();
    if (kind == "GL") {
      if (seen_torus)
        throw input_error(where + ": GL blocks must precede torus blocks");
      if (!e.contains("n") || !e["n"].is_number_unsigned() ||
          e["n"].get<std::size_t>() < 1)
        throw input_error(where + ": \"n\" must be a positive integer");
      for (const auto& [key, value] : e.items()) {
        (void)value;
        if (key != "kind" && key != "n")
          throw input_error(where + ": unknown key \"" + key + "\"");
      }
      blocks.gl_blocks.push_back(e["n"].get<std::size_t>());
    } else if (kind == "torus") {
      seen_torus = true;
      if (!e.contains("scale"))
        throw input_error(where + ": torus block needs a \"scale\"");
      for (const auto& [key, value] : e.items()) {
        (void)value;
        if (key != "kind" && key != "scale")
          throw input_error(where + ": unknown key \"" + key + "\"");
      }
      Rational s = detail::json_rational(e["scale"], where + ".scale");
      if (s <= 0) throw input_error(where + ": scale must be positive");
      blocks.extra_torus.push_back(std::move(s));
    } else {
      throw input_error(where + ": kind must be \"GL\" or \"torus\"");
    }
  }

  Vec gl_scales(blocks.gl_blocks.size(), Rational(1));
  if (doc.contains("metric_scales")) {
    const Json& ms = doc["metric_scales"];
    const std::size_t nblocks =
        blocks.gl_blocks.size() + blocks.extra_torus.size();
    if (!ms.is_array() || ms.size() != nblocks)
      throw input_error("\"metric_scales\" must list one rational per block (" +
                        std::to_string(nblocks) + " here)");
    for (std::size_t b = 0; b < ms.size(); ++b) {
      Rational s = detail::json_rational(
          ms[b], "metric_scales[" + std::to_string(b) + "]");
      if (s <= 0)
        throw input_error("metric_scales[" + std::to_string(b) +
                          "] must be positive");
      if (b < gl_scales.size())
        gl_scales[b] = std::move(s);
      else
        blocks.extra_torus[b - gl_scales.size()] = std::move(s);
    }
  }

  std::vector<std::pair<std::string, WeightVector>> entries;
  for (std::size_t i = 0; i < doc["weights"].size(); ++i) {
    const Json& e = doc["weights"][i];
    const std::string where = "weights[" + std::to_string(i) + "]";
    if (!e.is_object() || !e.contains("label") || !e["label"].is_string() ||
        !e.contains("coords") || !e["coords"].is_array())
      throw input_error(where +
                        ": expected {\"label\": string, \"coords\": [...]}");
    for (const auto& [key, value] : e.items()) {
      (void)value;
      if (key != "label" && key != "coords")
        throw input_error(where + ": unknown key \"" + key + "\"");
    }
    WeightVector w;
    for (std::size_t c = 0; c < e["coords"].size(); ++c)
      w.push_back(detail::json_rational(
          e["coords"][c], where + ".coords[" + std::to_string(c) + "]"));
    entries.emplace_back(e["label"].get<std::string>(), std::move(w));
  }
  return make_weight_system(std::move(blocks), std::move(entries),
                            std::move(gl_scales));
}

inline WeightSystem load_weight_system_string(const std::string& text) {
  Json doc = Json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw input_error("document is not valid JSON");
  return load_weight_system(doc);
}

inline WeightSystem load_weight_system_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open input file \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_weight_system_string(buf.str());
}

inline Json system_to_json(const WeightSystem& ws) {
  Json doc = Json::object();
  doc["blocks"] = Json::array();
  for (std::size_t n : ws.blocks.gl_blocks)
    doc["blocks"].push_back({{"kind", "GL"}, {"n", n}});
  for (const auto& s : ws.blocks.extra_torus)
    doc["blocks"].push_back({{"kind", "torus"}, {"scale", s.str()}});
  doc["metric_scales"] = Json::array();
  for (const auto& s : ws.gl_scales) doc["metric_scales"].push_back(s.str());
  for (const auto& s : ws.blocks.extra_torus)
    doc["metric_scales"].push_back(s.str());
  doc["weights"] = Json::array();
  for (std::size_t i = 0; i < ws.size(); ++i) {
    Json coords = Json::array();
    for (const auto& c : ws.weights[i]) coords.push_back(c.str());
    doc["weights"].push_back({{"label", ws.labels[i]}, {"coords", coords}});
  }
  return doc;
}

/// Weight printed with a ';' between blocks: "(-2/3, 1/3, 1/3; -1/2, 1/2)".
inline std::string format_weight(const Vec& v, const BlockStructure& blocks) {
  std::string out = "(";
  std::size_t at = 0;
  const auto append_run = [&](std::size_t count) {
    for (std::size_t k = 0; k < count; ++k) {
      if (k) out += ", ";
      out += v[at++].str();
    }
  };
  for (std::size_t b = 0; b < blocks.gl_blocks.size(); ++b) {
    if (b) out += "; ";
    append_run(blocks.gl_blocks[b]);
  }
  if (!blocks.extra_torus.empty()) {
    if (!blocks.gl_blocks.empty()) out += "; ";
    append_run(blocks.extra_torus.size());
  }
  return out + ")";
}

inline Json stratum_to_json(const Stratum& st, const WeightSystem& ws) {
  Json j = Json::object();
  j["beta"] = Json::array();
  for (const auto& c : st.beta) j["beta"].push_back(c.str());
  j["norm_squared"] = st.norm_squared.str();
  Json dec = Json::object();
  dec["m0"] = st.decomposition.m0.str();
  dec["levels"] = Json::array();
  for (const auto& m : st.decomposition.levels)
    dec["levels"].push_back(m.str());
  dec["multiplicities"] = st.decomposition.multiplicities;
  dec["critical_index"] = st.decomposition.critical_index;
  j["level_decomposition"] = std::move(dec);
  j["z_indices"] = st.z_indices;
  j["w_indices"] = st.w_indices;
  j["y_indices"] = st.y_indices;
  Json zl = Json::array(), wl = Json::array();
  for (std::size_t i : st.z_indices) zl.push_back(ws.labels[i]);
  for (std::size_t i : st.w_indices) wl.push_back(ws.labels[i]);
  j["z_labels"] = std::move(zl);
  j["w_labels"] = std::move(wl);
  j["lambda_beta"] = Json::array();
  for (const auto& c : st.lambda_beta) j["lambda_beta"].push_back(c.str());
  j["levi_partition"] = st.levi_partition;
  j["dim_unipotent"] = st.dim_unipotent;
  if (st.dim_stratum_projective)
    j["dim_stratum_projective"] = *st.dim_stratum_projective;
  else
    j["dim_stratum_projective"] = nullptr;
  j["nonempty"] = st.nonempty;
  return j;
}

inline Json result_to_json(const StratificationResult& r) {
  Json doc = system_to_json(r.system);
  doc["strata"] = Json::array();
  for (const auto& st : r.strata)
    doc["strata"].push_back(stratum_to_json(st, r.system));
  doc["semistable_nonempty"] = r.semistable_nonempty;
  return doc;
}

namespace detail {

inline std::string format_levels(const LevelDecomposition& d) {
  std::string out = "(";
  for (std::size_t i = 0; i < d.levels.size(); ++i) {
    if (i) out += ' ';
    const bool critical = (i + 1 == d.critical_index);
    if (critical) out += '[';
    out += d.levels[i].str();
    if (critical) out += ']';
    if (d.multiplicities[i] > 1)
      out += "^" + std::to_string(d.multiplicities[i]);
  }
  return out + ")/" + d.m0.str();
}

inline std::string format_levi(const Stratum& st) {
  std::string out;
  for (std::size_t b = 0; b < st.levi_partition.size(); ++b) {
    if (b) out += " x ";
    out += '(';
    for (std::size_t k = 0; k < st.levi_partition[b].size(); ++k) {
      if (k) out += ',';
      out += std::to_string(st.levi_partition[b][k]);
    }
    out += ')';
  }
  return out.empty() ? "-" : out;
}

inline std::string join_labels(const std::vector<std::size_t>& idx,
                               const WeightSystem& ws) {
  if (idx.empty()) return "-";
  std::string out;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (k) out += ' ';
    out += ws.labels[idx[k]];
  }
  return out;
}

}  // namespace detail

/// Deterministic text report: one row per candidate, nonempty flag last.
inline std::string render_text_report(const StratificationResult& r) {
  const WeightSystem& ws = r.system;
  std::size_t nonempty = 0;
  for (const auto& st : r.strata) nonempty += st.nonempty ? 1 : 0;

  std::ostringstream head;
  head << ws.size() << " weights on ";
  if (ws.blocks.gl_blocks.empty() && ws.blocks.extra_torus.empty()) head << "-";
  for (std::size_t b = 0; b < ws.blocks.gl_blocks.size(); ++b) {
    if (b) head << " x ";
    head << "GL(" << ws.blocks.gl_blocks[b] << ")";
  }
  for (std::size_t t = 0; t < ws.blocks.extra_torus.size(); ++t) {
    if (t || !ws.blocks.gl_blocks.empty()) head << " x ";
    head << "T(scale " << ws.blocks.extra_torus[t].str() << ")";
  }
  head << "; " << nonempty << (nonempty == 1 ? " stratum" : " strata");
  if (nonempty != r.strata.size())
    head << " (" << r.strata.size() - nonempty << " empty candidate"
         << (r.strata.size() - nonempty == 1 ? "" : "s") << ")";
  head << "; semistable locus "
       << (r.semistable_nonempty ? "nonempty" : "EMPTY");

  std::vector<std::vector<std::string>> rows;
  rows.push_back({"|beta|^2", "beta", "levels", "Z", "W", "levi", "nonempty"});
  for (const auto& st : r.strata)
    rows.push_back({st.norm_squared.str(), format_weight(st.beta, ws.blocks),
                    detail::format_levels(st.decomposition),
                    detail::join_labels(st.z_indices, ws),
                    detail::join_labels(st.w_indices, ws),
                    detail::format_levi(st), st.nonempty ? "yes" : "EMPTY"});
  std::vector<std::size_t> width(rows[0].size(), 0);
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size(); ++c)
      width[c] = std::max(width[c], row[c].size());
  std::ostringstream out;
  out << head.str() << "\n\n";
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      line += row[c];
      if (c + 1 < row.size())
        line += std::string(width[c] - row[c].size() + 2, ' ');
    }
    out << line << "\n";
  }
  return out.str();
}

}  // namespace instrata
