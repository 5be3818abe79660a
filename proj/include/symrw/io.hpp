#pragma once

// JSON forms of configs and reports, plain-text report tables, and line files.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "symrw/analysis.hpp"
#include "symrw/errors.hpp"
#include "symrw/generator.hpp"

namespace symrw {

inline std::vector<std::string> read_text_lines(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

NLOHMANN_JSON_SERIALIZE_ENUM(ExponentPolicy, {{ExponentPolicy::ConstantsOnly, "constants"},
                                              {ExponentPolicy::Recursive, "recursive"}})

inline void to_json(nlohmann::json& j, const FunctionSymbol& f) {
  j = {{"name", f.name}, {"arity", f.arity}, {"weight", f.weight}};
}

inline void from_json(const nlohmann::json& j, FunctionSymbol& f) {
  j.at("name").get_to(f.name);
  f.arity = j.value("arity", std::size_t{2});
  f.weight = j.value("weight", 1.0);
}

inline void to_json(nlohmann::json& j, const GenConfig& c) {
  j = {{"name", c.name},
       {"functions", c.functions},
       {"variables", c.variables},
       {"constants", c.constants},
       {"variable_weight", c.variable_weight},
       {"constant_weight", c.constant_weight},
       {"depth_decay", c.depth_decay},
       {"max_input_tokens", c.max_input_tokens},
       {"max_output_tokens", c.max_output_tokens ? nlohmann::json(*c.max_output_tokens) : nlohmann::json(nullptr)},
       {"count", c.count},
       {"seed", c.seed},
       {"exponent_policy", c.exponent_policy},
       {"max_depth", c.max_depth},
       {"max_stale_attempts", c.max_stale_attempts},
       {"shards", c.shards}};
}

// Missing keys keep their defaults; a "preset" key starts from that preset.
inline void from_json(const nlohmann::json& j, GenConfig& c) {
  if (j.contains("preset")) c = preset(j.at("preset").get<std::string>());
  c.name = j.value("name", c.name);
  if (j.contains("functions")) j.at("functions").get_to(c.functions);
  if (j.contains("variables")) j.at("variables").get_to(c.variables);
  if (j.contains("constants")) j.at("constants").get_to(c.constants);
  c.variable_weight = j.value("variable_weight", c.variable_weight);
  c.constant_weight = j.value("constant_weight", c.constant_weight);
  c.depth_decay = j.value("depth_decay", c.depth_decay);
  c.max_input_tokens = j.value("max_input_tokens", c.max_input_tokens);
  if (j.contains("max_output_tokens") && !j.at("max_output_tokens").is_null()) {
    c.max_output_tokens = j.at("max_output_tokens").get<std::size_t>();
  }
  c.count = j.value("count", c.count);
  c.seed = j.value("seed", c.seed);
  if (j.contains("exponent_policy")) {
    const auto& p = j.at("exponent_policy");
    if (p != "constants" && p != "recursive") throw ConfigError("exponent_policy must be \"constants\" or \"recursive\"");
    p.get_to(c.exponent_policy);
  }
  c.max_depth = j.value("max_depth", c.max_depth);
  c.max_stale_attempts = j.value("max_stale_attempts", c.max_stale_attempts);
  c.shards = j.value("shards", c.shards);
}

inline GenConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config " + path.string());
  try {
    auto c = nlohmann::json::parse(in).get<GenConfig>();
    c.validate();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("bad config " + path.string() + ": " + e.what());
  }
}

inline void to_json(nlohmann::json& j, const LevenshteinStats& s) {
  j = {{"n_sampled", s.n_sampled}, {"mean", s.mean}, {"median", s.median}, {"min", s.min}, {"max", s.max}};
}

inline void to_json(nlohmann::json& j, const LeakageReport& r) {
  j = {{"n_train", r.n_train},
       {"n_test", r.n_test},
       {"unique_mod_constant", r.unique_mod_constant},
       {"unique_mod_constant_fraction", r.unique_mod_constant_fraction}};
  auto opt = [](const auto& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
  j["unique_mod_constant_and_sign"] = opt(r.unique_mod_constant_and_sign);
  j["unique_mod_constant_and_sign_fraction"] = opt(r.unique_mod_constant_and_sign_fraction);
  j["renamed_overlap_fraction"] = opt(r.renamed_overlap_fraction);
  j["levenshtein"] = opt(r.levenshtein);
}

inline void to_json(nlohmann::json& j, const EvalReport& r) {
  j = {{"n_examples", r.n_examples},
       {"n_correct", r.n_correct},
       {"n_wrong", r.n_wrong},
       {"exact_match_accuracy", r.exact_match_accuracy},
       {"n_wrong_parsing", r.n_wrong_parsing},
       {"parse_rate_of_wrong", r.parse_rate_of_wrong},
       {"n_wrong_only_constants", r.n_wrong_only_constants},
       {"wrong_only_constants_fraction", r.wrong_only_constants_fraction},
       {"n_correct_mod_renaming", r.n_correct_mod_renaming},
       {"correct_mod_renaming_fraction", r.correct_mod_renaming_fraction},
       {"n_renamed_excluded", r.n_renamed_excluded},
       {"n_kept", r.n_kept},
       {"accuracy_excluding_renamed", r.accuracy_excluding_renamed},
       {"unparseable_lines", r.unparseable_lines}};
}

namespace detail {

inline std::string percent(double f) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.0f%%", f * 100.0);
  return buf;
}

inline std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

inline std::string pad(const std::string& s, std::size_t w) { return s.size() >= w ? s : std::string(w - s.size(), ' ') + s; }

}  // namespace detail

// Header plus one row: `count (percent)` per masking, then the test size.
inline std::string leakage_table(const std::string& label, const LeakageReport& r) {
  const std::string c1 = std::to_string(r.unique_mod_constant) + " (" + detail::percent(r.unique_mod_constant_fraction) + ")";
  const std::string c2 = r.unique_mod_constant_and_sign
                             ? std::to_string(*r.unique_mod_constant_and_sign) + " (" +
                                   detail::percent(*r.unique_mod_constant_and_sign_fraction) + ")"
                             : "--";
  std::string out;
  out += detail::pad("data set", 12) + detail::pad("# unique mod. constant", 26) + detail::pad("# unique mod. constant and sign", 34) +
         detail::pad("# all test examples", 22) + '\n';
  out += detail::pad(label, 12) + detail::pad(c1, 26) + detail::pad(c2, 34) + detail::pad(std::to_string(r.n_test), 22) + '\n';
  if (r.renamed_overlap_fraction) out += "renamed overlap: " + detail::fixed(*r.renamed_overlap_fraction * 100, 2) + "%\n";
  if (r.levenshtein) {
    out += "nearest-train levenshtein over " + std::to_string(r.levenshtein->n_sampled) + " samples: mean " +
           detail::fixed(r.levenshtein->mean, 3) + ", median " + detail::fixed(r.levenshtein->median, 1) + ", min " +
           std::to_string(r.levenshtein->min) + ", max " + std::to_string(r.levenshtein->max) + '\n';
  }
  return out;
}

inline std::string eval_table(const EvalReport& r) {
  auto row = [](const std::string& name, const std::string& count, double frac) {
    return detail::pad(name, 28) + detail::pad(count, 10) + detail::pad(detail::fixed(frac * 100, 2) + "%", 10) + '\n';
  };
  std::string out;
  out += row("exact match", std::to_string(r.n_correct) + "/" + std::to_string(r.n_examples), r.exact_match_accuracy);
  out += row("wrong outputs that parse", std::to_string(r.n_wrong_parsing), r.parse_rate_of_wrong);
  out += row("wrong only in constants", std::to_string(r.n_wrong_only_constants), r.wrong_only_constants_fraction);
  out += row("correct modulo renaming", std::to_string(r.n_correct_mod_renaming), r.correct_mod_renaming_fraction);
  out += row("accuracy without renamed", std::to_string(r.n_kept) + " kept", r.accuracy_excluding_renamed);
  return out;
}

}  // namespace symrw
