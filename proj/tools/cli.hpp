#pragma once

// The `symrw` command line: generate, rewrite, split, evaluate, leakage, info.
// Exit status: 0 success, 1 validation/usage error, 2 I/O error.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "symrw/symrw.hpp"

namespace symrw::cli {

inline constexpr int kOk = 0;
inline constexpr int kValidation = 1;
inline constexpr int kIo = 2;

struct UsageError : Error {
  using Error::Error;
};

inline Ratios parse_ratios(const std::string& text) {
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      vals.push_back(std::stod(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw UsageError("--ratios: '" + part + "' is not a number");
    }
  }
  if (vals.size() != 3) throw UsageError("--ratios: expected 3 comma-separated values, got " + std::to_string(vals.size()));
  Ratios r{vals[0], vals[1], vals[2]};
  try {
    validate_ratios(r);
  } catch (const ConfigError& e) {
    throw UsageError(std::string("--ratios: ") + e.what());
  }
  return r;
}

inline Syntax parse_syntax(const std::string& name, const std::string& variables) {
  if (name == "tptp") return Syntax::tptp();
  if (name != "infix") throw UsageError("--syntax: expected infix or tptp, got '" + name + "'");
  std::vector<std::string> vars;
  std::stringstream ss(variables);
  std::string v;
  while (std::getline(ss, v, ',')) {
    if (!v.empty()) vars.push_back(v);
  }
  if (vars.empty()) throw UsageError("--variables: empty variable list");
  return Syntax::infix(vars);
}

inline void require_distinct_dir(const std::string& flag, const std::filesystem::path& dir) {
  if (dir.empty()) throw UsageError(flag + ": directory required");
  if (std::filesystem::exists(dir) && !std::filesystem::is_directory(dir)) {
    throw UsageError(flag + ": '" + dir.string() + "' exists and is not a directory");
  }
}

inline void write_json(const std::filesystem::path& path, const nlohmann::json& j) { write_text(path, j.dump(2) + "\n"); }

struct GenerateArgs {
  std::string preset;
  std::string config;
  std::optional<std::size_t> count;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string ratios = "0.6,0.1,0.3";
  std::optional<std::uint64_t> split_seed;
  std::optional<std::size_t> shards;
  std::size_t threads = 1;
};

inline int run_generate(const GenerateArgs& a, std::ostream& out) {
  if (a.preset.empty() == a.config.empty()) throw UsageError("generate: give exactly one of --preset or --config");
  const Ratios ratios = parse_ratios(a.ratios);
  require_distinct_dir("--out", a.out);
  GenConfig config;
  if (!a.preset.empty()) {
    try {
      config = preset(a.preset);
    } catch (const ConfigError& e) {
      throw UsageError(std::string("--preset: ") + e.what());
    }
  } else {
    config = load_config(a.config);
  }
  if (a.count) config.count = *a.count;
  if (a.seed) config.seed = *a.seed;
  if (a.shards) config.shards = *a.shards;
  config.threads = a.threads;
  config.validate();

  auto pairs = gen_dataset(config);
  const nlohmann::json cfg_json = config;
  const std::string digest = digest_of(cfg_json.dump());
  DatasetSplit s = split(std::move(pairs), ratios, a.split_seed.value_or(config.seed), "generate:" + config.name, digest);
  write_dataset(s, a.out);
  write_json(std::filesystem::path(a.out) / "config.json", cfg_json);
  out << "generated " << s.size() << " examples (" << s.train.size() << "/" << s.valid.size() << "/" << s.test.size()
      << ") into " << a.out << "\n";
  return kOk;
}

struct RewriteArgs {
  std::vector<std::string> rules;
  std::string terms;
  std::string mode = "joint";
  std::string out;
  std::string ratios = "0.6,0.1,0.3";
  std::uint64_t seed = 0;
};

inline int run_rewrite(const RewriteArgs& a, std::ostream& out) {
  if (a.mode != "per-rule" && a.mode != "joint") throw UsageError("--mode: expected per-rule or joint, got '" + a.mode + "'");
  const Ratios ratios = parse_ratios(a.ratios);
  require_distinct_dir("--out", a.out);

  std::vector<RewriteRule> rules;
  std::string digest_input;
  for (const auto& f : a.rules) {
    auto loaded = load_rules(f);
    rules.insert(rules.end(), loaded.begin(), loaded.end());
    digest_input += file_digest(f);
  }
  const Syntax tptp = Syntax::tptp();
  std::vector<Term> terms;
  const auto lines = read_text_lines(a.terms);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (split_tokens(lines[i]).empty()) continue;
    try {
      terms.push_back(parse_term(lines[i], tptp));
    } catch (const SyntaxError& e) {
      throw SyntaxError(a.terms + ":" + std::to_string(i + 1) + ": " + e.what(), e.position, i + 1);
    }
  }
  digest_input += file_digest(a.terms);
  const std::string digest = digest_of(digest_input);

  // Split every rule's pairs on their own; joint mode then unions the parts so
  // no rule's test example lands in the joint training set.
  std::vector<std::pair<std::string, DatasetSplit>> splits;
  for (auto& group : synth_pairs(rules, terms, SynthMode::PerRule)) {
    if (group.pairs.empty()) {
      out << "rule " << group.name << ": no applicable positions, skipped\n";
      continue;
    }
    splits.emplace_back(group.name, split(std::move(group.pairs), ratios, a.seed, "rewrite:" + group.name, digest));
  }
  if (splits.empty()) throw EmptyInput("no rule applies to any term");
  if (a.mode == "per-rule") {
    for (const auto& [name, s] : splits) {
      write_dataset(s, std::filesystem::path(a.out) / name);
      out << name << ": " << s.train.size() << "/" << s.valid.size() << "/" << s.test.size() << "\n";
    }
  } else {
    DatasetSplit joint = union_datasets(splits);
    joint.manifest.digest = digest;
    write_dataset(joint, a.out);
    out << "joint: " << joint.train.size() << "/" << joint.valid.size() << "/" << joint.test.size() << "\n";
  }
  return kOk;
}

struct SplitArgs {
  std::string src;
  std::string tgt;
  std::string ratios = "0.6,0.1,0.3";
  std::uint64_t seed = 0;
  std::string out;
};

inline int run_split(const SplitArgs& a, std::ostream& out) {
  const Ratios ratios = parse_ratios(a.ratios);
  require_distinct_dir("--out", a.out);
  const auto src = read_text_lines(a.src);
  const auto tgt = read_text_lines(a.tgt);
  if (src.size() != tgt.size()) {
    throw AlignmentError("--src has " + std::to_string(src.size()) + " lines, --tgt has " + std::to_string(tgt.size()));
  }
  std::vector<ExamplePair> pairs;
  pairs.reserve(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    ExamplePair p{split_tokens(src[i]), split_tokens(tgt[i])};
    if (p.src.empty() || p.tgt.empty()) throw FormatError("line " + std::to_string(i + 1) + ": empty example");
    pairs.push_back(std::move(p));
  }
  DatasetSplit s = split(std::move(pairs), ratios, a.seed, "split:" + a.src, digest_of(file_digest(a.src) + file_digest(a.tgt)));
  write_dataset(s, a.out);
  out << "split " << s.size() << " examples (" << s.train.size() << "/" << s.valid.size() << "/" << s.test.size() << ") into "
      << a.out << "\n";
  return kOk;
}

struct EvaluateArgs {
  std::string pred;
  std::string ref;
  std::string src;
  std::string train_src;
  std::string syntax = "infix";
  std::string variables = "x,y,z,u,w";
  std::string report;
};

inline int run_evaluate(const EvaluateArgs& a, std::ostream& out) {
  const Syntax syntax = parse_syntax(a.syntax, a.variables);
  const auto pred = read_text_lines(a.pred);
  const auto ref = read_text_lines(a.ref);
  const auto src = read_text_lines(a.src);
  std::optional<std::vector<std::string>> train;
  if (!a.train_src.empty()) train = read_text_lines(a.train_src);
  const EvalReport r = train ? score_predictions(pred, ref, src, syntax, std::span<const std::string>(*train))
                             : score_predictions(pred, ref, src, syntax);
  nlohmann::json j = r;
  j["inputs"] = {{"pred", file_digest(a.pred)}, {"ref", file_digest(a.ref)}, {"src", file_digest(a.src)}};
  if (train) j["inputs"]["train_src"] = file_digest(a.train_src);
  j["syntax"] = a.syntax;
  if (!a.report.empty()) write_json(a.report, j);
  out << eval_table(r);
  return kOk;
}

struct LeakageArgs {
  std::string train;
  std::string test;
  bool sign = false;
  std::string syntax;
  std::string variables = "x,y,z,u,w";
  std::size_t levenshtein_sample = 0;
  std::uint64_t seed = 0;
  std::string label = "data";
  std::string report;
};

inline int run_leakage(const LeakageArgs& a, std::ostream& out) {
  LeakageOptions opts;
  opts.with_sign = a.sign;
  if (!a.syntax.empty()) opts.renaming_syntax = parse_syntax(a.syntax, a.variables);
  opts.levenshtein_sample = a.levenshtein_sample;
  opts.seed = a.seed;
  const auto train = read_text_lines(a.train);
  const auto test = read_text_lines(a.test);
  const LeakageReport r = leakage_report(train, test, opts);
  nlohmann::json j = r;
  j["inputs"] = {{"train", file_digest(a.train)}, {"test", file_digest(a.test)}};
  j["label"] = a.label;
  if (!a.report.empty()) write_json(a.report, j);
  out << leakage_table(a.label, r);
  return kOk;
}

struct InfoArgs {
  std::string preset;
  std::string dataset;
};

inline int run_info(const InfoArgs& a, std::ostream& out) {
  if (!a.dataset.empty()) {
    const DatasetSplit s = read_dataset(a.dataset);
    out << nlohmann::json(s.manifest).dump(2) << "\n";
    return kOk;
  }
  if (!a.preset.empty()) {
    try {
      out << nlohmann::json(preset(a.preset)).dump(2) << "\n";
    } catch (const ConfigError& e) {
      throw UsageError(std::string("--preset: ") + e.what());
    }
    return kOk;
  }
  out << kToolVersion << "\npresets:";
  for (const auto& n : preset_names()) out << ' ' << n;
  out << "\n";
  return kOk;
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Symbolic rewriting datasets: generation, normalization, evaluation and leakage analysis", "symrw"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Generate a polynomial normalization dataset");
  g->add_option("--preset", gen.preset, "Preset name (poly1..poly6)");
  g->add_option("--config", gen.config, "Generator config JSON");
  g->add_option("--count", gen.count, "Number of examples");
  g->add_option("--seed", gen.seed, "Generation seed");
  g->add_option("--out", gen.out, "Output dataset directory")->required();
  g->add_option("--ratios", gen.ratios, "train,valid,test ratios");
  g->add_option("--split-seed", gen.split_seed, "Shuffle seed for the split (default: --seed)");
  g->add_option("--shards", gen.shards, "Independent generator streams");
  g->add_option("--threads", gen.threads, "Worker threads (output does not depend on this)");

  RewriteArgs rw;
  auto* r = app.add_subcommand("rewrite", "Synthesize single-step rewrite pairs");
  r->add_option("--rules", rw.rules, "Rule file(s), one `lhs = rhs` per line")->required();
  r->add_option("--terms", rw.terms, "Term file, one TPTP term per line")->required();
  r->add_option("--mode", rw.mode, "per-rule or joint");
  r->add_option("--out", rw.out, "Output directory")->required();
  r->add_option("--ratios", rw.ratios, "train,valid,test ratios");
  r->add_option("--seed", rw.seed, "Shuffle seed");

  SplitArgs sp;
  auto* s = app.add_subcommand("split", "Split aligned source/target files");
  s->add_option("--src", sp.src, "Source lines")->required();
  s->add_option("--tgt", sp.tgt, "Target lines")->required();
  s->add_option("--ratios", sp.ratios, "train,valid,test ratios");
  s->add_option("--seed", sp.seed, "Shuffle seed");
  s->add_option("--out", sp.out, "Output dataset directory")->required();

  EvaluateArgs ev;
  auto* e = app.add_subcommand("evaluate", "Score a prediction file");
  e->add_option("--pred", ev.pred, "Predictions, one per line")->required();
  e->add_option("--ref", ev.ref, "References, one per line")->required();
  e->add_option("--src", ev.src, "Test sources, one per line")->required();
  e->add_option("--train-src", ev.train_src, "Training sources for renamed-example filtering");
  e->add_option("--syntax", ev.syntax, "infix or tptp");
  e->add_option("--variables", ev.variables, "Infix variable alphabet, comma-separated");
  e->add_option("--report", ev.report, "JSON report path");

  LeakageArgs lk;
  auto* l = app.add_subcommand("leakage", "Train/test overlap modulo constants (and signs)");
  l->add_option("--train", lk.train, "Training source lines")->required();
  l->add_option("--test", lk.test, "Test source lines")->required();
  l->add_flag("--sign", lk.sign, "Also mask minus signs");
  l->add_option("--syntax", lk.syntax, "infix or tptp: also measure renamed overlap");
  l->add_option("--variables", lk.variables, "Infix variable alphabet, comma-separated");
  l->add_option("--levenshtein-sample", lk.levenshtein_sample, "Test lines sampled for nearest-train edit distance");
  l->add_option("--seed", lk.seed, "Sampling seed");
  l->add_option("--label", lk.label, "Row label in the text table");
  l->add_option("--report", lk.report, "JSON report path");

  InfoArgs in;
  auto* i = app.add_subcommand("info", "Show version, presets or a dataset manifest");
  i->add_option("--preset", in.preset, "Print a preset's config");
  i->add_option("--dataset", in.dataset, "Print a dataset directory's manifest");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& ex) {
    err << "symrw: " << ex.what() << "\n";
    return kValidation;
  }

  try {
    if (g->parsed()) return run_generate(gen, out);
    if (r->parsed()) return run_rewrite(rw, out);
    if (s->parsed()) return run_split(sp, out);
    if (e->parsed()) return run_evaluate(ev, out);
    if (l->parsed()) return run_leakage(lk, out);
    if (i->parsed()) return run_info(in, out);
  } catch (const IoError& ex) {
    err << "symrw: " << ex.what() << "\n";
    return kIo;
  } catch (const Error& ex) {
    err << "symrw: " << ex.what() << "\n";
    return kValidation;
  }
  return kValidation;
}

}  // namespace symrw::cli
