#pragma once

// Random arithmetic terms and (input, normal form) example pairs.
//
// A term is grown top-down: at each node one symbol (function, variable or
// constant) is drawn by weight; leaves end the branch, functions recurse into
// their arguments. Function weights shrink geometrically with depth so the
// size distribution can be centred on a target length instead of following
// the heavy tail of a constant-weight branching process.

#include <cmath>
#include <cstdint>
#include <future>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "symrw/errors.hpp"
#include "symrw/example.hpp"
#include "symrw/polynomial.hpp"
#include "symrw/random.hpp"
#include "symrw/term.hpp"

namespace symrw {

struct FunctionSymbol {
  std::string name;
  std::size_t arity = 2;
  double weight = 1.0;

  friend bool operator==(const FunctionSymbol&, const FunctionSymbol&) = default;
};

enum class ExponentPolicy {
  ConstantsOnly,  // right operand of `^` is a uniformly drawn constant
  Recursive,      // right operand grown like any other subterm
};

struct GenConfig {
  std::string name = "custom";
  std::vector<FunctionSymbol> functions;
  std::vector<std::string> variables;
  std::vector<std::string> constants;
  // Class totals, split evenly among the class members.
  double variable_weight = 1.0;
  double constant_weight = 1.0;
  // Function weights at depth d are multiplied by depth_decay^d.
  double depth_decay = 1.0;
  std::size_t max_input_tokens = 50;
  std::optional<std::size_t> max_output_tokens;
  std::size_t count = 300000;
  std::uint64_t seed = 0;
  ExponentPolicy exponent_policy = ExponentPolicy::ConstantsOnly;
  std::size_t max_depth = 64;
  // Give up after this many consecutive candidates yield nothing new.
  std::size_t max_stale_attempts = 100000;
  std::size_t shards = 1;
  std::size_t threads = 1;

  friend bool operator==(const GenConfig&, const GenConfig&) = default;

  void validate() const {
    for (const auto& f : functions) {
      if (f.arity == 0) throw ConfigError("function '" + f.name + "' must have positive arity");
      if (!(f.weight > 0)) throw ConfigError("function '" + f.name + "' must have positive weight");
    }
    const bool has_vars = !variables.empty() && variable_weight > 0;
    const bool has_consts = !constants.empty() && constant_weight > 0;
    if (!has_vars && !has_consts) throw ConfigError("no nullary symbol can be drawn");
    if (variable_weight < 0 || constant_weight < 0) throw ConfigError("leaf weights must be nonnegative");
    if (!(depth_decay > 0)) throw ConfigError("depth_decay must be positive");
    if (variables.size() > 5) throw ConfigError("at most 5 variables are supported");
    for (const auto& c : constants) {
      if (!is_numeral(c)) throw ConfigError("constant '" + c + "' is not a numeral");
    }
    const Syntax syntax = Syntax::infix(variables);
    for (const auto& v : variables) {
      if (is_numeral(v) || tokenize(v, syntax) != TokenSeq{v}) throw ConfigError("bad variable name '" + v + "'");
    }
    if (exponent_policy == ExponentPolicy::ConstantsOnly && constants.empty()) {
      for (const auto& f : functions) {
        if (f.name == "^") throw ConfigError("'^' with constant exponents needs at least one constant");
      }
    }
    if (shards == 0) throw ConfigError("shards must be at least 1");
    if (max_input_tokens == 0) throw ConfigError("max_input_tokens must be positive");
  }

  Syntax syntax() const { return Syntax::infix(variables); }
};

// Presets poly1..poly6: function symbols, constants, variable count.
inline const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"poly1", "poly2", "poly3", "poly4", "poly5", "poly6"};
  return names;
}

inline GenConfig preset(const std::string& name) {
  static const std::vector<std::string> all_vars{"x", "y", "z", "u", "w"};
  auto make = [&](bool with_pow, std::vector<std::string> consts, std::size_t nvars) {
    GenConfig c;
    c.name = name;
    c.functions = {{"+", 2, 1.0}, {"*", 2, 1.0}};
    if (with_pow) c.functions.push_back({"^", 2, 0.5});
    c.constants = std::move(consts);
    c.variables.assign(all_vars.begin(), all_vars.begin() + static_cast<std::ptrdiff_t>(nvars));
    // Calibrated so the mean input length after the 50-token filter is ~25.
    c.variable_weight = 0.6;
    c.constant_weight = 0.4;
    c.depth_decay = 0.75;
    return c;
  };
  if (name == "poly1") return make(false, {"0", "1"}, 1);
  if (name == "poly2") return make(false, {"0", "1"}, 2);
  if (name == "poly3") return make(false, {"0", "1"}, 3);
  if (name == "poly4") return make(false, {"0", "1", "2", "3", "4", "5"}, 5);
  if (name == "poly5") return make(true, {"0", "1"}, 2);
  if (name == "poly6") return make(true, {"0", "1", "2"}, 3);
  throw ConfigError("unknown preset '" + name + "'");
}

namespace detail {

struct TermTooLong {};

class TermGrower {
 public:
  TermGrower(const GenConfig& config, Rng& rng, std::size_t node_budget)
      : config_(config), rng_(rng), budget_(node_budget) {
    for (const auto& f : config.functions) base_weights_.push_back(f.weight);
    const double v = config.variables.empty() ? 0 : config.variable_weight / static_cast<double>(config.variables.size());
    const double c = config.constants.empty() ? 0 : config.constant_weight / static_cast<double>(config.constants.size());
    for (std::size_t i = 0; i < config.variables.size(); ++i) base_weights_.push_back(v);
    for (std::size_t i = 0; i < config.constants.size(); ++i) base_weights_.push_back(c);
  }

  Term grow(std::size_t depth = 0) {
    if (depth > config_.max_depth) throw DepthExceeded("term depth passed " + std::to_string(config_.max_depth));
    if (++nodes_ > budget_) throw TermTooLong{};
    const std::size_t nf = config_.functions.size();
    std::vector<double> w = base_weights_;
    const double scale = std::pow(config_.depth_decay, static_cast<double>(depth));
    for (std::size_t i = 0; i < nf; ++i) w[i] *= scale;
    const std::size_t pick = weighted_index(rng_, w);
    if (pick >= nf + config_.variables.size()) return Term::constant(config_.constants[pick - nf - config_.variables.size()]);
    if (pick >= nf) return Term::variable(config_.variables[pick - nf]);
    const FunctionSymbol& f = config_.functions[pick];
    std::vector<Term> args;
    args.reserve(f.arity);
    for (std::size_t i = 0; i < f.arity; ++i) {
      const bool exponent_slot = f.name == "^" && f.arity == 2 && i == 1;
      if (exponent_slot && config_.exponent_policy == ExponentPolicy::ConstantsOnly) {
        if (++nodes_ > budget_) throw TermTooLong{};
        args.push_back(Term::constant(config_.constants[uniform_index(rng_, config_.constants.size())]));
      } else {
        args.push_back(grow(depth + 1));
      }
    }
    return Term::apply(f.name, std::move(args));
  }

 private:
  const GenConfig& config_;
  Rng& rng_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
  std::vector<double> base_weights_;
};

}  // namespace detail

// One random term. Throws DepthExceeded past config.max_depth.
inline Term gen_term(const GenConfig& config, Rng& rng) {
  return detail::TermGrower(config, rng, SIZE_MAX).grow();
}

namespace detail {

// A candidate pair, or nothing if the draw was filtered out.
inline std::optional<ExamplePair> draw_candidate(const GenConfig& config, const Syntax& syntax, Rng& rng) {
  std::optional<Term> term;
  try {
    // Every node prints as at least one token, so larger trees are over length.
    term = TermGrower(config, rng, config.max_input_tokens).grow();
  } catch (const TermTooLong&) {
    return std::nullopt;
  } catch (const DepthExceeded&) {
    return std::nullopt;
  }
  TokenSeq src = tokenize(print_term(*term, syntax), syntax);
  if (src.size() > config.max_input_tokens) return std::nullopt;
  std::string normal;
  try {
    normal = print_normal(normalize(*term));
  } catch (const NormalizeError&) {
    return std::nullopt;
  }
  TokenSeq tgt = tokenize(normal, syntax);
  if (config.max_output_tokens && tgt.size() > *config.max_output_tokens) return std::nullopt;
  return ExamplePair{std::move(src), std::move(tgt)};
}

}  // namespace detail

// `config.count` distinct (input, normal form) pairs. Shards draw from
// independent streams and are merged round-robin in fixed-size batches, so the
// output depends on (seed, shards) but not on the thread count.
inline std::vector<ExamplePair> gen_dataset(const GenConfig& config) {
  config.validate();
  std::vector<ExamplePair> out;
  if (config.count == 0) return out;
  const Syntax syntax = config.syntax();
  constexpr std::size_t kBatch = 256;

  std::vector<Rng> streams;
  for (std::size_t s = 0; s < config.shards; ++s) streams.emplace_back(derive_seed(config.seed, s));

  auto draw_batch = [&](std::size_t shard) {
    std::vector<std::optional<ExamplePair>> batch;
    batch.reserve(kBatch);
    for (std::size_t i = 0; i < kBatch; ++i) batch.push_back(detail::draw_candidate(config, syntax, streams[shard]));
    return batch;
  };

  std::unordered_set<std::string> seen;
  std::size_t stale = 0;
  out.reserve(config.count);
  while (out.size() < config.count) {
    std::vector<std::vector<std::optional<ExamplePair>>> round(config.shards);
    if (config.threads > 1 && config.shards > 1) {
      std::vector<std::future<std::vector<std::optional<ExamplePair>>>> jobs;
      for (std::size_t s = 0; s < config.shards; ++s) jobs.push_back(std::async(std::launch::async, draw_batch, s));
      for (std::size_t s = 0; s < config.shards; ++s) round[s] = jobs[s].get();
    } else {
      for (std::size_t s = 0; s < config.shards; ++s) round[s] = draw_batch(s);
    }
    for (auto& batch : round) {
      for (auto& cand : batch) {
        if (out.size() == config.count) return out;
        if (cand && seen.insert(join_tokens(cand->src)).second) {
          out.push_back(std::move(*cand));
          stale = 0;
        } else if (++stale >= config.max_stale_attempts) {
          throw Exhausted("no new example in " + std::to_string(stale) + " consecutive draws after " +
                          std::to_string(out.size()) + " of " + std::to_string(config.count));
        }
      }
    }
  }
  return out;
}

}  // namespace symrw
