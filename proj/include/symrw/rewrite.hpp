#pragma once

// Single-step rewriting: one-sided matching, substitution and application of
// an oriented equation `lhs = rhs` at a position, the paramodulation step
//
//     s = t    u[θ(s)] = v
//     --------------------
//         u[θ(t)] = v
//
// restricted to its left premise: we produce the pair (u[θ(s)], u[θ(t)]).

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "symrw/errors.hpp"
#include "symrw/example.hpp"
#include "symrw/term.hpp"

namespace symrw {

using Substitution = std::map<std::string, Term>;

// Child indices from the root; the root itself is the empty position.
using Position = std::vector<std::size_t>;

inline Term substitute(const Term& term, const Substitution& theta) {
  if (theta.empty()) return term;
  if (term.is_variable()) {
    auto it = theta.find(term.name());
    return it == theta.end() ? term : it->second;
  }
  if (term.is_constant()) return term;
  std::vector<Term> args;
  args.reserve(term.arity());
  for (const auto& a : term.args()) args.push_back(substitute(a, theta));
  return Term::apply(term.name(), std::move(args));
}

namespace detail {

inline bool match_into(const Term& pattern, const Term& subject, Substitution& theta) {
  if (pattern.is_variable()) {
    auto [it, inserted] = theta.try_emplace(pattern.name(), subject);
    return inserted || it->second == subject;
  }
  if (pattern.kind() != subject.kind() || pattern.name() != subject.name() || pattern.arity() != subject.arity()) {
    return false;
  }
  for (std::size_t i = 0; i < pattern.arity(); ++i) {
    if (!match_into(pattern.arg(i), subject.arg(i), theta)) return false;
  }
  return true;
}

}  // namespace detail

// One-sided matching: finds θ with θ(pattern) == subject. Variables of the
// subject are rigid.
inline std::optional<Substitution> match_at(const Term& pattern, const Term& subject) {
  Substitution theta;
  if (!detail::match_into(pattern, subject, theta)) return std::nullopt;
  return theta;
}

inline std::vector<Position> subterm_positions(const Term& term) {
  std::vector<Position> out;
  out.reserve(term.size());
  Position cur;
  auto walk = [&](auto&& self, const Term& t) -> void {
    out.push_back(cur);
    for (std::size_t i = 0; i < t.arity(); ++i) {
      cur.push_back(i);
      self(self, t.arg(i));
      cur.pop_back();
    }
  };
  walk(walk, term);
  return out;
}

inline std::string format_position(const Position& pos) {
  if (pos.empty()) return "ε";
  std::string s;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    if (i) s += '.';
    s += std::to_string(pos[i]);
  }
  return s;
}

inline const Term& subterm_at(const Term& term, const Position& pos) {
  const Term* cur = &term;
  for (std::size_t idx : pos) {
    if (idx >= cur->arity()) throw InvalidPosition("no subterm at position " + format_position(pos));
    cur = &cur->arg(idx);
  }
  return *cur;
}

inline Term replace_at(const Term& term, const Position& pos, const Term& replacement, std::size_t depth = 0) {
  if (depth == pos.size()) return replacement;
  const std::size_t idx = pos[depth];
  if (idx >= term.arity()) throw InvalidPosition("no subterm at position " + format_position(pos));
  std::vector<Term> args(term.args().begin(), term.args().end());
  args[idx] = replace_at(args[idx], pos, replacement, depth + 1);
  return Term::apply(term.name(), std::move(args));
}

// Oriented equation lhs -> rhs. Every variable of rhs must occur in lhs.
class RewriteRule {
 public:
  RewriteRule(std::string name, Term lhs, Term rhs) : name_(std::move(name)), lhs_(std::move(lhs)), rhs_(std::move(rhs)) {
    const auto lhs_vars = variables_of(lhs_);
    for (const auto& v : variables_of(rhs_)) {
      if (std::find(lhs_vars.begin(), lhs_vars.end(), v) == lhs_vars.end()) {
        throw std::invalid_argument("rule '" + name_ + "': variable " + v + " occurs only on the right-hand side");
      }
    }
  }

  const std::string& name() const { return name_; }
  const Term& lhs() const { return lhs_; }
  const Term& rhs() const { return rhs_; }
  bool is_ground() const { return symrw::is_ground(lhs_); }

 private:
  std::string name_;
  Term lhs_;
  Term rhs_;
};

inline Term apply_rule_at(const Term& term, const RewriteRule& rule, const Position& pos) {
  const Term& target = subterm_at(term, pos);
  auto theta = match_at(rule.lhs(), target);
  if (!theta) throw NoMatch("rule '" + rule.name() + "' does not match at position " + format_position(pos));
  return replace_at(term, pos, substitute(rule.rhs(), *theta));
}

struct Rewrite {
  Position position;
  Term result;
};

// Every single-step rewrite of `term` by `rule`, in preorder of positions.
inline std::vector<Rewrite> all_single_rewrites(const Term& term, const RewriteRule& rule) {
  std::vector<Rewrite> out;
  for (auto& pos : subterm_positions(term)) {
    const Term& sub = subterm_at(term, pos);
    // Cheap rejections before matching.
    if (sub.size() < rule.lhs().size()) continue;
    if (!rule.lhs().is_variable() && (sub.name() != rule.lhs().name() || sub.kind() != rule.lhs().kind())) continue;
    if (auto theta = match_at(rule.lhs(), sub)) {
      Term result = replace_at(term, pos, substitute(rule.rhs(), *theta));
      out.push_back({std::move(pos), std::move(result)});
    }
  }
  return out;
}

enum class SynthMode { PerRule, Joint };

// Before/after example pairs for every (term, rule, position) where the rule
// applies. PerRule yields one group per distinct rule name in first-seen
// order; Joint yields a single group named "joint". No rules, no groups.
inline std::vector<PairGroup> synth_pairs(std::span<const RewriteRule> rules, std::span<const Term> terms, SynthMode mode) {
  std::vector<PairGroup> groups;
  if (rules.empty()) return groups;
  const Syntax syntax = Syntax::tptp();
  std::map<std::string, std::size_t> slot;
  if (mode == SynthMode::Joint) {
    groups.push_back({"joint", {}});
  } else {
    for (const auto& r : rules) {
      if (slot.try_emplace(r.name(), groups.size()).second) groups.push_back({r.name(), {}});
    }
  }
  for (const auto& term : terms) {
    TokenSeq before;
    for (const auto& rule : rules) {
      auto rewrites = all_single_rewrites(term, rule);
      if (rewrites.empty()) continue;
      if (before.empty()) before = tokenize(print_term(term, syntax), syntax);
      auto& dest = groups[mode == SynthMode::Joint ? 0 : slot.at(rule.name())].pairs;
      for (const auto& rw : rewrites) dest.push_back({before, tokenize(print_term(rw.result, syntax), syntax)});
    }
  }
  return groups;
}

// `lhs = rhs` in TPTP syntax.
inline RewriteRule parse_rule(std::string_view line, std::string name) {
  const auto eq = line.find('=');
  if (eq == std::string_view::npos) throw SyntaxError("rule has no '='", line.size());
  if (line.find('=', eq + 1) != std::string_view::npos) throw SyntaxError("rule has more than one '='", eq);
  const Syntax syntax = Syntax::tptp();
  Term lhs = [&] {
    try {
      return parse_term(line.substr(0, eq), syntax);
    } catch (const SyntaxError& e) {
      throw SyntaxError(std::string("left-hand side: ") + e.what(), e.position);
    }
  }();
  Term rhs = [&] {
    try {
      return parse_term(line.substr(eq + 1), syntax);
    } catch (const SyntaxError& e) {
      throw SyntaxError(std::string("right-hand side: ") + e.what(), eq + 1 + e.position);
    }
  }();
  return RewriteRule(std::move(name), std::move(lhs), std::move(rhs));
}

// One rule per non-blank line; every rule is named after the file stem.
inline std::vector<RewriteRule> load_rules(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open rule file " + path.string());
  std::vector<RewriteRule> rules;
  std::string line;
  std::size_t lineno = 0;
  const std::string name = path.stem().string();
  while (std::getline(in, line)) {
    ++lineno;
    if (split_tokens(line).empty()) continue;
    try {
      rules.push_back(parse_rule(line, name));
    } catch (const SyntaxError& e) {
      throw SyntaxError(path.string() + ":" + std::to_string(lineno) + ": " + e.what(), e.position, lineno);
    }
  }
  return rules;
}

}  // namespace symrw
