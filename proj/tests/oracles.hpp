#pragma once

// Independent reference implementations used only by tests. None of these
// call into the code paths they check.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "symrw/rewrite.hpp"
#include "symrw/term.hpp"

namespace symrw::oracle {

// Full-matrix Wagner-Fischer edit distance.
template <typename T>
std::size_t edit_distance(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<std::vector<std::size_t>> d(a.size() + 1, std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t best = d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      best = std::min(best, d[i - 1][j] + 1);
      best = std::min(best, d[i][j - 1] + 1);
      d[i][j] = best;
    }
  }
  return d[a.size()][b.size()];
}

// Subterms paired with their paths, preorder, by explicit stack.
inline std::vector<std::pair<std::vector<std::size_t>, Term>> all_subterms(const Term& t) {
  std::vector<std::pair<std::vector<std::size_t>, Term>> out;
  std::vector<std::pair<std::vector<std::size_t>, Term>> stack{{{}, t}};
  while (!stack.empty()) {
    auto [path, node] = stack.back();
    stack.pop_back();
    out.emplace_back(path, node);
    for (std::size_t i = node.arity(); i-- > 0;) {
      auto child = path;
      child.push_back(i);
      stack.emplace_back(child, node.arg(i));
    }
  }
  return out;
}

inline std::optional<Term> at_path(const Term& t, const std::vector<std::size_t>& path) {
  const Term* cur = &t;
  for (auto i : path) {
    if (i >= cur->arity()) return std::nullopt;
    cur = &cur->arg(i);
  }
  return *cur;
}

// Matching by flattening the pattern into (path, node) constraints and
// checking each against the subject.
inline std::optional<std::map<std::string, Term>> match(const Term& pattern, const Term& subject) {
  std::map<std::string, Term> theta;
  for (const auto& [path, p] : all_subterms(pattern)) {
    auto s = at_path(subject, path);
    if (!s) return std::nullopt;
    if (p.is_variable()) {
      auto it = theta.find(p.name());
      if (it == theta.end()) {
        theta.emplace(p.name(), *s);
      } else if (!(it->second == *s)) {
        return std::nullopt;
      }
    } else if (p.kind() != s->kind() || p.name() != s->name() || p.arity() != s->arity()) {
      return std::nullopt;
    }
  }
  return theta;
}

inline Term instantiate(const Term& t, const std::map<std::string, Term>& theta) {
  if (t.is_variable()) {
    auto it = theta.find(t.name());
    return it == theta.end() ? t : it->second;
  }
  if (t.is_constant()) return t;
  std::vector<Term> args;
  for (const auto& a : t.args()) args.push_back(instantiate(a, theta));
  return Term::apply(t.name(), args);
}

inline Term replace(const Term& t, const std::vector<std::size_t>& path, std::size_t depth, const Term& with) {
  if (depth == path.size()) return with;
  std::vector<Term> args(t.args().begin(), t.args().end());
  args[path[depth]] = replace(args[path[depth]], path, depth + 1, with);
  return Term::apply(t.name(), args);
}

// Every one-step rewrite as (path, result), by scanning all positions.
inline std::set<std::pair<std::vector<std::size_t>, std::string>> rewrites(const Term& t, const Term& lhs, const Term& rhs) {
  std::set<std::pair<std::vector<std::size_t>, std::string>> out;
  for (const auto& [path, sub] : all_subterms(t)) {
    if (auto theta = match(lhs, sub)) {
      out.emplace(path, print_term(replace(t, path, 0, instantiate(rhs, *theta)), Syntax::tptp()));
    }
  }
  return out;
}

inline void collect_vars(const Term& t, std::set<std::string>& out) {
  if (t.is_variable()) out.insert(t.name());
  for (const auto& a : t.args()) collect_vars(a, out);
}

inline Term rename(const Term& t, const std::map<std::string, std::string>& m) {
  if (t.is_variable()) return Term::variable(m.at(t.name()));
  if (t.is_constant()) return t;
  std::vector<Term> args;
  for (const auto& a : t.args()) args.push_back(rename(a, m));
  return Term::apply(t.name(), args);
}

// Equal modulo a consistent renaming of variables: tries every bijection.
inline bool equal_mod_renaming(const Term& a, const Term& b) {
  std::set<std::string> va, vb;
  collect_vars(a, va);
  collect_vars(b, vb);
  if (va.size() != vb.size()) return false;
  std::vector<std::string> from(va.begin(), va.end()), to(vb.begin(), vb.end());
  std::sort(to.begin(), to.end());
  do {
    std::map<std::string, std::string> m;
    for (std::size_t i = 0; i < from.size(); ++i) m.emplace(from[i], to[i]);
    if (rename(a, m) == b) return true;
  } while (std::next_permutation(to.begin(), to.end()));
  return false;
}

// Small random TPTP-style terms over f/2, g/1, o/2, k/2 with constants
// e, a, v0..v2 and variables V0..V2.
struct TptpTermSource {
  std::mt19937_64 rng;
  explicit TptpTermSource(std::uint64_t seed) : rng(seed) {}

  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

  Term leaf(bool allow_vars) {
    static const char* consts[] = {"e", "a", "v0", "v1", "v2"};
    static const char* vars[] = {"V0", "V1", "V2"};
    if (allow_vars && pick(3) == 0) return Term::variable(vars[pick(3)]);
    return Term::constant(consts[pick(5)]);
  }

  Term term(std::size_t depth, bool allow_vars) {
    if (depth == 0 || pick(10) < 3) return leaf(allow_vars);
    switch (pick(4)) {
      case 0:
        return Term::apply("f", {term(depth - 1, allow_vars), term(depth - 1, allow_vars)});
      case 1:
        return Term::apply("g", {term(depth - 1, allow_vars)});
      case 2:
        return Term::apply("o", {term(depth - 1, allow_vars), term(depth - 1, allow_vars)});
      default:
        return Term::apply("k", {term(depth - 1, allow_vars), term(depth - 1, allow_vars)});
    }
  }

  // A rule lhs = rhs whose rhs only uses lhs variables. Half of the time the
  // lhs is cut from the subject so that matches are common.
  RewriteRule rule(const Term& subject) {
    Term lhs = term(2, true);
    if (pick(2) == 0) {
      auto subs = all_subterms(subject);
      lhs = generalize(subs[pick(subs.size())].second);
    }
    std::set<std::string> vars;
    collect_vars(lhs, vars);
    Term rhs = term(2, false);
    if (!vars.empty() && pick(2) == 0) {
      std::vector<std::string> v(vars.begin(), vars.end());
      rhs = Term::apply("g", {Term::variable(v[pick(v.size())])});
    }
    return RewriteRule("r", lhs, rhs);
  }

  // Replace some subterms by variables (the same subterm-variable reused sometimes).
  Term generalize(const Term& t) {
    if (pick(4) == 0) return Term::variable(pick(2) ? "V0" : "V1");
    if (t.is_atomic()) return t;
    std::vector<Term> args;
    for (const auto& a : t.args()) args.push_back(generalize(a));
    return Term::apply(t.name(), args);
  }
};

}  // namespace symrw::oracle
