#pragma once

// First-order terms and their two concrete syntaxes: TPTP-style prefix
// application (`k(b(s(e, v1), e), v0)`) and infix arithmetic over `+`, `*`,
// `^` (`(x*(x+1))+1`).

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "symrw/errors.hpp"

namespace symrw {

enum class TermKind : unsigned char { Variable, Constant, Apply };

// Immutable term tree with shared structure. Copies are cheap.
class Term {
 public:
  static Term variable(std::string name) { return Term(TermKind::Variable, std::move(name), {}); }
  static Term constant(std::string name) { return Term(TermKind::Constant, std::move(name), {}); }
  static Term apply(std::string fun, std::vector<Term> args) {
    if (args.empty()) throw std::invalid_argument("apply of '" + fun + "' needs at least one argument");
    return Term(TermKind::Apply, std::move(fun), std::move(args));
  }

  TermKind kind() const { return node_->kind; }
  bool is_variable() const { return kind() == TermKind::Variable; }
  bool is_constant() const { return kind() == TermKind::Constant; }
  bool is_apply() const { return kind() == TermKind::Apply; }
  bool is_atomic() const { return kind() != TermKind::Apply; }

  // Variable/constant name, or the function symbol of an application.
  const std::string& name() const { return node_->name; }
  std::span<const Term> args() const { return node_->args; }
  const Term& arg(std::size_t i) const { return node_->args.at(i); }
  std::size_t arity() const { return node_->args.size(); }

  // Node count of the tree.
  std::size_t size() const { return node_->size; }
  std::size_t hash() const { return node_->hash; }

  friend bool operator==(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return true;
    if (a.node_->hash != b.node_->hash || a.node_->size != b.node_->size) return false;
    return (a <=> b) == 0;
  }

  friend std::strong_ordering operator<=>(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return std::strong_ordering::equal;
    if (auto c = a.kind() <=> b.kind(); c != 0) return c;
    if (auto c = a.name().compare(b.name()); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    if (auto c = a.arity() <=> b.arity(); c != 0) return c;
    for (std::size_t i = 0; i < a.arity(); ++i) {
      if (auto c = a.arg(i) <=> b.arg(i); c != 0) return c;
    }
    return std::strong_ordering::equal;
  }

 private:
  struct Node {
    TermKind kind;
    std::string name;
    std::vector<Term> args;
    std::size_t size;
    std::size_t hash;
  };

  Term(TermKind kind, std::string name, std::vector<Term> args) {
    std::size_t size = 1;
    std::size_t h = std::hash<std::string>{}(name) ^ (static_cast<std::size_t>(kind) + 0x9e3779b97f4a7c15ULL);
    for (const auto& a : args) {
      size += a.size();
      h ^= a.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    node_ = std::make_shared<const Node>(Node{kind, std::move(name), std::move(args), size, h});
  }

  std::shared_ptr<const Node> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

using TokenSeq = std::vector<std::string>;

enum class SyntaxKind { TptpPrefix, InfixArith };

struct Syntax {
  SyntaxKind kind = SyntaxKind::TptpPrefix;
  // InfixArith only: identifiers in this list are variables, any other
  // identifier is a named constant. Also the canonical renaming alphabet.
  std::vector<std::string> variables;

  static Syntax tptp() { return {SyntaxKind::TptpPrefix, {}}; }
  static Syntax infix(std::vector<std::string> vars = {"x", "y", "z", "u", "w"}) {
    return {SyntaxKind::InfixArith, std::move(vars)};
  }

  bool is_variable_name(std::string_view name) const {
    if (name.empty()) return false;
    if (kind == SyntaxKind::TptpPrefix) return std::isupper(static_cast<unsigned char>(name.front())) != 0;
    return std::find(variables.begin(), variables.end(), name) != variables.end();
  }

  // Name of the i-th variable in first-occurrence order after canonical
  // renaming. TPTP uses the unbounded family X0, X1, ...
  std::optional<std::string> canonical_variable(std::size_t i) const {
    if (kind == SyntaxKind::TptpPrefix) return "X" + std::to_string(i);
    if (i < variables.size()) return variables[i];
    return std::nullopt;
  }
};

inline bool is_numeral(std::string_view tok) {
  return !tok.empty() && std::all_of(tok.begin(), tok.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

namespace detail {

struct Lexeme {
  std::string text;
  std::size_t offset;
};

inline bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_'; }
inline bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }

inline bool is_punct(char c, SyntaxKind kind) {
  switch (c) {
    case '(':
    case ')':
      return true;
    case ',':
    case '=':
      return kind == SyntaxKind::TptpPrefix;
    case '+':
    case '*':
    case '^':
      return kind == SyntaxKind::InfixArith;
    default:
      return false;
  }
}

inline std::vector<Lexeme> lex(std::string_view text, SyntaxKind kind) {
  std::vector<Lexeme> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      // `12ab` is neither a numeral nor an identifier.
      if (j < text.size() && is_ident_start(text[j])) {
        throw SyntaxError("identifier may not start with a digit at offset " + std::to_string(i), i);
      }
      out.push_back({std::string(text.substr(i, j - i)), i});
      i = j;
    } else if (is_ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && is_ident_char(text[j])) ++j;
      out.push_back({std::string(text.substr(i, j - i)), i});
      i = j;
    } else if (is_punct(c, kind)) {
      out.push_back({std::string(1, c), i});
      ++i;
    } else {
      throw SyntaxError(std::string("unexpected character '") + c + "' at offset " + std::to_string(i), i);
    }
  }
  return out;
}

class Parser {
 public:
  Parser(std::string_view text, const Syntax& syntax) : syntax_(syntax), toks_(lex(text, syntax.kind)), end_(text.size()) {}

  Term parse() {
    if (toks_.empty()) throw SyntaxError("empty input", 0);
    Term t = syntax_.kind == SyntaxKind::TptpPrefix ? tptp_term() : infix_sum();
    if (pos_ != toks_.size()) fail("unexpected trailing '" + toks_[pos_].text + "'");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    const std::size_t at = pos_ < toks_.size() ? toks_[pos_].offset : end_;
    throw SyntaxError(msg + " at offset " + std::to_string(at), at);
  }

  bool at(std::string_view s) const { return pos_ < toks_.size() && toks_[pos_].text == s; }

  void expect(std::string_view s) {
    if (!at(s)) fail("expected '" + std::string(s) + "'");
    ++pos_;
  }

  const Lexeme& next_atom() {
    if (pos_ >= toks_.size()) fail("unexpected end of input");
    const Lexeme& lx = toks_[pos_];
    if (!is_numeral(lx.text) && !is_ident_start(lx.text.front())) fail("unexpected '" + lx.text + "'");
    ++pos_;
    return lx;
  }

  Term make_apply(std::string fun, std::vector<Term> args, std::size_t offset) {
    auto [it, inserted] = arity_.try_emplace(fun, args.size());
    if (!inserted && it->second != args.size()) {
      throw SyntaxError("symbol '" + fun + "' used with arities " + std::to_string(it->second) + " and " +
                            std::to_string(args.size()) + " at offset " + std::to_string(offset),
                        offset);
    }
    return Term::apply(std::move(fun), std::move(args));
  }

  Term leaf(const Lexeme& lx) {
    if (is_numeral(lx.text)) return Term::constant(lx.text);
    if (syntax_.is_variable_name(lx.text)) return Term::variable(lx.text);
    return Term::constant(lx.text);
  }

  Term tptp_term() {
    const Lexeme& head = next_atom();
    if (!at("(")) return leaf(head);
    if (is_numeral(head.text) || syntax_.is_variable_name(head.text)) fail("'" + head.text + "' cannot take arguments");
    ++pos_;
    std::vector<Term> args;
    args.push_back(tptp_term());
    while (at(",")) {
      ++pos_;
      args.push_back(tptp_term());
    }
    expect(")");
    return make_apply(head.text, std::move(args), head.offset);
  }

  Term infix_sum() {
    Term lhs = infix_product();
    while (at("+")) {
      const std::size_t off = toks_[pos_++].offset;
      lhs = make_apply("+", {lhs, infix_product()}, off);
    }
    return lhs;
  }

  Term infix_product() {
    Term lhs = infix_power();
    while (at("*")) {
      const std::size_t off = toks_[pos_++].offset;
      lhs = make_apply("*", {lhs, infix_power()}, off);
    }
    return lhs;
  }

  Term infix_power() {
    Term lhs = infix_primary();
    while (at("^")) {
      const std::size_t off = toks_[pos_++].offset;
      lhs = make_apply("^", {lhs, infix_primary()}, off);
    }
    return lhs;
  }

  Term infix_primary() {
    if (at("(")) {
      ++pos_;
      Term inner = infix_sum();
      expect(")");
      return inner;
    }
    return leaf(next_atom());
  }

  const Syntax& syntax_;
  std::vector<Lexeme> toks_;
  std::size_t end_;
  std::size_t pos_ = 0;
  std::map<std::string, std::size_t> arity_;
};

inline bool is_infix_operator(const Term& t) {
  return t.is_apply() && t.arity() == 2 && (t.name() == "+" || t.name() == "*" || t.name() == "^");
}

inline void print_into(std::string& out, const Term& t, SyntaxKind kind) {
  if (t.is_atomic()) {
    out += t.name();
    return;
  }
  if (kind == SyntaxKind::TptpPrefix) {
    out += t.name();
    out += '(';
    for (std::size_t i = 0; i < t.arity(); ++i) {
      if (i) out += ", ";
      print_into(out, t.arg(i), kind);
    }
    out += ')';
    return;
  }
  if (!is_infix_operator(t)) throw std::invalid_argument("'" + t.name() + "' has no infix form");
  for (std::size_t i = 0; i < 2; ++i) {
    if (i) out += t.name();
    const Term& a = t.arg(i);
    if (a.is_apply()) out += '(';
    print_into(out, a, kind);
    if (a.is_apply()) out += ')';
  }
}

}  // namespace detail

inline Term parse_term(std::string_view text, const Syntax& syntax) { return detail::Parser(text, syntax).parse(); }

// Infix output parenthesizes every non-atomic argument, so the result parses
// back to the same tree regardless of precedence.
inline std::string print_term(const Term& term, const Syntax& syntax) {
  std::string out;
  detail::print_into(out, term, syntax.kind);
  return out;
}

inline TokenSeq tokenize(std::string_view text, const Syntax& syntax) {
  TokenSeq out;
  for (auto& lx : detail::lex(text, syntax.kind)) out.push_back(std::move(lx.text));
  return out;
}

// Dataset line format: tokens separated by single spaces.
inline std::string join_tokens(const TokenSeq& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i];
  }
  return out;
}

inline TokenSeq split_tokens(std::string_view line) {
  TokenSeq out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

// Polish notation: symbol names in preorder, no brackets.
inline TokenSeq to_prefix(const Term& term) {
  TokenSeq out;
  out.reserve(term.size());
  auto walk = [&](auto&& self, const Term& t) -> void {
    out.push_back(t.name());
    for (const auto& a : t.args()) self(self, a);
  };
  walk(walk, term);
  return out;
}

using Signature = std::map<std::string, std::size_t>;

// Arity of every function symbol in `term`; throws on inconsistent use.
inline Signature signature_of(const Term& term) {
  Signature sig;
  auto walk = [&](auto&& self, const Term& t) -> void {
    if (!t.is_apply()) return;
    auto [it, inserted] = sig.try_emplace(t.name(), t.arity());
    if (!inserted && it->second != t.arity()) throw std::invalid_argument("inconsistent arity for '" + t.name() + "'");
    for (const auto& a : t.args()) self(self, a);
  };
  walk(walk, term);
  return sig;
}

// Inverse of to_prefix. Symbols absent from `sig` are leaves, classified as
// variable or constant by `syntax`.
inline Term from_prefix(std::span<const std::string> tokens, const Signature& sig, const Syntax& syntax) {
  std::size_t pos = 0;
  auto build = [&](auto&& self) -> Term {
    if (pos >= tokens.size()) throw SyntaxError("prefix sequence ends early", pos);
    const std::string& sym = tokens[pos++];
    auto it = sig.find(sym);
    if (it == sig.end() || it->second == 0) {
      if (!is_numeral(sym) && syntax.is_variable_name(sym)) return Term::variable(sym);
      return Term::constant(sym);
    }
    std::vector<Term> args;
    args.reserve(it->second);
    for (std::size_t i = 0; i < it->second; ++i) args.push_back(self(self));
    return Term::apply(sym, std::move(args));
  };
  Term t = build(build);
  if (pos != tokens.size()) throw SyntaxError("trailing prefix tokens", pos);
  return t;
}

// Distinct variable names in preorder first-occurrence order.
inline std::vector<std::string> variables_of(const Term& term) {
  std::vector<std::string> seen;
  auto walk = [&](auto&& self, const Term& t) -> void {
    if (t.is_variable()) {
      if (std::find(seen.begin(), seen.end(), t.name()) == seen.end()) seen.push_back(t.name());
      return;
    }
    for (const auto& a : t.args()) self(self, a);
  };
  walk(walk, term);
  return seen;
}

inline bool is_ground(const Term& term) { return variables_of(term).empty(); }

// Renames variables to the syntax's canonical alphabet in order of first
// occurrence. Two terms are equal modulo renaming iff their canonical forms are.
inline Term alpha_canonical(const Term& term, const Syntax& syntax) {
  const auto vars = variables_of(term);
  std::map<std::string, std::string> rename;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    auto name = syntax.canonical_variable(i);
    if (!name) {
      throw CapacityError(std::to_string(vars.size()) + " distinct variables exceed the canonical alphabet of " +
                          std::to_string(syntax.variables.size()));
    }
    rename.emplace(vars[i], std::move(*name));
  }
  auto walk = [&](auto&& self, const Term& t) -> Term {
    if (t.is_variable()) return Term::variable(rename.at(t.name()));
    if (t.is_constant()) return t;
    std::vector<Term> args;
    args.reserve(t.arity());
    for (const auto& a : t.args()) args.push_back(self(self, a));
    return Term::apply(t.name(), std::move(args));
  };
  return walk(walk, term);
}

}  // namespace symrw
