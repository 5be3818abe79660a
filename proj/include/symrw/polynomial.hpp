#pragma once

// Exact multivariate polynomials with arbitrary-precision integer
// coefficients. normalize() is the canonical-form oracle for arithmetic terms
// over `+`, `*`, `^`, variables and nonnegative numerals.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "symrw/errors.hpp"
#include "symrw/term.hpp"

namespace symrw {

using Integer = boost::multiprecision::cpp_int;
using Exponent = std::uint64_t;
using Assignment = std::map<std::string, Integer>;

// Largest exponent normalize() will expand.
inline constexpr Exponent kMaxExponent = 1u << 16;

// Product of variable powers; the empty monomial is the constant 1.
class Monomial {
 public:
  Monomial() = default;
  static Monomial variable(const std::string& name, Exponent e = 1) {
    Monomial m;
    if (e) m.powers_.emplace(name, e);
    return m;
  }

  const std::map<std::string, Exponent>& powers() const { return powers_; }
  bool is_constant() const { return powers_.empty(); }

  Exponent degree() const {
    Exponent d = 0;
    for (const auto& [_, e] : powers_) d += e;
    return d;
  }

  Exponent exponent(const std::string& var) const {
    auto it = powers_.find(var);
    return it == powers_.end() ? 0 : it->second;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial m = a;
    for (const auto& [v, e] : b.powers_) m.powers_[v] += e;
    return m;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;

 private:
  std::map<std::string, Exponent> powers_;
};

// Graded order: higher total degree first, then compare exponents variable by
// variable in alphabetical order, higher exponent first. So x^2 > x*y > y^2 >
// x > y > 1.
inline bool graded_before(const Monomial& a, const Monomial& b) {
  const Exponent da = a.degree(), db = b.degree();
  if (da != db) return da > db;
  auto ia = a.powers().begin(), ib = b.powers().begin();
  while (ia != a.powers().end() || ib != b.powers().end()) {
    // Walk the union of variables in name order; a missing variable has exponent 0.
    if (ib == b.powers().end() || (ia != a.powers().end() && ia->first < ib->first)) return true;
    if (ia == a.powers().end() || ib->first < ia->first) return false;
    if (ia->second != ib->second) return ia->second > ib->second;
    ++ia;
    ++ib;
  }
  return false;
}

// Finite map from monomials to nonzero coefficients; zero is the empty map.
class Polynomial {
 public:
  Polynomial() = default;

  static Polynomial constant(const Integer& c) {
    Polynomial p;
    if (c != 0) p.terms_.emplace(Monomial{}, c);
    return p;
  }

  static Polynomial variable(const std::string& name) {
    Polynomial p;
    p.terms_.emplace(Monomial::variable(name), Integer(1));
    return p;
  }

  // Builds from raw terms, dropping zero coefficients and merging repeats.
  static Polynomial from_terms(const std::vector<std::pair<Monomial, Integer>>& terms) {
    Polynomial p;
    for (const auto& [m, c] : terms) p.add_term(m, c);
    return p;
  }

  const std::map<Monomial, Integer>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_constant()); }

  Integer constant_value() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Integer(0) : it->second;
  }

  Polynomial& operator+=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial out;
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
    }
    return out;
  }

  Polynomial pow(Exponent e) const {
    Polynomial result = constant(1);
    Polynomial base = *this;
    while (e) {
      if (e & 1) result = result * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return result;
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void add_term(const Monomial& m, const Integer& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  std::map<Monomial, Integer> terms_;
};

namespace detail {

inline Integer numeral_value(const Term& t) {
  if (!is_numeral(t.name())) throw NonPolynomialSymbol("constant '" + t.name() + "' is not a numeral");
  return Integer(t.name());
}

inline Exponent exponent_value(const Integer& value) {
  if (value < 0) throw NegativeExponent("negative exponent " + value.str());
  if (value > kMaxExponent) throw ExponentTooLarge("exponent " + value.str() + " exceeds " + std::to_string(kMaxExponent));
  return value.convert_to<Exponent>();
}

inline void check_operator(const Term& t) {
  if (!detail::is_infix_operator(t)) {
    throw NonPolynomialSymbol("'" + t.name() + "'/" + std::to_string(t.arity()) + " is not a polynomial operator");
  }
}

}  // namespace detail

inline Polynomial normalize(const Term& term) {
  switch (term.kind()) {
    case TermKind::Variable:
      return Polynomial::variable(term.name());
    case TermKind::Constant:
      return Polynomial::constant(detail::numeral_value(term));
    case TermKind::Apply:
      break;
  }
  detail::check_operator(term);
  Polynomial lhs = normalize(term.arg(0));
  Polynomial rhs = normalize(term.arg(1));
  if (term.name() == "+") return lhs + rhs;
  if (term.name() == "*") return lhs * rhs;
  if (!rhs.is_constant()) throw NonConstantExponent("exponent does not normalize to a constant");
  return lhs.pow(detail::exponent_value(rhs.constant_value()));
}

inline std::string print_monomial(const Monomial& m, const Integer& coeff) {
  std::string out;
  if (m.is_constant() || coeff != 1) out += coeff.str();
  for (const auto& [v, e] : m.powers()) {
    if (!out.empty()) out += '*';
    out += v;
    if (e != 1) out += '^' + std::to_string(e);
  }
  return out;
}

// Canonical text, e.g. `2*x^2+5*x+y+3`; the zero polynomial prints `0`.
inline std::string print_normal(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::vector<const std::pair<const Monomial, Integer>*> order;
  order.reserve(p.terms().size());
  for (const auto& kv : p.terms()) order.push_back(&kv);
  std::sort(order.begin(), order.end(), [](auto* a, auto* b) { return graded_before(a->first, b->first); });
  std::string out;
  for (auto* kv : order) {
    if (!out.empty()) out += '+';
    out += print_monomial(kv->first, kv->second);
  }
  return out;
}

inline const Integer& lookup(const Assignment& env, const std::string& var) {
  auto it = env.find(var);
  if (it == env.end()) throw UnboundVariable("variable '" + var + "' has no value");
  return it->second;
}

// Direct evaluation of the term tree, independent of normalize().
inline Integer eval_term(const Term& term, const Assignment& env) {
  switch (term.kind()) {
    case TermKind::Variable:
      return lookup(env, term.name());
    case TermKind::Constant:
      return detail::numeral_value(term);
    case TermKind::Apply:
      break;
  }
  detail::check_operator(term);
  if (term.name() == "^") {
    if (!is_ground(term.arg(1))) throw NonConstantExponent("exponent contains variables");
    const Integer e = eval_term(term.arg(1), {});
    return boost::multiprecision::pow(eval_term(term.arg(0), env), static_cast<unsigned>(detail::exponent_value(e)));
  }
  Integer a = eval_term(term.arg(0), env);
  Integer b = eval_term(term.arg(1), env);
  return term.name() == "+" ? Integer(a + b) : Integer(a * b);
}

inline Integer eval_poly(const Polynomial& p, const Assignment& env) {
  Integer total = 0;
  for (const auto& [m, c] : p.terms()) {
    Integer v = c;
    for (const auto& [var, e] : m.powers()) v *= boost::multiprecision::pow(lookup(env, var), static_cast<unsigned>(e));
    total += v;
  }
  return total;
}

}  // namespace symrw
