#pragma once

// Scoring of prediction files and train/test overlap measurements.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "symrw/errors.hpp"
#include "symrw/random.hpp"
#include "symrw/term.hpp"

namespace symrw {

inline constexpr const char* kConstToken = "CONST";

// Every numeral token becomes CONST.
inline TokenSeq mask_constants(TokenSeq tokens) {
  for (auto& t : tokens) {
    if (is_numeral(t)) t = kConstToken;
  }
  return tokens;
}

// Every `-` token becomes `+`.
inline TokenSeq mask_signs(TokenSeq tokens) {
  for (auto& t : tokens) {
    if (t == "-") t = "+";
  }
  return tokens;
}

// Token-level edit distance with unit costs.
template <typename Seq>
std::size_t levenshtein(const Seq& a, const Seq& b) {
  const std::size_t n = std::size(a), m = std::size(b);
  if (n == 0) return m;
  if (m == 0) return n;
  std::vector<std::size_t> prev(m + 1), cur(m + 1);
  for (std::size_t j = 0; j <= m; ++j) prev[j] = j;
  auto ia = std::begin(a);
  for (std::size_t i = 1; i <= n; ++i, ++ia) {
    cur[0] = i;
    auto ib = std::begin(b);
    for (std::size_t j = 1; j <= m; ++j, ++ib) {
      const std::size_t sub = prev[j - 1] + (*ia == *ib ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

struct LevenshteinStats {
  std::size_t n_sampled = 0;
  double mean = 0;
  double median = 0;
  std::size_t min = 0;
  std::size_t max = 0;
};

// For a seeded sample of test lines (all of them when sample_size >= the test
// count), the distance to the nearest training line.
inline LevenshteinStats avg_min_levenshtein(std::span<const std::string> test, std::span<const std::string> train,
                                            std::size_t sample_size, std::uint64_t seed) {
  if (sample_size == 0) throw ConfigError("sample_size must be at least 1");
  LevenshteinStats stats;
  if (test.empty()) return stats;

  std::vector<std::size_t> idx(test.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  if (sample_size < idx.size()) {
    Rng rng(seed);
    // Partial Fisher-Yates: the first sample_size slots are a uniform sample.
    for (std::size_t i = 0; i < sample_size; ++i) std::swap(idx[i], idx[i + uniform_index(rng, idx.size() - i)]);
    idx.resize(sample_size);
    std::sort(idx.begin(), idx.end());
  }

  std::vector<TokenSeq> train_toks;
  train_toks.reserve(train.size());
  for (const auto& l : train) train_toks.push_back(split_tokens(l));

  std::vector<std::size_t> dists;
  dists.reserve(idx.size());
  for (std::size_t i : idx) {
    const TokenSeq t = split_tokens(test[i]);
    std::size_t best = SIZE_MAX;
    for (const auto& tr : train_toks) {
      const std::size_t gap = t.size() > tr.size() ? t.size() - tr.size() : tr.size() - t.size();
      if (gap >= best) continue;
      best = std::min(best, levenshtein(t, tr));
      if (best == 0) break;
    }
    // An empty training set leaves the test line's own length as its distance.
    dists.push_back(best == SIZE_MAX ? t.size() : best);
  }

  std::sort(dists.begin(), dists.end());
  double sum = 0;
  for (auto d : dists) sum += static_cast<double>(d);
  stats.n_sampled = dists.size();
  stats.mean = sum / static_cast<double>(dists.size());
  const std::size_t mid = dists.size() / 2;
  stats.median = dists.size() % 2 ? static_cast<double>(dists[mid])
                                   : (static_cast<double>(dists[mid - 1]) + static_cast<double>(dists[mid])) / 2.0;
  stats.min = dists.front();
  stats.max = dists.back();
  return stats;
}

namespace detail {

inline std::string normalized_line(const std::string& line) { return join_tokens(split_tokens(line)); }

inline Term parse_line(const std::string& line, const Syntax& syntax, std::size_t lineno, const char* which) {
  try {
    return parse_term(line, syntax);
  } catch (const SyntaxError& e) {
    throw SyntaxError(std::string(which) + " line " + std::to_string(lineno) + ": " + e.what(), e.position, lineno);
  }
}

// For each test line: true iff it equals some training line modulo variable
// renaming but is not verbatim in the training set. Unparseable test lines
// throw when `strict`, else count as not renamed.
inline std::vector<bool> renamed_flags(std::span<const std::string> train, std::span<const std::string> test,
                                       const Syntax& syntax, bool strict) {
  std::unordered_set<std::string> verbatim;
  std::unordered_set<Term, TermHash> shapes;
  for (std::size_t i = 0; i < train.size(); ++i) {
    verbatim.insert(normalized_line(train[i]));
    shapes.insert(alpha_canonical(parse_line(train[i], syntax, i + 1, "train"), syntax));
  }
  std::vector<bool> flags(test.size(), false);
  for (std::size_t i = 0; i < test.size(); ++i) {
    std::optional<Term> t;
    try {
      t = parse_line(test[i], syntax, i + 1, "test");
    } catch (const SyntaxError&) {
      if (strict) throw;
      continue;
    }
    flags[i] = !verbatim.contains(normalized_line(test[i])) && shapes.contains(alpha_canonical(*t, syntax));
  }
  return flags;
}

}  // namespace detail

// Fraction of test inputs that are a training input up to a consistent
// variable renaming without being verbatim copies.
inline double renamed_overlap(std::span<const std::string> train, std::span<const std::string> test, const Syntax& syntax) {
  if (test.empty()) return 0.0;
  const auto flags = detail::renamed_flags(train, test, syntax, true);
  return static_cast<double>(std::count(flags.begin(), flags.end(), true)) / static_cast<double>(test.size());
}

struct LeakageReport {
  std::size_t n_train = 0;
  std::size_t n_test = 0;
  std::size_t unique_mod_constant = 0;
  double unique_mod_constant_fraction = 0;
  std::optional<std::size_t> unique_mod_constant_and_sign;
  std::optional<double> unique_mod_constant_and_sign_fraction;
  std::optional<double> renamed_overlap_fraction;
  std::optional<LevenshteinStats> levenshtein;
};

struct LeakageOptions {
  bool with_sign = false;
  // Set to also measure renamed overlap (lines must parse in this syntax).
  std::optional<Syntax> renaming_syntax;
  // Nonzero to also sample nearest-training-line edit distances.
  std::size_t levenshtein_sample = 0;
  std::uint64_t seed = 0;
};

// A test line is unique iff its masked token sequence matches no masked
// training line. Lines are whitespace-tokenized.
inline LeakageReport leakage_report(std::span<const std::string> train, std::span<const std::string> test,
                                    const LeakageOptions& opts) {
  LeakageReport r;
  r.n_train = train.size();
  r.n_test = test.size();
  std::unordered_set<std::string> by_const, by_const_sign;
  for (const auto& l : train) {
    TokenSeq m = mask_constants(split_tokens(l));
    if (opts.with_sign) by_const_sign.insert(join_tokens(mask_signs(m)));
    by_const.insert(join_tokens(m));
  }
  std::size_t uniq = 0, uniq_sign = 0;
  for (const auto& l : test) {
    TokenSeq m = mask_constants(split_tokens(l));
    if (opts.with_sign && !by_const_sign.contains(join_tokens(mask_signs(m)))) ++uniq_sign;
    if (!by_const.contains(join_tokens(m))) ++uniq;
  }
  auto frac = [&](std::size_t k) { return test.empty() ? 0.0 : static_cast<double>(k) / static_cast<double>(test.size()); };
  r.unique_mod_constant = uniq;
  r.unique_mod_constant_fraction = frac(uniq);
  if (opts.with_sign) {
    r.unique_mod_constant_and_sign = uniq_sign;
    r.unique_mod_constant_and_sign_fraction = frac(uniq_sign);
  }
  if (opts.renaming_syntax) r.renamed_overlap_fraction = renamed_overlap(train, test, *opts.renaming_syntax);
  if (opts.levenshtein_sample) r.levenshtein = avg_min_levenshtein(test, train, opts.levenshtein_sample, opts.seed);
  return r;
}

inline LeakageReport leakage_report(std::span<const std::string> train, std::span<const std::string> test, bool with_sign) {
  LeakageOptions opts;
  opts.with_sign = with_sign;
  return leakage_report(train, test, opts);
}

struct EvalReport {
  std::size_t n_examples = 0;
  std::size_t n_correct = 0;
  std::size_t n_wrong = 0;
  double exact_match_accuracy = 0;
  // Subcategories of wrong outputs; fractions are of n_wrong, 0 when n_wrong == 0.
  std::size_t n_wrong_parsing = 0;
  double parse_rate_of_wrong = 0;
  std::size_t n_wrong_only_constants = 0;
  double wrong_only_constants_fraction = 0;
  std::size_t n_correct_mod_renaming = 0;
  double correct_mod_renaming_fraction = 0;
  // Test items whose source is a renamed copy of a training source.
  std::size_t n_renamed_excluded = 0;
  std::size_t n_kept = 0;
  double accuracy_excluding_renamed = 0;
  // 1-based line numbers of predictions that do not parse.
  std::vector<std::size_t> unparseable_lines;
};

// Tokens of a prediction/reference line: lexed in `syntax` when possible,
// otherwise split on whitespace. Makes `2*x+1` and `2 * x + 1` compare equal.
inline TokenSeq line_tokens(const std::string& line, const Syntax& syntax) {
  try {
    return tokenize(line, syntax);
  } catch (const SyntaxError&) {
    return split_tokens(line);
  }
}

inline EvalReport score_predictions(std::span<const std::string> pred, std::span<const std::string> ref,
                                    std::span<const std::string> src, const Syntax& syntax,
                                    std::optional<std::span<const std::string>> train_src = std::nullopt) {
  if (pred.size() != ref.size() || pred.size() != src.size()) {
    throw AlignmentError("line counts differ: pred " + std::to_string(pred.size()) + ", ref " + std::to_string(ref.size()) +
                         ", src " + std::to_string(src.size()));
  }
  EvalReport r;
  r.n_examples = pred.size();
  std::vector<bool> correct(pred.size(), false);
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const TokenSeq p = line_tokens(pred[i], syntax);
    const TokenSeq g = line_tokens(ref[i], syntax);
    if (p == g) {
      correct[i] = true;
      ++r.n_correct;
      continue;
    }
    std::optional<Term> pt;
    try {
      pt = parse_term(pred[i], syntax);
    } catch (const SyntaxError&) {
      r.unparseable_lines.push_back(i + 1);
      continue;
    }
    ++r.n_wrong_parsing;
    if (mask_constants(p) == mask_constants(g)) ++r.n_wrong_only_constants;
    try {
      const Term gt = parse_term(ref[i], syntax);
      if (alpha_canonical(*pt, syntax) == alpha_canonical(gt, syntax)) ++r.n_correct_mod_renaming;
    } catch (const Error&) {
      // Unparseable reference or too many variables: not a renaming match.
    }
  }
  r.n_wrong = r.n_examples - r.n_correct;
  auto frac = [](std::size_t k, std::size_t n) { return n ? static_cast<double>(k) / static_cast<double>(n) : 0.0; };
  r.exact_match_accuracy = frac(r.n_correct, r.n_examples);
  r.parse_rate_of_wrong = frac(r.n_wrong_parsing, r.n_wrong);
  r.wrong_only_constants_fraction = frac(r.n_wrong_only_constants, r.n_wrong);
  r.correct_mod_renaming_fraction = frac(r.n_correct_mod_renaming, r.n_wrong);

  std::vector<bool> renamed(src.size(), false);
  if (train_src) renamed = detail::renamed_flags(*train_src, src, syntax, false);
  std::size_t kept_correct = 0;
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (renamed[i]) {
      ++r.n_renamed_excluded;
      continue;
    }
    ++r.n_kept;
    if (correct[i]) ++kept_correct;
  }
  r.accuracy_excluding_renamed = frac(kept_correct, r.n_kept);
  return r;
}

}  // namespace symrw
