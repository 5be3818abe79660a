#pragma once

#include <compare>
#include <string>
#include <utility>
#include <vector>

#include "symrw/term.hpp"

namespace symrw {

// One aligned dataset line: source tokens and target tokens.
struct ExamplePair {
  TokenSeq src;
  TokenSeq tgt;

  friend bool operator==(const ExamplePair&, const ExamplePair&) = default;
  friend auto operator<=>(const ExamplePair&, const ExamplePair&) = default;
};

// Pairs sharing a provenance label (a rule name, a preset, "joint").
struct PairGroup {
  std::string name;
  std::vector<ExamplePair> pairs;
};

}  // namespace symrw
