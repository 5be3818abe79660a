#pragma once

// Train/valid/test splits stored as line-aligned `.src`/`.tgt` files plus a
// JSON manifest, the layout sequence-to-sequence trainers consume.

#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "symrw/errors.hpp"
#include "symrw/example.hpp"
#include "symrw/random.hpp"

namespace symrw {

inline constexpr const char* kToolVersion = "symrw 0.1.0";
inline constexpr std::array<const char*, 3> kPartNames{"train", "valid", "test"};

using Ratios = std::array<double, 3>;
inline constexpr Ratios kDefaultRatios{0.6, 0.1, 0.3};

struct Manifest {
  std::array<std::size_t, 3> counts{};
  Ratios ratios = kDefaultRatios;
  std::uint64_t seed = 0;
  std::string source;
  std::string digest;
  // Producing tool; deliberately not a timestamp so output is reproducible.
  std::string created = kToolVersion;

  friend bool operator==(const Manifest&, const Manifest&) = default;
};

inline void to_json(nlohmann::json& j, const Manifest& m) {
  j = nlohmann::json{{"counts", {{"train", m.counts[0]}, {"valid", m.counts[1]}, {"test", m.counts[2]}}},
                     {"ratios", m.ratios},
                     {"seed", m.seed},
                     {"source", m.source},
                     {"digest", m.digest},
                     {"created", m.created}};
}

inline void from_json(const nlohmann::json& j, Manifest& m) {
  const auto& c = j.at("counts");
  m.counts = {c.at("train").get<std::size_t>(), c.at("valid").get<std::size_t>(), c.at("test").get<std::size_t>()};
  m.ratios = j.at("ratios").get<Ratios>();
  m.seed = j.at("seed").get<std::uint64_t>();
  m.source = j.at("source").get<std::string>();
  m.digest = j.value("digest", std::string{});
  m.created = j.value("created", std::string{});
}

struct DatasetSplit {
  std::vector<ExamplePair> train;
  std::vector<ExamplePair> valid;
  std::vector<ExamplePair> test;
  Manifest manifest;

  std::vector<ExamplePair>& part(std::size_t i) { return i == 0 ? train : i == 1 ? valid : test; }
  const std::vector<ExamplePair>& part(std::size_t i) const { return i == 0 ? train : i == 1 ? valid : test; }
  std::size_t size() const { return train.size() + valid.size() + test.size(); }

  friend bool operator==(const DatasetSplit&, const DatasetSplit&) = default;
};

inline void validate_ratios(const Ratios& ratios) {
  double sum = 0;
  for (double r : ratios) {
    if (!(r > 0)) throw ConfigError("split ratios must be positive");
    sum += r;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw ConfigError("split ratios must sum to 1");
}

// Part sizes: floor(ratio * n) each, leftovers handed out train, valid, test.
inline std::array<std::size_t, 3> split_sizes(std::size_t n, const Ratios& ratios) {
  std::array<std::size_t, 3> sizes{};
  std::size_t used = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    sizes[i] = static_cast<std::size_t>(std::floor(ratios[i] * static_cast<double>(n) + 1e-9));
    used += sizes[i];
  }
  for (std::size_t i = 0; used < n; i = (i + 1) % 3, ++used) ++sizes[i];
  return sizes;
}

// Seeded shuffle, then contiguous partition.
inline DatasetSplit split(std::vector<ExamplePair> pairs, const Ratios& ratios, std::uint64_t seed, std::string source = {},
                          std::string digest = {}) {
  validate_ratios(ratios);
  if (pairs.empty()) throw EmptyInput("nothing to split");
  Rng rng(seed);
  shuffle(pairs, rng);
  const auto sizes = split_sizes(pairs.size(), ratios);
  DatasetSplit out;
  auto it = pairs.begin();
  for (std::size_t i = 0; i < 3; ++i) {
    auto end = it + static_cast<std::ptrdiff_t>(sizes[i]);
    out.part(i).assign(std::make_move_iterator(it), std::make_move_iterator(end));
    it = end;
  }
  out.manifest = Manifest{sizes, ratios, seed, std::move(source), std::move(digest), kToolVersion};
  return out;
}

namespace detail {

inline void write_lines(const std::filesystem::path& path, const std::vector<ExamplePair>& pairs, bool target) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  for (const auto& p : pairs) out << join_tokens(target ? p.tgt : p.src) << '\n';
  if (!out) throw IoError("write failed for " + path.string());
}

inline std::vector<TokenSeq> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::vector<TokenSeq> lines;
  std::string line;
  while (std::getline(in, line)) {
    auto toks = split_tokens(line);
    if (toks.empty()) throw FormatError(path.string() + ":" + std::to_string(lines.size() + 1) + ": empty example");
    lines.push_back(std::move(toks));
  }
  return lines;
}

}  // namespace detail

inline void write_dataset(const DatasetSplit& split, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  for (std::size_t i = 0; i < 3; ++i) {
    detail::write_lines(dir / (std::string(kPartNames[i]) + ".src"), split.part(i), false);
    detail::write_lines(dir / (std::string(kPartNames[i]) + ".tgt"), split.part(i), true);
  }
  std::ofstream m(dir / "manifest.json", std::ios::binary);
  if (!m) throw IoError("cannot write manifest in " + dir.string());
  m << nlohmann::json(split.manifest).dump(2) << '\n';
}

inline DatasetSplit read_dataset(const std::filesystem::path& dir) {
  DatasetSplit out;
  for (std::size_t i = 0; i < 3; ++i) {
    const std::string stem = kPartNames[i];
    auto src = detail::read_lines(dir / (stem + ".src"));
    auto tgt = detail::read_lines(dir / (stem + ".tgt"));
    if (src.size() != tgt.size()) {
      throw AlignmentError(stem + ": " + std::to_string(src.size()) + " source lines vs " + std::to_string(tgt.size()) +
                           " target lines");
    }
    auto& part = out.part(i);
    part.reserve(src.size());
    for (std::size_t k = 0; k < src.size(); ++k) part.push_back({std::move(src[k]), std::move(tgt[k])});
  }
  std::ifstream m(dir / "manifest.json");
  if (!m) throw IoError("missing manifest.json in " + dir.string());
  try {
    out.manifest = nlohmann::json::parse(m).get<Manifest>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("bad manifest in " + dir.string() + ": " + e.what());
  }
  return out;
}

// Part-preserving concatenation: trains with trains, tests with tests, so no
// example changes part.
inline DatasetSplit union_datasets(const std::vector<std::pair<std::string, DatasetSplit>>& named) {
  DatasetSplit out;
  if (named.size() == 1) return named.front().second;
  std::string source;
  for (const auto& [name, s] : named) {
    for (std::size_t i = 0; i < 3; ++i) {
      out.part(i).insert(out.part(i).end(), s.part(i).begin(), s.part(i).end());
    }
    if (!source.empty()) source += '+';
    source += name;
  }
  for (std::size_t i = 0; i < 3; ++i) out.manifest.counts[i] = out.part(i).size();
  if (!named.empty()) {
    out.manifest.ratios = named.front().second.manifest.ratios;
    out.manifest.seed = named.front().second.manifest.seed;
  }
  out.manifest.source = "union:" + source;
  return out;
}

}  // namespace symrw
