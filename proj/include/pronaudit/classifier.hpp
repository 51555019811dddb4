/* Copyright 2026 The pronaudit Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pronaudit/corpus.hpp"
#include "pronaudit/lexicon.hpp"
#include "pronaudit/tokenizer.hpp"

namespace pronaudit {

// Subset of {M, F, A}; the empty set is the None class. The index is
// A*1 + F*2 + M*4, which yields the fixed order None, A, F, FA, M, MA, FM, FMA.
class CategorySet {
 public:
  static constexpr std::size_t kCount = 8;

  constexpr CategorySet() = default;

  static constexpr CategorySet from_index(std::size_t index) {
    CategorySet s;
    s.bits_ = static_cast<uint8_t>(index & 7u);
    return s;
  }

  static constexpr uint8_t bit(GenderCategory c) {
    switch (c) {
      case GenderCategory::Ambiguous: return 1;
      case GenderCategory::Feminine: return 2;
      case GenderCategory::Masculine: return 4;
    }
    return 0;
  }

  constexpr void insert(GenderCategory c) { bits_ |= bit(c); }
  constexpr bool contains(GenderCategory c) const { return (bits_ & bit(c)) != 0; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t index() const { return bits_; }

  std::string_view label() const { return labels()[bits_]; }

  static const std::array<std::string_view, kCount>& labels() {
    static constexpr std::array<std::string_view, kCount> kLabels = {"None", "A",  "F",  "FA",
                                                                      "M",    "MA", "FM", "FMA"};
    return kLabels;
  }

  static std::optional<CategorySet> from_label(std::string_view label) {
    for (std::size_t i = 0; i < kCount; ++i)
      if (labels()[i] == label) return from_index(i);
    return std::nullopt;
  }

  friend constexpr bool operator==(CategorySet, CategorySet) = default;

 private:
  uint8_t bits_ = 0;
};

inline CategorySet category_set(const std::vector<PronounOccurrence>& occurrences) {
  CategorySet set;
  for (const auto& o : occurrences) set.insert(o.category);
  return set;
}

struct PairClassification {
  std::string pair_id;
  CategorySet en_set;
  CategorySet ja_set;
  std::vector<PronounOccurrence> en_occurrences;
  std::vector<PronounOccurrence> ja_occurrences;
};

inline PairClassification classify_pair(const SentencePair& pair, const Lexicon& en_lexicon,
                                         const Lexicon& ja_lexicon) {
  PairClassification c;
  c.pair_id = pair.pair_id;
  c.en_occurrences = extract_pronouns(pair.source.text, en_lexicon);
  c.ja_occurrences = extract_pronouns(pair.target.text, ja_lexicon);
  c.en_set = category_set(c.en_occurrences);
  c.ja_set = category_set(c.ja_occurrences);
  return c;
}

}  // namespace pronaudit
