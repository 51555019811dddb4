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

#include <gtest/gtest.h>

#include "support.hpp"

namespace pronaudit {
namespace {

constexpr auto M = GenderCategory::Masculine;
constexpr auto F = GenderCategory::Feminine;
constexpr auto A = GenderCategory::Ambiguous;

TEST(CategorySet, IndexAndLabels) {
  CategorySet s;
  EXPECT_EQ(s.index(), 0u);
  EXPECT_EQ(s.label(), "None");
  s.insert(M);
  s.insert(F);
  s.insert(A);
  EXPECT_EQ(s.index(), 7u);
  EXPECT_EQ(s.label(), "FMA");
  const std::array<std::string_view, 8> want = {"None", "A", "F", "FA", "M", "MA", "FM", "FMA"};
  for (std::size_t i = 0; i < 8; ++i) {
    EXPECT_EQ(CategorySet::from_index(i).label(), want[i]);
    EXPECT_EQ(CategorySet::from_label(want[i])->index(), i);
  }
  EXPECT_FALSE(CategorySet::from_label("AF").has_value());
}

TEST(CategorySet, Membership) {
  const CategorySet s = CategorySet::from_index(5);  // MA
  EXPECT_TRUE(s.contains(M));
  EXPECT_TRUE(s.contains(A));
  EXPECT_FALSE(s.contains(F));
}

TEST(CategorySet, FromOccurrences) {
  const std::vector<PronounOccurrence> occ = {{"he", "he", M, 0, 2, false}, {"he", "he", M, 5, 7, false},
                                              {"it", "it", A, 9, 11, false}};
  EXPECT_EQ(category_set(occ).label(), "MA");
  EXPECT_EQ(category_set({}).label(), "None");
}

SentencePair make_pair(const std::string& en, const std::string& ja) {
  return SentencePair{"1-2", Sentence{1, "eng", en}, Sentence{2, "jpn", ja}};
}

TEST(ClassifyPair, SharedFeminineAmbiguous) {
  const auto c = classify_pair(make_pair("She saw them.", "彼女はあいつを見た。"), builtin_lexicon("eng"),
                               builtin_lexicon("jpn"));
  EXPECT_EQ(c.en_set.label(), "FA");
  EXPECT_EQ(c.ja_set.label(), "FA");
  EXPECT_EQ(c.pair_id, "1-2");
}

TEST(ClassifyPair, Line51Mismatch) {
  const auto c = classify_pair(make_pair("The last person I told my idea to thought I was nuts.",
                                         "僕が最後に自分の考えを伝えた人は、僕を気遣いだと思ったようだ。"),
                               builtin_lexicon("eng"), builtin_lexicon("jpn"));
  EXPECT_EQ(c.en_set.label(), "A");
  EXPECT_EQ(c.ja_set.label(), "M");
  EXPECT_EQ(c.en_occurrences.size(), 3u);
  EXPECT_EQ(c.ja_occurrences.size(), 2u);
}

TEST(ClassifyPair, NoPronouns) {
  const auto c = classify_pair(make_pair("Rain fell.", "雨が降った。"), builtin_lexicon("eng"),
                               builtin_lexicon("jpn"));
  EXPECT_EQ(c.en_set.index(), 0u);
  EXPECT_EQ(c.ja_set.index(), 0u);
}

}  // namespace
}  // namespace pronaudit
