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

class RewriterTest : public ::testing::Test {
 protected:
  static SentencePair make_pair(const std::string& en, const std::string& ja, const std::string& id = "1-2") {
    return SentencePair{id, Sentence{1, "eng", en}, Sentence{2, "jpn", ja}};
  }
  static std::vector<PlaceholderSuggestion> accept_all(std::vector<PlaceholderSuggestion> s) {
    for (auto& x : s) x.status = SuggestionStatus::Accepted;
    return s;
  }

  const Lexicon en = builtin_lexicon("eng");
  const Lexicon ja = builtin_lexicon("jpn");
};

TEST_F(RewriterTest, SuggestsSharedIndexWithRoles) {
  const auto s = suggest(make_pair("He said his idea.", "彼は自分の考えを言った。"), en, ja);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(render_placeholder(s[0].token), "[p1:subj]");
  EXPECT_EQ(render_placeholder(s[1].token), "[p1:poss]");
  EXPECT_EQ(s[0].paradigm_id, "he");
  EXPECT_EQ(s[0].suggestion_id, "1-2:eng:0-2");
  EXPECT_EQ(s[2].language, "jpn");
  EXPECT_EQ(s[2].paradigm_id, "彼");
  EXPECT_EQ(render_placeholder(s[2].token), "[p2]");
  for (const auto& x : s) EXPECT_EQ(x.status, SuggestionStatus::Pending);
}

TEST_F(RewriterTest, ApplyThenExpand) {
  const auto pair = make_pair("He said his idea.", "彼は自分の考えを言った。");
  const auto templated = pronaudit::apply(pair, accept_all(suggest(pair, en, ja)));
  EXPECT_EQ(templated.pair.source.text, "[p1:subj] said [p1:poss] idea.");
  EXPECT_EQ(templated.pair.target.text, "[p2]は自分の考えを言った。");
  EXPECT_EQ(templated.applied.size(), 3u);

  const auto they = expand(templated.pair, {{1, {"they", std::nullopt}}, {2, {std::nullopt, "あの人"}}});
  EXPECT_EQ(they.pair.source.text, "They said their idea.");
  EXPECT_EQ(they.pair.target.text, "あの人は自分の考えを言った。");
  const auto he = expand(templated.pair, {{1, {"he", std::nullopt}}, {2, {std::nullopt, "彼"}}});
  EXPECT_EQ(he.pair.source.text, "He said his idea.");
}

TEST_F(RewriterTest, GenderedScopeSkipsAmbiguousOutsideParadigms) {
  const auto s = suggest(make_pair("I told you about it.", "私はあなたにそれを話した。"), en, ja);
  EXPECT_TRUE(s.empty());
  const auto all = suggest(make_pair("I told you about it.", "私はあなたにそれを話した。"), en, ja, Scope::AllPronouns);
  EXPECT_EQ(all.size(), 6u);
  for (const auto& x : all) EXPECT_TRUE(x.paradigm_id.empty());
  EXPECT_FALSE(all[0].token.role.has_value());
}

TEST_F(RewriterTest, TheyIsInScopeThroughItsParadigm) {
  const auto s = suggest(make_pair("They left.", "雨。"), en, ja);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].paradigm_id, "they");
}

TEST_F(RewriterTest, CliticIsFlagged) {
  const auto pair = make_pair("He's crazy.", "夢中だ。");
  const auto s = accept_all(suggest(pair, en, ja));
  ASSERT_EQ(s.size(), 1u);
  EXPECT_TRUE(s[0].agreement_risk);
  const auto templated = pronaudit::apply(pair, s);
  EXPECT_EQ(templated.pair.source.text, "[p1:subj]'s crazy.");
  EXPECT_EQ(templated.agreement_risk, std::vector<std::string>{s[0].suggestion_id});
  const auto they = expand(templated.pair, {{1, {"they", std::nullopt}}});
  EXPECT_EQ(they.pair.source.text, "They's crazy.");
  EXPECT_EQ(they.agreement_flags, std::vector<std::string>{"[p1:subj]"});
}

TEST_F(RewriterTest, RejectedAndPendingStayVerbatim) {
  const auto pair = make_pair("She saw him.", "彼女は彼を見た。");
  auto s = suggest(pair, en, ja);
  ASSERT_EQ(s.size(), 4u);
  s[0].status = SuggestionStatus::Accepted;
  s[1].status = SuggestionStatus::Rejected;
  s[2].status = SuggestionStatus::Edited;
  s[2].edited_text = "[p9]";
  const auto t = pronaudit::apply(pair, s);
  EXPECT_EQ(t.pair.source.text, "[p1:subj] saw him.");
  EXPECT_EQ(t.pair.target.text, "[p9]は彼を見た。");
}

TEST_F(RewriterTest, DecisionsLastWriterWins) {
  const auto pair = make_pair("She saw him.", "彼女は彼を見た。");
  const auto s = suggest(pair, en, ja);
  const std::vector<ReviewDecision> d = {{s[0].suggestion_id, DecisionAction::Accept, std::nullopt, "a", "t"},
                                         {s[0].suggestion_id, DecisionAction::Reject, std::nullopt, "b", "t"},
                                         {s[1].suggestion_id, DecisionAction::Accept, std::nullopt, "a", "t"},
                                         {"nope", DecisionAction::Accept, std::nullopt, "a", "t"}};
  const auto t = pronaudit::apply(pair, s, d);
  EXPECT_EQ(t.pair.source.text, "She saw [p2:obj].");
}

TEST_F(RewriterTest, ApplyErrors) {
  const auto pair = make_pair("He ran.", "彼は走った。");
  auto s = accept_all(suggest(pair, en, ja));
  auto overlapping = s;
  overlapping.push_back(s[0]);
  overlapping.back().suggestion_id = "dup";
  overlapping.back().start = 1;
  EXPECT_THROW(pronaudit::apply(pair, overlapping), RewriteError);
  auto outside = s;
  outside[0].end = 99;
  EXPECT_THROW(pronaudit::apply(pair, outside), RewriteError);
  auto foreign = s;
  foreign[0].pair_id = "other";
  EXPECT_THROW(pronaudit::apply(pair, foreign), RewriteError);
}

TEST_F(RewriterTest, ExpandErrors) {
  const auto pair = make_pair("[p1:subj] ran.", "[p1]は走った。");
  EXPECT_THROW(expand(pair, {}), RewriteError);
  EXPECT_THROW(expand(pair, {{1, {"nobody", "彼"}}}), RewriteError);
  EXPECT_THROW(expand(pair, {{1, {"彼", "彼"}}}), RewriteError);  // wrong language
  EXPECT_THROW(expand(make_pair("[p1:subj:neo] ran.", "x"), {{1, {"he", std::nullopt}}}), RewriteError);
  EXPECT_THROW(expand(make_pair("[p1:bad] ran.", "x"), {{1, {"he", std::nullopt}}}), RewriteError);
  EXPECT_THROW(expand(make_pair("[p1 ran.", "x"), {{1, {"he", std::nullopt}}}), RewriteError);
}

TEST_F(RewriterTest, ExpandHonorsListConstraint) {
  ParadigmRegistry reg = builtin_paradigms();
  load_paradigms("xe\teng\tA\txe,xem,xyr,xemself\tneo\n", reg);
  const auto out = expand(make_pair("Ask [p1:obj:neo] now.", "x"), {{1, {"xe", std::nullopt}}}, reg);
  EXPECT_EQ(out.pair.source.text, "Ask xem now.");
}

TEST_F(RewriterTest, ExpandCapitalizesAfterSentenceEnd) {
  const auto out = expand(make_pair("Stop. [p1] ran. \"[p1:poss] dog\"", "x"), {{1, {"she", std::nullopt}}});
  EXPECT_EQ(out.pair.source.text, "Stop. She ran. \"Her dog\"");
}

TEST_F(RewriterTest, ValidatesReplacements) {
  EXPECT_NO_THROW(validate_replacement("[p2:obj]"));
  EXPECT_NO_THROW(validate_replacement("someone"));
  EXPECT_THROW(validate_replacement("[p0]"), ValidationError);
  EXPECT_THROW(validate_replacement("x [p1] y"), ValidationError);
  EXPECT_THROW(validate_replacement(""), ValidationError);
  EXPECT_THROW(validate_replacement("a\tb"), ValidationError);
  EXPECT_THROW(validate_decision({"id", DecisionAction::Edit, std::nullopt, "r", "t"}), ValidationError);
  EXPECT_THROW(validate_decision({"id", DecisionAction::Accept, "x", "r", "t"}), ValidationError);
}

TEST_F(RewriterTest, DecisionJsonIsStrict) {
  const ReviewDecision d{"1-2:eng:0-2", DecisionAction::Edit, "[p1]", "kim", "2026-01-01T00:00:00Z"};
  EXPECT_EQ(decision_from_json(decision_to_json(d)), d);
  auto extra = decision_to_json(d);
  extra["note"] = "x";
  EXPECT_THROW(decision_from_json(extra), ValidationError);
  auto missing = decision_to_json(d);
  missing.erase("reviewer");
  EXPECT_THROW(decision_from_json(missing), ValidationError);
  auto bad_action = decision_to_json(d);
  bad_action["action"] = "approve";
  EXPECT_THROW(decision_from_json(bad_action), ValidationError);
}

TEST_F(RewriterTest, RoundtripOnSimplePairs) {
  for (const auto& p : {make_pair("He said his idea.", "彼は自分の考えを言った。"),
                        make_pair("She's a teacher.", "彼女は先生です。"),
                        make_pair("I saw her with him.", "私は彼女が彼と一緒にいるのを見た。")}) {
    const auto r = roundtrip_check(p, en, ja);
    EXPECT_TRUE(r.pass) << p.source.text << ": " << (r.differences.empty() ? "" : r.differences[0]);
    EXPECT_EQ(r.expanded_source.find("[p"), std::string::npos);
  }
}

TEST_F(RewriterTest, RoundtripExcludesOutOfParadigm) {
  const auto r = roundtrip_check(make_pair("Xe saw me.", "私は見た。"), en, ja);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.out_of_paradigm.size(), 3u);
}

}  // namespace
}  // namespace pronaudit
