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

// Placeholder rewriting: propose `[p]` substitutions for located pronouns,
// apply reviewed decisions to produce templated pairs, and expand templates
// back into concrete sentences from paradigms.

#pragma once

#include <algorithm>
#include <chrono>
#include <ctime>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "json.hpp"

#include "pronaudit/classifier.hpp"
#include "pronaudit/corpus.hpp"
#include "pronaudit/error.hpp"
#include "pronaudit/lexicon.hpp"
#include "pronaudit/placeholder.hpp"
#include "pronaudit/tokenizer.hpp"
#include "pronaudit/unicode.hpp"

namespace pronaudit {

enum class Scope { GenderedOnly, AllPronouns };

inline std::optional<Scope> scope_from_name(std::string_view s) {
  if (s == "gendered-only" || s == "gendered") return Scope::GenderedOnly;
  if (s == "all-pronouns" || s == "all") return Scope::AllPronouns;
  return std::nullopt;
}

enum class SuggestionStatus { Pending, Accepted, Rejected, Edited };

inline std::string_view status_name(SuggestionStatus s) {
  switch (s) {
    case SuggestionStatus::Pending: return "pending";
    case SuggestionStatus::Accepted: return "accepted";
    case SuggestionStatus::Rejected: return "rejected";
    case SuggestionStatus::Edited: return "edited";
  }
  return "?";
}

inline std::optional<SuggestionStatus> status_from_name(std::string_view s) {
  for (auto st : {SuggestionStatus::Pending, SuggestionStatus::Accepted, SuggestionStatus::Rejected,
                  SuggestionStatus::Edited})
    if (status_name(st) == s) return st;
  return std::nullopt;
}

struct PlaceholderSuggestion {
  std::string suggestion_id;
  std::string pair_id;
  std::string language;
  std::size_t start = 0;
  std::size_t end = 0;
  std::string original_surface;
  GenderCategory category = GenderCategory::Ambiguous;
  PlaceholderToken token;
  std::string paradigm_id;  // empty when the surface belongs to no paradigm
  bool agreement_risk = false;
  SuggestionStatus status = SuggestionStatus::Pending;
  std::optional<std::string> edited_text;

  friend bool operator==(const PlaceholderSuggestion&, const PlaceholderSuggestion&) = default;
};

inline std::string make_suggestion_id(std::string_view pair_id, std::string_view language,
                                      std::size_t start, std::size_t end) {
  return std::string(pair_id) + ":" + std::string(language) + ":" + std::to_string(start) + "-" +
         std::to_string(end);
}

// One suggestion per in-scope occurrence, source side first, each side in span
// order. Occurrences of one paradigm on one side share a placeholder index;
// indices ascend in order of first appearance.
inline std::vector<PlaceholderSuggestion> suggest(const SentencePair& pair, const Lexicon& en_lexicon,
                                                  const Lexicon& ja_lexicon, Scope scope = Scope::GenderedOnly,
                                                  const ParadigmRegistry& paradigms = builtin_paradigms()) {
  std::vector<PlaceholderSuggestion> out;
  std::map<std::string, uint32_t> index_of_group;
  const auto side = [&](const Sentence& sentence, const Lexicon& lexicon) {
    const auto occurrences = extract_pronouns(sentence.text, lexicon);
    for (const auto& o : occurrences) {
      const ParadigmMatch pm = paradigms.match(sentence.language, o.surface);
      const bool gendered = o.category != GenderCategory::Ambiguous;
      const bool english_paradigm = pm.paradigm != nullptr && pm.paradigm->is_english();
      if (scope == Scope::GenderedOnly && !gendered && !english_paradigm) continue;

      std::string group = sentence.language + "\t";
      group += pm.paradigm != nullptr ? "paradigm\t" + pm.paradigm->id
                                      : "surface\t" + o.lexicon_surface;
      const auto [it, inserted] =
          index_of_group.emplace(group, static_cast<uint32_t>(index_of_group.size() + 1));

      PlaceholderSuggestion s;
      s.suggestion_id = make_suggestion_id(pair.pair_id, sentence.language, o.start, o.end);
      s.pair_id = pair.pair_id;
      s.language = sentence.language;
      s.start = o.start;
      s.end = o.end;
      s.original_surface = o.surface;
      s.category = o.category;
      s.token.index = it->second;
      if (lexicon.is_english() && pm.paradigm != nullptr) s.token.role = pm.role;
      s.paradigm_id = pm.paradigm != nullptr ? pm.paradigm->id : "";
      s.agreement_risk = o.clitic_split;
      out.push_back(std::move(s));
    }
  };
  side(pair.source, en_lexicon);
  side(pair.target, ja_lexicon);
  return out;
}

enum class DecisionAction { Accept, Reject, Edit };

inline std::string_view action_name(DecisionAction a) {
  switch (a) {
    case DecisionAction::Accept: return "accept";
    case DecisionAction::Reject: return "reject";
    case DecisionAction::Edit: return "edit";
  }
  return "?";
}

inline std::optional<DecisionAction> action_from_name(std::string_view s) {
  if (s == "accept") return DecisionAction::Accept;
  if (s == "reject") return DecisionAction::Reject;
  if (s == "edit") return DecisionAction::Edit;
  return std::nullopt;
}

struct ReviewDecision {
  std::string suggestion_id;
  DecisionAction action = DecisionAction::Accept;
  std::optional<std::string> replacement;
  std::string reviewer;
  std::string timestamp;  // ISO 8601 UTC

  friend bool operator==(const ReviewDecision&, const ReviewDecision&) = default;
};

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Replacement text is either a placeholder token or plain text that does not
// itself contain "[p". Throws ValidationError.
inline void validate_replacement(std::string_view text) {
  if (text.empty()) throw ValidationError("replacement must not be empty");
  if (text.find_first_of("\t\r\n") != std::string_view::npos)
    throw ValidationError("replacement must not contain tabs or line breaks");
  unicode::validate_utf8(text);
  if (text.find("[p") != std::string_view::npos && !parse_placeholder(text))
    throw ValidationError("malformed placeholder '" + std::string(text) + "'");
}

inline void validate_decision(const ReviewDecision& d) {
  if (d.suggestion_id.empty()) throw ValidationError("decision lacks a suggestion_id");
  if (d.action == DecisionAction::Edit) {
    if (!d.replacement) throw ValidationError("edit requires a replacement");
    validate_replacement(*d.replacement);
  } else if (d.replacement) {
    throw ValidationError("only edit decisions carry a replacement");
  }
}

inline nlohmann::ordered_json decision_to_json(const ReviewDecision& d) {
  nlohmann::ordered_json j;
  j["suggestion_id"] = d.suggestion_id;
  j["action"] = std::string(action_name(d.action));
  j["replacement"] = d.replacement ? nlohmann::ordered_json(*d.replacement) : nlohmann::ordered_json(nullptr);
  j["reviewer"] = d.reviewer;
  j["timestamp"] = d.timestamp;
  return j;
}

// Strict: exactly the five decision fields, correctly typed.
inline ReviewDecision decision_from_json(const nlohmann::ordered_json& j) {
  if (!j.is_object()) throw ValidationError("decision must be a JSON object");
  static constexpr std::array<std::string_view, 5> kFields = {"suggestion_id", "action", "replacement",
                                                              "reviewer", "timestamp"};
  for (const auto& [key, value] : j.items())
    if (std::find(kFields.begin(), kFields.end(), key) == kFields.end())
      throw ValidationError("unexpected decision field '" + key + "'");
  for (auto key : kFields)
    if (!j.contains(key)) throw ValidationError("decision lacks field '" + std::string(key) + "'");
  if (!j["suggestion_id"].is_string() || !j["action"].is_string() || !j["reviewer"].is_string() ||
      !j["timestamp"].is_string() || !(j["replacement"].is_string() || j["replacement"].is_null()))
    throw ValidationError("decision field has the wrong type");
  ReviewDecision d;
  d.suggestion_id = j["suggestion_id"].get<std::string>();
  const auto action = action_from_name(j["action"].get<std::string>());
  if (!action) throw ValidationError("unknown action '" + j["action"].get<std::string>() + "'");
  d.action = *action;
  if (j["replacement"].is_string()) d.replacement = j["replacement"].get<std::string>();
  d.reviewer = j["reviewer"].get<std::string>();
  d.timestamp = j["timestamp"].get<std::string>();
  validate_decision(d);
  return d;
}

// Applies one decision to a suggestion's status. Returns false when the
// decision would not change anything.
inline bool apply_decision(PlaceholderSuggestion& s, const ReviewDecision& d) {
  SuggestionStatus status = SuggestionStatus::Pending;
  std::optional<std::string> edited;
  switch (d.action) {
    case DecisionAction::Accept: status = SuggestionStatus::Accepted; break;
    case DecisionAction::Reject: status = SuggestionStatus::Rejected; break;
    case DecisionAction::Edit:
      status = SuggestionStatus::Edited;
      edited = d.replacement;
      break;
  }
  if (s.status == status && s.edited_text == edited) return false;
  s.status = status;
  s.edited_text = std::move(edited);
  return true;
}

// Last writer wins per suggestion id. Decisions naming other suggestions are
// ignored.
inline void resolve_decisions(std::vector<PlaceholderSuggestion>& suggestions,
                              const std::vector<ReviewDecision>& decisions) {
  std::unordered_map<std::string, PlaceholderSuggestion*> by_id;
  for (auto& s : suggestions) by_id.emplace(s.suggestion_id, &s);
  for (const auto& d : decisions)
    if (auto it = by_id.find(d.suggestion_id); it != by_id.end()) apply_decision(*it->second, d);
}

struct TemplatedPair {
  SentencePair pair;
  std::vector<std::string> applied;         // suggestion ids, in suggestion order
  std::vector<std::string> agreement_risk;  // subset of applied
};

namespace detail {

struct Substitution {
  std::size_t start;
  std::size_t end;
  std::string text;
  std::string id;
};

inline std::string substitute(const std::string& text, std::vector<Substitution> subs) {
  std::u32string t = unicode::decode(text);
  std::sort(subs.begin(), subs.end(), [](const auto& a, const auto& b) { return a.start < b.start; });
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (subs[i].end > t.size() || subs[i].start > subs[i].end)
      throw RewriteError("suggestion " + subs[i].id + " span lies outside its sentence");
    if (i > 0 && subs[i - 1].end > subs[i].start)
      throw RewriteError("overlapping accepted spans: " + subs[i - 1].id + " and " + subs[i].id);
  }
  for (auto it = subs.rbegin(); it != subs.rend(); ++it)
    t.replace(it->start, it->end - it->start, unicode::decode(it->text));
  return unicode::encode(t);
}

}  // namespace detail

// Accepted and edited suggestions replace their spans; everything else stays.
inline TemplatedPair apply(const SentencePair& pair, const std::vector<PlaceholderSuggestion>& suggestions) {
  TemplatedPair out{pair, {}, {}};
  std::vector<detail::Substitution> src;
  std::vector<detail::Substitution> tgt;
  for (const auto& s : suggestions) {
    if (s.status != SuggestionStatus::Accepted && s.status != SuggestionStatus::Edited) continue;
    if (s.pair_id != pair.pair_id)
      throw RewriteError("suggestion " + s.suggestion_id + " does not belong to pair " + pair.pair_id);
    std::string text = s.status == SuggestionStatus::Edited ? s.edited_text.value_or("")
                                                            : render_placeholder(s.token);
    auto& bucket = s.language == pair.source.language ? src : tgt;
    if (s.language != pair.source.language && s.language != pair.target.language)
      throw RewriteError("suggestion " + s.suggestion_id + " names language " + s.language +
                         " absent from pair " + pair.pair_id);
    bucket.push_back({s.start, s.end, std::move(text), s.suggestion_id});
    out.applied.push_back(s.suggestion_id);
    if (s.agreement_risk) out.agreement_risk.push_back(s.suggestion_id);
  }
  out.pair.source.text = detail::substitute(pair.source.text, std::move(src));
  out.pair.target.text = detail::substitute(pair.target.text, std::move(tgt));
  return out;
}

inline TemplatedPair apply(const SentencePair& pair, std::vector<PlaceholderSuggestion> suggestions,
                           const std::vector<ReviewDecision>& decisions) {
  resolve_decisions(suggestions, decisions);
  return pronaudit::apply(pair, suggestions);
}

// Paradigm ids chosen for one placeholder index, per language side.
struct ParadigmChoice {
  std::optional<std::string> english;
  std::optional<std::string> japanese;
};

using Assignment = std::map<uint32_t, ParadigmChoice>;

struct ExpandedPair {
  SentencePair pair;
  // Rendered tokens whose expansion is followed by a clitic ("'s"); verb
  // agreement there is not repaired.
  std::vector<std::string> agreement_flags;
};

// True when nothing but spaces and opening quotes/brackets separates `pos`
// from the start of the text or from sentence-final punctuation.
inline bool sentence_initial(std::u32string_view text, std::size_t pos) {
  while (pos > 0) {
    const char32_t c = text[pos - 1];
    if (unicode::is_white_space(c) || c == U'"' || c == U'“' || c == U'‘' || c == U'(' ||
        c == U'[' || c == U'\'') {
      --pos;
      continue;
    }
    return c == U'.' || c == U'!' || c == U'?';
  }
  return true;
}

namespace detail {

inline std::string expand_side(const std::string& text, const std::string& language, const Assignment& assignment,
                               const ParadigmRegistry& paradigms, std::vector<std::string>& flags) {
  const bool english = language == "eng";
  const std::u32string t = unicode::decode(text);
  std::u32string out;
  std::size_t i = 0;
  while (i < t.size()) {
    if (!(t[i] == U'[' && i + 1 < t.size() && t[i + 1] == U'p')) {
      out.push_back(t[i++]);
      continue;
    }
    const std::size_t close = t.find(U']', i);
    const std::string raw =
        close == std::u32string::npos ? unicode::encode(t.substr(i)) : unicode::encode(t.substr(i, close - i + 1));
    const auto tok = close == std::u32string::npos ? std::nullopt : parse_placeholder(raw);
    if (!tok) throw RewriteError("malformed placeholder '" + raw + "' in " + language + " text");

    const auto choice = assignment.find(tok->index);
    const auto& paradigm_id = english ? (choice == assignment.end() ? std::nullopt : choice->second.english)
                                      : (choice == assignment.end() ? std::nullopt : choice->second.japanese);
    if (!paradigm_id)
      throw RewriteError("placeholder index " + std::to_string(tok->index) + " is unassigned for " + language);
    const Paradigm* p = paradigms.find(*paradigm_id);
    if (p == nullptr) throw RewriteError("unknown paradigm '" + *paradigm_id + "'");
    if (p->language != language)
      throw RewriteError("paradigm '" + p->id + "' is " + p->language + ", not " + language);
    if (tok->list_id && !p->satisfies(*tok->list_id))
      throw RewriteError("paradigm '" + p->id + "' is not in list '" + *tok->list_id + "' required by " + raw);

    std::u32string form;
    if (english) {
      const Role role = tok->role.value_or(Role::Subject);
      const auto f = p->form(role);
      if (!f) throw RewriteError("paradigm '" + p->id + "' has no " + std::string(role_name(role)) + " form");
      form = unicode::decode(*f);
      if (!form.empty() && sentence_initial(out, out.size())) form[0] = unicode::to_title(form[0]);
    } else {
      form = unicode::decode(p->base);
    }
    out += form;
    i = close + 1;
    if (i < t.size() && unicode::is_apostrophe(t[i])) flags.push_back(raw);
  }
  return unicode::encode(out);
}

}  // namespace detail

// Replaces every placeholder with its assigned paradigm's form for the
// token's role (subject when unspecified); sentence-initial English forms are
// capitalized.
inline ExpandedPair expand(const SentencePair& templated, const Assignment& assignment,
                           const ParadigmRegistry& paradigms = builtin_paradigms()) {
  ExpandedPair out{templated, {}};
  out.pair.source.text = detail::expand_side(templated.source.text, templated.source.language, assignment,
                                             paradigms, out.agreement_flags);
  out.pair.target.text = detail::expand_side(templated.target.text, templated.target.language, assignment,
                                             paradigms, out.agreement_flags);
  return out;
}

// Upper-cases the first letter at every sentence-initial position.
inline std::string normalize_sentence_initial(std::string_view text) {
  std::u32string t = unicode::decode(text);
  for (std::size_t i = 0; i < t.size(); ++i)
    if (unicode::is_letter(t[i]) && (i == 0 || !unicode::is_letter(t[i - 1])) && sentence_initial(t, i))
      t[i] = unicode::to_title(t[i]);
  return unicode::encode(t);
}

struct RoundtripResult {
  bool pass = true;
  std::string pair_id;
  std::vector<std::string> out_of_paradigm;  // suggestion ids excluded from the check
  std::string templated_source, templated_target;
  std::string expanded_source, expanded_target;
  std::vector<std::string> differences;
};

// suggest(all pronouns) -> accept every in-paradigm suggestion -> apply ->
// expand with each index's original paradigm; passes when the result equals
// the input up to sentence-initial capitalization.
inline RoundtripResult roundtrip_check(const SentencePair& pair, const Lexicon& en_lexicon,
                                       const Lexicon& ja_lexicon,
                                       const ParadigmRegistry& paradigms = builtin_paradigms()) {
  RoundtripResult r;
  r.pair_id = pair.pair_id;
  auto suggestions = suggest(pair, en_lexicon, ja_lexicon, Scope::AllPronouns, paradigms);
  Assignment assignment;
  for (auto& s : suggestions) {
    if (s.paradigm_id.empty()) {
      r.out_of_paradigm.push_back(s.suggestion_id);
      continue;
    }
    s.status = SuggestionStatus::Accepted;
    auto& choice = assignment[s.token.index];
    (s.language == pair.source.language ? choice.english : choice.japanese) = s.paradigm_id;
  }
  try {
    const TemplatedPair templated = pronaudit::apply(pair, suggestions);
    r.templated_source = templated.pair.source.text;
    r.templated_target = templated.pair.target.text;
    const ExpandedPair expanded = expand(templated.pair, assignment, paradigms);
    r.expanded_source = expanded.pair.source.text;
    r.expanded_target = expanded.pair.target.text;
  } catch (const RewriteError& e) {
    r.pass = false;
    r.differences.push_back(e.what());
    return r;
  }
  const auto compare = [&](const std::string& lang, const std::string& want, const std::string& got) {
    if (normalize_sentence_initial(want) != normalize_sentence_initial(got))
      r.differences.push_back(lang + ": expected \"" + want + "\", got \"" + got + "\"");
    if (got.find("[p") != std::string::npos) r.differences.push_back(lang + ": placeholder left unexpanded");
  };
  compare(pair.source.language, pair.source.text, r.expanded_source);
  compare(pair.target.language, pair.target.text, r.expanded_target);
  r.pass = r.differences.empty();
  return r;
}

inline nlohmann::ordered_json suggestion_to_json(const PlaceholderSuggestion& s) {
  nlohmann::ordered_json j;
  j["suggestion_id"] = s.suggestion_id;
  j["pair_id"] = s.pair_id;
  j["language"] = s.language;
  j["start"] = s.start;
  j["end"] = s.end;
  j["original_surface"] = s.original_surface;
  j["category"] = std::string(1, category_letter(s.category));
  j["proposed_token"] = render_placeholder(s.token);
  j["paradigm_id"] = s.paradigm_id.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(s.paradigm_id);
  j["agreement_risk"] = s.agreement_risk;
  j["status"] = std::string(status_name(s.status));
  j["edited_text"] = s.edited_text ? nlohmann::ordered_json(*s.edited_text) : nlohmann::ordered_json(nullptr);
  return j;
}

}  // namespace pronaudit
