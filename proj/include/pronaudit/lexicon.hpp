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

// Pronoun lexicons: surface form -> gender category, per language.

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pronaudit/corpus.hpp"
#include "pronaudit/digest.hpp"
#include "pronaudit/error.hpp"
#include "pronaudit/unicode.hpp"

namespace pronaudit {

// Declaration order is the serialization order.
enum class GenderCategory : uint8_t { Masculine = 0, Feminine = 1, Ambiguous = 2 };

inline constexpr std::array<GenderCategory, 3> kAllCategories = {
    GenderCategory::Masculine, GenderCategory::Feminine, GenderCategory::Ambiguous};

inline char category_letter(GenderCategory c) {
  switch (c) {
    case GenderCategory::Masculine: return 'M';
    case GenderCategory::Feminine: return 'F';
    case GenderCategory::Ambiguous: return 'A';
  }
  return '?';
}

inline std::string_view category_name(GenderCategory c) {
  switch (c) {
    case GenderCategory::Masculine: return "masculine";
    case GenderCategory::Feminine: return "feminine";
    case GenderCategory::Ambiguous: return "ambiguous";
  }
  return "?";
}

inline std::optional<GenderCategory> category_from_letter(std::string_view s) {
  if (s == "M") return GenderCategory::Masculine;
  if (s == "F") return GenderCategory::Feminine;
  if (s == "A") return GenderCategory::Ambiguous;
  return std::nullopt;
}

struct LexiconEntry {
  std::string surface;  // NFC
  GenderCategory category = GenderCategory::Ambiguous;

  friend bool operator==(const LexiconEntry&, const LexiconEntry&) = default;
  // (category, surface code points); UTF-8 byte order is code point order.
  friend bool operator<(const LexiconEntry& a, const LexiconEntry& b) {
    if (a.category != b.category) return a.category < b.category;
    return a.surface < b.surface;
  }
};

class Lexicon {
 public:
  Lexicon() = default;

  // Normalizes, deduplicates and validates. Throws InputError on an empty
  // surface, a surface containing a tab or line break, or a surface (or, for
  // English, a case-folded surface) listed under two categories.
  static Lexicon build(std::string language, std::vector<LexiconEntry> entries,
                       std::string source = "user") {
    if (!detail::valid_language_code(language))
      throw InputError("invalid lexicon language code '" + language + "'");
    Lexicon lex;
    lex.language_ = std::move(language);
    lex.source_ = std::move(source);
    for (auto& e : entries) {
      if (e.surface.empty()) throw InputError("empty lexicon surface");
      if (e.surface.find_first_of("\t\r\n") != std::string::npos)
        throw InputError("lexicon surface contains a tab or line break: " + e.surface);
      e.surface = unicode::nfc(std::string_view(e.surface));
    }
    std::sort(entries.begin(), entries.end());
    entries.erase(std::unique(entries.begin(), entries.end()), entries.end());

    std::unordered_map<std::string, GenderCategory> by_surface;
    for (const auto& e : entries) {
      auto [it, inserted] = by_surface.emplace(e.surface, e.category);
      if (!inserted && it->second != e.category)
        throw InputError("conflicting categories for lexicon surface '" + e.surface + "'");
    }
    for (std::size_t i = 0; i < entries.size(); ++i) {
      std::u32string key = lex.match_key(unicode::decode(entries[i].surface));
      lex.max_surface_length_ =
          std::max(lex.max_surface_length_, unicode::decode(entries[i].surface).size());
      auto [it, inserted] = lex.index_.emplace(std::move(key), i);
      if (!inserted && entries[it->second].category != entries[i].category)
        throw InputError("conflicting categories for lexicon surface '" + entries[i].surface +
                         "' (case-insensitive match with '" + entries[it->second].surface + "')");
    }
    lex.entries_ = std::move(entries);
    return lex;
  }

  const std::string& language() const { return language_; }
  const std::vector<LexiconEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::size_t max_surface_length() const { return max_surface_length_; }
  bool is_english() const { return language_ == "eng"; }

  // "builtin:<lang>:v1" for shipped lexicons, otherwise where it came from.
  const std::string& source() const { return source_; }

  // English matches case-insensitively (full case folding, typographic
  // apostrophe folded to ASCII); other languages match the NFC form exactly.
  std::u32string match_key(std::u32string_view text) const {
    if (!is_english()) return unicode::nfc(text);
    std::u32string key = unicode::fold_case(unicode::nfc(text));
    std::replace(key.begin(), key.end(), U'’', U'\'');
    return key;
  }

  // `key` must already be a match_key().
  const LexiconEntry* find_key(const std::u32string& key) const {
    auto it = index_.find(key);
    return it == index_.end() ? nullptr : &entries_[it->second];
  }

  const LexiconEntry* find(std::u32string_view text) const { return find_key(match_key(text)); }

  std::vector<std::string> surfaces(GenderCategory c) const {
    std::vector<std::string> out;
    for (const auto& e : entries_)
      if (e.category == c) out.push_back(e.surface);
    return out;
  }

  friend bool operator==(const Lexicon& a, const Lexicon& b) {
    return a.language_ == b.language_ && a.entries_ == b.entries_;
  }

 private:
  std::string language_;
  std::string source_;
  std::vector<LexiconEntry> entries_;
  std::unordered_map<std::u32string, std::size_t> index_;
  std::size_t max_surface_length_ = 0;
};

namespace detail {

inline std::vector<LexiconEntry> entries_of(GenderCategory c,
                                            std::initializer_list<std::string_view> surfaces) {
  std::vector<LexiconEntry> out;
  for (auto s : surfaces) out.push_back(LexiconEntry{std::string(s), c});
  return out;
}

inline void append(std::vector<LexiconEntry>& into, std::vector<LexiconEntry> more) {
  into.insert(into.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
}

}  // namespace detail

inline constexpr std::string_view kBuiltinLexiconVersion = "v1";

// The published pronoun lists, verbatim; printed duplicates collapse.
inline Lexicon builtin_lexicon(std::string_view language) {
  using detail::append;
  using detail::entries_of;
  constexpr auto M = GenderCategory::Masculine;
  constexpr auto F = GenderCategory::Feminine;
  constexpr auto A = GenderCategory::Ambiguous;
  std::vector<LexiconEntry> entries;
  if (language == "eng") {
    append(entries, entries_of(M, {"he", "him", "his", "himself"}));
    append(entries, entries_of(F, {"her", "she", "herself"}));
    append(entries,
           entries_of(A, {"I",          "you",        "it",          "me",        "my",
                          "your",       "them",       "their",       "myself",    "they",
                          "themselves", "we",         "us",          "oneself",   "our",
                          "yourself",   "its",        "itself",      "self",      "ourselves",
                          "'em",        "theirs",     "thyself",     "one",       "ours",
                          "themself",   "theirself",  "theirselves", "theirselves", "xe",
                          "xem",        "xim",        "hir",         "xemself",   "xemself",
                          "hirsself",   "hirselves",  "ze",          "zeself",    "zeselves"}));
  } else if (language == "jpn") {
    append(entries, entries_of(M, {"きみ", "君", "お前", "俺", "彼", "彼ら", "僕", "君たち", "オレ",
                                   "おまえ", "ぼく", "ボク", "僕ら", "僕達", "おれ", "吾輩", "キミ",
                                   "てめえ", "小生", "てめえ", "僕たち"}));
    append(entries, entries_of(F, {"彼女", "あたし", "彼女ら"}));
    append(entries,
           entries_of(A, {"何",   "私",     "それ",   "あなた", "みんな", "あいつ", "誰",
                          "わたし", "貴方",   "どなた", "我々",   "あんた", "そつ",   "やつ",
                          "みな",   "奴",     "あれ",   "なに",   "皆",     "みなさん", "みなさま",
                          "我ら",   "余",     "彼等",   "だれ",   "奴ら",   "ウチ",   "わたくし",
                          "われわれ", "よそ",  "われ",   "奴等",   "己",     "おのれ", "何れ",
                          "わし",   "彼奴"}));
  } else {
    throw InputError("no built-in lexicon for language '" + std::string(language) +
                     "' (supported: eng, jpn)");
  }
  return Lexicon::build(std::string(language), std::move(entries),
                        "builtin:" + std::string(language) + ":" + std::string(kBuiltinLexiconVersion));
}

inline std::string serialize_lexicon(const Lexicon& lexicon) {
  std::string out = "# pronaudit lexicon v1 lang=" + lexicon.language() + "\n";
  for (const auto& e : lexicon.entries()) {
    out += e.surface;
    out += '\t';
    out += category_letter(e.category);
    out += '\n';
  }
  return out;
}

inline std::string lexicon_digest(const Lexicon& lexicon) {
  return sha256_hex(serialize_lexicon(lexicon));
}

// Records are `surface<TAB>M|F|A`; `#` starts a comment line. A header comment
// `# ... lang=<code>` overrides `language`.
inline Lexicon load_lexicon(std::string_view bytes, std::string language = "",
                            std::string source = "file") {
  unicode::validate_utf8(bytes);
  std::vector<LexiconEntry> entries;
  std::unordered_map<std::string, std::pair<GenderCategory, std::size_t>> first_seen;
  detail::for_each_line(bytes, [&](std::size_t line_no, std::string_view line) {
    if (line.empty()) return;
    if (line.front() == '#') {
      if (auto pos = line.find("lang="); pos != std::string_view::npos) {
        std::string_view code = line.substr(pos + 5);
        code = code.substr(0, code.find_first_of(" \t"));
        language = std::string(code);
      }
      return;
    }
    const auto where = "lexicon line " + std::to_string(line_no) + ": ";
    const auto fields = detail::split_tabs(line);
    if (fields.size() != 2) throw InputError(where + "expected surface<TAB>category");
    if (fields[0].empty()) throw InputError(where + "empty surface");
    const auto category = category_from_letter(fields[1]);
    if (!category)
      throw InputError(where + "unknown category '" + std::string(fields[1]) + "' (expected M, F or A)");
    std::string surface = unicode::nfc(fields[0]);
    auto [it, inserted] = first_seen.emplace(surface, std::make_pair(*category, line_no));
    if (!inserted && it->second.first != *category)
      throw InputError(where + "conflicting categories for surface '" + surface + "' (first seen on line " +
                       std::to_string(it->second.second) + ")");
    entries.push_back(LexiconEntry{std::move(surface), *category});
  });
  if (language.empty()) throw InputError("lexicon language unknown: add a 'lang=' header or pass a language");
  return Lexicon::build(std::move(language), std::move(entries), std::move(source));
}

}  // namespace pronaudit
