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

// Pronoun location. English: rule-based word tokens matched whole against the
// lexicon. Japanese: leftmost-longest lexicon scan inside punctuation-bounded
// segments. Spans are code point offsets into the original text.

#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "pronaudit/lexicon.hpp"
#include "pronaudit/unicode.hpp"

namespace pronaudit {

struct PronounOccurrence {
  std::string surface;          // as found in the text
  std::string lexicon_surface;  // entry it matched
  GenderCategory category = GenderCategory::Ambiguous;
  std::size_t start = 0;  // code points, end exclusive
  std::size_t end = 0;
  // Matched the part of a token before an apostrophe ("he" in "he's").
  bool clitic_split = false;

  friend bool operator==(const PronounOccurrence&, const PronounOccurrence&) = default;
};

namespace detail {

inline PronounOccurrence make_occurrence(const std::u32string& text, std::size_t start,
                                         std::size_t end, const LexiconEntry& entry,
                                         bool clitic_split = false) {
  return PronounOccurrence{unicode::encode(std::u32string_view(text).substr(start, end - start)),
                           entry.surface, entry.category, start, end, clitic_split};
}

}  // namespace detail

// Tokens are maximal runs of letters with embedded apostrophes. A token whose
// whole form is not in the lexicon may still match on its part before the
// first apostrophe ("he'd", "she's").
inline std::vector<PronounOccurrence> extract_pronouns_en(std::string_view text,
                                                          const Lexicon& lexicon) {
  const std::u32string t = unicode::decode(text);
  const std::size_t n = t.size();
  std::vector<PronounOccurrence> out;
  std::size_t i = 0;
  while (i < n) {
    if (!unicode::is_letter(t[i])) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    std::size_t end = i;
    std::size_t first_apostrophe = std::u32string::npos;
    while (end < n) {
      if (unicode::is_letter(t[end])) {
        ++end;
      } else if (unicode::is_apostrophe(t[end]) && end + 1 < n && unicode::is_letter(t[end + 1])) {
        if (first_apostrophe == std::u32string::npos) first_apostrophe = end;
        ++end;
      } else {
        break;
      }
    }
    i = end;

    const std::u32string_view token = std::u32string_view(t).substr(start, end - start);
    const bool leading_apostrophe = start > 0 && unicode::is_apostrophe(t[start - 1]) &&
                                    (start == 1 || !unicode::is_letter(t[start - 2]));
    if (leading_apostrophe) {
      const LexiconEntry* e = lexicon.find(std::u32string_view(t).substr(start - 1, end - start + 1));
      if (e != nullptr && !e->surface.empty() && e->surface.front() == '\'') {
        out.push_back(detail::make_occurrence(t, start - 1, end, *e));
        continue;
      }
    }
    if (const LexiconEntry* e = lexicon.find(token)) {
      out.push_back(detail::make_occurrence(t, start, end, *e));
      continue;
    }
    if (first_apostrophe != std::u32string::npos) {
      if (const LexiconEntry* e = lexicon.find(token.substr(0, first_apostrophe - start)))
        out.push_back(detail::make_occurrence(t, start, first_apostrophe, *e, true));
    }
  }
  return out;
}

inline bool is_ja_boundary(char32_t c) {
  if (c < 0x80) {
    return c < 0x20 || c == 0x7f || c == U' ' ||
           (c >= U'!' && c <= U'/') || (c >= U':' && c <= U'@') ||
           (c >= U'[' && c <= U'`') || (c >= U'{' && c <= U'~');
  }
  switch (c) {
    case U'　':  // ideographic space
    case U'、': case U'。': case U'・': case U'「': case U'」': case U'『': case U'』':
    case U'（': case U'）': case U'！': case U'？': case U'〜': case U'…':
      return true;
    default:
      break;
  }
  // Full-width forms of ASCII punctuation, plus the half-width CJK marks.
  if ((c >= 0xFF01 && c <= 0xFF0F) || (c >= 0xFF1A && c <= 0xFF20) ||
      (c >= 0xFF3B && c <= 0xFF40) || (c >= 0xFF5B && c <= 0xFF65))
    return true;
  return unicode::is_white_space(c);
}

// One run of non-boundary text, NFC-normalized. Each normalized code point
// remembers the original range of the normalization chunk it came from.
struct FilteredSegment {
  std::u32string text;
  std::vector<std::size_t> original_start;
  std::vector<std::size_t> original_end;
  std::vector<bool> chunk_first;
  std::vector<bool> chunk_last;

  std::string utf8() const { return unicode::encode(text); }
};

struct FilteredView {
  std::u32string original;
  std::vector<FilteredSegment> segments;

  std::vector<std::string> segment_texts() const {
    std::vector<std::string> out;
    for (const auto& s : segments) out.push_back(s.utf8());
    return out;
  }

  // Original text covered by segment positions [from, to); requires both ends
  // to sit on chunk edges.
  std::pair<std::size_t, std::size_t> original_span(const FilteredSegment& seg, std::size_t from,
                                                    std::size_t to) const {
    return {seg.original_start[from], seg.original_end[to - 1]};
  }
};

inline FilteredView preprocess_ja(std::string_view text) {
  FilteredView view;
  view.original = unicode::decode(text);
  const std::u32string& t = view.original;
  const std::size_t n = t.size();
  std::size_t i = 0;
  while (i < n) {
    if (is_ja_boundary(t[i])) {
      ++i;
      continue;
    }
    std::size_t run_end = i;
    while (run_end < n && !is_ja_boundary(t[run_end])) ++run_end;

    FilteredSegment seg;
    std::size_t chunk_start = i;
    while (chunk_start < run_end) {
      std::size_t chunk_end = chunk_start + 1;
      while (chunk_end < run_end && !unicode::nfc_boundary_before(t[chunk_end])) ++chunk_end;
      const std::u32string normalized =
          unicode::nfc(std::u32string_view(t).substr(chunk_start, chunk_end - chunk_start));
      for (std::size_t k = 0; k < normalized.size(); ++k) {
        seg.text.push_back(normalized[k]);
        seg.original_start.push_back(chunk_start);
        seg.original_end.push_back(chunk_end);
        seg.chunk_first.push_back(k == 0);
        seg.chunk_last.push_back(k + 1 == normalized.size());
      }
      chunk_start = chunk_end;
    }
    view.segments.push_back(std::move(seg));
    i = run_end;
  }
  return view;
}

// Leftmost-longest: at each position take the longest lexicon surface that
// matches, then resume after it. Matches never cross segment boundaries.
inline std::vector<PronounOccurrence> extract_pronouns_ja(std::string_view text,
                                                          const Lexicon& lexicon) {
  std::vector<PronounOccurrence> out;
  if (lexicon.empty()) return out;
  const FilteredView view = preprocess_ja(text);
  const std::size_t max_len = lexicon.max_surface_length();
  for (const FilteredSegment& seg : view.segments) {
    const std::size_t n = seg.text.size();
    std::size_t i = 0;
    while (i < n) {
      std::size_t matched = 0;
      const LexiconEntry* entry = nullptr;
      if (seg.chunk_first[i]) {
        for (std::size_t len = std::min(max_len, n - i); len > 0; --len) {
          if (!seg.chunk_last[i + len - 1]) continue;
          const std::u32string key(seg.text, i, len);
          if (const LexiconEntry* e = lexicon.find_key(key)) {
            matched = len;
            entry = e;
            break;
          }
        }
      }
      if (entry == nullptr) {
        ++i;
        continue;
      }
      const auto [start, end] = view.original_span(seg, i, i + matched);
      out.push_back(detail::make_occurrence(view.original, start, end, *entry));
      i += matched;
    }
  }
  return out;
}

// English rules for "eng" lexicons, segment scanning for everything else.
inline std::vector<PronounOccurrence> extract_pronouns(std::string_view text,
                                                       const Lexicon& lexicon) {
  return lexicon.is_english() ? extract_pronouns_en(text, lexicon)
                              : extract_pronouns_ja(text, lexicon);
}

}  // namespace pronaudit
