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

// Parallel-corpus ingestion: Tatoeba `sentences.csv` / `links.csv` exports and
// the two-column parallel TSV fixture format.

#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "pronaudit/digest.hpp"
#include "pronaudit/error.hpp"
#include "pronaudit/unicode.hpp"

namespace pronaudit {

struct Sentence {
  uint64_t id = 0;
  std::string language;
  std::string text;

  friend bool operator==(const Sentence&, const Sentence&) = default;
};

struct SentencePair {
  std::string pair_id;
  Sentence source;
  Sentence target;

  friend bool operator==(const SentencePair&, const SentencePair&) = default;
};

struct Corpus {
  std::string source_language = "eng";
  std::string target_language = "jpn";
  std::vector<SentencePair> pairs;

  friend bool operator==(const Corpus&, const Corpus&) = default;
};

struct SentenceParse {
  std::vector<Sentence> sentences;
  std::size_t records = 0;
  std::size_t filtered = 0;  // well-formed but outside the language filter
  std::size_t skipped = 0;   // malformed
  std::vector<std::size_t> skipped_lines;
};

struct Link {
  uint64_t first = 0;
  uint64_t second = 0;
};

struct LinkParse {
  std::vector<Link> links;
  std::size_t records = 0;
  std::size_t skipped = 0;
};

struct PairBuild {
  Corpus corpus;
  std::size_t dropped = 0;     // endpoints missing or not spanning both languages
  std::size_t duplicates = 0;  // collapsed onto an earlier pair
};

struct TsvParse {
  Corpus corpus;
  std::size_t records = 0;
  std::size_t skipped = 0;
  std::vector<std::size_t> skipped_lines;
};

// Orientation-independent: "min-max" of the two ids. A pair of equal ids
// (line-numbered fixtures) collapses to the single number.
inline std::string make_pair_id(uint64_t a, uint64_t b) {
  if (a == b) return std::to_string(a);
  if (a > b) std::swap(a, b);
  return std::to_string(a) + "-" + std::to_string(b);
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw InputError("cannot read " + path.string());
  return std::move(buf).str();
}

namespace detail {

// Calls fn(line_number, line) for each LF- or CRLF-terminated line. A final
// line without terminator is still a line; the empty remainder after a
// trailing LF is not.
template <typename Fn>
void for_each_line(std::string_view bytes, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    std::size_t end = bytes.find('\n', pos);
    std::size_t next = end == std::string_view::npos ? bytes.size() : end + 1;
    if (end == std::string_view::npos) end = bytes.size();
    std::string_view line = bytes.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    fn(++line_no, line);
    pos = next;
  }
}

inline std::vector<std::string_view> split_on(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (true) {
    const std::size_t tab = line.find(sep, pos);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(pos));
      return fields;
    }
    fields.push_back(line.substr(pos, tab - pos));
    pos = tab + 1;
  }
}

inline std::vector<std::string_view> split_tabs(std::string_view line) { return split_on(line, '\t'); }

inline std::optional<uint64_t> parse_id(std::string_view s) {
  if (s.empty() || s.size() > 20) return std::nullopt;
  uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

inline bool valid_language_code(std::string_view code) {
  if (code.size() < 2 || code.size() > 3) return false;
  for (char c : code)
    if (c < 'a' || c > 'z') return false;
  return true;
}

inline bool has_line_break(std::string_view s) {
  return s.find_first_of("\r\n") != std::string_view::npos;
}

}  // namespace detail

// Records are `id<TAB>lang<TAB>text`. Blank lines are not records. Malformed
// records (wrong field count, bad id or code, empty text, repeated id within
// a language) are skipped and counted.
inline SentenceParse parse_sentences(std::string_view bytes,
                                     std::optional<std::string_view> language = std::nullopt) {
  unicode::validate_utf8(bytes);
  SentenceParse out;
  std::unordered_map<std::string, std::unordered_set<uint64_t>> seen;
  detail::for_each_line(bytes, [&](std::size_t line_no, std::string_view line) {
    if (line.empty()) return;
    ++out.records;
    const auto fields = detail::split_tabs(line);
    const auto skip = [&] {
      ++out.skipped;
      out.skipped_lines.push_back(line_no);
    };
    if (fields.size() != 3) return skip();
    const auto id = detail::parse_id(fields[0]);
    if (!id || !detail::valid_language_code(fields[1]) || fields[2].empty() ||
        detail::has_line_break(fields[2]))
      return skip();
    if (!seen[std::string(fields[1])].insert(*id).second) return skip();
    if (language && fields[1] != *language) {
      ++out.filtered;
      return;
    }
    out.sentences.push_back(Sentence{*id, std::string(fields[1]), std::string(fields[2])});
  });
  return out;
}

// Records are `id<TAB>translation_id`.
inline LinkParse parse_links(std::string_view bytes) {
  unicode::validate_utf8(bytes);
  LinkParse out;
  detail::for_each_line(bytes, [&](std::size_t, std::string_view line) {
    if (line.empty()) return;
    ++out.records;
    const auto fields = detail::split_tabs(line);
    if (fields.size() != 2) {
      ++out.skipped;
      return;
    }
    const auto a = detail::parse_id(fields[0]);
    const auto b = detail::parse_id(fields[1]);
    if (!a || !b) {
      ++out.skipped;
      return;
    }
    out.links.push_back(Link{*a, *b});
  });
  return out;
}

// One pair per link whose endpoints fall one in `source` and one in `target`,
// oriented source -> target regardless of the link's direction. Pair order is
// the order of first appearance in `links`.
inline PairBuild build_pairs(const std::vector<Sentence>& source,
                             const std::vector<Sentence>& target,
                             const std::vector<Link>& links,
                             std::string source_language = "eng",
                             std::string target_language = "jpn") {
  std::unordered_map<uint64_t, const Sentence*> src_by_id;
  std::unordered_map<uint64_t, const Sentence*> tgt_by_id;
  for (const auto& s : source) src_by_id.emplace(s.id, &s);
  for (const auto& s : target) tgt_by_id.emplace(s.id, &s);

  PairBuild out;
  out.corpus.source_language = std::move(source_language);
  out.corpus.target_language = std::move(target_language);
  std::unordered_set<std::string> seen;
  for (const Link& link : links) {
    const Sentence* src = nullptr;
    const Sentence* tgt = nullptr;
    if (auto s = src_by_id.find(link.first), t = tgt_by_id.find(link.second);
        s != src_by_id.end() && t != tgt_by_id.end()) {
      src = s->second;
      tgt = t->second;
    } else if (auto s2 = src_by_id.find(link.second), t2 = tgt_by_id.find(link.first);
               s2 != src_by_id.end() && t2 != tgt_by_id.end()) {
      src = s2->second;
      tgt = t2->second;
    }
    if (src == nullptr || src->language == tgt->language) {
      ++out.dropped;
      continue;
    }
    std::string pair_id = make_pair_id(src->id, tgt->id);
    if (!seen.insert(pair_id).second) {
      ++out.duplicates;
      continue;
    }
    out.corpus.pairs.push_back(SentencePair{std::move(pair_id), *src, *tgt});
  }
  return out;
}

// Records are `source text<TAB>target text`; both sentences take the physical
// line number as id.
inline TsvParse parse_parallel_tsv(std::string_view bytes, std::string source_language = "eng",
                                   std::string target_language = "jpn") {
  unicode::validate_utf8(bytes);
  TsvParse out;
  out.corpus.source_language = source_language;
  out.corpus.target_language = target_language;
  detail::for_each_line(bytes, [&](std::size_t line_no, std::string_view line) {
    if (line.empty()) return;
    ++out.records;
    const auto fields = detail::split_tabs(line);
    if (fields.size() != 2 || fields[0].empty() || fields[1].empty() ||
        detail::has_line_break(fields[0]) || detail::has_line_break(fields[1])) {
      ++out.skipped;
      out.skipped_lines.push_back(line_no);
      return;
    }
    const auto id = static_cast<uint64_t>(line_no);
    out.corpus.pairs.push_back(SentencePair{make_pair_id(id, id),
                                            Sentence{id, source_language, std::string(fields[0])},
                                            Sentence{id, target_language, std::string(fields[1])}});
  });
  return out;
}

inline std::string write_parallel_tsv(const Corpus& corpus) {
  std::string out;
  for (const auto& p : corpus.pairs) {
    out += p.source.text;
    out += '\t';
    out += p.target.text;
    out += '\n';
  }
  return out;
}

// Tatoeba-shaped `sentences.csv`: source then target row for every pair.
inline std::string write_sentences_tsv(const Corpus& corpus) {
  std::string out;
  const auto row = [&](const Sentence& s) {
    out += std::to_string(s.id);
    out += '\t';
    out += s.language;
    out += '\t';
    out += s.text;
    out += '\n';
  };
  for (const auto& p : corpus.pairs) {
    row(p.source);
    row(p.target);
  }
  return out;
}

inline std::string write_links_tsv(const Corpus& corpus) {
  std::string out;
  for (const auto& p : corpus.pairs)
    out += std::to_string(p.source.id) + '\t' + std::to_string(p.target.id) + '\n';
  return out;
}

// Digest of the canonical serialization; independent of the input format.
inline std::string corpus_digest(const Corpus& corpus) {
  std::string canon = corpus.source_language + '\t' + corpus.target_language + '\n';
  for (const auto& p : corpus.pairs) {
    canon += p.pair_id + '\t' + std::to_string(p.source.id) + '\t' + std::to_string(p.target.id) +
             '\t' + p.source.text + '\t' + p.target.text + '\n';
  }
  return sha256_hex(canon);
}

}  // namespace pronaudit
