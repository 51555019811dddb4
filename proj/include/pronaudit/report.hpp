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

// Audit report: every statistic over one corpus (or one imported matrix),
// with provenance, as a fixed-key-order JSON document.

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "pronaudit/classifier.hpp"
#include "pronaudit/corpus.hpp"
#include "pronaudit/lexicon.hpp"
#include "pronaudit/stats.hpp"

#ifndef PRONAUDIT_VERSION
#define PRONAUDIT_VERSION "0.0.0"
#endif

namespace pronaudit {

using json = nlohmann::ordered_json;

inline constexpr std::string_view kToolVersion = PRONAUDIT_VERSION;
inline constexpr std::string_view kReportSchema = "pronaudit.report/1";

// Occurrence (token) counts per category, as opposed to sentence presence.
struct TokenTotals {
  std::array<uint64_t, 3> english{};
  std::array<uint64_t, 3> japanese{};

  friend bool operator==(const TokenTotals&, const TokenTotals&) = default;
};

struct LexiconInfo {
  std::string language;
  std::string source;
  std::string digest;
  std::size_t entries = 0;
};

struct Report {
  ConfusionMatrix matrix;
  PresenceCounts presence;
  MatchTable matches;
  std::vector<BiasTest> tests;
  std::optional<TokenTotals> tokens;
  // Input provenance: "corpus" or "matrix", and a digest of it.
  std::string input_kind;
  std::string input_digest;
  std::vector<LexiconInfo> lexicons;
};

// Pairs are split into contiguous shards, one per worker; results land at
// their pair's index, so output does not depend on `workers`.
inline std::vector<PairClassification> classify_corpus(const Corpus& corpus, const Lexicon& en,
                                                       const Lexicon& ja, std::size_t workers = 1) {
  const std::size_t n = corpus.pairs.size();
  std::vector<PairClassification> out(n);
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(n, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = classify_pair(corpus.pairs[i], en, ja);
    return out;
  }
  std::vector<std::thread> pool;
  const std::size_t shard = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * shard;
    const std::size_t end = std::min(n, begin + shard);
    if (begin >= end) break;
    pool.emplace_back([&, begin, end] {
      for (std::size_t i = begin; i < end; ++i) out[i] = classify_pair(corpus.pairs[i], en, ja);
    });
  }
  for (auto& t : pool) t.join();
  return out;
}

inline LexiconInfo lexicon_info(const Lexicon& lexicon) {
  return LexiconInfo{lexicon.language(), lexicon.source(), lexicon_digest(lexicon), lexicon.size()};
}

inline Report report_from_matrix(const ConfusionMatrix& matrix) {
  Report r;
  r.matrix = matrix;
  r.presence = presence_counts(matrix);
  r.matches = match_table(matrix);
  r.tests = bias_tests(matrix);
  r.input_kind = "matrix";
  r.input_digest = sha256_hex(write_matrix_tsv(matrix));
  return r;
}

inline Report audit_report(const Corpus& corpus, const Lexicon& en, const Lexicon& ja,
                           std::size_t workers = 1) {
  const auto classifications = classify_corpus(corpus, en, ja, workers);
  Report r = report_from_matrix(confusion_matrix(classifications));
  TokenTotals tokens;
  for (const auto& c : classifications) {
    for (const auto& o : c.en_occurrences) ++tokens.english[static_cast<std::size_t>(o.category)];
    for (const auto& o : c.ja_occurrences) ++tokens.japanese[static_cast<std::size_t>(o.category)];
  }
  r.tokens = tokens;
  r.input_kind = "corpus";
  r.input_digest = corpus_digest(corpus);
  r.lexicons = {lexicon_info(en), lexicon_info(ja)};
  return r;
}

namespace detail {

inline json category_counts(const std::array<uint64_t, 3>& counts) {
  json j = json::object();
  for (GenderCategory g : kAllCategories) j[std::string(category_name(g))] = counts[static_cast<std::size_t>(g)];
  return j;
}

inline json table_json(const ContingencyTable& t) {
  return json{{"rows", t.row_labels}, {"columns", t.column_labels}, {"cells", t.cells}};
}

}  // namespace detail

inline json matrix_json(const ConfusionMatrix& m) {
  json rows = json::array();
  for (const auto& row : m.counts) rows.push_back(row);
  json labels = json::array();
  for (auto l : CategorySet::labels()) labels.push_back(std::string(l));
  return json{{"rows_language", "eng"}, {"columns_language", "jpn"}, {"labels", labels},
              {"counts", rows},         {"total", m.total()}};
}

inline json bias_test_json(const BiasTest& t) {
  json j{{"id", t.id}, {"description", t.description}, {"table", detail::table_json(t.table)},
         {"yates", t.yates}};
  if (t.result) {
    const auto& r = *t.result;
    j["status"] = "ok";
    j["n"] = r.n;
    j["df"] = r.df;
    j["chi2"] = r.chi2;
    j["chi2_uncorrected"] = r.chi2_uncorrected;
    j["cramers_v"] = r.cramers_v;
  } else {
    j["status"] = "error";
    j["error"] = t.error;
  }
  return j;
}

// `config` is echoed verbatim; keep it free of anything that varies between
// runs with the same inputs (worker counts, timestamps).
inline json report_json(const Report& r, const json& config = json::object()) {
  json j;
  j["schema_version"] = std::string(kReportSchema);
  j["tool_version"] = std::string(kToolVersion);
  j["config"] = config;

  json provenance;
  provenance["input_kind"] = r.input_kind;
  provenance["input_digest"] = r.input_digest;
  json lexicons = json::array();
  for (const auto& l : r.lexicons)
    lexicons.push_back(json{{"language", l.language}, {"source", l.source}, {"digest", l.digest},
                            {"entries", l.entries}});
  provenance["lexicons"] = lexicons;
  j["provenance"] = provenance;

  j["matrix"] = matrix_json(r.matrix);
  j["presence"] = json{{"eng", detail::category_counts(r.presence.english)},
                       {"jpn", detail::category_counts(r.presence.japanese)},
                       {"eng_non_masculine", r.presence.en_non_masculine()},
                       {"jpn_non_masculine", r.presence.ja_non_masculine()}};

  json match = json::object();
  for (GenderCategory g : kAllCategories) {
    const std::string name(category_name(g));
    match[name] = json{{"match", r.matches.match(g)}, {"mismatch", r.matches.mismatch(g)}};
    match["non_" + name] = json{{"match", r.matches.non_match(g)}, {"mismatch", r.matches.non_mismatch(g)}};
  }
  j["match_table"] = match;

  const uint64_t total = r.matrix.total();
  const uint64_t diag = r.matrix.diagonal();
  j["diagonal"] = json{{"matched", diag},
                       {"total", total},
                       {"rate", total == 0 ? json(nullptr) : json(static_cast<double>(diag) / static_cast<double>(total))}};

  json tests = json::array();
  for (const auto& t : r.tests) tests.push_back(bias_test_json(t));
  j["bias_tests"] = tests;
  j["excluded_tests"] = json::array(
      {json{{"id", "W-eng"},
            {"description", "within-English masculine+feminine vs ambiguous"},
            {"status", "not reproducible from published data"}},
       json{{"id", "W-jpn"},
            {"description", "within-Japanese masculine+feminine vs ambiguous"},
            {"status", "not reproducible from published data"}}});

  if (r.tokens) {
    j["token_totals"] = json{{"eng", detail::category_counts(r.tokens->english)},
                             {"jpn", detail::category_counts(r.tokens->japanese)}};
  } else {
    j["token_totals"] = nullptr;
  }
  return j;
}

inline std::string render_report(const Report& r, const json& config = json::object()) {
  return report_json(r, config).dump(2) + "\n";
}

}  // namespace pronaudit
