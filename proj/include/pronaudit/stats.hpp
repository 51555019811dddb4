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

// Confusion matrix over category sets, presence and match counts, and the
// chi-square / Cramer's V tests run over them.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pronaudit/classifier.hpp"
#include "pronaudit/error.hpp"

namespace pronaudit {

// Rows are English category sets, columns Japanese, both in CategorySet index
// order.
struct ConfusionMatrix {
  std::array<std::array<uint64_t, CategorySet::kCount>, CategorySet::kCount> counts{};

  void add(CategorySet en, CategorySet ja, uint64_t n = 1) { counts[en.index()][ja.index()] += n; }

  uint64_t at(CategorySet en, CategorySet ja) const { return counts[en.index()][ja.index()]; }

  uint64_t total() const {
    uint64_t sum = 0;
    for (const auto& row : counts)
      for (uint64_t v : row) sum += v;
    return sum;
  }

  uint64_t diagonal() const {
    uint64_t sum = 0;
    for (std::size_t i = 0; i < CategorySet::kCount; ++i) sum += counts[i][i];
    return sum;
  }

  ConfusionMatrix& operator+=(const ConfusionMatrix& other) {
    for (std::size_t r = 0; r < CategorySet::kCount; ++r)
      for (std::size_t c = 0; c < CategorySet::kCount; ++c) counts[r][c] += other.counts[r][c];
    return *this;
  }

  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

inline ConfusionMatrix confusion_matrix(const std::vector<PairClassification>& classifications) {
  ConfusionMatrix m;
  for (const auto& c : classifications) m.add(c.en_set, c.ja_set);
  return m;
}

// Sentence-level presence: pairs whose side contains the category.
struct PresenceCounts {
  std::array<uint64_t, 3> english{};
  std::array<uint64_t, 3> japanese{};

  uint64_t en(GenderCategory g) const { return english[static_cast<std::size_t>(g)]; }
  uint64_t ja(GenderCategory g) const { return japanese[static_cast<std::size_t>(g)]; }
  uint64_t en_non_masculine() const {
    return en(GenderCategory::Feminine) + en(GenderCategory::Ambiguous);
  }
  uint64_t ja_non_masculine() const {
    return ja(GenderCategory::Feminine) + ja(GenderCategory::Ambiguous);
  }

  friend bool operator==(const PresenceCounts&, const PresenceCounts&) = default;
};

inline PresenceCounts presence_counts(const ConfusionMatrix& m) {
  PresenceCounts p;
  for (std::size_t r = 0; r < CategorySet::kCount; ++r) {
    for (std::size_t c = 0; c < CategorySet::kCount; ++c) {
      const uint64_t v = m.counts[r][c];
      for (GenderCategory g : kAllCategories) {
        const auto gi = static_cast<std::size_t>(g);
        if (CategorySet::from_index(r).contains(g)) p.english[gi] += v;
        if (CategorySet::from_index(c).contains(g)) p.japanese[gi] += v;
      }
    }
  }
  return p;
}

// match(g): g on both sides; mismatch(g): g on exactly one side.
struct MatchTable {
  std::array<uint64_t, 3> matches{};
  std::array<uint64_t, 3> mismatches{};

  uint64_t match(GenderCategory g) const { return matches[static_cast<std::size_t>(g)]; }
  uint64_t mismatch(GenderCategory g) const { return mismatches[static_cast<std::size_t>(g)]; }

  // Sums over the two categories other than g.
  uint64_t non_match(GenderCategory g) const {
    uint64_t sum = 0;
    for (GenderCategory o : kAllCategories)
      if (o != g) sum += match(o);
    return sum;
  }
  uint64_t non_mismatch(GenderCategory g) const {
    uint64_t sum = 0;
    for (GenderCategory o : kAllCategories)
      if (o != g) sum += mismatch(o);
    return sum;
  }

  friend bool operator==(const MatchTable&, const MatchTable&) = default;
};

inline MatchTable match_table(const ConfusionMatrix& m) {
  MatchTable t;
  for (std::size_t r = 0; r < CategorySet::kCount; ++r) {
    for (std::size_t c = 0; c < CategorySet::kCount; ++c) {
      for (GenderCategory g : kAllCategories) {
        const bool in_en = CategorySet::from_index(r).contains(g);
        const bool in_ja = CategorySet::from_index(c).contains(g);
        const auto gi = static_cast<std::size_t>(g);
        if (in_en && in_ja) t.matches[gi] += m.counts[r][c];
        else if (in_en != in_ja) t.mismatches[gi] += m.counts[r][c];
      }
    }
  }
  return t;
}

struct ContingencyTable {
  std::vector<std::string> row_labels;
  std::vector<std::string> column_labels;
  std::vector<std::vector<uint64_t>> cells;

  std::size_t rows() const { return cells.size(); }
  std::size_t columns() const { return cells.empty() ? 0 : cells.front().size(); }

  uint64_t total() const {
    uint64_t n = 0;
    for (const auto& row : cells)
      for (uint64_t v : row) n += v;
    return n;
  }
};

struct ChiSquareResult {
  double chi2 = 0.0;
  int df = 0;
  double cramers_v = 0.0;
  bool yates_applied = false;
  uint64_t n = 0;
  // Plain Pearson statistic, kept alongside a Yates-corrected chi2.
  double chi2_uncorrected = 0.0;
};

// Pearson chi-square; with `yates` (2x2 only) the continuity-corrected form
// N(|ad - bc| - N/2)^2 / ((a+b)(c+d)(a+c)(b+d)). Throws StatsError on a
// table with a zero row or column total ("degenerate table").
inline ChiSquareResult chi_square(const ContingencyTable& table, bool yates = false) {
  const std::size_t r = table.rows();
  const std::size_t c = table.columns();
  if (r < 2 || c < 2) throw StatsError("contingency table must be at least 2x2");
  for (const auto& row : table.cells)
    if (row.size() != c) throw StatsError("ragged contingency table");
  if (yates && (r != 2 || c != 2)) throw StatsError("Yates correction requires a 2x2 table");

  std::vector<double> row_total(r, 0.0);
  std::vector<double> col_total(c, 0.0);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      row_total[i] += static_cast<double>(table.cells[i][j]);
      col_total[j] += static_cast<double>(table.cells[i][j]);
    }
  for (double t : row_total)
    if (t == 0.0) throw StatsError("degenerate table");
  for (double t : col_total)
    if (t == 0.0) throw StatsError("degenerate table");

  ChiSquareResult res;
  res.n = table.total();
  const double n = static_cast<double>(res.n);
  res.df = static_cast<int>((r - 1) * (c - 1));

  double pearson = 0.0;
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      const double expected = row_total[i] * col_total[j] / n;
      const double d = static_cast<double>(table.cells[i][j]) - expected;
      pearson += d * d / expected;
    }
  }
  res.chi2_uncorrected = pearson;
  res.chi2 = pearson;
  if (yates) {
    const double a = static_cast<double>(table.cells[0][0]);
    const double b = static_cast<double>(table.cells[0][1]);
    const double cc = static_cast<double>(table.cells[1][0]);
    const double d = static_cast<double>(table.cells[1][1]);
    const double diff = std::abs(a * d - b * cc) - n / 2.0;
    res.chi2 = n * diff * diff / (row_total[0] * row_total[1] * col_total[0] * col_total[1]);
    res.yates_applied = true;
  }
  res.cramers_v = std::sqrt(res.chi2 / (n * static_cast<double>(std::min(r, c) - 1)));
  return res;
}

struct BiasTest {
  std::string id;
  std::string description;
  ContingencyTable table;
  bool yates = false;
  std::optional<ChiSquareResult> result;
  std::string error;  // set when result is empty
};

inline ContingencyTable language_by_category_table(const PresenceCounts& p) {
  using G = GenderCategory;
  return ContingencyTable{{"eng", "jpn"},
                          {"masculine", "feminine", "ambiguous"},
                          {{p.en(G::Masculine), p.en(G::Feminine), p.en(G::Ambiguous)},
                           {p.ja(G::Masculine), p.ja(G::Feminine), p.ja(G::Ambiguous)}}};
}

inline ContingencyTable language_by_masculine_table(const PresenceCounts& p) {
  using G = GenderCategory;
  return ContingencyTable{{"eng", "jpn"},
                          {"masculine", "non-masculine"},
                          {{p.en(G::Masculine), p.en_non_masculine()},
                           {p.ja(G::Masculine), p.ja_non_masculine()}}};
}

// Rows g / non-g, columns match / mismatch.
inline ContingencyTable match_by_category_table(const MatchTable& t, GenderCategory g) {
  const std::string name(category_name(g));
  return ContingencyTable{{name, "non-" + name},
                          {"match", "mismatch"},
                          {{t.match(g), t.mismatch(g)}, {t.non_match(g), t.non_mismatch(g)}}};
}

// The four tests reproducible from the published counts: language x category
// (plain), then three 2x2 tests with Yates correction.
inline std::vector<BiasTest> bias_tests(const ConfusionMatrix& m) {
  const PresenceCounts presence = presence_counts(m);
  const MatchTable matches = match_table(m);
  std::vector<BiasTest> tests = {
      {"T1", "language x {masculine, feminine, ambiguous} presence",
       language_by_category_table(presence), false, std::nullopt, ""},
      {"T2", "language x masculine / non-masculine presence", language_by_masculine_table(presence),
       true, std::nullopt, ""},
      {"T3", "masculine / non-masculine x match / mismatch",
       match_by_category_table(matches, GenderCategory::Masculine), true, std::nullopt, ""},
      {"T4", "feminine / non-feminine x match / mismatch",
       match_by_category_table(matches, GenderCategory::Feminine), true, std::nullopt, ""},
  };
  for (auto& t : tests) {
    try {
      t.result = chi_square(t.table, t.yates);
    } catch (const StatsError& e) {
      t.error = e.what();
    }
  }
  return tests;
}

inline std::string write_matrix_tsv(const ConfusionMatrix& m) {
  std::string out = "eng\\jpn";
  for (auto label : CategorySet::labels()) {
    out += '\t';
    out += label;
  }
  out += '\n';
  for (std::size_t r = 0; r < CategorySet::kCount; ++r) {
    out += CategorySet::labels()[r];
    for (std::size_t c = 0; c < CategorySet::kCount; ++c) {
      out += '\t';
      out += std::to_string(m.counts[r][c]);
    }
    out += '\n';
  }
  return out;
}

// Header row: a corner cell, then the eight labels in canonical order; then
// eight rows, each a label and eight non-negative integers.
inline ConfusionMatrix parse_matrix_tsv(std::string_view bytes) {
  unicode::validate_utf8(bytes);
  std::vector<std::pair<std::size_t, std::vector<std::string_view>>> rows;
  detail::for_each_line(bytes, [&](std::size_t line_no, std::string_view line) {
    if (line.empty() || line.front() == '#') return;
    rows.emplace_back(line_no, detail::split_tabs(line));
  });
  if (rows.size() != CategorySet::kCount + 1)
    throw InputError("matrix TSV: expected a header and 8 rows, got " + std::to_string(rows.size()) +
                     " non-empty lines");
  const auto& labels = CategorySet::labels();
  const auto& header = rows.front().second;
  if (header.size() != CategorySet::kCount + 1)
    throw InputError("matrix TSV: header must have 9 fields");
  for (std::size_t c = 0; c < CategorySet::kCount; ++c)
    if (header[c + 1] != labels[c])
      throw InputError("matrix TSV: column " + std::to_string(c + 1) + " must be labelled '" +
                       std::string(labels[c]) + "'");
  ConfusionMatrix m;
  for (std::size_t r = 0; r < CategorySet::kCount; ++r) {
    const auto& [line_no, fields] = rows[r + 1];
    const auto where = "matrix TSV line " + std::to_string(line_no) + ": ";
    if (fields.size() != CategorySet::kCount + 1) throw InputError(where + "expected 9 fields");
    if (fields[0] != labels[r])
      throw InputError(where + "row must be labelled '" + std::string(labels[r]) + "'");
    for (std::size_t c = 0; c < CategorySet::kCount; ++c) {
      const auto v = detail::parse_id(fields[c + 1]);
      if (!v) throw InputError(where + "invalid count '" + std::string(fields[c + 1]) + "'");
      m.counts[r][c] = *v;
    }
  }
  return m;
}

}  // namespace pronaudit
