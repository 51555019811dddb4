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

#include <cmath>
#include <random>

#include "oracles/oracles.hpp"
#include "support.hpp"

namespace pronaudit {
namespace {

constexpr auto M = GenderCategory::Masculine;
constexpr auto F = GenderCategory::Feminine;
constexpr auto A = GenderCategory::Ambiguous;

ContingencyTable table(std::vector<std::vector<uint64_t>> cells) {
  ContingencyTable t;
  for (std::size_t i = 0; i < cells.size(); ++i) t.row_labels.push_back("r" + std::to_string(i));
  for (std::size_t j = 0; j < cells[0].size(); ++j) t.column_labels.push_back("c" + std::to_string(j));
  t.cells = std::move(cells);
  return t;
}

TEST(PresenceCounts, PublishedMatrixReproducesPresenceTable) {
  const PresenceCounts p = presence_counts(testing_support::published_matrix());
  EXPECT_EQ(p.en(M), 43453u);
  EXPECT_EQ(p.en(F), 19025u);
  EXPECT_EQ(p.en(A), 148903u);
  EXPECT_EQ(p.ja(M), 50350u);
  EXPECT_EQ(p.ja(F), 17123u);
  EXPECT_EQ(p.ja(A), 61916u);
  EXPECT_EQ(p.en_non_masculine(), 167928u);
  EXPECT_EQ(p.ja_non_masculine(), 79039u);
}

TEST(MatchTable, PublishedMatrixReproducesMatchTable) {
  const MatchTable t = match_table(testing_support::published_matrix());
  EXPECT_EQ(t.match(M), 36164u);
  EXPECT_EQ(t.mismatch(M), 21475u);
  EXPECT_EQ(t.non_match(M), 71527u);
  EXPECT_EQ(t.non_mismatch(M), 103913u);
  EXPECT_EQ(t.match(F), 16855u);
  EXPECT_EQ(t.mismatch(F), 2438u);
  EXPECT_EQ(t.non_match(F), 90836u);
  EXPECT_EQ(t.non_mismatch(F), 122950u);
}

TEST(ConfusionMatrix, PublishedMatrixDiagonal) {
  const ConfusionMatrix m = testing_support::published_matrix();
  EXPECT_EQ(m.total(), 255675u);
  EXPECT_EQ(m.diagonal(), 144537u);
}

TEST(ConfusionMatrix, SingleCellPresence) {
  ConfusionMatrix m;
  m.add(CategorySet::from_label("FM").value(), CategorySet::from_label("A").value());
  const PresenceCounts p = presence_counts(m);
  EXPECT_EQ(p.en(M), 1u);
  EXPECT_EQ(p.en(F), 1u);
  EXPECT_EQ(p.en(A), 0u);
  EXPECT_EQ(p.ja(A), 1u);
  const MatchTable t = match_table(m);
  EXPECT_EQ(t.mismatch(M), 1u);
  EXPECT_EQ(t.mismatch(F), 1u);
  EXPECT_EQ(t.mismatch(A), 1u);
  EXPECT_EQ(t.match(A), 0u);
}

// Frozen outputs on the published matrix. T2-T4 carry the continuity
// correction; the plain statistic is kept next to it.
TEST(BiasTests, PublishedMatrixGoldenNumbers) {
  const auto tests = bias_tests(testing_support::published_matrix());
  ASSERT_EQ(tests.size(), 4u);
  for (const auto& t : tests) ASSERT_TRUE(t.result.has_value()) << t.id;
  EXPECT_NEAR(tests[0].result->chi2, 17801.96, 0.01);
  EXPECT_NEAR(tests[0].result->cramers_v, 0.2286, 0.0001);
  EXPECT_EQ(tests[0].result->df, 2);
  EXPECT_EQ(tests[0].result->n, 340770u);
  EXPECT_FALSE(tests[0].result->yates_applied);

  EXPECT_NEAR(tests[1].result->chi2, 13556.27, 0.01);
  EXPECT_NEAR(tests[1].result->chi2_uncorrected, 13557.19, 0.01);
  EXPECT_NEAR(tests[2].result->chi2, 8425.84, 0.01);
  EXPECT_NEAR(tests[2].result->chi2_uncorrected, 8426.73, 0.01);
  EXPECT_NEAR(tests[3].result->chi2, 14334.52, 0.01);
  EXPECT_NEAR(tests[3].result->chi2_uncorrected, 14336.32, 0.01);
  for (std::size_t i = 1; i < 4; ++i) {
    EXPECT_TRUE(tests[i].result->yates_applied);
    EXPECT_EQ(tests[i].result->df, 1);
  }
  EXPECT_NEAR(tests[1].result->cramers_v, 0.1995, 0.0001);
  EXPECT_NEAR(tests[2].result->cramers_v, 0.1901, 0.0001);
  EXPECT_NEAR(tests[3].result->cramers_v, 0.2480, 0.0001);
}

TEST(BiasTests, EmptyMatrixRecordsErrors) {
  const auto tests = bias_tests(ConfusionMatrix{});
  for (const auto& t : tests) {
    EXPECT_FALSE(t.result.has_value());
    EXPECT_EQ(t.error, "degenerate table");
  }
}

TEST(ChiSquare, PublishedPresenceTable) {
  const auto r = chi_square(table({{43453, 167928}, {50350, 79039}}), true);
  EXPECT_NEAR(r.chi2, 13557.2, 1.0);
  EXPECT_NEAR(r.cramers_v, 0.20, 0.005);
}

TEST(ChiSquare, IndependentTableIsZero) {
  const auto r = chi_square(table({{10, 20}, {30, 60}}));
  EXPECT_NEAR(r.chi2, 0.0, 1e-12);
  EXPECT_NEAR(r.cramers_v, 0.0, 1e-6);
}

TEST(ChiSquare, Errors) {
  EXPECT_THROW(chi_square(table({{0, 0}, {3, 4}})), StatsError);
  EXPECT_THROW(chi_square(table({{0, 5}, {0, 4}})), StatsError);
  EXPECT_THROW(chi_square(table({{1, 2, 3}, {4, 5, 6}}), true), StatsError);
  EXPECT_THROW(chi_square(table({{1, 2, 3}})), StatsError);
  try {
    chi_square(table({{0, 0}, {1, 1}}));
  } catch (const StatsError& e) {
    EXPECT_STREQ(e.what(), "degenerate table");
  }
}

TEST(ChiSquare, ScalesLinearlyWithCounts) {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 200; ++round) {
    std::vector<std::vector<uint64_t>> cells(2 + rng() % 3, std::vector<uint64_t>(2 + rng() % 3));
    for (auto& row : cells)
      for (auto& v : row) v = 1 + rng() % 200;
    const uint64_t k = 1 + rng() % 50;
    auto scaled = cells;
    for (auto& row : scaled)
      for (auto& v : row) v *= k;
    const double base = chi_square(table(cells)).chi2;
    EXPECT_NEAR(chi_square(table(scaled)).chi2, base * static_cast<double>(k), 1e-9 * base * k + 1e-9);
  }
}

TEST(ChiSquare, CramersVIsAbsolutePhiFor2x2) {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 200; ++round) {
    const double a = 1 + rng() % 300, b = 1 + rng() % 300, c = 1 + rng() % 300, d = 1 + rng() % 300;
    const auto r = chi_square(table({{static_cast<uint64_t>(a), static_cast<uint64_t>(b)},
                                     {static_cast<uint64_t>(c), static_cast<uint64_t>(d)}}));
    const double phi = (a * d - b * c) / std::sqrt((a + b) * (c + d) * (a + c) * (b + d));
    EXPECT_NEAR(r.cramers_v, std::fabs(phi), 1e-12);
  }
}

TEST(ChiSquare, AgreesWithExactOracle) {
  std::mt19937_64 rng(17);
  for (int round = 0; round < 300; ++round) {
    std::vector<std::vector<uint64_t>> cells(2 + rng() % 3, std::vector<uint64_t>(2 + rng() % 3));
    for (auto& row : cells)
      for (auto& v : row) v = 1 + rng() % 500;
    const long double want = oracle::chi_square(cells);
    const double got = chi_square(table(cells)).chi2;
    EXPECT_LE(std::fabs(static_cast<long double>(got) - want), 1e-10L * want) << round;
    if (cells.size() == 2 && cells[0].size() == 2) {
      const long double want_y = oracle::chi_square_yates(cells);
      EXPECT_LE(std::fabs(static_cast<long double>(chi_square(table(cells), true).chi2) - want_y),
                1e-10L * want_y)
          << round;
    }
  }
}

TEST(MatrixTsv, RoundTrip) {
  const ConfusionMatrix m = testing_support::published_matrix();
  const ConfusionMatrix again = parse_matrix_tsv(write_matrix_tsv(m));
  EXPECT_EQ(again.counts, m.counts);
}

TEST(MatrixTsv, RejectsBadInput) {
  EXPECT_THROW(parse_matrix_tsv("nonsense\n"), InputError);
  std::string tsv = write_matrix_tsv(testing_support::published_matrix());
  EXPECT_THROW(parse_matrix_tsv(tsv.substr(0, tsv.size() / 2)), InputError);
}

}  // namespace
}  // namespace pronaudit
