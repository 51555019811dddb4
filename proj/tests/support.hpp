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

#include <filesystem>
#include <map>
#include <random>
#include <string>

#include "pronaudit/pronaudit.hpp"

namespace testing_support {

inline std::filesystem::path data_path(const std::string& name) {
  return std::filesystem::path(PRONAUDIT_TEST_DATA) / name;
}

inline pronaudit::Corpus desk_corpus() {
  return pronaudit::parse_parallel_tsv(pronaudit::read_file(data_path("desk_pairs.tsv"))).corpus;
}

inline pronaudit::ConfusionMatrix published_matrix() {
  return pronaudit::parse_matrix_tsv(pronaudit::read_file(data_path("published_matrix.tsv")));
}

// Lexicon as plain data for the oracles: surface -> 'M' / 'F' / 'A'.
// English keys are lower-cased.
inline std::map<std::string, char> oracle_lexicon(const pronaudit::Lexicon& lex) {
  std::map<std::string, char> out;
  for (const auto& e : lex.entries()) {
    std::string key = e.surface;
    if (lex.is_english())
      for (auto& c : key) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    out[key] = pronaudit::category_letter(e.category);
  }
  return out;
}

// Fresh scratch directory under the system temp dir, removed on destruction.
class ScratchDir {
 public:
  ScratchDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("pronaudit-test-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~ScratchDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  ScratchDir(const ScratchDir&) = delete;
  ScratchDir& operator=(const ScratchDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace testing_support
