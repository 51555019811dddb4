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

// Review sessions over a corpus' placeholder suggestions, persisted as an
// append-only JSON-lines decisions log.

#pragma once

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"

#include "pronaudit/corpus.hpp"
#include "pronaudit/error.hpp"
#include "pronaudit/lexicon.hpp"
#include "pronaudit/placeholder.hpp"
#include "pronaudit/rewriter.hpp"

namespace pronaudit {

inline constexpr std::string_view kReviewSchema = "pronaudit.review/1";

struct LogReplay {
  std::vector<ReviewDecision> decisions;
  std::vector<std::string> warnings;
  // Bytes of complete records; a torn final record lies beyond this.
  std::size_t valid_bytes = 0;
};

// Append-only decisions log: one JSON object per line, each line written with
// a single write() and fsync'd before append() returns.
class DecisionLog {
 public:
  explicit DecisionLog(std::filesystem::path path) : path_(std::move(path)) {}
  DecisionLog(const DecisionLog&) = delete;
  DecisionLog& operator=(const DecisionLog&) = delete;
  ~DecisionLog() {
    if (fd_ >= 0) ::close(fd_);
  }

  const std::filesystem::path& path() const { return path_; }

  // Missing file replays as empty. A final line without its newline is a torn
  // write and is reported as a warning; any other unparsable line throws
  // InputError naming the line.
  static LogReplay read(const std::filesystem::path& path) {
    LogReplay out;
    std::error_code ec;
    if (!std::filesystem::exists(path, ec)) return out;
    const std::string bytes = read_file(path);
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos < bytes.size()) {
      ++line_no;
      const std::size_t nl = bytes.find('\n', pos);
      if (nl == std::string::npos) {
        out.warnings.push_back("decisions log line " + std::to_string(line_no) +
                               ": incomplete final record ignored");
        break;
      }
      const std::string_view line(bytes.data() + pos, nl - pos);
      pos = nl + 1;
      out.valid_bytes = pos;
      if (line.empty()) continue;
      try {
        out.decisions.push_back(decision_from_json(nlohmann::ordered_json::parse(line)));
      } catch (const std::exception& e) {
        throw InputError("decisions log " + path.string() + " line " + std::to_string(line_no) +
                         ": corrupt record: " + e.what());
      }
    }
    return out;
  }

  // Drops a torn tail so the next append starts on a fresh line.
  void truncate_to(std::size_t bytes) {
    std::error_code ec;
    if (std::filesystem::exists(path_, ec) && std::filesystem::file_size(path_, ec) > bytes)
      std::filesystem::resize_file(path_, bytes);
  }

  void append(const ReviewDecision& decision) {
    if (fd_ < 0) {
      fd_ = ::open(path_.c_str(), O_WRONLY | O_APPEND | O_CREAT | O_CLOEXEC, 0644);
      if (fd_ < 0) throw StorageError("cannot open decisions log " + path_.string() + ": " + std::strerror(errno));
    }
    const std::string line = decision_to_json(decision).dump() + "\n";
    const ssize_t n = ::write(fd_, line.data(), line.size());
    if (n != static_cast<ssize_t>(line.size()))
      throw StorageError("cannot append to decisions log " + path_.string() + ": " +
                         (n < 0 ? std::strerror(errno) : "short write"));
    if (::fsync(fd_) != 0)
      throw StorageError("cannot sync decisions log " + path_.string() + ": " + std::strerror(errno));
  }

 private:
  std::filesystem::path path_;
  int fd_ = -1;
};

struct Progress {
  std::size_t total = 0;
  std::size_t pending = 0;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t edited = 0;

  friend bool operator==(const Progress&, const Progress&) = default;
};

inline Progress count_statuses(const std::vector<PlaceholderSuggestion>& suggestions) {
  Progress p;
  p.total = suggestions.size();
  for (const auto& s : suggestions) {
    switch (s.status) {
      case SuggestionStatus::Pending: ++p.pending; break;
      case SuggestionStatus::Accepted: ++p.accepted; break;
      case SuggestionStatus::Rejected: ++p.rejected; break;
      case SuggestionStatus::Edited: ++p.edited; break;
    }
  }
  return p;
}

inline nlohmann::ordered_json progress_json(const Progress& p) {
  return nlohmann::ordered_json{{"total", p.total},         {"pending", p.pending}, {"accepted", p.accepted},
                                {"rejected", p.rejected}, {"edited", p.edited}};
}

struct ListQuery {
  std::optional<SuggestionStatus> status;
  std::optional<GenderCategory> category;
  std::optional<std::string> language;
  std::size_t page = 1;  // 1-based
  std::size_t page_size = 50;
};

inline constexpr std::size_t kMaxPageSize = 500;

struct SuggestionPage {
  std::size_t total = 0;  // matching the filters, across all pages
  std::size_t page = 1;
  std::size_t page_size = 0;
  std::vector<PlaceholderSuggestion> items;
};

struct ExportResult {
  std::vector<std::filesystem::path> files;
  std::vector<std::pair<std::string, std::string>> errors;  // pair id, message
  std::size_t applied = 0;
};

class ReviewSession {
 public:
  // Regenerates suggestions for every pair, then replays `decisions_log`.
  // Decisions for unknown suggestions are skipped with a warning.
  ReviewSession(Corpus corpus, Lexicon en_lexicon, Lexicon ja_lexicon, std::filesystem::path decisions_log,
                Scope scope = Scope::GenderedOnly, ParadigmRegistry paradigms = builtin_paradigms())
      : corpus_(std::move(corpus)),
        en_lexicon_(std::move(en_lexicon)),
        ja_lexicon_(std::move(ja_lexicon)),
        paradigms_(std::move(paradigms)),
        log_(std::move(decisions_log)),
        corpus_digest_(pronaudit::corpus_digest(corpus_)) {
    for (std::size_t p = 0; p < corpus_.pairs.size(); ++p) {
      pair_index_.emplace(corpus_.pairs[p].pair_id, p);
      for (auto& s : suggest(corpus_.pairs[p], en_lexicon_, ja_lexicon_, scope, paradigms_)) {
        suggestion_index_.emplace(s.suggestion_id, suggestions_.size());
        suggestions_.push_back(std::move(s));
      }
    }
    LogReplay replay = DecisionLog::read(log_.path());
    warnings_ = std::move(replay.warnings);
    if (!warnings_.empty()) log_.truncate_to(replay.valid_bytes);
    for (const auto& d : replay.decisions) {
      auto it = suggestion_index_.find(d.suggestion_id);
      if (it == suggestion_index_.end()) {
        warnings_.push_back("decision for unknown suggestion " + d.suggestion_id + " skipped");
        continue;
      }
      apply_decision(suggestions_[it->second], d);
    }
    progress_ = count_statuses(suggestions_);
  }

  const std::vector<std::string>& warnings() const { return warnings_; }
  const std::string& corpus_digest() const { return corpus_digest_; }
  const Corpus& corpus() const { return corpus_; }

  Progress progress() const {
    std::shared_lock lock(mutex_);
    return progress_;
  }

  std::vector<PlaceholderSuggestion> snapshot() const {
    std::shared_lock lock(mutex_);
    return suggestions_;
  }

  std::optional<PlaceholderSuggestion> suggestion(const std::string& id) const {
    std::shared_lock lock(mutex_);
    auto it = suggestion_index_.find(id);
    if (it == suggestion_index_.end()) return std::nullopt;
    return suggestions_[it->second];
  }

  const SentencePair* pair(const std::string& pair_id) const {
    auto it = pair_index_.find(pair_id);
    return it == pair_index_.end() ? nullptr : &corpus_.pairs[it->second];
  }

  std::vector<PlaceholderSuggestion> suggestions_for_pair(const std::string& pair_id) const {
    std::shared_lock lock(mutex_);
    std::vector<PlaceholderSuggestion> out;
    for (const auto& s : suggestions_)
      if (s.pair_id == pair_id) out.push_back(s);
    return out;
  }

  // Ordered by corpus pair order, then source before target, then span start.
  SuggestionPage list(const ListQuery& q) const {
    if (q.page == 0) throw ValidationError("page must be >= 1");
    if (q.page_size == 0 || q.page_size > kMaxPageSize)
      throw ValidationError("page_size must be between 1 and " + std::to_string(kMaxPageSize));
    std::shared_lock lock(mutex_);
    SuggestionPage page;
    page.page = q.page;
    page.page_size = q.page_size;
    const std::size_t first = (q.page - 1) * q.page_size;
    for (const auto& s : suggestions_) {
      if (q.status && s.status != *q.status) continue;
      if (q.category && s.category != *q.category) continue;
      if (q.language && s.language != *q.language) continue;
      if (page.total >= first && page.items.size() < q.page_size) page.items.push_back(s);
      ++page.total;
    }
    return page;
  }

  // Write-ahead: the decision reaches the log before memory changes. A
  // decision identical to the current state succeeds without logging.
  PlaceholderSuggestion record(ReviewDecision decision) {
    validate_decision(decision);
    std::unique_lock lock(mutex_);
    auto it = suggestion_index_.find(decision.suggestion_id);
    if (it == suggestion_index_.end()) throw NotFoundError("unknown suggestion " + decision.suggestion_id);
    PlaceholderSuggestion& current = suggestions_[it->second];
    PlaceholderSuggestion next = current;
    if (!apply_decision(next, decision)) return current;
    if (decision.timestamp.empty()) decision.timestamp = utc_timestamp();
    log_.append(decision);
    adjust(current.status, -1);
    adjust(next.status, +1);
    current = std::move(next);
    return current;
  }

  // Writes templated_pairs.tsv, templated_sentences.tsv and export_report.json
  // into `dir`. A pair that cannot be templated is exported unchanged and
  // listed in the report.
  ExportResult export_templated(const std::filesystem::path& dir) const {
    std::shared_lock lock(mutex_);
    ExportResult result;
    Corpus out;
    out.source_language = corpus_.source_language;
    out.target_language = corpus_.target_language;
    nlohmann::ordered_json applied = nlohmann::ordered_json::array();
    nlohmann::ordered_json risks = nlohmann::ordered_json::array();
    std::size_t next = 0;
    for (const auto& pair : corpus_.pairs) {
      std::vector<PlaceholderSuggestion> mine;
      while (next < suggestions_.size() && suggestions_[next].pair_id == pair.pair_id)
        mine.push_back(suggestions_[next++]);
      try {
        TemplatedPair t = pronaudit::apply(pair, mine);
        for (auto& id : t.applied) applied.push_back(id);
        for (auto& id : t.agreement_risk) risks.push_back(id);
        result.applied += t.applied.size();
        out.pairs.push_back(std::move(t.pair));
      } catch (const RewriteError& e) {
        result.errors.emplace_back(pair.pair_id, e.what());
        out.pairs.push_back(pair);
      }
    }

    nlohmann::ordered_json report;
    report["schema_version"] = std::string(kReviewSchema);
    report["corpus_digest"] = corpus_digest_;
    report["pairs"] = out.pairs.size();
    report["progress"] = progress_json(progress_);
    report["applied"] = applied;
    report["agreement_risk"] = risks;
    nlohmann::ordered_json errors = nlohmann::ordered_json::array();
    for (const auto& [id, msg] : result.errors) errors.push_back({{"pair_id", id}, {"error", msg}});
    report["errors"] = errors;

    std::filesystem::create_directories(dir);
    const auto write = [&](const std::string& name, const std::string& bytes) {
      const auto path = dir / name;
      const auto tmp = dir / (name + ".tmp");
      {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        f << bytes;
        if (!f) throw StorageError("cannot write " + tmp.string());
      }
      std::filesystem::rename(tmp, path);
      result.files.push_back(path);
    };
    write("templated_pairs.tsv", write_parallel_tsv(out));
    write("templated_sentences.tsv", write_sentences_tsv(out));
    write("export_report.json", report.dump(2) + "\n");
    return result;
  }

 private:
  void adjust(SuggestionStatus s, int delta) {
    auto bump = [delta](std::size_t& v) { v = static_cast<std::size_t>(static_cast<long long>(v) + delta); };
    switch (s) {
      case SuggestionStatus::Pending: bump(progress_.pending); break;
      case SuggestionStatus::Accepted: bump(progress_.accepted); break;
      case SuggestionStatus::Rejected: bump(progress_.rejected); break;
      case SuggestionStatus::Edited: bump(progress_.edited); break;
    }
  }

  Corpus corpus_;
  Lexicon en_lexicon_;
  Lexicon ja_lexicon_;
  ParadigmRegistry paradigms_;
  DecisionLog log_;
  std::string corpus_digest_;

  mutable std::shared_mutex mutex_;
  std::vector<PlaceholderSuggestion> suggestions_;
  std::unordered_map<std::string, std::size_t> suggestion_index_;
  std::unordered_map<std::string, std::size_t> pair_index_;
  Progress progress_;
  std::vector<std::string> warnings_;
};

}  // namespace pronaudit
