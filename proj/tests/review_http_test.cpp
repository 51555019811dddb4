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

#include <thread>

#include "httplib.h"
#include "pronaudit/review_http.hpp"
#include "support.hpp"

namespace pronaudit {
namespace {

class ReviewHttpTest : public ::testing::Test {
 protected:
  void SetUp() override {
    session = std::make_unique<ReviewSession>(testing_support::desk_corpus(), builtin_lexicon("eng"),
                                              builtin_lexicon("jpn"), dir / "decisions.jsonl");
    register_review_routes(server, *session, dir / "export");
    port = server.bind_to_any_port("127.0.0.1");
    ASSERT_GT(port, 0);
    thread = std::thread([this] { server.listen_after_bind(); });
    server.wait_until_ready();
    client = std::make_unique<httplib::Client>("127.0.0.1", port);
  }
  void TearDown() override {
    server.stop();
    if (thread.joinable()) thread.join();
  }

  json get(const std::string& path, int want_status = 200) {
    auto res = client->Get(path);
    EXPECT_TRUE(res) << path;
    if (!res) return json();
    EXPECT_EQ(res->status, want_status) << path << ": " << res->body;
    const json j = json::parse(res->body);
    EXPECT_EQ(j["schema_version"], "pronaudit.review/1");
    return j;
  }

  json post(const std::string& path, const std::string& body, int want_status = 200) {
    auto res = client->Post(path, body, "application/json");
    EXPECT_TRUE(res) << path;
    if (!res) return json();
    EXPECT_EQ(res->status, want_status) << path << ": " << res->body;
    const json j = json::parse(res->body);
    EXPECT_EQ(j["schema_version"], "pronaudit.review/1");
    return j;
  }

  testing_support::ScratchDir dir;
  std::unique_ptr<ReviewSession> session;
  httplib::Server server;
  std::thread thread;
  int port = 0;
  std::unique_ptr<httplib::Client> client;
};

TEST_F(ReviewHttpTest, HealthAndProgress) {
  const json h = get("/api/v1/health");
  EXPECT_EQ(h["status"], "ok");
  EXPECT_EQ(h["corpus_digest"], session->corpus_digest());
  const json p = get("/api/v1/progress");
  EXPECT_EQ(p["progress"]["pending"], p["progress"]["total"]);
}

TEST_F(ReviewHttpTest, ListsWithFiltersAndPaging) {
  const json all = get("/api/v1/suggestions?page_size=3");
  EXPECT_EQ(all["items"].size(), 3u);
  EXPECT_EQ(all["total"].get<std::size_t>(), session->progress().total);
  EXPECT_TRUE(all["items"][0].contains("pair"));
  EXPECT_TRUE(all["items"][0].contains("highlight"));
  const json fem = get("/api/v1/suggestions?category=F&lang=eng");
  for (const auto& item : fem["items"]) EXPECT_EQ(item["language"], "eng");
  get("/api/v1/suggestions?page=0", 400);
  get("/api/v1/suggestions?page_size=501", 400);
  get("/api/v1/suggestions?status=maybe", 400);
  get("/api/v1/suggestions?category=X", 400);
}

TEST_F(ReviewHttpTest, RecordsDecisions) {
  const std::string id = session->snapshot()[0].suggestion_id;
  const json r = post("/api/v1/suggestions/" + id + "/decision", R"({"action":"accept","reviewer":"kim"})");
  EXPECT_EQ(r["suggestion"]["status"], "accepted");
  EXPECT_EQ(r["progress"]["accepted"], 1);
  EXPECT_EQ(DecisionLog::read(dir / "decisions.jsonl").decisions.size(), 1u);

  const json e = post("/api/v1/suggestions/" + id + "/decision", R"({"action":"edit","replacement":"[p4:obj]"})");
  EXPECT_EQ(e["suggestion"]["status"], "edited");
}

TEST_F(ReviewHttpTest, DecisionErrors) {
  const std::string id = session->snapshot()[0].suggestion_id;
  const json missing = post("/api/v1/suggestions/nope/decision", R"({"action":"accept"})", 404);
  EXPECT_EQ(missing["error"]["code"], "not_found");
  const json bad = post("/api/v1/suggestions/" + id + "/decision", R"({"action":"edit","replacement":"[p0]"})", 400);
  EXPECT_EQ(bad["error"]["code"], "validation");
  post("/api/v1/suggestions/" + id + "/decision", "not json", 400);
  post("/api/v1/suggestions/" + id + "/decision", R"({"action":"accept","timestamp":"x"})", 400);
  post("/api/v1/suggestions/" + id + "/decision", R"({"action":"approve"})", 400);
  EXPECT_FALSE(std::filesystem::exists(dir / "decisions.jsonl"));
}

TEST_F(ReviewHttpTest, PairView) {
  const json p = get("/api/v1/pairs/4");
  EXPECT_EQ(p["pair"]["source"]["text"], "He said his idea.");
  EXPECT_EQ(p["suggestions"].size(), 3u);
  get("/api/v1/pairs/999", 404);
}

TEST_F(ReviewHttpTest, ExportWritesFiles) {
  const json r = post("/api/v1/export", "");
  EXPECT_EQ(r["files"].size(), 3u);
  EXPECT_TRUE(std::filesystem::exists(dir / "export" / "templated_pairs.tsv"));
}

}  // namespace
}  // namespace pronaudit
