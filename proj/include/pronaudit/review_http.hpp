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

// HTTP binding of a ReviewSession (JSON bodies, schema-versioned responses).
//
//   GET  /api/v1/health
//   GET  /api/v1/suggestions?status=&category=&lang=&page=&page_size=
//   POST /api/v1/suggestions/{id}/decision   {action, replacement?, reviewer?}
//   GET  /api/v1/progress
//   GET  /api/v1/pairs/{pair_id}
//   POST /api/v1/export

#pragma once

#include <charconv>
#include <filesystem>
#include <string>
#include <utility>

#include "httplib.h"
#include "json.hpp"

#include "pronaudit/error.hpp"
#include "pronaudit/review_service.hpp"

namespace pronaudit {

namespace http_detail {

using json = nlohmann::ordered_json;

inline void reply(httplib::Response& res, int status, json body) {
  json out;
  out["schema_version"] = std::string(kReviewSchema);
  for (auto& [k, v] : body.items()) out[k] = v;
  res.status = status;
  res.set_content(out.dump(), "application/json");
}

inline void reply_error(httplib::Response& res, int status, std::string_view code, const std::string& message) {
  reply(res, status, json{{"error", json{{"code", code}, {"message", message}}}});
}

// Maps library errors onto 400 / 404 / 500.
template <typename Fn>
void guarded(httplib::Response& res, Fn&& fn) {
  try {
    fn();
  } catch (const NotFoundError& e) {
    reply_error(res, 404, "not_found", e.what());
  } catch (const ValidationError& e) {
    reply_error(res, 400, "validation", e.what());
  } catch (const InputError& e) {
    reply_error(res, 400, "validation", e.what());
  } catch (const StorageError& e) {
    reply_error(res, 500, "storage", e.what());
  } catch (const std::exception& e) {
    reply_error(res, 500, "internal", e.what());
  }
}

inline std::size_t parse_positive(const std::string& name, const std::string& value) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size() || v == 0)
    throw ValidationError(name + " must be a positive integer");
  return v;
}

inline ListQuery parse_query(const httplib::Request& req) {
  ListQuery q;
  const auto param = [&](const char* name) -> std::optional<std::string> {
    if (!req.has_param(name)) return std::nullopt;
    std::string v = req.get_param_value(name);
    if (v.empty()) return std::nullopt;
    return v;
  };
  if (auto v = param("status")) {
    q.status = status_from_name(*v);
    if (!q.status) throw ValidationError("invalid status filter '" + *v + "'");
  }
  if (auto v = param("category")) {
    q.category = category_from_letter(*v);
    if (!q.category) throw ValidationError("invalid category filter '" + *v + "' (expected M, F or A)");
  }
  if (auto v = param("lang")) {
    if (*v != "eng" && *v != "jpn") throw ValidationError("invalid lang filter '" + *v + "' (expected eng or jpn)");
    q.language = *v;
  }
  if (auto v = param("page")) q.page = parse_positive("page", *v);
  if (auto v = param("page_size")) q.page_size = parse_positive("page_size", *v);
  return q;
}

inline json sentence_json(const Sentence& s) {
  return json{{"id", s.id}, {"language", s.language}, {"text", s.text}};
}

inline json pair_json(const SentencePair& p) {
  return json{{"pair_id", p.pair_id}, {"source", sentence_json(p.source)}, {"target", sentence_json(p.target)}};
}

inline json item_json(const ReviewSession& session, const PlaceholderSuggestion& s) {
  json j = suggestion_to_json(s);
  if (const SentencePair* p = session.pair(s.pair_id)) j["pair"] = pair_json(*p);
  j["highlight"] = json{{"language", s.language}, {"start", s.start}, {"end", s.end}};
  return j;
}

}  // namespace http_detail

// `export_dir` receives the files written by POST /api/v1/export.
inline void register_review_routes(httplib::Server& server, ReviewSession& session,
                                   std::filesystem::path export_dir) {
  using http_detail::json;
  using http_detail::reply;

  server.Get("/api/v1/health", [&session](const httplib::Request&, httplib::Response& res) {
    reply(res, 200, json{{"status", "ok"}, {"corpus_digest", session.corpus_digest()},
                         {"suggestions", session.progress().total}});
  });

  server.Get("/api/v1/progress", [&session](const httplib::Request&, httplib::Response& res) {
    reply(res, 200, json{{"progress", progress_json(session.progress())}});
  });

  server.Get("/api/v1/suggestions", [&session](const httplib::Request& req, httplib::Response& res) {
    http_detail::guarded(res, [&] {
      const SuggestionPage page = session.list(http_detail::parse_query(req));
      json items = json::array();
      for (const auto& s : page.items) items.push_back(http_detail::item_json(session, s));
      reply(res, 200, json{{"total", page.total}, {"page", page.page}, {"page_size", page.page_size},
                           {"items", items}});
    });
  });

  server.Post(R"(/api/v1/suggestions/([^/]+)/decision)",
              [&session](const httplib::Request& req, httplib::Response& res) {
                http_detail::guarded(res, [&] {
                  json body;
                  try {
                    body = json::parse(req.body);
                  } catch (const json::parse_error&) {
                    throw ValidationError("request body is not valid JSON");
                  }
                  if (!body.is_object()) throw ValidationError("request body must be a JSON object");
                  for (const auto& [key, value] : body.items())
                    if (key != "action" && key != "replacement" && key != "reviewer")
                      throw ValidationError("unexpected field '" + key + "'");
                  if (!body.contains("action") || !body["action"].is_string())
                    throw ValidationError("action is required");
                  ReviewDecision d;
                  d.suggestion_id = req.matches[1];
                  const auto action = action_from_name(body["action"].get<std::string>());
                  if (!action) throw ValidationError("unknown action '" + body["action"].get<std::string>() + "'");
                  d.action = *action;
                  if (body.contains("replacement") && !body["replacement"].is_null()) {
                    if (!body["replacement"].is_string()) throw ValidationError("replacement must be a string");
                    d.replacement = body["replacement"].get<std::string>();
                  }
                  if (body.contains("reviewer") && !body["reviewer"].is_null()) {
                    if (!body["reviewer"].is_string()) throw ValidationError("reviewer must be a string");
                    d.reviewer = body["reviewer"].get<std::string>();
                  }
                  if (!session.suggestion(d.suggestion_id))
                    throw NotFoundError("unknown suggestion " + d.suggestion_id);
                  const PlaceholderSuggestion updated = session.record(std::move(d));
                  reply(res, 200, json{{"suggestion", http_detail::item_json(session, updated)},
                                       {"progress", progress_json(session.progress())}});
                });
              });

  server.Get(R"(/api/v1/pairs/([^/]+))", [&session](const httplib::Request& req, httplib::Response& res) {
    http_detail::guarded(res, [&] {
      const std::string id = req.matches[1];
      const SentencePair* p = session.pair(id);
      if (p == nullptr) throw NotFoundError("unknown pair " + id);
      json suggestions = json::array();
      for (const auto& s : session.suggestions_for_pair(id)) suggestions.push_back(suggestion_to_json(s));
      reply(res, 200, json{{"pair", http_detail::pair_json(*p)}, {"suggestions", suggestions}});
    });
  });

  server.Post("/api/v1/export", [&session, export_dir](const httplib::Request&, httplib::Response& res) {
    http_detail::guarded(res, [&] {
      ExportResult r;
      try {
        r = session.export_templated(export_dir);
      } catch (const std::filesystem::filesystem_error& e) {
        throw StorageError(e.what());
      }
      json files = json::array();
      for (const auto& f : r.files) files.push_back(f.string());
      json errors = json::array();
      for (const auto& [id, msg] : r.errors) errors.push_back(json{{"pair_id", id}, {"error", msg}});
      reply(res, 200, json{{"files", files}, {"applied", r.applied}, {"errors", errors}});
    });
  });
}

}  // namespace pronaudit
