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

// `pronaudit` command line: audit, matrix, stats, tokenize, lexicon, rewrite
// and serve subcommands over the library.
//
// Exit codes: 0 success, 1 usage error, 2 input error, 3 internal error.

#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "httplib.h"
#include "json.hpp"

#include "pronaudit/pronaudit.hpp"
#include "pronaudit/review_http.hpp"

namespace pronaudit::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kInput = 2, kInternal = 3 };

class UsageError : public Error {
 public:
  using Error::Error;
};

struct InputOptions {
  std::string pairs;
  std::string sentences;
  std::string links;
  std::string src_lang = "eng";
  std::string tgt_lang = "jpn";
  std::string lexicon_en = "builtin";
  std::string lexicon_ja = "builtin";
};

inline void add_input_options(CLI::App* cmd, InputOptions& in, bool with_lexicons = true) {
  cmd->add_option("--pairs", in.pairs, "Parallel TSV: `source text<TAB>target text` per line");
  cmd->add_option("--sentences", in.sentences, "Tatoeba sentences export: `id<TAB>lang<TAB>text`");
  cmd->add_option("--links", in.links, "Tatoeba links export: `id<TAB>translation_id`");
  cmd->add_option("--src-lang", in.src_lang, "Source (English side) language code")->capture_default_str();
  cmd->add_option("--tgt-lang", in.tgt_lang, "Target (Japanese side) language code")->capture_default_str();
  if (with_lexicons) {
    cmd->add_option("--lexicon-en", in.lexicon_en, "English lexicon TSV, or `builtin`")->capture_default_str();
    cmd->add_option("--lexicon-ja", in.lexicon_ja, "Japanese lexicon TSV, or `builtin`")->capture_default_str();
  }
}

struct Context {
  std::ostream& out;
  std::ostream& err;

  void warn(const std::string& msg) const { err << "warning: " << msg << '\n'; }
};

inline Corpus load_corpus(const InputOptions& in, const Context& ctx) {
  const bool tsv = !in.pairs.empty();
  const bool tatoeba = !in.sentences.empty() || !in.links.empty();
  if (tsv == tatoeba) throw UsageError("give exactly one input: --pairs, or --sentences with --links");
  if (tsv) {
    TsvParse parsed = parse_parallel_tsv(read_file(in.pairs), in.src_lang, in.tgt_lang);
    if (parsed.skipped > 0)
      ctx.warn(in.pairs + ": skipped " + std::to_string(parsed.skipped) + " malformed line(s)");
    return std::move(parsed.corpus);
  }
  if (in.sentences.empty() || in.links.empty()) throw UsageError("--sentences and --links go together");
  SentenceParse sentences = parse_sentences(read_file(in.sentences));
  if (sentences.skipped > 0)
    ctx.warn(in.sentences + ": skipped " + std::to_string(sentences.skipped) + " malformed record(s)");
  std::vector<Sentence> source;
  std::vector<Sentence> target;
  for (auto& s : sentences.sentences) {
    if (s.language == in.src_lang) source.push_back(std::move(s));
    else if (s.language == in.tgt_lang) target.push_back(std::move(s));
  }
  LinkParse links = parse_links(read_file(in.links));
  if (links.skipped > 0) ctx.warn(in.links + ": skipped " + std::to_string(links.skipped) + " malformed record(s)");
  PairBuild built = build_pairs(source, target, links.links, in.src_lang, in.tgt_lang);
  if (built.dropped > 0)
    ctx.warn(std::to_string(built.dropped) + " link(s) dropped (endpoint absent or not " + in.src_lang + "-" +
             in.tgt_lang + ")");
  return std::move(built.corpus);
}

inline Lexicon load_lexicon_option(const std::string& value, const std::string& language) {
  if (value == "builtin") return builtin_lexicon(language);
  Lexicon lex = load_lexicon(read_file(value), language, "file:" + value);
  if (lex.language() != language)
    throw InputError(value + ": lexicon is for '" + lex.language() + "', expected '" + language + "'");
  return lex;
}

inline nlohmann::ordered_json input_config(const InputOptions& in) {
  nlohmann::ordered_json j;
  if (!in.pairs.empty()) {
    j["input_mode"] = "pairs";
    j["pairs"] = in.pairs;
  } else if (!in.sentences.empty()) {
    j["input_mode"] = "tatoeba";
    j["sentences"] = in.sentences;
    j["links"] = in.links;
  }
  j["src_lang"] = in.src_lang;
  j["tgt_lang"] = in.tgt_lang;
  j["lexicon_en"] = in.lexicon_en;
  j["lexicon_ja"] = in.lexicon_ja;
  return j;
}

inline void write_output(const std::string& path, const std::string& bytes, const Context& ctx) {
  if (path.empty() || path == "-") {
    ctx.out << bytes;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw InputError("cannot write " + path);
  f << bytes;
  if (!f) throw InputError("cannot write " + path);
}

inline ParadigmRegistry load_registry(const std::string& path) {
  ParadigmRegistry reg = builtin_paradigms();
  if (!path.empty()) load_paradigms(read_file(path), reg);
  return reg;
}

inline Scope parse_scope(const std::string& s) {
  auto scope = scope_from_name(s);
  if (!scope) throw UsageError("--scope must be gendered-only or all-pronouns");
  return *scope;
}

// `1=he,彼`, `2=she`, `3=,彼女`: index, English paradigm, Japanese paradigm.
inline Assignment parse_assignments(const std::vector<std::string>& specs) {
  Assignment a;
  for (const auto& spec : specs) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) throw UsageError("--assign expects INDEX=EN[,JA], got '" + spec + "'");
    uint32_t index = 0;
    try {
      const long v = std::stol(spec.substr(0, eq));
      if (v <= 0) throw std::out_of_range("index");
      index = static_cast<uint32_t>(v);
    } catch (const std::exception&) {
      throw UsageError("--assign index must be a positive integer in '" + spec + "'");
    }
    const std::string rest = spec.substr(eq + 1);
    const auto comma = rest.find(',');
    ParadigmChoice c;
    const std::string en = rest.substr(0, comma);
    if (!en.empty()) c.english = en;
    if (comma != std::string::npos && comma + 1 < rest.size()) c.japanese = rest.substr(comma + 1);
    a[index] = c;
  }
  return a;
}

inline std::string format_fixed(double v, int digits) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(digits);
  s << v;
  return s.str();
}

inline void print_tests(const std::vector<BiasTest>& tests, const Context& ctx) {
  for (const auto& t : tests) {
    ctx.out << t.id << "\t" << t.description << "\t";
    if (t.result) {
      ctx.out << "chi2(" << t.result->df << ", N=" << t.result->n << ") = " << format_fixed(t.result->chi2, 1)
              << (t.yates ? " [Yates]" : "") << "\tV = " << format_fixed(t.result->cramers_v, 3);
      if (t.yates) ctx.out << "\tuncorrected chi2 = " << format_fixed(t.result->chi2_uncorrected, 1);
      ctx.out << '\n';
    } else {
      ctx.out << "error: " << t.error << '\n';
    }
  }
}

inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  const Context ctx{out, err};
  CLI::App app{"Pronoun-bias auditor and placeholder rewriter for English-Japanese parallel corpora", "pronaudit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  InputOptions in;
  std::string out_path;
  std::string matrix_path;
  std::size_t workers = 1;
  std::string scope_name = "gendered-only";
  std::string decisions_path;
  std::string paradigms_path;

  auto* audit = app.add_subcommand("audit", "Write the full audit report (JSON)");
  add_input_options(audit, in);
  audit->add_option("--matrix", matrix_path, "Audit an 8x8 confusion matrix TSV instead of a corpus");
  audit->add_option("--out", out_path, "Report path (default: standard output)");
  audit->add_option("--workers", workers, "Classification threads; output does not depend on it")
      ->capture_default_str()
      ->check(CLI::Range(1, 256));

  auto* matrix = app.add_subcommand("matrix", "Print or export the 8x8 confusion matrix TSV");
  add_input_options(matrix, in);
  matrix->add_option("--out", out_path, "Matrix TSV path (default: standard output)");
  matrix->add_option("--workers", workers, "Classification threads")->capture_default_str()->check(CLI::Range(1, 256));

  auto* stats = app.add_subcommand("stats", "Run the chi-square bias tests on a matrix TSV");
  stats->add_option("--matrix", matrix_path, "8x8 confusion matrix TSV")->required();
  stats->add_option("--out", out_path, "Also write the full report (JSON) here");

  auto* tokenize = app.add_subcommand("tokenize", "Dump located pronouns as TSV (pair_id, lang, surface, category, start, end)");
  add_input_options(tokenize, in);
  tokenize->add_option("--out", out_path, "Output path (default: standard output)");

  auto* lexicon = app.add_subcommand("lexicon", "Export or validate pronoun lexicons");
  lexicon->require_subcommand(1);
  std::string lexicon_lang;
  std::string lexicon_file;
  auto* lex_export = lexicon->add_subcommand("export", "Write a built-in lexicon as TSV");
  lex_export->add_option("--lang", lexicon_lang, "eng or jpn")->required();
  lex_export->add_option("--out", out_path, "Output path (default: standard output)");
  auto* lex_validate = lexicon->add_subcommand("validate", "Check a lexicon TSV file");
  lex_validate->add_option("--file", lexicon_file, "Lexicon TSV")->required();
  lex_validate->add_option("--lang", lexicon_lang, "Language when the file has no lang= header");

  auto* rewrite = app.add_subcommand("rewrite", "Placeholder suggestions, templating and expansion");
  rewrite->require_subcommand(1);
  std::vector<std::string> assign_specs;
  auto* rw_suggest = rewrite->add_subcommand("suggest", "Write placeholder suggestions (JSON lines)");
  add_input_options(rw_suggest, in);
  rw_suggest->add_option("--scope", scope_name, "gendered-only or all-pronouns")->capture_default_str();
  rw_suggest->add_option("--paradigms", paradigms_path, "Extra paradigm registry TSV");
  rw_suggest->add_option("--out", out_path, "Output path (default: standard output)");
  auto* rw_apply = rewrite->add_subcommand("apply", "Apply a decisions log and write the templated parallel TSV");
  add_input_options(rw_apply, in);
  rw_apply->add_option("--decisions", decisions_path, "Decisions log (JSON lines)")->required();
  rw_apply->add_option("--scope", scope_name, "gendered-only or all-pronouns")->capture_default_str();
  rw_apply->add_option("--paradigms", paradigms_path, "Extra paradigm registry TSV");
  rw_apply->add_option("--out", out_path, "Output path (default: standard output)");
  auto* rw_expand = rewrite->add_subcommand("expand", "Expand a templated parallel TSV from paradigms");
  rw_expand->add_option("--pairs", in.pairs, "Templated parallel TSV")->required();
  rw_expand->add_option("--src-lang", in.src_lang, "Source language code")->capture_default_str();
  rw_expand->add_option("--tgt-lang", in.tgt_lang, "Target language code")->capture_default_str();
  rw_expand->add_option("--assign", assign_specs, "INDEX=EN_PARADIGM[,JA_PARADIGM], repeatable")->required();
  rw_expand->add_option("--paradigms", paradigms_path, "Extra paradigm registry TSV");
  rw_expand->add_option("--out", out_path, "Output path (default: standard output)");
  auto* rw_roundtrip = rewrite->add_subcommand("roundtrip", "Check suggest/apply/expand restores every pair");
  add_input_options(rw_roundtrip, in);
  rw_roundtrip->add_option("--paradigms", paradigms_path, "Extra paradigm registry TSV");

  auto* serve = app.add_subcommand("serve", "Serve the review queue over HTTP");
  add_input_options(serve, in);
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string export_dir;
  serve->add_option("--decisions", decisions_path, "Decisions log (created if absent)")->required();
  serve->add_option("--scope", scope_name, "gendered-only or all-pronouns")->capture_default_str();
  serve->add_option("--paradigms", paradigms_path, "Extra paradigm registry TSV");
  serve->add_option("--host", host, "Bind address")->capture_default_str();
  serve->add_option("--port", port, "Port")->capture_default_str()->check(CLI::Range(1, 65535));
  serve->add_option("--out", export_dir, "Export directory (default: <decisions dir>/export)");

  std::vector<const char*> argv;
  argv.push_back("pronaudit");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (audit->parsed()) {
      nlohmann::ordered_json config{{"command", "audit"}};
      Report report;
      if (!matrix_path.empty()) {
        if (!in.pairs.empty() || !in.sentences.empty() || !in.links.empty())
          throw UsageError("--matrix excludes --pairs / --sentences / --links");
        config["input_mode"] = "matrix";
        config["matrix"] = matrix_path;
        report = report_from_matrix(parse_matrix_tsv(read_file(matrix_path)));
      } else {
        const Corpus corpus = load_corpus(in, ctx);
        const Lexicon en = load_lexicon_option(in.lexicon_en, in.src_lang);
        const Lexicon ja = load_lexicon_option(in.lexicon_ja, in.tgt_lang);
        const auto inputs = input_config(in);
        for (const auto& [k, v] : inputs.items()) config[k] = v;
        report = audit_report(corpus, en, ja, workers);
      }
      write_output(out_path, render_report(report, config), ctx);
    } else if (matrix->parsed()) {
      const Corpus corpus = load_corpus(in, ctx);
      const auto classifications = classify_corpus(corpus, load_lexicon_option(in.lexicon_en, in.src_lang),
                                                   load_lexicon_option(in.lexicon_ja, in.tgt_lang), workers);
      write_output(out_path, write_matrix_tsv(confusion_matrix(classifications)), ctx);
    } else if (stats->parsed()) {
      const Report report = report_from_matrix(parse_matrix_tsv(read_file(matrix_path)));
      print_tests(report.tests, ctx);
      if (!out_path.empty())
        write_output(out_path, render_report(report, {{"command", "stats"}, {"matrix", matrix_path}}), ctx);
    } else if (tokenize->parsed()) {
      const Corpus corpus = load_corpus(in, ctx);
      const Lexicon en = load_lexicon_option(in.lexicon_en, in.src_lang);
      const Lexicon ja = load_lexicon_option(in.lexicon_ja, in.tgt_lang);
      std::string tsv = "pair_id\tlang\tsurface\tcategory\tstart\tend\n";
      for (const auto& pair : corpus.pairs) {
        const auto emit = [&](const Sentence& s, const Lexicon& lex) {
          for (const auto& o : extract_pronouns(s.text, lex))
            tsv += pair.pair_id + '\t' + s.language + '\t' + o.surface + '\t' + category_letter(o.category) + '\t' +
                   std::to_string(o.start) + '\t' + std::to_string(o.end) + '\n';
        };
        emit(pair.source, en);
        emit(pair.target, ja);
      }
      write_output(out_path, tsv, ctx);
    } else if (lex_export->parsed()) {
      write_output(out_path, serialize_lexicon(builtin_lexicon(lexicon_lang)), ctx);
    } else if (lex_validate->parsed()) {
      const Lexicon lex = load_lexicon(read_file(lexicon_file), lexicon_lang, "file:" + lexicon_file);
      out << "ok\t" << lex.language() << '\t' << lex.size() << " entries\t";
      for (GenderCategory g : kAllCategories) out << category_letter(g) << '=' << lex.surfaces(g).size() << ' ';
      out << "sha256=" << lexicon_digest(lex) << '\n';
    } else if (rw_suggest->parsed() || rw_apply->parsed()) {
      const Corpus corpus = load_corpus(in, ctx);
      const Lexicon en = load_lexicon_option(in.lexicon_en, in.src_lang);
      const Lexicon ja = load_lexicon_option(in.lexicon_ja, in.tgt_lang);
      const Scope scope = parse_scope(scope_name);
      const ParadigmRegistry registry = load_registry(paradigms_path);
      if (rw_suggest->parsed()) {
        std::string lines;
        for (const auto& pair : corpus.pairs)
          for (const auto& s : suggest(pair, en, ja, scope, registry)) lines += suggestion_to_json(s).dump() + "\n";
        write_output(out_path, lines, ctx);
      } else {
        const LogReplay replay = DecisionLog::read(decisions_path);
        for (const auto& w : replay.warnings) ctx.warn(w);
        Corpus templated;
        templated.source_language = corpus.source_language;
        templated.target_language = corpus.target_language;
        for (const auto& pair : corpus.pairs) {
          TemplatedPair t = pronaudit::apply(pair, suggest(pair, en, ja, scope, registry), replay.decisions);
          for (const auto& id : t.agreement_risk) ctx.warn("agreement risk at " + id);
          templated.pairs.push_back(std::move(t.pair));
        }
        write_output(out_path, write_parallel_tsv(templated), ctx);
      }
    } else if (rw_expand->parsed()) {
      const TsvParse parsed = parse_parallel_tsv(read_file(in.pairs), in.src_lang, in.tgt_lang);
      const Assignment assignment = parse_assignments(assign_specs);
      const ParadigmRegistry registry = load_registry(paradigms_path);
      Corpus expanded;
      for (const auto& pair : parsed.corpus.pairs) {
        ExpandedPair e = expand(pair, assignment, registry);
        for (const auto& f : e.agreement_flags)
          ctx.warn("pair " + pair.pair_id + ": verb agreement after " + f + " not adjusted");
        expanded.pairs.push_back(std::move(e.pair));
      }
      write_output(out_path, write_parallel_tsv(expanded), ctx);
    } else if (rw_roundtrip->parsed()) {
      const Corpus corpus = load_corpus(in, ctx);
      const Lexicon en = load_lexicon_option(in.lexicon_en, in.src_lang);
      const Lexicon ja = load_lexicon_option(in.lexicon_ja, in.tgt_lang);
      const ParadigmRegistry registry = load_registry(paradigms_path);
      std::size_t failed = 0;
      for (const auto& pair : corpus.pairs) {
        const RoundtripResult r = roundtrip_check(pair, en, ja, registry);
        out << (r.pass ? "PASS" : "FAIL") << '\t' << pair.pair_id << '\t' << r.out_of_paradigm.size()
            << " out-of-paradigm";
        for (const auto& d : r.differences) out << '\t' << d;
        out << '\n';
        if (!r.pass) ++failed;
      }
      out << "roundtrip: " << (corpus.pairs.size() - failed) << "/" << corpus.pairs.size() << " pass\n";
      if (failed > 0) return kInput;
    } else if (serve->parsed()) {
      const Corpus corpus = load_corpus(in, ctx);
      auto session = std::make_unique<ReviewSession>(
          corpus, load_lexicon_option(in.lexicon_en, in.src_lang), load_lexicon_option(in.lexicon_ja, in.tgt_lang),
          decisions_path, parse_scope(scope_name), load_registry(paradigms_path));
      for (const auto& w : session->warnings()) ctx.warn(w);
      if (export_dir.empty())
        export_dir = (std::filesystem::path(decisions_path).parent_path() / "export").string();
      httplib::Server server;
      register_review_routes(server, *session, export_dir);
      if (!server.bind_to_port(host, port)) throw InputError("cannot bind " + host + ":" + std::to_string(port));
      const Progress p = session->progress();
      err << "serving " << p.total << " suggestions (" << p.pending << " pending) on http://" << host << ":" << port
          << '\n';
      server.listen_after_bind();
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInput;
  } catch (const RewriteError& e) {
    err << "error: " << e.what() << '\n';
    return kInput;
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << '\n';
    return kInternal;
  }
  return kOk;
}

}  // namespace pronaudit::cli
