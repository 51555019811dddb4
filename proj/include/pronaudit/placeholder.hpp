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

// Pronoun placeholder tokens (`[p]`, `[p2:obj]`, `[p1:subj:alex]`) and the
// pronoun paradigms they expand from.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pronaudit/corpus.hpp"
#include "pronaudit/error.hpp"
#include "pronaudit/lexicon.hpp"
#include "pronaudit/unicode.hpp"

namespace pronaudit {

enum class Role : uint8_t { Subject = 0, Object = 1, Possessive = 2, Reflexive = 3 };

inline constexpr std::array<Role, 4> kAllRoles = {Role::Subject, Role::Object, Role::Possessive,
                                                  Role::Reflexive};

inline std::string_view role_name(Role r) {
  switch (r) {
    case Role::Subject: return "subj";
    case Role::Object: return "obj";
    case Role::Possessive: return "poss";
    case Role::Reflexive: return "refl";
  }
  return "?";
}

inline std::optional<Role> role_from_name(std::string_view s) {
  for (Role r : kAllRoles)
    if (role_name(r) == s) return r;
  return std::nullopt;
}

// [p] | [p<index>] | [p<index>:<role>] | [p<index>:<role>:<list_id>]
// `[p]` is `[p1]`; a list id is only expressible after a role.
struct PlaceholderToken {
  uint32_t index = 1;
  std::optional<Role> role;
  std::optional<std::string> list_id;

  friend bool operator==(const PlaceholderToken&, const PlaceholderToken&) = default;
};

inline bool valid_list_id(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '_' || c == '-' || c == '.';
    if (!ok) return false;
  }
  return true;
}

inline std::optional<PlaceholderToken> parse_placeholder(std::string_view text) {
  if (text.size() < 3 || text.substr(0, 2) != "[p" || text.back() != ']') return std::nullopt;
  std::string_view body = text.substr(2, text.size() - 3);
  PlaceholderToken tok;
  if (body.empty()) return tok;

  const std::size_t colon = body.find(':');
  const std::string_view digits = body.substr(0, colon);
  if (digits.empty() || digits.size() > 9 || digits.front() == '0') return std::nullopt;
  uint32_t index = 0;
  for (char c : digits) {
    if (c < '0' || c > '9') return std::nullopt;
    index = index * 10 + static_cast<uint32_t>(c - '0');
  }
  tok.index = index;
  if (colon == std::string_view::npos) return tok;

  std::string_view rest = body.substr(colon + 1);
  const std::size_t colon2 = rest.find(':');
  const auto role = role_from_name(rest.substr(0, colon2));
  if (!role) return std::nullopt;
  tok.role = role;
  if (colon2 == std::string_view::npos) return tok;
  const std::string_view list = rest.substr(colon2 + 1);
  if (!valid_list_id(list)) return std::nullopt;
  tok.list_id = std::string(list);
  return tok;
}

inline std::string render_placeholder(const PlaceholderToken& tok) {
  std::string out = "[p" + std::to_string(tok.index);
  if (tok.role) {
    out += ':';
    out += role_name(*tok.role);
    if (tok.list_id) {
      out += ':';
      out += *tok.list_id;
    }
  }
  out += ']';
  return out;
}

// A pronoun's form set. English paradigms define all four roles; Japanese
// ones a single base form.
struct Paradigm {
  std::string id;
  std::string language;
  GenderCategory category = GenderCategory::Ambiguous;
  std::array<std::string, 4> forms{};  // English, indexed by Role
  std::string base;                    // Japanese
  std::vector<std::string> lists;      // list ids this paradigm satisfies

  bool is_english() const { return language == "eng"; }

  std::optional<std::string> form(Role r) const {
    const auto& f = forms[static_cast<std::size_t>(r)];
    if (f.empty()) return std::nullopt;
    return f;
  }

  bool satisfies(std::string_view list_id) const {
    if (id == list_id) return true;
    for (const auto& l : lists)
      if (l == list_id) return true;
    return false;
  }
};

struct ParadigmMatch {
  const Paradigm* paradigm = nullptr;
  std::optional<Role> role;  // English only
};

class ParadigmRegistry {
 public:
  void add(Paradigm p) {
    if (p.id.empty()) throw InputError("paradigm id must not be empty");
    if (find(p.id) != nullptr) throw InputError("duplicate paradigm id '" + p.id + "'");
    if (p.is_english()) {
      for (Role r : kAllRoles)
        if (!p.form(r))
          throw InputError("English paradigm '" + p.id + "' lacks the " + std::string(role_name(r)) + " form");
    } else if (p.base.empty()) {
      throw InputError("paradigm '" + p.id + "' lacks a base form");
    }
    paradigms_.push_back(std::move(p));
  }

  const Paradigm* find(std::string_view id) const {
    for (const auto& p : paradigms_)
      if (p.id == id) return &p;
    return nullptr;
  }

  // First registered paradigm containing `surface`; English compares
  // case-insensitively and takes the first role in subj, obj, poss, refl order.
  ParadigmMatch match(std::string_view language, std::string_view surface) const {
    const bool english = language == "eng";
    const std::u32string key = english ? unicode::fold_case(unicode::nfc(unicode::decode(surface)))
                                       : unicode::nfc(unicode::decode(surface));
    for (const auto& p : paradigms_) {
      if (p.language != language) continue;
      if (english) {
        for (Role r : kAllRoles)
          if (unicode::fold_case(unicode::decode(p.forms[static_cast<std::size_t>(r)])) == key)
            return ParadigmMatch{&p, r};
      } else if (unicode::decode(p.base) == key) {
        return ParadigmMatch{&p, std::nullopt};
      }
    }
    return {};
  }

  const std::vector<Paradigm>& paradigms() const { return paradigms_; }

 private:
  std::vector<Paradigm> paradigms_;
};

inline ParadigmRegistry builtin_paradigms() {
  using G = GenderCategory;
  ParadigmRegistry reg;
  reg.add(Paradigm{"he", "eng", G::Masculine, {"he", "him", "his", "himself"}, "", {}});
  reg.add(Paradigm{"she", "eng", G::Feminine, {"she", "her", "her", "herself"}, "", {}});
  reg.add(Paradigm{"they", "eng", G::Ambiguous, {"they", "them", "their", "themselves"}, "", {}});
  reg.add(Paradigm{"彼", "jpn", G::Masculine, {}, "彼", {}});
  reg.add(Paradigm{"彼女", "jpn", G::Feminine, {}, "彼女", {}});
  reg.add(Paradigm{"あの人", "jpn", G::Ambiguous, {}, "あの人", {}});
  return reg;
}

// Registry file: `id<TAB>lang<TAB>M|F|A<TAB>forms<TAB>lists`, where forms is
// `subj,obj,poss,refl` for English or the base form otherwise, and lists is a
// comma-separated list of list ids (may be empty). `#` starts a comment.
inline void load_paradigms(std::string_view bytes, ParadigmRegistry& into) {
  unicode::validate_utf8(bytes);
  detail::for_each_line(bytes, [&](std::size_t line_no, std::string_view line) {
    if (line.empty() || line.front() == '#') return;
    const auto where = "paradigm line " + std::to_string(line_no) + ": ";
    auto fields = detail::split_tabs(line);
    if (fields.size() == 4) fields.emplace_back();
    if (fields.size() != 5) throw InputError(where + "expected id, lang, category, forms, lists");
    const auto category = category_from_letter(fields[2]);
    if (!category) throw InputError(where + "unknown category '" + std::string(fields[2]) + "'");
    Paradigm p;
    p.id = std::string(fields[0]);
    p.language = std::string(fields[1]);
    p.category = *category;
    if (p.is_english()) {
      const auto parts = detail::split_on(fields[3], ',');
      if (parts.size() != 4) throw InputError(where + "English forms must be subj,obj,poss,refl");
      for (std::size_t i = 0; i < 4; ++i) p.forms[i] = unicode::nfc(std::string_view(parts[i]));
    } else {
      p.base = unicode::nfc(fields[3]);
    }
    if (!fields[4].empty()) {
      for (auto id : detail::split_on(fields[4], ',')) {
        if (!valid_list_id(id)) throw InputError(where + "invalid list id '" + std::string(id) + "'");
        p.lists.emplace_back(id);
      }
    }
    try {
      into.add(std::move(p));
    } catch (const InputError& e) {
      throw InputError(where + e.what());
    }
  });
}

}  // namespace pronaudit
