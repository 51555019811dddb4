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

// Thin UTF-8 / UTF-32 helpers over ICU. All character offsets in the library
// are code point offsets.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include "pronaudit/error.hpp"

namespace pronaudit::unicode {

// Throws EncodingError naming the first ill-formed byte.
inline void validate_utf8(std::string_view bytes) {
  const auto* s = reinterpret_cast<const uint8_t*>(bytes.data());
  const auto length = static_cast<int64_t>(bytes.size());
  int64_t i = 0;
  while (i < length) {
    const int64_t start = i;
    UChar32 c;
    U8_NEXT(s, i, length, c);
    if (c < 0) throw EncodingError(static_cast<std::size_t>(start));
  }
}

inline std::u32string decode(std::string_view bytes) {
  std::u32string out;
  out.reserve(bytes.size());
  const auto* s = reinterpret_cast<const uint8_t*>(bytes.data());
  const auto length = static_cast<int64_t>(bytes.size());
  int64_t i = 0;
  while (i < length) {
    const int64_t start = i;
    UChar32 c;
    U8_NEXT(s, i, length, c);
    if (c < 0) throw EncodingError(static_cast<std::size_t>(start));
    out.push_back(static_cast<char32_t>(c));
  }
  return out;
}

inline void append_utf8(std::string& out, char32_t c) {
  uint8_t buf[U8_MAX_LENGTH];
  int32_t n = 0;
  UBool error = false;
  U8_APPEND(buf, n, U8_MAX_LENGTH, static_cast<UChar32>(c), error);
  if (error) throw InputError("cannot encode code point " + std::to_string(c));
  out.append(reinterpret_cast<const char*>(buf), static_cast<std::size_t>(n));
}

inline std::string encode(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t c : text) append_utf8(out, c);
  return out;
}

namespace detail {

inline icu::UnicodeString to_icu(std::u32string_view text) {
  return icu::UnicodeString::fromUTF32(reinterpret_cast<const UChar32*>(text.data()),
                                       static_cast<int32_t>(text.size()));
}

inline std::u32string from_icu(const icu::UnicodeString& s) {
  UErrorCode status = U_ZERO_ERROR;
  const int32_t n = s.countChar32();
  std::u32string out(static_cast<std::size_t>(n), U'\0');
  s.toUTF32(reinterpret_cast<UChar32*>(out.data()), n, status);
  if (U_FAILURE(status)) throw Error("UTF-32 conversion failed");
  return out;
}

inline const icu::Normalizer2& nfc_instance() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status) || nfc == nullptr) throw Error("ICU NFC normalizer unavailable");
  return *nfc;
}

}  // namespace detail

inline std::u32string nfc(std::u32string_view text) {
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString out = detail::nfc_instance().normalize(detail::to_icu(text), status);
  if (U_FAILURE(status)) throw Error("NFC normalization failed");
  return detail::from_icu(out);
}

inline std::string nfc(std::string_view utf8) { return encode(nfc(decode(utf8))); }

inline bool is_nfc(std::u32string_view text) {
  UErrorCode status = U_ZERO_ERROR;
  const bool yes = detail::nfc_instance().isNormalized(detail::to_icu(text), status);
  return U_SUCCESS(status) && yes;
}

// True when NFC never merges `c` with anything before it.
inline bool nfc_boundary_before(char32_t c) {
  return detail::nfc_instance().hasBoundaryBefore(static_cast<UChar32>(c));
}

// Full (multi-character) case folding.
inline std::u32string fold_case(std::u32string_view text) {
  icu::UnicodeString s = detail::to_icu(text);
  s.foldCase(U_FOLD_CASE_DEFAULT);
  return detail::from_icu(s);
}

inline std::u32string to_upper(std::u32string_view text) {
  icu::UnicodeString s = detail::to_icu(text);
  s.toUpper(icu::Locale::getRoot());
  return detail::from_icu(s);
}

inline char32_t to_title(char32_t c) { return static_cast<char32_t>(u_totitle(static_cast<UChar32>(c))); }

inline bool is_letter(char32_t c) { return u_isalpha(static_cast<UChar32>(c)) != 0; }

inline bool is_white_space(char32_t c) { return u_isUWhiteSpace(static_cast<UChar32>(c)) != 0; }

inline bool is_apostrophe(char32_t c) { return c == U'\'' || c == U'’'; }

inline std::size_t length(std::string_view utf8) { return decode(utf8).size(); }

}  // namespace pronaudit::unicode
