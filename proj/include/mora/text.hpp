// Copyright 2026 The Mora Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// UTF-8 helpers for the Malagasy lexical alphabet: NFC normalization,
// lowercasing and the stress-mark table.

#pragma once

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace mora::text {

inline std::u32string decode(std::string_view utf8) {
  std::u32string out;
  out.reserve(utf8.size());
  const auto* s = reinterpret_cast<const uint8_t*>(utf8.data());
  int32_t i = 0;
  const auto length = static_cast<int32_t>(utf8.size());
  while (i < length) {
    UChar32 c;
    U8_NEXT(s, i, length, c);
    out.push_back(c < 0 ? U'�' : static_cast<char32_t>(c));
  }
  return out;
}

inline std::string encode(std::u32string_view code_points) {
  std::string out;
  out.reserve(code_points.size() * 2);
  for (char32_t c : code_points) {
    uint8_t buf[U8_MAX_LENGTH];
    int32_t n = 0;
    U8_APPEND_UNSAFE(buf, n, static_cast<UChar32>(c));
    out.append(reinterpret_cast<const char*>(buf), static_cast<std::size_t>(n));
  }
  return out;
}

inline std::size_t length(std::string_view utf8) { return decode(utf8).size(); }

inline std::string nfc(std::string_view utf8) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* normalizer = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw std::runtime_error("ICU NFC normalizer unavailable");
  const auto source = icu::UnicodeString::fromUTF8(icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
  icu::UnicodeString normalized = normalizer->normalize(source, status);
  if (U_FAILURE(status)) throw std::runtime_error("NFC normalization failed");
  std::string out;
  normalized.toUTF8String(out);
  return out;
}

inline std::string lowercase(std::string_view utf8) {
  auto s = icu::UnicodeString::fromUTF8(icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
  s.toLower(icu::Locale::getRoot());
  std::string out;
  s.toUTF8String(out);
  return out;
}

namespace detail {

// (stressed, plain) pairs, grave then acute for each vowel.
inline constexpr std::array<std::pair<char32_t, char32_t>, 10> kStressTable{{
    {U'à', U'a'}, {U'á', U'a'},
    {U'è', U'e'}, {U'é', U'e'},
    {U'ì', U'i'}, {U'í', U'i'},
    {U'ò', U'o'}, {U'ó', U'o'},
    {U'ỳ', U'y'}, {U'ý', U'y'},
}};

}  // namespace detail

/// Plain counterpart of a stressed vowel, or the character itself.
constexpr char32_t unstressed(char32_t c) {
  for (auto [stressed, plain] : detail::kStressTable)
    if (stressed == c) return plain;
  return c;
}

constexpr bool is_stressed(char32_t c) { return unstressed(c) != c; }

constexpr bool is_vowel(char32_t c) {
  switch (unstressed(c)) {
    case U'a': case U'e': case U'i': case U'o': case U'y':
      return true;
    default:
      return false;
  }
}

/// Acute-accented form of a plain vowel.
constexpr char32_t with_acute(char32_t plain) {
  switch (plain) {
    case U'a': return U'á';
    case U'e': return U'é';
    case U'i': return U'í';
    case U'o': return U'ó';
    case U'y': return U'ý';
    default: return plain;
  }
}

inline std::u32string strip_stress(std::u32string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](char32_t c) { return unstressed(c); });
  return s;
}

inline std::size_t count_stressed(std::u32string_view s) {
  return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char32_t c) { return is_stressed(c); }));
}

}  // namespace mora::text
