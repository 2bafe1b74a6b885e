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

// DELA-style dictionaries of Malagasy simple verbs:
//
//   root dictionary        lemma,V<stem class>+<affix class>+<group>
//   allomorph dictionary   form,lemma.V+<affix class>+<group>+<tag>
//   invariable words       form,POS(NV)[+feature...]
//
// Input is NFC-normalized, a single space after the comma is tolerated and
// lines starting with '#' are comments. Serialization is canonical: no
// space after the comma.

#pragma once

#include "mora/errors.hpp"
#include "mora/text.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mora::lexicon {

enum class Group { kGc1, kGc2, kGc3 };

inline std::string to_string(Group g) {
  switch (g) {
    case Group::kGc1: return "gc1";
    case Group::kGc2: return "gc2";
    case Group::kGc3: return "gc3";
  }
  return "?";
}

inline std::optional<Group> parse_group(std::string_view s) {
  if (s == "gc1") return Group::kGc1;
  if (s == "gc2") return Group::kGc2;
  if (s == "gc3") return Group::kGc3;
  return std::nullopt;
}

/// Suffix-compatibility tag of an allomorph: which suffixes may follow it.
enum class CompatTag { kZero, kAna, kIna, kA, kImprt };

inline constexpr std::array<CompatTag, 5> kAllCompatTags{CompatTag::kZero, CompatTag::kAna, CompatTag::kIna,
                                                          CompatTag::kA, CompatTag::kImprt};

inline std::string_view to_string(CompatTag t) {
  switch (t) {
    case CompatTag::kZero: return "0";
    case CompatTag::kAna: return "ana";
    case CompatTag::kIna: return "ina";
    case CompatTag::kA: return "a";
    case CompatTag::kImprt: return "imprt";
  }
  return "?";
}

inline std::optional<CompatTag> parse_compat_tag(std::string_view s) {
  for (CompatTag t : kAllCompatTags)
    if (to_string(t) == s) return t;
  return std::nullopt;
}

/// Final syllable that is part of the root, not a suffix.
enum class Ending { kNone = 0, kKa = 1, kTra = 2, kNa = 3 };

/// Stem-class code, e.g. "3iv": ending digit, -ina acceptance letter, then
/// the contact phenomena kept as an opaque residue.
struct StemClass {
  std::string raw;
  Ending ending = Ending::kNone;
  bool ina_accepting = false;
  std::string phenomena;

  static StemClass parse(std::string_view code) {
    if (code.size() < 2) throw ParseError("stem class '" + std::string(code) + "' is shorter than two characters");
    if (code[0] < '0' || code[0] > '3')
      throw ParseError("stem class '" + std::string(code) + "' must start with an ending digit 0-3");
    if (code[1] != 'i' && code[1] != 'a')
      throw ParseError("stem class '" + std::string(code) + "' must have 'i' or 'a' as second character");
    return {std::string(code), static_cast<Ending>(code[0] - '0'), code[1] == 'i', std::string(code.substr(2))};
  }

  std::string serialize() const {
    return std::string(1, static_cast<char>('0' + static_cast<int>(ending))) + (ina_accepting ? "i" : "a") + phenomena;
  }

  friend bool operator==(const StemClass& a, const StemClass& b) { return a.raw == b.raw; }
};

/// Affix-class code. Only the leading field (imperative with -a) is decoded;
/// the rest is an opaque key into the graph registry.
struct AffixClass {
  std::string raw;
  bool field1_imperative_a = false;

  static AffixClass parse(std::string_view code) {
    if (code.empty()) throw ParseError("empty affix class");
    return {std::string(code), code.front() == 'a'};
  }

  friend bool operator==(const AffixClass& a, const AffixClass& b) { return a.raw == b.raw; }
};

struct DictEntry {
  std::string lemma;
  std::string pos = "V";
  StemClass stem_class;
  AffixClass affix_class;
  Group group = Group::kGc1;

  friend bool operator==(const DictEntry& a, const DictEntry& b) {
    return a.lemma == b.lemma && a.pos == b.pos && a.stem_class == b.stem_class && a.affix_class == b.affix_class &&
           a.group == b.group;
  }
};

/// Stress marks mapped to plain vowels after NFC composition.
inline std::string strip_stress(std::string_view form) {
  return text::encode(text::strip_stress(text::decode(text::nfc(form))));
}

struct AllomorphEntry {
  std::string form;
  std::string surface_key;  // strip_stress(form)
  std::string lemma;
  AffixClass affix_class;
  Group group = Group::kGc1;
  CompatTag compat_tag = CompatTag::kZero;

  static AllomorphEntry make(std::string form, std::string lemma, AffixClass affix_class, Group group, CompatTag tag) {
    std::string key = strip_stress(form);
    return {std::move(form), std::move(key), std::move(lemma), std::move(affix_class), group, tag};
  }

  friend bool operator==(const AllomorphEntry& a, const AllomorphEntry& b) {
    return a.form == b.form && a.lemma == b.lemma && a.affix_class == b.affix_class && a.group == b.group &&
           a.compat_tag == b.compat_tag;
  }
};

// Hooks for fst::RootCandidate.
inline std::string_view root_tag(const AllomorphEntry& e) { return to_string(e.compat_tag); }
inline std::string_view root_surface(const AllomorphEntry& e) { return e.surface_key; }

struct InvariableEntry {
  std::string form;
  std::string pos;                 // PRO, CONJC, DET, ART, ...
  std::string qualifier = "NV";    // parenthesized marker after the POS, may be empty
  std::vector<std::string> features;

  /// Value of a "key:value" feature, or nullopt.
  std::optional<std::string> feature(std::string_view key) const {
    for (const auto& f : features)
      if (f.size() > key.size() && f.compare(0, key.size(), key) == 0 && f[key.size()] == ':')
        return f.substr(key.size() + 1);
    return std::nullopt;
  }

  friend bool operator==(const InvariableEntry&, const InvariableEntry&) = default;
};

namespace detail {

inline std::string_view trim_line_end(std::string_view line) {
  while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.remove_suffix(1);
  return line;
}

/// Splits at the first comma not preceded by a backslash.
inline std::pair<std::string, std::string_view> split_entry(std::string_view line, std::size_t line_no) {
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '\\') {
      ++i;
      continue;
    }
    if (line[i] == ',') {
      std::string left;
      for (std::size_t j = 0; j < i; ++j) {
        if (line[j] == '\\' && j + 1 < i) ++j;
        left += line[j];
      }
      std::string_view right = line.substr(i + 1);
      if (!right.empty() && right.front() == ' ') right.remove_prefix(1);
      return {left, right};
    }
  }
  throw ParseError("missing comma", line_no, line.size() + 1);
}

inline std::vector<std::string_view> split_plus(std::string_view s) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t p = s.find('+', start);
    parts.push_back(s.substr(start, p == std::string_view::npos ? std::string_view::npos : p - start));
    if (p == std::string_view::npos) break;
    start = p + 1;
  }
  return parts;
}

inline bool is_lexical_char(char32_t c) { return (c >= U'a' && c <= U'z') || text::is_stressed(c); }

inline void check_lexical(const std::string& word, std::string_view what, std::size_t line_no) {
  if (word.empty()) throw ParseError("empty " + std::string(what), line_no, 1);
  const auto cps = text::decode(word);
  for (std::size_t i = 0; i < cps.size(); ++i)
    if (!is_lexical_char(cps[i]))
      throw ParseError(std::string(what) + " '" + word + "' contains a character outside the lexical alphabet", line_no,
                       i + 1);
}

inline Group group_or_throw(std::string_view s, std::size_t line_no, std::size_t column) {
  if (auto g = parse_group(s)) return *g;
  throw ParseError("unknown conjugation group '" + std::string(s) + "'", line_no, column);
}

inline std::size_t column_of(std::string_view line, std::string_view part) {
  return static_cast<std::size_t>(part.data() - line.data()) + 1;
}

}  // namespace detail

/// Parses one root-dictionary line, e.g. "àndro,V0av(1)+a1ps20vAy+gc1".
inline DictEntry parse_dema_vs_line(std::string_view raw_line, std::size_t line_no = 0) {
  const std::string normalized = text::nfc(detail::trim_line_end(raw_line));
  const std::string_view line = normalized;
  if (line.empty()) throw ParseError("empty line", line_no, 1);
  auto [lemma, codes] = detail::split_entry(line, line_no);
  detail::check_lexical(lemma, "lemma", line_no);
  if (codes.empty() || codes.front() != 'V')
    throw ParseError("part of speech must be V", line_no, detail::column_of(line, codes));
  const auto fields = detail::split_plus(codes.substr(1));
  if (fields.size() != 3)
    throw ParseError("expected V<stem class>+<affix class>+<group>", line_no, detail::column_of(line, codes));
  for (const auto& f : fields)
    if (f.empty()) throw ParseError("empty code field", line_no, detail::column_of(line, f));

  DictEntry entry;
  entry.lemma = lemma;
  try {
    entry.stem_class = StemClass::parse(fields[0]);
  } catch (const ParseError& e) {
    throw ParseError(e.what(), line_no, detail::column_of(line, fields[0]));
  }
  entry.affix_class = AffixClass::parse(fields[1]);
  entry.group = detail::group_or_throw(fields[2], line_no, detail::column_of(line, fields[2]));
  return entry;
}

inline std::string serialize(const DictEntry& e) {
  return e.lemma + "," + e.pos + e.stem_class.raw + "+" + e.affix_class.raw + "+" + to_string(e.group);
}

/// Parses one allomorph-dictionary line, e.g. "andró,àndro.V+a1ps20vAy+gc1+ana".
inline AllomorphEntry parse_dema_vsflx_line(std::string_view raw_line, std::size_t line_no = 0) {
  const std::string normalized = text::nfc(detail::trim_line_end(raw_line));
  const std::string_view line = normalized;
  if (line.empty()) throw ParseError("empty line", line_no, 1);
  auto [form, rest] = detail::split_entry(line, line_no);
  detail::check_lexical(form, "form", line_no);
  const std::size_t dot = rest.find('.');
  if (dot == std::string_view::npos) throw ParseError("missing '.' between lemma and codes", line_no, detail::column_of(line, rest));
  const std::string lemma(rest.substr(0, dot));
  detail::check_lexical(lemma, "lemma", line_no);
  const auto fields = detail::split_plus(rest.substr(dot + 1));
  if (fields.size() != 4 || fields[0] != "V")
    throw ParseError("expected lemma.V+<affix class>+<group>+<tag>", line_no, detail::column_of(line, rest) + dot + 1);
  for (const auto& f : fields)
    if (f.empty()) throw ParseError("empty code field", line_no, detail::column_of(line, f));
  const Group group = detail::group_or_throw(fields[2], line_no, detail::column_of(line, fields[2]));
  const auto tag = parse_compat_tag(fields[3]);
  if (!tag) throw ParseError("unknown compatibility tag '" + std::string(fields[3]) + "'", line_no, detail::column_of(line, fields[3]));
  return AllomorphEntry::make(form, lemma, AffixClass::parse(fields[1]), group, *tag);
}

inline std::string serialize(const AllomorphEntry& e) {
  return e.form + "," + e.lemma + ".V+" + e.affix_class.raw + "+" + to_string(e.group) + "+" +
         std::string(to_string(e.compat_tag));
}

/// Parses one invariable-word line, e.g. "aho, PRO(NV)+pers:1s".
inline InvariableEntry parse_dema_invflx_line(std::string_view raw_line, std::size_t line_no = 0) {
  const std::string normalized = text::nfc(detail::trim_line_end(raw_line));
  const std::string_view line = normalized;
  if (line.empty()) throw ParseError("empty line", line_no, 1);
  auto [form, rest] = detail::split_entry(line, line_no);
  if (form.empty()) throw ParseError("empty form", line_no, 1);
  const auto fields = detail::split_plus(rest);
  std::string_view pos = fields[0];
  InvariableEntry entry{form, {}, {}, {}};
  if (const auto open = pos.find('('); open != std::string_view::npos) {
    if (pos.back() != ')') throw ParseError("unbalanced parenthesis in POS", line_no, detail::column_of(line, pos));
    entry.qualifier = std::string(pos.substr(open + 1, pos.size() - open - 2));
    pos = pos.substr(0, open);
  }
  if (pos.empty()) throw ParseError("empty part of speech", line_no, detail::column_of(line, rest));
  entry.pos = std::string(pos);
  for (std::size_t i = 1; i < fields.size(); ++i) {
    if (fields[i].empty()) throw ParseError("empty feature", line_no, detail::column_of(line, fields[i]));
    entry.features.emplace_back(fields[i]);
  }
  return entry;
}

inline std::string serialize(const InvariableEntry& e) {
  std::string out = e.form + "," + e.pos;
  if (!e.qualifier.empty()) out += "(" + e.qualifier + ")";
  for (const auto& f : e.features) out += "+" + f;
  return out;
}

/// Parses every non-blank, non-comment line of a dictionary file. When
/// `problems` is given, bad lines are reported there and skipped; otherwise
/// the first error propagates.
template <class Parse>
auto parse_lines(std::string_view content, Parse parse, std::vector<std::string>* problems = nullptr) {
  using Entry = std::invoke_result_t<Parse, std::string_view, std::size_t>;
  std::vector<Entry> entries;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= content.size()) {
    const std::size_t nl = content.find('\n', start);
    const std::string_view line =
        detail::trim_line_end(content.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start));
    ++line_no;
    if (!line.empty() && line.front() != '#') {
      try {
        entries.push_back(parse(line, line_no));
      } catch (const ParseError& e) {
        if (problems == nullptr) throw;
        problems->push_back(e.what());
      }
    }
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return entries;
}

inline std::vector<DictEntry> parse_dema_vs(std::string_view content, std::vector<std::string>* problems = nullptr) {
  return parse_lines(content, [](std::string_view l, std::size_t n) { return parse_dema_vs_line(l, n); }, problems);
}

inline std::vector<AllomorphEntry> parse_dema_vsflx(std::string_view content, std::vector<std::string>* problems = nullptr) {
  return parse_lines(content, [](std::string_view l, std::size_t n) { return parse_dema_vsflx_line(l, n); }, problems);
}

inline std::vector<InvariableEntry> parse_dema_invflx(std::string_view content,
                                                      std::vector<std::string>* problems = nullptr) {
  return parse_lines(content, [](std::string_view l, std::size_t n) { return parse_dema_invflx_line(l, n); }, problems);
}

}  // namespace mora::lexicon
