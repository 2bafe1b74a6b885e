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

#pragma once

#include "mora/errors.hpp"
#include "mora/lexicon.hpp"
#include "mora/morpho.hpp"
#include "mora/text.hpp"

#include <unicode/uchar.h>

#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace mora::corpus_eval {

struct Token {
  std::string text;   // lowercased, NFC
  std::size_t begin;  // byte offsets into the input
  std::size_t end;
};

namespace detail {

inline bool is_elision_mark(UChar32 c) { return c == U'\'' || c == U'’' || c == U'ʼ'; }
inline bool is_dash(UChar32 c) { return c == U'-' || c == U'‐'; }

}  // namespace detail

/// Splits on whitespace and punctuation. An apostrophe or dash ends the
/// word it follows and stays attached to it: "Noraisin'ny" gives
/// "noraisin'" and "ny".
inline std::vector<Token> tokenize(std::string_view input) {
  std::vector<Token> out;
  std::string current;
  std::size_t begin = 0;
  auto flush = [&](std::size_t end) {
    if (!current.empty()) out.push_back({text::lowercase(text::nfc(current)), begin, end});
    current.clear();
  };
  const auto* s = reinterpret_cast<const uint8_t*>(input.data());
  const auto length = static_cast<int32_t>(input.size());
  int32_t i = 0;
  while (i < length) {
    const int32_t start = i;
    UChar32 c;
    U8_NEXT(s, i, length, c);
    if (c >= 0 && (u_isalnum(c) || u_getCombiningClass(c) != 0)) {
      if (current.empty()) begin = static_cast<std::size_t>(start);
      current.append(input.substr(static_cast<std::size_t>(start), static_cast<std::size_t>(i - start)));
    } else if (c >= 0 && !current.empty() && (detail::is_elision_mark(c) || detail::is_dash(c))) {
      current += detail::is_dash(c) ? '-' : '\'';
      flush(static_cast<std::size_t>(i));
    } else {
      flush(static_cast<std::size_t>(start));
    }
  }
  flush(input.size());
  return out;
}

struct GoldRecord {
  std::string token;
  bool is_verb = false;
  std::optional<std::string> lemma;
  bool in_dictionary = false;
  bool stem_class_known = false;
  bool affix_class_known = false;
};

namespace detail {

inline bool parse_flag(std::string_view s, std::size_t line_no, std::string_view column) {
  if (s == "1" || s == "true" || s == "yes") return true;
  if (s == "0" || s == "false" || s == "no") return false;
  throw ParseError("column " + std::string(column) + ": expected 1/0, got '" + std::string(s) + "'", line_no);
}

}  // namespace detail

/// Gold TSV columns: token, is_verb, lemma ("-" when none), in_dict,
/// stem_known, affix_known. Lines starting with '#' are comments.
inline std::vector<GoldRecord> parse_gold_tsv(std::string_view content) {
  std::vector<GoldRecord> out;
  std::istringstream in{std::string(content)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> cols;
    std::size_t start = 0;
    for (;;) {
      const auto tab = line.find('\t', start);
      cols.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (cols.size() != 6) throw ParseError("expected 6 tab-separated columns, got " + std::to_string(cols.size()), line_no);
    GoldRecord r;
    r.token = text::lowercase(text::nfc(cols[0]));
    if (r.token.empty()) throw ParseError("empty token", line_no);
    r.is_verb = detail::parse_flag(cols[1], line_no, "is_verb");
    if (!cols[2].empty() && cols[2] != "-") r.lemma = text::nfc(cols[2]);
    r.in_dictionary = detail::parse_flag(cols[3], line_no, "in_dict");
    r.stem_class_known = detail::parse_flag(cols[4], line_no, "stem_known");
    r.affix_class_known = detail::parse_flag(cols[5], line_no, "affix_known");
    out.push_back(std::move(r));
  }
  return out;
}

inline void validate(const std::vector<GoldRecord>& gold) {
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const auto& r = gold[i];
    const std::string where = "gold record " + std::to_string(i + 1) + " ('" + r.token + "')";
    if (r.in_dictionary && !r.lemma) throw ValidationError(where + ": in_dict requires a lemma");
    if (!r.is_verb && (r.in_dictionary || r.stem_class_known || r.affix_class_known))
      throw ValidationError(where + ": class flags set on a non-verb");
  }
}

/// Gold must list exactly the tokens of the text, in order.
inline void check_alignment(const std::vector<GoldRecord>& gold, const std::vector<Token>& tokens) {
  const std::size_t n = std::min(gold.size(), tokens.size());
  for (std::size_t i = 0; i < n; ++i)
    if (gold[i].token != tokens[i].text)
      throw ValidationError("gold record " + std::to_string(i + 1) + " is '" + gold[i].token + "' but the text has '" +
                            tokens[i].text + "'");
  if (gold.size() != tokens.size())
    throw ValidationError("gold has " + std::to_string(gold.size()) + " records for " + std::to_string(tokens.size()) +
                          " tokens");
}

struct Ratio {
  std::size_t numerator = 0;
  std::size_t denominator = 0;

  double value() const { return denominator == 0 ? 0.0 : static_cast<double>(numerator) / denominator; }
  double percent() const { return std::round(value() * 1000.0) / 10.0; }
  long rounded_percent() const { return std::lround(value() * 100.0); }
};

struct CoverageReport {
  Ratio lexical_coverage;       // in-dictionary verbs / verbs
  Ratio analyzer_success_rate;  // verbs analyzed with their gold lemma / verbs
  Ratio stem_class_coverage;    // (in-dictionary + known stem class) / verbs
  Ratio affix_class_coverage;   // (in-dictionary + known affix class) / verbs
  std::vector<std::string> failures;  // in-dictionary verbs the analyzer missed
};

/// Counts over verb tokens. A verb counts as analyzed only when it is in the
/// dictionary and some analysis carries its gold lemma, so the success rate
/// never exceeds lexical coverage.
inline CoverageReport evaluate(const std::vector<GoldRecord>& gold, const morpho::CompiledResources& resources) {
  validate(gold);
  CoverageReport report;
  std::size_t verbs = 0, in_dict = 0, analyzed = 0, stem_known = 0, affix_known = 0;
  for (const auto& r : gold) {
    if (!r.is_verb) continue;
    ++verbs;
    if (r.in_dictionary) {
      ++in_dict;
      const std::string lemma = lexicon::strip_stress(*r.lemma);
      const auto analyses = morpho::analyze_token(r.token, resources);
      const bool hit = std::any_of(analyses.begin(), analyses.end(),
                                   [&](const morpho::Analysis& a) { return lexicon::strip_stress(a.entry.lemma) == lemma; });
      if (hit)
        ++analyzed;
      else
        report.failures.push_back(r.token);
    }
    stem_known += r.in_dictionary || r.stem_class_known;
    affix_known += r.in_dictionary || r.affix_class_known;
  }
  report.lexical_coverage = {in_dict, verbs};
  report.analyzer_success_rate = {analyzed, verbs};
  report.stem_class_coverage = {stem_known, verbs};
  report.affix_class_coverage = {affix_known, verbs};
  return report;
}

inline std::string to_table(const CoverageReport& report) {
  auto row = [](std::string_view name, const Ratio& r) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%-22s %4zu / %-4zu %5.1f%%  (%ld%%)\n", std::string(name).c_str(), r.numerator,
                  r.denominator, r.percent(), r.rounded_percent());
    return std::string(buf);
  };
  std::string out = row("lexical coverage", report.lexical_coverage);
  out += row("analyzer success rate", report.analyzer_success_rate);
  out += row("stem class coverage", report.stem_class_coverage);
  out += row("affix class coverage", report.affix_class_coverage);
  if (!report.failures.empty()) {
    out += "not analyzed:";
    for (const auto& f : report.failures) out += " " + f;
    out += "\n";
  }
  return out;
}

}  // namespace mora::corpus_eval
