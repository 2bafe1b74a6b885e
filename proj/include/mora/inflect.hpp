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

// Inflection transducers: one per stem class, each path an edit program that
// turns a lemma into one allomorph tagged with the suffixes it accepts.
//
// Text format (*.stem):
//
//   # fàfy -> fàfy, àfy, afáz, fafáz
//   version 1                       (optional)
//   class 0are
//   KEEP -> 0
//   DELETE_FIRST 1 -> 0
//   DELETE_FIRST 1 DELETE_LAST 1 APPEND az MOVE_STRESS_TO_FINAL_VOWEL -> a,ana
//
// Ops run left to right on the lemma's characters.

#pragma once

#include "mora/errors.hpp"
#include "mora/fst.hpp"
#include "mora/lexicon.hpp"
#include "mora/text.hpp"

#include <charconv>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace mora::inflect {

using fst::EditOp;
using lexicon::AllomorphEntry;
using lexicon::CompatTag;
using lexicon::DictEntry;

inline constexpr int kDslVersion = 1;

struct EditPath {
  std::vector<EditOp> edits;  // empty = KEEP
  std::vector<CompatTag> tags;

  std::string describe() const {
    if (edits.empty()) return "KEEP";
    std::string out;
    for (const auto& op : edits) {
      if (!out.empty()) out += ' ';
      out += fst::to_string(op);
    }
    return out;
  }
};

class InflectionTransducer {
 public:
  using GraphType = fst::Graph<std::monostate>;

  InflectionTransducer(std::string name, std::vector<EditPath> paths) : name_(std::move(name)), paths_(std::move(paths)) {
    if (paths_.empty()) throw ParseError("transducer '" + name_ + "' has no paths");
    bool has_bare = false;
    for (const auto& p : paths_) {
      if (p.tags.empty()) throw ParseError("transducer '" + name_ + "' has a path without tags");
      std::vector<std::vector<fst::Arc<std::monostate>>> slots;
      for (const auto& op : p.edits) slots.push_back({fst::Arc<std::monostate>(op)});
      std::vector<std::string> tag_names;
      for (auto t : p.tags) {
        tag_names.emplace_back(lexicon::to_string(t));
        has_bare = has_bare || t == CompatTag::kZero;
      }
      graph_.add_line(slots, std::move(tag_names));
    }
    if (!has_bare) throw ParseError("transducer '" + name_ + "' has no path tagged 0");
  }

  const std::string& name() const noexcept { return name_; }
  const std::vector<EditPath>& paths() const noexcept { return paths_; }
  const GraphType& graph() const noexcept { return graph_; }

 private:
  std::string name_;
  std::vector<EditPath> paths_;
  GraphType graph_;
};

using TransducerRegistry = std::map<std::string, InflectionTransducer, std::less<>>;

/// File name for a stem class: parentheses become underscores.
inline std::string stem_file_name(std::string_view stem_class) {
  std::string out(stem_class);
  for (char& c : out)
    if (c == '(' || c == ')') c = '_';
  return out + ".stem";
}

namespace detail {

inline std::vector<std::string_view> words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

inline std::size_t parse_count(std::string_view s, std::size_t line_no) {
  std::size_t n = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
  if (ec != std::errc{} || ptr != s.data() + s.size() || n < 1)
    throw ParseError("expected a positive count, got '" + std::string(s) + "'", line_no);
  return n;
}

inline std::string parse_affix_text(std::string_view s, std::size_t line_no) {
  std::string value = text::nfc(s);
  for (char32_t c : text::decode(value))
    if (!lexicon::detail::is_lexical_char(c))
      throw ParseError("'" + value + "' is outside the lexical alphabet", line_no);
  return value;
}

inline EditPath parse_path_line(std::string_view line, std::size_t line_no) {
  const std::size_t arrow = line.find("->");
  if (arrow == std::string_view::npos) throw ParseError("missing '-> tags'", line_no);
  EditPath path;
  const auto ops = words(line.substr(0, arrow));
  if (ops.empty()) throw ParseError("missing edit ops (use KEEP for the unchanged lemma)", line_no);
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const auto op = ops[i];
    auto operand = [&]() -> std::string_view {
      if (i + 1 >= ops.size()) throw ParseError(std::string(op) + " needs an operand", line_no);
      return ops[++i];
    };
    if (op == "KEEP") {
      if (ops.size() != 1) throw ParseError("KEEP cannot be combined with other ops", line_no);
    } else if (op == "DELETE_LAST") {
      path.edits.push_back(EditOp::delete_last(parse_count(operand(), line_no)));
    } else if (op == "DELETE_FIRST") {
      path.edits.push_back(EditOp::delete_first(parse_count(operand(), line_no)));
    } else if (op == "APPEND") {
      path.edits.push_back(EditOp::append(parse_affix_text(operand(), line_no)));
    } else if (op == "PREPEND") {
      path.edits.push_back(EditOp::prepend(parse_affix_text(operand(), line_no)));
    } else if (op == "MOVE_STRESS_TO_FINAL_VOWEL") {
      path.edits.push_back(EditOp::move_stress_to_final_vowel());
    } else if (op == "DROP_STRESS") {
      path.edits.push_back(EditOp::drop_stress());
    } else {
      throw ParseError("unknown op '" + std::string(op) + "'", line_no);
    }
  }
  std::string_view tags = line.substr(arrow + 2);
  std::size_t start = 0;
  while (start <= tags.size()) {
    const std::size_t comma = tags.find(',', start);
    const auto word = words(tags.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (word.size() != 1) throw ParseError("missing tags", line_no);
    const auto tag = lexicon::parse_compat_tag(word[0]);
    if (!tag) throw ParseError("unknown tag '" + std::string(word[0]) + "'", line_no);
    if (std::find(path.tags.begin(), path.tags.end(), *tag) == path.tags.end()) path.tags.push_back(*tag);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return path;
}

}  // namespace detail

inline InflectionTransducer parse_transducer_dsl(std::string_view source) {
  std::optional<std::string> name;
  std::vector<EditPath> paths;
  std::size_t line_no = 0;
  std::istringstream in{std::string(source)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto w = detail::words(line);
    if (w.empty()) continue;
    if (w[0] == "version") {
      if (name || !paths.empty()) throw ParseError("version must precede the class header", line_no);
      if (w.size() != 2 || w[1] != std::to_string(kDslVersion))
        throw ParseError("unsupported stem DSL version", line_no);
    } else if (w[0] == "class") {
      if (name) throw ParseError("duplicate class header", line_no);
      if (w.size() != 2) throw ParseError("expected 'class <code>'", line_no);
      lexicon::StemClass::parse(w[1]);  // validates the code
      name = std::string(w[1]);
    } else {
      if (!name) throw ParseError("path before class header", line_no);
      paths.push_back(detail::parse_path_line(line, line_no));
    }
  }
  if (!name) throw ParseError("missing class header");
  if (paths.empty()) throw ParseError("class '" + *name + "' has no paths", line_no);
  return InflectionTransducer(*name, std::move(paths));
}

/// Runs an edit program on a lemma. Throws DomainError if a deletion would
/// empty the word or stress has no vowel to land on.
inline std::string apply_edits(std::string_view lemma, const std::vector<EditOp>& edits) {
  std::u32string s = text::decode(text::nfc(lemma));
  for (const auto& op : edits) {
    switch (op.kind) {
      case EditOp::Kind::kDeleteLast:
      case EditOp::Kind::kDeleteFirst:
        if (op.count >= s.size())
          throw DomainError(fst::to_string(op) + " underflows '" + text::encode(s) + "'");
        if (op.kind == EditOp::Kind::kDeleteLast)
          s.erase(s.size() - op.count);
        else
          s.erase(0, op.count);
        break;
      case EditOp::Kind::kAppend:
        s += text::decode(op.text);
        break;
      case EditOp::Kind::kPrepend:
        s.insert(0, text::decode(op.text));
        break;
      case EditOp::Kind::kMoveStressToFinalVowel: {
        s = text::strip_stress(std::move(s));
        const auto it = std::find_if(s.rbegin(), s.rend(), [](char32_t c) { return text::is_vowel(c); });
        if (it == s.rend()) throw DomainError("no vowel to stress in '" + text::encode(s) + "'");
        *it = text::with_acute(*it);
        break;
      }
      case EditOp::Kind::kDropStress:
        s = text::strip_stress(std::move(s));
        break;
    }
  }
  if (s.empty()) throw DomainError("edits produced an empty form from '" + std::string(lemma) + "'");
  return text::encode(s);
}

/// One allomorph entry per (path, tag), duplicates collapsed, in path order.
inline std::vector<AllomorphEntry> generate_allomorphs(const DictEntry& entry, const InflectionTransducer& t) {
  if (t.name() != entry.stem_class.raw)
    throw std::invalid_argument("transducer '" + t.name() + "' does not match stem class '" + entry.stem_class.raw + "'");
  std::vector<AllomorphEntry> out;
  for (std::size_t i = 0; i < t.paths().size(); ++i) {
    const auto& path = t.paths()[i];
    std::string form;
    try {
      form = apply_edits(entry.lemma, path.edits);
    } catch (const DomainError& e) {
      throw DomainError("lemma '" + entry.lemma + "', class " + t.name() + " path " + std::to_string(i + 1) + " (" +
                        path.describe() + "): " + e.what());
    }
    for (CompatTag tag : path.tags) {
      auto allomorph = AllomorphEntry::make(form, entry.lemma, entry.affix_class, entry.group, tag);
      if (std::find(out.begin(), out.end(), allomorph) == out.end()) out.push_back(std::move(allomorph));
    }
  }
  const bool has_bare = std::any_of(out.begin(), out.end(), [&](const AllomorphEntry& a) {
    return a.compat_tag == CompatTag::kZero && a.form == text::nfc(entry.lemma);
  });
  if (!has_bare)
    throw DomainError("lemma '" + entry.lemma + "', class " + t.name() + ": no tag-0 allomorph equal to the lemma");
  return out;
}

struct CompileStats {
  std::size_t roots = 0;
  std::size_t entries = 0;
  std::size_t distinct_forms = 0;  // summed per root

  double mean_variants_per_root() const { return roots == 0 ? 0.0 : static_cast<double>(entries) / roots; }
  double mean_forms_per_root() const { return roots == 0 ? 0.0 : static_cast<double>(distinct_forms) / roots; }
};

struct CompiledLexicon {
  std::vector<AllomorphEntry> entries;
  CompileStats stats;
};

/// Allomorph dictionary for a whole root dictionary, in input order then
/// path order. All missing transducers and edit failures are reported
/// together in one CompileError.
inline CompiledLexicon compile_lexicon(const std::vector<DictEntry>& lexicon, const TransducerRegistry& registry) {
  std::set<std::string> missing;
  for (const auto& e : lexicon)
    if (!registry.contains(e.stem_class.raw)) missing.insert(e.stem_class.raw);
  std::vector<std::string> problems;
  for (const auto& m : missing) problems.push_back("no inflection transducer for stem class '" + m + "'");
  if (!problems.empty()) throw CompileError(std::move(problems));

  CompiledLexicon result;
  for (const auto& e : lexicon) {
    try {
      auto allomorphs = generate_allomorphs(e, registry.find(e.stem_class.raw)->second);
      std::set<std::string> forms;
      for (const auto& a : allomorphs) forms.insert(a.form);
      ++result.stats.roots;
      result.stats.entries += allomorphs.size();
      result.stats.distinct_forms += forms.size();
      result.entries.insert(result.entries.end(), std::make_move_iterator(allomorphs.begin()),
                            std::make_move_iterator(allomorphs.end()));
    } catch (const DomainError& err) {
      problems.push_back(err.what());
    }
  }
  if (!problems.empty()) throw CompileError(std::move(problems));
  return result;
}

inline std::string serialize(const CompiledLexicon& lexicon) {
  std::string out;
  for (const auto& e : lexicon.entries) out += lexicon::serialize(e) + "\n";
  return out;
}

}  // namespace mora::inflect
