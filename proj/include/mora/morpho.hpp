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

// Morpheme-combination graphs and the analyzer built on them.
//
// Graph text format (*.affix). One header, then one path per line; each
// path is a sequence of slots read left to right against the token:
//
//   affixclass a1ps20vAy            (or: graph <name> for shared suffix graphs)
//   default voice=act_stat          (optional)
//   TENSE:{present:"m"|past:"n"|future:"h"} ROOT:0 -> voice=act_stat
//   {TENSE:future:"ho"|<E>} ASPECT:tafa:"tafa" ROOT:0
//   VOICE:act_stat:"am" ROOT:0<<^[aeiouy]>>
//   ROOT:ana CALL:sfx_na_obj
//
// Slots:
//   ROLE:value:"literal"   a morpheme; the literal may be "" (zero morpheme)
//   ROOT:tag[<<regex>>]    any allomorph with that tag whose stress-free form
//                          matches the optional regex
//   CALL:name              splice in every path of another graph
//   {a|b|...}              alternatives; <E> makes the slot optional
//   ROLE:{v:"x"|w:"y"}     alternatives sharing one role
//
// "-> voice=..." declares the voice of the path when no morpheme carries it.
// Affix-class paths contain exactly one ROOT slot; shared graphs contain none.

#pragma once

#include "mora/errors.hpp"
#include "mora/fst.hpp"
#include "mora/lexicon.hpp"
#include "mora/text.hpp"

#include <algorithm>
#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace mora::morpho {

using lexicon::AllomorphEntry;
using lexicon::DictEntry;
using lexicon::InvariableEntry;

// ---------------------------------------------------------------------------
// Roles and features

enum class Category { kTense, kVoice, kAspect, kSuffixVoice, kImperative, kPronoun, kElisionMark };

inline std::string_view to_string(Category c) {
  switch (c) {
    case Category::kTense: return "TENSE";
    case Category::kVoice: return "VOICE";
    case Category::kAspect: return "ASPECT";
    case Category::kSuffixVoice: return "SUFFIX_VOICE";
    case Category::kImperative: return "IMPERATIVE";
    case Category::kPronoun: return "PRONOUN";
    case Category::kElisionMark: return "ELISION_MARK";
  }
  return "?";
}

inline std::optional<Category> parse_category(std::string_view s) {
  for (auto c : {Category::kTense, Category::kVoice, Category::kAspect, Category::kSuffixVoice, Category::kImperative,
                 Category::kPronoun, Category::kElisionMark})
    if (to_string(c) == s) return c;
  return std::nullopt;
}

enum class Tense { kPresent, kPast, kFuture };
enum class Voice { kActStat, kObj, kLoc, kCirc, kAgiInst, kUnresolved };
enum class Aspect { kNeutral, kAha, kVoa, kTafa };
enum class Mode { kIndicative, kImperative };

inline std::string_view to_string(Tense t) {
  switch (t) {
    case Tense::kPresent: return "present";
    case Tense::kPast: return "past";
    case Tense::kFuture: return "future";
  }
  return "?";
}

inline std::string_view to_string(Voice v) {
  switch (v) {
    case Voice::kActStat: return "act_stat";
    case Voice::kObj: return "obj";
    case Voice::kLoc: return "loc";
    case Voice::kCirc: return "circ";
    case Voice::kAgiInst: return "agi_inst";
    case Voice::kUnresolved: return "unresolved";
  }
  return "?";
}

inline std::string_view to_string(Aspect a) {
  switch (a) {
    case Aspect::kNeutral: return "neutral";
    case Aspect::kAha: return "aha";
    case Aspect::kVoa: return "voa";
    case Aspect::kTafa: return "tafa";
  }
  return "?";
}

inline std::string_view to_string(Mode m) { return m == Mode::kImperative ? "imperative" : "indicative"; }

inline std::optional<Tense> parse_tense(std::string_view s) {
  for (auto t : {Tense::kPresent, Tense::kPast, Tense::kFuture})
    if (to_string(t) == s) return t;
  return std::nullopt;
}

inline std::optional<Voice> parse_voice(std::string_view s) {
  for (auto v : {Voice::kActStat, Voice::kObj, Voice::kLoc, Voice::kCirc, Voice::kAgiInst})
    if (to_string(v) == s) return v;
  return std::nullopt;
}

inline std::optional<Aspect> parse_aspect(std::string_view s) {
  for (auto a : {Aspect::kAha, Aspect::kVoa, Aspect::kTafa})
    if (to_string(a) == s) return a;
  return std::nullopt;
}

/// Annotation on a literal arc: which grammatical marker it is.
struct MorphemeRole {
  Category category = Category::kTense;
  std::string value;

  friend bool operator==(const MorphemeRole&, const MorphemeRole&) = default;
};

/// Checks a (category, value) pair against the closed feature tables.
/// Pronoun values are checked later against the pronoun inventory.
inline bool valid_role(Category c, std::string_view value) {
  switch (c) {
    case Category::kTense: return parse_tense(value).has_value();
    case Category::kVoice:
    case Category::kSuffixVoice: return parse_voice(value).has_value();
    case Category::kAspect: return parse_aspect(value).has_value();
    case Category::kImperative: return value == "a" || value == "o" || value == "y";
    case Category::kPronoun: return !value.empty();
    case Category::kElisionMark: return value == "apostrophe" || value == "dash";
  }
  return false;
}

struct FeatureBundle {
  Tense tense = Tense::kPresent;
  Voice voice = Voice::kUnresolved;
  Aspect aspect = Aspect::kNeutral;
  Mode mode = Mode::kIndicative;
  std::optional<InvariableEntry> pronoun;

  auto key() const {
    return std::make_tuple(tense, voice, aspect, mode, pronoun ? pronoun->form : std::string());
  }
  friend bool operator==(const FeatureBundle& a, const FeatureBundle& b) { return a.key() == b.key(); }
  friend bool operator<(const FeatureBundle& a, const FeatureBundle& b) { return a.key() < b.key(); }
};

inline std::string to_string(const FeatureBundle& f) {
  std::string out = "tense=" + std::string(to_string(f.tense)) + " voice=" + std::string(to_string(f.voice)) +
                    " aspect=" + std::string(to_string(f.aspect)) + " mode=" + std::string(to_string(f.mode));
  if (f.pronoun) out += " pronoun=" + f.pronoun->form;
  return out;
}

// ---------------------------------------------------------------------------
// Graphs

using Graph = fst::Graph<MorphemeRole>;
using Arc = fst::Arc<MorphemeRole>;
using Path = fst::Path<MorphemeRole>;
using Trace = fst::MatchTrace<MorphemeRole, AllomorphEntry>;

struct MorphemeGraph {
  enum class Kind { kAffixClass, kShared };

  std::string name;
  Kind kind = Kind::kAffixClass;
  Graph graph;
  std::optional<Voice> default_voice;
};

namespace detail {

inline constexpr std::string_view kVoiceAnnotation = "voice=";

// Splits on whitespace (or '|') at nesting level zero, honouring "...",
// <<...>> and {...}.
inline std::vector<std::string> split_top_level(std::string_view s, char sep, std::size_t line_no) {
  std::vector<std::string> parts;
  std::string current;
  bool in_quote = false;
  bool in_filter = false;
  int braces = 0;
  auto flush = [&] {
    if (!current.empty()) parts.push_back(current);
    current.clear();
  };
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (in_quote) {
      current += c;
      if (c == '"') in_quote = false;
    } else if (in_filter) {
      current += c;
      if (c == '>' && i + 1 < s.size() && s[i + 1] == '>') {
        current += '>';
        ++i;
        in_filter = false;
      }
    } else if (c == '"') {
      in_quote = true;
      current += c;
    } else if (c == '<' && i + 1 < s.size() && s[i + 1] == '<') {
      in_filter = true;
      current += "<<";
      ++i;
    } else if (c == '{') {
      ++braces;
      current += c;
    } else if (c == '}') {
      if (--braces < 0) throw ParseError("unbalanced '}'", line_no);
      current += c;
    } else if (braces == 0 && (sep == ' ' ? (c == ' ' || c == '\t') : c == sep)) {
      if (sep == ' ')
        flush();
      else {
        parts.push_back(current);
        current.clear();
      }
    } else {
      current += c;
    }
  }
  if (in_quote) throw ParseError("unterminated string literal", line_no);
  if (in_filter) throw ParseError("unterminated '<<' filter", line_no);
  if (braces != 0) throw ParseError("unbalanced '{'", line_no);
  if (sep == ' ')
    flush();
  else
    parts.push_back(current);
  return parts;
}

inline bool is_surface_char(char c) { return (c >= 'a' && c <= 'z') || c == '\'' || c == '-'; }

inline Arc parse_role_arc(Category category, std::string_view rest, std::size_t line_no) {
  // rest = value:"literal"
  const std::size_t colon = rest.find(':');
  if (colon == std::string_view::npos || rest.size() < colon + 3 || rest[colon + 1] != '"' || rest.back() != '"')
    throw ParseError("expected " + std::string(to_string(category)) + ":value:\"literal\"", line_no);
  const std::string value(rest.substr(0, colon));
  const std::string literal(rest.substr(colon + 2, rest.size() - colon - 3));
  if (!valid_role(category, value))
    throw ParseError("unknown value '" + value + "' for role " + std::string(to_string(category)), line_no);
  for (char c : literal)
    if (!is_surface_char(c)) throw ParseError("literal \"" + literal + "\" is outside the surface alphabet", line_no);
  if (category == Category::kElisionMark && literal != (value == "apostrophe" ? "'" : "-"))
    throw ParseError("ELISION_MARK:" + value + " must spell \"" + (value == "apostrophe" ? "'" : "-") + "\"", line_no);
  if (category == Category::kPronoun && literal.empty()) throw ParseError("empty pronoun literal", line_no);
  return Arc::literal(literal, MorphemeRole{category, value});
}

inline Arc parse_root_arc(std::string_view rest, std::size_t line_no) {
  std::string_view tag = rest;
  std::optional<fst::SurfaceFilter> filter;
  if (const auto open = rest.find("<<"); open != std::string_view::npos) {
    if (!rest.ends_with(">>") || rest.size() < open + 4) throw ParseError("malformed ROOT filter", line_no);
    tag = rest.substr(0, open);
    try {
      filter.emplace(std::string(rest.substr(open + 2, rest.size() - open - 4)));
    } catch (const std::regex_error& e) {
      throw ParseError(std::string("bad ROOT filter regex: ") + e.what(), line_no);
    }
  }
  if (!lexicon::parse_compat_tag(tag)) throw ParseError("unknown ROOT tag '" + std::string(tag) + "'", line_no);
  return Arc::root(std::string(tag), std::move(filter));
}

// nullopt means <E>.
inline std::optional<Arc> parse_alternative(std::string_view alt, std::size_t line_no) {
  if (alt == "<E>") return std::nullopt;
  const std::size_t colon = alt.find(':');
  if (colon == std::string_view::npos) throw ParseError("unknown slot '" + std::string(alt) + "'", line_no);
  const std::string_view head = alt.substr(0, colon);
  const std::string_view rest = alt.substr(colon + 1);
  if (head == "ROOT") return parse_root_arc(rest, line_no);
  if (head == "CALL") {
    if (rest.empty()) throw ParseError("CALL needs a graph name", line_no);
    return Arc::call(std::string(rest));
  }
  const auto category = parse_category(head);
  if (!category) throw ParseError("unknown role '" + std::string(head) + "'", line_no);
  return parse_role_arc(*category, rest, line_no);
}

struct Slot {
  std::vector<Arc> arcs;
  bool optional = false;
};

inline Slot parse_slot(std::string_view slot, std::size_t line_no) {
  std::vector<std::string> alternatives;
  std::string prefix;
  if (slot.front() == '{') {
    if (slot.back() != '}') throw ParseError("malformed alternation '" + std::string(slot) + "'", line_no);
    alternatives = split_top_level(slot.substr(1, slot.size() - 2), '|', line_no);
  } else if (const auto brace = slot.find(":{"); brace != std::string_view::npos && slot.back() == '}') {
    prefix = std::string(slot.substr(0, brace + 1));
    alternatives = split_top_level(slot.substr(brace + 2, slot.size() - brace - 3), '|', line_no);
  } else {
    alternatives.emplace_back(slot);
  }
  Slot out;
  for (const auto& alt : alternatives) {
    if (alt.empty()) throw ParseError("empty alternative", line_no);
    auto arc = parse_alternative(alt == "<E>" ? alt : prefix + alt, line_no);
    if (arc)
      out.arcs.push_back(std::move(*arc));
    else
      out.optional = true;
  }
  const auto roots = std::count_if(out.arcs.begin(), out.arcs.end(), [](const Arc& a) { return a.root_slot() != nullptr; });
  if (roots != 0 && roots != static_cast<long>(out.arcs.size()))
    throw ParseError("ROOT alternatives cannot be mixed with other slots", line_no);
  if (roots != 0 && out.optional) throw ParseError("ROOT slot cannot be optional", line_no);
  return out;
}

inline bool has_category(const std::vector<std::vector<Arc>>& slots, Category c) {
  for (const auto& slot : slots)
    for (const auto& arc : slot)
      if (const auto* l = arc.literal(); l && l->note.category == c) return true;
  return false;
}

}  // namespace detail

inline MorphemeGraph parse_graph_dsl(std::string_view source) {
  MorphemeGraph result;
  bool have_header = false;
  std::size_t line_no = 0;
  std::size_t path_count = 0;
  std::istringstream in{std::string(source)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r')) line.remove_suffix(1);
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
    if (line.empty()) continue;

    const auto words = detail::split_top_level(line, ' ', line_no);
    if (words[0] == "affixclass" || words[0] == "graph") {
      if (have_header) throw ParseError("duplicate header", line_no);
      if (words.size() != 2) throw ParseError("expected '" + words[0] + " <name>'", line_no);
      result.name = words[1];
      result.kind = words[0] == "graph" ? MorphemeGraph::Kind::kShared : MorphemeGraph::Kind::kAffixClass;
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError("path before header", line_no);
    if (words[0] == "default") {
      if (path_count != 0) throw ParseError("default must precede the paths", line_no);
      if (words.size() != 2 || !words[1].starts_with(detail::kVoiceAnnotation))
        throw ParseError("expected 'default voice=<voice>'", line_no);
      const auto voice = parse_voice(std::string_view(words[1]).substr(detail::kVoiceAnnotation.size()));
      if (!voice) throw ParseError("unknown voice in default", line_no);
      result.default_voice = voice;
      continue;
    }

    // slots [-> annotations]
    std::string_view body = line;
    std::vector<std::string> tags;
    if (const auto arrow = body.find("->"); arrow != std::string_view::npos) {
      // "->" never occurs inside a slot except within a quoted literal.
      const auto before = body.substr(0, arrow);
      if (std::count(before.begin(), before.end(), '"') % 2 == 0) {
        for (const auto& a : detail::split_top_level(body.substr(arrow + 2), ' ', line_no)) {
          if (!a.starts_with(detail::kVoiceAnnotation) ||
              !parse_voice(std::string_view(a).substr(detail::kVoiceAnnotation.size())))
            throw ParseError("unknown path annotation '" + a + "'", line_no);
          tags.push_back(a);
        }
        body = before;
      }
    }
    std::vector<detail::Slot> slots;
    for (const auto& word : detail::split_top_level(body, ' ', line_no)) slots.push_back(detail::parse_slot(word, line_no));
    if (slots.empty()) throw ParseError("empty path (write <E> for the empty path)", line_no);

    // Expand optional slots: every combination of present/absent.
    std::vector<std::vector<std::vector<Arc>>> lines{{}};
    for (const auto& slot : slots) {
      std::vector<std::vector<std::vector<Arc>>> next;
      for (const auto& prefix : lines) {
        if (!slot.arcs.empty()) {
          auto with = prefix;
          with.push_back(slot.arcs);
          next.push_back(std::move(with));
        }
        if (slot.optional) next.push_back(prefix);
      }
      lines = std::move(next);
    }
    for (const auto& expanded : lines) {
      std::size_t roots = 0;
      bool zero_literal = false;
      bool has_call = false;
      for (const auto& slot : expanded) {
        roots += slot.front().root_slot() != nullptr;
        has_call = has_call || slot.front().call() != nullptr;
        for (const auto& arc : slot)
          if (const auto* l = arc.literal(); l && l->text.empty()) zero_literal = true;
      }
      if (result.kind == MorphemeGraph::Kind::kAffixClass && roots != 1)
        throw ParseError("path must contain exactly one ROOT slot, found " + std::to_string(roots), line_no);
      if (result.kind == MorphemeGraph::Kind::kShared && roots != 0)
        throw ParseError("shared graphs cannot contain ROOT slots", line_no);
      if (zero_literal && !has_call && !detail::has_category(expanded, Category::kPronoun) &&
          !detail::has_category(expanded, Category::kElisionMark))
        throw ParseError("zero morpheme allowed only on paths with a pronoun or elision mark", line_no);
      result.graph.add_line(expanded, tags);
      ++path_count;
    }
  }
  if (!have_header) throw ParseError("missing 'affixclass' or 'graph' header");
  if (path_count == 0) throw ParseError("graph '" + result.name + "' has no paths", line_no);
  return result;
}

// ---------------------------------------------------------------------------
// Feature decoding

namespace detail {

template <class Arcs>
FeatureBundle decode_arcs(const Arcs& arcs, const std::vector<std::string>& tags, std::optional<Voice> default_voice) {
  FeatureBundle f;
  std::optional<Tense> tense;
  std::optional<Voice> voice;
  std::optional<Aspect> aspect;
  auto set_once = [](auto& slot, auto value, std::string_view what) {
    if (slot && *slot != value) throw IntegrityError("conflicting " + std::string(what) + " values on one path");
    slot = value;
  };
  for (const Arc* arc : arcs) {
    const auto* lit = arc->literal();
    if (lit == nullptr) continue;
    const auto& role = lit->note;
    switch (role.category) {
      case Category::kTense: set_once(tense, *parse_tense(role.value), "tense"); break;
      case Category::kVoice:
      case Category::kSuffixVoice: set_once(voice, *parse_voice(role.value), "voice"); break;
      case Category::kAspect: set_once(aspect, *parse_aspect(role.value), "aspect"); break;
      case Category::kImperative: f.mode = Mode::kImperative; break;
      case Category::kPronoun:
        if (f.pronoun && f.pronoun->form != role.value) throw IntegrityError("two pronouns on one path");
        f.pronoun = InvariableEntry{role.value, "PRO", "V", {}};
        break;
      case Category::kElisionMark: break;
    }
  }
  for (const auto& tag : tags)
    if (tag.starts_with(kVoiceAnnotation)) set_once(voice, *parse_voice(tag.substr(kVoiceAnnotation.size())), "voice");
  f.tense = tense.value_or(Tense::kPresent);
  f.aspect = aspect.value_or(Aspect::kNeutral);
  f.voice = voice ? *voice : default_voice.value_or(Voice::kUnresolved);
  return f;
}

}  // namespace detail

/// Features of a matched path. Absent tense means present, absent aspect
/// neutral; voice comes from a voice morpheme, then the path annotation,
/// then the graph default.
inline FeatureBundle decode_features(const Trace& trace, std::optional<Voice> default_voice = std::nullopt) {
  std::vector<const Arc*> arcs;
  for (const auto& step : trace.steps) arcs.push_back(&step.arc);
  return detail::decode_arcs(arcs, trace.output_tags, default_voice);
}

inline FeatureBundle decode_features(const Path& path, std::optional<Voice> default_voice = std::nullopt) {
  std::vector<const Arc*> arcs;
  for (const auto& arc : path.arcs) arcs.push_back(&arc);
  return detail::decode_arcs(arcs, path.output_tags, default_voice);
}

// ---------------------------------------------------------------------------
// Resources

/// Allomorphs keyed by stress-free surface form.
class AllomorphIndex {
 public:
  using value_type = AllomorphEntry;

  void add(const AllomorphEntry& entry) {
    auto& bucket = by_key_[entry.surface_key];
    if (std::find(bucket.begin(), bucket.end(), entry) == bucket.end()) bucket.push_back(entry);
    max_key_length_ = std::max(max_key_length_, entry.surface_key.size());
  }

  template <class F>
  void visit_prefixes(std::string_view text, F&& f) const {
    const std::size_t limit = std::min(max_key_length_, text.size());
    for (std::size_t n = 1; n <= limit; ++n) {
      const auto it = by_key_.find(text.substr(0, n));
      if (it == by_key_.end()) continue;
      for (const auto& entry : it->second) f(n, entry);
    }
  }

  template <class F>
  void for_each(F&& f) const {
    for (const auto& [key, bucket] : by_key_)
      for (const auto& entry : bucket) f(entry);
  }

  bool empty() const noexcept { return by_key_.empty(); }

 private:
  std::map<std::string, std::vector<AllomorphEntry>, std::less<>> by_key_;
  std::size_t max_key_length_ = 0;
};

/// How a graph recognizes verb-pronoun contractions.
enum class ContractionPattern { kNone, kSharedSuffixGraph, kEmbeddedPronouns };

inline std::string_view to_string(ContractionPattern p) {
  switch (p) {
    case ContractionPattern::kNone: return "none";
    case ContractionPattern::kSharedSuffixGraph: return "shared";
    case ContractionPattern::kEmbeddedPronouns: return "embedded";
  }
  return "?";
}

struct Options {
  std::size_t max_depth = fst::kDefaultMaxDepth;
  std::size_t paradigm_ceiling = 1000;
};

/// Everything the analyzer needs, immutable once built. Construction
/// resolves every call, checks path integrity and indexes allomorphs per
/// affix class; contraction::integrate_with_analyzer is the usual way to
/// build one.
class CompiledResources {
 public:
  CompiledResources(std::vector<DictEntry> lexicon, const std::vector<AllomorphEntry>& allomorphs,
                    std::vector<MorphemeGraph> graphs, std::vector<InvariableEntry> invariables,
                    std::vector<InvariableEntry> bound_pronouns,
                    std::map<std::string, ContractionPattern> patterns = {}, Options options = {})
      : lexicon_(std::move(lexicon)),
        invariables_(std::move(invariables)),
        bound_pronouns_(std::move(bound_pronouns)),
        patterns_(std::move(patterns)),
        options_(options) {
    for (auto& g : graphs) {
      const std::string name = g.name;
      if (!graphs_.emplace(name, std::move(g)).second) throw CompileError({"duplicate graph '" + name + "'"});
    }
    std::vector<std::string> problems;
    for (const auto& a : allomorphs) {
      if (find_entry(a.lemma, a.affix_class.raw) == nullptr)
        problems.push_back("allomorph '" + a.form + "' refers to unknown entry " + a.lemma + "/" + a.affix_class.raw);
      indexes_[a.affix_class.raw].add(a);
    }
    if (!problems.empty()) throw CompileError(std::move(problems));
    for (const auto& [name, g] : graphs_) {
      fst::resolve(g.graph, lookup(), options_.max_depth);
      if (g.kind == MorphemeGraph::Kind::kAffixClass) check_integrity(g);
    }
  }

  /// Name resolution for CALL arcs.
  struct Lookup {
    const std::map<std::string, MorphemeGraph, std::less<>>* graphs;
    const Graph* operator()(std::string_view name) const {
      const auto it = graphs->find(name);
      return it == graphs->end() ? nullptr : &it->second.graph;
    }
  };
  Lookup lookup() const { return {&graphs_}; }

  const MorphemeGraph* graph(std::string_view name) const {
    const auto it = graphs_.find(name);
    return it == graphs_.end() ? nullptr : &it->second;
  }
  const std::map<std::string, MorphemeGraph, std::less<>>& graphs() const noexcept { return graphs_; }

  const AllomorphIndex* index(std::string_view affix_class) const {
    const auto it = indexes_.find(affix_class);
    return it == indexes_.end() ? nullptr : &it->second;
  }

  const DictEntry* find_entry(std::string_view lemma, std::string_view affix_class) const {
    for (const auto& e : lexicon_)
      if (e.lemma == lemma && e.affix_class.raw == affix_class) return &e;
    return nullptr;
  }

  /// Entries whose lemma matches either exactly or once stress is removed.
  std::vector<const DictEntry*> entries_for(std::string_view lemma) const {
    std::vector<const DictEntry*> out;
    const std::string plain = lexicon::strip_stress(lemma);
    for (const auto& e : lexicon_)
      if (e.lemma == lemma || lexicon::strip_stress(e.lemma) == plain) out.push_back(&e);
    return out;
  }

  const std::vector<DictEntry>& lexicon() const noexcept { return lexicon_; }
  const std::vector<InvariableEntry>& invariables() const noexcept { return invariables_; }
  const std::vector<InvariableEntry>& bound_pronouns() const noexcept { return bound_pronouns_; }
  const std::map<std::string, ContractionPattern>& contraction_patterns() const noexcept { return patterns_; }
  const Options& options() const noexcept { return options_; }

  std::optional<InvariableEntry> pronoun(std::string_view form) const {
    for (const auto& p : bound_pronouns_)
      if (p.form == form) return p;
    for (const auto& p : invariables_)
      if (p.form == form && p.pos == "PRO") return p;
    return std::nullopt;
  }

 private:
  void check_integrity(const MorphemeGraph& g) const {
    for (const auto& path : fst::enumerate_paths(g.graph, lookup(), options_.max_depth)) {
      std::size_t roots = 0;
      bool zero = false;
      bool licensed = false;
      for (const auto& arc : path.arcs) {
        roots += arc.root_slot() != nullptr;
        if (const auto* l = arc.literal()) {
          zero = zero || l->text.empty();
          licensed = licensed || l->note.category == Category::kPronoun || l->note.category == Category::kElisionMark;
        }
      }
      if (roots != 1)
        throw IntegrityError("graph '" + g.name + "': a path has " + std::to_string(roots) + " ROOT slots");
      if (zero && !licensed)
        throw IntegrityError("graph '" + g.name + "': zero morpheme on a path without pronoun or elision mark");
      try {
        decode_features(path, g.default_voice);
      } catch (const IntegrityError& e) {
        throw IntegrityError("graph '" + g.name + "': " + e.what());
      }
    }
  }

  std::vector<DictEntry> lexicon_;
  std::vector<InvariableEntry> invariables_;
  std::vector<InvariableEntry> bound_pronouns_;
  std::map<std::string, ContractionPattern> patterns_;
  Options options_;
  std::map<std::string, MorphemeGraph, std::less<>> graphs_;
  std::map<std::string, AllomorphIndex, std::less<>> indexes_;
};

// ---------------------------------------------------------------------------
// Analysis

inline constexpr std::string_view kRootRole = "ROOT";

struct Segment {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::string text;
  std::string role;   // a Category name or "ROOT"
  std::string value;  // role value, or the allomorph form for ROOT

  friend bool operator==(const Segment&, const Segment&) = default;
};

struct Analysis {
  std::string token;
  std::vector<Segment> segments;
  DictEntry entry;
  AllomorphEntry root;
  FeatureBundle features;

  const Segment& root_segment() const {
    return *std::find_if(segments.begin(), segments.end(), [](const Segment& s) { return s.role == kRootRole; });
  }
};

/// Lowercase, NFC, stress-free.
inline std::string normalize_token(std::string_view token) {
  return lexicon::strip_stress(text::lowercase(text::nfc(token)));
}

inline std::vector<Segment> segments_of(const Trace& trace, std::string_view token) {
  std::vector<Segment> out;
  for (const auto& step : trace.steps) {
    Segment s{step.begin, step.end, std::string(token.substr(step.begin, step.length())), {}, {}};
    if (step.root) {
      s.role = kRootRole;
      s.value = step.root->form;
    } else if (const auto* lit = step.arc.literal()) {
      s.role = std::string(to_string(lit->note.category));
      s.value = lit->note.value;
    }
    out.push_back(std::move(s));
  }
  return out;
}

/// Every segmentation of `token` licensed by an affix-class graph and an
/// allomorph of that class. Ordered by lemma, then path order.
inline std::vector<Analysis> analyze_token(std::string_view raw_token, const CompiledResources& resources) {
  const std::string token = normalize_token(raw_token);
  std::vector<Analysis> out;
  if (token.empty()) return out;
  for (const auto& [name, g] : resources.graphs()) {
    if (g.kind != MorphemeGraph::Kind::kAffixClass) continue;
    const AllomorphIndex* index = resources.index(name);
    if (index == nullptr) continue;
    for (const auto& trace : fst::match_token(g.graph, token, *index, resources.lookup(), resources.options().max_depth)) {
      const auto root = std::find_if(trace.steps.begin(), trace.steps.end(), [](const auto& s) { return s.root.has_value(); });
      const DictEntry* entry = resources.find_entry(root->root->lemma, root->root->affix_class.raw);
      Analysis a{token, segments_of(trace, token), *entry, *root->root, decode_features(trace, g.default_voice)};
      if (a.features.pronoun)
        if (auto full = resources.pronoun(a.features.pronoun->form)) a.features.pronoun = std::move(full);
      const bool duplicate = std::any_of(out.begin(), out.end(), [&](const Analysis& b) {
        return b.entry == a.entry && b.segments == a.segments;
      });
      if (!duplicate) out.push_back(std::move(a));
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const Analysis& a, const Analysis& b) { return a.entry.lemma < b.entry.lemma; });
  return out;
}

// ---------------------------------------------------------------------------
// Paradigms

struct ParadigmForm {
  std::string form;
  FeatureBundle features;

  friend bool operator==(const ParadigmForm& a, const ParadigmForm& b) {
    return a.form == b.form && a.features == b.features;
  }
  friend bool operator<(const ParadigmForm& a, const ParadigmForm& b) {
    return std::tie(a.form, a.features) < std::tie(b.form, b.features);
  }
};

inline bool is_contraction_path(const Path& path) {
  return std::any_of(path.arcs.begin(), path.arcs.end(), [](const Arc& arc) {
    const auto* l = arc.literal();
    return l && (l->note.category == Category::kPronoun || l->note.category == Category::kElisionMark);
  });
}

/// All plain inflected forms of an entry (no pronoun contractions, no
/// elisions), sorted and deduplicated.
inline std::vector<ParadigmForm> generate_paradigm(const DictEntry& entry, const CompiledResources& resources) {
  const MorphemeGraph* g = resources.graph(entry.affix_class.raw);
  if (g == nullptr || g->kind != MorphemeGraph::Kind::kAffixClass)
    throw CompileError({"no morpheme graph for affix class '" + entry.affix_class.raw + "'"});
  std::vector<AllomorphEntry> allomorphs;
  if (const AllomorphIndex* index = resources.index(entry.affix_class.raw))
    index->for_each([&](const AllomorphEntry& a) {
      if (a.lemma == entry.lemma && a.group == entry.group) allomorphs.push_back(a);
    });
  if (allomorphs.empty())
    throw CompileError({"no allomorphs for '" + entry.lemma + "' (missing inflection transducer?)"});

  std::set<ParadigmForm> forms;
  for (const auto& path : fst::enumerate_paths(g->graph, resources.lookup(), resources.options().max_depth)) {
    if (is_contraction_path(path)) continue;
    const FeatureBundle features = decode_features(path, g->default_voice);
    for (const auto& allomorph : allomorphs) {
      std::string form;
      bool admitted = true;
      for (const auto& arc : path.arcs) {
        if (const auto* l = arc.literal()) {
          form += l->text;
        } else if (const auto* slot = arc.root_slot()) {
          admitted = slot->admits(lexicon::root_tag(allomorph), allomorph.surface_key);
          if (!admitted) break;
          form += allomorph.surface_key;
        }
      }
      if (!admitted) continue;
      forms.insert({std::move(form), features});
      if (forms.size() > resources.options().paradigm_ceiling)
        throw CompileError({"paradigm of '" + entry.lemma + "' exceeds the ceiling of " +
                            std::to_string(resources.options().paradigm_ceiling) + " forms"});
    }
  }
  return {forms.begin(), forms.end()};
}

}  // namespace mora::morpho
