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

// Verb-pronoun contractions (nojerena + ny -> nojereny) and elided verb
// forms ending in an apostrophe or a dash.
//
// Bound pronouns come from a table file and are exposed to the graphs as the
// shared graph "prop". Affix graphs either call a shared suffix graph that
// calls prop, or spell PRONOUN arcs inline.

#pragma once

#include "mora/errors.hpp"
#include "mora/lexicon.hpp"
#include "mora/morpho.hpp"

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace mora::contraction {

using lexicon::InvariableEntry;
using morpho::Analysis;
using morpho::Category;
using morpho::CompiledResources;
using morpho::ContractionPattern;
using morpho::MorphemeGraph;

inline constexpr std::string_view kPronounGraph = "prop";

/// pronouns.tbl: one bound pronoun per line, "form feature[+feature...]",
/// e.g. "ny pers:3". '#' starts a comment.
inline std::vector<InvariableEntry> parse_pronoun_table(std::string_view content) {
  std::vector<InvariableEntry> out;
  std::istringstream in{std::string(content)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::istringstream words{std::string(line)};
    std::string form;
    std::string features;
    if (!(words >> form)) continue;
    if (!(words >> features)) throw ParseError("pronoun '" + form + "' has no person/number features", line_no);
    std::string extra;
    if (words >> extra) throw ParseError("unexpected '" + extra + "'", line_no);
    for (char c : form)
      if (c < 'a' || c > 'z') throw ParseError("pronoun '" + form + "' is outside the surface alphabet", line_no);
    InvariableEntry entry{form, "PRO", "V", {}};
    std::size_t start = 0;
    while (start <= features.size()) {
      const auto plus = features.find('+', start);
      auto f = features.substr(start, plus == std::string::npos ? std::string::npos : plus - start);
      if (f.empty()) throw ParseError("empty feature", line_no);
      entry.features.push_back(std::move(f));
      if (plus == std::string::npos) break;
      start = plus + 1;
    }
    if (std::any_of(out.begin(), out.end(), [&](const InvariableEntry& e) { return e.form == form; }))
      throw ParseError("duplicate pronoun '" + form + "'", line_no);
    out.push_back(std::move(entry));
  }
  return out;
}

/// The shared graph of bound pronouns; empty when the table is.
inline MorphemeGraph pronoun_graph(const std::vector<InvariableEntry>& pronouns) {
  MorphemeGraph g{std::string(kPronounGraph), MorphemeGraph::Kind::kShared, {}, std::nullopt};
  for (const auto& p : pronouns)
    g.graph.add_line({{morpho::Arc::literal(p.form, {Category::kPronoun, p.form})}});
  return g;
}

/// Raw inputs before integration. `pronouns` unset means contractions are
/// not available: PRONOUN arcs are dropped and prop matches nothing.
struct ResourceBundle {
  std::vector<lexicon::DictEntry> lexicon;
  std::vector<lexicon::AllomorphEntry> allomorphs;
  std::vector<MorphemeGraph> graphs;
  std::vector<InvariableEntry> invariables;
  std::optional<std::vector<InvariableEntry>> pronouns;
  morpho::Options options;
};

namespace detail {

inline bool has_pronoun_arc(const morpho::Graph& g) {
  for (std::size_t s = 0; s < g.size(); ++s)
    for (const auto& t : g.state(s).out)
      if (const auto* l = t.arc.literal(); l && l->note.category == Category::kPronoun) return true;
  return false;
}

inline bool reaches_pronouns(const std::string& name, const std::map<std::string, const MorphemeGraph*>& by_name,
                             std::set<std::string>& seen) {
  if (!seen.insert(name).second) return false;
  const auto it = by_name.find(name);
  if (it == by_name.end()) return false;
  if (has_pronoun_arc(it->second->graph)) return true;
  for (const auto& callee : it->second->graph.called_graphs())
    if (reaches_pronouns(callee, by_name, seen)) return true;
  return false;
}

}  // namespace detail

/// Wires the pronoun graph into the graph registry, validates every PRONOUN
/// arc against the pronoun inventory, records each affix graph's
/// contraction pattern and builds the analyzer resources.
inline CompiledResources integrate_with_analyzer(ResourceBundle bundle) {
  const bool enabled = bundle.pronouns.has_value();
  std::vector<InvariableEntry> pronouns = enabled ? *bundle.pronouns : std::vector<InvariableEntry>{};
  for (const auto& g : bundle.graphs)
    if (g.name == kPronounGraph) throw CompileError({"graph name '" + g.name + "' is reserved for the pronoun table"});
  bundle.graphs.push_back(pronoun_graph(pronouns));

  std::map<std::string, const MorphemeGraph*> by_name;
  for (const auto& g : bundle.graphs) by_name[g.name] = &g;
  std::map<std::string, ContractionPattern> patterns;
  for (const auto& g : bundle.graphs) {
    if (g.kind != MorphemeGraph::Kind::kAffixClass) continue;
    ContractionPattern p = ContractionPattern::kNone;
    if (detail::has_pronoun_arc(g.graph)) {
      p = ContractionPattern::kEmbeddedPronouns;
    } else {
      std::set<std::string> seen;
      for (const auto& callee : g.graph.called_graphs())
        if (detail::reaches_pronouns(callee, by_name, seen)) p = ContractionPattern::kSharedSuffixGraph;
    }
    patterns[g.name] = p;
  }

  auto known = [&](std::string_view form) {
    return std::any_of(pronouns.begin(), pronouns.end(), [&](const auto& e) { return e.form == form; }) ||
           std::any_of(bundle.invariables.begin(), bundle.invariables.end(),
                       [&](const auto& e) { return e.form == form && e.pos == "PRO"; });
  };
  for (auto& g : bundle.graphs) {
    if (enabled) {
      for (std::size_t s = 0; s < g.graph.size(); ++s)
        for (const auto& t : g.graph.state(s).out)
          if (const auto* l = t.arc.literal(); l && l->note.category == Category::kPronoun && !known(l->note.value))
            throw IntegrityError("graph '" + g.name + "': pronoun '" + l->note.value + "' is not in the pronoun table");
    } else {
      g.graph = g.graph.without_arcs([](const morpho::Arc& arc) {
        const auto* l = arc.literal();
        return l && l->note.category == Category::kPronoun;
      });
    }
  }
  return CompiledResources(std::move(bundle.lexicon), bundle.allomorphs, std::move(bundle.graphs),
                           std::move(bundle.invariables), std::move(pronouns), std::move(patterns), bundle.options);
}

inline bool is_contracted(const Analysis& a) {
  if (a.segments.empty()) return false;
  const auto& last = a.segments.back().role;
  return last == morpho::to_string(Category::kPronoun) || last == morpho::to_string(Category::kElisionMark);
}

/// Analyses whose final segment is a bound pronoun or an elision mark.
inline std::vector<Analysis> analyze_contracted(std::string_view token, const CompiledResources& resources) {
  auto all = morpho::analyze_token(token, resources);
  std::erase_if(all, [](const Analysis& a) { return !is_contracted(a); });
  return all;
}

}  // namespace mora::contraction
