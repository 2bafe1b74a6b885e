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

// Shared fixtures: the sample resource set and a brute-force analysis
// oracle that generates every surface string the resources license.

#pragma once

#include "mora/inflect.hpp"
#include "mora/morpho.hpp"
#include "mora/resource_set.hpp"
#include "mora/text.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <regex>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace mora::fixture {

inline std::filesystem::path sample_dir() { return MORA_SAMPLE_DIR; }

struct Sample {
  resources::LoadedResources loaded;
  inflect::CompiledLexicon compiled;
  morpho::CompiledResources resources;

  Sample()
      : loaded(resources::load(resources::load_config(sample_dir() / "mora.conf"))),
        compiled(inflect::compile_lexicon(loaded.lexicon, loaded.transducers)),
        resources(resources::build(loaded, compiled.entries)) {}
};

inline const Sample& sample() {
  static const Sample s;
  return s;
}

/// Sample resources with contractions switched off.
inline const morpho::CompiledResources& sample_without_pronouns() {
  static const morpho::CompiledResources r = [] {
    auto loaded = resources::load(resources::load_config(sample_dir() / "mora.conf"));
    loaded.pronouns.reset();
    return resources::build(std::move(loaded));
  }();
  return r;
}

inline const lexicon::DictEntry& entry(std::string_view lemma) {
  for (const auto& e : sample().resources.lexicon())
    if (e.lemma == text::nfc(lemma)) return e;
  throw std::out_of_range("no sample entry " + std::string(lemma));
}

// ---------------------------------------------------------------------------
// Oracle

/// (lemma, [(segment text, role)]) — one reading of a token.
using Reading = std::pair<std::string, std::vector<std::pair<std::string, std::string>>>;

inline Reading reading_of(const morpho::Analysis& a) {
  Reading r{a.entry.lemma, {}};
  for (const auto& s : a.segments) r.second.emplace_back(s.text, s.role);
  return r;
}

/// Accented vowels spelled out independently of the library's table.
inline std::string plain_letters(std::string s) {
  static const std::pair<const char*, const char*> kAccents[] = {
      {"à", "a"}, {"á", "a"}, {"è", "e"}, {"é", "e"}, {"ì", "i"},
      {"í", "i"}, {"ò", "o"}, {"ó", "o"}, {"ỳ", "y"}, {"ý", "y"}};
  for (const auto& [from, to] : kAccents)
    for (auto pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos))
      s.replace(pos, std::string_view(from).size(), to);
  return s;
}

/// Expands every path of every affix graph with every allomorph of that
/// class and records which readings each concatenation has. Tokens absent
/// from the table have no reading.
inline std::map<std::string, std::set<Reading>> oracle_table(const morpho::CompiledResources& res,
                                                            const std::vector<lexicon::AllomorphEntry>& allomorphs) {
  std::map<std::string, std::set<Reading>> table;
  for (const auto& [name, g] : res.graphs()) {
    if (g.kind != morpho::MorphemeGraph::Kind::kAffixClass) continue;
    for (const auto& path : fst::enumerate_paths(g.graph, res.lookup(), res.options().max_depth)) {
      for (const auto& a : allomorphs) {
        if (a.affix_class.raw != name) continue;
        std::string surface;
        Reading r{a.lemma, {}};
        bool ok = true;
        for (const auto& arc : path.arcs) {
          if (const auto* l = arc.literal()) {
            surface += l->text;
            r.second.emplace_back(l->text, std::string(morpho::to_string(l->note.category)));
          } else if (const auto* slot = arc.root_slot()) {
            const std::string plain = plain_letters(a.form);
            if (slot->tag != lexicon::to_string(a.compat_tag) ||
                (slot->filter && !std::regex_search(plain, std::regex(slot->filter->pattern())))) {
              ok = false;
              break;
            }
            surface += plain;
            r.second.emplace_back(plain, "ROOT");
          }
        }
        if (ok) table[surface].insert(std::move(r));
      }
    }
  }
  return table;
}

inline const std::map<std::string, std::set<Reading>>& sample_oracle() {
  static const auto table = oracle_table(sample().resources, sample().compiled.entries);
  return table;
}

inline std::set<Reading> analyzer_readings(std::string_view token, const morpho::CompiledResources& res) {
  std::set<Reading> out;
  for (const auto& a : morpho::analyze_token(token, res)) out.insert(reading_of(a));
  return out;
}

inline std::set<Reading> oracle_readings(const std::string& token) {
  const auto& t = sample_oracle();
  const auto it = t.find(token);
  return it == t.end() ? std::set<Reading>{} : it->second;
}

inline std::set<std::string> forms_of(const std::vector<morpho::ParadigmForm>& forms) {
  std::set<std::string> out;
  for (const auto& f : forms) out.insert(f.form);
  return out;
}

}  // namespace mora::fixture
