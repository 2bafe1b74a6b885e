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

// JSON records for analyses, paradigms and coverage reports. Keys are
// emitted in a fixed order; every top-level record carries "schema".

#pragma once

#include <nlohmann/json.hpp>
#include "mora/corpus_eval.hpp"
#include "mora/morpho.hpp"

#include <string>
#include <vector>

namespace mora::json {

using ordered = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

inline ordered features(const morpho::FeatureBundle& f) {
  ordered j;
  j["tense"] = morpho::to_string(f.tense);
  j["voice"] = morpho::to_string(f.voice);
  j["aspect"] = morpho::to_string(f.aspect);
  j["mode"] = morpho::to_string(f.mode);
  j["pronoun"] = f.pronoun ? ordered(f.pronoun->form) : ordered(nullptr);
  return j;
}

inline ordered analysis(const morpho::Analysis& a) {
  ordered j;
  j["lemma"] = a.entry.lemma;
  j["affix_class"] = a.entry.affix_class.raw;
  ordered segments = ordered::array();
  for (const auto& s : a.segments) {
    ordered seg;
    seg["text"] = s.text;
    seg["role"] = s.role;
    seg["value"] = s.value;
    segments.push_back(std::move(seg));
  }
  j["segments"] = std::move(segments);
  j["features"] = features(a.features);
  return j;
}

/// One JSON-lines record per token.
inline ordered token_record(std::string_view token, const std::vector<morpho::Analysis>& analyses) {
  ordered j;
  j["schema"] = kSchemaVersion;
  j["token"] = std::string(token);
  ordered list = ordered::array();
  for (const auto& a : analyses) list.push_back(analysis(a));
  j["analyses"] = std::move(list);
  return j;
}

inline ordered paradigm_record(const lexicon::DictEntry& entry, const std::vector<morpho::ParadigmForm>& forms) {
  ordered j;
  j["schema"] = kSchemaVersion;
  j["lemma"] = entry.lemma;
  j["affix_class"] = entry.affix_class.raw;
  ordered list = ordered::array();
  for (const auto& f : forms) {
    ordered item;
    item["form"] = f.form;
    item["features"] = features(f.features);
    list.push_back(std::move(item));
  }
  j["forms"] = std::move(list);
  return j;
}

inline ordered ratio(const corpus_eval::Ratio& r) {
  ordered j;
  j["numerator"] = r.numerator;
  j["denominator"] = r.denominator;
  j["ratio"] = r.value();
  j["percent"] = r.percent();
  j["rounded_percent"] = r.rounded_percent();
  return j;
}

inline ordered report(const corpus_eval::CoverageReport& r) {
  ordered j;
  j["schema"] = kSchemaVersion;
  j["lexical_coverage"] = ratio(r.lexical_coverage);
  j["analyzer_success_rate"] = ratio(r.analyzer_success_rate);
  j["stem_class_coverage"] = ratio(r.stem_class_coverage);
  j["affix_class_coverage"] = ratio(r.affix_class_coverage);
  j["not_analyzed"] = r.failures;
  return j;
}

}  // namespace mora::json
