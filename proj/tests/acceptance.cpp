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

// Acceptance run over the sample resources: one PASS/FAIL line per
// criterion, nonzero exit status if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "mora/contraction.hpp"
#include "mora/corpus_eval.hpp"
#include "support.hpp"

namespace {

using namespace mora;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::string detail;
};

int failures = 0;

void run(int id, const char* title, double limit_seconds, const std::function<Outcome()>& check) {
  const auto start = Clock::now();
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (limit_seconds > 0 && secs >= limit_seconds) {
    o.ok = false;
    o.detail += " (over the " + std::to_string(limit_seconds) + " s limit)";
  }
  if (!o.ok) ++failures;
  std::printf("%s %d %s [%.3f s]%s%s\n", o.ok ? "PASS" : "FAIL", id, title, secs, o.detail.empty() ? "" : ": ",
              o.detail.c_str());
}

const morpho::CompiledResources& res() { return fixture::sample().resources; }

std::string join(const std::set<std::string>& s) {
  std::string out;
  for (const auto& x : s) out += (out.empty() ? "" : " ") + x;
  return out;
}

bool analyzes_to(const std::string& token, std::string_view lemma) {
  const auto a = morpho::analyze_token(token, res());
  return std::any_of(a.begin(), a.end(), [&](const morpho::Analysis& x) { return x.entry.lemma == lemma; });
}

Outcome compile_printed_entries() {
  const std::string expected =
      "andriana,andriana.V+a16v2Jo+gc3+0\n"
      "andrián,andriana.V+a16v2Jo+gc3+ana\n"
      "andrián,andriana.V+a16v2Jo+gc3+ina\n"
      "andrián,andriana.V+a16v2Jo+gc3+a\n"
      "andrián,andriana.V+a16v2Jo+gc3+imprt\n"
      "àndro,àndro.V+a1ps20vAy+gc1+0\n"
      "andró,àndro.V+a1ps20vAy+gc1+ana\n"
      "andró,àndro.V+a1ps20vAy+gc1+a\n"
      "andró,àndro.V+a1ps20vAy+gc1+imprt\n";
  const auto lexicon = lexicon::parse_dema_vs("andriana, V3iv+a16v2Jo+gc3\nàndro, V0av(1)+a1ps20vAy+gc1\n");
  const auto got = inflect::serialize(inflect::compile_lexicon(lexicon, fixture::sample().loaded.transducers));
  if (got != expected) return {false, "got:\n" + got};
  return {true, "9 entries"};
}

Outcome andro_paradigm() {
  const std::set<std::string> expected{"androana", "androy",   "handro", "handroana", "hotafandro",
                                       "mandro",   "mandroa", "nandro", "nandroana", "tafandro"};
  const auto got = fixture::forms_of(morpho::generate_paradigm(fixture::entry("àndro"), res()));
  if (got != expected) return {false, join(got)};
  return {true, "10 forms"};
}

Outcome fafy() {
  std::set<std::string> forms;
  for (const auto& a : inflect::generate_allomorphs(fixture::entry("fàfy"), fixture::sample().loaded.transducers.at("0are")))
    forms.insert(a.form);
  if (forms != std::set<std::string>{"fàfy", "àfy", "afáz", "fafáz"}) return {false, "allomorphs " + join(forms)};
  for (const char* t : {"mifafy", "mamafy", "mamafaza", "fafazo"})
    if (!analyzes_to(t, "fàfy")) return {false, std::string(t) + " not analyzed"};
  return {true, "4 allomorphs, 4 forms"};
}

Outcome tahiry() {
  for (const char* t : {"mitahiry", "mitahiriza", "mahatahiry", "voatahiry", "tehirizina", "tahirizina", "tehirizo",
                        "tahirizo"}) {
    const auto analyses = morpho::analyze_token(t, res());
    const std::string_view token = t;
    bool ok = false;
    for (const auto& a : analyses) {
      if (a.entry.lemma != "tàhiry") continue;
      if (token.ends_with("ina") && a.features.voice != morpho::Voice::kObj) continue;
      if (token.ends_with("o") && a.features.mode != morpho::Mode::kImperative) continue;
      ok = true;
    }
    if (!ok) return {false, std::string(t)};
  }
  return {true, "8 forms"};
}

Outcome contractions() {
  const auto a = contraction::analyze_contracted("nojereny", res());
  if (a.size() != 1) return {false, "nojereny: " + std::to_string(a.size()) + " analyses"};
  const std::vector<std::tuple<std::string, std::string, std::string>> want{
      {"no", "TENSE", "past"}, {"jere", "ROOT", "jeré"}, {"", "SUFFIX_VOICE", "obj"}, {"ny", "PRONOUN", "ny"}};
  std::vector<std::tuple<std::string, std::string, std::string>> got;
  for (const auto& s : a[0].segments) got.emplace_back(s.text, s.role, s.value);
  if (got != want || a[0].entry.lemma != "jèry") return {false, "nojereny segmentation"};
  for (const auto& [token, mark] : {std::pair{"noraisin'", "apostrophe"}, std::pair{"hanaovan-", "dash"}}) {
    const auto e = contraction::analyze_contracted(token, res());
    if (e.empty() || e[0].segments.back().role != "ELISION_MARK" || e[0].segments.back().value != mark)
      return {false, token};
  }
  return {true, "nojereny, noraisin', hanaovan-"};
}

Outcome round_trip() {
  std::set<std::string> stems, affixes;
  std::size_t forms = 0;
  for (const auto& e : res().lexicon()) {
    stems.insert(e.stem_class.raw);
    affixes.insert(e.affix_class.raw);
    for (const auto& f : morpho::generate_paradigm(e, res())) {
      ++forms;
      const auto back = morpho::analyze_token(f.form, res());
      if (std::none_of(back.begin(), back.end(), [&](const morpho::Analysis& a) { return a.entry == e; }))
        return {false, e.lemma + " -> " + f.form};
    }
  }
  const bool breadth = res().lexicon().size() >= 12 && stems.size() >= 6 && affixes.size() >= 6;
  char buf[128];
  std::snprintf(buf, sizeof buf, "%zu verbs, %zu stem classes, %zu affix classes, %zu forms", res().lexicon().size(),
                stems.size(), affixes.size(), forms);
  return {breadth, buf};
}

// 500 tokens: paradigm forms, contracted and elided forms, mutated forms
// and random letter strings.
std::vector<std::string> mixed_corpus() {
  std::mt19937 rng(20260101);
  std::vector<std::string> plain, contracted;
  for (const auto& [token, readings] : fixture::sample_oracle()) {
    bool is_contracted = false;
    for (const auto& r : readings)
      for (const auto& part : r.second) is_contracted |= part.second == "PRONOUN" || part.second == "ELISION_MARK";
    (is_contracted ? contracted : plain).push_back(token);
  }
  const std::string letters = "aehikmnorstvyz";
  auto pick = [&](const std::vector<std::string>& v) { return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)]; };
  auto letter = [&] { return letters[std::uniform_int_distribution<std::size_t>(0, letters.size() - 1)(rng)]; };
  std::vector<std::string> out;
  while (out.size() < 500) {
    switch (out.size() % 5) {
      case 0:
      case 1: out.push_back(pick(plain)); break;
      case 2: out.push_back(pick(contracted)); break;
      case 3: {
        std::string t = pick(plain);
        const auto at = std::uniform_int_distribution<std::size_t>(0, t.size() - 1)(rng);
        switch (rng() % 3) {
          case 0: t[at] = letter(); break;
          case 1: t.insert(t.begin() + static_cast<std::ptrdiff_t>(at), letter()); break;
          default: t.erase(at, 1);
        }
        out.push_back(t.empty() ? "x" : t);
        break;
      }
      default: {
        std::string t;
        for (auto n = 3 + rng() % 8; n > 0; --n) t += letter();
        out.push_back(t);
      }
    }
  }
  return out;
}

Outcome oracle_equivalence() {
  const auto corpus = mixed_corpus();
  std::size_t agree = 0, analyzable = 0;
  std::string first_mismatch;
  for (const auto& t : corpus) {
    const auto want = fixture::oracle_readings(t);
    analyzable += !want.empty();
    if (fixture::analyzer_readings(t, res()) == want)
      ++agree;
    else if (first_mismatch.empty())
      first_mismatch = t;
  }
  std::string detail = std::to_string(agree) + "/" + std::to_string(corpus.size()) + " agree, " +
                       std::to_string(analyzable) + " analyzable";
  if (!first_mismatch.empty()) detail += ", first mismatch " + first_mismatch;
  return {agree == corpus.size(), detail};
}

Outcome evaluation_arithmetic() {
  using corpus_eval::GoldRecord;
  std::vector<GoldRecord> gold;
  // 25 analyzable, 3 in the dictionary but not covered, 15 unknown.
  const auto& forms = fixture::sample_oracle();
  for (auto it = forms.begin(); gold.size() < 25; ++it) {
    const auto& [lemma, parts] = *it->second.begin();
    gold.push_back({it->first, true, lemma, true, false, false});
  }
  for (const char* t : {"manaotao", "mitahitahiry", "mandrondro"}) gold.push_back({t, true, "tào", true, false, false});
  for (int i = 0; i < 15; ++i) gold.push_back({"unknown" + std::to_string(i), true, std::nullopt, false, i < 10, i < 4});
  const auto r = corpus_eval::evaluate(gold, res());
  const bool headline = r.lexical_coverage.rounded_percent() == 65 && r.analyzer_success_rate.rounded_percent() == 58;

  const auto dir = fixture::sample_dir() / "corpus";
  const auto mini_gold = corpus_eval::parse_gold_tsv(resources::read_file(dir / "mini.gold.tsv"));
  corpus_eval::check_alignment(mini_gold, corpus_eval::tokenize(resources::read_file(dir / "mini.txt")));
  const auto m = corpus_eval::evaluate(mini_gold, res());
  // Hand tally of the mini corpus.
  const bool tally = m.lexical_coverage.numerator == 8 && m.lexical_coverage.denominator == 9 &&
                     m.analyzer_success_rate.numerator == 7 && m.stem_class_coverage.numerator == 9 &&
                     m.affix_class_coverage.numerator == 8;
  char buf[200];
  std::snprintf(buf, sizeof buf, "43/28/25 -> %ld%% / %ld%%; mini corpus %zu/%zu lexical, %zu/%zu analyzed",
                r.lexical_coverage.rounded_percent(), r.analyzer_success_rate.rounded_percent(),
                m.lexical_coverage.numerator, m.lexical_coverage.denominator, m.analyzer_success_rate.numerator,
                m.analyzer_success_rate.denominator);
  return {headline && tally, buf};
}

Outcome statistics() {
  const auto& stats = fixture::sample().compiled.stats;
  std::size_t largest = 0, total = 0;
  for (const auto& e : res().lexicon()) {
    const auto n = morpho::generate_paradigm(e, res()).size();
    largest = std::max(largest, n);
    total += n;
  }
  char buf[200];
  std::snprintf(buf, sizeof buf, "%zu roots, %zu allomorphs, %.2f variants/root, %.1f forms/verb, largest paradigm %zu (ceiling %zu)",
                stats.roots, stats.entries, stats.mean_variants_per_root(),
                static_cast<double>(total) / static_cast<double>(res().lexicon().size()), largest,
                res().options().paradigm_ceiling);
  return {largest <= res().options().paradigm_ceiling, buf};
}

}  // namespace

int main() {
  fixture::sample();  // resource loading is not part of any timed check
  run(1, "allomorph dictionary reproduction", 1.0, compile_printed_entries);
  run(2, "paradigm reproduction", 1.0, andro_paradigm);
  run(3, "allomorph reproduction", 0, fafy);
  run(4, "affix-class behavior", 0, tahiry);
  run(5, "contraction", 0, contractions);
  run(6, "round trip", 10.0, round_trip);
  run(7, "oracle equivalence", 0, oracle_equivalence);
  run(8, "evaluation arithmetic", 0, evaluation_arithmetic);
  run(9, "statistics and paradigm ceiling", 0, statistics);
  return failures == 0 ? 0 : 1;
}
