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

#include "mora/morpho.hpp"

#include <gtest/gtest.h>

#include <set>
#include <string>
#include <thread>

#include "support.hpp"

namespace {

using namespace mora;
using namespace mora::morpho;

const CompiledResources& res() { return fixture::sample().resources; }

std::vector<std::pair<std::string, std::string>> segs(const Analysis& a) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& s : a.segments) out.emplace_back(s.text, s.role + "=" + s.value);
  return out;
}

FeatureBundle only_path_features(std::string_view dsl) {
  const auto g = parse_graph_dsl(dsl);
  const auto paths = fst::enumerate_paths(g.graph);
  EXPECT_EQ(paths.size(), 1u);
  return decode_features(paths.at(0), g.default_voice);
}

// A one-entry resource set around `rày` (bare root only) with the given
// graph as its class.
CompiledResources single_entry(std::string_view graph_dsl, Options options = {}) {
  auto g = parse_graph_dsl(graph_dsl);
  const auto entry = lexicon::parse_dema_vs_line("rày,V0is+" + g.name + "+gc1");
  const auto allomorphs = inflect::generate_allomorphs(entry, inflect::parse_transducer_dsl("class 0is\nKEEP -> 0\n"));
  return CompiledResources({entry}, allomorphs, {std::move(g)}, {}, {}, {}, options);
}

TEST(GraphDsl, ParsesAlternationsAndCalls) {
  const auto g = parse_graph_dsl(
      "affixclass a9\n"
      "default voice=obj\n"
      "TENSE:{present:\"m\"|past:\"n\"} {VOICE:act_stat:\"i\"|<E>} ROOT:0<<^t>> -> voice=act_stat\n"
      "ROOT:ina CALL:sfx\n");
  EXPECT_EQ(g.name, "a9");
  EXPECT_EQ(g.kind, MorphemeGraph::Kind::kAffixClass);
  EXPECT_EQ(g.default_voice, Voice::kObj);
  struct Stub {
    const Graph* operator()(std::string_view) const { return &leaf; }
    Graph leaf;
  } stub;
  stub.leaf.add_line({{Arc::literal("ina", MorphemeRole{Category::kSuffixVoice, "obj"})}});
  EXPECT_EQ(fst::enumerate_paths(g.graph, std::cref(stub)).size(), 5u);
}

TEST(GraphDsl, SharedGraph) {
  const auto g = parse_graph_dsl("graph sfx\nSUFFIX_VOICE:obj:\"ina\"\n");
  EXPECT_EQ(g.kind, MorphemeGraph::Kind::kShared);
}

TEST(GraphDsl, Rejects) {
  EXPECT_THROW(parse_graph_dsl("affixclass t\nROOT:0 ROOT:ana\n"), ParseError);
  EXPECT_THROW(parse_graph_dsl("affixclass t\nTENSE:present:\"m\"\n"), ParseError);
  EXPECT_THROW(parse_graph_dsl("affixclass t\nTENSE:later:\"m\" ROOT:0\n"), ParseError);
  EXPECT_THROW(parse_graph_dsl("affixclass t\nMOOD:x:\"m\" ROOT:0\n"), ParseError);
  EXPECT_THROW(parse_graph_dsl("affixclass t\nROOT:zz\n"), ParseError);
  EXPECT_THROW(parse_graph_dsl("affixclass t\nROOT:0 SUFFIX_VOICE:obj:\"\"\n"), ParseError);
  EXPECT_THROW(parse_graph_dsl("affixclass t\nROOT:0 -> mood=x\n"), ParseError);
  EXPECT_THROW(parse_graph_dsl("graph s\nROOT:0\n"), ParseError);
  EXPECT_THROW(parse_graph_dsl("ROOT:0\n"), ParseError);
  EXPECT_THROW(parse_graph_dsl("affixclass t\n"), ParseError);
  EXPECT_THROW(parse_graph_dsl("affixclass t\naffixclass u\nROOT:0\n"), ParseError);
  EXPECT_THROW(parse_graph_dsl("affixclass t\nROOT:0 {TENSE:past:\"n\"\n"), ParseError);
  // An optional ROOT makes one expansion rootless.
  EXPECT_THROW(parse_graph_dsl("affixclass t\n{ROOT:0|<E>}\n"), ParseError);
}

TEST(GraphDsl, ZeroMorphemeNeedsContractionContext) {
  EXPECT_NO_THROW(parse_graph_dsl("affixclass t\nROOT:0 SUFFIX_VOICE:obj:\"\" PRONOUN:ny:\"ny\"\n"));
  EXPECT_NO_THROW(parse_graph_dsl("affixclass t\nROOT:0 SUFFIX_VOICE:obj:\"\" CALL:prop\n"));
}

TEST(GraphDsl, ErrorsCarryLine) {
  try {
    parse_graph_dsl("affixclass t\n# fine\nROOT:0\nROOT:0 ROOT:0\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
  }
}

TEST(BareRootGraph, AcceptsOnlyTheRoot) {
  const auto r = single_entry("affixclass t\nROOT:0 -> ");
  const auto forms = generate_paradigm(r.lexicon().front(), r);
  ASSERT_EQ(forms.size(), 1u);
  EXPECT_EQ(forms[0].form, "ray");
  EXPECT_EQ(analyze_token("ray", r).size(), 1u);
  EXPECT_EQ(analyze_token("Rày", r).size(), 1u);
  EXPECT_TRUE(analyze_token("mray", r).empty());
  EXPECT_TRUE(analyze_token("", r).empty());
}

TEST(Analyze, Mitahiry) {
  const auto a = analyze_token("mitahiry", res());
  ASSERT_EQ(a.size(), 1u);
  EXPECT_EQ(a[0].entry.lemma, "tàhiry");
  EXPECT_EQ(segs(a[0]), (std::vector<std::pair<std::string, std::string>>{
                            {"m", "TENSE=present"}, {"i", "VOICE=act_stat"}, {"tahiry", "ROOT=tàhiry"}}));
  EXPECT_EQ(a[0].features.tense, Tense::kPresent);
  EXPECT_EQ(a[0].features.voice, Voice::kActStat);
}

TEST(Analyze, TwoObjectiveStems) {
  const auto te = analyze_token("tehirizina", res());
  const auto ta = analyze_token("tahirizina", res());
  ASSERT_EQ(te.size(), 1u);
  ASSERT_EQ(ta.size(), 1u);
  EXPECT_EQ(te[0].entry.lemma, "tàhiry");
  EXPECT_EQ(ta[0].entry.lemma, "tàhiry");
  EXPECT_NE(te[0].root.form, ta[0].root.form);
  EXPECT_EQ(te[0].segments.back().role, "SUFFIX_VOICE");
  EXPECT_EQ(te[0].segments.back().text, "ina");
  EXPECT_EQ(te[0].features.voice, Voice::kObj);
  EXPECT_EQ(ta[0].features.voice, Voice::kObj);
}

TEST(Analyze, Handroana) {
  const auto a = analyze_token("handroana", res());
  ASSERT_EQ(a.size(), 1u);
  EXPECT_EQ(segs(a[0]), (std::vector<std::pair<std::string, std::string>>{
                            {"h", "TENSE=future"}, {"andro", "ROOT=andró"}, {"ana", "SUFFIX_VOICE=circ"}}));
  EXPECT_EQ(a[0].features.tense, Tense::kFuture);
}

TEST(Analyze, TahiryFormList) {
  for (const char* form : {"mitahiry", "mitahiriza", "mahatahiry", "voatahiry", "tehirizina", "tahirizina", "tehirizo",
                           "tahirizo"}) {
    const auto a = analyze_token(form, res());
    ASSERT_FALSE(a.empty()) << form;
    EXPECT_EQ(a[0].entry.lemma, "tàhiry") << form;
    const std::string_view f = form;
    if (f.ends_with("ina")) {
      EXPECT_EQ(a[0].features.voice, Voice::kObj) << form;
    }
    if (f.ends_with("o")) {
      EXPECT_EQ(a[0].features.mode, Mode::kImperative) << form;
    }
  }
}

TEST(Analyze, UnknownAndCaseInsensitive) {
  EXPECT_TRUE(analyze_token("xyzzy", res()).empty());
  EXPECT_TRUE(analyze_token("andro", res()).empty());  // bare roots take a prefix in this class
  EXPECT_EQ(analyze_token("Mandro", res()).size(), 1u);
  EXPECT_EQ(analyze_token("mandró", res()).size(), 1u);
}

TEST(DecodeFeatures, PresentActiveStative) {
  const auto f = only_path_features("affixclass t\nTENSE:present:\"m\" VOICE:act_stat:\"i\" ROOT:0\n");
  EXPECT_EQ(f.tense, Tense::kPresent);
  EXPECT_EQ(f.voice, Voice::kActStat);
  EXPECT_EQ(f.aspect, Aspect::kNeutral);
  EXPECT_EQ(f.mode, Mode::kIndicative);
}

TEST(DecodeFeatures, TafaWithoutVoice) {
  const auto f = only_path_features("affixclass t\nASPECT:tafa:\"tafa\" ROOT:0\n");
  EXPECT_EQ(f.aspect, Aspect::kTafa);
  EXPECT_EQ(f.tense, Tense::kPresent);
  EXPECT_EQ(f.voice, Voice::kUnresolved);
  EXPECT_EQ(only_path_features("affixclass t\ndefault voice=loc\nROOT:0\n").voice, Voice::kLoc);
  EXPECT_EQ(only_path_features("affixclass t\nROOT:imprt IMPERATIVE:o:\"o\"\n").mode, Mode::kImperative);
}

TEST(DecodeFeatures, Nojereny) {
  const auto a = analyze_token("nojereny", res());
  ASSERT_EQ(a.size(), 1u);
  EXPECT_EQ(a[0].features.tense, Tense::kPast);
  EXPECT_EQ(a[0].features.voice, Voice::kObj);
  ASSERT_TRUE(a[0].features.pronoun.has_value());
  EXPECT_EQ(a[0].features.pronoun->form, "ny");
}

TEST(DecodeFeatures, ConflictsFailAtLoadTime) {
  EXPECT_THROW(single_entry("affixclass t\nROOT:ana SUFFIX_VOICE:circ:\"ana\" -> voice=obj\n"), IntegrityError);
  EXPECT_THROW(single_entry("affixclass t\nTENSE:past:\"n\" TENSE:future:\"h\" ROOT:0\n"), IntegrityError);
  EXPECT_NO_THROW(single_entry("affixclass t\nROOT:ana SUFFIX_VOICE:circ:\"ana\" -> voice=circ\n"));
}

TEST(Paradigm, Andro) {
  const auto forms = generate_paradigm(fixture::entry("àndro"), res());
  EXPECT_EQ(fixture::forms_of(forms), (std::set<std::string>{"androana", "androy", "handro", "handroana", "hotafandro",
                                                              "mandro", "mandroa", "nandro", "nandroana", "tafandro"}));
  EXPECT_TRUE(std::is_sorted(forms.begin(), forms.end()));
}

TEST(Paradigm, FafyIncludesPrintedForms) {
  const auto forms = fixture::forms_of(generate_paradigm(fixture::entry("fàfy"), res()));
  for (const char* f : {"mifafy", "mamafy", "mamafaza", "fafazo"}) EXPECT_TRUE(forms.count(f)) << f;
}

TEST(Paradigm, MatchesOracleWithoutContractions) {
  // The paradigm is the oracle's set of readings for the entry, minus
  // pronoun and elision paths.
  for (const auto& e : res().lexicon()) {
    std::set<std::string> expected;
    for (const auto& [token, readings] : fixture::sample_oracle())
      for (const auto& [lemma, parts] : readings) {
        const bool contracted = std::any_of(parts.begin(), parts.end(), [](const auto& p) {
          return p.second == "PRONOUN" || p.second == "ELISION_MARK";
        });
        if (lemma == e.lemma && !contracted) expected.insert(token);
      }
    EXPECT_EQ(fixture::forms_of(generate_paradigm(e, res())), expected) << e.lemma;
  }
}

TEST(Paradigm, RoundTripsEveryEntry) {
  std::set<std::string> stem_classes, affix_classes;
  for (const auto& e : res().lexicon()) {
    stem_classes.insert(e.stem_class.raw);
    affix_classes.insert(e.affix_class.raw);
    const auto forms = generate_paradigm(e, res());
    EXPECT_FALSE(forms.empty()) << e.lemma;
    EXPECT_LE(forms.size(), res().options().paradigm_ceiling);
    for (const auto& f : forms) {
      const auto analyses = analyze_token(f.form, res());
      const bool back = std::any_of(analyses.begin(), analyses.end(),
                                    [&](const Analysis& a) { return a.entry == e && a.features == f.features; });
      EXPECT_TRUE(back) << e.lemma << " -> " << f.form;
    }
  }
  EXPECT_GE(res().lexicon().size(), 12u);
  EXPECT_GE(stem_classes.size(), 6u);
  EXPECT_GE(affix_classes.size(), 6u);
}

TEST(Paradigm, Ceiling) {
  auto loaded = resources::load(resources::load_config(fixture::sample_dir() / "mora.conf"));
  const auto small = resources::build(std::move(loaded), Options{fst::kDefaultMaxDepth, 5});
  EXPECT_THROW(generate_paradigm(fixture::entry("àndro"), small), CompileError);
}

TEST(Paradigm, MissingGraph) {
  const auto e = lexicon::parse_dema_vs_line("àndro,V0av(1)+nosuchclass+gc1");
  EXPECT_THROW(generate_paradigm(e, res()), CompileError);
}

TEST(Analyze, SegmentsPartitionTheToken) {
  for (const auto& [token, readings] : fixture::sample_oracle()) {
    (void)readings;
    for (const auto& a : analyze_token(token, res())) {
      std::string joined;
      std::size_t pos = 0;
      int roots = 0;
      for (const auto& s : a.segments) {
        EXPECT_EQ(s.begin, pos);
        pos = s.end;
        joined += s.text;
        roots += s.role == kRootRole;
      }
      EXPECT_EQ(joined, token);
      EXPECT_EQ(roots, 1);
      if (a.features.mode == Mode::kImperative) {
        EXPECT_TRUE(std::any_of(a.segments.begin(), a.segments.end(),
                                [](const Segment& s) { return s.role == "IMPERATIVE"; }));
      }
    }
  }
}

TEST(Analyze, ConcurrentQueriesAgree) {
  std::vector<std::string> tokens;
  for (const auto& [token, readings] : fixture::sample_oracle()) tokens.push_back(token);
  std::vector<std::set<fixture::Reading>> serial;
  for (const auto& t : tokens) serial.push_back(fixture::analyzer_readings(t, res()));
  std::vector<std::thread> threads;
  std::vector<int> mismatches(4, 0);
  for (int k = 0; k < 4; ++k)
    threads.emplace_back([&, k] {
      for (std::size_t i = 0; i < tokens.size(); ++i)
        if (fixture::analyzer_readings(tokens[i], res()) != serial[i]) ++mismatches[k];
    });
  for (auto& t : threads) t.join();
  for (int m : mismatches) EXPECT_EQ(m, 0);
}

TEST(AffixClass, FirstFieldMatchesImperativeA) {
  for (const auto& e : res().lexicon()) {
    bool has_a = false;
    for (const auto& path : fst::enumerate_paths(res().graph(e.affix_class.raw)->graph, res().lookup()))
      for (const auto& arc : path.arcs)
        if (const auto* l = arc.literal(); l && l->note.category == Category::kImperative && l->note.value == "a")
          has_a = true;
    EXPECT_EQ(has_a, e.affix_class.field1_imperative_a) << e.affix_class.raw;
  }
}

}  // namespace
