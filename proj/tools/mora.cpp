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

// mora: compile, inflect, analyze, generate, evaluate.
//
// Resources are named by a config file (--config, or $MORA_RESOURCES);
// individual paths can be overridden on the command line.

#include "CLI11.hpp"
#include "mora/corpus_eval.hpp"
#include "mora/errors.hpp"
#include "mora/inflect.hpp"
#include "mora/json_output.hpp"
#include "mora/morpho.hpp"
#include "mora/resource_set.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;
using namespace mora;

struct GlobalOptions {
  std::string config;
  std::string dema_vs;
  std::string stem_dir;
  std::string affix_dir;
  std::string dema_invflx;
  std::string pronouns;
  bool no_pronouns = false;
};

resources::ResourceConfig resolve_config(const GlobalOptions& g) {
  std::string path = g.config;
  if (path.empty())
    if (const char* env = std::getenv("MORA_RESOURCES")) path = env;
  resources::ResourceConfig config;
  if (!path.empty()) config = resources::load_config(path);
  if (!g.dema_vs.empty()) config.dema_vs = g.dema_vs;
  if (!g.stem_dir.empty()) config.stem_dir = g.stem_dir;
  if (!g.affix_dir.empty()) config.affix_dir = g.affix_dir;
  if (!g.dema_invflx.empty()) config.dema_invflx = g.dema_invflx;
  if (!g.pronouns.empty()) config.pronouns = g.pronouns;
  if (g.no_pronouns) config.pronouns.clear();
  return config;
}

morpho::CompiledResources load_analyzer(const GlobalOptions& g) {
  return resources::build(resources::load(resolve_config(g)));
}

std::string segments_text(const morpho::Analysis& a) {
  std::string out;
  for (const auto& s : a.segments) {
    if (!out.empty()) out += ' ';
    out += (s.text.empty() ? std::string("0") : s.text) + "(" + s.role + "=" + s.value + ")";
  }
  return out;
}

void print_analyses(std::string_view token, const std::vector<morpho::Analysis>& analyses, bool as_json) {
  if (as_json) {
    std::cout << json::token_record(token, analyses).dump() << '\n';
    return;
  }
  if (analyses.empty()) std::cout << token << "\t?\n";
  for (const auto& a : analyses)
    std::cout << token << '\t' << a.entry.lemma << '\t' << segments_text(a) << '\t' << morpho::to_string(a.features)
              << '\n';
}

const lexicon::DictEntry& entry_for(const morpho::CompiledResources& res, const std::string& lemma) {
  const auto entries = res.entries_for(text::nfc(lemma));
  if (entries.empty()) throw std::runtime_error("lemma '" + lemma + "' is not in the dictionary");
  return *entries.front();
}

int cmd_compile(const GlobalOptions& g, const std::string& output) {
  const auto config = resolve_config(g);
  const auto loaded = resources::load(config);
  const auto compiled = inflect::compile_lexicon(loaded.lexicon, loaded.transducers);
  const std::string text = inflect::serialize(compiled);
  const fs::path target = output.empty() ? config.dema_vsflx : fs::path(output);
  const bool to_stdout = target == "-";
  if (to_stdout) {
    std::cout << text;
  } else {
    if (target.empty()) throw std::runtime_error("no output path: pass -o or set dema_vsflx in the config");
    std::ofstream out(target, std::ios::binary);
    if (!(out << text)) throw std::runtime_error("cannot write '" + target.string() + "'");
  }
  std::ostream& stats = to_stdout ? std::cerr : std::cout;
  char mean[32];
  std::snprintf(mean, sizeof mean, "%.2f", compiled.stats.mean_variants_per_root());
  stats << "roots: " << compiled.stats.roots << "\nentries: " << compiled.stats.entries
        << "\nmean variants per root: " << mean << '\n';
  return 0;
}

int cmd_inflect(const GlobalOptions& g, const std::string& lemma) {
  const auto loaded = resources::load(resolve_config(g));
  const std::string wanted = lexicon::strip_stress(lemma);
  bool found = false;
  for (const auto& entry : loaded.lexicon) {
    if (lexicon::strip_stress(entry.lemma) != wanted) continue;
    found = true;
    const auto it = loaded.transducers.find(entry.stem_class.raw);
    if (it == loaded.transducers.end())
      throw CompileError({"no inflection transducer for stem class '" + entry.stem_class.raw + "'"});
    for (const auto& a : inflect::generate_allomorphs(entry, it->second)) std::cout << lexicon::serialize(a) << '\n';
  }
  if (!found) throw std::runtime_error("lemma '" + lemma + "' is not in the dictionary");
  return 0;
}

int cmd_analyze(const GlobalOptions& g, const std::vector<std::string>& tokens, const std::string& file, bool as_json) {
  const auto res = load_analyzer(g);
  std::vector<std::string> words;
  for (const auto& t : tokens)
    for (const auto& tok : corpus_eval::tokenize(t)) words.push_back(tok.text);
  if (!file.empty())
    for (const auto& tok : corpus_eval::tokenize(resources::read_file(file))) words.push_back(tok.text);
  if (tokens.empty() && file.empty()) {
    std::string line;
    while (std::getline(std::cin, line))
      for (const auto& tok : corpus_eval::tokenize(line)) words.push_back(tok.text);
  }
  for (const auto& w : words) print_analyses(w, morpho::analyze_token(w, res), as_json);
  return 0;
}

int cmd_generate(const GlobalOptions& g, const std::string& lemma, bool as_json) {
  const auto res = load_analyzer(g);
  const auto& entry = entry_for(res, lemma);
  const auto forms = morpho::generate_paradigm(entry, res);
  if (as_json) {
    std::cout << json::paradigm_record(entry, forms).dump() << '\n';
    return 0;
  }
  for (const auto& f : forms) std::cout << f.form << '\t' << morpho::to_string(f.features) << '\n';
  return 0;
}

int cmd_evaluate(const GlobalOptions& g, const std::string& gold_path, const std::string& text_path, bool as_json) {
  const auto res = load_analyzer(g);
  const auto gold = corpus_eval::parse_gold_tsv(resources::read_file(gold_path));
  if (!text_path.empty()) corpus_eval::check_alignment(gold, corpus_eval::tokenize(resources::read_file(text_path)));
  const auto report = corpus_eval::evaluate(gold, res);
  if (as_json)
    std::cout << json::report(report).dump() << '\n';
  else
    std::cout << corpus_eval::to_table(report);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-state morphology for Malagasy verbs"};
  app.require_subcommand(1);
  GlobalOptions g;
  app.add_option("-c,--config", g.config, "resource config file (default: $MORA_RESOURCES)");
  app.add_option("--dema-vs", g.dema_vs, "root dictionary");
  app.add_option("--stem-dir", g.stem_dir, "directory of *.stem transducers");
  app.add_option("--affix-dir", g.affix_dir, "directory of *.affix graphs");
  app.add_option("--dema-invflx", g.dema_invflx, "invariable-word dictionary");
  app.add_option("--pronouns", g.pronouns, "bound pronoun table");
  app.add_flag("--no-pronouns", g.no_pronouns, "disable verb-pronoun contractions");

  std::string output;
  auto* compile = app.add_subcommand("compile", "compile the allomorph dictionary (DEMA-VSflx)");
  compile->add_option("-o,--output", output, "output file, '-' for stdout (default: dema_vsflx from the config)");

  std::string lemma;
  auto* inflect_cmd = app.add_subcommand("inflect", "print the allomorph entries of one lemma");
  inflect_cmd->add_option("lemma", lemma)->required();

  std::vector<std::string> tokens;
  std::string file;
  bool as_json = false;
  auto* analyze = app.add_subcommand("analyze", "analyze tokens (arguments, --file, or stdin)");
  analyze->add_option("tokens", tokens);
  analyze->add_option("-f,--file", file, "text file to tokenize and analyze");
  analyze->add_flag("--json", as_json, "JSON lines output");

  auto* generate = app.add_subcommand("generate", "list the conjugated forms of a lemma");
  generate->add_option("lemma", lemma)->required();
  generate->add_flag("--json", as_json, "JSON output");

  std::string gold;
  std::string text_path;
  auto* evaluate = app.add_subcommand("evaluate", "coverage report against a gold TSV");
  evaluate->add_option("gold", gold)->required();
  evaluate->add_option("-t,--text", text_path, "source text; gold must align with its tokens");
  evaluate->add_flag("--json", as_json, "JSON output");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*compile) return cmd_compile(g, output);
    if (*inflect_cmd) return cmd_inflect(g, lemma);
    if (*analyze) return cmd_analyze(g, tokens, file, as_json);
    if (*generate) return cmd_generate(g, lemma, as_json);
    if (*evaluate) return cmd_evaluate(g, gold, text_path, as_json);
  } catch (const CompileError& e) {
    std::cerr << "mora: error: " << e.problems().size() << " problem(s)\n";
    for (const auto& p : e.problems()) std::cerr << "  " << p << '\n';
  } catch (const std::exception& e) {
    std::cerr << "mora: error: " << e.what() << '\n';
  }
  return 1;
}
