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

// Loading a resource set from disk. A config file lists the resource paths
// as key = value lines; relative paths are taken from the config's folder.
//
//   dema_vs     = dema_vs.dic      # root dictionary (required)
//   stem_dir    = stem             # *.stem inflection transducers (required)
//   affix_dir   = affix            # *.affix morpheme graphs (required)
//   dema_invflx = dema_invflx.dic  # invariable words (optional)
//   pronouns    = pronouns.tbl     # bound pronouns (optional)
//   dema_vsflx  = dema_vsflx.dic   # default output of `mora compile`

#pragma once

#include "mora/contraction.hpp"
#include "mora/errors.hpp"
#include "mora/inflect.hpp"
#include "mora/lexicon.hpp"
#include "mora/morpho.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace mora::resources {

namespace fs = std::filesystem;

struct ResourceConfig {
  fs::path dema_vs;
  fs::path stem_dir;
  fs::path affix_dir;
  fs::path dema_invflx;  // empty = none
  fs::path pronouns;     // empty = contractions disabled
  fs::path dema_vsflx;
};

inline std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline ResourceConfig parse_config(std::string_view content, const fs::path& base_dir = {}) {
  ResourceConfig config;
  const std::map<std::string, fs::path ResourceConfig::*> keys{
      {"dema_vs", &ResourceConfig::dema_vs},         {"stem_dir", &ResourceConfig::stem_dir},
      {"affix_dir", &ResourceConfig::affix_dir},     {"dema_invflx", &ResourceConfig::dema_invflx},
      {"pronouns", &ResourceConfig::pronouns},       {"dema_vsflx", &ResourceConfig::dema_vsflx},
  };
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  std::istringstream in{std::string(content)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected key = value", line_no);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = keys.find(key);
    if (it == keys.end()) throw ParseError("unknown config key '" + key + "'", line_no);
    fs::path p(value);
    config.*(it->second) = p.is_relative() && !base_dir.empty() ? base_dir / p : p;
  }
  return config;
}

inline ResourceConfig load_config(const fs::path& path) {
  return parse_config(read_file(path), path.parent_path());
}

/// Parsed resource files, before compilation.
struct LoadedResources {
  std::vector<lexicon::DictEntry> lexicon;
  inflect::TransducerRegistry transducers;
  std::vector<morpho::MorphemeGraph> graphs;
  std::vector<lexicon::InvariableEntry> invariables;
  std::optional<std::vector<lexicon::InvariableEntry>> pronouns;
};

namespace detail {

inline std::vector<fs::path> files_with_extension(const fs::path& dir, std::string_view ext) {
  std::vector<fs::path> out;
  for (const auto& item : fs::directory_iterator(dir))
    if (item.is_regular_file() && item.path().extension() == ext) out.push_back(item.path());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// Reads and parses every file; all problems are collected into one
/// CompileError.
inline LoadedResources load(const ResourceConfig& config) {
  LoadedResources out;
  std::vector<std::string> problems;
  auto guarded = [&](const fs::path& where, auto&& action) {
    try {
      action();
    } catch (const std::exception& e) {
      problems.push_back(where.string() + ": " + e.what());
    }
  };
  auto prefixed = [&](const fs::path& where, std::vector<std::string> items) {
    for (auto& item : items) problems.push_back(where.string() + ": " + item);
  };

  if (config.dema_vs.empty()) problems.emplace_back("config: dema_vs is not set");
  else
    guarded(config.dema_vs, [&] {
      std::vector<std::string> bad;
      out.lexicon = lexicon::parse_dema_vs(read_file(config.dema_vs), &bad);
      prefixed(config.dema_vs, std::move(bad));
    });

  if (config.stem_dir.empty()) problems.emplace_back("config: stem_dir is not set");
  else
    guarded(config.stem_dir, [&] {
      for (const auto& file : detail::files_with_extension(config.stem_dir, ".stem"))
        guarded(file, [&] {
          auto t = inflect::parse_transducer_dsl(read_file(file));
          if (inflect::stem_file_name(t.name()) != file.filename().string())
            throw ParseError("class '" + t.name() + "' belongs in " + inflect::stem_file_name(t.name()));
          const std::string name = t.name();
          if (!out.transducers.emplace(name, std::move(t)).second) throw ParseError("duplicate class '" + name + "'");
        });
    });

  if (config.affix_dir.empty()) problems.emplace_back("config: affix_dir is not set");
  else
    guarded(config.affix_dir, [&] {
      for (const auto& file : detail::files_with_extension(config.affix_dir, ".affix"))
        guarded(file, [&] {
          auto g = morpho::parse_graph_dsl(read_file(file));
          if (g.name + ".affix" != file.filename().string())
            throw ParseError("graph '" + g.name + "' belongs in " + g.name + ".affix");
          out.graphs.push_back(std::move(g));
        });
    });

  if (!config.dema_invflx.empty())
    guarded(config.dema_invflx, [&] {
      std::vector<std::string> bad;
      out.invariables = lexicon::parse_dema_invflx(read_file(config.dema_invflx), &bad);
      prefixed(config.dema_invflx, std::move(bad));
    });

  if (!config.pronouns.empty())
    guarded(config.pronouns, [&] { out.pronouns = contraction::parse_pronoun_table(read_file(config.pronouns)); });

  if (!problems.empty()) throw CompileError(std::move(problems));
  return out;
}

/// Compiles the allomorph dictionary and assembles the analyzer.
inline morpho::CompiledResources build(LoadedResources loaded, const std::vector<lexicon::AllomorphEntry>& allomorphs,
                                       morpho::Options options = {}) {
  return contraction::integrate_with_analyzer({std::move(loaded.lexicon), allomorphs, std::move(loaded.graphs),
                                               std::move(loaded.invariables), std::move(loaded.pronouns), options});
}

inline morpho::CompiledResources build(LoadedResources loaded, morpho::Options options = {}) {
  const auto compiled = inflect::compile_lexicon(loaded.lexicon, loaded.transducers);
  return build(std::move(loaded), compiled.entries, options);
}

}  // namespace mora::resources
