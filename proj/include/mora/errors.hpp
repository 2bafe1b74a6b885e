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

#include <stdexcept>
#include <string>
#include <vector>

namespace mora {

/// Malformed dictionary line or DSL text. Line and column are 1-based; 0 means unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : std::runtime_error(format(what, line, column)), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& what, std::size_t line, std::size_t column) {
    if (line == 0) return what;
    std::string out = "line " + std::to_string(line);
    if (column != 0) out += ", column " + std::to_string(column);
    return out + ": " + what;
  }

  std::size_t line_;
  std::size_t column_;
};

/// A subgraph call names a graph that is not registered.
class ResolutionError : public std::runtime_error {
 public:
  explicit ResolutionError(const std::string& graph, const std::string& detail = {})
      : std::runtime_error("unresolved graph '" + graph + "'" + (detail.empty() ? "" : ": " + detail)),
        graph_(graph) {}

  const std::string& graph() const noexcept { return graph_; }

 private:
  std::string graph_;
};

/// An edit program cannot be applied to a lemma (e.g. deleting more letters than it has).
class DomainError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Compilation failed. Carries every problem found, not only the first.
class CompileError : public std::runtime_error {
 public:
  explicit CompileError(std::vector<std::string> problems)
      : std::runtime_error(join(problems)), problems_(std::move(problems)) {}

  const std::vector<std::string>& problems() const noexcept { return problems_; }

 private:
  static std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (const auto& item : items) {
      if (!out.empty()) out += "; ";
      out += item;
    }
    return out;
  }

  std::vector<std::string> problems_;
};

/// A graph whose paths carry contradictory annotations.
class IntegrityError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Gold annotations that are inconsistent or do not line up with the text.
class ValidationError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace mora
