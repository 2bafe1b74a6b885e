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

// Minimal transducer substrate shared by inflection transducers and
// morpheme-combination graphs.
//
// A Graph is a DAG of states (state 0 is the start). Arcs are literals,
// root slots, edit instructions or calls into other graphs. A state may own
// several exits; each exit ends one accepting path and carries that path's
// output tags. Calls are resolved through a lookup callable at traversal
// time and expansion is bounded by a nesting depth, which keeps every
// enumeration finite.

#pragma once

#include "mora/errors.hpp"

#include <concepts>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <regex>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace mora::fst {

inline constexpr std::size_t kDefaultMaxDepth = 4;

enum class ArcKind { kLiteral, kRootSlot, kEdit, kSubgraphCall };

struct EditOp {
  enum class Kind { kDeleteLast, kDeleteFirst, kAppend, kPrepend, kMoveStressToFinalVowel, kDropStress };

  Kind kind = Kind::kDropStress;
  std::size_t count = 0;  // DELETE_*
  std::string text;       // APPEND / PREPEND

  static EditOp delete_last(std::size_t n) { return {Kind::kDeleteLast, n, {}}; }
  static EditOp delete_first(std::size_t n) { return {Kind::kDeleteFirst, n, {}}; }
  static EditOp append(std::string s) { return {Kind::kAppend, 0, std::move(s)}; }
  static EditOp prepend(std::string s) { return {Kind::kPrepend, 0, std::move(s)}; }
  static EditOp move_stress_to_final_vowel() { return {Kind::kMoveStressToFinalVowel, 0, {}}; }
  static EditOp drop_stress() { return {Kind::kDropStress, 0, {}}; }

  friend bool operator==(const EditOp&, const EditOp&) = default;
};

inline std::string mnemonic(EditOp::Kind kind) {
  switch (kind) {
    case EditOp::Kind::kDeleteLast: return "DELETE_LAST";
    case EditOp::Kind::kDeleteFirst: return "DELETE_FIRST";
    case EditOp::Kind::kAppend: return "APPEND";
    case EditOp::Kind::kPrepend: return "PREPEND";
    case EditOp::Kind::kMoveStressToFinalVowel: return "MOVE_STRESS_TO_FINAL_VOWEL";
    case EditOp::Kind::kDropStress: return "DROP_STRESS";
  }
  return "?";
}

inline std::string to_string(const EditOp& op) {
  switch (op.kind) {
    case EditOp::Kind::kDeleteLast:
    case EditOp::Kind::kDeleteFirst:
      return mnemonic(op.kind) + " " + std::to_string(op.count);
    case EditOp::Kind::kAppend:
    case EditOp::Kind::kPrepend:
      return mnemonic(op.kind) + " " + op.text;
    default:
      return mnemonic(op.kind);
  }
}

/// Regular-expression constraint on the surface form a root slot may consume
/// (the equivalent of a morphological filter in a graph box).
class SurfaceFilter {
 public:
  explicit SurfaceFilter(std::string pattern)
      : pattern_(std::move(pattern)), regex_(std::make_shared<const std::regex>(pattern_, std::regex::ECMAScript)) {}

  const std::string& pattern() const noexcept { return pattern_; }
  bool accepts(std::string_view surface) const { return std::regex_search(surface.begin(), surface.end(), *regex_); }

  friend bool operator==(const SurfaceFilter& a, const SurfaceFilter& b) { return a.pattern_ == b.pattern_; }

 private:
  std::string pattern_;
  std::shared_ptr<const std::regex> regex_;
};

template <class Note>
struct Literal {
  std::string text;  // may be empty for zero morphemes
  Note note{};
  friend bool operator==(const Literal&, const Literal&) = default;
};

struct RootSlot {
  std::string tag;
  std::optional<SurfaceFilter> filter;

  bool admits(std::string_view candidate_tag, std::string_view surface) const {
    return candidate_tag == tag && (!filter || filter->accepts(surface));
  }
  friend bool operator==(const RootSlot&, const RootSlot&) = default;
};

struct SubgraphCall {
  std::string name;
  friend bool operator==(const SubgraphCall&, const SubgraphCall&) = default;
};

template <class Note>
class Arc {
 public:
  using Payload = std::variant<Literal<Note>, RootSlot, EditOp, SubgraphCall>;

  Arc(Literal<Note> v) : payload_(std::move(v)) {}  // NOLINT(google-explicit-constructor)
  Arc(RootSlot v) : payload_(std::move(v)) {}       // NOLINT(google-explicit-constructor)
  Arc(EditOp v) : payload_(std::move(v)) {}         // NOLINT(google-explicit-constructor)
  Arc(SubgraphCall v) : payload_(std::move(v)) {}   // NOLINT(google-explicit-constructor)

  static Arc literal(std::string text, Note note = {}) { return Arc(Literal<Note>{std::move(text), std::move(note)}); }
  static Arc root(std::string tag, std::optional<SurfaceFilter> filter = std::nullopt) {
    return Arc(RootSlot{std::move(tag), std::move(filter)});
  }
  static Arc call(std::string name) { return Arc(SubgraphCall{std::move(name)}); }

  ArcKind kind() const noexcept { return static_cast<ArcKind>(payload_.index()); }

  const Literal<Note>* literal() const { return std::get_if<Literal<Note>>(&payload_); }
  const RootSlot* root_slot() const { return std::get_if<RootSlot>(&payload_); }
  const EditOp* edit() const { return std::get_if<EditOp>(&payload_); }
  const SubgraphCall* call() const { return std::get_if<SubgraphCall>(&payload_); }
  const Payload& payload() const noexcept { return payload_; }

  friend bool operator==(const Arc&, const Arc&) = default;

 private:
  Payload payload_;
};

template <class Note>
class Graph {
 public:
  using ArcType = Arc<Note>;
  using Tags = std::vector<std::string>;

  struct Transition {
    ArcType arc;
    std::size_t target;
  };

  struct State {
    std::vector<Transition> out;
    std::vector<Tags> exits;
    bool accepting() const noexcept { return !exits.empty(); }
  };

  Graph() : states_(1) {}

  static constexpr std::size_t start() noexcept { return 0; }

  std::size_t add_state() {
    states_.emplace_back();
    return states_.size() - 1;
  }

  /// Arcs always point forward (target > from), so every graph is acyclic.
  void add_arc(std::size_t from, ArcType arc, std::size_t to) {
    if (from >= states_.size() || to >= states_.size() || to <= from)
      throw std::invalid_argument("fst::Graph::add_arc: arcs must go forward between existing states");
    states_[from].out.push_back({std::move(arc), to});
  }

  void add_exit(std::size_t state, Tags tags = {}) { states_.at(state).exits.push_back(std::move(tags)); }

  /// Appends one line from the start state: each slot becomes a set of
  /// parallel arcs. An empty slot list adds the empty-string path.
  void add_line(const std::vector<std::vector<ArcType>>& slots, Tags tags = {}) {
    std::size_t from = start();
    for (const auto& alternatives : slots) {
      if (alternatives.empty()) throw std::invalid_argument("fst::Graph::add_line: empty slot");
      const std::size_t to = add_state();
      for (const auto& arc : alternatives) add_arc(from, arc, to);
      from = to;
    }
    add_exit(from, std::move(tags));
  }

  const State& state(std::size_t i) const { return states_.at(i); }
  std::size_t size() const noexcept { return states_.size(); }

  /// Names of every graph this graph calls directly, in first-use order.
  std::vector<std::string> called_graphs() const {
    std::vector<std::string> names;
    for (const auto& s : states_)
      for (const auto& t : s.out)
        if (const auto* c = t.arc.call(); c && std::find(names.begin(), names.end(), c->name) == names.end())
          names.push_back(c->name);
    return names;
  }

  /// Copy without the arcs that satisfy `drop`; paths through them disappear.
  template <class Pred>
  Graph without_arcs(Pred drop) const {
    Graph copy = *this;
    for (auto& s : copy.states_)
      std::erase_if(s.out, [&](const Transition& t) { return drop(t.arc); });
    return copy;
  }

 private:
  std::vector<State> states_;
};

/// Resolves a subgraph name; returns nullptr for unknown names.
template <class L, class Note>
concept GraphLookup = requires(const L& lookup, std::string_view name) {
  { lookup(name) } -> std::convertible_to<const Graph<Note>*>;
};

template <class Note>
struct NoSubgraphs {
  const Graph<Note>* operator()(std::string_view) const { return nullptr; }
};

/// One accepting path with every call expanded in place.
template <class Note>
struct Path {
  std::vector<Arc<Note>> arcs;
  std::vector<std::string> output_tags;
  std::vector<std::string> calls;  // graphs entered, in order

  friend bool operator==(const Path& a, const Path& b) { return a.arcs == b.arcs && a.output_tags == b.output_tags; }
};

namespace detail {

template <class Note>
struct ReturnPoint {
  const Graph<Note>* graph;
  std::size_t state;
  std::size_t depth;
};

// Depth-first walk shared by enumeration and matching. `Step` decides, for a
// non-call arc at the current position, which continuations exist.
template <class Note, class Lookup, class Visitor>
class Walker {
 public:
  Walker(const Lookup& lookup, std::size_t max_depth, Visitor& visitor)
      : lookup_(lookup), max_depth_(max_depth), visitor_(visitor) {}

  void run(const Graph<Note>& graph) { walk(graph, Graph<Note>::start(), 0); }

 private:
  void walk(const Graph<Note>& graph, std::size_t state_id, std::size_t depth) {
    const auto& state = graph.state(state_id);
    for (const auto& exit : state.exits) {
      const std::size_t mark = tags_.size();
      tags_.insert(tags_.end(), exit.begin(), exit.end());
      if (returns_.empty()) {
        visitor_.accept(tags_, calls_);
      } else {
        const auto back = returns_.back();
        returns_.pop_back();
        walk(*back.graph, back.state, back.depth);
        returns_.push_back(back);
      }
      tags_.resize(mark);
    }
    for (const auto& transition : state.out) {
      if (const auto* call = transition.arc.call()) {
        const Graph<Note>* callee = lookup_(call->name);
        if (callee == nullptr) throw ResolutionError(call->name);
        if (depth + 1 > max_depth_) continue;
        returns_.push_back({&graph, transition.target, depth});
        calls_.push_back(call->name);
        walk(*callee, Graph<Note>::start(), depth + 1);
        calls_.pop_back();
        returns_.pop_back();
        continue;
      }
      visitor_.traverse(transition.arc, [&] { walk(graph, transition.target, depth); });
    }
  }

  const Lookup& lookup_;
  std::size_t max_depth_;
  Visitor& visitor_;
  std::vector<ReturnPoint<Note>> returns_;
  std::vector<std::string> tags_;
  std::vector<std::string> calls_;
};

template <class Note>
struct PathCollector {
  std::vector<Arc<Note>> arcs;
  std::vector<Path<Note>> paths;

  void accept(const std::vector<std::string>& tags, const std::vector<std::string>& calls) {
    Path<Note> path{arcs, tags, calls};
    if (std::find(paths.begin(), paths.end(), path) == paths.end()) paths.push_back(std::move(path));
  }

  template <class Continue>
  void traverse(const Arc<Note>& arc, Continue&& next) {
    arcs.push_back(arc);
    next();
    arcs.pop_back();
  }
};

}  // namespace detail

/// Checks that every call reachable within `max_depth` names a known graph.
template <class Note, class Lookup>
  requires GraphLookup<Lookup, Note>
void resolve(const Graph<Note>& graph, const Lookup& lookup, std::size_t max_depth = kDefaultMaxDepth) {
  std::function<void(const Graph<Note>&, std::size_t)> visit = [&](const Graph<Note>& g, std::size_t depth) {
    for (const auto& name : g.called_graphs()) {
      const Graph<Note>* callee = lookup(name);
      if (callee == nullptr) throw ResolutionError(name);
      if (depth + 1 < max_depth) visit(*callee, depth + 1);
    }
  };
  visit(graph, 0);
}

/// Every distinct accepting path whose call nesting stays within
/// `max_depth`, in depth-first arc order.
template <class Note, class Lookup>
  requires GraphLookup<Lookup, Note>
std::vector<Path<Note>> enumerate_paths(const Graph<Note>& graph, const Lookup& lookup,
                                        std::size_t max_depth = kDefaultMaxDepth) {
  if (max_depth < 1) throw std::invalid_argument("enumerate_paths: max_depth must be >= 1");
  detail::PathCollector<Note> collector;
  detail::Walker<Note, Lookup, detail::PathCollector<Note>> walker(lookup, max_depth, collector);
  walker.run(graph);
  return std::move(collector.paths);
}

template <class Note>
std::vector<Path<Note>> enumerate_paths(const Graph<Note>& graph, std::size_t max_depth = kDefaultMaxDepth) {
  return enumerate_paths(graph, NoSubgraphs<Note>{}, max_depth);
}

/// Values stored in a root index expose their compatibility tag and the
/// surface string a root slot consumes.
template <class V>
concept RootCandidate = requires(const V& v) {
  { root_tag(v) } -> std::convertible_to<std::string_view>;
  { root_surface(v) } -> std::convertible_to<std::string_view>;
};

/// A root index reports every stored key that is a prefix of some text.
template <class I>
concept RootIndex = requires(const I& index, std::string_view text) {
  typename I::value_type;
  requires RootCandidate<typename I::value_type>;
  index.visit_prefixes(text, [](std::size_t, const typename I::value_type&) {});
};

template <class Note, class Value>
struct TraceStep {
  Arc<Note> arc;
  std::size_t begin = 0;
  std::size_t end = 0;
  std::optional<Value> root;  // set for root-slot steps

  std::size_t length() const noexcept { return end - begin; }
};

template <class Note, class Value>
struct MatchTrace {
  std::vector<TraceStep<Note, Value>> steps;
  std::vector<std::string> output_tags;
  std::vector<std::string> calls;
};

namespace detail {

template <class Note, class Index>
struct TokenMatcher {
  using Value = typename Index::value_type;

  std::string_view token;
  const Index& index;
  std::size_t pos = 0;
  std::vector<TraceStep<Note, Value>> steps;
  std::vector<MatchTrace<Note, Value>> traces;

  void accept(const std::vector<std::string>& tags, const std::vector<std::string>& calls) {
    if (pos == token.size()) traces.push_back({steps, tags, calls});
  }

  template <class Continue>
  void traverse(const Arc<Note>& arc, Continue&& next) {
    const std::string_view rest = token.substr(pos);
    if (const auto* lit = arc.literal()) {
      if (!rest.starts_with(lit->text)) return;
      advance(arc, lit->text.size(), std::nullopt, next);
    } else if (const auto* slot = arc.root_slot()) {
      index.visit_prefixes(rest, [&](std::size_t length, const Value& value) {
        if (slot->admits(root_tag(value), root_surface(value))) advance(arc, length, value, next);
      });
    }
    // Edit arcs only occur in inflection transducers and never consume input.
  }

  template <class Continue>
  void advance(const Arc<Note>& arc, std::size_t length, const std::optional<Value>& root, Continue& next) {
    steps.push_back({arc, pos, pos + length, root});
    pos += length;
    next();
    pos -= length;
    steps.pop_back();
  }
};

}  // namespace detail

/// Every path whose arc realizations concatenate to `token`. Literal arcs
/// match their text; root slots consume any indexed key whose value carries
/// the slot's tag and passes its filter.
template <class Note, class Index, class Lookup>
  requires RootIndex<Index> && GraphLookup<Lookup, Note>
std::vector<MatchTrace<Note, typename Index::value_type>> match_token(const Graph<Note>& graph, std::string_view token,
                                                                      const Index& index, const Lookup& lookup,
                                                                      std::size_t max_depth = kDefaultMaxDepth) {
  detail::TokenMatcher<Note, Index> matcher{token, index, 0, {}, {}};
  detail::Walker<Note, Lookup, detail::TokenMatcher<Note, Index>> walker(lookup, max_depth, matcher);
  walker.run(graph);
  return std::move(matcher.traces);
}

template <class Note, class Index>
  requires RootIndex<Index>
std::vector<MatchTrace<Note, typename Index::value_type>> match_token(const Graph<Note>& graph, std::string_view token,
                                                                      const Index& index) {
  return match_token(graph, token, index, NoSubgraphs<Note>{});
}

}  // namespace mora::fst
