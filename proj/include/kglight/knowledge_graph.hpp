//  Copyright 2026 The kglight Authors. All Rights Reserved.
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace kglight {

struct Triple;

template <typename Tag>
struct Handle {
  std::uint32_t value = 0;
  friend auto operator<=>(const Handle&, const Handle&) = default;
};

struct NodeTag {};
struct PredicateTag {};
struct LiteralTag {};

/// Dense handle for an IRI or blank node.
using NodeId = Handle<NodeTag>;
using PredicateId = Handle<PredicateTag>;
/// Literals live in their own namespace and never act as edge sources.
using LiteralId = Handle<LiteralTag>;

/// Object position of an edge: either a resource node or a literal.
struct Target {
  bool is_literal = false;
  std::uint32_t id = 0;

  static Target node(NodeId n) { return {false, n.value}; }
  static Target literal(LiteralId l) { return {true, l.value}; }
  NodeId as_node() const { return NodeId{id}; }
  LiteralId as_literal() const { return LiteralId{id}; }
  friend bool operator==(const Target&, const Target&) = default;
};

struct OutEdge {
  PredicateId predicate;
  Target target;
  friend bool operator==(const OutEdge&, const OutEdge&) = default;
};

struct InEdge {
  NodeId source;
  PredicateId predicate;
  friend bool operator==(const InEdge&, const InEdge&) = default;
};

struct Edge {
  NodeId subject;
  PredicateId predicate;
  Target object;
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Degree {
  std::size_t in = 0;
  std::size_t out = 0;
  friend bool operator==(const Degree&, const Degree&) = default;
};

/// String <-> dense id table. Ids are assigned in first-seen order.
class Interner {
 public:
  std::uint32_t intern(std::string_view s);
  std::optional<std::uint32_t> find(std::string_view s) const;
  const std::string& resolve(std::uint32_t id) const { return names_.at(id); }
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

class KnowledgeGraph;

/// Single-writer graph construction. Duplicate edges are stored once.
class GraphBuilder {
 public:
  NodeId intern_node(std::string_view name);
  PredicateId intern_predicate(std::string_view name);
  LiteralId intern_literal(std::string_view lexical);

  /// Returns false when the edge was already present.
  bool add_edge(NodeId subject, PredicateId predicate, Target object);
  bool add_triple(const Triple& triple);

  std::size_t edge_count() const { return edges_.size(); }
  std::size_t node_count() const { return nodes_.size(); }

  /// Builds the immutable adjacency index; the builder is left empty.
  KnowledgeGraph freeze();

 private:
  struct EdgeKeyHash {
    std::size_t operator()(const Edge& e) const;
  };

  Interner nodes_;
  Interner predicates_;
  Interner literals_;
  std::vector<Edge> edges_;
  std::unordered_set<Edge, EdgeKeyHash> seen_;
};

/// Frozen, immutable knowledge graph with interned vocabulary and CSR
/// adjacency in both directions. Safe to share across reader threads.
class KnowledgeGraph {
 public:
  KnowledgeGraph() = default;

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t predicate_count() const { return predicates_.size(); }
  std::size_t literal_count() const { return literals_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  /// (predicate, object) pairs with subject v, in insertion order.
  std::span<const OutEdge> out_edges(NodeId v) const;
  /// (subject, predicate) pairs with resource object v, in insertion order.
  std::span<const InEdge> in_edges(NodeId v) const;
  Degree degree(NodeId v) const;

  bool contains(NodeId v) const { return v.value < nodes_.size(); }

  std::optional<NodeId> find_node(std::string_view name) const;
  std::optional<PredicateId> find_predicate(std::string_view name) const;
  std::optional<LiteralId> find_literal(std::string_view lexical) const;

  const std::string& node_name(NodeId v) const;
  const std::string& predicate_name(PredicateId p) const { return predicates_.resolve(p.value); }
  const std::string& literal_value(LiteralId l) const { return literals_.resolve(l.value); }
  const std::string& target_name(Target t) const {
    return t.is_literal ? literal_value(t.as_literal()) : node_name(t.as_node());
  }

  /// All edges in insertion order.
  std::span<const Edge> edges() const { return edges_; }

  /// Binary snapshot: magic `KGL1`, |V|, |E|, interner tables, edge array.
  void save_snapshot(const std::string& path) const;
  static KnowledgeGraph load_snapshot(const std::string& path);

 private:
  friend class GraphBuilder;

  Interner nodes_;
  Interner predicates_;
  Interner literals_;
  std::vector<Edge> edges_;
  std::vector<std::uint64_t> out_offsets_;
  std::vector<OutEdge> out_adj_;
  std::vector<std::uint64_t> in_offsets_;
  std::vector<InEdge> in_adj_;
};

}  // namespace kglight
