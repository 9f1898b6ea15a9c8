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

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kglight/knowledge_graph.hpp"

namespace kglight {

enum class TokenKind : std::uint8_t { kNode, kPredicate, kLiteral };

struct Token {
  TokenKind kind = TokenKind::kNode;
  std::uint32_t id = 0;

  static Token node(NodeId n) { return {TokenKind::kNode, n.value}; }
  static Token predicate(PredicateId p) { return {TokenKind::kPredicate, p.value}; }
  static Token target(Target t) { return {t.is_literal ? TokenKind::kLiteral : TokenKind::kNode, t.id}; }
  friend bool operator==(const Token&, const Token&) = default;
};

/// Alternating node, predicate, node, ... sequence. `anchor` indexes the
/// entity the walk was grown from.
struct Walk {
  std::vector<Token> tokens;
  std::size_t anchor = 0;

  std::size_t node_count() const { return (tokens.size() + 1) / 2; }
  NodeId anchor_node() const { return NodeId{tokens.at(anchor).id}; }
};

enum class WalkStrategy { kClassic, kLight };

/// How a light walk chooses between growing backwards and forwards.
enum class DirectionRule {
  /// One candidate uniformly from in-edges(front) + out-edges(back).
  kUniformOverUnion,
  /// Fair coin for the direction first (when both sides are non-empty), then
  /// uniform within that side.
  kFairCoin,
};

struct WalkConfig {
  std::size_t walks_per_entity = 500;
  /// Node hops added beyond the anchor.
  std::size_t depth = 4;
  WalkStrategy strategy = WalkStrategy::kLight;
  DirectionRule direction = DirectionRule::kUniformOverUnion;
  /// Literal objects become walk tokens (forward only, terminating that side).
  bool include_literals = false;
  std::uint64_t seed = 42;
  unsigned workers = 1;
};

void validate(const WalkConfig& cfg);

struct WalkStats {
  /// Number of adjacency list fetches (in_edges / out_edges) performed.
  std::uint64_t adjacency_lookups = 0;
};

struct WalkCorpus {
  std::vector<Walk> walks;
  std::vector<NodeId> entities;
  WalkConfig config;
  /// Entities that were requested but are not nodes of the graph.
  std::vector<std::string> missing;
  WalkStats stats;
};

struct EntitySelection {
  std::vector<NodeId> found;
  std::vector<std::string> missing;
};

/// Maps entity names to node ids, dropping duplicates and recording names
/// that are not in the graph.
EntitySelection resolve_entities(const KnowledgeGraph& graph, std::span<const std::string> names);

/// Every node with at least one outgoing edge, in id order.
std::vector<NodeId> subject_nodes(const KnowledgeGraph& graph);

/// Bidirectional walks grown around each entity of interest.
WalkCorpus generate_light_walks(const KnowledgeGraph& graph, std::span<const NodeId> entities,
                                const WalkConfig& cfg);

/// Forward-only walks starting at each entity (all subject nodes when
/// `entities` is empty).
WalkCorpus generate_classic_walks(const KnowledgeGraph& graph, std::span<const NodeId> entities,
                                  const WalkConfig& cfg);

/// Dispatches on cfg.strategy.
WalkCorpus generate_walks(const KnowledgeGraph& graph, std::span<const NodeId> entities,
                          const WalkConfig& cfg);

const std::string& token_name(const KnowledgeGraph& graph, Token token);

/// A walk as resource strings.
std::vector<std::string> walk_strings(const KnowledgeGraph& graph, const Walk& walk);

/// Sentences for training and density analysis.
std::vector<std::vector<std::string>> corpus_sentences(const KnowledgeGraph& graph,
                                                       const WalkCorpus& corpus);

/// One walk per line, space-separated resource strings; gzipped for `.gz`.
std::size_t write_corpus(const KnowledgeGraph& graph, const WalkCorpus& corpus,
                         const std::string& path);

std::vector<std::vector<std::string>> read_corpus(const std::string& path);

/// Re-interns a sentence read back from a corpus file. Throws kUnknownToken
/// for strings the graph does not know.
std::vector<Token> intern_sentence(const KnowledgeGraph& graph,
                                   std::span<const std::string> sentence);

}  // namespace kglight
