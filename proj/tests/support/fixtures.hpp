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


// Synthetic graphs shared by the unit tests and the acceptance gate.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kglight/eval.hpp"
#include "kglight/graph_io.hpp"
#include "kglight/knowledge_graph.hpp"

namespace kglight::testing {

inline const std::string kExample = "http://ex/";
inline const std::string kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";

struct LabeledGraph {
  std::vector<Triple> triples;
  KnowledgeGraph graph;
  /// Entities of interest with their class label.
  LabeledEntitySet entities;
  std::vector<std::string> entity_names() const;
};

KnowledgeGraph build_graph(const std::vector<Triple>& triples);

/// Two 6-node cliques (edges both ways) joined by a single bridge edge.
/// Entities are the 12 clique nodes labeled "A" or "B".
LabeledGraph two_cluster_fixture();

/// One hub with 12 leaf entities pointing at it; each leaf also has a type
/// edge to T_A or T_B, which carries its label.
LabeledGraph star_fixture();

/// Random multigraph on `nodes` nodes with `edges` triples over `predicates`
/// predicates; about 10% of objects are literals when `literals` is set.
std::vector<Triple> random_triples(std::uint64_t seed, std::size_t nodes, std::size_t edges,
                                   std::size_t predicates, bool literals = false);

/// Many small communities of `community_size` nodes arranged as directed
/// rings with extra chords; every node has in- and out-degree >= 1. One in
/// `bridge_every` nodes gets an extra edge into the next community.
KnowledgeGraph community_graph(std::size_t nodes, std::size_t community_size, std::uint64_t seed,
                               std::size_t bridge_every = 50);
std::string community_node(std::size_t index);

/// Fresh empty directory under the system temp dir.
std::string temp_dir(const std::string& tag);
void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);
void write_labels(const std::string& path, const LabeledEntitySet& data);

}  // namespace kglight::testing
