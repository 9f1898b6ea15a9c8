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


#include "fixtures.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "kglight/random.hpp"

namespace kglight::testing {

std::vector<std::string> LabeledGraph::entity_names() const {
  std::vector<std::string> out;
  for (const auto& e : entities) out.push_back(e.entity);
  return out;
}

KnowledgeGraph build_graph(const std::vector<Triple>& triples) {
  GraphBuilder b;
  for (const auto& t : triples) b.add_triple(t);
  return b.freeze();
}

LabeledGraph two_cluster_fixture() {
  LabeledGraph g;
  const std::string link = kExample + "link";
  for (const char* cluster : {"a", "b"}) {
    for (int i = 0; i < 6; ++i) {
      for (int j = 0; j < 6; ++j) {
        if (i == j) continue;
        g.triples.push_back({kExample + cluster + std::to_string(i), link,
                             kExample + cluster + std::to_string(j)});
      }
    }
  }
  g.triples.push_back({kExample + "a0", kExample + "bridge", kExample + "b0"});
  for (int i = 0; i < 6; ++i) g.entities.push_back({kExample + "a" + std::to_string(i), "A"});
  for (int i = 0; i < 6; ++i) g.entities.push_back({kExample + "b" + std::to_string(i), "B"});
  g.graph = build_graph(g.triples);
  return g;
}

LabeledGraph star_fixture() {
  LabeledGraph g;
  for (int i = 0; i < 12; ++i) {
    const std::string leaf = kExample + "leaf" + std::to_string(i);
    const bool a = i % 2 == 0;
    g.triples.push_back({leaf, kExample + "linksTo", kExample + "hub"});
    g.triples.push_back({leaf, kRdfType, kExample + (a ? "T_A" : "T_B")});
    g.entities.push_back({leaf, a ? "A" : "B"});
  }
  g.graph = build_graph(g.triples);
  return g;
}

std::vector<Triple> random_triples(std::uint64_t seed, std::size_t nodes, std::size_t edges,
                                   std::size_t predicates, bool literals) {
  Rng rng(seed);
  std::vector<Triple> out;
  out.reserve(edges);
  for (std::size_t i = 0; i < edges; ++i) {
    Triple t;
    t.subject = kExample + "n" + std::to_string(uniform_index(rng, nodes));
    t.predicate = kExample + "p" + std::to_string(uniform_index(rng, predicates));
    if (literals && uniform_index(rng, 10) == 0) {
      t.object = "\"v" + std::to_string(uniform_index(rng, 20)) + "\"";
    } else {
      t.object = kExample + "n" + std::to_string(uniform_index(rng, nodes));
    }
    out.push_back(std::move(t));
  }
  return out;
}

std::string community_node(std::size_t index) { return kExample + "c" + std::to_string(index); }

KnowledgeGraph community_graph(std::size_t nodes, std::size_t community_size, std::uint64_t seed,
                               std::size_t bridge_every) {
  Rng rng(seed);
  GraphBuilder b;
  std::vector<NodeId> ids;
  ids.reserve(nodes);
  for (std::size_t i = 0; i < nodes; ++i) ids.push_back(b.intern_node(community_node(i)));
  const PredicateId ring = b.intern_predicate(kExample + "next");
  const PredicateId chord = b.intern_predicate(kExample + "rel");
  const PredicateId bridge = b.intern_predicate(kExample + "bridge");
  for (std::size_t start = 0; start < nodes; start += community_size) {
    const std::size_t size = std::min(community_size, nodes - start);
    for (std::size_t k = 0; k < size; ++k) {
      const std::size_t u = start + k;
      b.add_edge(ids[u], ring, Target::node(ids[start + (k + 1) % size]));
      b.add_edge(ids[u], chord, Target::node(ids[start + uniform_index(rng, size)]));
      if (bridge_every > 0 && uniform_index(rng, bridge_every) == 0) {
        b.add_edge(ids[u], bridge, Target::node(ids[(start + size + uniform_index(rng, community_size)) % nodes]));
      }
    }
  }
  return b.freeze();
}

std::string temp_dir(const std::string& tag) {
  static int counter = 0;
  const auto dir = std::filesystem::temp_directory_path() /
                   ("kglight_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir.string();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_labels(const std::string& path, const LabeledEntitySet& data) {
  std::ostringstream s;
  for (const auto& e : data) s << e.entity << '\t' << e.label << '\n';
  write_text(path, s.str());
}

}  // namespace kglight::testing
