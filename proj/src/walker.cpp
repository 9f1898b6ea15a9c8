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

#include "kglight/walker.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <thread>

#include "kglight/error.hpp"
#include "kglight/gzip_stream.hpp"
#include "kglight/random.hpp"

namespace kglight {

void validate(const WalkConfig& cfg) {
  if (cfg.walks_per_entity < 1) {
    throw Error(ErrorKind::kInvalidArgument, "walks per entity must be >= 1");
  }
  if (cfg.depth < 1) throw Error(ErrorKind::kInvalidArgument, "walk depth must be >= 1");
}

EntitySelection resolve_entities(const KnowledgeGraph& graph,
                                 std::span<const std::string> names) {
  EntitySelection out;
  std::set<std::uint32_t> seen;
  for (const std::string& name : names) {
    auto id = graph.find_node(name);
    if (!id) {
      out.missing.push_back(name);
      continue;
    }
    if (seen.insert(id->value).second) out.found.push_back(*id);
  }
  return out;
}

std::vector<NodeId> subject_nodes(const KnowledgeGraph& graph) {
  std::vector<NodeId> out;
  for (std::uint32_t i = 0; i < graph.node_count(); ++i) {
    if (graph.degree(NodeId{i}).out > 0) out.push_back(NodeId{i});
  }
  return out;
}

namespace {

/// Per-thread scratch for walk generation.
class WalkGenerator {
 public:
  WalkGenerator(const KnowledgeGraph& graph, const WalkConfig& cfg) : graph_(graph), cfg_(cfg) {}

  std::uint64_t lookups() const { return lookups_; }

  Walk light_walk(NodeId entity, std::size_t walk_index) {
    Rng rng = derive_rng(cfg_.seed, entity.value, walk_index);
    // `front` holds the prepended part in reverse (nearest-to-anchor first).
    front_.clear();
    back_.clear();
    std::span<const InEdge> pred = in_edges(entity);
    std::span<const OutEdge> succ = out_edges(entity, succ_buf_);

    for (std::size_t hops = 0; hops < cfg_.depth; ++hops) {
      const std::size_t total = pred.size() + succ.size();
      if (total == 0) break;
      bool backwards;
      std::size_t pick;
      if (cfg_.direction == DirectionRule::kUniformOverUnion || pred.empty() || succ.empty()) {
        pick = uniform_index(rng, total);
        backwards = pick < pred.size();
        if (!backwards) pick -= pred.size();
      } else {
        backwards = (rng() >> 63) != 0;
        pick = uniform_index(rng, backwards ? pred.size() : succ.size());
      }
      if (backwards) {
        const InEdge e = pred[pick];
        front_.push_back(Token::predicate(e.predicate));
        front_.push_back(Token::node(e.source));
        pred = in_edges(e.source);
      } else {
        const OutEdge e = succ[pick];
        back_.push_back(Token::predicate(e.predicate));
        back_.push_back(Token::target(e.target));
        if (e.target.is_literal) {
          succ = {};
        } else {
          succ = out_edges(e.target.as_node(), succ_buf_);
        }
      }
    }

    Walk w;
    w.tokens.reserve(front_.size() + 1 + back_.size());
    w.tokens.insert(w.tokens.end(), front_.rbegin(), front_.rend());
    w.anchor = w.tokens.size();
    w.tokens.push_back(Token::node(entity));
    w.tokens.insert(w.tokens.end(), back_.begin(), back_.end());
    return w;
  }

  Walk classic_walk(NodeId entity, std::size_t walk_index) {
    Rng rng = derive_rng(cfg_.seed, entity.value, walk_index);
    Walk w;
    w.anchor = 0;
    w.tokens.push_back(Token::node(entity));
    std::span<const OutEdge> succ = out_edges(entity, succ_buf_);
    for (std::size_t hops = 0; hops < cfg_.depth && !succ.empty(); ++hops) {
      const OutEdge e = succ[uniform_index(rng, succ.size())];
      w.tokens.push_back(Token::predicate(e.predicate));
      w.tokens.push_back(Token::target(e.target));
      if (e.target.is_literal) break;
      succ = out_edges(e.target.as_node(), succ_buf_);
    }
    return w;
  }

 private:
  std::span<const InEdge> in_edges(NodeId v) {
    ++lookups_;
    return graph_.in_edges(v);
  }

  std::span<const OutEdge> out_edges(NodeId v, std::vector<OutEdge>& buf) {
    ++lookups_;
    std::span<const OutEdge> all = graph_.out_edges(v);
    if (cfg_.include_literals) return all;
    const bool any_literal =
        std::any_of(all.begin(), all.end(), [](const OutEdge& e) { return e.target.is_literal; });
    if (!any_literal) return all;
    buf.clear();
    for (const OutEdge& e : all) {
      if (!e.target.is_literal) buf.push_back(e);
    }
    return buf;
  }

  const KnowledgeGraph& graph_;
  const WalkConfig& cfg_;
  std::vector<Token> front_;
  std::vector<Token> back_;
  std::vector<OutEdge> succ_buf_;
  std::uint64_t lookups_ = 0;
};

WalkCorpus run_walks(const KnowledgeGraph& graph, std::span<const NodeId> requested,
                     const WalkConfig& cfg, bool light) {
  validate(cfg);
  WalkCorpus corpus;
  corpus.config = cfg;

  std::set<std::uint32_t> seen;
  for (NodeId v : requested) {
    if (!graph.contains(v)) {
      corpus.missing.push_back("node id " + std::to_string(v.value));
      continue;
    }
    if (seen.insert(v.value).second) corpus.entities.push_back(v);
  }

  const std::size_t n_entities = corpus.entities.size();
  std::vector<std::vector<Walk>> per_entity(n_entities);
  const unsigned workers =
      std::max(1u, std::min<unsigned>(cfg.workers, static_cast<unsigned>(n_entities)));
  std::vector<std::uint64_t> lookups(workers, 0);

  auto work = [&](unsigned worker) {
    WalkGenerator gen(graph, cfg);
    for (std::size_t i = worker; i < n_entities; i += workers) {
      auto& out = per_entity[i];
      out.reserve(cfg.walks_per_entity);
      for (std::size_t k = 0; k < cfg.walks_per_entity; ++k) {
        out.push_back(light ? gen.light_walk(corpus.entities[i], k)
                            : gen.classic_walk(corpus.entities[i], k));
      }
    }
    lookups[worker] = gen.lookups();
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned t = 0; t < workers; ++t) threads.emplace_back(work, t);
    for (auto& t : threads) t.join();
  }

  corpus.walks.reserve(n_entities * cfg.walks_per_entity);
  for (auto& walks : per_entity) {
    for (auto& w : walks) corpus.walks.push_back(std::move(w));
  }
  for (std::uint64_t l : lookups) corpus.stats.adjacency_lookups += l;
  return corpus;
}

}  // namespace

WalkCorpus generate_light_walks(const KnowledgeGraph& graph, std::span<const NodeId> entities,
                                const WalkConfig& cfg) {
  return run_walks(graph, entities, cfg, true);
}

WalkCorpus generate_classic_walks(const KnowledgeGraph& graph, std::span<const NodeId> entities,
                                  const WalkConfig& cfg) {
  if (entities.empty()) {
    const std::vector<NodeId> all = subject_nodes(graph);
    return run_walks(graph, all, cfg, false);
  }
  return run_walks(graph, entities, cfg, false);
}

WalkCorpus generate_walks(const KnowledgeGraph& graph, std::span<const NodeId> entities,
                          const WalkConfig& cfg) {
  return cfg.strategy == WalkStrategy::kLight ? generate_light_walks(graph, entities, cfg)
                                              : generate_classic_walks(graph, entities, cfg);
}

const std::string& token_name(const KnowledgeGraph& graph, Token token) {
  switch (token.kind) {
    case TokenKind::kNode: return graph.node_name(NodeId{token.id});
    case TokenKind::kPredicate: return graph.predicate_name(PredicateId{token.id});
    case TokenKind::kLiteral: return graph.literal_value(LiteralId{token.id});
  }
  throw Error(ErrorKind::kInvalidArgument, "bad token kind");
}

std::vector<std::string> walk_strings(const KnowledgeGraph& graph, const Walk& walk) {
  std::vector<std::string> out;
  out.reserve(walk.tokens.size());
  for (Token t : walk.tokens) out.push_back(token_name(graph, t));
  return out;
}

std::vector<std::vector<std::string>> corpus_sentences(const KnowledgeGraph& graph,
                                                       const WalkCorpus& corpus) {
  std::vector<std::vector<std::string>> out;
  out.reserve(corpus.walks.size());
  for (const Walk& w : corpus.walks) out.push_back(walk_strings(graph, w));
  return out;
}

std::size_t write_corpus(const KnowledgeGraph& graph, const WalkCorpus& corpus,
                         const std::string& path) {
  OutputFile file(path);
  std::ostream& out = file.stream();
  for (const Walk& w : corpus.walks) {
    for (std::size_t i = 0; i < w.tokens.size(); ++i) {
      if (i > 0) out << ' ';
      out << token_name(graph, w.tokens[i]);
    }
    out << '\n';
  }
  file.close();
  return corpus.walks.size();
}

std::vector<std::vector<std::string>> read_corpus(const std::string& path) {
  InputFile file(path);
  std::vector<std::vector<std::string>> out;
  std::string line;
  while (std::getline(file.stream(), line)) {
    std::vector<std::string> sentence;
    std::istringstream tokens(line);
    std::string tok;
    while (tokens >> tok) sentence.push_back(std::move(tok));
    if (!sentence.empty()) out.push_back(std::move(sentence));
  }
  return out;
}

std::vector<Token> intern_sentence(const KnowledgeGraph& graph,
                                   std::span<const std::string> sentence) {
  std::vector<Token> out;
  out.reserve(sentence.size());
  for (std::size_t i = 0; i < sentence.size(); ++i) {
    const std::string& s = sentence[i];
    if (i % 2 == 1) {
      auto p = graph.find_predicate(s);
      if (!p) throw Error(ErrorKind::kUnknownToken, s);
      out.push_back(Token::predicate(*p));
    } else if (auto n = graph.find_node(s)) {
      out.push_back(Token::node(*n));
    } else if (auto l = graph.find_literal(s)) {
      out.push_back(Token{TokenKind::kLiteral, l->value});
    } else {
      throw Error(ErrorKind::kUnknownToken, s);
    }
  }
  return out;
}

}  // namespace kglight
