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

#include "kglight/knowledge_graph.hpp"

#include <array>
#include <cstring>
#include <fstream>

#include "kglight/error.hpp"
#include "kglight/graph_io.hpp"
#include "kglight/random.hpp"

namespace kglight {

std::uint32_t Interner::intern(std::string_view s) {
  auto [it, inserted] =
      index_.try_emplace(std::string(s), static_cast<std::uint32_t>(names_.size()));
  if (inserted) names_.emplace_back(s);
  return it->second;
}

std::optional<std::uint32_t> Interner::find(std::string_view s) const {
  auto it = index_.find(std::string(s));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t GraphBuilder::EdgeKeyHash::operator()(const Edge& e) const {
  std::uint64_t h = splitmix64((std::uint64_t{e.subject.value} << 32) | e.predicate.value);
  h ^= splitmix64((std::uint64_t{e.object.is_literal} << 32) | e.object.id);
  return static_cast<std::size_t>(h);
}

NodeId GraphBuilder::intern_node(std::string_view name) { return NodeId{nodes_.intern(name)}; }

PredicateId GraphBuilder::intern_predicate(std::string_view name) {
  return PredicateId{predicates_.intern(name)};
}

LiteralId GraphBuilder::intern_literal(std::string_view lexical) {
  return LiteralId{literals_.intern(lexical)};
}

bool GraphBuilder::add_edge(NodeId subject, PredicateId predicate, Target object) {
  if (subject.value >= nodes_.size() || predicate.value >= predicates_.size() ||
      (object.is_literal ? object.id >= literals_.size() : object.id >= nodes_.size())) {
    throw Error(ErrorKind::kUnknownNode, "edge references an id that was never interned");
  }
  Edge e{subject, predicate, object};
  if (!seen_.insert(e).second) return false;
  edges_.push_back(e);
  return true;
}

bool GraphBuilder::add_triple(const Triple& triple) {
  const NodeId s = intern_node(triple.subject);
  const PredicateId p = intern_predicate(triple.predicate);
  const Target o = classify_term(triple.object) == TermKind::kLiteral
                       ? Target::literal(intern_literal(triple.object))
                       : Target::node(intern_node(triple.object));
  return add_edge(s, p, o);
}

KnowledgeGraph GraphBuilder::freeze() {
  KnowledgeGraph g;
  g.nodes_ = std::move(nodes_);
  g.predicates_ = std::move(predicates_);
  g.literals_ = std::move(literals_);
  g.edges_ = std::move(edges_);
  nodes_ = {};
  predicates_ = {};
  literals_ = {};
  edges_ = {};
  seen_.clear();

  // Stable counting sort keeps per-node insertion order.
  const std::size_t n = g.nodes_.size();
  g.out_offsets_.assign(n + 1, 0);
  g.in_offsets_.assign(n + 1, 0);
  for (const Edge& e : g.edges_) {
    ++g.out_offsets_[e.subject.value + 1];
    if (!e.object.is_literal) ++g.in_offsets_[e.object.id + 1];
  }
  for (std::size_t i = 0; i < n; ++i) {
    g.out_offsets_[i + 1] += g.out_offsets_[i];
    g.in_offsets_[i + 1] += g.in_offsets_[i];
  }
  g.out_adj_.resize(g.out_offsets_[n]);
  g.in_adj_.resize(g.in_offsets_[n]);
  std::vector<std::uint64_t> out_fill(g.out_offsets_.begin(), g.out_offsets_.end() - 1);
  std::vector<std::uint64_t> in_fill(g.in_offsets_.begin(), g.in_offsets_.end() - 1);
  for (const Edge& e : g.edges_) {
    g.out_adj_[out_fill[e.subject.value]++] = OutEdge{e.predicate, e.object};
    if (!e.object.is_literal) {
      g.in_adj_[in_fill[e.object.id]++] = InEdge{e.subject, e.predicate};
    }
  }
  return g;
}

namespace {

[[noreturn]] void unknown_node(NodeId v) {
  throw Error(ErrorKind::kUnknownNode, "node id " + std::to_string(v.value));
}

}  // namespace

std::span<const OutEdge> KnowledgeGraph::out_edges(NodeId v) const {
  if (!contains(v)) unknown_node(v);
  return {out_adj_.data() + out_offsets_[v.value],
          out_adj_.data() + out_offsets_[v.value + 1]};
}

std::span<const InEdge> KnowledgeGraph::in_edges(NodeId v) const {
  if (!contains(v)) unknown_node(v);
  return {in_adj_.data() + in_offsets_[v.value], in_adj_.data() + in_offsets_[v.value + 1]};
}

Degree KnowledgeGraph::degree(NodeId v) const {
  if (!contains(v)) unknown_node(v);
  return {static_cast<std::size_t>(in_offsets_[v.value + 1] - in_offsets_[v.value]),
          static_cast<std::size_t>(out_offsets_[v.value + 1] - out_offsets_[v.value])};
}

std::optional<NodeId> KnowledgeGraph::find_node(std::string_view name) const {
  auto id = nodes_.find(name);
  if (!id) return std::nullopt;
  return NodeId{*id};
}

std::optional<PredicateId> KnowledgeGraph::find_predicate(std::string_view name) const {
  auto id = predicates_.find(name);
  if (!id) return std::nullopt;
  return PredicateId{*id};
}

std::optional<LiteralId> KnowledgeGraph::find_literal(std::string_view lexical) const {
  auto id = literals_.find(lexical);
  if (!id) return std::nullopt;
  return LiteralId{*id};
}

const std::string& KnowledgeGraph::node_name(NodeId v) const {
  if (!contains(v)) unknown_node(v);
  return nodes_.resolve(v.value);
}

// ---------------------------------------------------------------------------
// Snapshot I/O. All integers little-endian.

namespace {

constexpr std::array<char, 4> kSnapshotMagic = {'K', 'G', 'L', '1'};

class SnapshotWriter {
 public:
  explicit SnapshotWriter(std::ostream& out) : out_(out) {}

  void u8(std::uint8_t v) { out_.put(static_cast<char>(v)); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.put(static_cast<char>((v >> (8 * i)) & 0xFF));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out_.put(static_cast<char>((v >> (8 * i)) & 0xFF));
  }
  void str(const std::string& s) {
    u32(static_cast<std::uint32_t>(s.size()));
    out_.write(s.data(), static_cast<std::streamsize>(s.size()));
  }

 private:
  std::ostream& out_;
};

class SnapshotReader {
 public:
  SnapshotReader(std::istream& in, std::string path) : in_(in), path_(std::move(path)) {}

  void bytes(char* dst, std::size_t n) {
    in_.read(dst, static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in_.gcount()) != n) {
      throw Error(ErrorKind::kParse, path_ + ": truncated graph snapshot");
    }
  }
  std::uint8_t u8() {
    char c = 0;
    bytes(&c, 1);
    return static_cast<std::uint8_t>(c);
  }
  std::uint32_t u32() {
    std::array<unsigned char, 4> b{};
    bytes(reinterpret_cast<char*>(b.data()), b.size());
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | b[static_cast<std::size_t>(i)];
    return v;
  }
  std::uint64_t u64() {
    std::array<unsigned char, 8> b{};
    bytes(reinterpret_cast<char*>(b.data()), b.size());
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | b[static_cast<std::size_t>(i)];
    return v;
  }
  std::string str() {
    std::string s(u32(), '\0');
    if (!s.empty()) bytes(s.data(), s.size());
    return s;
  }

 private:
  std::istream& in_;
  std::string path_;
};

}  // namespace

void KnowledgeGraph::save_snapshot(const std::string& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot open " + path + " for writing");
  out.write(kSnapshotMagic.data(), kSnapshotMagic.size());
  SnapshotWriter w(out);
  w.u64(node_count());
  w.u64(edge_count());
  w.u64(predicate_count());
  w.u64(literal_count());
  for (const auto& s : nodes_.names()) w.str(s);
  for (const auto& s : predicates_.names()) w.str(s);
  for (const auto& s : literals_.names()) w.str(s);
  for (const Edge& e : edges_) {
    w.u32(e.subject.value);
    w.u32(e.predicate.value);
    w.u8(e.object.is_literal ? 1 : 0);
    w.u32(e.object.id);
  }
  out.flush();
  if (!out) throw Error(ErrorKind::kIo, "failed writing " + path);
}

KnowledgeGraph KnowledgeGraph::load_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path);
  SnapshotReader r(in, path);
  std::array<char, 4> magic{};
  r.bytes(magic.data(), magic.size());
  if (magic != kSnapshotMagic) throw Error(ErrorKind::kParse, path + ": not a KGL1 snapshot");
  const std::uint64_t nodes = r.u64();
  const std::uint64_t edges = r.u64();
  const std::uint64_t predicates = r.u64();
  const std::uint64_t literals = r.u64();

  GraphBuilder b;
  for (std::uint64_t i = 0; i < nodes; ++i) b.intern_node(r.str());
  for (std::uint64_t i = 0; i < predicates; ++i) b.intern_predicate(r.str());
  for (std::uint64_t i = 0; i < literals; ++i) b.intern_literal(r.str());
  if (b.node_count() != nodes) throw Error(ErrorKind::kParse, path + ": duplicate node names");
  for (std::uint64_t i = 0; i < edges; ++i) {
    const NodeId s{r.u32()};
    const PredicateId p{r.u32()};
    const bool lit = r.u8() != 0;
    const std::uint32_t o = r.u32();
    b.add_edge(s, p, Target{lit, o});
  }
  return b.freeze();
}

}  // namespace kglight
