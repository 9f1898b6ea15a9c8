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
#include <functional>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "kglight/knowledge_graph.hpp"

namespace kglight {

/// Terms are kept as single whitespace-free tokens:
///   IRI        http://ex/a            (angle brackets stripped)
///   blank      _:label
///   literal    "lexical"  |  "lexical"@lang  |  "lexical"^^<datatype>
/// Raw spaces and tabs inside literal lexical forms are rewritten to their
/// UCHAR escapes (backslash-u0020, backslash-u0009) so a term never contains
/// whitespace.
enum class TermKind { kIri, kBlank, kLiteral };

TermKind classify_term(std::string_view term);

struct Triple {
  std::string subject;
  std::string predicate;
  std::string object;
  friend bool operator==(const Triple&, const Triple&) = default;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

struct ParseIssue {
  std::uint64_t line = 0;
  std::string message;
};

struct ParseReport {
  std::uint64_t triples_emitted = 0;
  /// Blank and comment lines.
  std::uint64_t lines_skipped = 0;
  std::vector<ParseIssue> errors;
};

struct ParseOptions {
  /// Lenient mode records malformed lines and continues; strict aborts.
  bool lenient = true;
  /// Prepended to blank node labels (`_:b` -> `_:<prefix>b`) so labels from
  /// different files do not collide.
  std::string blank_prefix;
};

using TripleSink = std::function<void(Triple&&)>;

/// Streams N-Triples statements from `input` into `sink`, one per line.
ParseReport parse_ntriples(std::istream& input, const ParseOptions& options,
                           const TripleSink& sink);

/// Parses one N-Triples statement line. Throws kParse on malformed input.
Triple parse_ntriples_line(std::string_view line, std::string_view blank_prefix = {});

/// Turtle subset: @prefix/PREFIX, @base-free IRIs, prefixed names, string,
/// numeric and boolean literals, `;` and `,` lists, and `a`. Blank-node
/// property lists and collections raise kUnsupportedConstruct.
ParseReport parse_turtle_subset(std::istream& input, const TripleSink& sink,
                                std::string_view blank_prefix = {});

/// N-Triples rendering of a term token.
std::string to_ntriples_term(std::string_view term);
void write_ntriples(std::ostream& out, const std::vector<Triple>& triples);

enum class RdfFormat { kNTriples, kTurtle };

/// Infers the format from the extension (.nt, .ttl, with optional .gz).
RdfFormat format_from_path(const std::string& path);

struct GraphSource {
  std::string path;
  RdfFormat format = RdfFormat::kNTriples;
};

struct LoadOptions {
  bool lenient = true;
  /// Files are parsed concurrently when > 1; merging stays single-writer.
  unsigned workers = 1;
};

/// Parses every source (gunzipping `.gz` inputs) and merges the triples into a
/// frozen graph. Blank nodes are scoped per file. Reports are in source order.
KnowledgeGraph load_graph(const std::vector<GraphSource>& sources,
                          const LoadOptions& options = {},
                          std::vector<ParseReport>* reports = nullptr);

/// Every edge of the graph rendered back as a triple, in insertion order.
std::vector<Triple> dump_triples(const KnowledgeGraph& graph);

}  // namespace kglight
