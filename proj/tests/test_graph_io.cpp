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


#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "kglight/error.hpp"
#include "kglight/graph_io.hpp"
#include "kglight/gzip_stream.hpp"
#include "kglight/random.hpp"

using namespace kglight;
using kglight::testing::kExample;

namespace {

struct Parsed {
  std::vector<Triple> triples;
  ParseReport report;
};

Parsed parse_nt(const std::string& text, bool lenient = true) {
  Parsed p;
  std::istringstream in(text);
  p.report = parse_ntriples(in, {lenient, ""}, [&](Triple&& t) { p.triples.push_back(std::move(t)); });
  return p;
}

Parsed parse_ttl(const std::string& text) {
  Parsed p;
  std::istringstream in(text);
  p.report = parse_turtle_subset(in, [&](Triple&& t) { p.triples.push_back(std::move(t)); });
  return p;
}

std::size_t count_lines(const std::string& text) {
  std::size_t n = std::count(text.begin(), text.end(), '\n');
  if (!text.empty() && text.back() != '\n') ++n;
  return n;
}

std::multiset<Triple> as_multiset(const std::vector<Triple>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("n-triples: IRI statement") {
  auto p = parse_nt("<http://ex/a> <http://ex/p> <http://ex/b> .\n");
  REQUIRE(p.triples.size() == 1);
  CHECK(p.triples[0] == Triple{"http://ex/a", "http://ex/p", "http://ex/b"});
  CHECK(p.report.triples_emitted == 1);
  CHECK(p.report.errors.empty());
}

TEST_CASE("n-triples: comment and blank line are skipped") {
  auto p = parse_nt("# comment\n\n");
  CHECK(p.triples.empty());
  CHECK(p.report.lines_skipped == 2);
}

TEST_CASE("n-triples: typed literal stays one token") {
  auto p = parse_nt(
      "<http://ex/a> <http://ex/p> \"42\"^^<http://www.w3.org/2001/XMLSchema#integer> .\n");
  REQUIRE(p.triples.size() == 1);
  CHECK(p.triples[0].object == "\"42\"^^<http://www.w3.org/2001/XMLSchema#integer>");
  CHECK(classify_term(p.triples[0].object) == TermKind::kLiteral);
}

TEST_CASE("n-triples: language tags, escapes and blank nodes") {
  auto p = parse_nt(
      "_:x <http://ex/p> \"hello world\"@en .\n"
      "<http://ex/a> <http://ex/p> _:x .\n"
      "<http://ex/a> <http://ex/q> \"tab\\there \\\"q\\\"\" .\n");
  REQUIRE(p.triples.size() == 3);
  CHECK(p.triples[0].subject == "_:x");
  CHECK(classify_term(p.triples[0].subject) == TermKind::kBlank);
  CHECK(p.triples[0].object.find(' ') == std::string::npos);
  CHECK(p.triples[0].object.ends_with("@en"));
  CHECK(p.triples[1].object == "_:x");
  CHECK(p.triples[2].object.find('\t') == std::string::npos);
}

TEST_CASE("n-triples: missing object is one recorded error in lenient mode") {
  auto p = parse_nt("<http://ex/a> <http://ex/p> .\n");
  CHECK(p.triples.empty());
  REQUIRE(p.report.errors.size() == 1);
  CHECK(p.report.errors[0].line == 1);
}

TEST_CASE("n-triples: strict mode aborts with the line number") {
  const std::string text =
      "<http://ex/a> <http://ex/p> <http://ex/b> .\n"
      "<http://ex/a> \"lit\" <http://ex/b> .\n";
  try {
    parse_nt(text, false);
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kParse);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("n-triples: literal subjects and predicates are rejected") {
  CHECK_THROWS_AS(parse_ntriples_line("\"a\" <http://ex/p> <http://ex/b> ."), Error);
  CHECK_THROWS_AS(parse_ntriples_line("<http://ex/a> _:p <http://ex/b> ."), Error);
  CHECK_THROWS_AS(parse_ntriples_line("<http://ex/a> <http://ex/p> <http://ex/b>"), Error);
}

TEST_CASE("n-triples: report accounts for every line") {
  const std::string text =
      "# header\n"
      "<http://ex/a> <http://ex/p> <http://ex/b> .\n"
      "\n"
      "garbage\n"
      "<http://ex/b> <http://ex/p> \"x\" .\n"
      "<http://ex/c> <http://ex/p> .\n";
  auto p = parse_nt(text);
  CHECK(p.report.triples_emitted == 2);
  CHECK(p.report.lines_skipped == 2);
  CHECK(p.report.errors.size() == 2);
  CHECK(p.report.triples_emitted + p.report.lines_skipped + p.report.errors.size() ==
        count_lines(text));
}

TEST_CASE("property: n-triples round trip") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto triples = kglight::testing::random_triples(seed, 30, 80, 4, true);
    triples.push_back({"_:b1", kExample + "p", R"("a\u0020b\\c"@en-gb)"});
    triples.push_back({kExample + "x", kExample + "p", "\"1.5\"^^<http://www.w3.org/2001/XMLSchema#double>"});
    std::ostringstream out;
    write_ntriples(out, triples);
    auto p = parse_nt(out.str(), false);
    CHECK(as_multiset(p.triples) == as_multiset(triples));
  }
}

TEST_CASE("turtle: prefix expansion") {
  auto p = parse_ttl("@prefix ex: <http://ex/> . ex:a ex:p ex:b .");
  REQUIRE(p.triples.size() == 1);
  CHECK(p.triples[0] == Triple{"http://ex/a", "http://ex/p", "http://ex/b"});
}

TEST_CASE("turtle: predicate list") {
  auto p = parse_ttl("@prefix ex: <http://ex/> .\nex:a ex:p ex:b ; ex:q ex:c .");
  REQUIRE(p.triples.size() == 2);
  CHECK(p.triples[0].subject == "http://ex/a");
  CHECK(p.triples[1].subject == "http://ex/a");
  CHECK(p.triples[1].object == "http://ex/c");
}

TEST_CASE("turtle: a is rdf:type") {
  auto p = parse_ttl("@prefix ex: <http://ex/> .\nex:a a ex:C .");
  REQUIRE(p.triples.size() == 1);
  CHECK(p.triples[0].predicate == kglight::testing::kRdfType);
  CHECK(p.triples[0].object == "http://ex/C");
}

TEST_CASE("turtle: object lists, literals, SPARQL-style prefix") {
  auto p = parse_ttl(
      "PREFIX ex: <http://ex/>\n"
      "ex:a ex:p ex:b, ex:c ;\n"
      "     ex:n 42, -1.5, 2e3, true ;\n"
      "     ex:s \"hi\"@en, 'single', \"\"\"long\nstring\"\"\" .\n");
  REQUIRE(p.triples.size() == 9);
  CHECK(p.triples[2].object == "\"42\"^^<http://www.w3.org/2001/XMLSchema#integer>");
  CHECK(p.triples[3].object == "\"-1.5\"^^<http://www.w3.org/2001/XMLSchema#decimal>");
  CHECK(p.triples[4].object == "\"2e3\"^^<http://www.w3.org/2001/XMLSchema#double>");
  CHECK(p.triples[5].object == "\"true\"^^<http://www.w3.org/2001/XMLSchema#boolean>");
  CHECK(p.triples[6].object == "\"hi\"@en");
  CHECK(p.triples[7].object == "\"single\"");
  CHECK(p.triples[8].object.find('\n') == std::string::npos);
}

TEST_CASE("turtle: blank-node property lists and collections are unsupported") {
  for (const char* text : {"@prefix ex: <http://ex/> .\nex:a ex:p [ ex:q ex:b ] .",
                           "@prefix ex: <http://ex/> .\nex:a ex:p ( ex:b ex:c ) ."}) {
    try {
      parse_ttl(text);
      FAIL("expected unsupported-construct");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kUnsupportedConstruct);
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
  }
}

TEST_CASE("property: turtle and n-triples agree") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto triples = kglight::testing::random_triples(seed, 25, 60, 3, true);
    std::ostringstream nt;
    write_ntriples(nt, triples);
    std::ostringstream ttl;
    ttl << "@prefix ex: <" << kExample << "> .\n";
    for (const auto& t : triples) {
      auto term = [](const std::string& s) {
        if (classify_term(s) == TermKind::kIri) return "ex:" + s.substr(kExample.size());
        return to_ntriples_term(s);
      };
      ttl << term(t.subject) << ' ' << term(t.predicate) << ' ' << term(t.object) << " .\n";
    }
    auto a = parse_nt(nt.str(), false);
    auto b = parse_ttl(ttl.str());
    CHECK(std::set<Triple>(a.triples.begin(), a.triples.end()) ==
          std::set<Triple>(b.triples.begin(), b.triples.end()));
  }
}

TEST_CASE("property: lenient parsing survives arbitrary bytes") {
  Rng rng(7);
  const std::string alphabet = "<>\"'_:@^.#\\ \t\nabcxyz019u";
  for (int round = 0; round < 300; ++round) {
    std::string text;
    const std::size_t len = uniform_index(rng, 400);
    for (std::size_t i = 0; i < len; ++i) {
      text += uniform_index(rng, 4) == 0 ? static_cast<char>(rng() & 0xFF)
                                         : alphabet[uniform_index(rng, alphabet.size())];
    }
    Parsed p;
    CHECK_NOTHROW(p = parse_nt(text));
    CHECK(p.report.triples_emitted + p.report.lines_skipped + p.report.errors.size() ==
          count_lines(text));
    for (const auto& t : p.triples) {
      CHECK(!t.subject.empty());
      CHECK(!t.predicate.empty());
      CHECK(!t.object.empty());
      CHECK(classify_term(t.subject) != TermKind::kLiteral);
      CHECK(classify_term(t.predicate) == TermKind::kIri);
    }
  }
}

TEST_CASE("load_graph: counts, dedup, empty file, gzip, blank scoping") {
  const std::string dir = kglight::testing::temp_dir("graph_io");
  kglight::testing::write_text(dir + "/three.nt",
                               "<http://ex/a> <http://ex/p> <http://ex/b> .\n"
                               "<http://ex/b> <http://ex/p> <http://ex/c> .\n"
                               "<http://ex/c> <http://ex/p> \"x\" .\n");
  kglight::testing::write_text(dir + "/dup.nt", "<http://ex/a> <http://ex/p> <http://ex/b> .\n");
  kglight::testing::write_text(dir + "/empty.nt", "");
  kglight::testing::write_text(dir + "/blank1.nt", "_:x <http://ex/p> <http://ex/a> .\n");
  kglight::testing::write_text(dir + "/blank2.ttl", "_:x <http://ex/p> <http://ex/a> .\n");
  {
    OutputFile gz(dir + "/three.nt.gz");
    gz.stream() << kglight::testing::read_text(dir + "/three.nt");
    gz.close();
  }

  CHECK(load_graph({{dir + "/three.nt", RdfFormat::kNTriples}}).edge_count() == 3);
  CHECK(load_graph({{dir + "/three.nt", RdfFormat::kNTriples},
                    {dir + "/dup.nt", RdfFormat::kNTriples}})
            .edge_count() == 3);
  auto dup = load_graph({{dir + "/dup.nt", RdfFormat::kNTriples}, {dir + "/dup.nt", RdfFormat::kNTriples}});
  CHECK(dup.edge_count() == 1);
  auto empty = load_graph({{dir + "/empty.nt", RdfFormat::kNTriples}});
  CHECK(empty.node_count() == 0);
  CHECK(empty.edge_count() == 0);
  CHECK(load_graph({{dir + "/three.nt.gz", format_from_path(dir + "/three.nt.gz")}}).edge_count() == 3);

  auto scoped = load_graph({{dir + "/blank1.nt", RdfFormat::kNTriples},
                            {dir + "/blank2.ttl", format_from_path(dir + "/blank2.ttl")}},
                           {true, 2});
  CHECK(scoped.node_count() == 3);
  CHECK(scoped.edge_count() == 2);

  CHECK_THROWS_AS(load_graph({{dir + "/nope.nt", RdfFormat::kNTriples}}), Error);
}

TEST_CASE("format_from_path") {
  CHECK(format_from_path("a.nt") == RdfFormat::kNTriples);
  CHECK(format_from_path("a.nt.gz") == RdfFormat::kNTriples);
  CHECK(format_from_path("a.ttl") == RdfFormat::kTurtle);
  CHECK(format_from_path("a.ttl.gz") == RdfFormat::kTurtle);
}
