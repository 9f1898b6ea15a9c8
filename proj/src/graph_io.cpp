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

#include "kglight/graph_io.hpp"

#include <cctype>
#include <future>
#include <sstream>
#include <unordered_map>

#include "kglight/error.hpp"
#include "kglight/gzip_stream.hpp"

namespace kglight {

namespace {

constexpr std::string_view kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";

bool is_ws(char c) { return c == ' ' || c == '\t'; }

bool is_hex(char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}

bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool is_label_char(char c) {
  return is_alpha(c) || is_digit(c) || c == '_' || c == '-' || c == '.' ||
         static_cast<unsigned char>(c) >= 0x80;
}

/// Appends a literal lexical character, escaping whitespace so the token
/// stays splittable on spaces.
void append_lexical(std::string& out, char c) {
  if (c == ' ') {
    out += "\\u0020";
  } else if (c == '\t') {
    out += "\\u0009";
  } else {
    out += c;
  }
}

/// Cursor over one N-Triples statement.
class LineCursor {
 public:
  LineCursor(std::string_view text, std::string_view blank_prefix)
      : text_(text), blank_prefix_(blank_prefix) {}

  void skip_ws() {
    while (pos_ < text_.size() && is_ws(text_[pos_])) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::kParse,
                what + " at column " + std::to_string(pos_ + 1) + ": " + std::string(text_));
  }

  std::string iri() {
    if (peek() != '<') fail("expected IRI");
    ++pos_;
    std::string out;
    while (true) {
      if (at_end()) fail("unterminated IRI");
      const char c = text_[pos_];
      if (c == '>') break;
      if (c == '\\') {
        uchar_into(out);
        continue;
      }
      const auto uc = static_cast<unsigned char>(c);
      if (uc <= 0x20 || c == '<' || c == '"' || c == '{' || c == '}' || c == '|' ||
          c == '^' || c == '`') {
        fail("illegal character in IRI");
      }
      out += c;
      ++pos_;
    }
    ++pos_;
    if (out.empty()) fail("empty IRI");
    return out;
  }

  std::string blank() {
    if (text_.substr(pos_, 2) != "_:") fail("expected blank node");
    pos_ += 2;
    const std::size_t start = pos_;
    while (!at_end() && is_label_char(text_[pos_])) ++pos_;
    // A label may not end with '.', which is the statement terminator.
    while (pos_ > start && text_[pos_ - 1] == '.') --pos_;
    if (pos_ == start || text_[start] == '-' || text_[start] == '.') fail("bad blank node label");
    return "_:" + std::string(blank_prefix_) + std::string(text_.substr(start, pos_ - start));
  }

  std::string literal() {
    ++pos_;  // opening quote
    std::string out = "\"";
    while (true) {
      if (at_end()) fail("unterminated literal");
      const char c = text_[pos_];
      if (c == '"') break;
      if (c == '\\') {
        if (pos_ + 1 >= text_.size()) fail("dangling escape");
        const char e = text_[pos_ + 1];
        if (e == 'u' || e == 'U') {
          uchar_into(out);
          continue;
        }
        if (std::string_view("tbnrf\"'\\").find(e) == std::string_view::npos) {
          fail("bad escape");
        }
        out += c;
        out += e;
        pos_ += 2;
        continue;
      }
      if (c == '\n' || c == '\r') fail("newline in literal");
      append_lexical(out, c);
      ++pos_;
    }
    ++pos_;
    out += '"';
    if (peek() == '@') {
      const std::size_t start = pos_++;
      if (!is_alpha(peek())) fail("bad language tag");
      while (is_alpha(peek())) ++pos_;
      while (peek() == '-') {
        ++pos_;
        if (!is_alpha(peek()) && !is_digit(peek())) fail("bad language tag");
        while (is_alpha(peek()) || is_digit(peek())) ++pos_;
      }
      out += text_.substr(start, pos_ - start);
    } else if (text_.substr(pos_, 2) == "^^") {
      pos_ += 2;
      out += "^^<" + iri() + ">";
    }
    return out;
  }

  std::string subject() {
    if (peek() == '<') return iri();
    if (peek() == '_') return blank();
    fail("expected subject");
  }

  std::string object() {
    if (peek() == '<') return iri();
    if (peek() == '_') return blank();
    if (peek() == '"') return literal();
    fail("expected object");
  }

  void finish() {
    skip_ws();
    if (peek() != '.') fail("expected '.'");
    ++pos_;
    skip_ws();
    if (!at_end() && peek() != '#') fail("trailing content");
  }

 private:
  void uchar_into(std::string& out) {
    const char kind = pos_ + 1 < text_.size() ? text_[pos_ + 1] : '\0';
    const std::size_t digits = kind == 'u' ? 4 : kind == 'U' ? 8 : 0;
    if (digits == 0 || pos_ + 2 + digits > text_.size()) fail("bad escape");
    for (std::size_t i = 0; i < digits; ++i) {
      if (!is_hex(text_[pos_ + 2 + i])) fail("bad unicode escape");
    }
    out += text_.substr(pos_, 2 + digits);
    pos_ += 2 + digits;
  }

  std::string_view text_;
  std::string_view blank_prefix_;
  std::size_t pos_ = 0;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (is_ws(s.front()) || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (is_ws(s.back()) || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

TermKind classify_term(std::string_view term) {
  if (!term.empty() && term.front() == '"') return TermKind::kLiteral;
  if (term.substr(0, 2) == "_:") return TermKind::kBlank;
  return TermKind::kIri;
}

Triple parse_ntriples_line(std::string_view line, std::string_view blank_prefix) {
  LineCursor cur(trim(line), blank_prefix);
  Triple t;
  cur.skip_ws();
  t.subject = cur.subject();
  cur.skip_ws();
  t.predicate = cur.iri();
  cur.skip_ws();
  t.object = cur.object();
  cur.finish();
  return t;
}

ParseReport parse_ntriples(std::istream& input, const ParseOptions& options,
                           const TripleSink& sink) {
  ParseReport report;
  std::string line;
  std::uint64_t line_no = 0;
  while (true) {
    try {
      if (!std::getline(input, line)) break;
    } catch (const std::ios_base::failure&) {
      throw Error(ErrorKind::kIo, "read failure after line " + std::to_string(line_no));
    }
    ++line_no;
    const std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') {
      ++report.lines_skipped;
      continue;
    }
    Triple t;
    try {
      t = parse_ntriples_line(body, options.blank_prefix);
    } catch (const Error& e) {
      if (!options.lenient) {
        throw Error(ErrorKind::kParse, "line " + std::to_string(line_no) + ": " + e.what());
      }
      report.errors.push_back({line_no, e.what()});
      continue;
    }
    ++report.triples_emitted;
    sink(std::move(t));
  }
  if (input.bad()) throw Error(ErrorKind::kIo, "read failure after line " + std::to_string(line_no));
  return report;
}

// ---------------------------------------------------------------------------
// Turtle subset

namespace {

class TurtleParser {
 public:
  TurtleParser(std::string text, const TripleSink& sink, std::string_view blank_prefix)
      : text_(std::move(text)), sink_(sink), blank_prefix_(blank_prefix) {}

  ParseReport run() {
    while (true) {
      skip_ws();
      if (at_end()) break;
      if (peek_word("@prefix")) {
        pos_ += 7;
        prefix_directive(true);
      } else if (peek_keyword("PREFIX")) {
        pos_ += 6;
        prefix_directive(false);
      } else if (peek_word("@base") || peek_keyword("BASE")) {
        unsupported("base declaration");
      } else {
        statement();
      }
    }
    return report_;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  std::string location() const {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::kParse, what + " at " + location());
  }
  [[noreturn]] void unsupported(const std::string& what) const {
    throw Error(ErrorKind::kUnsupportedConstruct, what + " at " + location());
  }

  void skip_ws() {
    while (!at_end()) {
      const char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        ++pos_;
      } else if (c == '#') {
        while (!at_end() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  bool peek_word(std::string_view w) const {
    return text_.compare(pos_, w.size(), w) == 0 && !is_name_char(peek(w.size()));
  }
  bool peek_keyword(std::string_view w) const {
    if (pos_ + w.size() > text_.size()) return false;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (std::toupper(static_cast<unsigned char>(text_[pos_ + i])) != w[i]) return false;
    }
    return !is_name_char(peek(w.size())) && peek(w.size()) != ':';
  }

  static bool is_name_char(char c) {
    return is_alpha(c) || is_digit(c) || c == '_' || c == '-' ||
           static_cast<unsigned char>(c) >= 0x80;
  }

  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void prefix_directive(bool at_form) {
    skip_ws();
    const std::size_t start = pos_;
    while (!at_end() && peek() != ':' && is_name_char(peek())) ++pos_;
    if (peek() != ':') fail("expected prefix name");
    std::string name = text_.substr(start, pos_ - start);
    ++pos_;
    skip_ws();
    prefixes_[name] = iri_ref();
    if (at_form) expect('.');
  }

  std::string iri_ref() {
    if (peek() != '<') fail("expected IRI");
    const std::size_t start = ++pos_;
    while (!at_end() && peek() != '>') {
      const auto uc = static_cast<unsigned char>(peek());
      if (uc <= 0x20 || peek() == '<' || peek() == '"') fail("illegal character in IRI");
      ++pos_;
    }
    if (at_end()) fail("unterminated IRI");
    std::string out = text_.substr(start, pos_ - start);
    ++pos_;
    if (out.empty()) fail("empty IRI");
    return out;
  }

  std::string prefixed_name() {
    const std::size_t start = pos_;
    while (!at_end() && peek() != ':' && is_name_char(peek())) ++pos_;
    if (peek() != ':') fail("expected prefixed name");
    const std::string prefix = text_.substr(start, pos_ - start);
    ++pos_;
    std::string local;
    while (!at_end()) {
      const char c = peek();
      if (c == '\\' && pos_ + 1 < text_.size()) {
        local += text_[pos_ + 1];
        pos_ += 2;
      } else if (is_name_char(c) || c == '.' || c == ':' || c == '%') {
        local += c;
        ++pos_;
      } else {
        break;
      }
    }
    while (!local.empty() && local.back() == '.') {
      local.pop_back();
      --pos_;
    }
    auto it = prefixes_.find(prefix);
    if (it == prefixes_.end()) fail("undeclared prefix '" + prefix + ":'");
    return it->second + local;
  }

  std::string blank_label() {
    pos_ += 2;
    const std::size_t start = pos_;
    while (!at_end() && is_label_char(peek())) ++pos_;
    while (pos_ > start && text_[pos_ - 1] == '.') --pos_;
    if (pos_ == start) fail("bad blank node label");
    return "_:" + std::string(blank_prefix_) + text_.substr(start, pos_ - start);
  }

  std::string resource(const char* role) {
    skip_ws();
    const char c = peek();
    if (c == '<') return iri_ref();
    if (c == '_' && peek(1) == ':') return blank_label();
    if (c == '[') unsupported("blank node property list");
    if (c == '(') unsupported("collection");
    if (c == ':' || is_alpha(c)) return prefixed_name();
    fail(std::string("expected ") + role);
  }

  std::string string_literal() {
    const char q = peek();
    const bool long_form = peek(1) == q && peek(2) == q;
    pos_ += long_form ? 3 : 1;
    std::string out = "\"";
    while (true) {
      if (at_end()) fail("unterminated string");
      const char c = peek();
      if (long_form ? (c == q && peek(1) == q && peek(2) == q) : c == q) break;
      if (c == '\\') {
        if (pos_ + 1 >= text_.size()) fail("dangling escape");
        const char e = text_[pos_ + 1];
        if (e == 'u' || e == 'U') {
          const std::size_t digits = e == 'u' ? 4 : 8;
          for (std::size_t i = 0; i < digits; ++i) {
            if (!is_hex(peek(2 + i))) fail("bad unicode escape");
          }
          out += text_.substr(pos_, 2 + digits);
          pos_ += 2 + digits;
          continue;
        }
        if (std::string_view("tbnrf\"'\\").find(e) == std::string_view::npos) fail("bad escape");
        out += c;
        out += e;
        pos_ += 2;
        continue;
      }
      if (c == '\n') {
        if (!long_form) fail("newline in string");
        out += "\\n";
      } else if (c == '\r') {
        if (!long_form) fail("newline in string");
        out += "\\r";
      } else if (c == '"') {
        out += "\\\"";
      } else {
        append_lexical(out, c);
      }
      ++pos_;
    }
    pos_ += long_form ? 3 : 1;
    out += '"';
    if (peek() == '@') {
      const std::size_t start = pos_++;
      if (!is_alpha(peek())) fail("bad language tag");
      while (is_alpha(peek())) ++pos_;
      while (peek() == '-' && (is_alpha(peek(1)) || is_digit(peek(1)))) {
        ++pos_;
        while (is_alpha(peek()) || is_digit(peek())) ++pos_;
      }
      out += text_.substr(start, pos_ - start);
    } else if (peek() == '^' && peek(1) == '^') {
      pos_ += 2;
      out += "^^<" + (peek() == '<' ? iri_ref() : prefixed_name()) + ">";
    }
    return out;
  }

  std::string numeric_literal() {
    const std::size_t start = pos_;
    if (peek() == '+' || peek() == '-') ++pos_;
    bool digits = false;
    bool dot = false;
    bool exponent = false;
    while (is_digit(peek())) {
      ++pos_;
      digits = true;
    }
    if (peek() == '.' && is_digit(peek(1))) {
      dot = true;
      ++pos_;
      while (is_digit(peek())) ++pos_;
      digits = true;
    }
    if (digits && (peek() == 'e' || peek() == 'E')) {
      exponent = true;
      ++pos_;
      if (peek() == '+' || peek() == '-') ++pos_;
      if (!is_digit(peek())) fail("bad exponent");
      while (is_digit(peek())) ++pos_;
    }
    if (!digits) fail("bad number");
    const char* type = exponent ? "double" : dot ? "decimal" : "integer";
    return "\"" + text_.substr(start, pos_ - start) + "\"^^<" + std::string(kXsd) + type + ">";
  }

  std::string object() {
    skip_ws();
    const char c = peek();
    if (c == '"' || c == '\'') return string_literal();
    if (is_digit(c) || ((c == '+' || c == '-' || c == '.') && (is_digit(peek(1)) || peek(1) == '.'))) {
      return numeric_literal();
    }
    if (peek_word("true") || peek_word("false")) {
      const bool t = peek_word("true");
      pos_ += t ? 4 : 5;
      return std::string(t ? "\"true\"" : "\"false\"") + "^^<" + std::string(kXsd) + "boolean>";
    }
    return resource("object");
  }

  std::string verb() {
    skip_ws();
    if (peek() == 'a' && !is_name_char(peek(1)) && peek(1) != ':') {
      ++pos_;
      return std::string(kRdfType);
    }
    if (peek() == '_' && peek(1) == ':') fail("blank node in predicate position");
    return resource("predicate");
  }

  void emit(const std::string& s, const std::string& p, std::string o) {
    ++report_.triples_emitted;
    sink_(Triple{s, p, std::move(o)});
  }

  void statement() {
    const std::string subject = resource("subject");
    while (true) {
      const std::string predicate = verb();
      while (true) {
        emit(subject, predicate, object());
        skip_ws();
        if (peek() != ',') break;
        ++pos_;
      }
      skip_ws();
      if (peek() != ';') break;
      while (peek() == ';') {
        ++pos_;
        skip_ws();
      }
      if (peek() == '.') break;  // trailing ';' before '.'
    }
    expect('.');
  }

  std::string text_;
  const TripleSink& sink_;
  std::string_view blank_prefix_;
  std::size_t pos_ = 0;
  std::unordered_map<std::string, std::string> prefixes_;
  ParseReport report_;
};

}  // namespace

ParseReport parse_turtle_subset(std::istream& input, const TripleSink& sink,
                                std::string_view blank_prefix) {
  std::ostringstream buffer;
  try {
    buffer << input.rdbuf();
  } catch (const std::ios_base::failure&) {
    throw Error(ErrorKind::kIo, "read failure");
  }
  if (input.bad()) throw Error(ErrorKind::kIo, "read failure");
  TurtleParser parser(buffer.str(), sink, blank_prefix);
  return parser.run();
}

std::string to_ntriples_term(std::string_view term) {
  if (classify_term(term) == TermKind::kIri) return "<" + std::string(term) + ">";
  return std::string(term);
}

void write_ntriples(std::ostream& out, const std::vector<Triple>& triples) {
  for (const Triple& t : triples) {
    out << to_ntriples_term(t.subject) << ' ' << to_ntriples_term(t.predicate) << ' '
        << to_ntriples_term(t.object) << " .\n";
  }
}

RdfFormat format_from_path(const std::string& path) {
  std::string p = path;
  if (has_gz_suffix(p)) p.resize(p.size() - 3);
  auto ends_with = [&](std::string_view s) {
    return p.size() >= s.size() && p.compare(p.size() - s.size(), s.size(), s) == 0;
  };
  if (ends_with(".ttl") || ends_with(".turtle")) return RdfFormat::kTurtle;
  return RdfFormat::kNTriples;
}

namespace {

struct ParsedSource {
  std::vector<Triple> triples;
  ParseReport report;
};

ParsedSource parse_source(const GraphSource& source, bool lenient, const std::string& prefix) {
  ParsedSource out;
  InputFile file(source.path);
  auto sink = [&](Triple&& t) { out.triples.push_back(std::move(t)); };
  try {
    if (source.format == RdfFormat::kTurtle) {
      out.report = parse_turtle_subset(file.stream(), sink, prefix);
    } else {
      out.report = parse_ntriples(file.stream(), ParseOptions{lenient, prefix}, sink);
    }
  } catch (const Error& e) {
    std::string msg = source.path + ": " + e.what();
    if (e.kind() == ErrorKind::kIo) msg += " (byte offset " + std::to_string(file.offset()) + ")";
    throw Error(e.kind(), msg);
  }
  return out;
}

}  // namespace

KnowledgeGraph load_graph(const std::vector<GraphSource>& sources, const LoadOptions& options,
                          std::vector<ParseReport>* reports) {
  auto prefix_for = [&](std::size_t i) {
    return sources.size() > 1 ? "f" + std::to_string(i) + "_" : std::string();
  };

  std::vector<ParsedSource> parsed(sources.size());
  if (options.workers > 1 && sources.size() > 1) {
    std::vector<std::future<ParsedSource>> pending;
    for (std::size_t i = 0; i < sources.size(); ++i) {
      pending.push_back(std::async(std::launch::async, parse_source, std::cref(sources[i]),
                                   options.lenient, prefix_for(i)));
    }
    for (std::size_t i = 0; i < sources.size(); ++i) parsed[i] = pending[i].get();
  } else {
    for (std::size_t i = 0; i < sources.size(); ++i) {
      parsed[i] = parse_source(sources[i], options.lenient, prefix_for(i));
    }
  }

  GraphBuilder builder;
  for (ParsedSource& p : parsed) {
    for (const Triple& t : p.triples) builder.add_triple(t);
    p.triples.clear();
    if (reports != nullptr) reports->push_back(std::move(p.report));
  }
  return builder.freeze();
}

std::vector<Triple> dump_triples(const KnowledgeGraph& graph) {
  std::vector<Triple> out;
  out.reserve(graph.edge_count());
  for (const Edge& e : graph.edges()) {
    out.push_back(Triple{graph.node_name(e.subject), graph.predicate_name(e.predicate),
                         graph.target_name(e.object)});
  }
  return out;
}

}  // namespace kglight
