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

#include "kglight/manifest.hpp"

#include <array>
#include <cstdint>
#include <cstdio>
#include <fstream>

#include "kglight/error.hpp"

namespace kglight {

namespace {

// Values are single-line; escape the two characters that would break that.
std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '\\') {
      out += "\\\\";
    } else if (c == '\n') {
      out += "\\n";
    } else {
      out += c;
    }
  }
  return out;
}

std::string unescape(const std::string& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\' && i + 1 < s.size()) {
      out += s[i + 1] == 'n' ? '\n' : s[i + 1];
      ++i;
    } else {
      out += s[i];
    }
  }
  return out;
}

}  // namespace

void Manifest::set(const std::string& key, const std::string& value) {
  for (auto& [k, v] : entries_) {
    if (k == key) {
      v = value;
      return;
    }
  }
  entries_.emplace_back(key, value);
}

std::optional<std::string> Manifest::get(const std::string& key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return v;
  }
  return std::nullopt;
}

void Manifest::write(const std::string& path) const {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot write manifest " + path);
  for (const auto& [k, v] : entries_) out << k << '=' << escape(v) << '\n';
  if (!out) throw Error(ErrorKind::kIo, "failed writing manifest " + path);
}

void Manifest::append(const std::string& path, const std::string& key, const std::string& value) {
  std::ofstream out(path, std::ios::app);
  if (!out) throw Error(ErrorKind::kIo, "cannot append to manifest " + path);
  out << key << '=' << escape(value) << '\n';
}

Manifest Manifest::read(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open manifest " + path);
  Manifest m;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::kParse, path + ": line " + std::to_string(line_no) + ": expected key=value");
    }
    m.set(line.substr(0, eq), unescape(line.substr(eq + 1)));
  }
  return m;
}

void Manifest::set_args(const std::vector<std::string>& args) {
  set("args.count", std::to_string(args.size()));
  for (std::size_t i = 0; i < args.size(); ++i) set("arg." + std::to_string(i), args[i]);
}

std::vector<std::string> Manifest::args() const {
  const auto count = get("args.count");
  if (!count) throw Error(ErrorKind::kParse, "manifest has no recorded arguments");
  std::vector<std::string> out;
  const std::size_t n = std::stoul(*count);
  for (std::size_t i = 0; i < n; ++i) {
    auto v = get("arg." + std::to_string(i));
    if (!v) throw Error(ErrorKind::kParse, "manifest is missing arg." + std::to_string(i));
    out.push_back(*v);
  }
  return out;
}

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path);
  std::uint64_t h = 0xCBF29CE484222325ULL;
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[static_cast<std::size_t>(i)]);
      h *= 0x100000001B3ULL;
    }
  }
  char out[17];
  std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
  return out;
}

}  // namespace kglight
