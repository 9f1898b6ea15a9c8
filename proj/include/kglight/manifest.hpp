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

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace kglight {

/// Flat `key=value` run record. Keys keep insertion order; setting an
/// existing key replaces its value in place.
class Manifest {
 public:
  void set(const std::string& key, const std::string& value);
  std::optional<std::string> get(const std::string& key) const;
  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

  void write(const std::string& path) const;
  /// Appends one entry to an already written manifest file.
  static void append(const std::string& path, const std::string& key, const std::string& value);
  static Manifest read(const std::string& path);

  /// Resolved command line stored as arg.0, arg.1, ...
  void set_args(const std::vector<std::string>& args);
  std::vector<std::string> args() const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

/// FNV-1a 64 of the file's raw bytes, as 16 hex digits.
std::string file_digest(const std::string& path);

}  // namespace kglight
