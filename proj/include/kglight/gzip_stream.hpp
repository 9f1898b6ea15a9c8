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

#include <zlib.h>

#include <array>
#include <cstdint>
#include <istream>
#include <memory>
#include <ostream>
#include <streambuf>
#include <string>

namespace kglight {

bool has_gz_suffix(const std::string& path);

/// Streambuf over a zlib gzFile. zlib reads uncompressed files transparently,
/// so the reader accepts both plain and gzip input.
class GzipReadBuffer : public std::streambuf {
 public:
  explicit GzipReadBuffer(const std::string& path);
  ~GzipReadBuffer() override;
  GzipReadBuffer(const GzipReadBuffer&) = delete;
  GzipReadBuffer& operator=(const GzipReadBuffer&) = delete;

  /// Decompressed bytes handed out so far.
  std::uint64_t offset() const { return consumed_; }

 protected:
  int_type underflow() override;

 private:
  gzFile file_ = nullptr;
  std::string path_;
  std::array<char, 1 << 16> buffer_{};
  std::uint64_t consumed_ = 0;
};

class GzipWriteBuffer : public std::streambuf {
 public:
  explicit GzipWriteBuffer(const std::string& path);
  ~GzipWriteBuffer() override;
  GzipWriteBuffer(const GzipWriteBuffer&) = delete;
  GzipWriteBuffer& operator=(const GzipWriteBuffer&) = delete;

  /// Flushes and closes; throws on failure. Called by the destructor if needed.
  void close();

 protected:
  int_type overflow(int_type ch) override;
  int sync() override;

 private:
  bool flush_buffer();

  gzFile file_ = nullptr;
  std::string path_;
  std::array<char, 1 << 16> buffer_{};
};

/// Input file that is gunzipped when the path ends in `.gz`, read plainly otherwise.
class InputFile {
 public:
  explicit InputFile(const std::string& path);
  std::istream& stream() { return *stream_; }
  /// Byte offset into the (decompressed) content, for diagnostics.
  std::uint64_t offset() const;

 private:
  std::unique_ptr<std::streambuf> buffer_;
  std::unique_ptr<std::istream> stream_;
  std::string path_;
};

/// Output file that is gzipped when the path ends in `.gz`.
class OutputFile {
 public:
  explicit OutputFile(const std::string& path);
  ~OutputFile();
  OutputFile(const OutputFile&) = delete;
  OutputFile& operator=(const OutputFile&) = delete;

  std::ostream& stream() { return *stream_; }
  /// Flushes and closes; throws kIo on failure.
  void close();

 private:
  std::unique_ptr<std::streambuf> buffer_;
  std::unique_ptr<std::ostream> stream_;
  std::string path_;
  bool closed_ = false;
};

}  // namespace kglight
