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

#include "kglight/gzip_stream.hpp"

#include <fstream>

#include "kglight/error.hpp"

namespace kglight {

bool has_gz_suffix(const std::string& path) {
  return path.size() >= 3 && path.compare(path.size() - 3, 3, ".gz") == 0;
}

GzipReadBuffer::GzipReadBuffer(const std::string& path) : path_(path) {
  file_ = gzopen(path.c_str(), "rb");
  if (file_ == nullptr) throw Error(ErrorKind::kIo, "cannot open " + path);
  setg(buffer_.data(), buffer_.data(), buffer_.data());
}

GzipReadBuffer::~GzipReadBuffer() {
  if (file_ != nullptr) gzclose(file_);
}

GzipReadBuffer::int_type GzipReadBuffer::underflow() {
  if (gptr() < egptr()) return traits_type::to_int_type(*gptr());
  consumed_ += static_cast<std::uint64_t>(egptr() - eback());
  const int n = gzread(file_, buffer_.data(), static_cast<unsigned>(buffer_.size()));
  if (n < 0) {
    int code = 0;
    const char* msg = gzerror(file_, &code);
    throw Error(ErrorKind::kIo, path_ + ": decompression failed at byte " +
                                    std::to_string(consumed_) + ": " + msg);
  }
  setg(buffer_.data(), buffer_.data(), buffer_.data() + n);
  if (n == 0) return traits_type::eof();
  return traits_type::to_int_type(*gptr());
}

GzipWriteBuffer::GzipWriteBuffer(const std::string& path) : path_(path) {
  file_ = gzopen(path.c_str(), "wb6");
  if (file_ == nullptr) throw Error(ErrorKind::kIo, "cannot open " + path + " for writing");
  setp(buffer_.data(), buffer_.data() + buffer_.size());
}

GzipWriteBuffer::~GzipWriteBuffer() {
  if (file_ != nullptr) {
    flush_buffer();
    gzclose(file_);
  }
}

bool GzipWriteBuffer::flush_buffer() {
  const auto n = static_cast<unsigned>(pptr() - pbase());
  if (n > 0 && gzwrite(file_, pbase(), n) != static_cast<int>(n)) return false;
  setp(buffer_.data(), buffer_.data() + buffer_.size());
  return true;
}

GzipWriteBuffer::int_type GzipWriteBuffer::overflow(int_type ch) {
  if (!flush_buffer()) return traits_type::eof();
  if (!traits_type::eq_int_type(ch, traits_type::eof())) {
    *pptr() = traits_type::to_char_type(ch);
    pbump(1);
  }
  return traits_type::not_eof(ch);
}

int GzipWriteBuffer::sync() { return flush_buffer() ? 0 : -1; }

void GzipWriteBuffer::close() {
  if (file_ == nullptr) return;
  const bool flushed = flush_buffer();
  const int rc = gzclose(file_);
  file_ = nullptr;
  if (!flushed || rc != Z_OK) throw Error(ErrorKind::kIo, "failed writing " + path_);
}

InputFile::InputFile(const std::string& path) : path_(path) {
  if (has_gz_suffix(path)) {
    buffer_ = std::make_unique<GzipReadBuffer>(path);
  } else {
    auto fb = std::make_unique<std::filebuf>();
    if (fb->open(path, std::ios::in | std::ios::binary) == nullptr) {
      throw Error(ErrorKind::kIo, "cannot open " + path);
    }
    buffer_ = std::move(fb);
  }
  stream_ = std::make_unique<std::istream>(buffer_.get());
  stream_->exceptions(std::ios::badbit);
}

std::uint64_t InputFile::offset() const {
  if (auto* gz = dynamic_cast<GzipReadBuffer*>(buffer_.get())) return gz->offset();
  const auto pos = buffer_->pubseekoff(0, std::ios::cur, std::ios::in);
  return pos < 0 ? 0 : static_cast<std::uint64_t>(pos);
}

OutputFile::OutputFile(const std::string& path) : path_(path) {
  if (has_gz_suffix(path)) {
    buffer_ = std::make_unique<GzipWriteBuffer>(path);
  } else {
    auto fb = std::make_unique<std::filebuf>();
    if (fb->open(path, std::ios::out | std::ios::binary | std::ios::trunc) == nullptr) {
      throw Error(ErrorKind::kIo, "cannot open " + path + " for writing");
    }
    buffer_ = std::move(fb);
  }
  stream_ = std::make_unique<std::ostream>(buffer_.get());
}

OutputFile::~OutputFile() {
  if (!closed_) {
    try {
      close();
    } catch (...) {
    }
  }
}

void OutputFile::close() {
  if (closed_) return;
  closed_ = true;
  stream_->flush();
  const bool ok = !stream_->fail();
  if (auto* gz = dynamic_cast<GzipWriteBuffer*>(buffer_.get())) {
    gz->close();
  } else if (auto* fb = dynamic_cast<std::filebuf*>(buffer_.get())) {
    if (fb->close() == nullptr) throw Error(ErrorKind::kIo, "failed closing " + path_);
  }
  if (!ok) throw Error(ErrorKind::kIo, "failed writing " + path_);
}

}  // namespace kglight
