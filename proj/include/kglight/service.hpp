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

// Read-only HTTP view over one embedding model.
//
//   GET /health                               {"status","model","dimension","vocabulary_size"}
//   GET /get-vector?concept=IRI               {"concept","model","vector":[...]}
//   GET /similarity?left=IRI&right=IRI        {"left","right","model","similarity"}
//   GET /closest-concepts?concept=IRI&top=k   {"concept","top","model","result":[{"concept","score"}]}
//
// Errors carry {"error": <kind>, "message": ...}: 400 missing-parameter or
// invalid-parameter, 404 unknown-concept.

#pragma once

#include <atomic>
#include <memory>
#include <optional>
#include <string>

#include "kglight/trainer.hpp"

namespace httplib {
class Server;
}

namespace kglight {

struct HttpResponse {
  int status = 200;
  std::string body;
};

class VectorService {
 public:
  static constexpr std::size_t kDefaultTop = 10;

  VectorService(EmbeddingModel model, std::string model_id);

  const std::string& model_id() const { return model_id_; }
  const EmbeddingModel& model() const { return model_; }

  HttpResponse health() const;
  HttpResponse get_vector(const std::optional<std::string>& name) const;
  HttpResponse similarity(const std::optional<std::string>& left,
                          const std::optional<std::string>& right) const;
  HttpResponse closest_concepts(const std::optional<std::string>& name,
                                const std::optional<std::string>& top) const;

 private:
  EmbeddingModel model_;
  std::string model_id_;
};

class HttpServer {
 public:
  explicit HttpServer(const VectorService& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds the listening socket and returns the bound port (port 0 picks a
  /// free one). Throws kIo when the port is unavailable.
  int bind(const std::string& host, int port);
  /// Serves until stop(); requires a successful bind().
  void listen();
  void stop();
  void wait_until_ready() const;

 private:
  std::unique_ptr<httplib::Server> server_;
  int socket_ = -1;
  std::atomic<bool> listened_{false};
};

}  // namespace kglight
