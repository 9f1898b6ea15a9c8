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

#include "kglight/service.hpp"

#include <httplib.h>
#include <json.hpp>

#include <charconv>

#include <unistd.h>

#include "kglight/error.hpp"
#include "kglight/vector_ops.hpp"

namespace kglight {

using json = nlohmann::json;

namespace {

HttpResponse ok(const json& body) { return {200, body.dump()}; }

HttpResponse failure(int status, std::string_view kind, const std::string& message,
                     json extra = json::object()) {
  extra["error"] = kind;
  extra["message"] = message;
  return {status, extra.dump()};
}

HttpResponse missing(const char* parameter) {
  return failure(400, "missing-parameter", std::string("query parameter '") + parameter + "' is required",
                 {{"parameter", parameter}});
}

HttpResponse unknown(const std::string& name) {
  return failure(404, "unknown-concept", "concept not in model: " + name,
                 {{"concept", name}});
}

}  // namespace

VectorService::VectorService(EmbeddingModel model, std::string model_id)
    : model_(std::move(model)), model_id_(std::move(model_id)) {}

HttpResponse VectorService::health() const {
  return ok({{"status", "ok"},
             {"model", model_id_},
             {"dimension", model_.dimension()},
             {"vocabulary_size", model_.size()}});
}

HttpResponse VectorService::get_vector(const std::optional<std::string>& name) const {
  if (!name) return missing("concept");
  auto idx = model_.find(*name);
  if (!idx) return unknown(*name);
  json values = json::array();
  for (float x : model_.vector(*idx)) values.push_back(x);
  return ok({{"concept", *name}, {"model", model_id_}, {"vector", std::move(values)}});
}

HttpResponse VectorService::similarity(const std::optional<std::string>& left,
                                       const std::optional<std::string>& right) const {
  if (!left) return missing("left");
  if (!right) return missing("right");
  if (!model_.contains(*left)) return unknown(*left);
  if (!model_.contains(*right)) return unknown(*right);
  try {
    return ok({{"left", *left},
               {"right", *right},
               {"model", model_id_},
               {"similarity", kglight::similarity(model_, *left, *right)}});
  } catch (const Error& e) {
    return failure(422, error_kind_name(e.kind()), e.what());
  }
}

HttpResponse VectorService::closest_concepts(const std::optional<std::string>& name,
                                             const std::optional<std::string>& top) const {
  if (!name) return missing("concept");
  std::size_t k = kDefaultTop;
  if (top) {
    long long parsed = 0;
    auto [ptr, ec] = std::from_chars(top->data(), top->data() + top->size(), parsed);
    if (ec != std::errc() || ptr != top->data() + top->size() || parsed < 1) {
      return failure(400, "invalid-parameter", "top must be an integer >= 1",
                     {{"parameter", "top"}});
    }
    k = static_cast<std::size_t>(parsed);
  }
  if (!model_.contains(*name)) return unknown(*name);
  json result = json::array();
  try {
    for (const auto& n : nearest_neighbors(model_, *name, k)) {
      result.push_back({{"concept", n.token}, {"score", n.score}});
    }
  } catch (const Error& e) {
    return failure(422, error_kind_name(e.kind()), e.what());
  }
  return ok({{"concept", *name}, {"top", k}, {"model", model_id_}, {"result", std::move(result)}});
}

// ---------------------------------------------------------------------------

namespace {

std::optional<std::string> param(const httplib::Request& req, const char* name) {
  if (!req.has_param(name)) return std::nullopt;
  return req.get_param_value(name);
}

void reply(httplib::Response& res, const HttpResponse& r) {
  res.status = r.status;
  res.set_content(r.body, "application/json");
}

}  // namespace

HttpServer::HttpServer(const VectorService& service) : server_(std::make_unique<httplib::Server>()) {
  // Without SO_REUSEPORT a second server on the same port fails to bind.
  server_->set_socket_options([this](socket_t sock) {
    socket_ = sock;
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const char*>(&yes), sizeof yes);
  });
  const VectorService* svc = &service;
  server_->Get("/health", [svc](const httplib::Request&, httplib::Response& res) {
    reply(res, svc->health());
  });
  server_->Get("/get-vector", [svc](const httplib::Request& req, httplib::Response& res) {
    reply(res, svc->get_vector(param(req, "concept")));
  });
  server_->Get("/similarity", [svc](const httplib::Request& req, httplib::Response& res) {
    reply(res, svc->similarity(param(req, "left"), param(req, "right")));
  });
  server_->Get("/closest-concepts", [svc](const httplib::Request& req, httplib::Response& res) {
    reply(res, svc->closest_concepts(param(req, "concept"), param(req, "top")));
  });
}

HttpServer::~HttpServer() {
  stop();
  // httplib only closes sockets it is listening on.
  if (socket_ >= 0 && !listened_) ::close(socket_);
}

int HttpServer::bind(const std::string& host, int port) {
  int bound = port;
  if (port == 0) {
    bound = server_->bind_to_any_port(host);
  } else if (!server_->bind_to_port(host, port)) {
    bound = -1;
  }
  if (bound <= 0) {
    throw Error(ErrorKind::kIo, "cannot bind " + host + ":" + std::to_string(port));
  }
  return bound;
}

void HttpServer::listen() {
  listened_ = true;
  server_->listen_after_bind();
}

void HttpServer::stop() {
  if (server_) server_->stop();
}

void HttpServer::wait_until_ready() const { server_->wait_until_ready(); }

}  // namespace kglight
