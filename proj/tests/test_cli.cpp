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

#include <httplib.h>

#include <chrono>
#include <csignal>
#include <filesystem>
#include <sstream>
#include <thread>

#include "fixtures.hpp"
#include "kglight/cli.hpp"
#include "kglight/graph_io.hpp"
#include "kglight/manifest.hpp"
#include "kglight/service.hpp"
#include "kglight/trainer.hpp"

using namespace kglight;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

struct Workspace {
  std::string dir;
  std::string graph;
  std::string entities;
  std::string labels;
};

Workspace workspace(const std::string& tag) {
  Workspace w;
  w.dir = kglight::testing::temp_dir(tag);
  auto fx = kglight::testing::two_cluster_fixture();
  std::ostringstream nt;
  write_ntriples(nt, fx.triples);
  w.graph = w.dir + "/graph.nt";
  kglight::testing::write_text(w.graph, nt.str());
  w.labels = w.dir + "/labels.tsv";
  kglight::testing::write_labels(w.labels, fx.entities);
  w.entities = w.labels;
  return w;
}

}  // namespace

TEST_CASE("cli: usage errors exit 2") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"bogus"}).code == kExitUsage);
  CHECK(run({"walk", "--graph", "x.nt"}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitOk);
  auto w = workspace("cli_usage");
  auto light_all = run({"walk", "--graph", w.graph, "--entities", "all", "--output", w.dir + "/c.txt"});
  CHECK(light_all.code == kExitUsage);
  CHECK(light_all.err.find("--mode classic") != std::string::npos);
  CHECK(run({"walk", "--graph", w.graph, "--entities", w.entities, "--mode", "sideways", "--output",
             w.dir + "/c.txt"})
            .code == kExitUsage);
}

TEST_CASE("cli: walk, train, eval, query pipeline") {
  auto w = workspace("cli_pipeline");
  const std::string corpus = w.dir + "/walks.txt.gz";
  const std::string model = w.dir + "/model.txt";

  auto walk = run({"walk", "--graph", w.graph, "--entities", w.entities, "--walks", "40", "--output", corpus});
  REQUIRE(walk.code == kExitOk);
  CHECK(walk.out.find("walks: 480") != std::string::npos);
  auto wm = Manifest::read(corpus + ".manifest");
  CHECK(wm.get("walk.walks") == "40");
  CHECK(wm.get("walk.depth") == "4");
  CHECK(wm.get("walk.seed") == "42");
  CHECK(wm.get("timing.walk_ms").has_value());

  CHECK(run({"train", "--corpus", corpus, "--output", model, "--dim", "0"}).code == kExitUsage);
  auto train = run({"train", "--corpus", corpus, "--output", model, "--dim", "16", "--epochs", "3",
                    "--negatives", "5"});
  REQUIRE(train.code == kExitOk);
  CHECK(train.err.find("epoch 3") != std::string::npos);
  CHECK(Manifest::read(model + ".manifest").get("train.strategy") == "Light_40_4_SG_16");
  CHECK(load_model(model).dimension() == 16);

  auto eval = run({"eval", "--model", model, "--task", "classify", "--gold", w.labels});
  REQUIRE(eval.code == kExitOk);
  CHECK(eval.out.rfind("strategy,task,metric,value\nLight_40_4_SG_16,classify,accuracy,", 0) == 0);
  const auto value = eval.out.substr(eval.out.rfind(',') + 1);
  CHECK(value.size() == 7);  // d.dddd plus newline

  auto unknown = run({"eval", "--model", model, "--task", "cluster", "--gold", w.labels});
  CHECK(unknown.code == kExitUsage);
  CHECK(unknown.err.find("density") != std::string::npos);

  CHECK(run({"eval", "--task", "density", "--gold", w.labels}).code == kExitUsage);
  auto density = run({"eval", "--task", "density", "--corpus", corpus, "--entities", w.entities});
  REQUIRE(density.code == kExitOk);
  CHECK(density.out.find(",density,density,") != std::string::npos);

  kglight::testing::write_text(w.dir + "/oov.tsv", "http://ex/x1\tA\nhttp://ex/x2\tB\nhttp://ex/a1\tA\n");
  CHECK(run({"eval", "--model", model, "--task", "classify", "--gold", w.dir + "/oov.tsv"}).code == kExitData);

  auto q = run({"query", "--model", model, "--similarity", "http://ex/a1", "http://ex/a2"});
  REQUIRE(q.code == kExitOk);
  CHECK(std::stod(q.out) <= 1.0);
  auto closest = run({"query", "--model", model, "--closest", "http://ex/a1", "--top", "3"});
  CHECK(std::count(closest.out.begin(), closest.out.end(), '\n') == 3);
  CHECK(run({"query", "--model", model, "--vector", "http://ex/nope"}).code == kExitData);
}

TEST_CASE("cli: data and environment errors") {
  auto w = workspace("cli_errors");
  kglight::testing::write_text(w.dir + "/none.txt", "http://ex/unknown\n");
  CHECK(run({"walk", "--graph", w.graph, "--entities", w.dir + "/none.txt", "--output", w.dir + "/c.txt"})
            .code == kExitData);
  CHECK(run({"walk", "--graph", w.dir + "/absent.nt", "--entities", w.entities, "--output", w.dir + "/c.txt"})
            .code == kExitEnvironment);
  kglight::testing::write_text(w.dir + "/empty.txt", "");
  CHECK(run({"train", "--corpus", w.dir + "/empty.txt", "--output", w.dir + "/m.txt"}).code == kExitData);
  kglight::testing::write_text(w.dir + "/rare.txt", "a p b\n");
  CHECK(run({"train", "--corpus", w.dir + "/rare.txt", "--output", w.dir + "/m.txt", "--min-count", "2"}).code ==
        kExitData);
  CHECK(run({"serve", "--model", w.dir + "/absent.txt", "--port", "0"}).code == kExitEnvironment);
}

TEST_CASE("cli: manifest replay reproduces outputs byte for byte") {
  auto w = workspace("cli_replay");
  const std::string corpus = w.dir + "/walks.txt";
  REQUIRE(run({"walk", "--graph", w.graph, "--entities", w.entities, "--walks", "10", "--output", corpus}).code == 0);
  const std::string first = kglight::testing::read_text(corpus);
  fs::remove(corpus);
  REQUIRE(run({"replay", corpus + ".manifest"}).code == 0);
  CHECK(kglight::testing::read_text(corpus) == first);

  const std::string model = w.dir + "/m.txt";
  REQUIRE(run({"train", "--corpus", corpus, "--output", model, "--dim", "8", "--epochs", "1"}).code == 0);
  const std::string first_model = kglight::testing::read_text(model);
  fs::remove(model);
  REQUIRE(run({"replay", model + ".manifest"}).code == 0);
  CHECK(kglight::testing::read_text(model) == first_model);
}

TEST_CASE("cli: serve exits 3 on a busy port and 0 after SIGINT") {
  auto w = workspace("cli_serve");
  const std::string model = w.dir + "/m.txt";
  save_model(EmbeddingModel::from_vectors({"a", "b"}, 2, {1, 0, 0, 1}), model);

  VectorService holder_svc(load_model(model), "holder");
  HttpServer holder(holder_svc);
  const int busy = holder.bind("127.0.0.1", 0);
  CHECK(run({"serve", "--model", model, "--host", "127.0.0.1", "--port", std::to_string(busy)}).code ==
        kExitEnvironment);
  holder.stop();

  int port = 0;
  {
    HttpServer probe(holder_svc);
    port = probe.bind("127.0.0.1", 0);
  }
  Run result{-1, "", ""};
  std::thread server([&] {
    result = run({"serve", "--model", model, "--host", "127.0.0.1", "--port", std::to_string(port)});
  });
  httplib::Client client("127.0.0.1", port);
  httplib::Result health;
  for (int attempt = 0; attempt < 100 && !health; ++attempt) {
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
    health = client.Get("/health");
  }
  REQUIRE(health);
  CHECK(health->status == 200);
  std::raise(SIGINT);
  server.join();
  CHECK(result.code == kExitOk);
  CHECK(result.err.find("2 vectors, dimension 2") != std::string::npos);
}
