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

#include "kglight/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "kglight/error.hpp"
#include "kglight/eval.hpp"
#include "kglight/graph_io.hpp"
#include "kglight/gzip_stream.hpp"
#include "kglight/manifest.hpp"
#include "kglight/service.hpp"
#include "kglight/trainer.hpp"
#include "kglight/vector_ops.hpp"
#include "kglight/walker.hpp"

namespace kglight {

namespace {

const std::vector<std::string> kTasks = {"classify", "regress", "entity-rel", "doc-rel", "density"};

/// Bad flag combinations detected after parsing; exits with kExitUsage.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input data that cannot be used; exits with kExitData.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Clock = std::chrono::steady_clock;

std::string elapsed_ms(Clock::time_point since) {
  const auto ms = std::chrono::duration<double, std::milli>(Clock::now() - since).count();
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", ms);
  return buf;
}

std::string full_precision(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// One entity per line (first tab-separated column), angle brackets optional.
std::vector<std::string> read_entity_list(const std::string& path) {
  InputFile file(path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(file.stream(), line)) {
    std::string first = line.substr(0, line.find('\t'));
    const auto b = first.find_first_not_of(" \r");
    if (b == std::string::npos) continue;
    first = first.substr(b, first.find_last_not_of(" \r") - b + 1);
    if (first.front() == '#') continue;
    if (first.size() >= 2 && first.front() == '<' && first.back() == '>') {
      first = first.substr(1, first.size() - 2);
    }
    out.push_back(first);
  }
  return out;
}

void require_one_of(const std::string& flag, const std::string& value,
                    const std::vector<std::string>& allowed) {
  if (std::find(allowed.begin(), allowed.end(), value) != allowed.end()) return;
  std::string list;
  for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
  throw UsageError(flag + " must be one of: " + list + " (got '" + value + "')");
}

// ---------------------------------------------------------------------------
// walk

struct WalkArgs {
  std::vector<std::string> graphs;
  std::string format = "auto";
  std::string entities;
  std::string mode = "light";
  std::size_t walks = 500;
  std::size_t depth = 4;
  std::uint64_t seed = 42;
  unsigned workers = 1;
  std::string direction = "union";
  bool include_literals = false;
  bool strict = false;
  std::string output;

  std::vector<std::string> resolved() const {
    std::vector<std::string> a = {"walk"};
    for (const auto& g : graphs) {
      a.push_back("--graph");
      a.push_back(g);
    }
    a.insert(a.end(), {"--format", format, "--entities", entities, "--mode", mode, "--walks",
                       std::to_string(walks), "--depth", std::to_string(depth), "--seed",
                       std::to_string(seed), "--workers", std::to_string(workers),
                       "--direction", direction});
    if (include_literals) a.push_back("--include-literals");
    if (strict) a.push_back("--strict");
    a.insert(a.end(), {"--output", output});
    return a;
  }
};

int cmd_walk(const WalkArgs& args, std::ostream& out, std::ostream& err) {
  require_one_of("--mode", args.mode, {"light", "classic"});
  require_one_of("--format", args.format, {"auto", "nt", "ttl"});
  require_one_of("--direction", args.direction, {"union", "coin"});
  if (args.walks < 1) throw UsageError("--walks must be >= 1");
  if (args.depth < 1) throw UsageError("--depth must be >= 1");
  if (args.workers < 1) throw UsageError("--workers must be >= 1");
  const bool all = args.entities == "all";
  if (all && args.mode == "light") {
    throw UsageError(
        "--entities all is not valid with --mode light: light walks need an explicit file of "
        "entities of interest; use --mode classic to walk from every subject node");
  }

  const std::string manifest_path = args.output + ".manifest";
  Manifest m;
  m.set("tool.version", kToolVersion);
  m.set("command", "walk");
  m.set("walk.mode", args.mode);
  m.set("walk.walks", std::to_string(args.walks));
  m.set("walk.depth", std::to_string(args.depth));
  m.set("walk.seed", std::to_string(args.seed));
  m.set("walk.direction", args.direction);
  m.set("walk.include_literals", args.include_literals ? "true" : "false");
  m.set("workers", std::to_string(args.workers));
  for (std::size_t i = 0; i < args.graphs.size(); ++i) {
    m.set("input.graph." + std::to_string(i) + ".path", args.graphs[i]);
    m.set("input.graph." + std::to_string(i) + ".digest", file_digest(args.graphs[i]));
  }
  if (!all) m.set("input.entities.digest", file_digest(args.entities));
  m.set_args(args.resolved());
  m.write(manifest_path);

  auto t0 = Clock::now();
  std::vector<GraphSource> sources;
  for (const auto& g : args.graphs) {
    const RdfFormat f = args.format == "auto" ? format_from_path(g)
                        : args.format == "ttl" ? RdfFormat::kTurtle
                                               : RdfFormat::kNTriples;
    sources.push_back({g, f});
  }
  std::vector<ParseReport> reports;
  const KnowledgeGraph graph = load_graph(sources, {!args.strict, args.workers}, &reports);
  for (std::size_t i = 0; i < reports.size(); ++i) {
    if (!reports[i].errors.empty()) {
      err << "warning: " << sources[i].path << ": skipped " << reports[i].errors.size()
          << " malformed line(s), first at line " << reports[i].errors.front().line << "\n";
    }
  }
  Manifest::append(manifest_path, "timing.load_ms", elapsed_ms(t0));

  std::vector<NodeId> entities;
  if (all) {
    entities = subject_nodes(graph);
  } else {
    const auto names = read_entity_list(args.entities);
    EntitySelection sel = resolve_entities(graph, names);
    for (const auto& name : sel.missing) err << "warning: missing-entity: " << name << "\n";
    entities = std::move(sel.found);
  }
  if (entities.empty()) throw DataError("empty-entity-set: no entity of interest is in the graph");

  WalkConfig cfg;
  cfg.walks_per_entity = args.walks;
  cfg.depth = args.depth;
  cfg.strategy = args.mode == "light" ? WalkStrategy::kLight : WalkStrategy::kClassic;
  cfg.direction = args.direction == "coin" ? DirectionRule::kFairCoin : DirectionRule::kUniformOverUnion;
  cfg.include_literals = args.include_literals;
  cfg.seed = args.seed;
  cfg.workers = args.workers;

  auto t1 = Clock::now();
  const WalkCorpus corpus = generate_walks(graph, entities, cfg);
  Manifest::append(manifest_path, "timing.walk_ms", elapsed_ms(t1));
  auto t2 = Clock::now();
  const std::size_t lines = write_corpus(graph, corpus, args.output);
  Manifest::append(manifest_path, "timing.write_ms", elapsed_ms(t2));
  Manifest::append(manifest_path, "output.walks", std::to_string(lines));
  Manifest::append(manifest_path, "output.entities", std::to_string(corpus.entities.size()));

  out << "walks: " << lines << "\n";
  out << "elapsed_ms: " << elapsed_ms(t0) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// train

struct TrainArgs {
  std::string corpus;
  std::string output;
  std::string mode = "sg";
  long long dim = 100;
  long long window = 5;
  long long negatives = 25;
  long long epochs = 5;
  double lr = 0.0;
  long long min_count = 1;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  std::string strategy;

  std::vector<std::string> resolved() const {
    std::vector<std::string> a = {"train", "--corpus", corpus, "--output", output, "--mode", mode,
                                  "--dim", std::to_string(dim), "--window", std::to_string(window),
                                  "--negatives", std::to_string(negatives), "--epochs",
                                  std::to_string(epochs), "--lr", full_precision(lr),
                                  "--min-count", std::to_string(min_count), "--seed",
                                  std::to_string(seed), "--workers", std::to_string(workers)};
    if (!strategy.empty()) a.insert(a.end(), {"--strategy", strategy});
    return a;
  }
};

int cmd_train(const TrainArgs& args, std::ostream& out, std::ostream& err) {
  require_one_of("--mode", args.mode, {"sg", "cbow"});
  if (args.dim < 1) throw UsageError("--dim must be >= 1");
  if (args.window < 1) throw UsageError("--window must be >= 1");
  if (args.negatives < 0) throw UsageError("--negatives must be >= 0");
  if (args.epochs < 1) throw UsageError("--epochs must be >= 1");
  if (args.lr < 0) throw UsageError("--lr must be > 0 (0 selects the mode default)");
  if (args.min_count < 1) throw UsageError("--min-count must be >= 1");
  if (args.workers < 1) throw UsageError("--workers must be >= 1");

  TrainConfig cfg;
  cfg.mode = args.mode == "sg" ? TrainMode::kSkipGram : TrainMode::kCbow;
  cfg.dimension = static_cast<std::size_t>(args.dim);
  cfg.window = static_cast<std::size_t>(args.window);
  cfg.negatives = static_cast<std::size_t>(args.negatives);
  cfg.epochs = static_cast<std::size_t>(args.epochs);
  cfg.initial_learning_rate = args.lr;
  cfg.min_count = static_cast<std::size_t>(args.min_count);
  cfg.seed = args.seed;
  cfg.workers = args.workers;

  std::string strategy = args.strategy;
  if (strategy.empty()) {
    std::string walk_mode = "custom";
    std::size_t walks = 0;
    std::size_t depth = 0;
    if (std::filesystem::exists(args.corpus + ".manifest")) {
      const Manifest cm = Manifest::read(args.corpus + ".manifest");
      walk_mode = cm.get("walk.mode").value_or(walk_mode);
      walks = std::stoul(cm.get("walk.walks").value_or("0"));
      depth = std::stoul(cm.get("walk.depth").value_or("0"));
    }
    strategy = strategy_tag(walk_mode, walks, depth, cfg.mode, cfg.dimension);
  }

  const std::string manifest_path = args.output + ".manifest";
  Manifest m;
  m.set("tool.version", kToolVersion);
  m.set("command", "train");
  m.set("train.mode", args.mode);
  m.set("train.dimension", std::to_string(cfg.dimension));
  m.set("train.window", std::to_string(cfg.window));
  m.set("train.negatives", std::to_string(cfg.negatives));
  m.set("train.epochs", std::to_string(cfg.epochs));
  m.set("train.learning_rate", full_precision(cfg.learning_rate()));
  m.set("train.min_count", std::to_string(cfg.min_count));
  m.set("train.seed", std::to_string(cfg.seed));
  m.set("train.strategy", strategy);
  m.set("workers", std::to_string(cfg.workers));
  m.set("input.corpus.path", args.corpus);
  m.set("input.corpus.digest", file_digest(args.corpus));
  m.set_args(args.resolved());
  m.write(manifest_path);

  auto t0 = Clock::now();
  const Sentences corpus = read_corpus(args.corpus);
  Manifest::append(manifest_path, "timing.read_ms", elapsed_ms(t0));

  auto t1 = Clock::now();
  EmbeddingModel model = train(corpus, cfg, nullptr, [&](const EpochProgress& p) {
    char line[160];
    std::snprintf(line, sizeof line, "epoch %zu  tokens/sec %.0f  loss %.6f  lr %.6f\n", p.epoch,
                  p.tokens_per_second, p.mean_loss, p.learning_rate);
    err << line;
  });
  Manifest::append(manifest_path, "timing.train_ms", elapsed_ms(t1));

  auto t2 = Clock::now();
  save_model(model, args.output);
  Manifest::append(manifest_path, "timing.save_ms", elapsed_ms(t2));
  Manifest::append(manifest_path, "output.vocabulary_size", std::to_string(model.size()));

  out << "strategy: " << strategy << "\n";
  out << "vocabulary: " << model.size() << "\n";
  out << "dimension: " << model.dimension() << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// eval

struct EvalArgs {
  std::string model;
  std::string task;
  std::string gold;
  std::string corpus;
  std::string entities;
  std::size_t k = 3;
  std::size_t folds = 10;
  double lambda = 1e-3;
  std::uint64_t seed = 1;
  std::string strategy;
  std::string output;

  std::vector<std::string> resolved() const {
    std::vector<std::string> a = {"eval", "--task", task};
    if (!model.empty()) a.insert(a.end(), {"--model", model});
    if (!gold.empty()) a.insert(a.end(), {"--gold", gold});
    if (!corpus.empty()) a.insert(a.end(), {"--corpus", corpus});
    if (!entities.empty()) a.insert(a.end(), {"--entities", entities});
    a.insert(a.end(), {"--k", std::to_string(k), "--folds", std::to_string(folds), "--lambda",
                       full_precision(lambda), "--seed", std::to_string(seed)});
    if (!strategy.empty()) a.insert(a.end(), {"--strategy", strategy});
    if (!output.empty()) a.insert(a.end(), {"--output", output});
    return a;
  }
};

void check_coverage(const EmbeddingModel& model, const std::vector<std::string>& entities,
                    std::ostream& err) {
  const double oov = out_of_vocabulary_fraction(model, entities);
  if (oov > 0.5) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.1f%%", 100.0 * oov);
    throw DataError(std::string(buf) + " of the gold entities are not in the model vocabulary");
  }
  if (oov > 0) {
    err << "warning: " << static_cast<std::size_t>(oov * static_cast<double>(entities.size()) + 0.5)
        << " gold entities are out of vocabulary and were dropped\n";
  }
}

int cmd_eval(const EvalArgs& args, std::ostream& out, std::ostream& err) {
  if (std::find(kTasks.begin(), kTasks.end(), args.task) == kTasks.end()) {
    std::string list;
    for (const auto& t : kTasks) list += (list.empty() ? "" : ", ") + t;
    throw UsageError("unknown task '" + args.task + "'; valid tasks: " + list);
  }
  const bool density = args.task == "density";
  if (density) {
    if (args.corpus.empty()) throw UsageError("task density needs --corpus (not --gold)");
  } else {
    if (args.model.empty()) throw UsageError("task " + args.task + " needs --model");
    if (args.gold.empty()) throw UsageError("task " + args.task + " needs --gold");
  }
  if (args.k < 1) throw UsageError("--k must be >= 1");
  if (args.folds < 2) throw UsageError("--folds must be >= 2");

  std::string strategy = args.strategy;
  if (strategy.empty() && !args.model.empty()) {
    if (std::filesystem::exists(args.model + ".manifest")) {
      strategy = Manifest::read(args.model + ".manifest").get("train.strategy").value_or("");
    }
    if (strategy.empty()) strategy = std::filesystem::path(args.model).stem().string();
  }
  if (strategy.empty() && density) {
    if (std::filesystem::exists(args.corpus + ".manifest")) {
      const Manifest cm = Manifest::read(args.corpus + ".manifest");
      std::string mode = cm.get("walk.mode").value_or("custom");
      if (!mode.empty()) mode[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(mode[0])));
      strategy = mode + "_" + cm.get("walk.walks").value_or("0") + "_" +
                 cm.get("walk.depth").value_or("0");
    } else {
      strategy = std::filesystem::path(args.corpus).stem().string();
    }
  }

  std::string manifest_path;
  if (!args.output.empty()) manifest_path = args.output + ".manifest";
  Manifest m;
  m.set("tool.version", kToolVersion);
  m.set("command", "eval");
  m.set("eval.task", args.task);
  m.set("eval.k", std::to_string(args.k));
  m.set("eval.folds", std::to_string(args.folds));
  m.set("eval.lambda", full_precision(args.lambda));
  m.set("eval.seed", std::to_string(args.seed));
  m.set("eval.strategy", strategy);
  if (!args.model.empty()) m.set("input.model.digest", file_digest(args.model));
  if (!args.gold.empty()) m.set("input.gold.digest", file_digest(args.gold));
  if (!args.corpus.empty()) m.set("input.corpus.digest", file_digest(args.corpus));
  m.set_args(args.resolved());
  if (!manifest_path.empty()) m.write(manifest_path);

  auto t0 = Clock::now();
  std::vector<ResultRow> rows;
  auto row = [&](const std::string& metric, double value) {
    rows.push_back({strategy, args.task, metric, value});
  };

  if (density) {
    const Sentences walks = read_corpus(args.corpus);
    std::vector<std::string> anchors;
    if (!args.entities.empty()) anchors = read_entity_list(args.entities);
    if (walks.empty()) throw DataError("empty-corpus: " + args.corpus);
    const DensityReport r = walk_density(walks, anchors);
    row("nodes", static_cast<double>(r.nodes));
    row("edges", static_cast<double>(r.edges));
    row("density", r.density);
    if (!anchors.empty()) row("mean_anchor_degree", r.mean_anchor_degree);
  } else {
    const EmbeddingModel model = load_model(args.model);
    if (args.task == "classify" || args.task == "regress") {
      const LabeledEntitySet data = read_labeled_entities(args.gold);
      std::vector<std::string> names;
      for (const auto& e : data) names.push_back(e.entity);
      check_coverage(model, names, err);
      if (args.task == "classify") {
        const auto r = knn_classification_cv(model, data, {args.k, args.folds, args.seed});
        row("accuracy", r.accuracy);
      } else {
        const auto r =
            linear_regression_cv(model, to_regression(data), {args.folds, args.lambda, args.seed});
        row("rmse", r.rmse);
      }
    } else if (args.task == "entity-rel") {
      const auto gold = read_entity_relatedness_gold(args.gold);
      std::vector<std::string> names;
      for (const auto& s : gold) {
        names.push_back(s.seed);
        names.insert(names.end(), s.candidates.begin(), s.candidates.end());
      }
      check_coverage(model, names, err);
      const auto r = entity_relatedness_eval(model, gold);
      if (r.per_seed.empty()) throw DataError("no seed could be scored");
      row("spearman_mean", r.mean);
      row("seeds_scored", static_cast<double>(r.per_seed.size()));
    } else {
      const auto gold = read_document_relatedness_gold(args.gold);
      std::vector<std::string> names;
      for (const auto& d : gold.documents) names.insert(names.end(), d.second.begin(), d.second.end());
      check_coverage(model, names, err);
      const auto r = document_relatedness_eval(model, gold);
      row("pearson", r.pearson);
      row("spearman", r.spearman);
      if (r.combined.value) {
        row("harmonic_mean", *r.combined.value);
      } else {
        err << "warning: non-positive-correlation: harmonic mean not reported\n";
      }
    }
  }

  std::ostringstream csv;
  write_results_csv(csv, rows);
  out << csv.str();
  if (!args.output.empty()) {
    OutputFile file(args.output);
    file.stream() << csv.str();
    file.close();
    Manifest::append(manifest_path, "timing.eval_ms", elapsed_ms(t0));
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// query

struct QueryArgs {
  std::string model;
  std::vector<std::string> similarity;
  std::string closest;
  std::size_t top = VectorService::kDefaultTop;
  std::string vector;
};

int cmd_query(const QueryArgs& args, std::ostream& out) {
  const int modes = (!args.similarity.empty()) + (!args.closest.empty()) + (!args.vector.empty());
  if (modes != 1) throw UsageError("give exactly one of --similarity, --closest, --vector");
  if (args.top < 1) throw UsageError("--top must be >= 1");
  const EmbeddingModel model = load_model(args.model);
  if (!args.similarity.empty()) {
    out << full_precision(similarity(model, args.similarity[0], args.similarity[1])) << "\n";
  } else if (!args.closest.empty()) {
    for (const auto& n : nearest_neighbors(model, args.closest, args.top)) {
      out << n.token << '\t' << full_precision(n.score) << "\n";
    }
  } else {
    const auto v = model.vector(args.vector);
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << full_precision(v[i]);
    out << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// serve

std::atomic<bool> g_stop_requested{false};

extern "C" void handle_stop_signal(int) { g_stop_requested.store(true); }

struct ServeArgs {
  std::string model;
  std::string host = "0.0.0.0";
  int port = 8080;
  std::string manifest;
};

int cmd_serve(const ServeArgs& args, std::ostream& out, std::ostream& err) {
  if (args.port < 0 || args.port > 65535) throw UsageError("--port must be in [0, 65535]");
  if (!std::filesystem::exists(args.model)) {
    throw Error(ErrorKind::kIo, "model file not found: " + args.model);
  }
  EmbeddingModel model = load_model(args.model);
  const std::string id =
      std::filesystem::path(args.model).filename().string() + "@" + model_digest(model);
  err << "loaded model " << id << ": " << model.size() << " vectors, dimension "
      << model.dimension() << "\n";

  if (!args.manifest.empty()) {
    Manifest m;
    m.set("tool.version", kToolVersion);
    m.set("command", "serve");
    m.set("serve.model", id);
    m.set("input.model.digest", file_digest(args.model));
    m.set_args({"serve", "--model", args.model, "--host", args.host, "--port",
                std::to_string(args.port)});
    m.write(args.manifest);
  }

  VectorService service(std::move(model), id);
  HttpServer server(service);
  const int port = server.bind(args.host, args.port);
  out << "listening on " << args.host << ":" << port << std::endl;

  g_stop_requested.store(false);
  auto previous_int = std::signal(SIGINT, handle_stop_signal);
  auto previous_term = std::signal(SIGTERM, handle_stop_signal);
  std::atomic<bool> finished{false};
  std::thread watcher([&] {
    while (!finished.load()) {
      // stop() is a no-op until the accept loop runs, so keep issuing it.
      if (g_stop_requested.load()) server.stop();
      std::this_thread::sleep_for(std::chrono::milliseconds(50));
    }
  });
  server.listen();
  finished.store(true);
  watcher.join();
  std::signal(SIGINT, previous_int);
  std::signal(SIGTERM, previous_term);
  err << "shut down\n";
  return kExitOk;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kIo: return kExitEnvironment;
    case ErrorKind::kInvalidArgument: return kExitUsage;
    default: return kExitData;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"kglight: knowledge-graph walk embeddings (classic and light)", "kglight"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  WalkArgs walk;
  auto* walk_cmd = app.add_subcommand("walk", "Generate a walk corpus from an RDF graph");
  walk_cmd->add_option("--graph", walk.graphs, "Graph file(s): .nt/.ttl, optionally .gz")->required();
  walk_cmd->add_option("--format", walk.format, "auto | nt | ttl")->capture_default_str();
  walk_cmd->add_option("--entities", walk.entities, "Entity list file, or 'all' (classic only)")
      ->required();
  walk_cmd->add_option("--mode", walk.mode, "light | classic")->capture_default_str();
  walk_cmd->add_option("--walks", walk.walks, "Walks per entity")->capture_default_str();
  walk_cmd->add_option("--depth", walk.depth, "Node hops beyond the anchor")->capture_default_str();
  walk_cmd->add_option("--seed", walk.seed)->capture_default_str();
  walk_cmd->add_option("--workers", walk.workers, "1 guarantees reproducible output")
      ->capture_default_str();
  walk_cmd->add_option("--direction", walk.direction, "union | coin")->capture_default_str();
  walk_cmd->add_flag("--include-literals", walk.include_literals);
  walk_cmd->add_flag("--strict", walk.strict, "Abort on the first malformed line");
  walk_cmd->add_option("--output", walk.output, "Corpus path (.gz compresses)")->required();

  TrainArgs tr;
  auto* train_cmd = app.add_subcommand("train", "Train embeddings from a walk corpus");
  train_cmd->add_option("--corpus", tr.corpus)->required();
  train_cmd->add_option("--output", tr.output, "Model path")->required();
  train_cmd->add_option("--mode", tr.mode, "sg | cbow")->capture_default_str();
  train_cmd->add_option("--dim", tr.dim)->capture_default_str();
  train_cmd->add_option("--window", tr.window)->capture_default_str();
  train_cmd->add_option("--negatives", tr.negatives)->capture_default_str();
  train_cmd->add_option("--epochs", tr.epochs)->capture_default_str();
  train_cmd->add_option("--lr", tr.lr, "Initial learning rate (0 = mode default)")
      ->capture_default_str();
  train_cmd->add_option("--min-count", tr.min_count)->capture_default_str();
  train_cmd->add_option("--seed", tr.seed)->capture_default_str();
  train_cmd->add_option("--workers", tr.workers)->capture_default_str();
  train_cmd->add_option("--strategy", tr.strategy, "Override the strategy tag");

  EvalArgs ev;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a model or a corpus");
  eval_cmd->add_option("--task", ev.task, "classify | regress | entity-rel | doc-rel | density")
      ->required();
  eval_cmd->add_option("--model", ev.model);
  eval_cmd->add_option("--gold", ev.gold);
  eval_cmd->add_option("--corpus", ev.corpus, "Walk corpus (density task)");
  eval_cmd->add_option("--entities", ev.entities, "Anchor entities (density task)");
  eval_cmd->add_option("--k", ev.k)->capture_default_str();
  eval_cmd->add_option("--folds", ev.folds)->capture_default_str();
  eval_cmd->add_option("--lambda", ev.lambda)->capture_default_str();
  eval_cmd->add_option("--seed", ev.seed)->capture_default_str();
  eval_cmd->add_option("--strategy", ev.strategy);
  eval_cmd->add_option("--output", ev.output, "Also write the CSV here");

  QueryArgs q;
  auto* query_cmd = app.add_subcommand("query", "Look up vectors, similarities, neighbors");
  query_cmd->add_option("--model", q.model)->required();
  query_cmd->add_option("--similarity", q.similarity)->expected(2);
  query_cmd->add_option("--closest", q.closest);
  query_cmd->add_option("--top", q.top)->capture_default_str();
  query_cmd->add_option("--vector", q.vector);

  ServeArgs sv;
  auto* serve_cmd = app.add_subcommand("serve", "Serve a model over HTTP");
  serve_cmd->add_option("--model", sv.model)->required();
  serve_cmd->add_option("--host", sv.host)->capture_default_str();
  serve_cmd->add_option("--port", sv.port)->capture_default_str();
  serve_cmd->add_option("--manifest", sv.manifest);

  std::string replay_path;
  auto* replay_cmd = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
  replay_cmd->add_option("manifest", replay_path)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (walk_cmd->parsed()) return cmd_walk(walk, out, err);
    if (train_cmd->parsed()) return cmd_train(tr, out, err);
    if (eval_cmd->parsed()) return cmd_eval(ev, out, err);
    if (query_cmd->parsed()) return cmd_query(q, out);
    if (serve_cmd->parsed()) return cmd_serve(sv, out, err);
    if (replay_cmd->parsed()) return run_cli(Manifest::read(replay_path).args(), out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DataError& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitEnvironment;
  }
  return kExitUsage;
}

}  // namespace kglight
