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

#include "kglight/trainer.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <thread>

#include "kglight/error.hpp"
#include "kglight/gzip_stream.hpp"
#include "kglight/sgns.hpp"

namespace kglight {

std::string_view train_mode_name(TrainMode mode) {
  return mode == TrainMode::kSkipGram ? "SG" : "CBOW";
}

double TrainConfig::learning_rate() const {
  if (initial_learning_rate > 0) return initial_learning_rate;
  return mode == TrainMode::kSkipGram ? 0.025 : 0.05;
}

void validate(const TrainConfig& cfg) {
  if (cfg.dimension < 1) throw Error(ErrorKind::kInvalidArgument, "dimension must be >= 1");
  if (cfg.window < 1) throw Error(ErrorKind::kInvalidArgument, "window must be >= 1");
  if (cfg.epochs < 1) throw Error(ErrorKind::kInvalidArgument, "epochs must be >= 1");
  if (!(cfg.initial_learning_rate >= 0) || !std::isfinite(cfg.initial_learning_rate)) {
    throw Error(ErrorKind::kInvalidArgument, "learning rate must be > 0");
  }
}

// ---------------------------------------------------------------------------
// Vocabulary

Vocabulary::Vocabulary(std::vector<std::string> tokens, std::vector<std::uint64_t> counts)
    : tokens_(std::move(tokens)), counts_(std::move(counts)) {
  if (tokens_.size() != counts_.size()) {
    throw Error(ErrorKind::kInvalidArgument, "token and count lists differ in length");
  }
  index_.reserve(tokens_.size());
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (!index_.emplace(tokens_[i], i).second) {
      throw Error(ErrorKind::kInvalidArgument, "duplicate token " + tokens_[i]);
    }
  }
  build_alias_table();
}

std::optional<std::size_t> Vocabulary::find(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

double Vocabulary::sampling_probability(std::size_t index) const {
  return probability_.at(index);
}

std::size_t Vocabulary::sample_negative(Rng& rng) const {
  const std::size_t i = uniform_index(rng, alias_.size());
  return uniform_unit(rng) < alias_cut_[i] ? i : alias_[i];
}

// Vose's alias method.
void Vocabulary::build_alias_table() {
  const std::size_t n = counts_.size();
  probability_.assign(n, 0.0);
  alias_cut_.assign(n, 1.0);
  alias_.resize(n);
  if (n == 0) return;
  double total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    probability_[i] = std::pow(static_cast<double>(counts_[i]), kSamplingPower);
    total += probability_[i];
  }
  std::vector<double> scaled(n);
  std::vector<std::size_t> small;
  std::vector<std::size_t> large;
  for (std::size_t i = 0; i < n; ++i) {
    probability_[i] /= total;
    scaled[i] = probability_[i] * static_cast<double>(n);
    alias_[i] = i;
    (scaled[i] < 1.0 ? small : large).push_back(i);
  }
  while (!small.empty() && !large.empty()) {
    const std::size_t s = small.back();
    small.pop_back();
    const std::size_t l = large.back();
    alias_cut_[s] = scaled[s];
    alias_[s] = l;
    scaled[l] -= 1.0 - scaled[s];
    if (scaled[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  for (std::size_t i : small) alias_cut_[i] = 1.0;
  for (std::size_t i : large) alias_cut_[i] = 1.0;
}

Vocabulary build_vocabulary(const Sentences& corpus, std::size_t min_count) {
  struct Entry {
    std::uint64_t count = 0;
    std::size_t first_seen = 0;
  };
  std::unordered_map<std::string, Entry> counts;
  std::vector<const std::string*> order;
  for (const auto& sentence : corpus) {
    for (const std::string& tok : sentence) {
      auto [it, inserted] = counts.try_emplace(tok, Entry{0, order.size()});
      if (inserted) order.push_back(&it->first);
      ++it->second.count;
    }
  }
  if (order.empty()) throw Error(ErrorKind::kEmptyCorpus, "corpus contains no tokens");

  std::vector<std::pair<const std::string*, Entry>> kept;
  for (const std::string* tok : order) {
    const Entry& e = counts.at(*tok);
    if (e.count >= min_count) kept.emplace_back(tok, e);
  }
  std::stable_sort(kept.begin(), kept.end(),
                   [](const auto& a, const auto& b) { return a.second.count > b.second.count; });
  std::vector<std::string> tokens;
  std::vector<std::uint64_t> freq;
  for (const auto& [tok, e] : kept) {
    tokens.push_back(*tok);
    freq.push_back(e.count);
  }
  return Vocabulary(std::move(tokens), std::move(freq));
}

// ---------------------------------------------------------------------------
// EmbeddingModel

EmbeddingModel::EmbeddingModel(Vocabulary vocab, std::size_t dimension, std::vector<float> input,
                               std::vector<float> output, TrainConfig config)
    : vocab_(std::move(vocab)),
      dimension_(dimension),
      input_(std::move(input)),
      output_(std::move(output)),
      config_(config) {
  if (input_.size() != vocab_.size() * dimension_ ||
      (!output_.empty() && output_.size() != input_.size())) {
    throw Error(ErrorKind::kDimensionMismatch, "vector table does not match vocabulary size");
  }
}

EmbeddingModel EmbeddingModel::from_vectors(std::vector<std::string> tokens,
                                            std::size_t dimension, std::vector<float> values) {
  std::vector<std::uint64_t> counts(tokens.size(), 1);
  TrainConfig cfg;
  cfg.dimension = dimension;
  return EmbeddingModel(Vocabulary(std::move(tokens), std::move(counts)), dimension,
                        std::move(values), {}, cfg);
}

std::span<const float> EmbeddingModel::vector(std::size_t index) const {
  if (index >= size()) throw Error(ErrorKind::kUnknownToken, "index " + std::to_string(index));
  return {input_.data() + index * dimension_, dimension_};
}

std::span<const float> EmbeddingModel::vector(std::string_view token) const {
  auto idx = find(token);
  if (!idx) throw Error(ErrorKind::kUnknownToken, std::string(token));
  return vector(*idx);
}

std::span<const float> EmbeddingModel::context_vector(std::size_t index) const {
  if (output_.empty() || index >= size()) {
    throw Error(ErrorKind::kUnknownToken, "no context vector for index " + std::to_string(index));
  }
  return {output_.data() + index * dimension_, dimension_};
}

EmbeddingModel EmbeddingModel::scaled(float factor) const {
  EmbeddingModel copy = *this;
  for (float& x : copy.input_) x *= factor;
  return copy;
}

// ---------------------------------------------------------------------------
// Training

namespace {

constexpr double kFinalRateFraction = 1e-4;
constexpr std::uint64_t kProgressSyncInterval = 1024;

struct SharedState {
  const TrainConfig& cfg;
  const Vocabulary& vocab;
  std::vector<float>& input;
  std::vector<float>& output;
  std::uint64_t total_updates;
  std::atomic<std::uint64_t> processed{0};
};

struct WorkerTotals {
  double loss = 0;
  std::uint64_t positives = 0;
};

class Worker {
 public:
  Worker(SharedState& shared, Rng rng)
      : s_(shared),
        rng_(rng),
        dim_(shared.cfg.dimension),
        step_(dim_),
        hidden_(dim_),
        rate0_(shared.cfg.learning_rate()) {}

  WorkerTotals run(std::span<const std::vector<std::uint32_t>> sentences) {
    WorkerTotals totals;
    for (const auto& sentence : sentences) {
      for (std::size_t i = 0; i < sentence.size(); ++i) {
        const float lr = current_rate();
        if (s_.cfg.mode == TrainMode::kSkipGram) {
          skip_gram(sentence, i, lr, totals);
        } else {
          cbow(sentence, i, lr, totals);
        }
        if (++local_ == kProgressSyncInterval) sync();
      }
    }
    sync();
    return totals;
  }

 private:
  float current_rate() const {
    const double progress =
        static_cast<double>(snapshot_ + local_) / static_cast<double>(s_.total_updates);
    const double frac = 1.0 - (1.0 - kFinalRateFraction) * std::min(progress, 1.0);
    return static_cast<float>(rate0_ * frac);
  }

  void sync() {
    snapshot_ = s_.processed.fetch_add(local_, std::memory_order_relaxed) + local_;
    local_ = 0;
  }

  std::span<float> in_row(std::size_t i) { return {s_.input.data() + i * dim_, dim_}; }
  std::span<float> out_row(std::size_t i) { return {s_.output.data() + i * dim_, dim_}; }

  /// Positive term for `target` plus negatives, all against `input`.
  double discriminate(std::span<const float> input, std::size_t target, float lr) {
    double loss = sgns_term<float>(input, out_row(target), 1.0f, lr, step_);
    for (std::size_t k = 0; k < s_.cfg.negatives; ++k) {
      const std::size_t neg = s_.vocab.sample_negative(rng_);
      if (neg == target) continue;
      loss += sgns_term<float>(input, out_row(neg), 0.0f, lr, step_);
    }
    return loss;
  }

  void skip_gram(const std::vector<std::uint32_t>& sentence, std::size_t i, float lr,
                 WorkerTotals& totals) {
    const std::size_t w = s_.cfg.window;
    const std::size_t lo = i >= w ? i - w : 0;
    const std::size_t hi = std::min(sentence.size() - 1, i + w);
    std::span<float> center = in_row(sentence[i]);
    for (std::size_t j = lo; j <= hi; ++j) {
      if (j == i) continue;
      std::fill(step_.begin(), step_.end(), 0.0f);
      totals.loss += discriminate(center, sentence[j], lr);
      ++totals.positives;
      for (std::size_t d = 0; d < dim_; ++d) center[d] += step_[d];
    }
  }

  void cbow(const std::vector<std::uint32_t>& sentence, std::size_t i, float lr,
            WorkerTotals& totals) {
    const std::size_t w = s_.cfg.window;
    const std::size_t lo = i >= w ? i - w : 0;
    const std::size_t hi = std::min(sentence.size() - 1, i + w);
    std::fill(hidden_.begin(), hidden_.end(), 0.0f);
    std::size_t n_ctx = 0;
    for (std::size_t j = lo; j <= hi; ++j) {
      if (j == i) continue;
      auto row = in_row(sentence[j]);
      for (std::size_t d = 0; d < dim_; ++d) hidden_[d] += row[d];
      ++n_ctx;
    }
    if (n_ctx == 0) return;
    for (float& h : hidden_) h /= static_cast<float>(n_ctx);
    std::fill(step_.begin(), step_.end(), 0.0f);
    totals.loss += discriminate(hidden_, sentence[i], lr);
    ++totals.positives;
    for (std::size_t j = lo; j <= hi; ++j) {
      if (j == i) continue;
      auto row = in_row(sentence[j]);
      for (std::size_t d = 0; d < dim_; ++d) row[d] += step_[d];
    }
  }

  SharedState& s_;
  Rng rng_;
  std::size_t dim_;
  std::vector<float> step_;
  std::vector<float> hidden_;
  double rate0_;
  std::uint64_t local_ = 0;
  std::uint64_t snapshot_ = 0;
};

}  // namespace

EmbeddingModel train(const Sentences& corpus, const TrainConfig& cfg, TrainReport* report,
                     const ProgressCallback& progress) {
  validate(cfg);
  Vocabulary vocab = build_vocabulary(corpus, cfg.min_count);
  if (vocab.empty()) {
    throw Error(ErrorKind::kEmptyVocabulary,
                "no token reaches min_count " + std::to_string(cfg.min_count));
  }

  std::vector<std::vector<std::uint32_t>> indexed;
  indexed.reserve(corpus.size());
  std::uint64_t tokens = 0;
  for (const auto& sentence : corpus) {
    std::vector<std::uint32_t> ids;
    ids.reserve(sentence.size());
    for (const std::string& tok : sentence) {
      if (auto idx = vocab.find(tok)) ids.push_back(static_cast<std::uint32_t>(*idx));
    }
    tokens += ids.size();
    if (!ids.empty()) indexed.push_back(std::move(ids));
  }

  const std::size_t dim = cfg.dimension;
  std::vector<float> input(vocab.size() * dim);
  std::vector<float> output(vocab.size() * dim, 0.0f);
  Rng init = derive_rng(cfg.seed, 0x1417);
  for (float& x : input) {
    x = static_cast<float>((uniform_unit(init) - 0.5) / static_cast<double>(dim));
  }

  SharedState shared{cfg, vocab, input, output, std::max<std::uint64_t>(1, tokens * cfg.epochs)};
  const unsigned workers = std::max(
      1u, std::min<unsigned>(cfg.workers, static_cast<unsigned>(indexed.size())));
  if (report != nullptr) report->tokens_per_epoch = tokens;

  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<WorkerTotals> totals(workers);
    auto run_chunk = [&](unsigned t) {
      const std::size_t begin = indexed.size() * t / workers;
      const std::size_t end = indexed.size() * (t + 1) / workers;
      Worker worker(shared, derive_rng(cfg.seed, epoch + 1, t));
      totals[t] = worker.run(std::span(indexed).subspan(begin, end - begin));
    };
    if (workers == 1) {
      run_chunk(0);
    } else {
      std::vector<std::thread> threads;
      for (unsigned t = 0; t < workers; ++t) threads.emplace_back(run_chunk, t);
      for (auto& th : threads) th.join();
    }

    double loss = 0;
    std::uint64_t positives = 0;
    for (const auto& t : totals) {
      loss += t.loss;
      positives += t.positives;
    }
    const double mean = positives > 0 ? loss / static_cast<double>(positives) : 0.0;
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const double done = static_cast<double>(shared.processed.load()) /
                        static_cast<double>(shared.total_updates);
    const double rate = cfg.learning_rate() * (1.0 - (1.0 - kFinalRateFraction) * std::min(done, 1.0));
    if (!std::isfinite(mean)) {
      throw Error(ErrorKind::kNonFiniteLoss, "epoch " + std::to_string(epoch + 1) +
                                                 ", learning rate " + std::to_string(rate) +
                                                 ", positives " + std::to_string(positives));
    }
    if (report != nullptr) report->epoch_loss.push_back(mean);
    if (progress) {
      progress(EpochProgress{epoch + 1, mean,
                             secs > 0 ? static_cast<double>(tokens) / secs : 0.0, rate});
    }
  }

  return EmbeddingModel(std::move(vocab), dim, std::move(input), std::move(output), cfg);
}

// ---------------------------------------------------------------------------
// Persistence

void save_model(const EmbeddingModel& model, const std::string& path) {
  OutputFile file(path);
  std::ostream& out = file.stream();
  out << model.size() << ' ' << model.dimension() << '\n';
  std::array<char, 64> buf{};
  for (std::size_t i = 0; i < model.size(); ++i) {
    out << model.vocabulary().token(i);
    for (float x : model.vector(i)) {
      auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
      out << ' ';
      out.write(buf.data(), end - buf.data());
    }
    out << '\n';
  }
  file.close();
}

namespace {

[[noreturn]] void malformed(const std::string& path, std::uint64_t line, const std::string& msg) {
  throw Error(ErrorKind::kMalformedModel, path + ": line " + std::to_string(line) + ": " + msg);
}

std::vector<std::string_view> split_spaces(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

EmbeddingModel load_model(const std::string& path) {
  InputFile file(path);
  std::istream& in = file.stream();
  std::string line;
  if (!std::getline(in, line)) malformed(path, 1, "missing header");
  const auto header = split_spaces(line);
  std::size_t count = 0;
  std::size_t dim = 0;
  if (header.size() != 2 || !parse_number(header[0], count) || !parse_number(header[1], dim) ||
      dim == 0) {
    malformed(path, 1, "header must be '<count> <dimension>'");
  }

  std::vector<std::string> tokens;
  std::vector<float> values;
  tokens.reserve(count);
  values.reserve(count * dim);
  std::uint64_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = split_spaces(line);
    if (fields.empty()) continue;
    if (tokens.size() == count) {
      malformed(path, line_no, "more vectors than the header count " + std::to_string(count));
    }
    if (fields.size() != dim + 1) {
      malformed(path, line_no, "expected token and " + std::to_string(dim) + " values, got " +
                                   std::to_string(fields.size()) + " fields");
    }
    tokens.emplace_back(fields[0]);
    for (std::size_t d = 1; d <= dim; ++d) {
      float x = 0;
      if (!parse_number(fields[d], x) || !std::isfinite(x)) {
        malformed(path, line_no, "bad value '" + std::string(fields[d]) + "'");
      }
      values.push_back(x);
    }
  }
  if (tokens.size() != count) {
    malformed(path, line_no, "header promises " + std::to_string(count) + " vectors, found " +
                                 std::to_string(tokens.size()));
  }
  std::vector<std::uint64_t> counts(tokens.size(), 1);
  Vocabulary vocab;
  try {
    vocab = Vocabulary(std::move(tokens), std::move(counts));
  } catch (const Error& e) {
    malformed(path, line_no, e.what());
  }
  TrainConfig cfg;
  cfg.dimension = dim;
  return EmbeddingModel(std::move(vocab), dim, std::move(values), {}, cfg);
}

std::string model_digest(const EmbeddingModel& model) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  auto mix = [&](const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= p[i];
      h *= 0x100000001B3ULL;
    }
  };
  for (std::size_t i = 0; i < model.size(); ++i) {
    const std::string& tok = model.vocabulary().token(i);
    mix(tok.data(), tok.size() + 1);
    for (float x : model.vector(i)) {
      std::uint32_t bits = 0;
      std::memcpy(&bits, &x, sizeof bits);
      mix(&bits, sizeof bits);
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace kglight
