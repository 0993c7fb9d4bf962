#include "skipgram/trainer.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <thread>
#include <vector>

#include "skipgram/errors.hpp"
#include "skipgram/sampler.hpp"
#include "skipgram/subsample.hpp"
#include "skipgram/tokenizer.hpp"

namespace skipgram {

namespace {

// Tokens a worker processes between learning-rate refreshes and flushes of
// its local token count into the shared schedule counter.
constexpr std::int64_t kScheduleBatch = 10000;

struct Shared {
  EmbeddingModel* model = nullptr;
  const Vocabulary* vocab = nullptr;
  const TrainConfig* config = nullptr;
  const HuffmanCoding* coding = nullptr;
  const NoiseSampler* sampler = nullptr;
  const SubsampleFilter* subsample = nullptr;
  std::string corpus_path;
  std::uint64_t file_size = 0;
  std::int64_t schedule_total = 0;  // epochs * total_tokens
  std::atomic<std::int64_t> processed{0};
  std::atomic<std::uint64_t> trained_pairs{0};
  std::atomic<std::uint64_t> discarded{0};
  std::chrono::steady_clock::time_point start_time;
};

double current_lr(const Shared& shared, std::int64_t processed) {
  const auto& cfg = *shared.config;
  double remaining = 1.0 - static_cast<double>(processed) /
                               static_cast<double>(shared.schedule_total);
  if (remaining < cfg.min_lr_fraction) remaining = cfg.min_lr_fraction;
  return cfg.initial_lr * remaining;
}

void report_progress(const Shared& shared, std::int64_t processed, double lr) {
  auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                               shared.start_time)
                     .count();
  double percent = 100.0 * static_cast<double>(processed) /
                   static_cast<double>(shared.schedule_total);
  double rate = elapsed > 0 ? static_cast<double>(processed) / elapsed / 1000.0 : 0.0;
  std::fprintf(stderr, "\rtrain %6.2f%%  lr %.6f  %.0fk tokens/s", percent, lr, rate);
  std::fflush(stderr);
}

// Positions the stream at the first sentence belonging to shard
// [begin, end): a sentence belongs to the shard containing its first byte.
std::uint64_t align_to_shard(std::ifstream& in, std::uint64_t begin) {
  if (begin == 0) return 0;
  in.seekg(static_cast<std::streamoff>(begin - 1));
  std::string discard;
  std::getline(in, discard);  // consumes through the newline at/after begin-1
  return begin + discard.size();  // discard excludes the '\n' read before it
}

class Worker {
 public:
  Worker(Shared& shared, std::int32_t id)
      : shared_(shared),
        id_(id),
        rng_(shared.config->seed + static_cast<std::uint64_t>(id)),
        lr_(static_cast<float>(current_lr(shared, shared.processed.load()))) {}

  void run() {
    const auto& cfg = *shared_.config;
    const std::uint64_t begin = shared_.file_size * id_ / cfg.workers;
    const std::uint64_t end = shared_.file_size * (id_ + 1) / cfg.workers;

    std::vector<std::string> sentence;
    std::vector<std::int32_t> words;
    std::vector<std::int32_t> negatives(cfg.objective == Objective::kNegativeSampling
                                            ? static_cast<std::size_t>(cfg.negatives)
                                            : 0);

    for (std::int32_t epoch = 0; epoch < cfg.epochs; ++epoch) {
      std::ifstream in(shared_.corpus_path, std::ios::binary);
      if (!in) throw IoError("cannot open corpus: " + shared_.corpus_path, begin);
      std::uint64_t pos = align_to_shard(in, begin);
      SentenceReader reader(in, pos);

      while (reader.next(sentence)) {
        if (reader.sentence_offset() >= end) break;
        train_sentence(sentence, words, negatives);
      }
    }
    flush_tokens();
    shared_.trained_pairs.fetch_add(pairs_, std::memory_order_relaxed);
    shared_.discarded.fetch_add(discarded_, std::memory_order_relaxed);
  }

 private:
  void train_sentence(const std::vector<std::string>& sentence,
                      std::vector<std::int32_t>& words,
                      std::vector<std::int32_t>& negatives) {
    const auto& cfg = *shared_.config;
    auto& model = *shared_.model;

    words.clear();
    std::int64_t seen = 0;
    for (const auto& token : sentence) {
      std::int32_t w = shared_.vocab->find(token);
      if (w == Vocabulary::kNotFound) continue;
      ++seen;
      if (shared_.subsample->discard(w, rng_)) {
        ++discarded_;
        continue;
      }
      words.push_back(w);
    }
    pending_ += seen;
    if (pending_ >= kScheduleBatch) flush_tokens();

    const auto n = static_cast<std::int64_t>(words.size());
    for (std::int64_t t = 0; t < n; ++t) {
      const std::int32_t center = words[t];
      std::int64_t b = cfg.sentence_window
                           ? n
                           : sample_window(cfg.window, rng_);
      const std::int64_t lo = std::max<std::int64_t>(0, t - b);
      const std::int64_t hi = std::min<std::int64_t>(n - 1, t + b);
      for (std::int64_t p = lo; p <= hi; ++p) {
        if (p == t) continue;
        const std::int32_t context = words[p];
        // The center word is the input; the context word is predicted.
        if (cfg.objective == Objective::kNegativeSampling) {
          for (auto& neg : negatives) neg = shared_.sampler->sample_excluding(context, rng_);
          neg_step(model, context, center, negatives, lr_);
        } else {
          hs_step(model, *shared_.coding, context, center, lr_);
        }
        ++pairs_;
      }
      if ((pairs_ & 0xfff) == 0 && !std::isfinite(model.input_row(center)[0]))
        throw DivergenceError("non-finite parameter detected during training (worker " +
                              std::to_string(id_) + ")");
    }
  }

  // Moves the locally counted tokens into the shared schedule counter, then
  // refreshes the learning rate and emits progress.
  void flush_tokens() {
    if (pending_ == 0) return;
    std::int64_t before = shared_.processed.fetch_add(pending_, std::memory_order_relaxed);
    std::int64_t now = before + pending_;
    pending_ = 0;
    lr_ = static_cast<float>(current_lr(shared_, now));
    const std::int64_t interval = shared_.config->report_interval;
    if (interval > 0 && before / interval != now / interval)
      report_progress(shared_, now, lr_);
  }

  Shared& shared_;
  std::int32_t id_;
  Rng rng_;
  float lr_ = 0.0f;
  std::int64_t pending_ = 0;
  std::uint64_t pairs_ = 0;
  std::uint64_t discarded_ = 0;
};

void validate(const TrainConfig& cfg, const Vocabulary& vocab) {
  if (vocab.empty()) throw ConfigError("training corpus is empty after pruning");
  if (cfg.dim < 1) throw ConfigError("dim must be >= 1");
  if (cfg.epochs < 1) throw ConfigError("epochs must be >= 1");
  if (cfg.workers < 1) throw ConfigError("workers must be >= 1");
  if (!cfg.sentence_window && cfg.window < 1) throw ConfigError("window must be >= 1");
  if (cfg.initial_lr <= 0) throw ConfigError("learning rate must be positive");
  if (cfg.min_lr_fraction <= 0 || cfg.min_lr_fraction >= 1)
    throw ConfigError("min_lr_fraction must be in (0, 1)");
  if (cfg.subsample < 0) throw ConfigError("subsample threshold must be >= 0");
  switch (cfg.objective) {
    case Objective::kNegativeSampling:
      if (cfg.negatives < 1) throw ConfigError("negative sampling requires negatives >= 1");
      if (vocab.size() < 2)
        throw ConfigError("negative sampling requires a vocabulary of at least 2 words");
      break;
    case Objective::kHierarchicalSoftmax:
      if (vocab.size() < 2)
        throw ConfigError("hierarchical softmax requires a vocabulary of at least 2 words");
      break;
    case Objective::kFullSoftmax:
      throw ConfigError("the full softmax objective is a reference oracle; train with neg or hs");
  }
}

}  // namespace

TrainResult train(const std::string& corpus_path, std::shared_ptr<const Vocabulary> vocab,
                  const TrainConfig& config, const EmbeddingModel* resume_from) {
  validate(config, *vocab);

  std::error_code ec;
  auto file_size = std::filesystem::file_size(corpus_path, ec);
  if (ec) throw IoError("cannot stat corpus: " + corpus_path, 0);

  EmbeddingModel model = resume_from
                             ? *resume_from
                             : EmbeddingModel(vocab, config.dim, config.objective, config.seed);
  if (resume_from) {
    if (resume_from->dim() != config.dim || resume_from->objective() != config.objective ||
        resume_from->vocab_size() != vocab->size() || !resume_from->has_output())
      throw ConfigError("resume model does not match the training configuration");
  }

  HuffmanCoding coding;
  std::unique_ptr<NoiseSampler> sampler;
  if (config.objective == Objective::kHierarchicalSoftmax)
    coding = build_huffman(vocab->counts());
  else
    sampler = std::make_unique<NoiseSampler>(*vocab);
  SubsampleFilter subsample(*vocab, config.subsample);

  Shared shared;
  shared.model = &model;
  shared.vocab = vocab.get();
  shared.config = &config;
  shared.coding = &coding;
  shared.sampler = sampler.get();
  shared.subsample = &subsample;
  shared.corpus_path = corpus_path;
  shared.file_size = file_size;
  shared.schedule_total =
      std::max<std::int64_t>(1, static_cast<std::int64_t>(config.epochs) * vocab->total_tokens());
  shared.start_time = std::chrono::steady_clock::now();

  if (config.workers == 1) {
    Worker(shared, 0).run();
  } else {
    std::vector<std::thread> threads;
    std::mutex error_mutex;
    std::exception_ptr error;
    threads.reserve(config.workers);
    for (std::int32_t id = 0; id < config.workers; ++id) {
      threads.emplace_back([&shared, id, &error_mutex, &error] {
        try {
          Worker(shared, id).run();
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      });
    }
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);
  }

  if (config.report_interval > 0) std::fprintf(stderr, "\n");

  TrainStats stats;
  stats.trained_pairs = shared.trained_pairs.load();
  stats.processed_tokens = static_cast<std::uint64_t>(shared.processed.load());
  stats.discarded_tokens = shared.discarded.load();
  stats.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - shared.start_time).count();

  if (stats.processed_tokens == 0)
    throw ConfigError("training corpus contains no in-vocabulary tokens");
  if (!model.all_finite())
    throw DivergenceError("training produced non-finite parameters; reduce the learning rate");
  return {std::move(model), stats};
}

}  // namespace skipgram
