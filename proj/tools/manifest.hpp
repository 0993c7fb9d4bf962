#pragma once

#include <cstdint>
#include <fstream>
#include <string>

#include <json.hpp>

#include "skipgram/errors.hpp"
#include "skipgram/trainer.hpp"
#include "skipgram/version.hpp"

namespace skipgram::tool {

// FNV-1a over the file bytes; cheap content fingerprint for the manifest.
inline std::uint64_t fnv1a64_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file for checksum: " + path, 0);
  std::uint64_t hash = 1469598103934665603ull;
  char buf[1 << 16];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      hash ^= static_cast<unsigned char>(buf[i]);
      hash *= 1099511628211ull;
    }
    if (!in) break;
  }
  return hash;
}

struct PhaseTimings {
  double vocab_seconds = 0.0;
  double train_seconds = 0.0;
  double save_seconds = 0.0;
};

// Everything needed to reproduce a training run (workers = 1): full
// configuration, corpus fingerprint, seed and tool version.
inline void write_train_manifest(const std::string& path, const std::string& corpus_path,
                                 std::uint64_t corpus_checksum, const Vocabulary& vocab,
                                 const TrainConfig& config, const TrainStats& stats,
                                 const PhaseTimings& timings, const std::string& output_path,
                                 const std::string& format) {
  nlohmann::json j;
  j["tool"] = "skipgram";
  j["version"] = kVersion;
  j["corpus"] = corpus_path;
  j["corpus_fnv1a64"] = corpus_checksum;
  j["output"] = output_path;
  j["format"] = format;
  j["vocab_size"] = vocab.size();
  j["total_tokens"] = vocab.total_tokens();
  j["config"] = {
      {"objective", objective_name(config.objective)},
      {"dim", config.dim},
      {"window", config.window},
      {"sentence_window", config.sentence_window},
      {"negatives", config.negatives},
      {"subsample", config.subsample},
      {"min_count", vocab.min_count()},
      {"epochs", config.epochs},
      {"lr", config.initial_lr},
      {"min_lr_fraction", config.min_lr_fraction},
      {"workers", config.workers},
      {"seed", config.seed},
  };
  j["stats"] = {
      {"trained_pairs", stats.trained_pairs},
      {"processed_tokens", stats.processed_tokens},
      {"discarded_tokens", stats.discarded_tokens},
  };
  j["timings_seconds"] = {
      {"vocab", timings.vocab_seconds},
      {"train", timings.train_seconds},
      {"save", timings.save_seconds},
  };

  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open manifest for writing: " + path, 0);
  out << j.dump(2) << '\n';
  if (!out) throw IoError("manifest write failed: " + path, 0);
}

}  // namespace skipgram::tool
