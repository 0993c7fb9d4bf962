#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "manifest.hpp"
#include "skipgram/errors.hpp"
#include "skipgram/eval.hpp"
#include "skipgram/model.hpp"
#include "skipgram/pca.hpp"
#include "skipgram/phrases.hpp"
#include "skipgram/trainer.hpp"
#include "skipgram/version.hpp"
#include "skipgram/vocab.hpp"

namespace {

using namespace skipgram;

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

VectorFormat parse_format(const std::string& name) {
  if (name == "text") return VectorFormat::kText;
  if (name == "binary") return VectorFormat::kBinary;
  throw ConfigError("unknown format: " + name);
}

struct BuildVocabArgs {
  std::string corpus;
  std::string output;
  std::int64_t min_count = 5;
};

int run_build_vocab(const BuildVocabArgs& args) {
  auto vocab = Vocabulary::build_from_file(args.corpus, args.min_count);
  vocab.save(args.output);
  std::fprintf(stderr, "vocabulary: %zu words, %lld tokens retained\n", vocab.size(),
               static_cast<long long>(vocab.total_tokens()));
  return 0;
}

struct LearnPhrasesArgs {
  std::string corpus;
  std::string output;
  std::string phrase_table;
  std::int32_t passes = 2;
  double threshold = 100.0;
  double decay = 0.5;
  double delta = 5.0;
  std::int64_t min_count = 5;
};

int run_learn_phrases(const LearnPhrasesArgs& args) {
  auto result = run_phrase_passes(args.corpus, args.output, args.passes, args.threshold,
                                  args.decay, args.delta, args.min_count);
  for (std::size_t p = 0; p < result.passes.size(); ++p) {
    const auto& s = result.passes[p];
    std::fprintf(stderr, "pass %zu: threshold %.6g, %zu bigrams accepted, %llu merges\n", p + 1,
                 s.threshold, s.accepted, static_cast<unsigned long long>(s.merges));
  }
  if (!args.phrase_table.empty()) {
    std::ofstream table(args.phrase_table, std::ios::binary);
    if (!table) throw IoError("cannot open phrase table for writing: " + args.phrase_table, 0);
    result.model.export_table(table);
  }
  return 0;
}

struct TrainArgs {
  std::string corpus;
  std::string output;
  std::string vocab_path;
  std::string objective = "neg";
  std::string format = "binary";
  TrainConfig config;
  std::int64_t min_count = 5;
  bool negatives_given = false;
};

int run_train(TrainArgs& args) {
  args.config.objective = objective_from_name(args.objective);
  if (args.config.objective == Objective::kHierarchicalSoftmax && args.negatives_given)
    std::fprintf(stderr, "warning: --negatives is ignored with --objective hs\n");

  auto t0 = std::chrono::steady_clock::now();
  auto vocab = std::make_shared<const Vocabulary>(
      args.vocab_path.empty() ? Vocabulary::build_from_file(args.corpus, args.min_count)
                              : Vocabulary::load(args.vocab_path));
  tool::PhaseTimings timings;
  timings.vocab_seconds = seconds_since(t0);
  std::fprintf(stderr, "vocabulary: %zu words, %lld tokens\n", vocab->size(),
               static_cast<long long>(vocab->total_tokens()));

  auto t1 = std::chrono::steady_clock::now();
  auto result = train(args.corpus, vocab, args.config);
  timings.train_seconds = seconds_since(t1);

  auto t2 = std::chrono::steady_clock::now();
  save_vectors(result.model, args.output, parse_format(args.format));
  timings.save_seconds = seconds_since(t2);

  tool::write_train_manifest(args.output + ".manifest.json", args.corpus,
                             tool::fnv1a64_file(args.corpus), *vocab, args.config, result.stats,
                             timings, args.output, args.format);
  std::fprintf(stderr, "trained %llu pairs in %.1fs; vectors saved to %s\n",
               static_cast<unsigned long long>(result.stats.trained_pairs),
               timings.train_seconds, args.output.c_str());
  return 0;
}

struct VectorsArgs {
  std::string vectors;
  std::string format = "binary";
  std::int32_t top = 10;
};

void print_ranked(const std::vector<ScoredWord>& ranked) {
  std::size_t width = 4;
  for (const auto& r : ranked) width = std::max(width, r.word.size());
  for (const auto& r : ranked)
    std::printf("%-*s  %9.6f\n", static_cast<int>(width), r.word.c_str(), r.score);
}

int run_analogy(const VectorsArgs& common, const std::vector<std::string>& tokens) {
  auto model = load_vectors(common.vectors, parse_format(common.format));
  auto ranked = analogy_query(model, tokens[0], tokens[1], tokens[2], common.top);
  print_ranked(ranked);
  return 0;
}

int run_nn(const VectorsArgs& common, const std::vector<std::string>& tokens) {
  auto model = load_vectors(common.vectors, parse_format(common.format));
  auto ranked = nearest_neighbors(model, tokens, common.top);
  print_ranked(ranked);
  return 0;
}

int run_eval_analogy(const VectorsArgs& common, const std::string& dataset_path) {
  auto model = load_vectors(common.vectors, parse_format(common.format));
  auto dataset = AnalogyDataset::load(dataset_path);
  auto report = evaluate_analogy_set(dataset, model);
  report.write(std::cout);
  return 0;
}

int run_project(const VectorsArgs& common, const std::vector<std::string>& tokens,
                const std::string& output) {
  auto model = load_vectors(common.vectors, parse_format(common.format));
  auto coords = project_2d(model, tokens);

  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!output.empty()) {
    file.open(output, std::ios::binary);
    if (!file) throw IoError("cannot open projection output: " + output, 0);
    out = &file;
  }
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g\t%.10g", coords[i][0], coords[i][1]);
    *out << tokens[i] << '\t' << buf << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Skip-gram word and phrase vectors: training, phrase mining and evaluation"};
  app.set_version_flag("--version", std::string(kVersion));
  app.option_defaults()->always_capture_default(true);
  app.require_subcommand(1);

  // build-vocab
  BuildVocabArgs vocab_args;
  auto* cmd_vocab = app.add_subcommand("build-vocab", "Count tokens and write the vocabulary");
  cmd_vocab->add_option("--corpus", vocab_args.corpus, "Input corpus (UTF-8 text)")
      ->required();
  cmd_vocab->add_option("--output", vocab_args.output, "Vocabulary file to write")->required();
  cmd_vocab->add_option("--min-count", vocab_args.min_count, "Discard words seen fewer times")
      ->check(CLI::PositiveNumber);

  // learn-phrases
  LearnPhrasesArgs phrase_args;
  auto* cmd_phrases =
      app.add_subcommand("learn-phrases", "Merge collocations into phrase tokens");
  cmd_phrases->add_option("--corpus", phrase_args.corpus, "Input corpus")->required();
  cmd_phrases->add_option("--output", phrase_args.output, "Rewritten corpus to write")
      ->required();
  cmd_phrases->add_option("--phrase-table", phrase_args.phrase_table,
                          "Also export accepted bigrams (TSV, descending score)");
  cmd_phrases->add_option("--passes", phrase_args.passes, "Merge passes")
      ->check(CLI::Range(1, 8));
  cmd_phrases->add_option("--threshold", phrase_args.threshold, "Score cutoff for pass 1");
  cmd_phrases->add_option("--decay", phrase_args.decay, "Per-pass threshold decay")
      ->check(CLI::Range(1e-9, 1.0));
  cmd_phrases->add_option("--delta", phrase_args.delta, "Discounting coefficient")
      ->check(CLI::NonNegativeNumber);
  cmd_phrases->add_option("--min-count", phrase_args.min_count,
                          "Discard words seen fewer times")
      ->check(CLI::PositiveNumber);

  // train
  TrainArgs train_args;
  auto* cmd_train = app.add_subcommand("train", "Train skip-gram vectors");
  cmd_train->add_option("--corpus", train_args.corpus, "Training corpus")->required();
  cmd_train->add_option("--output", train_args.output, "Vectors file to write")->required();
  cmd_train->add_option("--vocab", train_args.vocab_path,
                        "Read a saved vocabulary instead of counting the corpus");
  cmd_train->add_option("--objective", train_args.objective, "Objective: neg, hs or softmax")
      ->check(CLI::IsMember({"neg", "hs", "softmax"}));
  auto* negatives_opt =
      cmd_train->add_option("--negatives", train_args.config.negatives, "Negative samples k")
          ->check(CLI::NonNegativeNumber);
  cmd_train->add_option("--dim", train_args.config.dim, "Vector dimensionality")
      ->check(CLI::PositiveNumber);
  cmd_train->add_option("--window", train_args.config.window, "Max context half-window c")
      ->check(CLI::PositiveNumber);
  cmd_train->add_flag("--sentence-window", train_args.config.sentence_window,
                      "Use the entire sentence as context");
  cmd_train->add_option("--sample", train_args.config.subsample,
                        "Subsampling threshold t (0 disables)")
      ->check(CLI::NonNegativeNumber);
  cmd_train->add_option("--min-count", train_args.min_count, "Discard words seen fewer times")
      ->check(CLI::PositiveNumber);
  cmd_train->add_option("--epochs", train_args.config.epochs, "Training epochs")
      ->check(CLI::PositiveNumber);
  cmd_train->add_option("--lr", train_args.config.initial_lr, "Initial learning rate")
      ->check(CLI::PositiveNumber);
  cmd_train->add_option("--workers", train_args.config.workers, "Worker threads")
      ->check(CLI::PositiveNumber);
  cmd_train->add_option("--seed", train_args.config.seed, "Random seed");
  cmd_train->add_option("--format", train_args.format, "Vectors format: text or binary")
      ->check(CLI::IsMember({"text", "binary"}));

  // query subcommands share --vectors/--format/--top
  VectorsArgs analogy_common, nn_common, eval_common, project_common;
  std::vector<std::string> analogy_tokens, nn_tokens, project_tokens;
  std::string eval_dataset, project_output;

  auto add_vectors_options = [](CLI::App* cmd, VectorsArgs& args, bool with_top) {
    cmd->add_option("--vectors", args.vectors, "Saved vectors file")->required();
    cmd->add_option("--format", args.format, "Vectors format: text or binary")
        ->check(CLI::IsMember({"text", "binary"}));
    if (with_top)
      cmd->add_option("--top", args.top, "Number of results")->check(CLI::PositiveNumber);
  };

  auto* cmd_analogy = app.add_subcommand("analogy", "Answer a : b :: c : ?");
  add_vectors_options(cmd_analogy, analogy_common, true);
  cmd_analogy->add_option("tokens", analogy_tokens, "a b c")->expected(3);

  auto* cmd_nn = app.add_subcommand("nn", "Nearest neighbors of a token sum");
  add_vectors_options(cmd_nn, nn_common, true);
  cmd_nn->add_option("tokens", nn_tokens, "Query tokens")->expected(1, -1);

  auto* cmd_eval = app.add_subcommand("eval-analogy", "Score an analogy dataset");
  add_vectors_options(cmd_eval, eval_common, false);
  cmd_eval->add_option("dataset", eval_dataset, "Analogy dataset file")->required();

  auto* cmd_project = app.add_subcommand("project", "2-D PCA projection of token vectors");
  add_vectors_options(cmd_project, project_common, false);
  cmd_project->add_option("--output", project_output,
                          "Write token<TAB>x<TAB>y here (default stdout)");
  cmd_project->add_option("tokens", project_tokens, "Tokens to project")->expected(3, -1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*cmd_vocab) return run_build_vocab(vocab_args);
    if (*cmd_phrases) return run_learn_phrases(phrase_args);
    if (*cmd_train) {
      train_args.negatives_given = negatives_opt->count() > 0;
      return run_train(train_args);
    }
    if (*cmd_analogy) return run_analogy(analogy_common, analogy_tokens);
    if (*cmd_nn) return run_nn(nn_common, nn_tokens);
    if (*cmd_eval) return run_eval_analogy(eval_common, eval_dataset);
    if (*cmd_project) return run_project(project_common, project_tokens, project_output);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 1;
}
