// augbench command-line tool. Talks to the library only through the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "augbench/augbench.h"

namespace {

struct CorpusDeleter {
  void operator()(ab_corpus* p) const { ab_corpus_free(p); }
};
struct GeneratorDeleter {
  void operator()(ab_generator* p) const { ab_generator_free(p); }
};
struct ModelDeleter {
  void operator()(ab_model* p) const { ab_model_free(p); }
};
struct StringDeleter {
  void operator()(char* p) const { ab_string_free(p); }
};

using CorpusPtr = std::unique_ptr<ab_corpus, CorpusDeleter>;
using GeneratorPtr = std::unique_ptr<ab_generator, GeneratorDeleter>;
using ModelPtr = std::unique_ptr<ab_model, ModelDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

// Carries a library status out of a subcommand.
struct Failure {
  ab_status status;
  std::string message;
};

void check(ab_status s) {
  if (s != AB_OK) throw Failure{s, ab_last_error()};
}

std::string take(char* s) {
  StringPtr owned(s);
  return owned ? std::string(owned.get()) : std::string();
}

void write_text(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << bytes) || !out.flush()) throw Failure{AB_INTERNAL_ERROR, "cannot write '" + path + "'"};
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{AB_DATA_ERROR, "cannot open '" + path + "'"};
  return std::string(std::istreambuf_iterator<char>(in), {});
}

CorpusPtr load_corpus(const std::string& path, ab_format format = AB_FORMAT_AUTO, size_t* excluded = nullptr) {
  ab_corpus* c = nullptr;
  check(ab_corpus_ingest_file(path.c_str(), format, &c, excluded));
  return CorpusPtr(c);
}

ab_label parse_class(const std::string& s) {
  if (s == "pos" || s == "Positive") return AB_POSITIVE;
  return AB_NEGATIVE;
}

const std::vector<std::string> kClassNames = {"pos", "neg", "Positive", "Negative"};

struct Common {
  std::string out;
  std::string format = "text";
  uint64_t seed = 0;
};

void add_format(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "Output format on stdout")->check(CLI::IsMember({"json", "text"}));
}

void emit(const Common& c, const std::string& json, const std::string& text) {
  std::cout << (c.format == "json" ? json : text);
  const auto& last = c.format == "json" ? json : text;
  if (!last.empty() && last.back() != '\n') std::cout << '\n';
}

std::string label_name(ab_label l) { return l == AB_POSITIVE ? "Positive" : "Negative"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthetic-review augmentation benchmark"};
  app.set_version_flag("--version", std::string(ab_version()));
  app.require_subcommand(1);

  // ingest
  Common ingest_opts;
  std::string ingest_in, ingest_format = "auto", import_class;
  auto* ingest = app.add_subcommand("ingest", "Binarize raw star-rated reviews, or import external synthetic text");
  ingest->add_option("input", ingest_in, "CSV (stars,text) or JSONL file")->required()->check(CLI::ExistingFile);
  ingest->add_option("--input-format", ingest_format)->check(CLI::IsMember({"auto", "csv", "jsonl"}));
  ingest->add_option("--import-synthetic", import_class, "Treat input as external synthetic JSONL of this class")
      ->check(CLI::IsMember(kClassNames));
  ingest->add_option("--out", ingest_opts.out, "Write the labelled corpus JSONL here");
  add_format(ingest, ingest_opts);

  // analyze
  Common analyze_opts;
  std::string analyze_in, analyze_class, bands = "80-100,50-80,25-50", prompts_out;
  std::vector<int> orders;
  size_t top = 20, prompt_count = 0;
  auto* analyze = app.add_subcommand("analyze", "N-gram frequency bands and prompt suggestions");
  analyze->add_option("input", analyze_in, "Corpus file")->required()->check(CLI::ExistingFile);
  analyze->add_option("--class", analyze_class, "Restrict to one class")->check(CLI::IsMember(kClassNames));
  analyze->add_option("--order", orders, "N-gram order(s); default 3 2 1")->check(CLI::Range(1, 3));
  analyze->add_option("--bands", bands, "Percentile bands");
  analyze->add_option("--top", top, "Rows to list per table");
  analyze->add_option("--prompts", prompt_count, "Number of prompts to suggest (needs --class)");
  analyze->add_option("--prompts-out", prompts_out, "Write suggested prompts JSONL here");
  analyze->add_option("--seed", analyze_opts.seed);
  analyze->add_option("--out", analyze_opts.out, "Write table JSON here");
  add_format(analyze, analyze_opts);

  // generate
  Common gen_opts;
  std::string gen_class, gen_corpus, gen_prompts;
  int max_order = 3;
  ab_generation_params params = ab_generation_params_default();
  std::optional<size_t> max_len;
  auto* gen = app.add_subcommand("generate", "Sample synthetic reviews from a per-class n-gram model");
  gen->add_option("--class", gen_class)->required()->check(CLI::IsMember(kClassNames));
  gen->add_option("--corpus", gen_corpus, "Training corpus (genuine reviews)")->required()->check(CLI::ExistingFile);
  gen->add_option("--prompts", gen_prompts, "Prompts JSONL {text, class_label}")->required()->check(CLI::ExistingFile);
  gen->add_option("--count", params.count, "Reviews per prompt");
  gen->add_option("--target-len", params.target_length, "Soft length target in tokens");
  gen->add_option("--max-len", max_len, "Hard length cap (default 2 x target)");
  gen->add_option("--temperature", params.temperature);
  gen->add_option("--max-order", max_order)->check(CLI::Range(2, 16));
  gen->add_option("--seed", gen_opts.seed);
  gen->add_option("--out", gen_opts.out, "Synthetic corpus JSONL")->required();
  add_format(gen, gen_opts);

  // train
  Common train_opts;
  std::string train_in;
  double alpha = 1.0;
  auto* train = app.add_subcommand("train", "Fit a multinomial naive Bayes classifier");
  train->add_option("input", train_in, "Training corpus")->required()->check(CLI::ExistingFile);
  train->add_option("--alpha", alpha, "Additive smoothing");
  train->add_option("--out", train_opts.out, "Model JSON")->required();
  add_format(train, train_opts);

  // evaluate
  Common eval_opts;
  std::string eval_model, eval_test;
  auto* evaluate = app.add_subcommand("evaluate", "Score a model on a ground-truth test set");
  evaluate->add_option("--model", eval_model)->required()->check(CLI::ExistingFile);
  evaluate->add_option("--test", eval_test)->required()->check(CLI::ExistingFile);
  evaluate->add_option("--out", eval_opts.out, "Metrics JSON");
  add_format(evaluate, eval_opts);

  // compare
  Common cmp_opts;
  std::string cmp_base, cmp_cand;
  auto* cmp = app.add_subcommand("compare", "Relative change between two metrics reports");
  cmp->add_option("--baseline", cmp_base)->required()->check(CLI::ExistingFile);
  cmp->add_option("--candidate", cmp_cand)->required()->check(CLI::ExistingFile);
  cmp->add_option("--out", cmp_opts.out, "Comparison JSON");
  add_format(cmp, cmp_opts);

  // run
  Common run_opts;
  std::string manifest;
  auto* run = app.add_subcommand("run", "Run a whole experiment from a manifest");
  run->add_option("manifest", manifest)->required()->check(CLI::ExistingFile);
  run->add_option("--out", run_opts.out, "Output directory (overrides the manifest)");
  add_format(run, run_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*ingest) {
      CorpusPtr corpus;
      size_t excluded = 0, rejected = 0;
      std::string rejections = "[]";
      if (!import_class.empty()) {
        ab_corpus* c = nullptr;
        char* rej = nullptr;
        check(ab_corpus_import_synthetic(ingest_in.c_str(), parse_class(import_class), &c, &rejected, &rej));
        corpus.reset(c);
        rejections = take(rej);
      } else {
        const ab_format f = ingest_format == "csv" ? AB_FORMAT_CSV : ingest_format == "jsonl" ? AB_FORMAT_JSONL : AB_FORMAT_AUTO;
        corpus = load_corpus(ingest_in, f, &excluded);
      }
      if (!ingest_opts.out.empty()) check(ab_corpus_write_file(corpus.get(), ingest_opts.out.c_str()));
      const auto neg = ab_corpus_count(corpus.get(), AB_NEGATIVE);
      const auto pos = ab_corpus_count(corpus.get(), AB_POSITIVE);
      const std::string json = "{\"reviews\": " + std::to_string(ab_corpus_size(corpus.get())) +
                               ", \"Negative\": " + std::to_string(neg) + ", \"Positive\": " + std::to_string(pos) +
                               ", \"excluded\": " + std::to_string(excluded) + ", \"rejected\": " + rejections + "}";
      std::string text = std::to_string(ab_corpus_size(corpus.get())) + " reviews (Negative " + std::to_string(neg) +
                         ", Positive " + std::to_string(pos) + "); excluded " + std::to_string(excluded) +
                         " three-star reviews";
      if (rejected > 0) text += "; rejected " + std::to_string(rejected) + " lines: " + rejections;
      emit(ingest_opts, json, text);
      if (rejected > 0) {
        std::cerr << "augbench: " << rejected << " records did not match the expected class\n";
        return AB_DATA_ERROR;
      }
    } else if (*analyze) {
      auto corpus = load_corpus(analyze_in);
      if (!analyze_class.empty()) {
        ab_corpus* filtered = nullptr;
        check(ab_corpus_filter(corpus.get(), parse_class(analyze_class), &filtered));
        corpus.reset(filtered);
      }
      if (orders.empty()) orders = {3, 2, 1};
      std::string json = orders.size() > 1 ? "[\n" : "";
      std::string text;
      for (size_t i = 0; i < orders.size(); ++i) {
        char* j = nullptr;
        char* t = nullptr;
        check(ab_analyze(corpus.get(), orders[i], bands.c_str(), top, &j, &t));
        json += take(j) + (orders.size() > 1 && i + 1 < orders.size() ? ",\n" : "\n");
        text += take(t) + "\n";
      }
      if (orders.size() > 1) json += "]\n";
      if (!analyze_opts.out.empty()) write_text(analyze_opts.out, json);
      if (prompt_count > 0) {
        if (analyze_class.empty()) throw Failure{AB_USAGE_ERROR, "--prompts needs --class"};
        char* p = nullptr;
        check(ab_suggest_prompts(corpus.get(), parse_class(analyze_class), bands.c_str(), prompt_count,
                                 analyze_opts.seed, &p));
        const auto prompts = take(p);
        if (!prompts_out.empty()) write_text(prompts_out, prompts);
        text += "suggested prompts:\n" + prompts;
      }
      emit(analyze_opts, json, text);
    } else if (*gen) {
      auto corpus = load_corpus(gen_corpus);
      ab_generator* g = nullptr;
      check(ab_generator_fit(corpus.get(), parse_class(gen_class), max_order, &g));
      GeneratorPtr model(g);
      params.max_length = max_len ? *max_len : 2 * params.target_length;
      ab_corpus* out = nullptr;
      check(ab_generator_generate_batch(model.get(), gen_prompts.c_str(), &params, gen_opts.seed, &out));
      CorpusPtr synthetic(out);
      check(ab_corpus_write_file(synthetic.get(), gen_opts.out.c_str()));
      const auto n = ab_corpus_size(synthetic.get());
      emit(gen_opts, "{\"generated\": " + std::to_string(n) + ", \"class\": \"" + label_name(parse_class(gen_class)) + "\"}",
           "generated " + std::to_string(n) + " " + label_name(parse_class(gen_class)) + " reviews -> " + gen_opts.out);
    } else if (*train) {
      auto corpus = load_corpus(train_in);
      ab_model* m = nullptr;
      check(ab_model_fit(corpus.get(), alpha, &m));
      ModelPtr model(m);
      check(ab_model_write_file(model.get(), train_opts.out.c_str()));
      const auto v = ab_model_vocabulary_size(model.get());
      emit(train_opts,
           "{\"documents\": " + std::to_string(ab_corpus_size(corpus.get())) + ", \"vocabulary\": " + std::to_string(v) + "}",
           "trained on " + std::to_string(ab_corpus_size(corpus.get())) + " reviews, vocabulary " + std::to_string(v) +
               " -> " + train_opts.out);
    } else if (*evaluate) {
      ab_model* m = nullptr;
      check(ab_model_read_file(eval_model.c_str(), &m));
      ModelPtr model(m);
      auto test = load_corpus(eval_test);
      char* j = nullptr;
      char* t = nullptr;
      check(ab_model_evaluate(model.get(), test.get(), &j, &t));
      const auto json = take(j);
      const auto text = take(t);
      if (!eval_opts.out.empty()) write_text(eval_opts.out, json + "\n");
      emit(eval_opts, json, text);
    } else if (*cmp) {
      char* j = nullptr;
      char* t = nullptr;
      check(ab_compare(read_text(cmp_base).c_str(), read_text(cmp_cand).c_str(), &j, &t));
      const auto json = take(j);
      const auto text = take(t);
      if (!cmp_opts.out.empty()) write_text(cmp_opts.out, json + "\n");
      emit(cmp_opts, json, text);
    } else if (*run) {
      char* j = nullptr;
      char* t = nullptr;
      check(ab_experiment_run(manifest.c_str(), run_opts.out.empty() ? nullptr : run_opts.out.c_str(), &j, &t));
      const auto json = take(j);
      const auto text = take(t);
      emit(run_opts, json, text);
    }
  } catch (const Failure& f) {
    std::cerr << "augbench: " << f.message << '\n';
    return static_cast<int>(f.status);
  } catch (const std::exception& e) {
    std::cerr << "augbench: " << e.what() << '\n';
    return AB_INTERNAL_ERROR;
  }
  return 0;
}
