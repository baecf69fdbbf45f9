#include "augbench/augbench.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "augbench/classifier.hpp"
#include "augbench/corpus.hpp"
#include "augbench/error.hpp"
#include "augbench/evaluation.hpp"
#include "augbench/experiment.hpp"
#include "augbench/generator.hpp"
#include "augbench/promptaid.hpp"

struct ab_corpus {
  augbench::Corpus value;
};

struct ab_generator {
  augbench::GenerativeModel value;
};

struct ab_model {
  augbench::NaiveBayesModel value;
};

namespace {

using namespace augbench;

thread_local std::string g_last_error;

template <class F>
ab_status guarded(F&& body) noexcept {
  try {
    body();
    g_last_error.clear();
    return AB_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return static_cast<ab_status>(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return AB_INTERNAL_ERROR;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return AB_INTERNAL_ERROR;
  } catch (...) {
    g_last_error = "unknown error";
    return AB_INTERNAL_ERROR;
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw UsageError(std::string(what) + " must not be NULL");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void put(char** out, const std::string& s) {
  if (out) *out = dup(s);
}

// Sets both optional outputs or neither.
template <class MakeA, class MakeB>
void put_both(char** a, MakeA&& make_a, char** b, MakeB&& make_b) {
  char* first = a ? dup(make_a()) : nullptr;
  try {
    if (b) *b = dup(make_b());
  } catch (...) {
    std::free(first);
    throw;
  }
  if (a) *a = first;
}

Label to_label(ab_label l) {
  if (l != AB_NEGATIVE && l != AB_POSITIVE) throw UsageError("invalid label value");
  return l == AB_POSITIVE ? Label::Positive : Label::Negative;
}

ab_label from_label(Label l) { return l == Label::Positive ? AB_POSITIVE : AB_NEGATIVE; }

Format to_format(ab_format f, const char* path) {
  switch (f) {
    case AB_FORMAT_CSV: return Format::Csv;
    case AB_FORMAT_JSONL: return Format::Jsonl;
    case AB_FORMAT_AUTO: return path ? format_for_path(path) : Format::Jsonl;
  }
  throw UsageError("invalid format value");
}

std::ifstream open_in(const char* path) {
  require(path, "path");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(std::string("cannot open '") + path + "'");
  return in;
}

void write_file(const char* path, const std::string& bytes) {
  require(path, "path");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !out.write(bytes.data(), static_cast<std::streamsize>(bytes.size())) || !out.flush())
    throw Error(ErrorKind::Internal, std::string("cannot write '") + path + "'");
}

GenerationParams to_params(const ab_generation_params* p) {
  require(p, "params");
  return {p->target_length, p->max_length, p->temperature, p->count};
}

std::vector<BandSpec> bands_or_default(const char* bands) {
  return bands ? parse_bands(bands) : default_bands();
}

}  // namespace

extern "C" {

const char* ab_version(void) { return AUGBENCH_VERSION; }

const char* ab_last_error(void) { return g_last_error.c_str(); }

void ab_string_free(char* s) { std::free(s); }

ab_status ab_corpus_ingest_file(const char* path, ab_format format, ab_corpus** out, size_t* excluded) {
  return guarded([&] {
    require(out, "out");
    auto in = open_in(path);
    auto result = ingest(in, to_format(format, path));
    if (excluded) *excluded = result.excluded;
    *out = new ab_corpus{std::move(result.corpus)};
  });
}

ab_status ab_corpus_ingest_buffer(const char* data, size_t len, ab_format format, ab_corpus** out,
                                  size_t* excluded) {
  return guarded([&] {
    require(out, "out");
    if (len > 0) require(data, "data");
    std::istringstream in(std::string(data ? data : "", len));
    auto result = ingest(in, to_format(format, nullptr));
    if (excluded) *excluded = result.excluded;
    *out = new ab_corpus{std::move(result.corpus)};
  });
}

ab_status ab_corpus_read_file(const char* path, ab_corpus** out) {
  return guarded([&] {
    require(out, "out");
    auto in = open_in(path);
    *out = new ab_corpus{read_jsonl(in)};
  });
}

ab_status ab_corpus_write_file(const ab_corpus* corpus, const char* path) {
  return guarded([&] {
    require(corpus, "corpus");
    write_file(path, to_jsonl(corpus->value));
  });
}

ab_status ab_corpus_to_jsonl(const ab_corpus* corpus, char** out) {
  return guarded([&] {
    require(corpus, "corpus");
    require(out, "out");
    *out = dup(to_jsonl(corpus->value));
  });
}

size_t ab_corpus_size(const ab_corpus* corpus) { return corpus ? corpus->value.size() : 0; }

size_t ab_corpus_count(const ab_corpus* corpus, ab_label label) {
  if (!corpus || (label != AB_NEGATIVE && label != AB_POSITIVE)) return 0;
  return corpus->value.count(to_label(label));
}

const char* ab_corpus_text(const ab_corpus* corpus, size_t index) {
  if (!corpus || index >= corpus->value.size()) return nullptr;
  return corpus->value.reviews()[index].text().c_str();
}

ab_label ab_corpus_label(const ab_corpus* corpus, size_t index) {
  if (!corpus || index >= corpus->value.size()) return AB_NEGATIVE;
  return from_label(corpus->value.reviews()[index].label());
}

int ab_corpus_is_synthetic(const ab_corpus* corpus, size_t index) {
  if (!corpus || index >= corpus->value.size()) return 0;
  return corpus->value.reviews()[index].provenance() == Provenance::Synthetic;
}

ab_status ab_corpus_filter(const ab_corpus* corpus, ab_label label, ab_corpus** out) {
  return guarded([&] {
    require(corpus, "corpus");
    require(out, "out");
    *out = new ab_corpus{corpus->value.filter(to_label(label))};
  });
}

ab_status ab_corpus_partition(const ab_corpus* corpus, size_t holdout_size, uint64_t seed, ab_corpus** train,
                              ab_corpus** test) {
  return guarded([&] {
    require(corpus, "corpus");
    require(train, "train");
    require(test, "test");
    auto split = partition_holdout(corpus->value, holdout_size, seed);
    auto tr = std::make_unique<ab_corpus>(ab_corpus{std::move(split.train)});
    *test = new ab_corpus{std::move(split.test)};
    *train = tr.release();
  });
}

ab_status ab_corpus_concat(const ab_corpus* genuine, const ab_corpus* synthetic, ab_corpus** out) {
  return guarded([&] {
    require(genuine, "genuine");
    require(synthetic, "synthetic");
    require(out, "out");
    *out = new ab_corpus{concat(genuine->value, synthetic->value)};
  });
}

ab_status ab_corpus_import_synthetic(const char* path, ab_label expected, ab_corpus** out, size_t* rejected,
                                     char** rejections_json) {
  return guarded([&] {
    require(out, "out");
    auto in = open_in(path);
    auto result = import_synthetic(in, to_label(expected));
    nlohmann::ordered_json rej = nlohmann::ordered_json::array();
    for (const auto& r : result.rejected) rej.push_back({{"line", r.line}, {"reason", r.reason}});
    auto corpus = std::make_unique<ab_corpus>(ab_corpus{std::move(result.corpus)});
    put(rejections_json, rej.dump());
    if (rejected) *rejected = result.rejected.size();
    *out = corpus.release();
  });
}

void ab_corpus_free(ab_corpus* corpus) { delete corpus; }

ab_status ab_analyze(const ab_corpus* corpus, int order, const char* bands, size_t top, char** json_out,
                     char** text_out) {
  return guarded([&] {
    require(corpus, "corpus");
    const auto table = count_ngrams(corpus->value, order);
    const auto banded = band_table(table, bands_or_default(bands));
    std::string json = json_out ? table_to_json(table, banded, top) : std::string();
    std::string text = text_out ? table_to_text(table, banded, top) : std::string();
    put_both(
        json_out, [&] { return json; }, text_out, [&] { return text; });
  });
}

ab_status ab_suggest_prompts(const ab_corpus* corpus, ab_label label, const char* bands, size_t k, uint64_t seed,
                             char** jsonl_out) {
  return guarded([&] {
    require(corpus, "corpus");
    require(jsonl_out, "jsonl_out");
    const Label l = to_label(label);
    std::ostringstream os;
    write_prompts(os, suggest_prompts(corpus->value.filter(l), l, bands_or_default(bands), k, seed));
    *jsonl_out = dup(os.str());
  });
}

ab_generation_params ab_generation_params_default(void) {
  const GenerationParams p;
  return {p.target_length, p.max_length, p.temperature, p.count};
}

ab_status ab_generator_fit(const ab_corpus* corpus, ab_label label, int max_order, ab_generator** out) {
  return guarded([&] {
    require(corpus, "corpus");
    require(out, "out");
    *out = new ab_generator{GenerativeModel::fit(corpus->value.filter(to_label(label)), max_order)};
  });
}

ab_label ab_generator_label(const ab_generator* gen) {
  return gen ? from_label(gen->value.class_label()) : AB_NEGATIVE;
}

ab_status ab_generator_generate(const ab_generator* gen, const char* prompt, const ab_generation_params* params,
                                uint64_t seed, char** json_out) {
  return guarded([&] {
    require(gen, "generator");
    require(prompt, "prompt");
    require(json_out, "json_out");
    const auto texts = generate(gen->value, Prompt{prompt, gen->value.class_label()}, to_params(params), seed);
    *json_out = dup(nlohmann::json(texts).dump());
  });
}

ab_status ab_generator_generate_batch(const ab_generator* gen, const char* prompts_path,
                                      const ab_generation_params* params, uint64_t seed, ab_corpus** out) {
  return guarded([&] {
    require(gen, "generator");
    require(out, "out");
    auto in = open_in(prompts_path);
    *out = new ab_corpus{generate_batch(gen->value, read_prompts(in), to_params(params), seed)};
  });
}

void ab_generator_free(ab_generator* gen) { delete gen; }

ab_status ab_model_fit(const ab_corpus* train, double alpha, ab_model** out) {
  return guarded([&] {
    require(train, "train");
    require(out, "out");
    *out = new ab_model{fit_mnb(train->value, alpha)};
  });
}

ab_status ab_model_read_file(const char* path, ab_model** out) {
  return guarded([&] {
    require(out, "out");
    auto in = open_in(path);
    std::ostringstream os;
    os << in.rdbuf();
    *out = new ab_model{NaiveBayesModel::from_json(os.str())};
  });
}

ab_status ab_model_write_file(const ab_model* model, const char* path) {
  return guarded([&] {
    require(model, "model");
    write_file(path, model->value.to_json());
  });
}

size_t ab_model_vocabulary_size(const ab_model* model) { return model ? model->value.vocabulary().size() : 0; }

ab_status ab_model_predict(const ab_model* model, const char* text, ab_label* label, double scores[2]) {
  return guarded([&] {
    require(model, "model");
    require(text, "text");
    const auto tokens = tokenize(text);
    const auto doc = vectorize(tokens, model->value.vocabulary());
    if (scores) {
      const auto s = model->value.log_posteriors(doc);
      scores[0] = s[Label::Negative];
      scores[1] = s[Label::Positive];
    }
    if (label) *label = from_label(model->value.predict(doc));
  });
}

ab_status ab_model_evaluate(const ab_model* model, const ab_corpus* test, char** json_out, char** text_out) {
  return guarded([&] {
    require(model, "model");
    require(test, "test");
    ConfusionMatrix cm;
    const auto report = evaluate(model->value, test->value, &cm);
    put_both(
        json_out, [&] { return metrics_to_json(report, &cm); }, text_out, [&] { return metrics_to_text(report, &cm); });
  });
}

void ab_model_free(ab_model* model) { delete model; }

ab_status ab_metrics_from_confusion(const uint64_t counts[4], char** json_out, char** text_out) {
  return guarded([&] {
    require(counts, "counts");
    ConfusionMatrix cm;
    cm.counts = {{{counts[0], counts[1]}, {counts[2], counts[3]}}};
    const auto report = metrics(cm);
    put_both(
        json_out, [&] { return metrics_to_json(report, &cm); }, text_out, [&] { return metrics_to_text(report, &cm); });
  });
}

ab_status ab_compare(const char* baseline_json, const char* candidate_json, char** json_out, char** text_out) {
  return guarded([&] {
    require(baseline_json, "baseline_json");
    require(candidate_json, "candidate_json");
    const auto c = compare(metrics_from_json(baseline_json), metrics_from_json(candidate_json));
    put_both(
        json_out, [&] { return comparison_to_json(c); }, text_out, [&] { return comparison_to_text(c); });
  });
}

ab_status ab_experiment_run(const char* manifest_path, const char* out_dir, char** report_json,
                            char** report_text) {
  return guarded([&] {
    require(manifest_path, "manifest_path");
    const auto manifest = Manifest::load(manifest_path);
    const auto run = run_experiment(manifest);
    if (out_dir) {
      write_outputs(run, out_dir);
    } else if (manifest.output_dir) {
      write_outputs(run, manifest.resolve(*manifest.output_dir));
    }
    put_both(
        report_json, [&] { return run.report.to_json(); }, report_text, [&] { return run.report.to_text(); });
  });
}

}  // extern "C"
