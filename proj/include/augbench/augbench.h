/*
 * augbench C API.
 *
 * Every object crosses the boundary as an opaque handle owned by the caller
 * and released with the matching *_free function. Functions return an
 * ab_status; on failure ab_last_error() describes the cause for the calling
 * thread. Strings handed out through `char **` parameters are heap-allocated
 * and must be released with ab_string_free().
 */
#ifndef AUGBENCH_AUGBENCH_H
#define AUGBENCH_AUGBENCH_H

#include <stddef.h>
#include <stdint.h>

#if defined(AUGBENCH_BUILDING_LIBRARY)
#define AB_API __attribute__((visibility("default")))
#else
#define AB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes double as CLI exit codes. */
typedef enum ab_status {
  AB_OK = 0,
  AB_USAGE_ERROR = 1,
  AB_DATA_ERROR = 2,
  AB_INTERNAL_ERROR = 3
} ab_status;

typedef enum ab_label { AB_NEGATIVE = 0, AB_POSITIVE = 1 } ab_label;

typedef enum ab_format { AB_FORMAT_CSV = 0, AB_FORMAT_JSONL = 1, AB_FORMAT_AUTO = 2 } ab_format;

typedef struct ab_corpus ab_corpus;
typedef struct ab_generator ab_generator;
typedef struct ab_model ab_model;

typedef struct ab_generation_params {
  size_t target_length;
  size_t max_length;
  double temperature;
  size_t count;
} ab_generation_params;

AB_API const char *ab_version(void);
AB_API const char *ab_last_error(void);
AB_API void ab_string_free(char *s);

/* ---- corpus ---------------------------------------------------------- */

/* Raw star-rated reviews (CSV `stars,text` or JSONL), binarized. 3-star
 * reviews are dropped and counted in *excluded (may be NULL). JSONL records
 * that already carry `label` are taken as labelled. */
AB_API ab_status ab_corpus_ingest_file(const char *path, ab_format format, ab_corpus **out, size_t *excluded);
AB_API ab_status ab_corpus_ingest_buffer(const char *data, size_t len, ab_format format, ab_corpus **out,
                                         size_t *excluded);
/* Labelled corpus JSONL (text, label, provenance). */
AB_API ab_status ab_corpus_read_file(const char *path, ab_corpus **out);
AB_API ab_status ab_corpus_write_file(const ab_corpus *corpus, const char *path);
AB_API ab_status ab_corpus_to_jsonl(const ab_corpus *corpus, char **out);

AB_API size_t ab_corpus_size(const ab_corpus *corpus);
AB_API size_t ab_corpus_count(const ab_corpus *corpus, ab_label label);
/* Borrowed pointer, valid while the corpus lives. NULL when out of range. */
AB_API const char *ab_corpus_text(const ab_corpus *corpus, size_t index);
AB_API ab_label ab_corpus_label(const ab_corpus *corpus, size_t index);
AB_API int ab_corpus_is_synthetic(const ab_corpus *corpus, size_t index);

AB_API ab_status ab_corpus_filter(const ab_corpus *corpus, ab_label label, ab_corpus **out);
AB_API ab_status ab_corpus_partition(const ab_corpus *corpus, size_t holdout_size, uint64_t seed,
                                     ab_corpus **train, ab_corpus **test);
AB_API ab_status ab_corpus_concat(const ab_corpus *genuine, const ab_corpus *synthetic, ab_corpus **out);
/* Externally generated reviews; all kept records become Synthetic. Lines
 * with another label are skipped and listed in *rejections_json (a JSON
 * array of {line, reason}; may be NULL). *rejected receives their count. */
AB_API ab_status ab_corpus_import_synthetic(const char *path, ab_label expected, ab_corpus **out,
                                            size_t *rejected, char **rejections_json);
AB_API void ab_corpus_free(ab_corpus *corpus);

/* ---- prompt aid ------------------------------------------------------ */

/* N-gram frequency table of `order` (1..3) banded by `bands`
 * ("80-100,50-80,25-50"; NULL for the default). At most `top` rows are
 * listed. Either output pointer may be NULL. */
AB_API ab_status ab_analyze(const ab_corpus *corpus, int order, const char *bands, size_t top, char **json_out,
                            char **text_out);
/* k prompts as JSONL {text, class_label}, from the reviews of `label`. */
AB_API ab_status ab_suggest_prompts(const ab_corpus *corpus, ab_label label, const char *bands, size_t k,
                                    uint64_t seed, char **jsonl_out);

/* ---- generator ------------------------------------------------------- */

AB_API ab_generation_params ab_generation_params_default(void);
/* Fits on the reviews of `label` in `corpus`. */
AB_API ab_status ab_generator_fit(const ab_corpus *corpus, ab_label label, int max_order, ab_generator **out);
AB_API ab_label ab_generator_label(const ab_generator *gen);
/* params->count continuations of `prompt`, as a JSON array of strings. */
AB_API ab_status ab_generator_generate(const ab_generator *gen, const char *prompt,
                                       const ab_generation_params *params, uint64_t seed, char **json_out);
/* params->count reviews per prompt read from a prompts JSONL file. */
AB_API ab_status ab_generator_generate_batch(const ab_generator *gen, const char *prompts_path,
                                             const ab_generation_params *params, uint64_t seed, ab_corpus **out);
AB_API void ab_generator_free(ab_generator *gen);

/* ---- classifier ------------------------------------------------------ */

AB_API ab_status ab_model_fit(const ab_corpus *train, double alpha, ab_model **out);
AB_API ab_status ab_model_read_file(const char *path, ab_model **out);
AB_API ab_status ab_model_write_file(const ab_model *model, const char *path);
AB_API size_t ab_model_vocabulary_size(const ab_model *model);
/* scores (may be NULL) receives the log joint for [Negative, Positive]. */
AB_API ab_status ab_model_predict(const ab_model *model, const char *text, ab_label *label, double scores[2]);
/* Metrics of the model on `test`; both outputs optional. */
AB_API ab_status ab_model_evaluate(const ab_model *model, const ab_corpus *test, char **json_out, char **text_out);
AB_API void ab_model_free(ab_model *model);

/* ---- evaluation ------------------------------------------------------ */

/* counts = {NN, NP, PN, PP}: rows actual, columns predicted. */
AB_API ab_status ab_metrics_from_confusion(const uint64_t counts[4], char **json_out, char **text_out);
/* Compares two metrics JSON documents (as written by ab_model_evaluate). */
AB_API ab_status ab_compare(const char *baseline_json, const char *candidate_json, char **json_out,
                            char **text_out);

/* ---- experiment ------------------------------------------------------ */

/* Runs a manifest end to end. `out_dir` overrides the manifest's `output`;
 * when both are absent nothing is written. Report outputs are optional. */
AB_API ab_status ab_experiment_run(const char *manifest_path, const char *out_dir, char **report_json,
                                   char **report_text);

#ifdef __cplusplus
}
#endif

#endif /* AUGBENCH_AUGBENCH_H */
