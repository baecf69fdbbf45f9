#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "augbench/classifier.hpp"
#include "augbench/corpus.hpp"
#include "augbench/evaluation.hpp"
#include "augbench/generator.hpp"
#include "augbench/promptaid.hpp"

namespace augbench {

// Declarative run description, read from a flat UTF-8 `key = value` file.
// Blank lines and lines starting with '#' are ignored. Relative paths are
// resolved against the manifest's directory.
struct Manifest {
  std::filesystem::path base_dir;

  std::filesystem::path genuine;
  std::optional<std::filesystem::path> test;  // separate ground-truth file
  std::size_t holdout_size = 198;             // used when `test` is absent
  std::uint64_t seed = 0;

  int max_order = 3;
  std::size_t target_length = 70;
  std::size_t max_length = 0;  // 0 means 2 * target_length
  double temperature = 1.0;
  PerLabel<std::optional<std::filesystem::path>> prompts;
  std::size_t auto_prompts = 10;
  PerLabel<std::size_t> synthetic_count;
  PerLabel<std::optional<std::filesystem::path>> imports;
  std::vector<BandSpec> bands = default_bands();

  double alpha = 1.0;
  std::optional<std::filesystem::path> output_dir;

  // Raw entries in file order, echoed into the report.
  std::vector<std::pair<std::string, std::string>> entries;

  static Manifest parse(std::string_view text, const std::filesystem::path& base_dir);
  static Manifest load(const std::filesystem::path& file);

  std::filesystem::path resolve(const std::filesystem::path& p) const;
  GenerationParams generation_params() const;
};

struct DatasetSizes {
  std::size_t genuine_train = 0;
  std::size_t synthetic = 0;
  std::size_t combined = 0;
  std::size_t test = 0;
};

struct ExperimentReport {
  std::string version;
  std::vector<std::pair<std::string, std::string>> manifest;
  DatasetSizes sizes;
  std::map<std::string, PerLabel<std::size_t>> class_counts;  // per dataset
  std::size_t excluded_three_star = 0;
  std::size_t rejected_imports = 0;
  MetricsReport genuine;
  MetricsReport combined;
  ConfusionMatrix genuine_confusion;
  ConfusionMatrix combined_confusion;
  ComparisonReport comparison;
  // FNV-1a digests of every trained artifact, keyed by artifact name.
  std::map<std::string, std::string> artifact_digests;

  std::string to_json() const;
  std::string to_text() const;
};

// Everything a run produced, for writing to disk or inspection in tests.
struct ExperimentRun {
  ExperimentReport report;
  Corpus train;
  Corpus test;
  Corpus synthetic;
  PerLabel<std::vector<Prompt>> prompts;
  std::optional<NaiveBayesModel> genuine_model;
  std::optional<NaiveBayesModel> combined_model;
};

// Ingest, split, fit per-class generators on the genuine training split,
// build prompts, generate and import synthetic reviews, fit one classifier
// on genuine data and one on genuine + synthetic, and evaluate both on the
// same genuine test set. Errors are rethrown with the failing stage name.
ExperimentRun run_experiment(const Manifest& manifest);

// Writes report.json, report.txt, the datasets, prompts and models to `dir`.
// Files already written are removed if a later write fails.
void write_outputs(const ExperimentRun& run, const std::filesystem::path& dir);

std::string digest_hex(std::string_view bytes);

}  // namespace augbench
