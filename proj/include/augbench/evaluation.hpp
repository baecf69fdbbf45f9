#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "augbench/classifier.hpp"
#include "augbench/corpus.hpp"

namespace augbench {

// Rows are actual labels, columns predicted labels, both ordered
// [Negative, Positive].
struct ConfusionMatrix {
  std::array<std::array<std::uint64_t, 2>, 2> counts{};

  std::uint64_t at(Label actual, Label predicted) const { return counts[index_of(actual)][index_of(predicted)]; }
  std::uint64_t total() const;
  std::uint64_t support(Label actual) const;
  bool operator==(const ConfusionMatrix&) const = default;
};

ConfusionMatrix confusion(std::span<const Label> actual, std::span<const Label> predicted);

// Bracketed two-row form, e.g. "[[94 5]\n [35 64]]".
std::string to_string(const ConfusionMatrix& cm);

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::uint64_t support = 0;
};

struct MetricsReport {
  double accuracy = 0.0;
  PerLabel<ClassMetrics> per_class;
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f1 = 0.0;

  std::uint64_t total() const { return per_class[Label::Negative].support + per_class[Label::Positive].support; }
};

// Standard definitions with macro (unweighted) averaging over the two
// classes. Empty predicted columns give precision 0; f1 is 0 when precision
// and recall are both 0.
MetricsReport metrics(const ConfusionMatrix& cm);

MetricsReport evaluate(const NaiveBayesModel& model, const Corpus& test, ConfusionMatrix* cm_out = nullptr);

// Named scalar metrics in report order: accuracy, macro_precision,
// macro_recall, macro_f1, then precision/recall/f1 per class.
std::vector<std::pair<std::string, double>> scalar_metrics(const MetricsReport& r);

struct MetricChange {
  std::string metric;
  double baseline = 0.0;
  double candidate = 0.0;
  // 100 * (candidate - baseline) / baseline; empty when baseline is 0.
  std::optional<double> relative_percent;
};

struct ComparisonReport {
  MetricsReport baseline;
  MetricsReport candidate;
  std::vector<MetricChange> changes;

  const MetricChange& change(std::string_view metric) const;
};

// Throws UsageError when the reports come from test sets of different size.
ComparisonReport compare(const MetricsReport& baseline, const MetricsReport& candidate);

// Half-up rounding to two decimals, display only.
std::string format_percent(std::optional<double> pct);

std::string metrics_to_json(const MetricsReport& r, const ConfusionMatrix* cm = nullptr);
MetricsReport metrics_from_json(std::string_view json);
std::string comparison_to_json(const ComparisonReport& c);

// Aligned plain-text tables.
std::string metrics_to_text(const MetricsReport& r, const ConfusionMatrix* cm = nullptr);
std::string comparison_to_text(const ComparisonReport& c, std::string_view baseline_name = "baseline",
                               std::string_view candidate_name = "candidate");

}  // namespace augbench
