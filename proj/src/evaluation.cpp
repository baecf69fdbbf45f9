#include "augbench/evaluation.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "augbench/error.hpp"

namespace augbench {

using nlohmann::ordered_json;

std::uint64_t ConfusionMatrix::total() const {
  return counts[0][0] + counts[0][1] + counts[1][0] + counts[1][1];
}

std::uint64_t ConfusionMatrix::support(Label actual) const {
  const auto& row = counts[index_of(actual)];
  return row[0] + row[1];
}

ConfusionMatrix confusion(std::span<const Label> actual, std::span<const Label> predicted) {
  if (actual.size() != predicted.size())
    throw UsageError("confusion: " + std::to_string(actual.size()) + " actual labels but " +
                     std::to_string(predicted.size()) + " predictions");
  if (actual.empty()) throw UsageError("confusion: no labels");
  ConfusionMatrix cm;
  for (std::size_t k = 0; k < actual.size(); ++k) ++cm.counts[index_of(actual[k])][index_of(predicted[k])];
  return cm;
}

std::string to_string(const ConfusionMatrix& cm) {
  std::ostringstream os;
  os << "[[" << cm.counts[0][0] << ' ' << cm.counts[0][1] << "]\n [" << cm.counts[1][0] << ' ' << cm.counts[1][1]
     << "]]";
  return os.str();
}

namespace {

double ratio(std::uint64_t num, std::uint64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

double harmonic(double p, double r) { return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r); }

}  // namespace

MetricsReport metrics(const ConfusionMatrix& cm) {
  if (cm.total() == 0) throw UsageError("metrics: empty confusion matrix");
  MetricsReport r;
  r.accuracy = ratio(cm.counts[0][0] + cm.counts[1][1], cm.total());
  for (Label l : kLabels) {
    const auto i = index_of(l);
    auto& m = r.per_class[l];
    m.support = cm.support(l);
    m.precision = ratio(cm.counts[i][i], cm.counts[0][i] + cm.counts[1][i]);
    m.recall = ratio(cm.counts[i][i], m.support);
    m.f1 = harmonic(m.precision, m.recall);
  }
  const auto& neg = r.per_class[Label::Negative];
  const auto& pos = r.per_class[Label::Positive];
  r.macro_precision = (neg.precision + pos.precision) / 2.0;
  r.macro_recall = (neg.recall + pos.recall) / 2.0;
  r.macro_f1 = (neg.f1 + pos.f1) / 2.0;
  return r;
}

MetricsReport evaluate(const NaiveBayesModel& model, const Corpus& test, ConfusionMatrix* cm_out) {
  std::vector<Label> actual;
  actual.reserve(test.size());
  for (const auto& r : test.reviews()) actual.push_back(r.label());
  const auto cm = confusion(actual, predict_all(model, test));
  if (cm_out) *cm_out = cm;
  return metrics(cm);
}

std::vector<std::pair<std::string, double>> scalar_metrics(const MetricsReport& r) {
  std::vector<std::pair<std::string, double>> out = {
      {"accuracy", r.accuracy},
      {"macro_precision", r.macro_precision},
      {"macro_recall", r.macro_recall},
      {"macro_f1", r.macro_f1},
  };
  for (Label l : kLabels) {
    const std::string suffix = l == Label::Positive ? "_positive" : "_negative";
    out.emplace_back("precision" + suffix, r.per_class[l].precision);
    out.emplace_back("recall" + suffix, r.per_class[l].recall);
    out.emplace_back("f1" + suffix, r.per_class[l].f1);
  }
  return out;
}

const MetricChange& ComparisonReport::change(std::string_view metric) const {
  for (const auto& c : changes)
    if (c.metric == metric) return c;
  throw UsageError("unknown metric '" + std::string(metric) + "'");
}

ComparisonReport compare(const MetricsReport& baseline, const MetricsReport& candidate) {
  if (baseline.total() != candidate.total())
    throw UsageError("cannot compare reports from test sets of size " + std::to_string(baseline.total()) + " and " +
                     std::to_string(candidate.total()));
  ComparisonReport c{baseline, candidate, {}};
  const auto b = scalar_metrics(baseline);
  const auto k = scalar_metrics(candidate);
  for (std::size_t i = 0; i < b.size(); ++i) {
    MetricChange ch{b[i].first, b[i].second, k[i].second, std::nullopt};
    if (b[i].second > 0.0) ch.relative_percent = 100.0 * (k[i].second - b[i].second) / b[i].second;
    c.changes.push_back(std::move(ch));
  }
  return c;
}

std::string format_percent(std::optional<double> pct) {
  if (!pct) return "n/a";
  double rounded = std::floor(*pct * 100.0 + 0.5) / 100.0;
  if (rounded == 0.0) rounded = 0.0;  // no "-0.00"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%+.2f%%", rounded);
  return buf;
}

namespace {

ordered_json metrics_json(const MetricsReport& r) {
  ordered_json out;
  out["accuracy"] = r.accuracy;
  out["macro_precision"] = r.macro_precision;
  out["macro_recall"] = r.macro_recall;
  out["macro_f1"] = r.macro_f1;
  ordered_json per;
  for (Label l : kLabels) {
    const auto& m = r.per_class[l];
    per[std::string(to_string(l))] = {
        {"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1}, {"support", m.support}};
  }
  out["per_class"] = std::move(per);
  return out;
}

ordered_json matrix_json(const ConfusionMatrix& cm) {
  return ordered_json::array({ordered_json::array({cm.counts[0][0], cm.counts[0][1]}),
                              ordered_json::array({cm.counts[1][0], cm.counts[1][1]})});
}

}  // namespace

std::string metrics_to_json(const MetricsReport& r, const ConfusionMatrix* cm) {
  auto out = metrics_json(r);
  if (cm) out["confusion_matrix"] = matrix_json(*cm);
  return out.dump(2);
}

MetricsReport metrics_from_json(std::string_view text) {
  try {
    const auto in = nlohmann::json::parse(text);
    MetricsReport r;
    r.accuracy = in.at("accuracy").get<double>();
    r.macro_precision = in.at("macro_precision").get<double>();
    r.macro_recall = in.at("macro_recall").get<double>();
    r.macro_f1 = in.at("macro_f1").get<double>();
    for (Label l : kLabels) {
      const auto& m = in.at("per_class").at(std::string(to_string(l)));
      r.per_class[l] = {m.at("precision").get<double>(), m.at("recall").get<double>(), m.at("f1").get<double>(),
                        m.at("support").get<std::uint64_t>()};
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed metrics JSON: ") + e.what());
  }
}

std::string comparison_to_json(const ComparisonReport& c) {
  ordered_json out;
  out["baseline"] = metrics_json(c.baseline);
  out["candidate"] = metrics_json(c.candidate);
  ordered_json changes;
  for (const auto& ch : c.changes)
    changes[ch.metric] = ch.relative_percent ? ordered_json(*ch.relative_percent) : ordered_json("undefined");
  out["relative_change_percent"] = std::move(changes);
  return out.dump(2);
}

std::string metrics_to_text(const MetricsReport& r, const ConfusionMatrix* cm) {
  std::ostringstream os;
  char buf[96];
  for (const auto& [name, value] : scalar_metrics(r)) {
    std::snprintf(buf, sizeof buf, "%-20s %.4f\n", name.c_str(), value);
    os << buf;
  }
  std::snprintf(buf, sizeof buf, "%-20s %llu/%llu (Negative/Positive)\n", "support",
                static_cast<unsigned long long>(r.per_class[Label::Negative].support),
                static_cast<unsigned long long>(r.per_class[Label::Positive].support));
  os << buf;
  if (cm) os << "confusion matrix (rows actual, columns predicted; Negative, Positive)\n" << to_string(*cm) << '\n';
  return os.str();
}

std::string comparison_to_text(const ComparisonReport& c, std::string_view baseline_name,
                               std::string_view candidate_name) {
  std::ostringstream os;
  char buf[128];
  const std::string b(baseline_name), k(candidate_name);
  std::snprintf(buf, sizeof buf, "%-20s %12s %12s %10s\n", "metric", b.c_str(), k.c_str(), "change");
  os << buf;
  for (const auto& ch : c.changes) {
    std::snprintf(buf, sizeof buf, "%-20s %12.4f %12.4f %10s\n", ch.metric.c_str(), ch.baseline, ch.candidate,
                  format_percent(ch.relative_percent).c_str());
    os << buf;
  }
  return os.str();
}

}  // namespace augbench
