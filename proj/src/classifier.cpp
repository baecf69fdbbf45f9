#include "augbench/classifier.hpp"

#include <cmath>

#include <json.hpp>

#include "augbench/error.hpp"

namespace augbench {

NaiveBayesModel::NaiveBayesModel(Vocabulary vocab, PerLabel<double> log_prior,
                                 PerLabel<std::vector<double>> log_likelihood, double alpha)
    : vocab_(std::move(vocab)), log_prior_(log_prior), log_likelihood_(std::move(log_likelihood)), alpha_(alpha) {
  if (vocab_.size() == 0) throw DataError("naive Bayes model needs a non-empty vocabulary");
  for (Label l : kLabels) {
    if (log_likelihood_[l].size() != vocab_.size())
      throw DataError("likelihood table size does not match the vocabulary");
    if (!std::isfinite(log_prior_[l])) throw DataError("class log-prior is not finite");
  }
}

PerLabel<double> NaiveBayesModel::log_posteriors(const CountVector& doc) const {
  if (doc.vocabulary_size != vocab_.size())
    throw UsageError("document vectorized over " + std::to_string(doc.vocabulary_size) +
                     " tokens, model vocabulary has " + std::to_string(vocab_.size()));
  PerLabel<double> score;
  for (Label l : kLabels) {
    double s = log_prior_[l];
    const auto& ll = log_likelihood_[l];
    for (const auto& [id, count] : doc.counts) s += static_cast<double>(count) * ll[id];
    score[l] = s;
  }
  return score;
}

Label NaiveBayesModel::predict(const CountVector& doc) const {
  const auto s = log_posteriors(doc);
  return s[Label::Positive] > s[Label::Negative] ? Label::Positive : Label::Negative;
}

Label NaiveBayesModel::predict(std::string_view text) const {
  const auto tokens = tokenize(text);
  return predict(vectorize(tokens, vocab_));
}

std::string NaiveBayesModel::to_json() const {
  nlohmann::ordered_json out;
  out["alpha"] = alpha_;
  out["vocabulary"] = vocab_.tokens();
  nlohmann::ordered_json prior, lik;
  for (Label l : kLabels) {
    prior[std::string(to_string(l))] = log_prior_[l];
    lik[std::string(to_string(l))] = log_likelihood_[l];
  }
  out["class_log_prior"] = std::move(prior);
  out["token_log_likelihood"] = std::move(lik);
  return out.dump();
}

NaiveBayesModel NaiveBayesModel::from_json(std::string_view text) {
  try {
    const auto in = nlohmann::json::parse(text);
    PerLabel<double> prior;
    PerLabel<std::vector<double>> lik;
    for (Label l : kLabels) {
      const std::string key(to_string(l));
      prior[l] = in.at("class_log_prior").at(key).get<double>();
      lik[l] = in.at("token_log_likelihood").at(key).get<std::vector<double>>();
    }
    const double alpha = in.at("alpha").get<double>();
    if (!(alpha > 0.0)) throw DataError("model alpha must be positive");
    return NaiveBayesModel(Vocabulary(in.at("vocabulary").get<std::vector<Token>>()), prior, std::move(lik), alpha);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed model JSON: ") + e.what());
  }
}

NaiveBayesModel fit_mnb(const Corpus& train, const Vocabulary& vocab, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw UsageError("alpha must be positive");
  if (vocab.size() == 0) throw DataError("cannot fit naive Bayes with an empty vocabulary");
  if (train.count(Label::Negative) == 0 || train.count(Label::Positive) == 0)
    throw DataError("naive Bayes training data must contain both Positive and Negative reviews");

  const std::size_t v = vocab.size();
  PerLabel<std::vector<std::uint64_t>> counts;
  PerLabel<std::uint64_t> totals;
  for (Label l : kLabels) counts[l].assign(v, 0);
  for (const auto& review : train.reviews()) {
    const auto doc = vectorize(tokenize(review.text()), vocab);
    auto& c = counts[review.label()];
    for (const auto& [id, n] : doc.counts) {
      c[id] += n;
      totals[review.label()] += n;
    }
  }

  const double n = static_cast<double>(train.size());
  PerLabel<double> prior;
  PerLabel<std::vector<double>> lik;
  for (Label l : kLabels) {
    prior[l] = std::log(static_cast<double>(train.count(l)) / n);
    const double denom = static_cast<double>(totals[l]) + alpha * static_cast<double>(v);
    lik[l].resize(v);
    for (std::size_t t = 0; t < v; ++t) lik[l][t] = std::log((static_cast<double>(counts[l][t]) + alpha) / denom);
  }
  return NaiveBayesModel(vocab, prior, std::move(lik), alpha);
}

NaiveBayesModel fit_mnb(const Corpus& train, double alpha) { return fit_mnb(train, Vocabulary::build(train), alpha); }

std::vector<Label> predict_all(const NaiveBayesModel& model, const Corpus& docs) {
  std::vector<Label> out;
  out.reserve(docs.size());
  for (const auto& r : docs.reviews()) out.push_back(model.predict(r.text()));
  return out;
}

}  // namespace augbench
