#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "augbench/corpus.hpp"
#include "augbench/text.hpp"

namespace augbench {

// A value per label, indexed by Label.
template <class T>
struct PerLabel {
  std::array<T, 2> values{};

  T& operator[](Label l) { return values[index_of(l)]; }
  const T& operator[](Label l) const { return values[index_of(l)]; }
  bool operator==(const PerLabel&) const = default;
};

// Multinomial Naive Bayes over unigram counts, stored as natural logs.
class NaiveBayesModel {
 public:
  NaiveBayesModel(Vocabulary vocab, PerLabel<double> log_prior, PerLabel<std::vector<double>> log_likelihood,
                  double alpha);

  const Vocabulary& vocabulary() const { return vocab_; }
  double alpha() const { return alpha_; }
  double log_prior(Label l) const { return log_prior_[l]; }
  const std::vector<double>& log_likelihood(Label l) const { return log_likelihood_[l]; }

  // Unnormalized log joint per label. Throws UsageError when the vector was
  // built against a vocabulary of another size.
  PerLabel<double> log_posteriors(const CountVector& doc) const;

  // Argmax of log_posteriors; exact ties go to Negative.
  Label predict(const CountVector& doc) const;
  Label predict(std::string_view text) const;

  // Round-trips exactly (doubles are written with 17 significant digits).
  std::string to_json() const;
  static NaiveBayesModel from_json(std::string_view json);

 private:
  Vocabulary vocab_;
  PerLabel<double> log_prior_;
  PerLabel<std::vector<double>> log_likelihood_;
  double alpha_;
};

// Laplace/Lidstone-smoothed fit:
//   prior[c]         = ln(N_c / N)
//   likelihood[c][t] = ln((count(t,c) + alpha) / (tokens(c) + alpha * V))
// Both labels must be present and alpha > 0.
NaiveBayesModel fit_mnb(const Corpus& train, const Vocabulary& vocab, double alpha = 1.0);

// Vocabulary built from `train` itself.
NaiveBayesModel fit_mnb(const Corpus& train, double alpha = 1.0);

std::vector<Label> predict_all(const NaiveBayesModel& model, const Corpus& docs);

}  // namespace augbench
