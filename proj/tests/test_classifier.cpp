#include <gtest/gtest.h>

#include <cmath>

#include "augbench/classifier.hpp"
#include "augbench/error.hpp"
#include "augbench/rng.hpp"

using namespace augbench;

namespace {

const LabeledReview pos(const char* t) { return {t, Label::Positive, Provenance::Genuine}; }
const LabeledReview neg(const char* t) { return {t, Label::Negative, Provenance::Genuine}; }

NaiveBayesModel toy() { return fit_mnb(Corpus({pos("a a b"), neg("c")}), 1.0); }

CountVector doc(const NaiveBayesModel& m, std::string_view text) { return vectorize(tokenize(text), m.vocabulary()); }

}  // namespace

TEST(FitMnb, BalancedPriors) {
  std::vector<LabeledReview> r;
  for (int i = 0; i < 225; ++i) {
    r.push_back(pos("good"));
    r.push_back(neg("bad"));
  }
  const auto m = fit_mnb(Corpus(r));
  EXPECT_DOUBLE_EQ(m.log_prior(Label::Positive), std::log(0.5));
  EXPECT_DOUBLE_EQ(m.log_prior(Label::Negative), std::log(0.5));
}

TEST(FitMnb, HandArithmetic) {
  const auto m = toy();
  ASSERT_EQ(m.vocabulary().size(), 3u);
  const auto a = *m.vocabulary().id("a");
  const auto c = *m.vocabulary().id("c");
  EXPECT_NEAR(std::exp(m.log_likelihood(Label::Positive)[a]), 0.5, 1e-15);
  // Smoothing floor: "a" never occurs in Negative, which has 1 token.
  EXPECT_NEAR(std::exp(m.log_likelihood(Label::Negative)[a]), 1.0 / (1 + 3), 1e-15);
  EXPECT_NEAR(std::exp(m.log_likelihood(Label::Negative)[c]), 2.0 / 4.0, 1e-15);
}

TEST(FitMnb, Normalized) {
  const auto m = fit_mnb(Corpus({pos("a a b d"), neg("c e"), pos("e f"), neg("a")}), 0.3);
  double prior = 0;
  for (const Label l : kLabels) {
    prior += std::exp(m.log_prior(l));
    double s = 0;
    for (const double x : m.log_likelihood(l)) {
      EXPECT_TRUE(std::isfinite(x));
      s += std::exp(x);
    }
    EXPECT_NEAR(s, 1.0, 1e-9);
  }
  EXPECT_NEAR(prior, 1.0, 1e-9);
}

TEST(FitMnb, Errors) {
  EXPECT_THROW(fit_mnb(Corpus({pos("a"), pos("b")})), DataError);
  EXPECT_THROW(fit_mnb(Corpus({pos("a"), neg("b")}), 0.0), UsageError);
  EXPECT_THROW(fit_mnb(Corpus({pos("a"), neg("b")}), Vocabulary{}), DataError);
}

TEST(Predict, HandScores) {
  const auto m = toy();
  const auto s = m.log_posteriors(doc(m, "a"));
  EXPECT_NEAR(s[Label::Positive], std::log(0.5) + std::log(0.5), 1e-12);
  EXPECT_NEAR(s[Label::Negative], std::log(0.5) + std::log(0.25), 1e-12);
  EXPECT_EQ(m.predict(doc(m, "a")), Label::Positive);
  EXPECT_EQ(m.predict("a"), Label::Positive);
}

TEST(Predict, EmptyDocumentScoresArePriorsAndTieGoesNegative) {
  const auto m = toy();
  const auto s = m.log_posteriors(doc(m, ""));
  EXPECT_EQ(s[Label::Positive], m.log_prior(Label::Positive));
  EXPECT_EQ(s[Label::Negative], m.log_prior(Label::Negative));
  EXPECT_EQ(m.predict(doc(m, "")), Label::Negative);
  EXPECT_EQ(m.predict("never seen"), Label::Negative);
}

TEST(Predict, SymmetricModelTies) {
  const auto m = fit_mnb(Corpus({pos("a"), neg("b")}));
  const auto s = m.log_posteriors(doc(m, "a b"));
  EXPECT_EQ(s[Label::Positive], s[Label::Negative]);
  EXPECT_EQ(m.predict(doc(m, "a b")), Label::Negative);
}

TEST(Predict, DominantPriorWins) {
  const Vocabulary v(std::vector<Token>{"a", "b"});
  PerLabel<double> prior;
  prior[Label::Positive] = std::log(0.9);
  prior[Label::Negative] = std::log(0.1);
  PerLabel<std::vector<double>> lik;
  lik[Label::Positive] = lik[Label::Negative] = {std::log(0.5), std::log(0.5)};
  const NaiveBayesModel m(v, prior, lik, 1.0);
  EXPECT_EQ(m.predict(vectorize(std::vector<Token>{"a", "b", "b"}, v)), Label::Positive);
}

TEST(Predict, DimensionMismatch) {
  const auto m = toy();
  CountVector wrong;
  wrong.vocabulary_size = 7;
  EXPECT_THROW(m.log_posteriors(wrong), UsageError);
}

TEST(Predict, BruteForceOracle) {
  const std::vector<std::string> letters = {"a", "b", "c", "d", "e", "f", "g", "h"};
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    const auto V = 1 + rng.below(8);
    const auto ndocs = 2 + rng.below(11);
    std::vector<LabeledReview> docs;
    std::vector<std::vector<std::string>> toks;
    for (std::uint64_t d = 0; d < ndocs; ++d) {
      std::vector<std::string> t;
      const auto len = 1 + rng.below(6);
      for (std::uint64_t i = 0; i < len; ++i) t.push_back(letters[rng.below(V)]);
      const Label l = d == 0 ? Label::Positive : d == 1 ? Label::Negative : (rng.below(2) ? Label::Positive : Label::Negative);
      docs.emplace_back(join(t), l, Provenance::Genuine);
      toks.push_back(t);
    }
    const double alpha = 0.5 + static_cast<double>(rng.below(4)) * 0.5;
    const Corpus train(docs);
    const auto m = fit_mnb(train, alpha);
    const std::size_t vsize = m.vocabulary().size();

    // Direct probabilities from raw counts.
    std::map<Label, double> n_docs;
    std::map<Label, std::map<std::string, double>> tok_count;
    std::map<Label, double> tok_total;
    for (std::size_t d = 0; d < docs.size(); ++d) {
      n_docs[docs[d].label()] += 1;
      for (const auto& t : toks[d]) {
        tok_count[docs[d].label()][t] += 1;
        tok_total[docs[d].label()] += 1;
      }
    }
    for (int q = 0; q < 5; ++q) {
      std::vector<std::string> query;
      const auto qlen = rng.below(7);
      for (std::uint64_t i = 0; i < qlen; ++i) query.push_back(letters[rng.below(8)]);
      std::map<Label, double> prob;
      for (const Label l : kLabels) {
        double p = n_docs[l] / static_cast<double>(docs.size());
        for (const auto& t : query) {
          if (!m.vocabulary().id(t)) continue;
          p *= (tok_count[l][t] + alpha) / (tok_total[l] + alpha * static_cast<double>(vsize));
        }
        prob[l] = p;
      }
      const auto scores = m.log_posteriors(vectorize(query, m.vocabulary()));
      for (const Label l : kLabels) EXPECT_NEAR(std::exp(scores[l]) / prob[l], 1.0, 1e-9);
      // Near-ties are left to the exact-arithmetic check in the acceptance suite.
      if (std::abs(prob[Label::Positive] - prob[Label::Negative]) > 1e-12 * prob[Label::Negative]) {
        const Label expect = prob[Label::Positive] > prob[Label::Negative] ? Label::Positive : Label::Negative;
        EXPECT_EQ(m.predict(vectorize(query, m.vocabulary())), expect);
      }
    }
  }
}

TEST(Predict, DuplicatedTrainingLeavesModelUnchanged) {
  const std::vector<LabeledReview> base = {pos("great crust"), pos("great sauce yum"), neg("cold crust"),
                                           neg("rude staff"), neg("cold")};
  std::vector<LabeledReview> twice = base;
  twice.insert(twice.end(), base.begin(), base.end());
  const auto a = fit_mnb(Corpus(base));
  const auto b = fit_mnb(Corpus(twice));
  for (const Label l : kLabels) EXPECT_NEAR(a.log_prior(l), b.log_prior(l), 1e-15);
  for (const char* q : {"great", "cold crust", "yum staff", "sauce sauce rude"})
    EXPECT_EQ(a.predict(q), b.predict(q));
}

TEST(Predict, AppendingPositiveTokenKeepsPositive) {
  const auto m = fit_mnb(Corpus({pos("great crust"), pos("great sauce"), neg("cold crust"), neg("rude staff")}));
  ASSERT_EQ(m.predict("great crust"), Label::Positive);
  EXPECT_EQ(m.predict("great crust great"), Label::Positive);
  EXPECT_EQ(m.predict("great crust sauce sauce"), Label::Positive);
}

TEST(Serialization, ExactRoundTrip) {
  const auto m = fit_mnb(Corpus({pos("a a b d"), neg("c e"), pos("e f"), neg("a")}), 0.7);
  const auto back = NaiveBayesModel::from_json(m.to_json());
  EXPECT_EQ(back.to_json(), m.to_json());
  EXPECT_EQ(back.alpha(), 0.7);
  for (const Label l : kLabels) {
    EXPECT_EQ(back.log_prior(l), m.log_prior(l));
    EXPECT_EQ(back.log_likelihood(l), m.log_likelihood(l));
  }
  EXPECT_THROW(NaiveBayesModel::from_json("{\"vocabulary\":[]}"), DataError);
}

TEST(PredictAll, OnePerDocument) {
  const auto m = toy();
  const auto p = predict_all(m, Corpus({pos("a"), neg("c"), neg("zzz")}));
  EXPECT_EQ(p, (std::vector<Label>{Label::Positive, Label::Negative, Label::Negative}));
}
