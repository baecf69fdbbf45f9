#include <gtest/gtest.h>

#include <algorithm>

#include "augbench/error.hpp"
#include "augbench/rng.hpp"
#include "augbench/text.hpp"

using namespace augbench;

using Tokens = std::vector<Token>;

TEST(Tokenize, MixedCaseAndPunctuation) {
  EXPECT_EQ(tokenize("Soggy Crust, was very gross!"), (Tokens{"soggy", "crust", "was", "very", "gross"}));
}

TEST(Tokenize, Empty) { EXPECT_TRUE(tokenize("").empty()); }

TEST(Tokenize, KeepsApostrophes) { EXPECT_EQ(tokenize("wouldn't share."), (Tokens{"wouldn't", "share"})); }

TEST(Tokenize, DigitsAndPunctuation) {
  EXPECT_EQ(tokenize("$20 for a really-big slice...mmmm\n\nnext"),
            (Tokens{"20", "for", "a", "really", "big", "slice", "mmmm", "next"}));
}

TEST(Tokenize, UnicodeLettersAndCase) {
  // É lowercases to é; the curly apostrophe is not U+0027 and splits.
  EXPECT_EQ(tokenize("CAFÉ Straße don\xE2\x80\x99t"), (Tokens{"café", "straße", "don", "t"}));
  EXPECT_EQ(tokenize("ΠΙΤΣΑ 42"), (Tokens{"πιτσα", "42"}));
}

TEST(Tokenize, InvalidBytesSplit) { EXPECT_EQ(tokenize("ab\xFF" "cd"), (Tokens{"ab", "cd"})); }

TEST(Tokenize, IdempotentOnJoinedOutput) {
  const std::vector<std::string> alphabet = {"a",  "B",  "é", "Ω", "'", " ", ",", "!",  "7",
                                             "\n", "ß", "-", "İ", "x", "Ǆ", "ǅ", "\xE2\x80\x99"};
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    Rng rng(seed);
    std::string s;
    const auto len = rng.below(30);
    for (std::uint64_t i = 0; i < len; ++i) s += alphabet[rng.below(alphabet.size())];
    const auto once = tokenize(s);
    EXPECT_EQ(tokenize(join(once)), once) << s;
    for (const auto& t : once) {
      EXPECT_FALSE(t.empty());
      EXPECT_EQ(t.find_first_of(" \t\n"), std::string::npos);
    }
  }
}

TEST(Vocabulary, SingleReview) {
  const Corpus c({LabeledReview("pizza pizza was cold", Label::Negative, Provenance::Genuine)});
  const auto v = Vocabulary::build(c);
  EXPECT_EQ(v.tokens(), (Tokens{"pizza", "was", "cold"}));
  EXPECT_EQ(v.id("pizza"), 0u);
  EXPECT_EQ(v.id("was"), 1u);
  EXPECT_EQ(v.id("cold"), 2u);
  EXPECT_FALSE(v.id("hot").has_value());
}

TEST(Vocabulary, DuplicatesDoNotChangeIt) {
  const LabeledReview r("pizza pizza was cold", Label::Negative, Provenance::Genuine);
  EXPECT_EQ(Vocabulary::build(Corpus({r})), Vocabulary::build(Corpus({r, r})));
}

TEST(Vocabulary, FirstSeenOrderAcrossReviews) {
  const Corpus c({LabeledReview("a b", Label::Negative, Provenance::Genuine),
                  LabeledReview("b c", Label::Positive, Provenance::Genuine)});
  EXPECT_EQ(Vocabulary::build(c).tokens(), (Tokens{"a", "b", "c"}));
}

TEST(Vocabulary, NoTokensIsAnError) {
  const Corpus c({LabeledReview("!!! ...", Label::Negative, Provenance::Genuine)});
  EXPECT_THROW(Vocabulary::build(c), DataError);
}

TEST(Vocabulary, JsonRoundTrip) {
  const Vocabulary v(Tokens{"pizza", "don't", "café"});
  EXPECT_EQ(v.to_json(), "[\"pizza\",\"don't\",\"café\"]");
  EXPECT_EQ(Vocabulary::from_json(v.to_json()), v);
  EXPECT_THROW(Vocabulary::from_json("[\"a\",\"a\"]"), DataError);
  EXPECT_THROW(Vocabulary::from_json("{"), DataError);
}

TEST(Vectorize, CountsInVocabularyTokens) {
  const Vocabulary v(Tokens{"pizza", "was", "cold"});
  const auto doc = vectorize(Tokens{"pizza", "was", "pizza"}, v);
  EXPECT_EQ(doc.vocabulary_size, 3u);
  EXPECT_EQ(doc.counts, (std::map<TokenId, std::uint32_t>{{0, 2}, {1, 1}}));
  EXPECT_EQ(doc.total(), 3u);
}

TEST(Vectorize, EmptyAndOutOfVocabulary) {
  const Vocabulary v(Tokens{"pizza", "was", "cold"});
  EXPECT_EQ(vectorize(Tokens{}, v).total(), 0u);
  const auto oov = vectorize(Tokens{"unseen"}, v);
  EXPECT_TRUE(oov.counts.empty());
  EXPECT_EQ(oov.total(), 0u);
}

TEST(Vectorize, TotalAndPermutationInvariance) {
  const Vocabulary v(Tokens{"a", "b", "c", "d"});
  const Tokens pool = {"a", "b", "c", "d", "x", "y"};
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    Tokens doc;
    const auto n = rng.below(12);
    for (std::uint64_t i = 0; i < n; ++i) doc.push_back(pool[rng.below(pool.size())]);
    const auto in_vocab = std::count_if(doc.begin(), doc.end(), [&](const Token& t) { return v.id(t).has_value(); });
    const auto a = vectorize(doc, v);
    EXPECT_EQ(a.total(), static_cast<std::uint64_t>(in_vocab));
    for (const auto& [id, c] : a.counts) EXPECT_GE(c, 1u);
    std::reverse(doc.begin(), doc.end());
    EXPECT_EQ(vectorize(doc, v).counts, a.counts);
  }
}
