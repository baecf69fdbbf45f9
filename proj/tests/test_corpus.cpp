#include <gtest/gtest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "augbench/corpus.hpp"
#include "augbench/error.hpp"
#include "augbench/rng.hpp"

using namespace augbench;

namespace {

std::vector<RawReview> load(const std::string& text, Format f) {
  std::istringstream in(text);
  return load_reviews(in, f);
}

std::string error_of(const std::string& text, Format f) {
  try {
    load(text, f);
  } catch (const DataError& e) {
    return e.what();
  }
  return {};
}

Corpus balanced(std::size_t per_class, Provenance prov = Provenance::Genuine) {
  std::vector<LabeledReview> r;
  for (std::size_t i = 0; i < per_class; ++i) {
    r.emplace_back("good pizza " + std::to_string(i), Label::Positive, prov);
    r.emplace_back("bad pizza " + std::to_string(i), Label::Negative, prov);
  }
  return Corpus(std::move(r));
}

}  // namespace

TEST(LoadReviews, CsvRowWithQuotedText) {
  const auto rows = load("stars,text\n5,\"great pizza and salad\"\n", Format::Csv);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].stars, 5);
  EXPECT_EQ(rows[0].text, "great pizza and salad");
}

TEST(LoadReviews, EmptyStreamGivesEmptyList) {
  EXPECT_TRUE(load("", Format::Csv).empty());
  EXPECT_TRUE(load("", Format::Jsonl).empty());
}

TEST(LoadReviews, JsonlStarsOutOfRange) {
  EXPECT_NE(error_of("{\"stars\":0,\"text\":\"x\"}\n", Format::Jsonl).find("stars out of range"), std::string::npos);
}

TEST(LoadReviews, CsvQuotingAndOrder) {
  const std::string csv =
      "stars,text\r\n"
      "1,\"cold, soggy \"\"pizza\"\"\"\r\n"
      "4,\"line one\nline two\"\n"
      "2,plain text\n";
  const auto rows = load(csv, Format::Csv);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].text, "cold, soggy \"pizza\"");
  EXPECT_EQ(rows[1].text, "line one\nline two");
  EXPECT_EQ(rows[2].stars, 2);
}

TEST(LoadReviews, CsvExtraColumnsAreIgnored) {
  const auto rows = load("id,stars,rating,text\n1,5,Positive,yummy\n", Format::Csv);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].text, "yummy");
}

TEST(LoadReviews, ErrorsNameLineAndField) {
  auto e = error_of("stars,text\n5,ok\nfive,bad\n", Format::Csv);
  EXPECT_NE(e.find("line 3"), std::string::npos) << e;
  EXPECT_NE(e.find("'stars'"), std::string::npos) << e;

  e = error_of("stars,text\n5,   \n", Format::Csv);
  EXPECT_NE(e.find("line 2"), std::string::npos) << e;
  EXPECT_NE(e.find("'text'"), std::string::npos) << e;

  e = error_of("stars,text\n5,a,b\n", Format::Csv);
  EXPECT_NE(e.find("line 2"), std::string::npos) << e;

  e = error_of("{\"stars\":5,\"text\":\"ok\"}\n{\"stars\":4.5,\"text\":\"x\"}\n", Format::Jsonl);
  EXPECT_NE(e.find("line 2"), std::string::npos) << e;
  EXPECT_NE(e.find("not an integer"), std::string::npos) << e;

  e = error_of("{\"stars\":5,\"text\":\"ok\"}\n{oops\n", Format::Jsonl);
  EXPECT_NE(e.find("line 2"), std::string::npos) << e;

  EXPECT_FALSE(error_of("text\nhello\n", Format::Csv).empty());
  EXPECT_FALSE(error_of("stars,text\n5,\"unterminated\n", Format::Csv).empty());
}

TEST(LoadReviews, RejectsInvalidUtf8) {
  EXPECT_NE(error_of("stars,text\n5,caf\xC3\n", Format::Csv).find("UTF-8"), std::string::npos);
}

TEST(Binarize, Bands) {
  EXPECT_EQ(binarize({5, "x"})->label(), Label::Positive);
  EXPECT_EQ(binarize({4, "x"})->label(), Label::Positive);
  EXPECT_EQ(binarize({1, "x"})->label(), Label::Negative);
  EXPECT_EQ(binarize({2, "x"})->label(), Label::Negative);
  EXPECT_FALSE(binarize({3, "x"}).has_value());
  EXPECT_EQ(binarize({5, "x"})->provenance(), Provenance::Genuine);
}

TEST(Binarize, TotalAndPartitioning) {
  std::set<std::string> seen;
  for (int s = 1; s <= 5; ++s) {
    const auto r = binarize({s, "t"});
    seen.insert(r ? std::string(to_string(r->label())) : "excluded");
  }
  EXPECT_EQ(seen, (std::set<std::string>{"Negative", "Positive", "excluded"}));
}

TEST(Ingest, CountsExcludedThreeStars) {
  std::istringstream in("stars,text\n5,a\n3,b\n1,c\n3,d\n");
  const auto r = ingest(in, Format::Csv);
  EXPECT_EQ(r.corpus.size(), 2u);
  EXPECT_EQ(r.excluded, 2u);
}

TEST(Ingest, JsonlLabelledRecordsPassThrough) {
  std::istringstream in(
      "{\"text\":\"a\",\"label\":\"Positive\",\"provenance\":\"Synthetic\"}\n"
      "{\"stars\":1,\"text\":\"b\"}\n");
  const auto r = ingest(in, Format::Jsonl);
  ASSERT_EQ(r.corpus.size(), 2u);
  EXPECT_EQ(r.corpus.reviews()[0].provenance(), Provenance::Synthetic);
  EXPECT_EQ(r.corpus.reviews()[1].label(), Label::Negative);
}

TEST(CorpusType, CountsMatchRecount) {
  const auto c = balanced(3);
  EXPECT_EQ(c.count(Label::Positive) + c.count(Label::Negative), c.size());
  std::size_t pos = 0;
  for (const auto& r : c.reviews()) pos += r.label() == Label::Positive;
  EXPECT_EQ(pos, c.count(Label::Positive));
}

TEST(CorpusType, BlankTextRejected) {
  EXPECT_THROW(LabeledReview(" \t\n", Label::Positive, Provenance::Genuine), DataError);
}

TEST(PartitionHoldout, StratifiedSplitOf648IsBalanced) {
  const auto c = balanced(324);
  ASSERT_EQ(c.size(), 648u);
  const auto split = partition_holdout(c, 198, 7);
  EXPECT_EQ(split.test.size(), 198u);
  EXPECT_EQ(split.test.count(Label::Negative), 99u);
  EXPECT_EQ(split.test.count(Label::Positive), 99u);
  EXPECT_EQ(split.train.size(), 450u);
}

TEST(PartitionHoldout, ZeroHoldout) {
  const auto c = balanced(5);
  const auto split = partition_holdout(c, 0, 1);
  EXPECT_TRUE(split.test.empty());
  EXPECT_EQ(split.train, c);
}

TEST(PartitionHoldout, SameSeedSameBytes) {
  const auto c = balanced(50);
  EXPECT_EQ(to_jsonl(partition_holdout(c, 30, 99).test), to_jsonl(partition_holdout(c, 30, 99).test));
  EXPECT_NE(to_jsonl(partition_holdout(c, 30, 99).test), to_jsonl(partition_holdout(c, 30, 100).test));
}

TEST(PartitionHoldout, DisjointAndCovering) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    std::vector<LabeledReview> r;
    const std::size_t n = 2 + rng.below(40);
    for (std::size_t i = 0; i < n; ++i)
      r.emplace_back("doc " + std::to_string(i), rng.below(2) ? Label::Positive : Label::Negative, Provenance::Genuine);
    const Corpus c(std::move(r));
    const std::size_t max_h = 2 * std::min(c.count(Label::Positive), c.count(Label::Negative));
    const std::size_t h = max_h == 0 ? 0 : rng.below(max_h + 1);
    const auto split = partition_holdout(c, h, seed);
    ASSERT_EQ(split.test.size(), h);
    ASSERT_EQ(split.train.size() + split.test.size(), c.size());
    std::multiset<std::string> all, parts;
    for (const auto& x : c.reviews()) all.insert(x.text());
    for (const auto& x : split.train.reviews()) parts.insert(x.text());
    for (const auto& x : split.test.reviews()) parts.insert(x.text());
    EXPECT_EQ(all, parts);
    const auto diff = static_cast<long>(split.test.count(Label::Positive)) - static_cast<long>(split.test.count(Label::Negative));
    EXPECT_LE(std::abs(diff), 1);
  }
}

TEST(PartitionHoldout, OddHoldoutExtraGoesToLargerClass) {
  std::vector<LabeledReview> r;
  for (int i = 0; i < 5; ++i) r.emplace_back("n" + std::to_string(i), Label::Negative, Provenance::Genuine);
  for (int i = 0; i < 3; ++i) r.emplace_back("p" + std::to_string(i), Label::Positive, Provenance::Genuine);
  const auto split = partition_holdout(Corpus(std::move(r)), 5, 3);
  EXPECT_EQ(split.test.count(Label::Negative), 3u);
  EXPECT_EQ(split.test.count(Label::Positive), 2u);
}

TEST(PartitionHoldout, TooLargeReportsAvailability) {
  std::vector<LabeledReview> r;
  for (int i = 0; i < 10; ++i) r.emplace_back("n" + std::to_string(i), Label::Negative, Provenance::Genuine);
  for (int i = 0; i < 2; ++i) r.emplace_back("p" + std::to_string(i), Label::Positive, Provenance::Genuine);
  try {
    partition_holdout(Corpus(std::move(r)), 8, 1);
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("10 Negative"), std::string::npos) << msg;
    EXPECT_NE(msg.find("2 Positive"), std::string::npos) << msg;
  }
  EXPECT_THROW(partition_holdout(balanced(2), 5, 1), DataError);
}

TEST(PartitionHoldout, RefusesSyntheticInput) {
  EXPECT_THROW(partition_holdout(balanced(4, Provenance::Synthetic), 2, 1), DataError);
}

TEST(Concat, LargeSyntheticVolume) {
  std::vector<LabeledReview> syn;
  for (int i = 0; i < 10930; ++i)
    syn.emplace_back("s", i % 2 ? Label::Positive : Label::Negative, Provenance::Synthetic);
  const auto combined = concat(balanced(225), Corpus(std::move(syn)));
  EXPECT_EQ(combined.size(), 11380u);
  EXPECT_EQ(combined.reviews().front().provenance(), Provenance::Genuine);
  EXPECT_EQ(combined.reviews().back().provenance(), Provenance::Synthetic);
}

TEST(Concat, EmptySyntheticIsIdentity) {
  const auto g = balanced(3);
  EXPECT_EQ(concat(g, Corpus{}), g);
}

TEST(Concat, CountsAdd) {
  const Corpus g({LabeledReview("a", Label::Positive, Provenance::Genuine),
                  LabeledReview("b", Label::Positive, Provenance::Genuine)});
  const Corpus s({LabeledReview("c", Label::Negative, Provenance::Synthetic),
                  LabeledReview("d", Label::Negative, Provenance::Synthetic),
                  LabeledReview("e", Label::Negative, Provenance::Synthetic)});
  const auto c = concat(g, s);
  EXPECT_EQ(c.count(Label::Positive), 2u);
  EXPECT_EQ(c.count(Label::Negative), 3u);
}

TEST(Concat, Associative) {
  const auto a = balanced(2);
  const auto b = balanced(1, Provenance::Synthetic);
  const auto c = balanced(3, Provenance::Synthetic);
  EXPECT_EQ(concat(concat(a, b), c), concat(a, concat(b, c)));
}

TEST(Concat, RejectsGenuineOnSyntheticSide) {
  EXPECT_THROW(concat(balanced(1), balanced(1)), DataError);
}

TEST(Serialization, JsonlAlwaysCarriesLabelAndProvenance) {
  const Corpus c({LabeledReview("caf\xC3\xA9 \"ok\"", Label::Positive, Provenance::Synthetic)});
  const auto text = to_jsonl(c);
  EXPECT_EQ(text, "{\"text\":\"caf\xC3\xA9 \\\"ok\\\"\",\"label\":\"Positive\",\"provenance\":\"Synthetic\"}\n");
  std::istringstream in(text);
  EXPECT_EQ(read_jsonl(in), c);
}

TEST(Fixture, BundledCorpusIsBalanced) {
  std::ifstream in(std::string(AUGBENCH_FIXTURE_DIR) + "/pizza_reviews.csv");
  ASSERT_TRUE(in);
  const auto r = ingest(in, Format::Csv);
  EXPECT_GE(r.corpus.size(), 300u);
  EXPECT_EQ(r.corpus.count(Label::Positive), r.corpus.count(Label::Negative));
}
