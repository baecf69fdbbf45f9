#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "augbench/corpus.hpp"
#include "augbench/text.hpp"

namespace augbench {

struct NgramRow {
  std::vector<Token> ngram;
  std::uint64_t count = 0;

  bool operator==(const NgramRow&) const = default;
};

// Rows sorted by count descending, then ngram ascending.
struct NgramTable {
  int order = 1;
  std::vector<NgramRow> rows;
};

// Windows of `order` tokens inside each review (never across reviews),
// aggregated over the corpus. Order must be 1, 2 or 3.
NgramTable count_ngrams(const Corpus& corpus, int order);

// Percentile range [lo, hi] on a 0..100 scale.
struct BandSpec {
  std::string label;
  double lo = 0.0;
  double hi = 100.0;
};

// Parses "80-100,50-80,25-50". Labels come out as "80% - 100%" etc.
std::vector<BandSpec> parse_bands(std::string_view spec);
std::vector<BandSpec> default_bands();

struct Band {
  BandSpec spec;
  std::vector<NgramRow> rows;  // in source-table order
};

struct BandedTable {
  int order = 1;
  std::vector<Band> bands;  // highest range first
};

// Min-max normalized count percentile of one row:
// 100 * (count - min) / (max - min), or 100 when every count is equal.
double count_percentile(std::uint64_t count, std::uint64_t min_count, std::uint64_t max_count);

// Each row lands in the band whose closed range holds its percentile; a
// shared endpoint belongs to the higher band. Rows outside every band are
// dropped. Throws UsageError for overlapping or malformed ranges.
BandedTable band_table(const NgramTable& table, const std::vector<BandSpec>& bands);

struct Prompt {
  std::string text;
  Label class_label = Label::Negative;

  bool operator==(const Prompt&) const = default;
};

// Prompts built from the top band of each table, cycling through three
// shapes: a trigram; a bigram followed by a word; a trigram followed by a
// bigram. A shape whose inputs are empty is skipped. Items are drawn
// uniformly without replacement, and a pool is refilled once exhausted.
std::vector<Prompt> suggest_prompts(const BandedTable& words, const BandedTable& bigrams,
                                    const BandedTable& trigrams, Label label, std::size_t k,
                                    std::uint64_t seed);

// Convenience: counts, bands and suggests from one class corpus.
std::vector<Prompt> suggest_prompts(const Corpus& class_corpus, Label label,
                                    const std::vector<BandSpec>& bands, std::size_t k, std::uint64_t seed);

// {"text": ..., "class_label": ...} per line.
void write_prompts(std::ostream& out, const std::vector<Prompt>& prompts);
std::vector<Prompt> read_prompts(std::istream& in);

std::string table_to_json(const NgramTable& table, const BandedTable& banded, std::size_t top);
std::string table_to_text(const NgramTable& table, const BandedTable& banded, std::size_t top);

}  // namespace augbench
