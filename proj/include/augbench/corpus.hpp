#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace augbench {

// Negative < Positive; the underlying value is the row/column index used by
// confusion matrices and per-label arrays.
enum class Label : std::uint8_t { Negative = 0, Positive = 1 };

inline constexpr std::array<Label, 2> kLabels = {Label::Negative, Label::Positive};

inline constexpr std::size_t index_of(Label l) { return static_cast<std::size_t>(l); }

enum class Provenance : std::uint8_t { Genuine, Synthetic };

std::string_view to_string(Label label);
std::string_view to_string(Provenance provenance);
// Accepts "Positive"/"Negative" and the short forms "pos"/"neg".
std::optional<Label> parse_label(std::string_view s);
std::optional<Provenance> parse_provenance(std::string_view s);

enum class Format { Csv, Jsonl };

struct RawReview {
  int stars = 0;
  std::string text;
};

class LabeledReview {
 public:
  // Throws DataError when the text is blank.
  LabeledReview(std::string text, Label label, Provenance provenance);

  const std::string& text() const { return text_; }
  Label label() const { return label_; }
  Provenance provenance() const { return provenance_; }

  bool operator==(const LabeledReview&) const = default;

 private:
  std::string text_;
  Label label_;
  Provenance provenance_;
};

// Ordered, immutable list of labelled reviews with cached per-label counts.
class Corpus {
 public:
  Corpus() = default;
  explicit Corpus(std::vector<LabeledReview> reviews);

  const std::vector<LabeledReview>& reviews() const { return reviews_; }
  std::size_t size() const { return reviews_.size(); }
  bool empty() const { return reviews_.empty(); }
  std::size_t count(Label label) const { return counts_[index_of(label)]; }

  // Reviews carrying `label`, order preserved.
  Corpus filter(Label label) const;

  bool operator==(const Corpus&) const = default;

 private:
  std::vector<LabeledReview> reviews_;
  std::array<std::size_t, 2> counts_{};
};

// Parses raw star-rated reviews. CSV needs a `stars,text` header (RFC 4180
// quoting); JSONL needs `stars` and `text` on every object. Errors name the
// line and field.
std::vector<RawReview> load_reviews(std::istream& in, Format format);

// 4-5 stars are Positive, 1-2 Negative, 3 is excluded (nullopt).
std::optional<LabeledReview> binarize(const RawReview& raw);

struct IngestResult {
  Corpus corpus;
  std::size_t excluded = 0;  // three-star reviews dropped by binarize
};

// load_reviews + binarize. JSONL records that already carry `label` (and
// optionally `provenance`) are taken as-is; `stars` is then optional.
IngestResult ingest(std::istream& in, Format format);

struct Split {
  Corpus train;
  Corpus test;
};

// Seeded stratified holdout: the test set gets floor(n/2) of one class and
// ceil(n/2) of the other (the extra going to the larger class, Positive on a
// tie). Both sides keep the input order. Only genuine corpora may be split.
Split partition_holdout(const Corpus& corpus, std::size_t holdout_size, std::uint64_t seed);

// Genuine records first, then synthetic ones.
Corpus concat(const Corpus& genuine, const Corpus& synthetic);

// One JSON object per line with text, label and provenance.
void write_jsonl(std::ostream& out, const Corpus& corpus);
std::string to_jsonl(const Corpus& corpus);
Corpus read_jsonl(std::istream& in);

// Picks the format from the file extension (.csv, otherwise JSONL).
Format format_for_path(std::string_view path);

}  // namespace augbench
