#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "augbench/corpus.hpp"
#include "augbench/promptaid.hpp"
#include "augbench/text.hpp"

namespace augbench {

struct GenerationParams {
  std::size_t target_length = 70;
  std::size_t max_length = 140;
  double temperature = 1.0;
  std::size_t count = 1;

  // Throws UsageError unless max_length >= target_length >= 1,
  // temperature > 0 and count >= 1.
  void validate() const;
};

// Per-class back-off n-gram language model.
//
// Every position of every training review (including the end-of-review
// position) is recorded once per order k in 1..max_order, keyed by the k-1
// preceding tokens. Contexts never reach back past the start of a review.
class GenerativeModel {
 public:
  // Next-token id reserved for end of review.
  static constexpr TokenId kEnd = 0xFFFFFFFFu;
  using Context = std::vector<TokenId>;
  using NextCounts = std::map<TokenId, std::uint64_t>;
  using ContextTable = std::map<Context, NextCounts>;

  // Throws on an empty or mixed-label corpus, or max_order < 2.
  static GenerativeModel fit(const Corpus& class_corpus, int max_order = 3);

  // Id of a token in the model vocabulary, or kUnknown.
  TokenId id(std::string_view token) const;
  static constexpr TokenId kUnknown = 0xFFFFFFFEu;

  Label class_label() const { return label_; }
  int max_order() const { return max_order_; }
  std::size_t trained_on() const { return trained_on_; }
  const Vocabulary& vocabulary() const { return vocab_; }

  // Table for contexts of length order-1.
  const ContextTable& table(int order) const { return tables_.at(static_cast<std::size_t>(order - 1)); }

  // Counts for a context given as tokens; nullptr when unseen.
  const NextCounts* lookup(const std::vector<Token>& context) const;

  // Deterministic JSON dump (used for artifact digests and replay).
  std::string to_json() const;

 private:
  Label label_ = Label::Negative;
  int max_order_ = 3;
  std::size_t trained_on_ = 0;
  Vocabulary vocab_;
  std::vector<ContextTable> tables_;
};

// Continues `prompt` params.count times from one seeded stream. Each output
// starts with the tokenized prompt. Sampling uses the longest context with
// observations, with counts raised to 1/temperature. Below target_length the
// end marker is never drawn; from target_length on, generation stops at the
// first context that can end. max_length (prompt included) is a hard cap.
std::vector<std::string> generate(const GenerativeModel& model, const Prompt& prompt,
                                  const GenerationParams& params, std::uint64_t seed);

// Seed used for prompt `index` within a batch.
std::uint64_t prompt_seed(std::uint64_t seed, std::size_t index);

// params.count reviews per prompt, labelled with the model's class and
// Synthetic provenance. Prompts must carry the model's label.
Corpus generate_batch(const GenerativeModel& model, const std::vector<Prompt>& prompts,
                      const GenerationParams& params, std::uint64_t seed);

// Same, with an individual count per prompt.
Corpus generate_batch(const GenerativeModel& model, const std::vector<Prompt>& prompts,
                      const std::vector<std::size_t>& counts, const GenerationParams& params,
                      std::uint64_t seed);

// Spreads `total` over `n` prompts: the first total % n get one extra.
std::vector<std::size_t> spread_count(std::size_t total, std::size_t n);

struct Rejection {
  std::size_t line = 0;
  std::string reason;
};

struct ImportResult {
  Corpus corpus;
  std::vector<Rejection> rejected;
};

// Reads externally generated reviews (JSONL with `text` and `label`). Every
// kept record becomes Synthetic; records of another label are reported and
// skipped. Malformed lines throw DataError.
ImportResult import_synthetic(std::istream& in, Label expected_label);

}  // namespace augbench
