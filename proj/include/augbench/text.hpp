#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "augbench/corpus.hpp"

namespace augbench {

// Lowercase, no whitespace, non-empty.
using Token = std::string;
using TokenId = std::uint32_t;

// Lowercases (Unicode simple case mapping), replaces every code point that
// is not a letter, a decimal digit or U+0027 with a space, and splits on
// whitespace. Invalid UTF-8 sequences count as separators.
std::vector<Token> tokenize(std::string_view text);

// Tokens joined by single spaces.
std::string join(std::span<const Token> tokens);

class Vocabulary {
 public:
  Vocabulary() = default;
  // Ids follow first appearance. Duplicates are rejected.
  explicit Vocabulary(std::vector<Token> tokens);

  // Every distinct token of the corpus under tokenize(), in first-seen
  // order. Throws DataError when the corpus has no tokens.
  static Vocabulary build(const Corpus& corpus);

  std::size_t size() const { return tokens_.size(); }
  std::optional<TokenId> id(std::string_view token) const;
  const Token& token(TokenId id) const { return tokens_.at(id); }
  const std::vector<Token>& tokens() const { return tokens_; }

  // JSON array of tokens in id order.
  std::string to_json() const;
  static Vocabulary from_json(std::string_view json);

  bool operator==(const Vocabulary& other) const { return tokens_ == other.tokens_; }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
  };
  std::vector<Token> tokens_;
  std::unordered_map<Token, TokenId, Hash, std::equal_to<>> ids_;
};

// Sparse bag of words. Zero counts are never stored.
struct CountVector {
  std::size_t vocabulary_size = 0;
  std::map<TokenId, std::uint32_t> counts;

  std::uint64_t total() const;
};

// Out-of-vocabulary tokens are dropped.
CountVector vectorize(std::span<const Token> tokens, const Vocabulary& vocab);

}  // namespace augbench
