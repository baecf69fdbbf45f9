#include "augbench/text.hpp"

#include <json.hpp>
#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include "augbench/error.hpp"

namespace augbench {

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  Token current;
  const auto* p = reinterpret_cast<const uint8_t*>(text.data());
  const int32_t n = static_cast<int32_t>(text.size());
  int32_t i = 0;
  auto flush = [&] {
    if (!current.empty()) tokens.push_back(std::move(current));
    current.clear();
  };
  while (i < n) {
    UChar32 c;
    U8_NEXT(p, i, n, c);
    if (c < 0) {
      flush();
      continue;
    }
    c = u_tolower(c);
    if (c == U'\'' || u_isalpha(c) || u_isdigit(c)) {
      char buf[U8_MAX_LENGTH];
      int32_t len = 0;
      U8_APPEND_UNSAFE(buf, len, c);
      current.append(buf, static_cast<std::size_t>(len));
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

std::string join(std::span<const Token> tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out.push_back(' ');
    out += t;
  }
  return out;
}

Vocabulary::Vocabulary(std::vector<Token> tokens) : tokens_(std::move(tokens)) {
  ids_.reserve(tokens_.size());
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (tokens_[i].empty()) throw DataError("vocabulary contains an empty token");
    if (!ids_.emplace(tokens_[i], static_cast<TokenId>(i)).second)
      throw DataError("vocabulary contains duplicate token '" + tokens_[i] + "'");
  }
}

Vocabulary Vocabulary::build(const Corpus& corpus) {
  Vocabulary v;
  for (const auto& review : corpus.reviews()) {
    for (auto& tok : tokenize(review.text())) {
      if (v.ids_.contains(tok)) continue;
      v.ids_.emplace(tok, static_cast<TokenId>(v.tokens_.size()));
      v.tokens_.push_back(std::move(tok));
    }
  }
  if (v.tokens_.empty()) throw DataError("cannot build a vocabulary from a corpus with no tokens");
  return v;
}

std::optional<TokenId> Vocabulary::id(std::string_view token) const {
  const auto it = ids_.find(token);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

std::string Vocabulary::to_json() const { return nlohmann::json(tokens_).dump(); }

Vocabulary Vocabulary::from_json(std::string_view text) {
  try {
    return Vocabulary(nlohmann::json::parse(text).get<std::vector<Token>>());
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed vocabulary JSON: ") + e.what());
  }
}

std::uint64_t CountVector::total() const {
  std::uint64_t sum = 0;
  for (const auto& [id, c] : counts) sum += c;
  return sum;
}

CountVector vectorize(std::span<const Token> tokens, const Vocabulary& vocab) {
  CountVector v;
  v.vocabulary_size = vocab.size();
  for (const auto& t : tokens)
    if (auto id = vocab.id(t)) ++v.counts[*id];
  return v;
}

}  // namespace augbench
