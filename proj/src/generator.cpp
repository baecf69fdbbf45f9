#include "augbench/generator.hpp"

#include <algorithm>
#include <cmath>
#include <istream>

#include <json.hpp>

#include "augbench/error.hpp"
#include "augbench/rng.hpp"
#include "utf8.hpp"

namespace augbench {

void GenerationParams::validate() const {
  if (target_length < 1) throw UsageError("target length must be at least 1");
  if (max_length < target_length) throw UsageError("max length must be >= target length");
  if (!(temperature > 0.0) || !std::isfinite(temperature)) throw UsageError("temperature must be positive");
  if (count < 1) throw UsageError("count must be at least 1");
}

GenerativeModel GenerativeModel::fit(const Corpus& class_corpus, int max_order) {
  if (max_order < 2) throw UsageError("generator max order must be >= 2");
  if (class_corpus.empty()) throw DataError("cannot fit a generator on an empty corpus");
  const Label label = class_corpus.reviews().front().label();
  if (class_corpus.count(label) != class_corpus.size())
    throw DataError("generator corpus mixes Positive and Negative reviews");

  GenerativeModel m;
  m.label_ = label;
  m.max_order_ = max_order;
  m.trained_on_ = class_corpus.size();
  m.vocab_ = Vocabulary::build(class_corpus);
  m.tables_.resize(static_cast<std::size_t>(max_order));

  std::vector<TokenId> seq;
  for (const auto& review : class_corpus.reviews()) {
    seq.clear();
    for (const auto& tok : tokenize(review.text())) seq.push_back(*m.vocab_.id(tok));
    seq.push_back(kEnd);
    for (std::size_t i = 0; i < seq.size(); ++i) {
      for (std::size_t k = 1; k <= static_cast<std::size_t>(max_order) && k - 1 <= i; ++k) {
        Context ctx(seq.begin() + static_cast<std::ptrdiff_t>(i - (k - 1)), seq.begin() + static_cast<std::ptrdiff_t>(i));
        ++m.tables_[k - 1][std::move(ctx)][seq[i]];
      }
    }
  }
  return m;
}

TokenId GenerativeModel::id(std::string_view token) const { return vocab_.id(token).value_or(kUnknown); }

const GenerativeModel::NextCounts* GenerativeModel::lookup(const std::vector<Token>& context) const {
  if (context.size() >= tables_.size()) return nullptr;
  Context ids;
  for (const auto& t : context) ids.push_back(id(t));
  const auto& table = tables_[context.size()];
  const auto it = table.find(ids);
  return it == table.end() ? nullptr : &it->second;
}

std::string GenerativeModel::to_json() const {
  nlohmann::ordered_json out;
  out["class_label"] = to_string(label_);
  out["max_order"] = max_order_;
  out["trained_on"] = trained_on_;
  out["vocabulary"] = vocab_.tokens();
  auto encode = [](TokenId id) { return id == kEnd ? std::int64_t{-1} : std::int64_t{id}; };
  nlohmann::ordered_json tables = nlohmann::ordered_json::array();
  for (const auto& table : tables_) {
    nlohmann::ordered_json t = nlohmann::ordered_json::array();
    for (const auto& [ctx, next] : table) {
      nlohmann::ordered_json row;
      row["context"] = ctx;
      nlohmann::ordered_json n = nlohmann::ordered_json::array();
      for (const auto& [id, c] : next) n.push_back({encode(id), c});
      row["next"] = std::move(n);
      t.push_back(std::move(row));
    }
    tables.push_back(std::move(t));
  }
  out["tables"] = std::move(tables);
  return out.dump();
}

namespace {

struct Candidate {
  TokenId id;
  double weight;
};

// Picks the next token, or nullopt to stop.
std::optional<TokenId> next_token(const GenerativeModel& model, const std::vector<TokenId>& seq,
                                  bool allow_end, double temperature, Rng& rng,
                                  std::vector<Candidate>& scratch) {
  const std::size_t longest = std::min<std::size_t>(static_cast<std::size_t>(model.max_order()), seq.size() + 1);
  for (std::size_t k = longest; k >= 1; --k) {
    const auto& table = model.table(static_cast<int>(k));
    const GenerativeModel::Context ctx(seq.end() - static_cast<std::ptrdiff_t>(k - 1), seq.end());
    const auto it = table.find(ctx);
    if (it == table.end()) continue;
    const auto& next = it->second;
    if (allow_end && next.contains(GenerativeModel::kEnd)) return std::nullopt;

    scratch.clear();
    std::uint64_t max_count = 0;
    for (const auto& [id, c] : next) {
      if (id == GenerativeModel::kEnd) continue;
      scratch.push_back({id, static_cast<double>(c)});
      max_count = std::max(max_count, c);
    }
    if (scratch.empty()) continue;  // only the end marker here; back off
    if (temperature != 1.0) {
      // count^(1/T), scaled by max^(1/T) so small temperatures cannot overflow.
      const double log_max = std::log(static_cast<double>(max_count));
      for (auto& cand : scratch) cand.weight = std::exp((std::log(cand.weight) - log_max) / temperature);
    }
    double total = 0.0;
    for (const auto& cand : scratch) total += cand.weight;
    double u = rng.unit() * total;
    for (const auto& cand : scratch) {
      if (u < cand.weight) return cand.id;
      u -= cand.weight;
    }
    return scratch.back().id;
  }
  return std::nullopt;
}

}  // namespace

std::vector<std::string> generate(const GenerativeModel& model, const Prompt& prompt,
                                  const GenerationParams& params, std::uint64_t seed) {
  params.validate();
  const auto prompt_tokens = tokenize(prompt.text);
  if (prompt_tokens.empty()) throw UsageError("prompt '" + prompt.text + "' has no tokens");
  if (prompt_tokens.size() > params.max_length)
    throw UsageError("prompt is longer than the maximum output length");

  std::vector<TokenId> prompt_ids;
  for (const auto& t : prompt_tokens) prompt_ids.push_back(model.id(t));

  Rng rng(seed);
  std::vector<std::string> outputs;
  outputs.reserve(params.count);
  std::vector<TokenId> seq;
  std::vector<Candidate> scratch;
  for (std::size_t n = 0; n < params.count; ++n) {
    seq = prompt_ids;
    std::string text = join(prompt_tokens);
    while (seq.size() < params.max_length) {
      const auto next = next_token(model, seq, seq.size() >= params.target_length, params.temperature, rng, scratch);
      if (!next) break;
      seq.push_back(*next);
      text.push_back(' ');
      text += model.vocabulary().token(*next);
    }
    outputs.push_back(std::move(text));
  }
  return outputs;
}

std::uint64_t prompt_seed(std::uint64_t seed, std::size_t index) { return seed ^ static_cast<std::uint64_t>(index); }

std::vector<std::size_t> spread_count(std::size_t total, std::size_t n) {
  if (n == 0) return {};
  std::vector<std::size_t> counts(n, total / n);
  for (std::size_t i = 0; i < total % n; ++i) ++counts[i];
  return counts;
}

Corpus generate_batch(const GenerativeModel& model, const std::vector<Prompt>& prompts,
                      const std::vector<std::size_t>& counts, const GenerationParams& params,
                      std::uint64_t seed) {
  if (counts.size() != prompts.size()) throw UsageError("one count is needed per prompt");
  for (std::size_t i = 0; i < prompts.size(); ++i)
    if (prompts[i].class_label != model.class_label())
      throw DataError("prompt " + std::to_string(i + 1) + " is labelled " + std::string(to_string(prompts[i].class_label)) +
                      " but the model generates " + std::string(to_string(model.class_label())));

  std::vector<LabeledReview> reviews;
  for (std::size_t i = 0; i < prompts.size(); ++i) {
    if (counts[i] == 0) continue;
    GenerationParams p = params;
    p.count = counts[i];
    for (auto& text : generate(model, prompts[i], p, prompt_seed(seed, i)))
      reviews.emplace_back(std::move(text), model.class_label(), Provenance::Synthetic);
  }
  return Corpus(std::move(reviews));
}

Corpus generate_batch(const GenerativeModel& model, const std::vector<Prompt>& prompts,
                      const GenerationParams& params, std::uint64_t seed) {
  params.validate();
  return generate_batch(model, prompts, std::vector<std::size_t>(prompts.size(), params.count), params, seed);
}

ImportResult import_synthetic(std::istream& in, Label expected_label) {
  ImportResult result;
  std::vector<LabeledReview> kept;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (detail::trim(line).empty()) continue;
    const auto where = "line " + std::to_string(n);
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw DataError(where + ": malformed JSON: " + e.what());
    }
    if (!obj.is_object()) throw DataError(where + ": expected a JSON object");
    const auto text = obj.find("text");
    if (text == obj.end() || !text->is_string()) throw DataError(where + ", field 'text': missing or not a string");
    const auto label_field = obj.find("label");
    if (label_field == obj.end() || !label_field->is_string())
      throw DataError(where + ", field 'label': missing or not a string");
    const auto label = parse_label(label_field->get<std::string>());
    if (!label) throw DataError(where + ", field 'label': unknown value '" + label_field->get<std::string>() + "'");
    auto body = text->get<std::string>();
    if (!detail::valid_utf8(body)) throw DataError(where + ", field 'text': invalid UTF-8");
    if (detail::trim(body).empty()) throw DataError(where + ", field 'text': empty text");
    if (*label != expected_label) {
      result.rejected.push_back({n, "label " + std::string(to_string(*label)) + " does not match expected " +
                                        std::string(to_string(expected_label))});
      continue;
    }
    kept.emplace_back(std::move(body), *label, Provenance::Synthetic);
  }
  result.corpus = Corpus(std::move(kept));
  return result;
}

}  // namespace augbench
