#include "augbench/promptaid.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "augbench/error.hpp"
#include "augbench/rng.hpp"
#include "utf8.hpp"

namespace augbench {

using nlohmann::ordered_json;

NgramTable count_ngrams(const Corpus& corpus, int order) {
  if (order < 1 || order > 3) throw UsageError("n-gram order must be 1, 2 or 3 (got " + std::to_string(order) + ")");
  std::map<std::vector<Token>, std::uint64_t> counts;
  for (const auto& review : corpus.reviews()) {
    const auto tokens = tokenize(review.text());
    const auto n = static_cast<std::size_t>(order);
    for (std::size_t i = 0; i + n <= tokens.size(); ++i)
      ++counts[std::vector<Token>(tokens.begin() + i, tokens.begin() + i + n)];
  }
  NgramTable table;
  table.order = order;
  table.rows.reserve(counts.size());
  for (auto& [ngram, count] : counts) table.rows.push_back({ngram, count});
  // The map already yields lexicographic order; a stable sort keeps it for ties.
  std::stable_sort(table.rows.begin(), table.rows.end(),
                   [](const NgramRow& a, const NgramRow& b) { return a.count > b.count; });
  return table;
}

namespace {

std::string format_pct(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

double parse_number(std::string_view s, std::string_view whole) {
  s = detail::trim(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw UsageError("bad band specification '" + std::string(whole) + "'");
  return v;
}

}  // namespace

std::vector<BandSpec> parse_bands(std::string_view spec) {
  std::vector<BandSpec> out;
  std::size_t start = 0;
  while (start <= spec.size()) {
    auto end = spec.find(',', start);
    if (end == std::string_view::npos) end = spec.size();
    const auto item = detail::trim(spec.substr(start, end - start));
    const auto dash = item.find('-');
    if (item.empty() || dash == std::string_view::npos) throw UsageError("bad band specification '" + std::string(spec) + "'");
    const double lo = parse_number(item.substr(0, dash), spec);
    const double hi = parse_number(item.substr(dash + 1), spec);
    out.push_back({format_pct(lo) + "% - " + format_pct(hi) + "%", lo, hi});
    start = end + 1;
  }
  return out;
}

std::vector<BandSpec> default_bands() { return parse_bands("80-100,50-80,25-50"); }

double count_percentile(std::uint64_t count, std::uint64_t min_count, std::uint64_t max_count) {
  if (max_count <= min_count) return 100.0;
  return 100.0 * static_cast<double>(count - min_count) / static_cast<double>(max_count - min_count);
}

BandedTable band_table(const NgramTable& table, const std::vector<BandSpec>& bands) {
  for (const auto& b : bands) {
    if (!(b.lo >= 0.0 && b.hi <= 100.0 && b.lo < b.hi))
      throw UsageError("band '" + b.label + "' must satisfy 0 <= lo < hi <= 100");
  }
  for (std::size_t i = 0; i < bands.size(); ++i)
    for (std::size_t j = i + 1; j < bands.size(); ++j)
      if (bands[i].lo < bands[j].hi && bands[j].lo < bands[i].hi)
        throw UsageError("bands '" + bands[i].label + "' and '" + bands[j].label + "' overlap");

  BandedTable out;
  out.order = table.order;
  for (const auto& b : bands) out.bands.push_back({b, {}});
  std::stable_sort(out.bands.begin(), out.bands.end(), [](const Band& a, const Band& b) { return a.spec.lo > b.spec.lo; });
  if (table.rows.empty()) return out;

  const auto max_count = table.rows.front().count;
  const auto min_count = table.rows.back().count;
  for (const auto& row : table.rows) {
    const double p = count_percentile(row.count, min_count, max_count);
    // Highest band first, so a shared endpoint goes to the higher band.
    for (auto& band : out.bands) {
      if (band.spec.lo <= p && p <= band.spec.hi) {
        band.rows.push_back(row);
        break;
      }
    }
  }
  return out;
}

namespace {

// Draws without replacement; refills once every item has been used.
class Pool {
 public:
  explicit Pool(const BandedTable& table) {
    for (const auto& band : table.bands) {
      if (band.rows.empty()) continue;
      for (const auto& row : band.rows) items_.push_back(row.ngram);
      break;
    }
  }

  bool empty() const { return items_.empty(); }

  const std::vector<Token>& draw(Rng& rng) {
    if (left_ == 0) left_ = items_.size();
    const std::size_t j = rng.below(left_);
    --left_;
    std::swap(items_[j], items_[left_]);
    return items_[left_];
  }

 private:
  std::vector<std::vector<Token>> items_;
  std::size_t left_ = 0;
};

std::string compose(std::initializer_list<const std::vector<Token>*> parts) {
  std::vector<Token> all;
  for (const auto* p : parts) all.insert(all.end(), p->begin(), p->end());
  return join(all);
}

}  // namespace

std::vector<Prompt> suggest_prompts(const BandedTable& words, const BandedTable& bigrams,
                                    const BandedTable& trigrams, Label label, std::size_t k,
                                    std::uint64_t seed) {
  if (k == 0) throw UsageError("prompt count must be positive");
  Pool word_pool(words), bigram_pool(bigrams), trigram_pool(trigrams);
  const bool available[3] = {
      !trigram_pool.empty(),
      !bigram_pool.empty() && !word_pool.empty(),
      !trigram_pool.empty() && !bigram_pool.empty(),
  };
  if (!available[0] && !available[1] && !available[2])
    throw DataError("no prompt can be composed: top bands are empty");

  Rng rng(seed);
  std::vector<Prompt> prompts;
  prompts.reserve(k);
  std::size_t shape = 0;
  while (prompts.size() < k) {
    while (!available[shape % 3]) ++shape;
    std::string text;
    switch (shape % 3) {
      case 0:
        text = join(trigram_pool.draw(rng));
        break;
      case 1: {
        const auto& bi = bigram_pool.draw(rng);
        text = compose({&bi, &word_pool.draw(rng)});
        break;
      }
      default: {
        const auto& tri = trigram_pool.draw(rng);
        text = compose({&tri, &bigram_pool.draw(rng)});
        break;
      }
    }
    prompts.push_back({std::move(text), label});
    ++shape;
  }
  return prompts;
}

std::vector<Prompt> suggest_prompts(const Corpus& class_corpus, Label label, const std::vector<BandSpec>& bands,
                                    std::size_t k, std::uint64_t seed) {
  return suggest_prompts(band_table(count_ngrams(class_corpus, 1), bands),
                         band_table(count_ngrams(class_corpus, 2), bands),
                         band_table(count_ngrams(class_corpus, 3), bands), label, k, seed);
}

void write_prompts(std::ostream& out, const std::vector<Prompt>& prompts) {
  for (const auto& p : prompts) {
    ordered_json obj;
    obj["text"] = p.text;
    obj["class_label"] = to_string(p.class_label);
    out << obj.dump() << '\n';
  }
}

std::vector<Prompt> read_prompts(std::istream& in) {
  std::vector<Prompt> prompts;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (detail::trim(line).empty()) continue;
    const auto where = "prompt line " + std::to_string(n) + ": ";
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw DataError(where + "malformed JSON: " + e.what());
    }
    if (!obj.is_object() || !obj.contains("text") || !obj["text"].is_string())
      throw DataError(where + "expected an object with a string 'text'");
    if (!obj.contains("class_label") || !obj["class_label"].is_string())
      throw DataError(where + "missing 'class_label'");
    const auto label = parse_label(obj["class_label"].get<std::string>());
    if (!label) throw DataError(where + "unknown class_label '" + obj["class_label"].get<std::string>() + "'");
    auto text = obj["text"].get<std::string>();
    if (tokenize(text).empty()) throw DataError(where + "prompt has no tokens");
    prompts.push_back({std::move(text), *label});
  }
  return prompts;
}

namespace {

const Band* band_of(const BandedTable& banded, const NgramRow& row) {
  for (const auto& band : banded.bands)
    if (std::find(band.rows.begin(), band.rows.end(), row) != band.rows.end()) return &band;
  return nullptr;
}

}  // namespace

std::string table_to_json(const NgramTable& table, const BandedTable& banded, std::size_t top) {
  ordered_json out;
  out["order"] = table.order;
  out["distinct"] = table.rows.size();
  const auto max_count = table.rows.empty() ? 0 : table.rows.front().count;
  const auto min_count = table.rows.empty() ? 0 : table.rows.back().count;
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < table.rows.size() && i < top; ++i) {
    const auto& row = table.rows[i];
    ordered_json r;
    r["ngram"] = join(row.ngram);
    r["count"] = row.count;
    r["percentile"] = count_percentile(row.count, min_count, max_count);
    const Band* band = band_of(banded, row);
    r["band"] = band ? ordered_json(band->spec.label) : ordered_json(nullptr);
    rows.push_back(std::move(r));
  }
  out["rows"] = std::move(rows);
  ordered_json bands = ordered_json::array();
  for (const auto& band : banded.bands) {
    ordered_json b;
    b["label"] = band.spec.label;
    b["lo"] = band.spec.lo;
    b["hi"] = band.spec.hi;
    b["size"] = band.rows.size();
    ordered_json ngrams = ordered_json::array();
    for (std::size_t i = 0; i < band.rows.size() && i < top; ++i) ngrams.push_back(join(band.rows[i].ngram));
    b["ngrams"] = std::move(ngrams);
    bands.push_back(std::move(b));
  }
  out["bands"] = std::move(bands);
  return out.dump(2);
}

std::string table_to_text(const NgramTable& table, const BandedTable& banded, std::size_t top) {
  static const char* const kNames[] = {"", "Words", "Bigrams", "Trigrams"};
  std::ostringstream os;
  os << kNames[table.order] << " (" << table.rows.size() << " distinct)\n";
  const auto max_count = table.rows.empty() ? 0 : table.rows.front().count;
  const auto min_count = table.rows.empty() ? 0 : table.rows.back().count;
  char buf[64];
  for (std::size_t i = 0; i < table.rows.size() && i < top; ++i) {
    const auto& row = table.rows[i];
    const Band* band = band_of(banded, row);
    std::snprintf(buf, sizeof buf, "%5zu  %7llu  %6.2f  %-12s  ", i + 1, static_cast<unsigned long long>(row.count),
                  count_percentile(row.count, min_count, max_count), band ? band->spec.label.c_str() : "-");
    os << buf << join(row.ngram) << '\n';
  }
  for (const auto& band : banded.bands) {
    os << band.spec.label << ":";
    for (std::size_t i = 0; i < band.rows.size() && i < top; ++i) os << (i ? ", \"" : " \"") << join(band.rows[i].ngram) << '"';
    if (band.rows.size() > top) os << ", ... (" << band.rows.size() << " total)";
    os << '\n';
  }
  return os.str();
}

}  // namespace augbench
