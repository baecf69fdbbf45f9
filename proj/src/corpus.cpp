#include "augbench/corpus.hpp"

#include <algorithm>
#include <istream>
#include <iterator>
#include <numeric>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "augbench/error.hpp"
#include "augbench/rng.hpp"
#include "utf8.hpp"

namespace augbench {

using nlohmann::json;

std::string_view to_string(Label label) {
  return label == Label::Positive ? "Positive" : "Negative";
}

std::string_view to_string(Provenance provenance) {
  return provenance == Provenance::Synthetic ? "Synthetic" : "Genuine";
}

std::optional<Label> parse_label(std::string_view s) {
  if (s == "Positive" || s == "pos") return Label::Positive;
  if (s == "Negative" || s == "neg") return Label::Negative;
  return std::nullopt;
}

std::optional<Provenance> parse_provenance(std::string_view s) {
  if (s == "Genuine") return Provenance::Genuine;
  if (s == "Synthetic") return Provenance::Synthetic;
  return std::nullopt;
}

LabeledReview::LabeledReview(std::string text, Label label, Provenance provenance)
    : text_(std::move(text)), label_(label), provenance_(provenance) {
  if (detail::trim(text_).empty()) throw DataError("review text is empty");
}

Corpus::Corpus(std::vector<LabeledReview> reviews) : reviews_(std::move(reviews)) {
  for (const auto& r : reviews_) ++counts_[index_of(r.label())];
}

Corpus Corpus::filter(Label label) const {
  std::vector<LabeledReview> kept;
  std::copy_if(reviews_.begin(), reviews_.end(), std::back_inserter(kept),
               [label](const LabeledReview& r) { return r.label() == label; });
  return Corpus(std::move(kept));
}

namespace {

std::string line_error(std::size_t line, std::string_view field, std::string_view msg) {
  std::ostringstream os;
  os << "line " << line;
  if (!field.empty()) os << ", field '" << field << "'";
  os << ": " << msg;
  return os.str();
}

int parse_stars(std::string_view field, std::size_t line) {
  const auto s = detail::trim(field);
  if (s.empty() || s.size() > 3 || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw DataError(line_error(line, "stars", "not an integer: '" + std::string(field) + "'"));
  const int v = std::stoi(std::string(s));
  if (v < 1 || v > 5) throw DataError(line_error(line, "stars", "stars out of range: " + std::to_string(v)));
  return v;
}

std::string checked_text(std::string text, std::size_t line) {
  if (!detail::valid_utf8(text)) throw DataError(line_error(line, "text", "invalid UTF-8"));
  if (detail::trim(text).empty()) throw DataError(line_error(line, "text", "empty text"));
  return text;
}

// RFC 4180 record reader. Quoted fields may span lines.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  // Returns false at end of input. `start_line` is the 1-based line the
  // record began on.
  bool next(std::vector<std::string>& fields, std::size_t& start_line) {
    fields.clear();
    int c = in_.get();
    while (c == '\r' || c == '\n') {  // skip blank lines
      if (c == '\n') ++line_;
      c = in_.get();
    }
    if (c == EOF) return false;
    start_line = line_;
    std::string field;
    bool quoted = false;
    bool was_quoted = false;
    for (;; c = in_.get()) {
      if (quoted) {
        if (c == EOF) throw DataError(line_error(start_line, "", "unterminated quoted field"));
        if (c == '"') {
          if (in_.peek() == '"') {
            in_.get();
            field.push_back('"');
          } else {
            quoted = false;
          }
        } else {
          if (c == '\n') ++line_;
          field.push_back(static_cast<char>(c));
        }
        continue;
      }
      if (c == '"') {
        if (!field.empty() || was_quoted)
          throw DataError(line_error(line_, "", "stray quote inside unquoted field"));
        quoted = was_quoted = true;
      } else if (c == ',') {
        fields.push_back(std::move(field));
        field.clear();
        was_quoted = false;
      } else if (c == '\n' || c == EOF) {
        if (c == '\n') ++line_;
        fields.push_back(std::move(field));
        return true;
      } else if (c == '\r') {
        if (in_.peek() != '\n') field.push_back('\r');
      } else {
        if (was_quoted) throw DataError(line_error(line_, "", "characters after closing quote"));
        field.push_back(static_cast<char>(c));
      }
    }
  }

 private:
  std::istream& in_;
  std::size_t line_ = 1;
};

void strip_bom(std::istream& in) {
  if (in.peek() != 0xEF) return;
  char bom[3];
  in.read(bom, 3);
  if (in.gcount() != 3 || bom[1] != '\xBB' || bom[2] != '\xBF')
    throw DataError(line_error(1, "", "invalid UTF-8"));
}

struct CsvColumns {
  std::size_t stars;
  std::size_t text;
  std::size_t width;
};

CsvColumns read_csv_header(CsvReader& reader) {
  std::vector<std::string> header;
  std::size_t line = 1;
  if (!reader.next(header, line)) return {0, 0, 0};
  std::optional<std::size_t> stars, text;
  for (std::size_t i = 0; i < header.size(); ++i) {
    const auto name = detail::trim(header[i]);
    if (name == "stars") stars = i;
    if (name == "text") text = i;
  }
  if (!stars) throw DataError(line_error(line, "stars", "header has no 'stars' column"));
  if (!text) throw DataError(line_error(line, "text", "header has no 'text' column"));
  return {*stars, *text, header.size()};
}

template <class OnRecord>
void for_each_jsonl(std::istream& in, OnRecord&& on_record) {
  strip_bom(in);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (detail::trim(line).empty()) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw DataError(line_error(n, "", std::string("malformed JSON: ") + e.what()));
    }
    if (!obj.is_object()) throw DataError(line_error(n, "", "expected a JSON object"));
    on_record(obj, n);
  }
}

int json_stars(const json& obj, std::size_t line) {
  const auto it = obj.find("stars");
  if (it == obj.end()) throw DataError(line_error(line, "stars", "missing"));
  if (!it->is_number_integer()) throw DataError(line_error(line, "stars", "not an integer: " + it->dump()));
  const auto v = it->get<std::int64_t>();
  if (v < 1 || v > 5) throw DataError(line_error(line, "stars", "stars out of range: " + std::to_string(v)));
  return static_cast<int>(v);
}

std::string json_text(const json& obj, std::size_t line) {
  const auto it = obj.find("text");
  if (it == obj.end()) throw DataError(line_error(line, "text", "missing"));
  if (!it->is_string()) throw DataError(line_error(line, "text", "not a string"));
  return checked_text(it->get<std::string>(), line);
}

template <class T, class Parse>
std::optional<T> json_enum(const json& obj, const char* key, std::size_t line, Parse parse) {
  const auto it = obj.find(key);
  if (it == obj.end()) return std::nullopt;
  if (!it->is_string()) throw DataError(line_error(line, key, "not a string"));
  auto v = parse(it->get<std::string>());
  if (!v) throw DataError(line_error(line, key, "unknown value '" + it->get<std::string>() + "'"));
  return v;
}

}  // namespace

std::vector<RawReview> load_reviews(std::istream& in, Format format) {
  std::vector<RawReview> out;
  if (format == Format::Jsonl) {
    for_each_jsonl(in, [&](const json& obj, std::size_t line) {
      out.push_back({json_stars(obj, line), json_text(obj, line)});
    });
    return out;
  }
  strip_bom(in);
  CsvReader reader(in);
  const auto cols = read_csv_header(reader);
  std::vector<std::string> fields;
  std::size_t line = 0;
  while (reader.next(fields, line)) {
    if (fields.size() != cols.width)
      throw DataError(line_error(line, "", "expected " + std::to_string(cols.width) + " fields, found " +
                                               std::to_string(fields.size())));
    out.push_back({parse_stars(fields[cols.stars], line), checked_text(std::move(fields[cols.text]), line)});
  }
  return out;
}

std::optional<LabeledReview> binarize(const RawReview& raw) {
  if (raw.stars >= 4) return LabeledReview(raw.text, Label::Positive, Provenance::Genuine);
  if (raw.stars <= 2) return LabeledReview(raw.text, Label::Negative, Provenance::Genuine);
  return std::nullopt;
}

IngestResult ingest(std::istream& in, Format format) {
  IngestResult result;
  std::vector<LabeledReview> reviews;
  auto keep = [&](const RawReview& raw) {
    if (auto r = binarize(raw)) {
      reviews.push_back(std::move(*r));
    } else {
      ++result.excluded;
    }
  };
  if (format == Format::Csv) {
    for (const auto& raw : load_reviews(in, format)) keep(raw);
  } else {
    for_each_jsonl(in, [&](const json& obj, std::size_t line) {
      auto label = json_enum<Label>(obj, "label", line, parse_label);
      if (!label) {
        keep({json_stars(obj, line), json_text(obj, line)});
        return;
      }
      auto prov = json_enum<Provenance>(obj, "provenance", line, parse_provenance);
      reviews.emplace_back(json_text(obj, line), *label, prov.value_or(Provenance::Genuine));
    });
  }
  result.corpus = Corpus(std::move(reviews));
  return result;
}

Split partition_holdout(const Corpus& corpus, std::size_t holdout_size, std::uint64_t seed) {
  if (holdout_size > corpus.size())
    throw DataError("holdout size " + std::to_string(holdout_size) + " exceeds corpus size " +
                    std::to_string(corpus.size()));
  for (const auto& r : corpus.reviews())
    if (r.provenance() != Provenance::Genuine) throw DataError("holdout source contains synthetic reviews");

  const std::size_t neg_avail = corpus.count(Label::Negative);
  const std::size_t pos_avail = corpus.count(Label::Positive);
  std::size_t neg_need = holdout_size / 2;
  std::size_t pos_need = holdout_size / 2;
  if (holdout_size % 2 == 1) (neg_avail > pos_avail ? neg_need : pos_need) += 1;
  if (neg_need > neg_avail || pos_need > pos_avail) {
    std::ostringstream os;
    os << "holdout of " << holdout_size << " needs " << neg_need << " Negative and " << pos_need
       << " Positive reviews; available: " << neg_avail << " Negative, " << pos_avail << " Positive";
    throw DataError(os.str());
  }

  std::vector<bool> in_test(corpus.size(), false);
  Rng rng(seed);
  for (Label label : kLabels) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < corpus.size(); ++i)
      if (corpus.reviews()[i].label() == label) idx.push_back(i);
    const std::size_t need = label == Label::Negative ? neg_need : pos_need;
    // Partial Fisher-Yates: the first `need` slots become the sample.
    for (std::size_t i = 0; i < need; ++i) {
      const std::size_t j = i + rng.below(idx.size() - i);
      std::swap(idx[i], idx[j]);
      in_test[idx[i]] = true;
    }
  }

  std::vector<LabeledReview> train, test;
  for (std::size_t i = 0; i < corpus.size(); ++i) (in_test[i] ? test : train).push_back(corpus.reviews()[i]);
  return {Corpus(std::move(train)), Corpus(std::move(test))};
}

Corpus concat(const Corpus& genuine, const Corpus& synthetic) {
  for (std::size_t i = 0; i < synthetic.size(); ++i)
    if (synthetic.reviews()[i].provenance() != Provenance::Synthetic)
      throw DataError("synthetic side of concat has a genuine review at index " + std::to_string(i));
  std::vector<LabeledReview> all;
  all.reserve(genuine.size() + synthetic.size());
  all.insert(all.end(), genuine.reviews().begin(), genuine.reviews().end());
  all.insert(all.end(), synthetic.reviews().begin(), synthetic.reviews().end());
  return Corpus(std::move(all));
}

void write_jsonl(std::ostream& out, const Corpus& corpus) {
  for (const auto& r : corpus.reviews()) {
    nlohmann::ordered_json obj;
    obj["text"] = r.text();
    obj["label"] = to_string(r.label());
    obj["provenance"] = to_string(r.provenance());
    out << obj.dump() << '\n';
  }
}

std::string to_jsonl(const Corpus& corpus) {
  std::ostringstream os;
  write_jsonl(os, corpus);
  return os.str();
}

Corpus read_jsonl(std::istream& in) {
  std::vector<LabeledReview> reviews;
  for_each_jsonl(in, [&](const json& obj, std::size_t line) {
    auto label = json_enum<Label>(obj, "label", line, parse_label);
    if (!label) throw DataError(line_error(line, "label", "missing"));
    auto prov = json_enum<Provenance>(obj, "provenance", line, parse_provenance);
    reviews.emplace_back(json_text(obj, line), *label, prov.value_or(Provenance::Genuine));
  });
  return Corpus(std::move(reviews));
}

Format format_for_path(std::string_view path) {
  return path.ends_with(".csv") ? Format::Csv : Format::Jsonl;
}

}  // namespace augbench
