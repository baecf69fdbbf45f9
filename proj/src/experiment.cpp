#include "augbench/experiment.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "augbench/error.hpp"
#include "augbench/rng.hpp"
#include "utf8.hpp"

namespace augbench {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

template <class T>
T parse_unsigned(std::string_view key, std::string_view value) {
  T v{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size() || value.empty())
    throw UsageError("manifest key '" + std::string(key) + "': expected a non-negative integer, got '" +
                     std::string(value) + "'");
  return v;
}

double parse_real(std::string_view key, std::string_view value) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size() || value.empty())
    throw UsageError("manifest key '" + std::string(key) + "': expected a number, got '" + std::string(value) + "'");
  return v;
}

}  // namespace

Manifest Manifest::parse(std::string_view text, const fs::path& base_dir) {
  Manifest m;
  m.base_dir = base_dir;
  std::set<std::string, std::less<>> seen;
  bool have_genuine = false, have_seed = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const auto line = detail::trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw UsageError("manifest line " + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key(detail::trim(line.substr(0, eq)));
    const std::string value(detail::trim(line.substr(eq + 1)));
    if (!seen.insert(key).second) throw UsageError("manifest key '" + key + "' given twice");
    m.entries.emplace_back(key, value);

    if (key == "genuine") {
      m.genuine = value;
      have_genuine = true;
    } else if (key == "test") {
      m.test = value;
    } else if (key == "holdout_size") {
      m.holdout_size = parse_unsigned<std::size_t>(key, value);
    } else if (key == "seed") {
      m.seed = parse_unsigned<std::uint64_t>(key, value);
      have_seed = true;
    } else if (key == "max_order") {
      m.max_order = parse_unsigned<int>(key, value);
    } else if (key == "target_length") {
      m.target_length = parse_unsigned<std::size_t>(key, value);
    } else if (key == "max_length") {
      m.max_length = parse_unsigned<std::size_t>(key, value);
    } else if (key == "temperature") {
      m.temperature = parse_real(key, value);
    } else if (key == "prompts_positive") {
      m.prompts[Label::Positive] = value;
    } else if (key == "prompts_negative") {
      m.prompts[Label::Negative] = value;
    } else if (key == "auto_prompts") {
      m.auto_prompts = parse_unsigned<std::size_t>(key, value);
    } else if (key == "synthetic_positive") {
      m.synthetic_count[Label::Positive] = parse_unsigned<std::size_t>(key, value);
    } else if (key == "synthetic_negative") {
      m.synthetic_count[Label::Negative] = parse_unsigned<std::size_t>(key, value);
    } else if (key == "import_positive") {
      m.imports[Label::Positive] = value;
    } else if (key == "import_negative") {
      m.imports[Label::Negative] = value;
    } else if (key == "bands") {
      m.bands = parse_bands(value);
    } else if (key == "alpha") {
      m.alpha = parse_real(key, value);
    } else if (key == "output") {
      m.output_dir = value;
    } else {
      throw UsageError("manifest line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  if (!have_genuine) throw UsageError("manifest is missing 'genuine'");
  if (!have_seed) throw UsageError("manifest is missing 'seed'");
  if (m.max_order < 2) throw UsageError("manifest key 'max_order' must be >= 2");
  if (!(m.alpha > 0.0)) throw UsageError("manifest key 'alpha' must be positive");
  m.generation_params().validate();
  return m;
}

Manifest Manifest::load(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw UsageError("cannot open manifest '" + file.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return parse(os.str(), file.parent_path());
}

fs::path Manifest::resolve(const fs::path& p) const { return p.is_absolute() ? p : base_dir / p; }

GenerationParams Manifest::generation_params() const {
  GenerationParams p;
  p.target_length = target_length;
  p.max_length = max_length == 0 ? 2 * target_length : max_length;
  p.temperature = temperature;
  return p;
}

std::string digest_hex(std::string_view bytes) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

namespace {

template <class F>
auto stage(std::string_view name, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const Error& e) {
    throw Error(e.kind(), "stage '" + std::string(name) + "': " + e.what());
  } catch (const std::exception& e) {
    throw Error(ErrorKind::Internal, "stage '" + std::string(name) + "': " + e.what());
  }
}

IngestResult ingest_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw DataError("cannot open '" + p.string() + "'");
  return ingest(in, format_for_path(p.string()));
}

void require_genuine(const Corpus& c, std::string_view what) {
  for (const auto& r : c.reviews())
    if (r.provenance() != Provenance::Genuine) throw DataError(std::string(what) + " contains synthetic reviews");
}

std::string label_key(Label l) { return l == Label::Positive ? "positive" : "negative"; }

}  // namespace

ExperimentRun run_experiment(const Manifest& manifest) {
  for (const auto* p : {&manifest.test, &manifest.prompts[Label::Negative], &manifest.prompts[Label::Positive],
                        &manifest.imports[Label::Negative], &manifest.imports[Label::Positive]})
    if (*p && !fs::exists(manifest.resolve(**p)))
      throw UsageError("manifest path '" + manifest.resolve(**p).string() + "' does not exist");
  if (!fs::exists(manifest.resolve(manifest.genuine)))
    throw UsageError("manifest path '" + manifest.resolve(manifest.genuine).string() + "' does not exist");

  ExperimentRun run;
  auto& report = run.report;
  report.version = AUGBENCH_VERSION;
  report.manifest = manifest.entries;

  const auto genuine = stage("ingest", [&] {
    auto result = ingest_file(manifest.resolve(manifest.genuine));
    require_genuine(result.corpus, "genuine corpus");
    report.excluded_three_star = result.excluded;
    return result.corpus;
  });

  stage("split", [&] {
    if (manifest.test) {
      auto test = ingest_file(manifest.resolve(*manifest.test));
      require_genuine(test.corpus, "test set");
      report.excluded_three_star += test.excluded;
      run.train = genuine;
      run.test = std::move(test.corpus);
    } else {
      auto split = partition_holdout(genuine, manifest.holdout_size, derive_seed(manifest.seed, "split"));
      run.train = std::move(split.train);
      run.test = std::move(split.test);
    }
    if (run.test.empty()) throw DataError("the test set is empty");
  });

  const auto params = manifest.generation_params();
  std::vector<Corpus> synthetic_parts;
  for (Label label : kLabels) {
    const std::size_t want = manifest.synthetic_count[label];
    if (want == 0) continue;
    const auto lk = label_key(label);
    const auto class_train = run.train.filter(label);
    const auto model = stage("fit-generator-" + lk, [&] { return GenerativeModel::fit(class_train, manifest.max_order); });
    report.artifact_digests["generator_" + lk] = digest_hex(model.to_json());

    run.prompts[label] = stage("prompts-" + lk, [&] {
      if (const auto& file = manifest.prompts[label]) {
        std::ifstream in(manifest.resolve(*file), std::ios::binary);
        if (!in) throw DataError("cannot open '" + manifest.resolve(*file).string() + "'");
        auto prompts = read_prompts(in);
        if (prompts.empty()) throw DataError("prompt file '" + file->string() + "' is empty");
        return prompts;
      }
      return suggest_prompts(class_train, label, manifest.bands, manifest.auto_prompts,
                             derive_seed(manifest.seed, "prompts/" + lk));
    });
    std::ostringstream prompt_dump;
    write_prompts(prompt_dump, run.prompts[label]);
    report.artifact_digests["prompts_" + lk] = digest_hex(prompt_dump.str());

    synthetic_parts.push_back(stage("generate-" + lk, [&] {
      return generate_batch(model, run.prompts[label], spread_count(want, run.prompts[label].size()), params,
                            derive_seed(manifest.seed, "generate/" + lk));
    }));
  }
  for (Label label : kLabels) {
    const auto& file = manifest.imports[label];
    if (!file) continue;
    synthetic_parts.push_back(stage("import-" + label_key(label), [&] {
      std::ifstream in(manifest.resolve(*file), std::ios::binary);
      if (!in) throw DataError("cannot open '" + manifest.resolve(*file).string() + "'");
      auto imported = import_synthetic(in, label);
      report.rejected_imports += imported.rejected.size();
      return imported.corpus;
    }));
  }
  for (const auto& part : synthetic_parts) run.synthetic = concat(run.synthetic, part);
  report.artifact_digests["synthetic"] = digest_hex(to_jsonl(run.synthetic));

  const auto combined = stage("concat", [&] { return concat(run.train, run.synthetic); });

  run.genuine_model = stage("train-genuine", [&] { return fit_mnb(run.train, manifest.alpha); });
  run.combined_model = stage("train-combined", [&] { return fit_mnb(combined, manifest.alpha); });
  report.artifact_digests["vocabulary_genuine"] = digest_hex(run.genuine_model->vocabulary().to_json());
  report.artifact_digests["vocabulary_combined"] = digest_hex(run.combined_model->vocabulary().to_json());
  report.artifact_digests["model_genuine"] = digest_hex(run.genuine_model->to_json());
  report.artifact_digests["model_combined"] = digest_hex(run.combined_model->to_json());

  stage("evaluate", [&] {
    report.genuine = evaluate(*run.genuine_model, run.test, &report.genuine_confusion);
    report.combined = evaluate(*run.combined_model, run.test, &report.combined_confusion);
    report.comparison = compare(report.genuine, report.combined);
  });

  report.sizes = {run.train.size(), run.synthetic.size(), combined.size(), run.test.size()};
  auto counts = [](const Corpus& c) {
    PerLabel<std::size_t> n;
    for (Label l : kLabels) n[l] = c.count(l);
    return n;
  };
  report.class_counts = {{"genuine_train", counts(run.train)},
                         {"synthetic", counts(run.synthetic)},
                         {"combined", counts(combined)},
                         {"test", counts(run.test)}};
  return run;
}

std::string ExperimentReport::to_json() const {
  ordered_json out;
  out["tool"] = "augbench";
  out["version"] = version;
  ordered_json m = ordered_json::object();
  for (const auto& [k, v] : manifest) m[k] = v;
  out["manifest"] = std::move(m);
  out["dataset_sizes"] = {{"genuine_train", sizes.genuine_train},
                          {"synthetic", sizes.synthetic},
                          {"combined", sizes.combined},
                          {"test", sizes.test}};
  ordered_json cc = ordered_json::object();
  for (const auto& name : {"genuine_train", "synthetic", "combined", "test"}) {
    const auto it = class_counts.find(name);
    if (it == class_counts.end()) continue;
    cc[name] = {{"Negative", it->second[Label::Negative]}, {"Positive", it->second[Label::Positive]}};
  }
  out["class_counts"] = std::move(cc);
  out["excluded_three_star"] = excluded_three_star;
  out["rejected_imports"] = rejected_imports;
  out["models"] = {{"genuine", ordered_json::parse(metrics_to_json(genuine, &genuine_confusion))},
                   {"combined", ordered_json::parse(metrics_to_json(combined, &combined_confusion))}};
  ordered_json changes = ordered_json::object();
  for (const auto& ch : comparison.changes)
    changes[ch.metric] = ch.relative_percent ? ordered_json(*ch.relative_percent) : ordered_json("undefined");
  out["relative_change_percent"] = std::move(changes);
  ordered_json digests = ordered_json::object();
  for (const auto& [k, v] : artifact_digests) digests[k] = v;
  out["artifact_digests"] = std::move(digests);
  return out.dump(2) + "\n";
}

std::string ExperimentReport::to_text() const {
  std::ostringstream os;
  os << "augbench " << version << "\n\n";
  char buf[128];
  os << "dataset            size  Negative  Positive\n";
  const std::pair<const char*, std::size_t> rows[] = {{"genuine_train", sizes.genuine_train},
                                                      {"synthetic", sizes.synthetic},
                                                      {"combined", sizes.combined},
                                                      {"test", sizes.test}};
  for (const auto& [name, size] : rows) {
    const auto it = class_counts.find(name);
    const auto n = it == class_counts.end() ? PerLabel<std::size_t>{} : it->second;
    std::snprintf(buf, sizeof buf, "%-14s %8zu  %8zu  %8zu\n", name, size, n[Label::Negative], n[Label::Positive]);
    os << buf;
  }
  os << "\n" << comparison_to_text(comparison, "genuine", "combined") << "\n";
  os << "genuine model confusion matrix\n" << augbench::to_string(genuine_confusion) << "\n\n";
  os << "combined model confusion matrix\n" << augbench::to_string(combined_confusion) << "\n";
  return os.str();
}

void write_outputs(const ExperimentRun& run, const fs::path& dir) {
  fs::create_directories(dir);
  std::vector<fs::path> written;
  auto put = [&](const std::string& name, const std::string& bytes) {
    const auto path = dir / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    written.push_back(path);
    if (!out || !out.write(bytes.data(), static_cast<std::streamsize>(bytes.size())) || !out.flush())
      throw Error(ErrorKind::Internal, "cannot write '" + path.string() + "'");
  };
  try {
    put("report.json", run.report.to_json());
    put("report.txt", run.report.to_text());
    put("train.jsonl", to_jsonl(run.train));
    put("test.jsonl", to_jsonl(run.test));
    put("synthetic.jsonl", to_jsonl(run.synthetic));
    for (Label l : kLabels) {
      if (run.prompts[l].empty()) continue;
      std::ostringstream os;
      write_prompts(os, run.prompts[l]);
      put("prompts_" + label_key(l) + ".jsonl", os.str());
    }
    if (run.genuine_model) put("model_genuine.json", run.genuine_model->to_json());
    if (run.combined_model) put("model_combined.json", run.combined_model->to_json());
  } catch (...) {
    std::error_code ec;
    for (const auto& p : written) fs::remove(p, ec);
    throw;
  }
}

}  // namespace augbench
