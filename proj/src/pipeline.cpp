#include "kgforge/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>

#include "kgforge/analyze.hpp"
#include "kgforge/error.hpp"
#include "kgforge/extract.hpp"
#include "kgforge/fs.hpp"
#include "kgforge/fuse.hpp"
#include "kgforge/merge.hpp"
#include "kgforge/merge_plan.hpp"
#include "kgforge/ntriples.hpp"
#include "kgforge/parallel.hpp"
#include "kgforge/text.hpp"

namespace kgforge {

namespace stdfs = std::filesystem;

std::string_view to_string(Stage s) noexcept {
  switch (s) {
    case Stage::Extract: return "extract";
    case Stage::Featurize: return "featurize";
    case Stage::Plan: return "plan";
    case Stage::Run: return "run";
    case Stage::Fuse: return "fuse";
    case Stage::Analyze: return "analyze";
  }
  return "?";
}

Stage stage_from_string(std::string_view s) {
  for (auto stage : kAllStages) {
    if (to_string(stage) == s) return stage;
  }
  throw ValidationError("unknown stage '" + std::string(s) + "'");
}

bool PipelineReport::ok() const {
  return std::none_of(stages.begin(), stages.end(),
                      [](const StageOutcome& o) { return o.status == StageOutcome::Status::Failed; });
}

// ---------------------------------------------------------------- config

ConfigValues parse_config_values(std::string_view content) {
  ConfigValues values;
  std::size_t line_no = 0;
  for (auto line : text::split(content, '\n')) {
    ++line_no;
    line = text::trim(line);
    if (line.empty() || line.front() == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected key=value");
    auto key = text::trim(line.substr(0, eq));
    if (key.empty()) throw ParseError(line_no, "empty key");
    values[std::string(key)] = std::string(text::trim(line.substr(eq + 1)));
  }
  return values;
}

namespace {

const std::set<std::string> kKnownKeys{
    "workspace", "dumpDir",  "matcher",  "matcherCommand", "matcherTimeout", "maxMatcherProcesses",
    "linkage",   "jaccardThreshold",     "stopwordFile",   "synonymFile",    "referenceAlignment",
    "workers",   "minShare", "topK",     "baseIri",        "abstracts"};

template <typename T>
T number(const ConfigValues& v, const std::string& key, T fallback) {
  auto it = v.find(key);
  if (it == v.end()) return fallback;
  T out{};
  const auto& s = it->second;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ConfigError(key, "setting '" + key + "' has invalid value '" + s + "'");
  }
  return out;
}

std::optional<stdfs::path> path_of(const ConfigValues& v, const std::string& key, const stdfs::path& base) {
  auto it = v.find(key);
  if (it == v.end() || it->second.empty()) return std::nullopt;
  stdfs::path p(it->second);
  return p.is_absolute() || base.empty() ? p : base / p;
}

stdfs::path required_path(const ConfigValues& v, const std::string& key, const stdfs::path& base) {
  auto p = path_of(v, key, base);
  if (!p) throw ConfigError(key, "missing required setting '" + key + "'");
  return *p;
}

}  // namespace

PipelineConfig config_from_values(const ConfigValues& values, const stdfs::path& base_dir) {
  for (const auto& [key, _] : values) {
    if (!kKnownKeys.contains(key)) throw ConfigError(key, "unknown setting '" + key + "'");
  }
  PipelineConfig c;
  c.workspace = required_path(values, "workspace", base_dir);
  c.dump_dir = required_path(values, "dumpDir", base_dir);

  const std::string matcher = values.contains("matcher") ? values.at("matcher") : "builtin";
  if (matcher == "external") {
    auto it = values.find("matcherCommand");
    if (it == values.end() || it->second.empty()) {
      throw ConfigError("matcherCommand", "missing required setting 'matcherCommand' for matcher=external");
    }
    c.matcher_command = it->second;
  } else if (matcher != "builtin") {
    throw ConfigError("matcher", "setting 'matcher' must be builtin or external");
  }
  c.matcher_timeout = std::chrono::milliseconds(
      static_cast<long long>(number<double>(values, "matcherTimeout", 1800.0) * 1000.0));
  c.max_matcher_processes = number<unsigned>(values, "maxMatcherProcesses", 4U);
  if (values.contains("linkage")) {
    try {
      c.linkage = linkage_from_string(values.at("linkage"));
    } catch (const ValidationError& e) {
      throw ConfigError("linkage", e.what());
    }
  }
  c.jaccard_threshold = number<double>(values, "jaccardThreshold", 0.8);
  if (!(c.jaccard_threshold >= 0.0 && c.jaccard_threshold <= 1.0)) {
    throw ConfigError("jaccardThreshold", "setting 'jaccardThreshold' must lie in [0, 1]");
  }
  c.stopword_file = path_of(values, "stopwordFile", base_dir);
  c.synonym_file = path_of(values, "synonymFile", base_dir);
  c.reference_alignment = path_of(values, "referenceAlignment", base_dir);
  for (const auto* opt : {&c.stopword_file, &c.synonym_file, &c.reference_alignment}) {
    if (*opt && !stdfs::exists(**opt)) {
      throw ConfigError(opt == &c.stopword_file   ? "stopwordFile"
                        : opt == &c.synonym_file ? "synonymFile"
                                                 : "referenceAlignment",
                        "file not found: " + (*opt)->string());
    }
  }
  c.workers = number<unsigned>(values, "workers", default_workers());
  if (c.workers < 1) throw ConfigError("workers", "setting 'workers' must be at least 1");
  c.min_share = number<double>(values, "minShare", 0.01);
  if (!(c.min_share >= 0.0)) throw ConfigError("minShare", "setting 'minShare' must be non-negative");
  c.top_k = number<std::size_t>(values, "topK", 10);
  if (c.top_k < 1) throw ConfigError("topK", "setting 'topK' must be at least 1");
  c.base_iri = values.contains("baseIri") ? values.at("baseIri") : std::string(vocab::kDefaultBase);
  try {
    Namespace check(c.base_iri);
  } catch (const Error& e) {
    throw ConfigError("baseIri", std::string("invalid baseIri: ") + e.what());
  }
  if (values.contains("abstracts")) {
    const auto& a = values.at("abstracts");
    if (a != "true" && a != "false") throw ConfigError("abstracts", "setting 'abstracts' must be true or false");
    c.abstracts = a == "true";
  }
  return c;
}

// ---------------------------------------------------------------- manifest

namespace {

struct ManifestEntry {
  bool done = false;
  std::string key;
};

using Manifest = std::map<Stage, ManifestEntry>;

Manifest read_manifest(const stdfs::path& path) {
  Manifest m;
  if (!stdfs::exists(path)) return m;
  const auto content = fs::read_text(path);
  for (auto line : text::split(content, '\n')) {
    auto f = text::split(line, '\t');
    if (f.size() != 3) continue;
    try {
      m[stage_from_string(f[0])] = {f[1] == "done", std::string(f[2])};
    } catch (const ValidationError&) {
    }
  }
  return m;
}

void write_manifest(const Manifest& m, const stdfs::path& path) {
  std::string out;
  for (const auto& [stage, e] : m) {
    out += std::string(to_string(stage)) + '\t' + (e.done ? "done" : "pending") + '\t' + e.key + '\n';
  }
  fs::write_text_atomically(path, out);
}

class Hasher {
 public:
  Hasher& add(std::string_view s) {
    h_ = text::fnv1a(std::to_string(s.size()) + ":", h_);
    h_ = text::fnv1a(s, h_);
    return *this;
  }
  Hasher& add_file(const std::optional<stdfs::path>& p) {
    if (!p) return add("<none>");
    return add(fs::read_text(*p));
  }
  std::string hex() const { return text::hex64(h_); }

 private:
  std::uint64_t h_ = 14695981039346656037ULL;
};

// ---------------------------------------------------------------- stages

std::vector<std::string> read_lines(const stdfs::path& path) {
  std::vector<std::string> out;
  const auto content = fs::read_text(path);
  for (auto line : text::split(content, '\n')) {
    line = text::trim(line);
    if (!line.empty()) out.emplace_back(line);
  }
  return out;
}

std::string join_lines(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) out += l + '\n';
  return out;
}

std::vector<stdfs::path> dump_files(const stdfs::path& dir) {
  if (!stdfs::is_directory(dir)) throw Error("dump directory not found: " + dir.string());
  std::vector<stdfs::path> out;
  for (const auto& e : stdfs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".xml") out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

class Runner {
 public:
  Runner(const PipelineConfig& c, const LogSink& log) : c_(c), ns_(c.base_iri), log_(log) {
    if (c_.stopword_file) stopwords_ = std::make_shared<StopwordList>(StopwordList::parse(fs::read_text(*c_.stopword_file)));
  }

  stdfs::path ws(const std::string& rel) const { return c_.workspace / rel; }

  void log(const std::string& msg) const {
    if (log_) log_(msg);
  }

  std::string key(Stage s, const std::string& upstream) const {
    Hasher h;
    h.add(to_string(s)).add(upstream);
    switch (s) {
      case Stage::Extract:
        h.add(c_.base_iri).add(c_.abstracts ? "abstracts" : "no-abstracts").add_file(c_.synonym_file);
        for (const auto& p : dump_files(c_.dump_dir)) {
          h.add(p.filename().string()).add(fs::read_text(p));
          auto meta = stdfs::path(p).replace_extension(".meta");
          h.add_file(stdfs::exists(meta) ? std::optional(meta) : std::nullopt);
        }
        break;
      case Stage::Featurize: h.add_file(c_.stopword_file); break;
      case Stage::Plan: h.add(to_string(c_.linkage)); break;
      case Stage::Run:
        h.add(c_.matcher_command.value_or("builtin")).add(text::format_double(c_.jaccard_threshold));
        h.add_file(c_.stopword_file);
        break;
      case Stage::Fuse: break;
      case Stage::Analyze:
        h.add(text::format_double(c_.min_share)).add(std::to_string(c_.top_k)).add_file(c_.reference_alignment);
        break;
    }
    return h.hex();
  }

  bool outputs_exist(Stage s) const {
    switch (s) {
      case Stage::Extract: return stdfs::exists(ws("kgs/index.txt"));
      case Stage::Featurize: return stdfs::exists(ws("vectors/index.txt"));
      case Stage::Plan: return stdfs::exists(ws("plan.txt"));
      case Stage::Run: {
        if (!stdfs::exists(ws("plan.txt"))) return false;
        auto plan = read_plan(ws("plan.txt"));
        RunLayout layout{c_.workspace};
        for (const auto& level : plan.levels) {
          for (const auto& t : level) {
            auto name = node_name(plan, t.output);
            if (!stdfs::exists(layout.alignment(name)) || !stdfs::exists(layout.union_graph(name))) return false;
          }
        }
        return true;
      }
      case Stage::Fuse: return stdfs::exists(ws("fused.nt")) && stdfs::exists(ws("closure.tsv"));
      case Stage::Analyze: return stdfs::exists(ws("reports/profile.tsv"));
    }
    return false;
  }

  void clear_outputs(Stage s, bool resume) const {
    switch (s) {
      case Stage::Extract: stdfs::remove_all(ws("kgs")); break;
      case Stage::Featurize: stdfs::remove_all(ws("vectors")); break;
      case Stage::Plan:
        stdfs::remove(ws("plan.txt"));
        stdfs::remove(ws("dendrogram.txt"));
        break;
      case Stage::Run:
        if (!resume) {
          stdfs::remove_all(ws("alignments"));
          stdfs::remove_all(ws("unions"));
        }
        break;
      case Stage::Fuse:
        stdfs::remove(ws("fused.nt"));
        stdfs::remove(ws("closure.tsv"));
        break;
      case Stage::Analyze: stdfs::remove_all(ws("reports")); break;
    }
  }

  std::string run(Stage s) {
    switch (s) {
      case Stage::Extract: return extract();
      case Stage::Featurize: return featurize();
      case Stage::Plan: return plan();
      case Stage::Run: return execute();
      case Stage::Fuse: return fuse();
      case Stage::Analyze: return analyze();
    }
    return {};
  }

 private:
  std::vector<std::string> wiki_ids() const { return read_lines(ws("kgs/index.txt")); }

  std::vector<KnowledgeGraph> leaf_graphs(const std::vector<std::string>& ids) const {
    std::vector<KnowledgeGraph> kgs(ids.size());
    parallel_for_each_index(ids.size(), c_.workers, [&](std::size_t i) {
      kgs[i] = read_ntriples_file(ws("kgs/" + ids[i] + ".nt")).with_id(ids[i]);
    });
    return kgs;
  }

  std::vector<Alignment> task_alignments(const MergePlan& plan) const {
    std::vector<Alignment> out;
    RunLayout layout{c_.workspace};
    for (const auto& level : plan.levels) {
      for (const auto& t : level) out.push_back(read_alignment_file(layout.alignment(node_name(plan, t.output))));
    }
    return out;
  }

  std::string extract() {
    const auto dumps = dump_files(c_.dump_dir);
    if (dumps.empty()) throw Error("no .xml dumps in " + c_.dump_dir.string());
    stdfs::create_directories(ws("kgs"));
    stdfs::create_directories(ws("log"));
    ExtractionSettings settings;
    settings.ns = ns_;
    settings.abstracts = c_.abstracts;
    if (c_.synonym_file) settings.synonyms.merge(SynonymMap::parse(fs::read_text(*c_.synonym_file)));

    std::vector<std::string> ids(dumps.size());
    std::vector<std::string> warnings(dumps.size());
    std::vector<std::size_t> sizes(dumps.size());
    parallel_for_each_index(dumps.size(), c_.workers, [&](std::size_t i) {
      const auto dump = read_wiki_dump(dumps[i]);
      if (is_reserved_wiki_id(dump.wiki_id)) throw ValidationError("reserved or invalid wiki id '" + dump.wiki_id + "'");
      ids[i] = dump.wiki_id;
      auto result = extract_wiki(dump, settings);
      for (const auto& w : dump.warnings) warnings[i] += dump.wiki_id + "\t\t" + w + '\n';
      for (const auto& w : result.warnings) warnings[i] += dump.wiki_id + '\t' + w.page + '\t' + w.message + '\n';
      sizes[i] = result.graph.size();
      write_ntriples_file(result.graph, ws("kgs/" + dump.wiki_id + ".nt"));
      auto meta = stdfs::path(dumps[i]).replace_extension(".meta");
      if (stdfs::exists(meta)) {
        auto content = fs::read_text(meta);
        parse_wiki_metadata(content, dump.wiki_id);
        fs::write_text_atomically(ws("kgs/" + dump.wiki_id + ".meta"), content);
      }
    });
    std::string all_warnings = "wiki\tpage\tmessage\n";
    std::size_t warning_count = 0;
    for (const auto& w : warnings) {
      all_warnings += w;
      warning_count += static_cast<std::size_t>(std::count(w.begin(), w.end(), '\n'));
    }
    fs::write_text_atomically(ws("log/extract_warnings.tsv"), all_warnings);
    fs::write_text_atomically(ws("kgs/index.txt"), join_lines(ids));
    std::size_t triples = 0;
    for (auto z : sizes) triples += z;
    return std::to_string(ids.size()) + " graphs, " + std::to_string(triples) + " triples, " +
           std::to_string(warning_count) + " warnings";
  }

  std::string featurize() {
    const auto ids = wiki_ids();
    const Tokenizer tok = stopwords_ ? Tokenizer(*stopwords_) : Tokenizer();
    std::vector<TokenStream> docs(ids.size());
    parallel_for_each_index(ids.size(), c_.workers, [&](std::size_t i) {
      docs[i] = kg_document(read_ntriples_file(ws("kgs/" + ids[i] + ".nt")), tok);
    });
    auto model = tfidf_vectors<double>(docs);
    stdfs::create_directories(ws("vectors"));
    write_term_dictionary(model.terms, ws("vectors/terms.dict"));
    for (std::size_t i = 0; i < ids.size(); ++i) write_vector_file(model.vectors[i], ws("vectors/" + ids[i] + ".vec"));
    fs::write_text_atomically(ws("vectors/index.txt"), join_lines(ids));
    return std::to_string(ids.size()) + " vectors over " + std::to_string(model.terms.size()) + " terms";
  }

  std::string plan() {
    const auto ids = read_lines(ws("vectors/index.txt"));
    MergePlan p;
    if (ids.size() < 2) {
      p.leaves = static_cast<std::int64_t>(ids.size());
      p.leaf_names = ids;
      fs::write_text_atomically(ws("dendrogram.txt"), "");
    } else {
      const auto dim = read_term_dictionary(ws("vectors/terms.dict")).size();
      std::vector<TfIdfVector<double>> vectors;
      vectors.reserve(ids.size());
      for (const auto& id : ids) vectors.push_back(read_vector_file(ws("vectors/" + id + ".vec"), dim));
      MatrixOptions opts;
      opts.workers = c_.workers;
      auto matrix = distance_matrix(vectors, opts);
      auto dendrogram = hac(matrix, c_.linkage);
      write_dendrogram(dendrogram, ws("dendrogram.txt"));
      p = plan_from_dendrogram(dendrogram);
      p.leaf_names = ids;
    }
    write_plan(p, ws("plan.txt"));
    auto stats = plan_stats(p);
    return std::to_string(p.task_count()) + " merges in " + std::to_string(stats.height) + " levels";
  }

  std::string execute() {
    const auto p = read_plan(ws("plan.txt"));
    ExecutionOptions opts;
    opts.workers = c_.workers;
    opts.matcher.builtin.jaccard_threshold = c_.jaccard_threshold;
    opts.matcher.builtin.ns = ns_;
    opts.matcher.builtin.stopwords = stopwords_;
    if (c_.matcher_command) {
      opts.matcher.external = ExternalMatcherConfig{*c_.matcher_command, c_.matcher_timeout};
      set_external_matcher_limit(c_.max_matcher_processes);
    }
    opts.on_task = [this](const MergeTaskResult& r) {
      std::ostringstream msg;
      msg << "merge " << r.output_id << (r.reused ? " reused" : " done") << ": " << r.correspondences
          << " correspondences, " << text::format_double(r.elapsed.count()) << " s";
      log(msg.str());
    };
    auto result = execute_plan(p, c_.workspace, opts);
    std::size_t reused = 0;
    for (const auto& t : result.tasks) reused += t.reused ? 1 : 0;
    return std::to_string(result.tasks.size()) + " merges (" + std::to_string(reused) + " reused), root " +
           std::to_string(result.root.size()) + " triples";
  }

  std::string fuse() {
    const auto ids = wiki_ids();
    const auto p = read_plan(ws("plan.txt"));
    const auto kgs = leaf_graphs(ids);
    const auto alignments = task_alignments(p);
    std::vector<std::string> warnings;
    auto sets = transitive_closure(alignments, ns_, &warnings);
    std::vector<Iri> all;
    for (const auto& kg : kgs) {
      auto iris = kg.iris();
      all.insert(all.end(), iris.begin(), iris.end());
    }
    auto canon = canonical_uris(sets, all, ns_);
    std::vector<WikiMetadata> meta;
    for (const auto& id : ids) {
      auto path = ws("kgs/" + id + ".meta");
      if (stdfs::exists(path)) meta.push_back(parse_wiki_metadata(fs::read_text(path), id));
    }
    auto fused = fuse_kgs(kgs, canon, meta, ns_, c_.workers);
    warnings.insert(warnings.end(), fused.warnings.begin(), fused.warnings.end());
    stdfs::create_directories(ws("log"));
    fs::write_text_atomically(ws("log/fuse_warnings.txt"), join_lines(warnings));
    write_closure_tsv(sets, ws("closure.tsv"));
    write_ntriples_file(fused.graph, ws("fused.nt"));
    return std::to_string(sets.size()) + " identity sets, " + std::to_string(fused.graph.size()) + " fused triples";
  }

  std::string analyze() {
    const auto ids = wiki_ids();
    const auto p = read_plan(ws("plan.txt"));
    const auto kgs = leaf_graphs(ids);
    const auto alignments = task_alignments(p);
    auto sets = transitive_closure(alignments, ns_);
    const LabelIndex labels(kgs);
    const auto fused = read_ntriples_file(ws("fused.nt"));
    stdfs::create_directories(ws("reports"));

    fs::write_text_atomically(ws("reports/closure_stats.tsv"), to_tsv(closure_stats(sets)));
    for (auto kind : {EntityKind::Instance, EntityKind::Class, EntityKind::Property}) {
      fs::write_text_atomically(ws("reports/top_matched_" + std::string(to_string(kind)) + ".tsv"),
                                to_tsv(top_matched(sets, c_.top_k, kind, labels)));
    }
    std::size_t correspondences = 0;
    for (const auto& al : alignments) correspondences += al.size();
    std::ostringstream stats;
    stats << "metric\tvalue\n"
          << "correspondences\t" << correspondences << '\n'
          << "identitySets\t" << sets.size() << '\n'
          << "noSharedLabelFraction\t" << text::format_double(same_label_fraction(alignments, labels)) << '\n';
    fs::write_text_atomically(ws("reports/alignment_stats.tsv"), stats.str());
    if (c_.reference_alignment) {
      Alignment system;
      for (const auto& al : alignments) system.insert(system.end(), al.begin(), al.end());
      auto eval = evaluate_alignment(system, read_alignment_file(*c_.reference_alignment), ns_);
      fs::write_text_atomically(ws("reports/eval.tsv"), to_tsv(eval));
    }
    fs::write_text_atomically(ws("reports/profile.tsv"), to_tsv(kg_profile(fused, ns_)));
    fs::write_text_atomically(ws("reports/class_distribution.json"),
                              class_distribution(fused, c_.min_share, ns_).dump(2) + "\n");
    return "reports for " + std::to_string(sets.size()) + " identity sets";
  }

  const PipelineConfig& c_;
  Namespace ns_;
  const LogSink& log_;
  std::shared_ptr<const StopwordList> stopwords_;
};

}  // namespace

PipelineReport run_pipeline(const PipelineConfig& config, const std::vector<Stage>& stages, const LogSink& log) {
  PipelineReport report;
  auto emit = [&](const std::string& msg) {
    if (log) log(msg);
  };
  auto write_summary = [&] {
    std::string out = "stage\tstatus\tseconds\tdetail\n";
    for (const auto& o : report.stages) {
      const char* status = o.status == StageOutcome::Status::Ran       ? "ran"
                           : o.status == StageOutcome::Status::Skipped ? "skipped"
                                                                        : "failed";
      out += std::string(to_string(o.stage)) + '\t' + status + '\t' + text::format_double(o.seconds) + '\t' +
             o.detail + '\n';
    }
    stdfs::create_directories(config.workspace / "log");
    fs::write_text_atomically(config.workspace / "log" / "summary.tsv", out);
  };

  std::set<Stage> requested(stages.begin(), stages.end());
  if (requested.empty()) return report;
  const Stage last = *requested.rbegin();
  const auto manifest_path = config.workspace / "manifest.tsv";

  try {
    stdfs::create_directories(config.workspace);
    Manifest manifest = read_manifest(manifest_path);
    Runner runner(config, log);
    std::string upstream;
    for (auto stage : kAllStages) {
      if (stage > last) break;
      const auto started = std::chrono::steady_clock::now();
      StageOutcome outcome{stage, StageOutcome::Status::Skipped, 0.0, {}};
      try {
        const std::string key = runner.key(stage, upstream);
        const auto& entry = manifest[stage];
        const bool satisfied = entry.done && entry.key == key && runner.outputs_exist(stage);
        if (!requested.contains(stage)) {
          if (!satisfied) {
            throw Error("stage '" + std::string(to_string(stage)) + "' has no current output; run 'kgforge " +
                        std::string(to_string(stage)) + "' first");
          }
          upstream = key;
          continue;
        }
        if (satisfied) {
          outcome.detail = "up to date";
          emit("stage " + std::string(to_string(stage)) + ": up to date, skipped");
        } else {
          const bool resume = !entry.done && entry.key == key;
          runner.clear_outputs(stage, resume);
          for (auto later : kAllStages) {
            if (later > stage) manifest.erase(later);
          }
          manifest[stage] = {false, key};
          write_manifest(manifest, manifest_path);
          emit("stage " + std::string(to_string(stage)) + ": running" + (resume ? " (resuming)" : ""));
          outcome.detail = runner.run(stage);
          outcome.status = StageOutcome::Status::Ran;
          manifest[stage] = {true, key};
          write_manifest(manifest, manifest_path);
        }
        upstream = key;
      } catch (const std::exception& e) {
        outcome.status = StageOutcome::Status::Failed;
        outcome.detail = e.what();
      }
      outcome.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
      if (outcome.status != StageOutcome::Status::Skipped || requested.contains(stage)) {
        report.stages.push_back(outcome);
      }
      if (outcome.status == StageOutcome::Status::Ran) {
        emit("stage " + std::string(to_string(stage)) + ": " + outcome.detail + " (" +
             text::format_double(std::round(outcome.seconds * 1000.0) / 1000.0) + " s)");
      }
      if (outcome.status == StageOutcome::Status::Failed) {
        emit("stage " + std::string(to_string(stage)) + " failed: " + outcome.detail);
        break;
      }
    }
    write_summary();
  } catch (const std::exception& e) {
    report.stages.push_back({*requested.begin(), StageOutcome::Status::Failed, 0.0, e.what()});
    emit(std::string("pipeline failed: ") + e.what());
    try {
      write_summary();
    } catch (const std::exception&) {
    }
  }
  return report;
}

}  // namespace kgforge
