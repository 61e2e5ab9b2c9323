#include "lsi_cli/commands.hpp"

#include <chrono>
#include <ctime>
#include <iostream>
#include <set>

#include <CLI11.hpp>

#include "lsi/align.hpp"
#include "lsi/corpus.hpp"
#include "lsi/embedding.hpp"
#include "lsi/error.hpp"
#include "lsi/evaluation.hpp"
#include "lsi/graph.hpp"
#include "lsi/imputation.hpp"
#include "lsi/io.hpp"
#include "lsi/log.hpp"
#include "lsi/node2vec.hpp"
#include "lsi/sgns.hpp"
#include "lsi_cli/digest.hpp"

namespace lsi::cli {

using json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "lsi 0.1.0";

json file_entry(const fs::path& path) {
  json e;
  e["path"] = path.string();
  std::error_code ec;
  const auto size = fs::file_size(path, ec);
  if (ec) {
    e["missing"] = true;
    return e;
  }
  e["bytes"] = size;
  e["sha256"] = sha256_file(path);
  return e;
}

/// Provenance record for one stage: inputs, outputs, config, timing.
class Manifest {
 public:
  Manifest(std::string stage, const PipelineConfig& cfg)
      : stage_(std::move(stage)), cfg_(cfg), start_(std::chrono::steady_clock::now()) {
    started_at_ = std::time(nullptr);
  }

  void input(const fs::path& p) { inputs_.push_back(p); }
  void output(const fs::path& p) { outputs_.push_back(p); }
  json& summary() { return summary_; }

  void write() const {
    json m;
    m["stage"] = stage_;
    m["version"] = kVersion;
    char stamp[32];
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&started_at_));
    m["started_at"] = stamp;
    m["seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    m["config_hash"] = config_hash(cfg_.resolved);
    m["config"] = cfg_.resolved;
    json in = json::array();
    for (const auto& p : inputs_) in.push_back(file_entry(p));
    json out = json::array();
    for (const auto& p : outputs_) out.push_back(file_entry(p));
    m["inputs"] = in;
    m["outputs"] = out;
    m["summary"] = summary_;
    write_text_file(cfg_.out("manifests") / (stage_ + ".json"), m.dump(2) + "\n");
  }

 private:
  std::string stage_;
  const PipelineConfig& cfg_;
  std::chrono::steady_clock::time_point start_;
  std::time_t started_at_;
  std::vector<fs::path> inputs_;
  std::vector<fs::path> outputs_;
  json summary_ = json::object();
};

fs::path require_input(const fs::path& configured, const fs::path& fallback, const char* field) {
  const fs::path p = configured.empty() ? fallback : configured;
  if (p.empty()) throw InputError(std::string(field) + ": no path given");
  if (!fs::exists(p)) throw InputError(std::string(field) + ": file not found: " + p.string());
  return p;
}

fs::path or_default(const fs::path& configured, const fs::path& fallback) {
  return configured.empty() ? fallback : configured;
}

void write_json(const fs::path& path, const json& j) { write_text_file(path, j.dump(2) + "\n"); }

// --- vocabulary split ------------------------------------------------------

VocabSplit load_split(const fs::path& path) {
  json j;
  try {
    j = json::parse(read_text_file(path));
  } catch (const json::exception& e) {
    throw InputError("split file " + path.string() + ": " + e.what());
  }
  if (!j.contains("trained") || !j.contains("imputed")) {
    throw InputError("split file " + path.string() + ": needs 'trained' and 'imputed' arrays");
  }
  VocabSplit s;
  for (const auto& t : j["trained"]) s.trained.insert(t.get<std::string>());
  for (const auto& t : j["imputed"]) s.imputed.insert(t.get<std::string>());
  return s;
}

/// Uses paths.split when it exists; otherwise splits the dataset vocabulary
/// with eval.split_seed and writes the split for later stages.
VocabSplit obtain_split(const PipelineConfig& cfg, Manifest& manifest) {
  const fs::path split_path = or_default(cfg.paths.split, cfg.out("split.json"));
  if (fs::exists(split_path) && !cfg.paths.split.empty()) {
    manifest.input(split_path);
    return load_split(split_path);
  }
  const fs::path dataset = require_input(cfg.paths.dataset, {}, "paths.dataset");
  manifest.input(dataset);
  const WordPairDataset ds = load_wordpair_dataset(dataset);
  const VocabSplit split = split_vocab(ds.terms(), cfg.split_seed);
  json j;
  j["seed"] = cfg.split_seed;
  j["trained"] = split.trained;
  j["imputed"] = split.imputed;
  write_json(split_path, j);
  manifest.output(split_path);
  logger().info("split: {} trained / {} imputed terms (seed {})", split.trained.size(),
                split.imputed.size(), cfg.split_seed);
  return split;
}

// --- stages ----------------------------------------------------------------

void extract_graph(const PipelineConfig& cfg) {
  Manifest manifest("extract-graph", cfg);
  const fs::path nt = require_input(cfg.paths.ntriples, {}, "paths.ntriples");
  manifest.input(nt);
  const TripleSet triples = parse_ntriples_file(nt);
  ExtractionReport rep;
  const LabeledGraph g = extract_subgraph(triples, cfg.extraction, &rep);

  const fs::path nodes = or_default(cfg.paths.nodes, cfg.out("nodes.tsv"));
  const fs::path edges = or_default(cfg.paths.edges, cfg.out("edges.tsv"));
  write_graph_tsv(g, nodes, edges);
  manifest.output(nodes);
  manifest.output(edges);

  const DegreeStats deg = degree_stats(g);
  const auto components = connected_components(g);
  std::size_t largest = 0;
  for (const auto& c : components) largest = std::max(largest, c.size());
  json stats;
  stats["nodes"] = deg.node_count;
  stats["edges"] = deg.edge_count;
  stats["min_degree"] = deg.min_degree;
  stats["max_degree"] = deg.max_degree;
  stats["mean_degree"] = deg.mean_degree;
  stats["components"] = components.size();
  stats["largest_component"] = largest;
  stats["triples"] = triples.size();
  stats["malformed_lines"] = triples.malformed_lines;
  stats["primary_nodes"] = rep.primary_nodes;
  stats["bridge_nodes"] = rep.bridge_nodes;
  stats["unlabeled_nodes"] = rep.unlabeled_nodes;
  const fs::path stats_path = cfg.out("graph_stats.json");
  write_json(stats_path, stats);
  manifest.output(stats_path);
  manifest.summary() = stats;
  manifest.write();
}

void node2vec(const PipelineConfig& cfg) {
  Manifest manifest("node2vec", cfg);
  const fs::path nodes = require_input(cfg.paths.nodes, cfg.out("nodes.tsv"), "paths.nodes");
  const fs::path edges = require_input(cfg.paths.edges, cfg.out("edges.tsv"), "paths.edges");
  manifest.input(nodes);
  manifest.input(edges);
  const LabeledGraph g = read_graph_tsv(nodes, edges);
  TrainingLog log;
  const EmbeddingMatrix m = train_node2vec(g, cfg.walk, cfg.node2vec_sgns, &log);
  const fs::path out = or_default(cfg.paths.domain_embeddings, cfg.out("domain.vec"));
  write_embeddings(m, out);
  manifest.output(out);
  manifest.summary() = {{"vectors", m.size()},
                        {"dim", m.dim()},
                        {"epoch_loss", log.epoch_loss},
                        {"walk_tokens", log.corpus_tokens}};
  manifest.write();
}

void train_sgns_stage(const PipelineConfig& cfg) {
  Manifest manifest("train-sgns", cfg);
  const fs::path corpus_path = require_input(cfg.paths.corpus, {}, "paths.corpus");
  manifest.input(corpus_path);
  const Corpus corpus = read_corpus(corpus_path);
  if (corpus.empty()) throw InputError("paths.corpus: corpus is empty");
  TrainingLog log;
  const EmbeddingMatrix m = train_sgns(corpus, cfg.sgns, &log);
  const fs::path out = or_default(cfg.paths.semantic_embeddings, cfg.out("semantic.vec"));
  write_embeddings(m, out);
  manifest.output(out);
  manifest.summary() = {{"vectors", m.size()},
                        {"dim", m.dim()},
                        {"sentences", corpus.size()},
                        {"tokens", log.corpus_tokens},
                        {"epoch_loss", log.epoch_loss}};
  manifest.write();
}

std::set<std::string> read_terms(const fs::path& path) {
  std::set<std::string> terms;
  LineReader in(path);
  std::string line;
  while (in.next(line)) {
    const auto t = normalize_label(line);
    if (!t.empty()) terms.insert(t);
  }
  return terms;
}

fs::path filtered_corpus_path(const PipelineConfig& cfg) {
  const bool gz = cfg.paths.corpus.extension() == ".gz";
  return cfg.out(gz ? "corpus.filtered.txt.gz" : "corpus.filtered.txt");
}

void filter_corpus_stage(const PipelineConfig& cfg) {
  Manifest manifest("filter-corpus", cfg);
  const fs::path corpus = require_input(cfg.paths.corpus, {}, "paths.corpus");
  manifest.input(corpus);
  std::set<std::string> terms;
  if (!cfg.paths.terms.empty()) {
    const fs::path terms_path = require_input(cfg.paths.terms, {}, "paths.terms");
    manifest.input(terms_path);
    terms = read_terms(terms_path);
  } else {
    terms = obtain_split(cfg, manifest).imputed;
  }
  const CorpusFilter filter(terms, cfg.plural_suffixes);
  const fs::path out = filtered_corpus_path(cfg);
  const FilterStats stats = filter_corpus_file(corpus, out, filter);
  manifest.output(out);
  const fs::path stats_path = cfg.out("filter_stats.json");
  write_text_file(stats_path, filter_stats_to_json(stats) + "\n");
  manifest.output(stats_path);
  manifest.summary() = {{"terms", terms.size()},
                        {"total", stats.total},
                        {"removed", stats.removed},
                        {"removal_fraction", stats.removal_fraction()}};
  manifest.write();
}

struct EmbeddingInputs {
  fs::path semantic_path;
  fs::path domain_path;
  EmbeddingMatrix semantic;
  EmbeddingMatrix domain;
};

EmbeddingInputs load_embedding_inputs(const PipelineConfig& cfg, Manifest& manifest) {
  EmbeddingInputs in;
  in.semantic_path = require_input(cfg.paths.semantic_embeddings, cfg.out("semantic.vec"),
                                   "paths.semantic_embeddings");
  in.domain_path = require_input(cfg.paths.domain_embeddings, cfg.out("domain.vec"),
                                 "paths.domain_embeddings");
  manifest.input(in.semantic_path);
  manifest.input(in.domain_path);
  in.semantic = read_embeddings(in.semantic_path);
  in.domain = read_embeddings(in.domain_path);
  return in;
}

void impute_stage(const PipelineConfig& cfg) {
  Manifest manifest("impute", cfg);
  const EmbeddingInputs in = load_embedding_inputs(cfg, manifest);
  const ImputationResult result = lsi_pipeline(in.semantic, in.domain, cfg.lsi);

  const fs::path imputed = cfg.out("imputed.lsi.vec");
  const fs::path merged = cfg.out("merged.lsi.vec");
  write_embeddings(result.imputed, imputed);
  write_embeddings(merge_embeddings(in.semantic, result.imputed), merged);
  manifest.output(imputed);
  manifest.output(merged);

  json report;
  report["anchors"] = result.anchor_count;
  report["imputed"] = result.imputed.size();
  report["iterations"] = result.iterations;
  report["converged"] = result.converged;
  report["final_change"] = result.final_change;
  report["uniform_fallback_rows"] = result.uniform_fallbacks;
  report["unreachable"] = result.unreachable;
  report["k"] = cfg.lsi.k;
  report["eta"] = cfg.lsi.eta;
  const fs::path report_path = cfg.out("impute_report.json");
  write_json(report_path, report);
  manifest.output(report_path);
  report.erase("unreachable");
  report["unreachable_count"] = result.unreachable.size();
  manifest.summary() = report;
  manifest.write();
}

void align_stage(const PipelineConfig& cfg) {
  Manifest manifest("align-baseline", cfg);
  const EmbeddingInputs in = load_embedding_inputs(cfg, manifest);
  const AnchorMap anchors = find_anchors(in.semantic, in.domain);
  OrthogonalMap map;
  const EmbeddingMatrix aligned = mesh_baseline(in.semantic, in.domain, anchors, &map);

  const fs::path out = cfg.out("imputed.baseline.vec");
  const fs::path merged = cfg.out("merged.baseline.vec");
  const fs::path map_path = cfg.out("alignment_map.txt");
  write_embeddings(aligned, out);
  write_embeddings(merge_embeddings(in.semantic, aligned), merged);
  write_matrix(map.q, map_path);
  manifest.output(out);
  manifest.output(merged);
  manifest.output(map_path);

  json report;
  report["anchors"] = map.anchor_count;
  report["imputed"] = aligned.size();
  report["residual"] = map.residual;
  report["rank_deficient"] = map.rank_deficient;
  const fs::path report_path = cfg.out("align_report.json");
  write_json(report_path, report);
  manifest.output(report_path);
  manifest.summary() = report;
  manifest.write();
}

fs::path evaluate_stage(const PipelineConfig& cfg) {
  Manifest manifest("evaluate", cfg);
  const fs::path emb_path = require_input(cfg.paths.embeddings, {}, "paths.embeddings");
  const fs::path dataset_path = require_input(cfg.paths.dataset, {}, "paths.dataset");
  manifest.input(emb_path);
  manifest.input(dataset_path);
  const EmbeddingMatrix emb = read_embeddings(emb_path);
  const WordPairDataset ds = load_wordpair_dataset(dataset_path);
  const VocabSplit split = obtain_split(cfg, manifest);
  const PairSplit pairs = classify_pairs(ds, split.trained, split.imputed);
  const EvalReport report = bootstrap_eval(emb, pairs, cfg.n_resamples, cfg.bootstrap_seed);

  const std::string stem = emb_path.filename().string();
  const fs::path json_path = cfg.out("eval_" + stem + ".json");
  const fs::path text_path = cfg.out("eval_" + stem + ".txt");
  const std::string table = format_report_table(report);
  write_text_file(json_path, report_to_json(report) + "\n");
  write_text_file(text_path, table);
  manifest.output(json_path);
  manifest.output(text_path);
  std::cout << emb_path.string() << "\n" << table << std::flush;

  manifest.summary() = json::parse(report_to_json(report));
  manifest.write();
  if (report.evaluable_subsets() == 0) {
    std::string counts;
    for (PairSubset s : kAllSubsets) {
      counts += " " + std::string(subset_name(s)) + "=" +
                std::to_string(report.subset(s).embeddable) + "/" +
                std::to_string(report.subset(s).records);
    }
    throw InputError("evaluate: no evaluable word pairs (embeddable/assigned:" + counts +
                     ", skipped=" + std::to_string(report.skipped) + ")");
  }
  return json_path;
}

/// Fills an unset path with its default location, in both the struct and the
/// resolved JSON that manifests record.
void default_path(PipelineConfig& c, fs::path Paths::*field, const char* key, const fs::path& value) {
  if (!(c.paths.*field).empty()) return;
  c.paths.*field = value;
  c.resolved["paths"][key] = value.string();
}

void pipeline(const PipelineConfig& cfg) {
  Manifest manifest("pipeline", cfg);
  PipelineConfig c = cfg;

  if (!c.paths.ntriples.empty()) extract_graph(c);
  default_path(c, &Paths::nodes, "nodes", c.out("nodes.tsv"));
  default_path(c, &Paths::edges, "edges", c.out("edges.tsv"));
  node2vec(c);
  default_path(c, &Paths::domain_embeddings, "domain_embeddings", c.out("domain.vec"));

  filter_corpus_stage(c);
  default_path(c, &Paths::split, "split", c.out("split.json"));
  PipelineConfig text = c;
  text.paths.corpus = filtered_corpus_path(c);
  text.resolved["paths"]["corpus"] = text.paths.corpus.string();
  train_sgns_stage(text);
  default_path(c, &Paths::semantic_embeddings, "semantic_embeddings", c.out("semantic.vec"));

  impute_stage(c);
  align_stage(c);

  json reports;
  const std::pair<const char*, fs::path> models[] = {{"lsi", c.out("merged.lsi.vec")},
                                                     {"baseline", c.out("merged.baseline.vec")},
                                                     {"domain", c.paths.domain_embeddings}};
  for (const auto& [name, path] : models) {
    PipelineConfig e = c;
    e.paths.embeddings = path;
    e.resolved["paths"]["embeddings"] = path.string();
    try {
      const fs::path report_path = evaluate_stage(e);
      reports[name] = json::parse(read_text_file(report_path));
    } catch (const InputError& err) {
      // Only the imputed model must be evaluable; the others are reference points.
      if (std::string(name) == "lsi") throw;
      logger().warn("pipeline: {} model not evaluable: {}", name, err.what());
      reports[name] = nullptr;
    }
  }
  const fs::path summary_path = c.out("pipeline_report.json");
  write_json(summary_path, reports);
  manifest.output(summary_path);
  manifest.summary() = {{"reports", summary_path.string()}};
  manifest.write();
}

}  // namespace

void run_stage(std::string_view name, const PipelineConfig& cfg) {
  fs::create_directories(cfg.paths.output_dir);
  if (name == "extract-graph") extract_graph(cfg);
  else if (name == "node2vec") node2vec(cfg);
  else if (name == "train-sgns") train_sgns_stage(cfg);
  else if (name == "filter-corpus") filter_corpus_stage(cfg);
  else if (name == "impute") impute_stage(cfg);
  else if (name == "align-baseline") align_stage(cfg);
  else if (name == "evaluate") evaluate_stage(cfg);
  else if (name == "pipeline") pipeline(cfg);
  else throw InputError("unknown subcommand '" + std::string(name) + "'");
}

int run_subcommand(std::string_view name, const PipelineConfig& cfg) {
  try {
    run_stage(name, cfg);
    return kOk;
  } catch (const InputError& e) {
    logger().error("{}", e.what());
    return kInputError;
  } catch (const std::exception& e) {
    logger().error("internal error: {}", e.what());
    return kInternalError;
  }
}

// --- command line ------------------------------------------------------------

namespace {

/// Flag bound to a JSON pointer in the override patch.
template <typename T>
void flag(CLI::App* app, const std::string& names, const std::string& pointer, json& patch,
          const std::string& help) {
  app->add_option_function<T>(
      names, [&patch, pointer](const T& v) { patch[json::json_pointer(pointer)] = v; }, help);
}

void path_flag(CLI::App* app, const std::string& names, const std::string& pointer, json& patch,
               const std::string& help) {
  flag<std::string>(app, names, pointer, patch, help);
}

void sgns_flags(CLI::App* app, const std::string& section, json& patch) {
  flag<std::size_t>(app, "--dim", "/" + section + "/dim", patch, "embedding dimension");
  flag<std::size_t>(app, "--window", "/" + section + "/window", patch, "context window");
  flag<std::size_t>(app, "--epochs", "/" + section + "/epochs", patch, "training epochs");
  flag<std::size_t>(app, "--negative", "/" + section + "/negative", patch, "negative samples");
  flag<double>(app, "--alpha", "/" + section + "/alpha", patch, "initial learning rate");
  flag<double>(app, "--sample", "/" + section + "/sample", patch, "subsampling threshold");
  flag<std::size_t>(app, "--min-count", "/" + section + "/min_count", patch, "minimum token count");
  flag<std::size_t>(app, "--threads", "/" + section + "/threads", patch,
                    "training threads (>1 is not reproducible)");
  flag<std::uint64_t>(app, "--seed", "/" + section + "/seed", patch, "training seed");
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Latent semantic imputation of out-of-vocabulary word embeddings", "lsi"};
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<std::string> config_file;
  std::optional<std::string> log_level;
  json patch = json::object();
  app.add_option("-c,--config", config_file, "JSON config file");
  path_flag(&app, "-o,--out-dir", "/paths/output_dir", patch, "output directory");
  app.add_option("--log-level", log_level, "trace|debug|info|warn|error|off (env LSI_LOG_LEVEL)");

  auto* extract = app.add_subcommand("extract-graph", "N-Triples dump -> nodes.tsv / edges.tsv");
  path_flag(extract, "--ntriples", "/paths/ntriples", patch, "N-Triples input (optionally .gz)");
  path_flag(extract, "--nodes", "/paths/nodes", patch, "nodes.tsv output");
  path_flag(extract, "--edges", "/paths/edges", patch, "edges.tsv output");
  flag<std::string>(extract, "--bridge-rule", "/extraction/bridge_rule", patch,
                    "direct-neighbors|none");
  flag<std::string>(extract, "--edge-rule", "/extraction/edge_rule", patch,
                    "all-kept|primary-incident");

  auto* n2v = app.add_subcommand("node2vec", "graph TSV -> domain embeddings");
  path_flag(n2v, "--nodes", "/paths/nodes", patch, "nodes.tsv");
  path_flag(n2v, "--edges", "/paths/edges", patch, "edges.tsv");
  path_flag(n2v, "--out", "/paths/domain_embeddings", patch, "output embedding file");
  flag<double>(n2v, "--p", "/walk/p", patch, "return parameter");
  flag<double>(n2v, "--q", "/walk/q", patch, "in-out parameter");
  flag<std::size_t>(n2v, "--n-walks", "/walk/n_walks", patch, "walks per node");
  flag<std::size_t>(n2v, "--walk-length", "/walk/walk_length", patch, "nodes per walk");
  flag<std::uint64_t>(n2v, "--walk-seed", "/walk/seed", patch, "walk seed");
  sgns_flags(n2v, "node2vec_sgns", patch);

  auto* sgns = app.add_subcommand("train-sgns", "text corpus -> skip-gram embeddings");
  path_flag(sgns, "--corpus", "/paths/corpus", patch, "one sentence per line");
  path_flag(sgns, "--out", "/paths/semantic_embeddings", patch, "output embedding file");
  sgns_flags(sgns, "sgns", patch);

  auto* filter = app.add_subcommand("filter-corpus", "drop sentences mentioning imputed terms");
  path_flag(filter, "--corpus", "/paths/corpus", patch, "one sentence per line");
  path_flag(filter, "--terms", "/paths/terms", patch, "term list (else the imputed split)");
  path_flag(filter, "--dataset", "/paths/dataset", patch, "word-pair CSV used to derive the split");
  path_flag(filter, "--split", "/paths/split", patch, "split JSON");
  flag<std::uint64_t>(filter, "--split-seed", "/eval/split_seed", patch, "vocabulary split seed");

  auto* impute = app.add_subcommand("impute", "latent semantic imputation");
  path_flag(impute, "--semantic", "/paths/semantic_embeddings", patch, "semantic embeddings");
  path_flag(impute, "--domain", "/paths/domain_embeddings", patch, "domain embeddings");
  flag<std::size_t>(impute, "--k", "/lsi/k", patch, "minimum kNN-MST degree");
  flag<double>(impute, "--eta", "/lsi/eta", patch, "convergence threshold");
  flag<std::size_t>(impute, "--max-iters", "/lsi/max_iters", patch, "iteration cap");
  flag<std::string>(impute, "--unreachable", "/lsi/unreachable_policy", patch,
                    "anchor-mean|error");

  auto* align = app.add_subcommand("align-baseline", "orthogonal alignment baseline");
  path_flag(align, "--semantic", "/paths/semantic_embeddings", patch, "semantic embeddings");
  path_flag(align, "--domain", "/paths/domain_embeddings", patch, "domain embeddings");

  auto* evaluate = app.add_subcommand("evaluate", "word-pair correlation with bootstrap");
  path_flag(evaluate, "--embeddings", "/paths/embeddings", patch, "embeddings to evaluate");
  path_flag(evaluate, "--dataset", "/paths/dataset", patch, "word-pair CSV");
  path_flag(evaluate, "--split", "/paths/split", patch, "split JSON");
  flag<std::size_t>(evaluate, "--n-resamples", "/eval/n_resamples", patch, "bootstrap resamples");
  flag<std::uint64_t>(evaluate, "--bootstrap-seed", "/eval/bootstrap_seed", patch, "seed");
  flag<std::uint64_t>(evaluate, "--split-seed", "/eval/split_seed", patch, "split seed");

  auto* pipe = app.add_subcommand("pipeline", "run every stage end to end");
  path_flag(pipe, "--ntriples", "/paths/ntriples", patch, "N-Triples input");
  path_flag(pipe, "--nodes", "/paths/nodes", patch, "nodes.tsv (when not extracting)");
  path_flag(pipe, "--edges", "/paths/edges", patch, "edges.tsv (when not extracting)");
  path_flag(pipe, "--corpus", "/paths/corpus", patch, "text corpus");
  path_flag(pipe, "--dataset", "/paths/dataset", patch, "word-pair CSV");
  flag<std::size_t>(pipe, "--k", "/lsi/k", patch, "minimum kNN-MST degree");
  flag<double>(pipe, "--eta", "/lsi/eta", patch, "convergence threshold");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }
  if (log_level) set_log_level(spdlog::level::from_str(*log_level));

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    const PipelineConfig cfg =
        resolve_config(config_file ? std::optional<fs::path>(*config_file) : std::nullopt, patch);
    return run_subcommand(name, cfg);
  } catch (const InputError& e) {
    logger().error("{}", e.what());
    return kInputError;
  } catch (const std::exception& e) {
    logger().error("internal error: {}", e.what());
    return kInternalError;
  }
}

}  // namespace lsi::cli
