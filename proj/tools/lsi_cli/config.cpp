#include "lsi_cli/config.hpp"

#include <set>

#include "lsi/error.hpp"
#include "lsi/io.hpp"
#include "lsi_cli/digest.hpp"

namespace lsi::cli {

using json = nlohmann::ordered_json;

json default_config_json() {
  const PipelineConfig d;
  const ExtractionConfig mesh = ExtractionConfig::mesh_defaults();
  auto sgns_json = [](const SgnsConfig& c) {
    return json{{"dim", c.dim},         {"epochs", c.epochs}, {"negative", c.negative},
                {"alpha", c.alpha},     {"sample", c.sample}, {"window", c.window},
                {"min_count", c.min_count}, {"seed", c.seed}, {"threads", c.threads}};
  };
  json j;
  j["paths"] = {{"ntriples", ""},
                {"nodes", ""},
                {"edges", ""},
                {"domain_embeddings", ""},
                {"semantic_embeddings", ""},
                {"embeddings", ""},
                {"corpus", ""},
                {"terms", ""},
                {"dataset", ""},
                {"split", ""},
                {"output_dir", d.paths.output_dir.string()}};
  j["extraction"] = {{"node_types", mesh.node_type_iris},
                     {"bridge_types", mesh.bridge_type_iris},
                     {"type_predicate", mesh.type_predicate},
                     {"label_predicate", mesh.label_predicate},
                     {"bridge_rule", "direct-neighbors"},
                     {"edge_rule", "all-kept"}};
  j["walk"] = {{"p", d.walk.p},
               {"q", d.walk.q},
               {"n_walks", d.walk.n_walks},
               {"walk_length", d.walk.walk_length},
               {"seed", d.walk.seed}};
  j["node2vec_sgns"] = sgns_json(d.node2vec_sgns);
  j["sgns"] = sgns_json(d.sgns);
  j["lsi"] = {{"k", d.lsi.k},
              {"eta", d.lsi.eta},
              {"max_iters", d.lsi.max_iters},
              {"unreachable_policy", "anchor-mean"}};
  j["filter"] = {{"plural_suffixes", d.plural_suffixes}};
  j["eval"] = {{"n_resamples", d.n_resamples},
               {"split_seed", d.split_seed},
               {"bootstrap_seed", d.bootstrap_seed}};
  return j;
}

namespace {

/// Reads typed fields out of one config section, recording problems instead
/// of throwing so that all of them can be reported at once.
class Section {
 public:
  Section(const json& root, std::string name, std::vector<std::string>& errors)
      : name_(std::move(name)), errors_(errors) {
    if (!root.contains(name_) || !root.at(name_).is_object()) {
      error(name_, "must be an object");
      return;
    }
    node_ = &root.at(name_);
    for (const auto& [key, value] : node_->items()) {
      (void)value;
      unvisited_.insert(key);
    }
  }

  ~Section() {
    for (const auto& key : unvisited_) error(name_ + "." + key, "unknown key");
  }

  void get(const char* key, std::size_t& out, std::size_t min = 0) {
    const json* v = take(key);
    if (!v) return;
    if (!v->is_number_integer() || v->get<long long>() < static_cast<long long>(min)) {
      error(field(key), "expected an integer >= " + std::to_string(min));
      return;
    }
    out = v->get<std::size_t>();
  }

  void get_seed(const char* key, std::uint64_t& out) {
    const json* v = take(key);
    if (!v) return;
    if (!v->is_number_integer() || v->get<long long>() < 0) {
      error(field(key), "expected a non-negative integer");
      return;
    }
    out = v->get<std::uint64_t>();
  }

  void get(const char* key, double& out, bool strictly_positive) {
    const json* v = take(key);
    if (!v) return;
    if (!v->is_number()) {
      error(field(key), "expected a number");
      return;
    }
    const double x = v->get<double>();
    if (strictly_positive ? !(x > 0.0) : !(x >= 0.0)) {
      error(field(key), strictly_positive ? "must be > 0" : "must be >= 0");
      return;
    }
    out = x;
  }

  void get(const char* key, std::string& out) {
    const json* v = take(key);
    if (!v) return;
    if (!v->is_string()) {
      error(field(key), "expected a string");
      return;
    }
    out = v->get<std::string>();
  }

  void get(const char* key, fs::path& out) {
    std::string s = out.string();
    get(key, s);
    out = s;
  }

  void get(const char* key, std::vector<std::string>& out) {
    const json* v = take(key);
    if (!v) return;
    if (!v->is_array()) {
      error(field(key), "expected an array of strings");
      return;
    }
    std::vector<std::string> items;
    for (const auto& item : *v) {
      if (!item.is_string()) {
        error(field(key), "expected an array of strings");
        return;
      }
      items.push_back(item.get<std::string>());
    }
    out = std::move(items);
  }

  void error(const std::string& field_name, const std::string& what) {
    errors_.push_back(field_name + ": " + what);
  }
  std::string field(const char* key) const { return name_ + "." + key; }

 private:
  const json* take(const char* key) {
    if (!node_) return nullptr;
    unvisited_.erase(key);
    if (!node_->contains(key)) {
      error(field(key), "missing");
      return nullptr;
    }
    return &node_->at(key);
  }

  std::string name_;
  std::vector<std::string>& errors_;
  const json* node_ = nullptr;
  std::set<std::string> unvisited_;
};

void read_sgns(const json& j, const char* name, SgnsConfig& c, std::vector<std::string>& errors) {
  Section s(j, name, errors);
  s.get("dim", c.dim, 1);
  s.get("epochs", c.epochs, 1);
  s.get("negative", c.negative, 1);
  s.get("alpha", c.alpha, true);
  s.get("sample", c.sample, false);
  s.get("window", c.window, 1);
  s.get("min_count", c.min_count, 0);
  s.get_seed("seed", c.seed);
  s.get("threads", c.threads, 1);
}

}  // namespace

PipelineConfig parse_config(const json& j) {
  std::vector<std::string> errors;
  PipelineConfig c;
  if (!j.is_object()) throw InputError("config: top level must be a JSON object");
  static const std::set<std::string> sections = {"paths", "extraction", "walk", "node2vec_sgns",
                                                  "sgns",  "lsi",        "filter", "eval"};
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!sections.count(key)) errors.push_back(key + ": unknown section");
  }
  {
    Section s(j, "paths", errors);
    s.get("ntriples", c.paths.ntriples);
    s.get("nodes", c.paths.nodes);
    s.get("edges", c.paths.edges);
    s.get("domain_embeddings", c.paths.domain_embeddings);
    s.get("semantic_embeddings", c.paths.semantic_embeddings);
    s.get("embeddings", c.paths.embeddings);
    s.get("corpus", c.paths.corpus);
    s.get("terms", c.paths.terms);
    s.get("dataset", c.paths.dataset);
    s.get("split", c.paths.split);
    s.get("output_dir", c.paths.output_dir);
    if (c.paths.output_dir.empty()) s.error("paths.output_dir", "must not be empty");
  }
  {
    Section s(j, "extraction", errors);
    std::vector<std::string> node_types;
    std::vector<std::string> bridge_types;
    std::string bridge_rule = "direct-neighbors";
    std::string edge_rule = "all-kept";
    s.get("node_types", node_types);
    s.get("bridge_types", bridge_types);
    s.get("type_predicate", c.extraction.type_predicate);
    s.get("label_predicate", c.extraction.label_predicate);
    s.get("bridge_rule", bridge_rule);
    s.get("edge_rule", edge_rule);
    c.extraction.node_type_iris = {node_types.begin(), node_types.end()};
    c.extraction.bridge_type_iris = {bridge_types.begin(), bridge_types.end()};
    if (bridge_rule == "direct-neighbors") c.extraction.bridge_rule = BridgeRule::kDirectNeighbors;
    else if (bridge_rule == "none") c.extraction.bridge_rule = BridgeRule::kNone;
    else s.error("extraction.bridge_rule", "expected 'direct-neighbors' or 'none'");
    if (edge_rule == "all-kept") c.extraction.edge_rule = EdgeRule::kAllKept;
    else if (edge_rule == "primary-incident") c.extraction.edge_rule = EdgeRule::kPrimaryIncident;
    else s.error("extraction.edge_rule", "expected 'all-kept' or 'primary-incident'");
    if (c.extraction.node_type_iris.empty()) s.error("extraction.node_types", "must not be empty");
    if (c.extraction.bridge_rule == BridgeRule::kDirectNeighbors &&
        c.extraction.bridge_type_iris.empty()) {
      s.error("extraction.bridge_types", "required when bridge_rule is 'direct-neighbors'");
    }
  }
  {
    Section s(j, "walk", errors);
    s.get("p", c.walk.p, true);
    s.get("q", c.walk.q, true);
    s.get("n_walks", c.walk.n_walks, 1);
    s.get("walk_length", c.walk.walk_length, 2);
    s.get_seed("seed", c.walk.seed);
  }
  read_sgns(j, "node2vec_sgns", c.node2vec_sgns, errors);
  read_sgns(j, "sgns", c.sgns, errors);
  {
    Section s(j, "lsi", errors);
    std::string policy = "anchor-mean";
    s.get("k", c.lsi.k, 1);
    s.get("eta", c.lsi.eta, true);
    s.get("max_iters", c.lsi.max_iters, 1);
    s.get("unreachable_policy", policy);
    if (policy == "anchor-mean") c.lsi.unreachable = UnreachablePolicy::kAnchorMean;
    else if (policy == "error") c.lsi.unreachable = UnreachablePolicy::kError;
    else s.error("lsi.unreachable_policy", "expected 'anchor-mean' or 'error'");
  }
  {
    Section s(j, "filter", errors);
    s.get("plural_suffixes", c.plural_suffixes);
  }
  {
    Section s(j, "eval", errors);
    s.get("n_resamples", c.n_resamples, 1);
    s.get_seed("split_seed", c.split_seed);
    s.get_seed("bootstrap_seed", c.bootstrap_seed);
  }
  if (!errors.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& e : errors) msg += "\n  " + e;
    throw InputError(msg);
  }
  c.resolved = j;
  return c;
}

PipelineConfig resolve_config(const std::optional<fs::path>& config_file, const json& overrides) {
  json merged = default_config_json();
  if (config_file) {
    json file;
    try {
      file = json::parse(read_text_file(*config_file));
    } catch (const json::parse_error& e) {
      throw InputError("config file " + config_file->string() + ": " + e.what());
    }
    if (!file.is_object()) throw InputError("config file must contain a JSON object");
    merged.merge_patch(file);
  }
  if (!overrides.is_null()) merged.merge_patch(overrides);
  return parse_config(merged);
}

std::string config_hash(const json& resolved) { return sha256_hex(resolved.dump()); }

}  // namespace lsi::cli
