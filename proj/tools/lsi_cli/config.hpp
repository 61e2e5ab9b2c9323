#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lsi/graph.hpp"
#include "lsi/imputation.hpp"
#include "lsi/node2vec.hpp"
#include "lsi/sgns.hpp"

namespace lsi::cli {

namespace fs = std::filesystem;

struct Paths {
  fs::path ntriples;
  fs::path nodes;
  fs::path edges;
  fs::path domain_embeddings;
  fs::path semantic_embeddings;
  fs::path embeddings;  // model evaluated by "evaluate"
  fs::path corpus;
  fs::path terms;       // optional term list for filter-corpus
  fs::path dataset;
  fs::path split;
  fs::path output_dir = "lsi-out";
};

struct PipelineConfig {
  Paths paths;
  ExtractionConfig extraction;
  WalkConfig walk;
  SgnsConfig node2vec_sgns = SgnsConfig::node2vec_defaults();
  SgnsConfig sgns = SgnsConfig::text_defaults();
  LsiConfig lsi;
  std::vector<std::string> plural_suffixes{"s", "es"};
  std::size_t n_resamples = 1000;
  std::uint64_t split_seed = 1;
  std::uint64_t bootstrap_seed = 1;

  /// Fully resolved JSON the struct was parsed from (defaults + file + flags).
  nlohmann::ordered_json resolved;

  /// Default artifact locations inside output_dir, used when a path is unset.
  fs::path out(const std::string& name) const { return paths.output_dir / name; }
};

/// Built-in defaults as JSON (the schema of the config file).
nlohmann::ordered_json default_config_json();

/// Parses and validates a complete config tree. Every problem is collected and
/// reported together in one InputError, one "field: reason" line each.
PipelineConfig parse_config(const nlohmann::ordered_json& j);

/// defaults <- config file (JSON merge patch) <- overrides (merge patch).
PipelineConfig resolve_config(const std::optional<fs::path>& config_file,
                              const nlohmann::ordered_json& overrides);

/// Stable hex digest of the resolved configuration.
std::string config_hash(const nlohmann::ordered_json& resolved);

}  // namespace lsi::cli
