#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace lsi {

// ---------------------------------------------------------------------------
// RDF input
// ---------------------------------------------------------------------------

/// Parsed N-Triples with interned terms. IRIs are stored without angle
/// brackets; literals are stored unescaped, without quotes or language/datatype tags.
struct TripleSet {
  struct Triple {
    std::uint32_t subject = 0;
    std::uint32_t predicate = 0;
    std::uint32_t object = 0;
    bool object_is_literal = false;
    std::size_t line = 0;
  };

  std::vector<std::string> terms;
  std::vector<Triple> triples;
  std::size_t malformed_lines = 0;
  std::size_t first_malformed_line = 0;

  const std::string& term(std::uint32_t id) const { return terms[id]; }
  std::size_t size() const noexcept { return triples.size(); }
};

/// Line-oriented subset of N-Triples: "<s> <p> <o> ." and "<s> <p> "lit"[@lang|^^<dt>] .".
/// Blank lines and '#' comments are ignored; any other unparseable line is
/// skipped and counted in `malformed_lines`.
TripleSet parse_ntriples(std::istream& in);
TripleSet parse_ntriples_file(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Labeled graph
// ---------------------------------------------------------------------------

/// Undirected simple graph. Nodes keep insertion order; each edge is stored
/// once as (smaller index, larger index) and the edge list is sorted.
class LabeledGraph {
 public:
  struct Node {
    std::string id;
    std::string label;
  };

  /// Adds a node; throws InputError if the ID already exists.
  std::size_t add_node(std::string id, std::string label);
  /// Adds an undirected edge by node index. Self-loops and duplicates are ignored.
  /// Returns true if a new edge was inserted.
  bool add_edge(std::size_t u, std::size_t v);
  bool add_edge(const std::string& u, const std::string& v);

  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  const Node& node(std::size_t i) const { return nodes_.at(i); }
  /// Sorted (u < v) edge list.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;
  /// Sorted neighbor indices of node i.
  std::vector<std::vector<std::size_t>> adjacency() const;
  std::size_t index_of(const std::string& id) const;
  bool has_node(const std::string& id) const;

 private:
  std::vector<Node> nodes_;
  std::set<std::pair<std::size_t, std::size_t>> edges_;
  std::unordered_map<std::string, std::size_t> id_index_;
};

enum class BridgeRule {
  kNone,           // keep only primary-type nodes
  kDirectNeighbors // also keep secondary-type nodes sharing a triple with a primary node
};

enum class EdgeRule {
  kAllKept,          // any triple between two kept nodes becomes an edge
  kPrimaryIncident   // only triples with at least one primary-type endpoint
};

struct ExtractionConfig {
  std::set<std::string> node_type_iris;
  std::set<std::string> bridge_type_iris;
  std::string type_predicate = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
  std::string label_predicate = "http://www.w3.org/2000/01/rdf-schema#label";
  BridgeRule bridge_rule = BridgeRule::kDirectNeighbors;
  EdgeRule edge_rule = EdgeRule::kAllKept;

  /// MeSH RDF: topical descriptors plus directly connected concepts, labels from rdfs:label.
  static ExtractionConfig mesh_defaults();
  /// Throws InputError describing every invalid field.
  void validate() const;
};

struct ExtractionReport {
  std::size_t primary_nodes = 0;
  std::size_t bridge_nodes = 0;
  std::size_t unlabeled_nodes = 0;
  std::size_t candidate_triples = 0;
};

/// Keeps nodes per `cfg`, collapses every triple between two kept nodes into an
/// undirected untyped edge, and labels nodes from `cfg.label_predicate` (first
/// label in file order). Kept nodes with no label are dropped and logged. Output
/// nodes are ordered by node ID.
LabeledGraph extract_subgraph(const TripleSet& triples, const ExtractionConfig& cfg,
                              ExtractionReport* report = nullptr);

/// Connected components as sorted lists of node IDs, ordered by smallest member.
std::vector<std::vector<std::string>> connected_components(const LabeledGraph& g);

struct DegreeStats {
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  std::size_t min_degree = 0;
  std::size_t max_degree = 0;
  double mean_degree = 0.0;
  std::vector<std::size_t> degrees;  // per node, in node order
};

DegreeStats degree_stats(const LabeledGraph& g);

/// nodes.tsv: "<node_id>\t<label>" per line; edges.tsv: "<node_id>\t<node_id>" per line.
/// Tabs and newlines inside labels are written as spaces.
void write_graph_tsv(const LabeledGraph& g, const std::filesystem::path& nodes_path,
                     const std::filesystem::path& edges_path);
LabeledGraph read_graph_tsv(const std::filesystem::path& nodes_path,
                            const std::filesystem::path& edges_path);

}  // namespace lsi
