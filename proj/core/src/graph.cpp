#include "lsi/graph.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <optional>
#include <unordered_map>

#include "lsi/error.hpp"
#include "lsi/io.hpp"
#include "lsi/log.hpp"

namespace lsi {

// ---------------------------------------------------------------------------
// N-Triples
// ---------------------------------------------------------------------------

namespace {

enum class TermKind { kIri, kLiteral };

struct Term {
  TermKind kind;
  std::string text;
};

void skip_ws(std::string_view s, std::size_t& pos) {
  while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
}

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

std::optional<std::uint32_t> parse_hex(std::string_view s) {
  std::uint32_t v = 0;
  for (char c : s) {
    v <<= 4;
    if (c >= '0' && c <= '9') v |= static_cast<std::uint32_t>(c - '0');
    else if (c >= 'a' && c <= 'f') v |= static_cast<std::uint32_t>(c - 'a' + 10);
    else if (c >= 'A' && c <= 'F') v |= static_cast<std::uint32_t>(c - 'A' + 10);
    else return std::nullopt;
  }
  return v;
}

std::optional<std::string> parse_iri(std::string_view s, std::size_t& pos) {
  if (pos >= s.size() || s[pos] != '<') return std::nullopt;
  const std::size_t close = s.find('>', pos + 1);
  if (close == std::string_view::npos || close == pos + 1) return std::nullopt;
  std::string_view body = s.substr(pos + 1, close - pos - 1);
  if (body.find_first_of(" \t<\"") != std::string_view::npos) return std::nullopt;
  pos = close + 1;
  return std::string(body);
}

std::optional<std::string> parse_literal(std::string_view s, std::size_t& pos) {
  if (pos >= s.size() || s[pos] != '"') return std::nullopt;
  std::string out;
  std::size_t i = pos + 1;
  for (;;) {
    if (i >= s.size()) return std::nullopt;
    const char c = s[i];
    if (c == '"') break;
    if (c != '\\') {
      out += c;
      ++i;
      continue;
    }
    if (i + 1 >= s.size()) return std::nullopt;
    const char e = s[i + 1];
    i += 2;
    switch (e) {
      case 't': out += '\t'; break;
      case 'b': out += '\b'; break;
      case 'n': out += '\n'; break;
      case 'r': out += '\r'; break;
      case 'f': out += '\f'; break;
      case '"': out += '"'; break;
      case '\'': out += '\''; break;
      case '\\': out += '\\'; break;
      case 'u':
      case 'U': {
        const std::size_t width = e == 'u' ? 4 : 8;
        if (i + width > s.size()) return std::nullopt;
        auto cp = parse_hex(s.substr(i, width));
        if (!cp || *cp > 0x10FFFF) return std::nullopt;
        append_utf8(out, *cp);
        i += width;
        break;
      }
      default:
        return std::nullopt;
    }
  }
  ++i;  // closing quote
  if (i < s.size() && s[i] == '@') {
    ++i;
    const std::size_t start = i;
    while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '-')) ++i;
    if (i == start) return std::nullopt;
  } else if (i + 1 < s.size() && s[i] == '^' && s[i + 1] == '^') {
    i += 2;
    if (!parse_iri(s, i)) return std::nullopt;
  }
  pos = i;
  return out;
}

std::optional<Term> parse_object(std::string_view s, std::size_t& pos) {
  if (pos < s.size() && s[pos] == '<') {
    if (auto iri = parse_iri(s, pos)) return Term{TermKind::kIri, std::move(*iri)};
    return std::nullopt;
  }
  if (auto lit = parse_literal(s, pos)) return Term{TermKind::kLiteral, std::move(*lit)};
  return std::nullopt;
}

class TripleBuilder {
 public:
  explicit TripleBuilder(TripleSet& out) : out_(out) {}

  void feed(std::string_view line, std::size_t line_no) {
    std::size_t pos = 0;
    skip_ws(line, pos);
    if (pos == line.size() || line[pos] == '#') return;

    auto subject = parse_iri(line, pos);
    skip_ws(line, pos);
    auto predicate = subject ? parse_iri(line, pos) : std::nullopt;
    skip_ws(line, pos);
    auto object = predicate ? parse_object(line, pos) : std::nullopt;
    bool ok = object.has_value();
    if (ok) {
      skip_ws(line, pos);
      ok = pos < line.size() && line[pos] == '.';
      ++pos;
      skip_ws(line, pos);
      ok = ok && (pos >= line.size() || line[pos] == '#');
    }
    if (!ok) {
      if (out_.malformed_lines == 0) out_.first_malformed_line = line_no;
      ++out_.malformed_lines;
      logger().debug("ntriples: skipping malformed line {}", line_no);
      return;
    }
    TripleSet::Triple t;
    t.subject = intern(std::move(*subject));
    t.predicate = intern(std::move(*predicate));
    t.object_is_literal = object->kind == TermKind::kLiteral;
    t.object = intern(std::move(object->text));
    t.line = line_no;
    out_.triples.push_back(t);
  }

  void finish() const {
    if (out_.malformed_lines > 0) {
      logger().warn("ntriples: skipped {} malformed line(s), first at line {}",
                    out_.malformed_lines, out_.first_malformed_line);
    }
  }

 private:
  std::uint32_t intern(std::string term) {
    auto [it, inserted] = ids_.try_emplace(term, static_cast<std::uint32_t>(out_.terms.size()));
    if (inserted) out_.terms.push_back(std::move(term));
    return it->second;
  }

  TripleSet& out_;
  std::unordered_map<std::string, std::uint32_t> ids_;
};

}  // namespace

TripleSet parse_ntriples(std::istream& in) {
  TripleSet out;
  TripleBuilder builder(out);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    builder.feed(line, ++line_no);
  }
  builder.finish();
  return out;
}

TripleSet parse_ntriples_file(const std::filesystem::path& path) {
  TripleSet out;
  TripleBuilder builder(out);
  LineReader reader(path);
  std::string line;
  while (reader.next(line)) builder.feed(line, reader.line_number());
  builder.finish();
  logger().info("ntriples: {} triples, {} distinct terms from {}", out.triples.size(),
                out.terms.size(), path.string());
  return out;
}

// ---------------------------------------------------------------------------
// LabeledGraph
// ---------------------------------------------------------------------------

std::size_t LabeledGraph::add_node(std::string id, std::string label) {
  const std::size_t index = nodes_.size();
  auto [it, inserted] = id_index_.emplace(id, index);
  if (!inserted) throw InputError("duplicate node id '" + id + "'");
  nodes_.push_back({std::move(id), std::move(label)});
  return index;
}

bool LabeledGraph::add_edge(std::size_t u, std::size_t v) {
  if (u >= nodes_.size() || v >= nodes_.size()) {
    throw InputError("edge references unknown node index");
  }
  if (u == v) return false;
  return edges_.emplace(std::min(u, v), std::max(u, v)).second;
}

bool LabeledGraph::add_edge(const std::string& u, const std::string& v) {
  return add_edge(index_of(u), index_of(v));
}

std::vector<std::pair<std::size_t, std::size_t>> LabeledGraph::edges() const {
  return {edges_.begin(), edges_.end()};
}

std::vector<std::vector<std::size_t>> LabeledGraph::adjacency() const {
  std::vector<std::vector<std::size_t>> adj(nodes_.size());
  for (const auto& [u, v] : edges_) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  return adj;
}

std::size_t LabeledGraph::index_of(const std::string& id) const {
  auto it = id_index_.find(id);
  if (it == id_index_.end()) throw InputError("unknown node id '" + id + "'");
  return it->second;
}

bool LabeledGraph::has_node(const std::string& id) const { return id_index_.count(id) != 0; }

// ---------------------------------------------------------------------------
// Extraction
// ---------------------------------------------------------------------------

ExtractionConfig ExtractionConfig::mesh_defaults() {
  ExtractionConfig cfg;
  cfg.node_type_iris = {"http://id.nlm.nih.gov/mesh/vocab#TopicalDescriptor"};
  cfg.bridge_type_iris = {"http://id.nlm.nih.gov/mesh/vocab#Concept"};
  cfg.bridge_rule = BridgeRule::kDirectNeighbors;
  cfg.edge_rule = EdgeRule::kAllKept;
  return cfg;
}

void ExtractionConfig::validate() const {
  std::string problems;
  if (node_type_iris.empty()) problems += "\n  node_type_iris: must not be empty";
  if (type_predicate.empty()) problems += "\n  type_predicate: must not be empty";
  if (label_predicate.empty()) problems += "\n  label_predicate: must not be empty";
  if (bridge_rule == BridgeRule::kDirectNeighbors && bridge_type_iris.empty()) {
    problems += "\n  bridge_type_iris: required when bridge_rule is direct-neighbors";
  }
  if (!problems.empty()) throw InputError("invalid extraction config:" + problems);
}

LabeledGraph extract_subgraph(const TripleSet& t, const ExtractionConfig& cfg,
                              ExtractionReport* report) {
  cfg.validate();
  const std::size_t n_terms = t.terms.size();

  std::unordered_map<std::string_view, std::uint32_t> term_ids;
  term_ids.reserve(n_terms);
  for (std::uint32_t i = 0; i < n_terms; ++i) term_ids.emplace(t.terms[i], i);
  auto id_of = [&](const std::string& iri) -> std::optional<std::uint32_t> {
    if (auto it = term_ids.find(iri); it != term_ids.end()) return it->second;
    return std::nullopt;
  };

  const auto type_pred = id_of(cfg.type_predicate);
  const auto label_pred = id_of(cfg.label_predicate);
  std::vector<char> is_primary_type(n_terms, 0);
  std::vector<char> is_bridge_type(n_terms, 0);
  for (const auto& iri : cfg.node_type_iris) {
    if (auto id = id_of(iri)) is_primary_type[*id] = 1;
  }
  for (const auto& iri : cfg.bridge_type_iris) {
    if (auto id = id_of(iri)) is_bridge_type[*id] = 1;
  }

  std::vector<char> primary(n_terms, 0);
  std::vector<char> bridge_candidate(n_terms, 0);
  if (type_pred) {
    for (const auto& tr : t.triples) {
      if (tr.predicate != *type_pred || tr.object_is_literal) continue;
      if (is_primary_type[tr.object]) primary[tr.subject] = 1;
      if (is_bridge_type[tr.object]) bridge_candidate[tr.subject] = 1;
    }
  }

  auto is_relation = [&](const TripleSet::Triple& tr) {
    return !tr.object_is_literal && (!type_pred || tr.predicate != *type_pred) &&
           (!label_pred || tr.predicate != *label_pred);
  };

  std::vector<char> kept(primary);
  if (cfg.bridge_rule == BridgeRule::kDirectNeighbors) {
    for (const auto& tr : t.triples) {
      if (!is_relation(tr)) continue;
      if (primary[tr.subject] && bridge_candidate[tr.object] && !primary[tr.object]) {
        kept[tr.object] = 1;
      }
      if (primary[tr.object] && bridge_candidate[tr.subject] && !primary[tr.subject]) {
        kept[tr.subject] = 1;
      }
    }
  }

  constexpr std::uint32_t kNoLabel = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> label(n_terms, kNoLabel);
  if (label_pred) {
    for (const auto& tr : t.triples) {
      if (tr.predicate == *label_pred && tr.object_is_literal && kept[tr.subject] &&
          label[tr.subject] == kNoLabel) {
        label[tr.subject] = tr.object;
      }
    }
  }

  ExtractionReport rep;
  std::vector<std::uint32_t> node_terms;
  for (std::uint32_t i = 0; i < n_terms; ++i) {
    if (!kept[i]) continue;
    if (primary[i]) ++rep.primary_nodes;
    else ++rep.bridge_nodes;
    if (label[i] == kNoLabel) {
      ++rep.unlabeled_nodes;
      kept[i] = 0;
      logger().debug("extract: dropping unlabeled node {}", t.terms[i]);
      continue;
    }
    node_terms.push_back(i);
  }
  if (rep.unlabeled_nodes > 0) {
    logger().warn("extract: dropped {} kept node(s) without a label", rep.unlabeled_nodes);
  }
  std::sort(node_terms.begin(), node_terms.end(),
            [&](std::uint32_t a, std::uint32_t b) { return t.terms[a] < t.terms[b]; });

  LabeledGraph g;
  std::vector<std::size_t> node_index(n_terms, 0);
  for (std::uint32_t term : node_terms) {
    node_index[term] = g.add_node(t.terms[term], t.terms[label[term]]);
  }
  for (const auto& tr : t.triples) {
    if (!is_relation(tr) || !kept[tr.subject] || !kept[tr.object]) continue;
    if (cfg.edge_rule == EdgeRule::kPrimaryIncident && !primary[tr.subject] &&
        !primary[tr.object]) {
      continue;
    }
    ++rep.candidate_triples;
    g.add_edge(node_index[tr.subject], node_index[tr.object]);
  }
  logger().info("extract: {} nodes ({} primary, {} bridged), {} edges", g.node_count(),
                rep.primary_nodes, rep.bridge_nodes, g.edge_count());
  if (report) *report = rep;
  return g;
}

// ---------------------------------------------------------------------------
// Structure
// ---------------------------------------------------------------------------

std::vector<std::vector<std::string>> connected_components(const LabeledGraph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const auto& [u, v] : g.edges()) {
    const std::size_t a = find(u);
    const std::size_t b = find(v);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::unordered_map<std::size_t, std::size_t> slot;
  std::vector<std::vector<std::string>> components;
  for (std::size_t i = 0; i < n; ++i) {
    auto [it, inserted] = slot.emplace(find(i), components.size());
    if (inserted) components.emplace_back();
    components[it->second].push_back(g.node(i).id);
  }
  for (auto& c : components) std::sort(c.begin(), c.end());
  std::sort(components.begin(), components.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return components;
}

DegreeStats degree_stats(const LabeledGraph& g) {
  DegreeStats s;
  s.node_count = g.node_count();
  s.edge_count = g.edge_count();
  s.degrees.assign(s.node_count, 0);
  for (const auto& [u, v] : g.edges()) {
    ++s.degrees[u];
    ++s.degrees[v];
  }
  if (s.node_count > 0) {
    s.min_degree = *std::min_element(s.degrees.begin(), s.degrees.end());
    s.max_degree = *std::max_element(s.degrees.begin(), s.degrees.end());
    s.mean_degree = 2.0 * static_cast<double>(s.edge_count) / static_cast<double>(s.node_count);
  }
  return s;
}

// ---------------------------------------------------------------------------
// TSV interchange
// ---------------------------------------------------------------------------

namespace {

std::string sanitize_field(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  }
  return out;
}

std::pair<std::string_view, std::string_view> split_tab(std::string_view line) {
  const auto tab = line.find('\t');
  if (tab == std::string_view::npos) return {line, {}};
  return {line.substr(0, tab), line.substr(tab + 1)};
}

}  // namespace

void write_graph_tsv(const LabeledGraph& g, const std::filesystem::path& nodes_path,
                     const std::filesystem::path& edges_path) {
  {
    LineWriter out(nodes_path);
    for (const auto& node : g.nodes()) {
      out.write_line(sanitize_field(node.id) + "\t" + sanitize_field(node.label));
    }
    out.close();
  }
  LineWriter out(edges_path);
  for (const auto& [u, v] : g.edges()) {
    out.write_line(g.node(u).id + "\t" + g.node(v).id);
  }
  out.close();
}

LabeledGraph read_graph_tsv(const std::filesystem::path& nodes_path,
                            const std::filesystem::path& edges_path) {
  LabeledGraph g;
  std::string line;
  {
    LineReader in(nodes_path);
    while (in.next(line)) {
      if (line.empty()) continue;
      auto [id, label] = split_tab(line);
      if (id.empty() || label.data() == nullptr) {
        throw ParseError(in.source(), in.line_number(), "expected '<node_id>\\t<label>'");
      }
      if (g.has_node(std::string(id))) {
        throw ParseError(in.source(), in.line_number(), "duplicate node id");
      }
      g.add_node(std::string(id), std::string(label));
    }
  }
  LineReader in(edges_path);
  while (in.next(line)) {
    if (line.empty()) continue;
    auto [u, v] = split_tab(line);
    if (u.empty() || v.empty() || v.find('\t') != std::string_view::npos) {
      throw ParseError(in.source(), in.line_number(), "expected '<node_id>\\t<node_id>'");
    }
    const std::string a(u);
    const std::string b(v);
    if (!g.has_node(a) || !g.has_node(b)) {
      throw ParseError(in.source(), in.line_number(), "edge references unknown node");
    }
    g.add_edge(a, b);
  }
  return g;
}

}  // namespace lsi
