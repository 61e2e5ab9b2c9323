#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "fixture.hpp"
#include "lsi/error.hpp"
#include "lsi/graph.hpp"
#include "lsi/io.hpp"
#include "oracles.hpp"

namespace lsi {
namespace {

TripleSet parse(const std::string& text) {
  std::istringstream in(text);
  return parse_ntriples(in);
}

TEST(ParseNTriples, IriTriple) {
  const auto t = parse("<a> <p> <b> .\n");
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t.term(t.triples[0].subject), "a");
  EXPECT_EQ(t.term(t.triples[0].predicate), "p");
  EXPECT_EQ(t.term(t.triples[0].object), "b");
  EXPECT_FALSE(t.triples[0].object_is_literal);
}

TEST(ParseNTriples, Literals) {
  const auto t = parse(
      "<a> <rdfs:label> \"Aspirin\" .\n"
      "<b> <l> \"Caf\\u00E9 \\\"x\\\"\"@en .\n"
      "<c> <l> \"12\"^^<http://www.w3.org/2001/XMLSchema#int> .\n");
  ASSERT_EQ(t.size(), 3u);
  EXPECT_TRUE(t.triples[0].object_is_literal);
  EXPECT_EQ(t.term(t.triples[0].object), "Aspirin");
  EXPECT_EQ(t.term(t.triples[1].object), "Caf\xc3\xa9 \"x\"");
  EXPECT_EQ(t.term(t.triples[2].object), "12");
}

TEST(ParseNTriples, GarbageCountedAndSkipped) {
  const auto t = parse("# comment\n\n<a> <p> <b> .\nthis is garbage\n<a> <p>\n");
  EXPECT_EQ(t.size(), 1u);
  EXPECT_EQ(t.malformed_lines, 2u);
  EXPECT_EQ(t.first_malformed_line, 4u);
}

const std::string kRdfType = "<http://www.w3.org/1999/02/22-rdf-syntax-ns#type>";
const std::string kLabel = "<http://www.w3.org/2000/01/rdf-schema#label>";

ExtractionConfig toy_config() {
  ExtractionConfig cfg;
  cfg.node_type_iris = {"T"};
  cfg.bridge_type_iris = {"C"};
  return cfg;
}

std::string typed(const std::string& node, const std::string& type, const std::string& label) {
  return "<" + node + "> " + kRdfType + " <" + type + "> .\n<" + node + "> " + kLabel + " \"" +
         label + "\" .\n";
}

TEST(ExtractSubgraph, ToyDescriptorWithTwoConcepts) {
  const auto t = parse(typed("d1", "T", "Desc") + typed("c1", "C", "One") +
                       typed("c2", "C", "Two") + typed("c3", "C", "Far") +
                       "<d1> <has> <c1> .\n<c2> <of> <d1> .\n<c3> <rel> <c3x> .\n");
  ExtractionReport rep;
  const auto g = extract_subgraph(t, toy_config(), &rep);
  EXPECT_EQ(g.node_count(), 3u);
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_EQ(rep.primary_nodes, 1u);
  EXPECT_EQ(rep.bridge_nodes, 2u);
  EXPECT_FALSE(g.has_node("c3"));
  EXPECT_EQ(g.node(g.index_of("c1")).label, "One");
}

TEST(ExtractSubgraph, DirectionAndDuplicatesCollapse) {
  const auto t = parse(typed("a", "T", "A") + typed("b", "T", "B") +
                       "<a> <p> <b> .\n<b> <q> <a> .\n<a> <p> <b> .\n");
  const auto g = extract_subgraph(t, toy_config());
  EXPECT_EQ(g.edge_count(), 1u);
}

TEST(ExtractSubgraph, RulesAndUnlabeledNodes) {
  // Two concepts of one descriptor are linked to each other; a descriptor has no label.
  const auto t = parse(typed("d", "T", "D") + typed("c1", "C", "X") + typed("c2", "C", "Y") +
                       "<n> " + kRdfType + " <T> .\n<n> <p> <d> .\n" +
                       "<d> <p> <c1> .\n<d> <p> <c2> .\n<c1> <p> <c2> .\n");
  ExtractionConfig cfg = toy_config();
  ExtractionReport rep;
  auto g = extract_subgraph(t, cfg, &rep);
  EXPECT_EQ(g.node_count(), 3u);
  EXPECT_EQ(g.edge_count(), 3u);
  EXPECT_EQ(rep.unlabeled_nodes, 1u);

  cfg.edge_rule = EdgeRule::kPrimaryIncident;
  EXPECT_EQ(extract_subgraph(t, cfg).edge_count(), 2u);

  cfg.bridge_rule = BridgeRule::kNone;
  g = extract_subgraph(t, cfg);
  EXPECT_EQ(g.node_count(), 1u);
  EXPECT_EQ(g.edge_count(), 0u);
}

TEST(ExtractSubgraph, FixtureGraph) {
  const auto dir = testing::make_temp_dir("graph");
  const auto f = testing::write_pipeline_fixture(dir);
  const auto t = parse_ntriples_file(f.ntriples);
  EXPECT_EQ(t.malformed_lines, 0u);
  const auto g = extract_subgraph(t, ExtractionConfig::mesh_defaults());
  EXPECT_EQ(g.node_count(), 48u);
  // per topic: 12 concept links, 12 ring edges, 12 skip edges; plus one cross link
  EXPECT_EQ(g.edge_count(), 2u * 36u + 1u);
  EXPECT_EQ(connected_components(g).size(), 1u);
  std::filesystem::remove_all(dir);
}

TEST(ExtractionConfig, ValidateRejectsEmptyTypes) {
  ExtractionConfig cfg;
  EXPECT_THROW(cfg.validate(), InputError);
  EXPECT_NO_THROW(ExtractionConfig::mesh_defaults().validate());
}

TEST(LabeledGraph, DuplicateNodeAndSelfLoops) {
  LabeledGraph g;
  g.add_node("a", "A");
  EXPECT_THROW(g.add_node("a", "again"), InputError);
  g.add_node("b", "B");
  EXPECT_FALSE(g.add_edge(0, 0));
  EXPECT_TRUE(g.add_edge("b", "a"));
  EXPECT_FALSE(g.add_edge(0, 1));
  EXPECT_EQ(g.edges(), (std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}}));
}

LabeledGraph numbered(std::size_t n) {
  LabeledGraph g;
  for (std::size_t i = 0; i < n; ++i) {
    char id[8];
    std::snprintf(id, sizeof id, "n%03zu", i);
    g.add_node(id, id);
  }
  return g;
}

TEST(ConnectedComponents, Examples) {
  auto path = numbered(3);
  path.add_edge(0, 1);
  path.add_edge(1, 2);
  EXPECT_EQ(connected_components(path).size(), 1u);
  const auto two = connected_components(numbered(2));
  EXPECT_EQ(two, (std::vector<std::vector<std::string>>{{"n000"}, {"n001"}}));
}

TEST(ConnectedComponents, MatchesTransitiveClosure) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 64;
    auto g = numbered(n);
    const double density = std::uniform_real_distribution<double>(0.0, 3.0)(rng) / n;
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = u + 1; v < n; ++v)
        if (std::uniform_real_distribution<double>(0, 1)(rng) < density) g.add_edge(u, v);
    const auto labels = testing::closure_components(n, g.edges());
    const auto comps = connected_components(g);
    std::vector<std::size_t> mine(n);
    for (std::size_t c = 0; c < comps.size(); ++c)
      for (const auto& id : comps[c]) mine[g.index_of(id)] = c;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        ASSERT_EQ(labels[i] == labels[j], mine[i] == mine[j]) << "trial " << trial;
  }
}

TEST(DegreeStats, TriangleAndStar) {
  auto tri = numbered(3);
  tri.add_edge(0, 1);
  tri.add_edge(1, 2);
  tri.add_edge(0, 2);
  const auto t = degree_stats(tri);
  EXPECT_EQ(t.node_count, 3u);
  EXPECT_EQ(t.edge_count, 3u);
  EXPECT_EQ(t.min_degree, 2u);
  EXPECT_EQ(t.max_degree, 2u);
  EXPECT_DOUBLE_EQ(t.mean_degree, 2.0);

  auto star = numbered(5);
  for (std::size_t i = 1; i < 5; ++i) star.add_edge(0, i);
  EXPECT_EQ(degree_stats(star).degrees, (std::vector<std::size_t>{4, 1, 1, 1, 1}));
}

TEST(GraphTsv, RoundTrip) {
  const auto dir = testing::make_temp_dir("tsv");
  LabeledGraph g;
  g.add_node("x", "Label\twith tab");
  g.add_node("y", "Plain");
  g.add_node("z", "Z");
  g.add_edge(0, 2);
  write_graph_tsv(g, dir / "nodes.tsv", dir / "edges.tsv");
  const auto back = read_graph_tsv(dir / "nodes.tsv", dir / "edges.tsv");
  ASSERT_EQ(back.node_count(), 3u);
  EXPECT_EQ(back.node(0).label, "Label with tab");
  EXPECT_EQ(back.edges(), g.edges());
  write_text_file(dir / "bad.tsv", "x\tq\n");
  EXPECT_THROW(read_graph_tsv(dir / "nodes.tsv", dir / "bad.tsv"), InputError);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace lsi
