#include <gtest/gtest.h>

#include <fstream>

#include "fixture.hpp"
#include "lsi/embedding.hpp"
#include "lsi/error.hpp"
#include "lsi/io.hpp"
#include "lsi_cli/commands.hpp"
#include "lsi_cli/config.hpp"
#include "lsi_cli/digest.hpp"

namespace lsi::cli {
namespace {

using json = nlohmann::ordered_json;

int run(std::vector<std::string> args) {
  args.insert(args.begin(), "lsi");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

json read_json(const fs::path& p) { return json::parse(read_text_file(p)); }

TEST(Config, DefaultsMatchLibraryDefaults) {
  const auto cfg = resolve_config(std::nullopt, json::object());
  EXPECT_EQ(cfg.lsi.k, 50u);
  EXPECT_DOUBLE_EQ(cfg.lsi.eta, 1e-4);
  EXPECT_EQ(cfg.sgns.window, 30u);
  EXPECT_EQ(cfg.node2vec_sgns.window, 15u);
  EXPECT_EQ(cfg.walk.walk_length, 80u);
  EXPECT_EQ(cfg.n_resamples, 1000u);
  EXPECT_EQ(cfg.extraction.node_type_iris, ExtractionConfig::mesh_defaults().node_type_iris);
}

TEST(Config, FlagBeatsFileBeatsDefault) {
  const auto dir = testing::make_temp_dir("cfg");
  write_text_file(dir / "c.json", R"({"lsi": {"k": 7, "eta": 0.5}, "walk": {"p": 2.0}})");
  const json flags = {{"lsi", {{"k", 9}}}};
  const auto cfg = resolve_config(dir / "c.json", flags);
  EXPECT_EQ(cfg.lsi.k, 9u);             // flag
  EXPECT_DOUBLE_EQ(cfg.lsi.eta, 0.5);   // file
  EXPECT_DOUBLE_EQ(cfg.walk.p, 2.0);    // file
  EXPECT_DOUBLE_EQ(cfg.walk.q, 0.5);    // default
  EXPECT_EQ(cfg.lsi.max_iters, 10000u); // default
  EXPECT_EQ(cfg.resolved["lsi"]["k"], 9);
  fs::remove_all(dir);
}

TEST(Config, ReportsEveryBadField) {
  const json bad = {{"lsi", {{"k", 0}, {"eta", "x"}, {"bogus", 1}}},
                    {"walk", {{"q", -1.0}}},
                    {"extraction", {{"edge_rule", "sideways"}}}};
  try {
    resolve_config(std::nullopt, bad);
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    const std::string msg = e.what();
    for (const char* field : {"lsi.k", "lsi.eta", "lsi.bogus", "walk.q", "extraction.edge_rule"})
      EXPECT_NE(msg.find(field), std::string::npos) << field << " missing from:\n" << msg;
  }
}

TEST(Config, HashIsStable) {
  const auto a = resolve_config(std::nullopt, json::object());
  const auto b = resolve_config(std::nullopt, json{{"lsi", {{"k", 50}}}});
  const auto c = resolve_config(std::nullopt, json{{"lsi", {{"k", 51}}}});
  EXPECT_EQ(config_hash(a.resolved), config_hash(b.resolved));
  EXPECT_NE(config_hash(a.resolved), config_hash(c.resolved));
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Cli, ExitCodes) {
  const auto dir = testing::make_temp_dir("exit");
  EXPECT_EQ(run({"--out-dir", dir.string(), "impute", "--k", "0"}), kInputError);
  EXPECT_EQ(run({"--out-dir", dir.string(), "impute", "--semantic", (dir / "none.vec").string()}),
            kInputError);
  EXPECT_EQ(run({"no-such-command"}), kInputError);
  EXPECT_EQ(run({"--config", (dir / "missing.json").string(), "impute"}), kInputError);
  EXPECT_EQ(run({"--help"}), kOk);
  fs::remove_all(dir);
}

TEST(Cli, EvaluateWithoutEmbeddablePairsFails) {
  const auto dir = testing::make_temp_dir("eval");
  write_text_file(dir / "e.vec", "2 2\nfoo 1 0\nbar 0 1\n");
  write_text_file(dir / "d.csv", "Term1,Term2,Similarity,Relatedness\na,b,1,2\nc,d,3,4\n");
  EXPECT_EQ(run({"--out-dir", dir.string(), "evaluate", "--embeddings", (dir / "e.vec").string(),
                 "--dataset", (dir / "d.csv").string(), "--n-resamples", "10"}),
            kInputError);
  EXPECT_TRUE(fs::exists(dir / "manifests" / "evaluate.json"));
  fs::remove_all(dir);
}

json small_config(const fs::path& out) {
  return {{"paths", {{"output_dir", out.string()}}},
          {"walk", {{"n_walks", 10}, {"walk_length", 20}}},
          {"node2vec_sgns", {{"dim", 16}, {"epochs", 5}, {"window", 5}}},
          {"sgns", {{"dim", 16}, {"epochs", 5}, {"window", 5}, {"min_count", 1}, {"sample", 0}, {"negative", 5}}},
          {"lsi", {{"k", 4}}},
          {"eval", {{"n_resamples", 200}}}};
}

std::map<std::string, std::string> artifact_hashes(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file()) out[e.path().filename().string()] = sha256_file(e.path());
  return out;
}

TEST(Cli, PipelineOnFixture) {
  const auto dir = testing::make_temp_dir("pipeline");
  const auto f = testing::write_pipeline_fixture(dir);
  write_text_file(dir / "config.json", small_config(dir / "out").dump());
  const std::vector<std::string> args = {"--config", (dir / "config.json").string(), "pipeline",
                                         "--ntriples", f.ntriples.string(), "--corpus",
                                         f.corpus.string(), "--dataset", f.dataset.string()};
  ASSERT_EQ(run(args), kOk);
  const auto out = dir / "out";
  for (const char* name :
       {"nodes.tsv", "edges.tsv", "graph_stats.json", "domain.vec", "split.json",
        "corpus.filtered.txt", "filter_stats.json", "semantic.vec", "imputed.lsi.vec",
        "merged.lsi.vec", "impute_report.json", "imputed.baseline.vec", "merged.baseline.vec",
        "alignment_map.txt", "eval_merged.lsi.vec.json", "pipeline_report.json"})
    EXPECT_TRUE(fs::exists(out / name)) << name;
  for (const char* stage : {"extract-graph", "node2vec", "filter-corpus", "train-sgns", "impute",
                            "align-baseline", "evaluate", "pipeline"})
    EXPECT_TRUE(fs::exists(out / "manifests" / (std::string(stage) + ".json"))) << stage;

  const auto stats = read_json(out / "graph_stats.json");
  EXPECT_EQ(stats["nodes"], 48);
  EXPECT_EQ(stats["edges"], 73);

  // Imputed split terms were filtered out of the corpus and then imputed.
  const auto split = read_json(out / "split.json");
  const auto semantic = read_embeddings(out / "semantic.vec");
  const auto merged = read_embeddings(out / "merged.lsi.vec");
  for (const auto& t : split["imputed"]) {
    EXPECT_FALSE(semantic.contains(t.get<std::string>())) << t;
    EXPECT_TRUE(merged.contains(t.get<std::string>())) << t;
  }

  const auto report = read_json(out / "pipeline_report.json");
  ASSERT_TRUE(report["lsi"].is_object());
  EXPECT_GE(report["lsi"]["subsets"].size(), 1u);

  const auto manifest = read_json(out / "manifests" / "impute.json");
  EXPECT_EQ(manifest["config_hash"].get<std::string>().size(), 64u);
  EXPECT_EQ(manifest["outputs"][0]["sha256"].get<std::string>().size(), 64u);

  // Same config and seeds: identical artifacts.
  const auto first = artifact_hashes(out);
  ASSERT_EQ(run(args), kOk);
  EXPECT_EQ(artifact_hashes(out), first);
  fs::remove_all(dir);
}

TEST(Cli, StagesRunIndividually) {
  const auto dir = testing::make_temp_dir("stages");
  const auto f = testing::write_pipeline_fixture(dir, 3);
  write_text_file(dir / "config.json", small_config(dir).dump());
  const std::string cfg = (dir / "config.json").string();
  ASSERT_EQ(run({"-c", cfg, "extract-graph", "--ntriples", f.ntriples.string()}), kOk);
  ASSERT_EQ(run({"-c", cfg, "node2vec"}), kOk);
  write_text_file(dir / "terms.txt", "Topic A1\ntopic-b2\n");
  ASSERT_EQ(run({"-c", cfg, "filter-corpus", "--corpus", f.corpus.string(), "--terms",
                 (dir / "terms.txt").string()}),
            kOk);
  const auto fs_json = read_json(dir / "filter_stats.json");
  EXPECT_GT(fs_json["removed"].get<int>(), 0);
  ASSERT_EQ(run({"-c", cfg, "train-sgns", "--corpus", (dir / "corpus.filtered.txt").string()}), kOk);
  ASSERT_EQ(run({"-c", cfg, "impute", "--k", "3"}), kOk);
  const auto rep = read_json(dir / "impute_report.json");
  EXPECT_TRUE(rep["converged"].get<bool>());
  EXPECT_EQ(rep["k"], 3);
  ASSERT_EQ(run({"-c", cfg, "align-baseline"}), kOk);
  EXPECT_TRUE(read_embeddings(dir / "imputed.lsi.vec").contains("topic-a1"));
  EXPECT_TRUE(read_embeddings(dir / "imputed.baseline.vec").contains("topic-b2"));
  fs::remove_all(dir);
}

}  // namespace
}  // namespace lsi::cli
