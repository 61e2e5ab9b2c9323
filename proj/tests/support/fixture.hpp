#pragma once

#include <cstdint>
#include <filesystem>

namespace lsi::testing {

/// Small two-topic world: an N-Triples graph in the MeSH vocabulary, a text
/// corpus using the descriptor labels, and a word-pair CSV scoring same-topic
/// pairs high.
struct PipelineFixture {
  std::filesystem::path ntriples;
  std::filesystem::path corpus;
  std::filesystem::path dataset;
};

PipelineFixture write_pipeline_fixture(const std::filesystem::path& dir, std::uint64_t seed = 7);

/// Fresh empty directory under the system temp dir.
std::filesystem::path make_temp_dir(const std::string& tag);

}  // namespace lsi::testing
