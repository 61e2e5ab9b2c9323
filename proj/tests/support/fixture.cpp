#include "fixture.hpp"

#include <fstream>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace lsi::testing {

namespace {

constexpr int kTopics = 2;
constexpr int kPerTopic = 12;
constexpr int kRated = 7;  // descriptors per topic that appear in the word-pair file
const char* const kMesh = "http://id.nlm.nih.gov/mesh/";
const char* const kType = "<http://www.w3.org/1999/02/22-rdf-syntax-ns#type>";
const char* const kLabel = "<http://www.w3.org/2000/01/rdf-schema#label>";

std::string iri(const std::string& local) { return "<" + std::string(kMesh) + local + ">"; }
std::string vocab(const std::string& local) {
  return "<" + std::string(kMesh) + "vocab#" + local + ">";
}
std::string topic_letter(int t) { return std::string(1, static_cast<char>('A' + t)); }
std::string descriptor_label(int t, int i) { return "Topic " + topic_letter(t) + std::to_string(i); }
std::string descriptor_token(int t, int i) {
  return "topic-" + std::string(1, static_cast<char>('a' + t)) + std::to_string(i);
}

}  // namespace

std::filesystem::path make_temp_dir(const std::string& tag) {
  static std::mt19937_64 rng{std::random_device{}()};
  auto dir = std::filesystem::temp_directory_path() /
             ("lsi-test-" + tag + "-" + std::to_string(rng() % 1000000000));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

PipelineFixture write_pipeline_fixture(const std::filesystem::path& dir, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  PipelineFixture f{dir / "graph.nt", dir / "corpus.txt", dir / "pairs.csv"};

  std::ofstream nt(f.ntriples);
  nt << "# synthetic two-topic graph\n";
  for (int t = 0; t < kTopics; ++t) {
    for (int i = 0; i < kPerTopic; ++i) {
      const std::string d = iri("D" + topic_letter(t) + std::to_string(i));
      const std::string c = iri("M" + topic_letter(t) + std::to_string(i));
      nt << d << ' ' << kType << ' ' << vocab("TopicalDescriptor") << " .\n";
      nt << d << ' ' << kLabel << " \"" << descriptor_label(t, i) << "\"@en .\n";
      nt << c << ' ' << kType << ' ' << vocab("Concept") << " .\n";
      nt << c << ' ' << kLabel << " \"Concept " << topic_letter(t) << i << "\"@en .\n";
      nt << d << ' ' << vocab("preferredConcept") << ' ' << c << " .\n";
      const std::string next = iri("D" + topic_letter(t) + std::to_string((i + 1) % kPerTopic));
      nt << d << ' ' << vocab("broaderDescriptor") << ' ' << next << " .\n";
      const std::string skip = iri("D" + topic_letter(t) + std::to_string((i + 5) % kPerTopic));
      nt << d << ' ' << vocab("seeAlso") << ' ' << skip << " .\n";
    }
  }
  nt << iri("DA0") << ' ' << vocab("seeAlso") << ' ' << iri("DB0") << " .\n";
  nt << "<http://example.org/unrelated> " << kLabel << " \"Unrelated\" .\n";

  const std::vector<std::string> filler = {"the", "of", "with", "in", "and", "patients", "was"};
  std::uniform_int_distribution<int> topic(0, kTopics - 1);
  std::uniform_int_distribution<int> member(0, kPerTopic - 1);
  std::uniform_int_distribution<std::size_t> fill(0, filler.size() - 1);
  std::ofstream corpus(f.corpus);
  for (int s = 0; s < 1500; ++s) {
    const int t = topic(rng);
    std::string line;
    for (int w = 0; w < 8; ++w) {
      if (!line.empty()) line += ' ';
      if (w % 3 != 1) {
        line += filler[fill(rng)];
      } else {
        line += descriptor_token(t, member(rng));
        if (w == 3 && s % 7 == 0) line += "s";
      }
    }
    corpus << line << ".\n";
  }

  std::ofstream csv(f.dataset);
  csv << "Term1,Term2,Similarity,Relatedness\n";
  std::set<std::pair<std::string, std::string>> seen;
  std::uniform_real_distribution<double> jitter(-150.0, 150.0);
  std::uniform_int_distribution<int> rated(0, kRated - 1);
  while (seen.size() < 50) {
    const int t1 = topic(rng), t2 = topic(rng);
    const int i1 = rated(rng), i2 = rated(rng);
    auto a = descriptor_label(t1, i1), b = descriptor_label(t2, i2);
    if (a == b) continue;
    if (!seen.insert(std::minmax(a, b)).second) continue;
    const double base = t1 == t2 ? 1200.0 : 300.0;
    csv << a << ',' << b << ',' << base + jitter(rng) << ',' << base + 100.0 + jitter(rng) << '\n';
  }
  return f;
}

}  // namespace lsi::testing
