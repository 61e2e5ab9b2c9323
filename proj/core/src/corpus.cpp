#include "lsi/corpus.hpp"

#include <algorithm>

#include <json.hpp>

#include "lsi/io.hpp"
#include "lsi/log.hpp"

namespace lsi {

namespace {

bool is_strip_char(char c) {
  switch (c) {
    case '.': case ',': case ';': case ':': case '!': case '?':
    case '(': case ')': case '"': case '\'': case '[': case ']':
      return true;
    default:
      return false;
  }
}

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

}  // namespace

std::vector<std::string> tokenize_sentence(std::string_view line) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    std::size_t j = i;
    while (j < line.size() && !is_space(line[j])) ++j;
    std::size_t a = i;
    std::size_t b = j;
    while (a < b && is_strip_char(line[a])) ++a;
    while (b > a && is_strip_char(line[b - 1])) --b;
    if (b > a) {
      std::string token(line.substr(a, b - a));
      for (char& c : token) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
      }
      tokens.push_back(std::move(token));
    }
    i = j;
  }
  return tokens;
}

CorpusFilter::CorpusFilter(std::set<std::string> terms, std::vector<std::string> plural_suffixes)
    : terms_(std::move(terms)), suffixes_(std::move(plural_suffixes)) {}

std::vector<std::string> CorpusFilter::matched_terms(std::string_view line) const {
  std::vector<std::string> hits;
  if (terms_.empty()) return hits;
  for (const auto& token : tokenize_sentence(line)) {
    if (terms_.count(token)) hits.push_back(token);
    for (const auto& suffix : suffixes_) {
      if (token.size() > suffix.size() &&
          token.compare(token.size() - suffix.size(), suffix.size(), suffix) == 0) {
        std::string stem = token.substr(0, token.size() - suffix.size());
        if (terms_.count(stem)) hits.push_back(std::move(stem));
      }
    }
  }
  std::sort(hits.begin(), hits.end());
  hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
  return hits;
}

FilterStats CorpusFilter::run(const std::function<bool(std::string&)>& next,
                              const std::function<void(std::string_view)>& keep) const {
  FilterStats stats;
  for (const auto& t : terms_) stats.term_hits.emplace(t, 0);
  std::string line;
  while (next(line)) {
    ++stats.total;
    const auto hits = matched_terms(line);
    if (hits.empty()) {
      keep(line);
      continue;
    }
    ++stats.removed;
    for (const auto& h : hits) ++stats.term_hits[h];
  }
  return stats;
}

FilterStats filter_corpus(const std::vector<std::string>& sentences,
                          const std::set<std::string>& terms, std::vector<std::string>& kept) {
  const CorpusFilter filter(terms);
  std::size_t pos = 0;
  return filter.run(
      [&](std::string& line) {
        if (pos == sentences.size()) return false;
        line = sentences[pos++];
        return true;
      },
      [&](std::string_view line) { kept.emplace_back(line); });
}

FilterStats filter_corpus_file(const std::filesystem::path& input,
                               const std::filesystem::path& output, const CorpusFilter& filter) {
  LineReader in(input);
  LineWriter out(output);
  FilterStats stats = filter.run([&](std::string& line) { return in.next(line); },
                                 [&](std::string_view line) { out.write_line(line); });
  out.close();
  logger().info("filter: removed {} of {} sentences ({:.2f}%)", stats.removed, stats.total,
                100.0 * stats.removal_fraction());
  return stats;
}

std::string filter_stats_to_json(const FilterStats& stats) {
  nlohmann::ordered_json j;
  j["total"] = stats.total;
  j["removed"] = stats.removed;
  j["removal_fraction"] = stats.removal_fraction();
  j["term_hits"] = stats.term_hits;
  return j.dump(2);
}

}  // namespace lsi
