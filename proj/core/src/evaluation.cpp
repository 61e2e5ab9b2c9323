#include "lsi/evaluation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>

#include <json.hpp>

#include "lsi/error.hpp"
#include "lsi/io.hpp"
#include "lsi/log.hpp"
#include "lsi/random.hpp"

namespace lsi {

std::set<std::string> WordPairDataset::terms() const {
  std::set<std::string> out;
  for (const auto& r : records) {
    out.insert(r.term1);
    out.insert(r.term2);
  }
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_csv(std::string_view line, const std::string& source,
                                   std::size_t line_no) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (quoted) throw ParseError(source, line_no, "unterminated quoted field");
  for (auto& f : fields) f = std::string(trim(f));
  return fields;
}

double parse_score(const std::string& field, const std::string& source, std::size_t line_no) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(v)) {
    throw ParseError(source, line_no, "invalid score '" + field + "'");
  }
  if (v < 0.0 || v > kMaxHumanScore) {
    throw ParseError(source, line_no, "score " + field + " outside [0, 1600]");
  }
  return v;
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

class DatasetParser {
 public:
  explicit DatasetParser(std::string source) : source_(std::move(source)) {}

  void feed(std::string_view line, std::size_t line_no) {
    if (trim(line).empty()) return;
    auto fields = split_csv(line, source_, line_no);
    if (!header_seen_) {
      const std::vector<std::string> expected = {"term1", "term2", "similarity", "relatedness"};
      std::vector<std::string> got;
      for (const auto& f : fields) got.push_back(lower(f));
      if (got != expected) {
        throw ParseError(source_, line_no, "expected header Term1,Term2,Similarity,Relatedness");
      }
      header_seen_ = true;
      return;
    }
    if (fields.size() != 4) {
      throw ParseError(source_, line_no,
                       "expected 4 fields, found " + std::to_string(fields.size()));
    }
    WordPair p;
    p.term1 = normalize_label(fields[0]);
    p.term2 = normalize_label(fields[1]);
    if (p.term1.empty() || p.term2.empty()) throw ParseError(source_, line_no, "empty term");
    p.similarity = parse_score(fields[2], source_, line_no);
    p.relatedness = parse_score(fields[3], source_, line_no);
    p.line = line_no;
    auto key = std::minmax(p.term1, p.term2);
    auto [it, inserted] = seen_.emplace(std::pair<std::string, std::string>(key.first, key.second),
                                        line_no);
    if (!inserted) {
      throw ParseError(source_, line_no,
                       "duplicate pair (first seen on line " + std::to_string(it->second) + ")");
    }
    if (p.term1 == p.term2) {
      logger().info("dataset: {}:{} pairs '{}' with itself", source_, line_no, p.term1);
    }
    out_.records.push_back(std::move(p));
  }

  WordPairDataset finish() {
    if (!header_seen_) throw ParseError(source_, 1, "missing header");
    return std::move(out_);
  }

 private:
  std::string source_;
  bool header_seen_ = false;
  WordPairDataset out_;
  std::map<std::pair<std::string, std::string>, std::size_t> seen_;
};

}  // namespace

WordPairDataset load_wordpair_dataset(const std::filesystem::path& path) {
  LineReader in(path);
  DatasetParser parser(in.source());
  std::string line;
  while (in.next(line)) parser.feed(line, in.line_number());
  return parser.finish();
}

WordPairDataset parse_wordpair_csv(std::string_view text, std::string_view source) {
  DatasetParser parser{std::string(source)};
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    parser.feed(text.substr(0, nl), ++line_no);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return parser.finish();
}

VocabSplit split_vocab(const std::set<std::string>& terms, std::uint64_t seed) {
  std::vector<std::string> order(terms.begin(), terms.end());
  Rng rng = make_rng(seed, {0x73706c6974});
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[uniform_below(rng, i)]);
  }
  VocabSplit split;
  const std::size_t trained = (order.size() + 1) / 2;
  for (std::size_t i = 0; i < order.size(); ++i) {
    (i < trained ? split.trained : split.imputed).insert(order[i]);
  }
  return split;
}

std::string_view subset_name(PairSubset s) {
  switch (s) {
    case PairSubset::kTrainedTrained: return "trained/trained";
    case PairSubset::kImputedTrained: return "imputed/trained";
    case PairSubset::kImputedImputed: return "imputed/imputed";
  }
  return "?";
}

PairSplit classify_pairs(const WordPairDataset& d, const std::set<std::string>& trained,
                         const std::set<std::string>& imputed) {
  for (const auto& t : trained) {
    if (imputed.count(t)) throw InputError("term '" + t + "' is both trained and imputed");
  }
  PairSplit split;
  for (const auto& r : d.records) {
    const bool t1 = trained.count(r.term1) != 0;
    const bool t2 = trained.count(r.term2) != 0;
    const bool i1 = imputed.count(r.term1) != 0;
    const bool i2 = imputed.count(r.term2) != 0;
    if (!(t1 || i1) || !(t2 || i2)) {
      split.skipped.push_back(r);
    } else if (t1 && t2) {
      split.subset(PairSubset::kTrainedTrained).push_back(r);
    } else if (i1 && i2) {
      split.subset(PairSubset::kImputedImputed).push_back(r);
    } else {
      split.subset(PairSubset::kImputedTrained).push_back(r);
    }
  }
  return split;
}

double cosine_similarity(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw InputError("cosine of vectors with different dimensions");
  double uv = 0.0;
  double uu = 0.0;
  double vv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    uv += u[i] * v[i];
    uu += u[i] * u[i];
    vv += v[i] * v[i];
  }
  if (uu == 0.0 || vv == 0.0) throw InputError("cosine similarity of a zero vector");
  return std::clamp(uv / (std::sqrt(uu) * std::sqrt(vv)), -1.0, 1.0);
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw InputError("pearson: length mismatch");
  const std::size_t n = xs.size();
  if (n < 2) throw InputError("pearson: need at least 2 points");
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw InputError("pearson: constant input");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::size_t EvalReport::evaluable_subsets() const {
  std::size_t n = 0;
  for (const auto& s : subsets) n += s.similarity.evaluable || s.relatedness.evaluable ? 1 : 0;
  return n;
}

namespace {

bool try_pearson(std::span<const double> xs, std::span<const double> ys, double& r) {
  try {
    r = pearson(xs, ys);
    return true;
  } catch (const InputError&) {
    return false;
  }
}

void summarize(CorrelationStats& s, const std::vector<double>& rs) {
  s.valid_resamples = rs.size();
  if (rs.empty()) return;
  double mean = 0.0;
  for (double r : rs) mean += r;
  mean /= static_cast<double>(rs.size());
  double var = 0.0;
  for (double r : rs) var += (r - mean) * (r - mean);
  s.boot_mean = mean;
  s.boot_std = rs.size() > 1 ? std::sqrt(var / static_cast<double>(rs.size() - 1)) : 0.0;
}

}  // namespace

EvalReport bootstrap_eval(const EmbeddingMatrix& embedding, const PairSplit& split,
                          std::size_t n_resamples, std::uint64_t seed) {
  EvalReport report;
  report.skipped = split.skipped.size();
  report.n_resamples = n_resamples;
  report.seed = seed;

  for (PairSubset which : kAllSubsets) {
    const auto& records = split.subset(which);
    SubsetReport& out = report.subsets[static_cast<int>(which)];
    out.records = records.size();

    std::vector<double> cosines;
    std::vector<double> sim;
    std::vector<double> rel;
    for (const auto& r : records) {
      const auto a = embedding.find(r.term1);
      const auto b = embedding.find(r.term2);
      if (!a || !b) continue;
      cosines.push_back(cosine_similarity(embedding.row(*a), embedding.row(*b)));
      sim.push_back(r.similarity);
      rel.push_back(r.relatedness);
    }
    const std::size_t n = cosines.size();
    out.embeddable = n;
    out.similarity.n = out.relatedness.n = n;
    out.similarity.low_n = out.relatedness.low_n = n < kLowPairCount;

    out.similarity.evaluable = try_pearson(cosines, sim, out.similarity.r);
    out.relatedness.evaluable = try_pearson(cosines, rel, out.relatedness.r);
    if (!out.similarity.evaluable && !out.relatedness.evaluable) {
      logger().warn("evaluate: {} not evaluable ({} of {} pairs embeddable)", subset_name(which), n,
                    records.size());
      continue;
    }

    std::vector<double> rs_sim;
    std::vector<double> rs_rel;
    std::vector<double> bc(n);
    std::vector<double> bs(n);
    std::vector<double> br(n);
    for (std::size_t b = 0; b < n_resamples; ++b) {
      Rng rng = make_rng(seed, {static_cast<std::uint64_t>(which), b});
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t k = uniform_below(rng, n);
        bc[i] = cosines[k];
        bs[i] = sim[k];
        br[i] = rel[k];
      }
      double r = 0.0;
      if (out.similarity.evaluable) {
        if (try_pearson(bc, bs, r)) rs_sim.push_back(r);
        else ++out.similarity.degenerate_resamples;
      }
      if (out.relatedness.evaluable) {
        if (try_pearson(bc, br, r)) rs_rel.push_back(r);
        else ++out.relatedness.degenerate_resamples;
      }
    }
    summarize(out.similarity, rs_sim);
    summarize(out.relatedness, rs_rel);
  }
  return report;
}

namespace {

nlohmann::ordered_json stats_json(const CorrelationStats& s) {
  nlohmann::ordered_json j;
  j["evaluable"] = s.evaluable;
  j["r"] = s.evaluable ? nlohmann::ordered_json(s.r) : nlohmann::ordered_json(nullptr);
  j["boot_mean"] = s.valid_resamples ? nlohmann::ordered_json(s.boot_mean) : nlohmann::ordered_json(nullptr);
  j["boot_std"] = s.valid_resamples ? nlohmann::ordered_json(s.boot_std) : nlohmann::ordered_json(nullptr);
  j["n"] = s.n;
  j["valid_resamples"] = s.valid_resamples;
  j["degenerate_resamples"] = s.degenerate_resamples;
  j["low_n"] = s.low_n;
  return j;
}

}  // namespace

std::string report_to_json(const EvalReport& report) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json subsets;
  for (PairSubset which : kAllSubsets) {
    const auto& s = report.subset(which);
    nlohmann::ordered_json entry;
    entry["similarity"] = stats_json(s.similarity);
    entry["relatedness"] = stats_json(s.relatedness);
    entry["records"] = s.records;
    entry["embeddable"] = s.embeddable;
    subsets[std::string(subset_name(which))] = entry;
  }
  j["subsets"] = subsets;
  j["skipped"] = report.skipped;
  j["n_resamples"] = report.n_resamples;
  j["seed"] = report.seed;
  return j.dump(2);
}

std::string format_report_table(const EvalReport& report) {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof(line), "%-17s %-12s %5s %8s %10s %9s\n", "subset", "score", "n", "r",
                "boot_mean", "boot_std");
  out += line;
  for (PairSubset which : kAllSubsets) {
    const auto& s = report.subset(which);
    const std::pair<const char*, const CorrelationStats*> rows[] = {
        {"similarity", &s.similarity}, {"relatedness", &s.relatedness}};
    for (const auto& [name, st] : rows) {
      if (st->evaluable) {
        std::snprintf(line, sizeof(line), "%-17s %-12s %5zu %8.4f %10.4f %9.4f%s\n",
                      std::string(subset_name(which)).c_str(), name, st->n, st->r, st->boot_mean,
                      st->boot_std, st->low_n ? "  (low n)" : "");
      } else {
        std::snprintf(line, sizeof(line), "%-17s %-12s %5zu %8s %10s %9s\n",
                      std::string(subset_name(which)).c_str(), name, st->n, "-", "-", "-");
      }
      out += line;
    }
  }
  std::snprintf(line, sizeof(line), "skipped pairs: %zu\n", report.skipped);
  out += line;
  return out;
}

}  // namespace lsi
