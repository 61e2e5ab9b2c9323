#include "lsi/knn_mst.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "lsi/error.hpp"
#include "lsi/log.hpp"

namespace lsi {

namespace {

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

constexpr std::size_t kQueryBlock = 32;

}  // namespace

std::size_t NeighborGraph::edge_count() const noexcept {
  std::size_t twice = 0;
  for (const auto& list : adjacency) twice += list.size();
  return twice / 2;
}

std::size_t NeighborGraph::min_degree() const noexcept {
  std::size_t m = std::numeric_limits<std::size_t>::max();
  for (const auto& list : adjacency) m = std::min(m, list.size());
  return adjacency.empty() ? 0 : m;
}

std::vector<std::pair<std::size_t, std::size_t>> euclidean_mst(const EmbeddingMatrix& points) {
  const std::size_t n = points.size();
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  if (n < 2) return edges;
  edges.reserve(n - 1);

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> best(n, kInf);
  std::vector<std::size_t> parent(n, 0);
  std::vector<char> in_tree(n, 0);
  std::size_t current = 0;
  in_tree[0] = 1;
  for (std::size_t added = 1; added < n; ++added) {
    const auto from = points.row(current);
    const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t v = 0; v < count; ++v) {
      if (in_tree[v]) continue;
      const double d = squared_distance(from, points.row(static_cast<std::size_t>(v)));
      if (d < best[v]) {
        best[v] = d;
        parent[v] = current;
      }
    }
    std::size_t next = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (!in_tree[v] && (next == n || best[v] < best[next])) next = v;
    }
    in_tree[next] = 1;
    edges.emplace_back(std::min(next, parent[next]), std::max(next, parent[next]));
    current = next;
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

std::vector<std::vector<std::size_t>> k_nearest_neighbors(const EmbeddingMatrix& points,
                                                          std::size_t k) {
  const std::size_t n = points.size();
  if (k >= n) throw InputError("k=" + std::to_string(k) + " must be smaller than the row count " +
                               std::to_string(n));
  std::vector<std::vector<std::size_t>> result(n);
  if (k == 0) return result;

  using Candidate = std::pair<double, std::size_t>;  // (distance, index); max-heap keeps worst on top
  const std::ptrdiff_t blocks = static_cast<std::ptrdiff_t>((n + kQueryBlock - 1) / kQueryBlock);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t blk = 0; blk < blocks; ++blk) {
    const std::size_t lo = static_cast<std::size_t>(blk) * kQueryBlock;
    const std::size_t hi = std::min(n, lo + kQueryBlock);
    std::vector<std::priority_queue<Candidate>> heaps(hi - lo);
    for (std::size_t j = 0; j < n; ++j) {
      const auto target = points.row(j);
      for (std::size_t i = lo; i < hi; ++i) {
        if (i == j) continue;
        const Candidate c{squared_distance(points.row(i), target), j};
        auto& heap = heaps[i - lo];
        if (heap.size() < k) {
          heap.push(c);
        } else if (c < heap.top()) {
          heap.pop();
          heap.push(c);
        }
      }
    }
    for (std::size_t i = lo; i < hi; ++i) {
      auto& heap = heaps[i - lo];
      auto& out = result[i];
      out.resize(heap.size());
      for (std::size_t r = heap.size(); r-- > 0;) {
        out[r] = heap.top().second;
        heap.pop();
      }
    }
  }
  return result;
}

NeighborGraph knn_mst(const EmbeddingMatrix& domain, std::size_t k) {
  const std::size_t n = domain.size();
  if (n < 2) throw InputError("knn_mst needs at least 2 rows, got " + std::to_string(n));
  if (k < 1 || k >= n) {
    throw InputError("knn_mst: k=" + std::to_string(k) + " must satisfy 1 <= k < " +
                     std::to_string(n));
  }
  NeighborGraph g;
  g.k = k;
  g.mst_edges = euclidean_mst(domain);
  const auto knn = k_nearest_neighbors(domain, k);

  g.adjacency.assign(n, {});
  for (const auto& [u, v] : g.mst_edges) {
    g.adjacency[u].push_back(v);
    g.adjacency[v].push_back(u);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j : knn[i]) {
      g.adjacency[i].push_back(j);
      g.adjacency[j].push_back(i);
    }
  }
  for (auto& list : g.adjacency) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  logger().info("knn_mst: {} nodes, {} edges, k={}, min degree {}", n, g.edge_count(), k,
                g.min_degree());
  return g;
}

}  // namespace lsi
