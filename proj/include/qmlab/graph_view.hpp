#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "presentation.hpp"

namespace qmlab {

inline constexpr int kUnreachable = -1;

// Finite simple undirected graph on 0..n-1.
class GraphView {
 public:
  GraphView() = default;
  explicit GraphView(int n) : adj_(n) {}

  static GraphView from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    GraphView g(n);
    for (auto [a, b] : edges) g.add_edge(a, b);
    return g;
  }

  int size() const { return static_cast<int>(adj_.size()); }
  // Ignores loops and duplicates so callers can add edges freely.
  void add_edge(int a, int b) {
    if (a == b || adjacent(a, b)) return;
    adj_[a].insert(std::upper_bound(adj_[a].begin(), adj_[a].end(), b), b);
    adj_[b].insert(std::upper_bound(adj_[b].begin(), adj_[b].end(), a), a);
  }
  bool adjacent(int a, int b) const { return std::binary_search(adj_[a].begin(), adj_[a].end(), b); }
  const std::vector<int>& neighbours(int v) const { return adj_[v]; }
  std::size_t edge_count() const {
    std::size_t m = 0;
    for (const auto& a : adj_) m += a.size();
    return m / 2;
  }
  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < size(); ++a)
      for (int b : adj_[a])
        if (a < b) out.emplace_back(a, b);
    return out;
  }

  std::vector<int> bfs(int source, const std::vector<char>* blocked = nullptr) const {
    std::vector<int> dist(size(), kUnreachable);
    if (blocked && (*blocked)[source]) return dist;
    std::deque<int> q{source};
    dist[source] = 0;
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      for (int y : adj_[x])
        if (dist[y] == kUnreachable && !(blocked && (*blocked)[y])) {
          dist[y] = dist[x] + 1;
          q.push_back(y);
        }
    }
    return dist;
  }

  GraphView induced(const std::vector<int>& vertices) const {
    GraphView g(static_cast<int>(vertices.size()));
    for (std::size_t i = 0; i < vertices.size(); ++i)
      for (std::size_t j = i + 1; j < vertices.size(); ++j)
        if (adjacent(vertices[i], vertices[j])) g.add_edge(static_cast<int>(i), static_cast<int>(j));
    return g;
  }

  std::vector<int> components() const {
    std::vector<int> comp(size(), -1);
    int c = 0;
    for (int s = 0; s < size(); ++s) {
      if (comp[s] >= 0) continue;
      comp[s] = c;
      std::vector<int> stack{s};
      while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int y : adj_[x])
          if (comp[y] < 0) {
            comp[y] = c;
            stack.push_back(y);
          }
      }
      ++c;
    }
    return comp;
  }

 private:
  std::vector<std::vector<int>> adj_;
};

// Dense all-pairs distance table.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(const GraphView& g) : n_(g.size()), d_(static_cast<std::size_t>(n_) * n_) {
    for (int s = 0; s < n_; ++s) {
      auto row = g.bfs(s);
      std::copy(row.begin(), row.end(), d_.begin() + static_cast<std::ptrdiff_t>(s) * n_);
    }
  }
  int operator()(int a, int b) const { return d_[static_cast<std::size_t>(a) * n_ + b]; }
  int size() const { return n_; }

 private:
  int n_ = 0;
  std::vector<int> d_;
};

// Backtracking isomorphism search; returns the map from a's vertices to b's.
inline std::optional<std::vector<int>> find_isomorphism(const GraphView& a, const GraphView& b) {
  const int n = a.size();
  if (n != b.size() || a.edge_count() != b.edge_count()) return std::nullopt;
  std::multiset<int> da, db;
  for (int v = 0; v < n; ++v) {
    da.insert(static_cast<int>(a.neighbours(v).size()));
    db.insert(static_cast<int>(b.neighbours(v).size()));
  }
  if (da != db) return std::nullopt;
  std::vector<int> map(n, -1), used(n, 0);
  auto extend = [&](auto&& self, int v) -> bool {
    if (v == n) return true;
    for (int w = 0; w < n; ++w) {
      if (used[w] || a.neighbours(v).size() != b.neighbours(w).size()) continue;
      bool ok = true;
      for (int u = 0; u < v && ok; ++u)
        if (a.adjacent(u, v) != b.adjacent(map[u], w)) ok = false;
      if (!ok) continue;
      map[v] = w;
      used[w] = 1;
      if (self(self, v + 1)) return true;
      used[w] = 0;
    }
    map[v] = -1;
    return false;
  };
  if (!extend(extend, 0)) return std::nullopt;
  return map;
}

inline GraphView defining_graph_view(const DefGraph& g) { return GraphView::from_edges(g.size(), g.edges()); }

inline GraphView cycle_graph(int n) {
  GraphView g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

inline GraphView path_graph(int n) {
  GraphView g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

inline GraphView complete_graph(int n) {
  GraphView g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

// Vertices are bit strings; edges flip one bit.
inline GraphView hypercube_graph(int dim) {
  GraphView g(1 << dim);
  for (int x = 0; x < (1 << dim); ++x)
    for (int b = 0; b < dim; ++b) g.add_edge(x, x ^ (1 << b));
  return g;
}

}  // namespace qmlab
