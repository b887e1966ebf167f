#pragma once

#include <algorithm>
#include <array>
#include <cstdlib>
#include <iterator>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "graph_view.hpp"
#include "parallel.hpp"
#include "presentation.hpp"

namespace qmlab {

// Undirected ball edge; the label s satisfies vertex(b) = s * vertex(a).
struct BallEdge {
  int a = 0;
  int b = 0;
  Syllable label;
};

inline std::vector<Syllable> all_syllables(const GraphProduct& gp) {
  std::vector<Syllable> out;
  for (VertexId v = 0; v < gp.vertex_count(); ++v)
    for (int e = 1; e < gp.group(v).order(); ++e) out.push_back({v, e});
  return out;
}

class BallGraph {
 public:
  const GraphProduct& gp() const { return gp_; }
  int radius() const { return radius_; }
  int interior_radius() const { return std::max(0, radius_ - 1); }
  int size() const { return static_cast<int>(elements_.size()); }
  const NormalForm& element(int i) const { return elements_[i]; }
  const std::vector<NormalForm>& elements() const { return elements_; }
  int depth(int i) const { return syllable_length(elements_[i]); }
  bool interior(int i, int margin = 1) const { return depth(i) <= radius_ - margin; }
  const std::vector<BallEdge>& edges() const { return edges_; }
  const GraphView& graph() const { return graph_; }

  std::optional<int> index_of(const NormalForm& x) const {
    auto it = index_.find(x);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  int at(const NormalForm& x) const {
    auto i = index_of(x);
    if (!i) throw HypothesisError("element is outside the ball");
    return *i;
  }
  // Distance in the full Cayley graph, computed algebraically.
  int group_distance(int i, int j) const { return distance(gp_, elements_[i], elements_[j]); }

  friend BallGraph build_ball(const GraphProduct& gp, int radius, std::size_t budget);

 private:
  GraphProduct gp_;
  int radius_ = 0;
  std::vector<NormalForm> elements_;
  std::unordered_map<NormalForm, int, NormalFormHash> index_;
  std::vector<BallEdge> edges_;
  GraphView graph_;
};

inline constexpr std::size_t kDefaultBallBudget = 200000;

inline BallGraph build_ball(const GraphProduct& gp, int radius, std::size_t budget = kDefaultBallBudget) {
  if (radius < 0) throw InputError("negative radius");
  const auto gens = all_syllables(gp);
  std::unordered_set<NormalForm, NormalFormHash> seen{NormalForm{}};
  std::vector<NormalForm> layer{NormalForm{}};
  for (int r = 1; r <= radius; ++r) {
    std::vector<NormalForm> next;
    for (const auto& x : layer)
      for (const auto& s : gens) {
        NormalForm y = multiply(gp, s, x);
        if (syllable_length(y) == r && seen.insert(y).second) next.push_back(std::move(y));
      }
    if (seen.size() > budget)
      throw BudgetError("ball exceeds vertex budget of " + std::to_string(budget) + " at radius " + std::to_string(r), r);
    layer = std::move(next);
  }
  BallGraph ball;
  ball.gp_ = gp;
  ball.radius_ = radius;
  ball.elements_.assign(seen.begin(), seen.end());
  std::sort(ball.elements_.begin(), ball.elements_.end());
  for (int i = 0; i < ball.size(); ++i) ball.index_.emplace(ball.elements_[i], i);
  ball.graph_ = GraphView(ball.size());
  for (int i = 0; i < ball.size(); ++i)
    for (const auto& s : gens) {
      auto j = ball.index_of(multiply(gp, s, ball.elements_[i]));
      if (j && *j > i) {
        ball.edges_.push_back({i, *j, s});
        ball.graph_.add_edge(i, *j);
      }
    }
  return ball;
}

enum class Verdict { yes, no, inconclusive };

struct QmWitness {
  std::string axiom;  // "triple", "diamond" or "hexagon"
  std::vector<int> vertices;
};

struct QuasiMedianVerdict {
  Verdict holds = Verdict::yes;
  std::optional<QmWitness> witness;
  std::size_t triples_tested = 0;
  std::size_t triples_skipped = 0;
  std::size_t hexagons_tested = 0;
  std::size_t hexagons_skipped = 0;
  std::size_t diamonds_found = 0;
};

// Exact checks trust every pair. Interior checks on a ball trust a pair only
// when depth(a) + depth(b) <= radius - margin: every geodesic of the full
// graph between such a pair stays inside the ball.
struct QmMode {
  static QmMode exact() { return {}; }
  static QmMode interior(const BallGraph& ball, int margin = 0) {
    QmMode m;
    m.depth.resize(ball.size());
    for (int i = 0; i < ball.size(); ++i) m.depth[i] = ball.depth(i);
    m.limit = ball.radius() - margin;
    return m;
  }
  bool trusted(int a, int b) const { return depth.empty() || depth[a] + depth[b] <= limit; }

  std::vector<int> depth;
  int limit = 0;
};

struct QuasiMedian {
  std::array<int, 3> y{};
  int k = 0;
};

struct QuasiMedianSearch {
  std::vector<QuasiMedian> minimizers;  // all triples attaining the least k
};

inline bool between(const DistanceMatrix& d, int a, int z, int b) { return d(a, z) + d(z, b) == d(a, b); }

inline QuasiMedianSearch quasi_median_candidates(const DistanceMatrix& d, int x1, int x2, int x3) {
  const int n = d.size();
  std::vector<int> c1, c2, c3;
  for (int z = 0; z < n; ++z) {
    bool i12 = between(d, x1, z, x2), i13 = between(d, x1, z, x3), i23 = between(d, x2, z, x3);
    if (i12 && i13) c1.push_back(z);
    if (i12 && i23) c2.push_back(z);
    if (i13 && i23) c3.push_back(z);
  }
  QuasiMedianSearch out;
  int best = -1;
  for (int y1 : c1)
    for (int y2 : c2) {
      if (d(x1, y1) + d(y1, y2) + d(y2, x2) != d(x1, x2)) continue;
      const int k = d(y1, y2);
      if (best >= 0 && k > best) continue;
      for (int y3 : c3) {
        if (d(y1, y3) != k || d(y2, y3) != k) continue;
        if (d(x1, y1) + k + d(y3, x3) != d(x1, x3)) continue;
        if (d(x2, y2) + k + d(y3, x3) != d(x2, x3)) continue;
        if (best < 0 || k < best) {
          best = k;
          out.minimizers.clear();
        }
        out.minimizers.push_back({{y1, y2, y3}, k});
      }
    }
  return out;
}

struct NonUniqueQuasiMedian : Error {
  NonUniqueQuasiMedian(std::vector<QuasiMedian> found)
      : Error("quasi-median is not unique or does not exist"), candidates(std::move(found)) {}
  std::vector<QuasiMedian> candidates;
};

inline QuasiMedian quasi_median(const DistanceMatrix& d, int x1, int x2, int x3) {
  auto s = quasi_median_candidates(d, x1, x2, x3);
  if (s.minimizers.size() != 1) throw NonUniqueQuasiMedian(std::move(s.minimizers));
  return s.minimizers.front();
}

inline QuasiMedian quasi_median(const GraphView& g, int x1, int x2, int x3) {
  return quasi_median(DistanceMatrix(g), x1, x2, x3);
}

namespace detail {

inline std::optional<std::vector<int>> find_diamond(const GraphView& g) {
  for (auto [a, b] : g.edges()) {
    std::vector<int> common;
    std::set_intersection(g.neighbours(a).begin(), g.neighbours(a).end(), g.neighbours(b).begin(),
                          g.neighbours(b).end(), std::back_inserter(common));
    for (std::size_t i = 0; i < common.size(); ++i)
      for (std::size_t j = i + 1; j < common.size(); ++j)
        if (!g.adjacent(common[i], common[j])) return std::vector<int>{a, b, common[i], common[j]};
  }
  return std::nullopt;
}

// Interval closure of a vertex set; nullopt if an untrusted pair is needed.
inline std::optional<std::vector<int>> convex_hull(const DistanceMatrix& d, const QmMode& mode,
                                                   std::vector<int> set) {
  std::vector<char> in(d.size(), 0);
  for (int x : set) in[x] = 1;
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t i = 0; i < set.size(); ++i)
      for (std::size_t j = i + 1; j < set.size(); ++j) {
        if (!mode.trusted(set[i], set[j])) return std::nullopt;
        for (int z = 0; z < d.size(); ++z)
          if (!in[z] && between(d, set[i], z, set[j])) {
            in[z] = 1;
            set.push_back(z);
            grew = true;
          }
      }
  }
  std::sort(set.begin(), set.end());
  return set;
}

inline bool hull_is_cube(const GraphView& g, const std::vector<int>& hull) {
  return hull.size() == 8 && find_isomorphism(g.induced(hull), hypercube_graph(3)).has_value();
}

}  // namespace detail

inline QuasiMedianVerdict check_quasi_median(const GraphView& g, const QmMode& mode = QmMode::exact()) {
  QuasiMedianVerdict out;
  const int n = g.size();
  if (auto diamond = detail::find_diamond(g)) {
    out.holds = Verdict::no;
    out.diamonds_found = 1;
    out.witness = QmWitness{"diamond", *diamond};
    return out;
  }
  const DistanceMatrix d(g);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (mode.trusted(a, b) && d(a, b) == kUnreachable) {
        out.holds = Verdict::no;
        out.witness = QmWitness{"triple", {a, b, b}};
        return out;
      }

  // Triple axiom, partitioned by the first vertex.
  struct Partial {
    std::size_t tested = 0, skipped = 0;
    std::optional<QmWitness> witness;
  };
  std::vector<Partial> parts(n);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t ai) {
    const int a = static_cast<int>(ai);
    Partial& p = parts[ai];
    for (int b = a; b < n; ++b) {
      for (int c = b; c < n; ++c) {
        if (!mode.trusted(a, b) || !mode.trusted(a, c) || !mode.trusted(b, c)) {
          ++p.skipped;
          continue;
        }
        ++p.tested;
        if (quasi_median_candidates(d, a, b, c).minimizers.size() != 1) {
          p.witness = QmWitness{"triple", {a, b, c}};
          return;
        }
      }
    }
  });
  for (const auto& p : parts) {
    out.triples_tested += p.tested;
    out.triples_skipped += p.skipped;
    if (p.witness && !out.witness) out.witness = p.witness;
  }
  if (out.witness) {
    out.holds = Verdict::no;
    return out;
  }

  // Isometric hexagons: smallest vertex first, second vertex below the last.
  auto cyc = [](int i, int j) {
    int t = std::abs(i - j);
    return std::min(t, 6 - t);
  };
  std::vector<Partial> hex(n);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t ai) {
    const int a = static_cast<int>(ai);
    Partial& p = hex[ai];
    std::array<int, 6> cycle{a};
    auto grow = [&](auto&& self, int len) -> void {
      if (p.witness) return;
      if (len == 6) {
        if (!g.adjacent(cycle[5], a) || cycle[1] > cycle[5]) return;
        for (int i = 0; i < 6; ++i)
          for (int j = i + 1; j < 6; ++j)
            if (!mode.trusted(cycle[i], cycle[j])) {
              ++p.skipped;
              return;
            }
        for (int i = 0; i < 6; ++i)
          for (int j = i + 1; j < 6; ++j)
            if (d(cycle[i], cycle[j]) != cyc(i, j)) return;
        auto hull = detail::convex_hull(d, mode, {cycle.begin(), cycle.end()});
        if (!hull) {
          ++p.skipped;
          return;
        }
        ++p.tested;
        if (!detail::hull_is_cube(g, *hull)) p.witness = QmWitness{"hexagon", {cycle.begin(), cycle.end()}};
        return;
      }
      for (int y : g.neighbours(cycle[len - 1])) {
        if (y <= a) continue;
        bool fresh = true;
        for (int i = 1; i < len; ++i) fresh = fresh && cycle[i] != y;
        if (!fresh || d(a, y) != cyc(0, len)) continue;
        cycle[len] = y;
        self(self, len + 1);
      }
    };
    grow(grow, 1);
  });
  for (const auto& p : hex) {
    out.hexagons_tested += p.tested;
    out.hexagons_skipped += p.skipped;
    if (p.witness && !out.witness) out.witness = p.witness;
  }
  if (out.witness) out.holds = Verdict::no;
  return out;
}

inline QuasiMedianVerdict check_quasi_median(const BallGraph& ball, int margin = 0) {
  return check_quasi_median(ball.graph(), QmMode::interior(ball, margin));
}

// Independent re-verification of a violation witness by brute force.
inline bool reverify_witness(const GraphView& g, const QmWitness& w) {
  const auto& v = w.vertices;
  if (w.axiom == "diamond") {
    if (v.size() != 4) return false;
    int edges = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) edges += g.adjacent(v[i], v[j]);
    return edges == 5;
  }
  const DistanceMatrix d(g);
  if (w.axiom == "triple") {
    if (v.size() != 3) return false;
    // Plain enumeration of all vertex triples, no interval pruning.
    int best = -1, count = 0;
    const int n = g.size();
    for (int y1 = 0; y1 < n; ++y1)
      for (int y2 = 0; y2 < n; ++y2)
        for (int y3 = 0; y3 < n; ++y3) {
          const int k = d(y1, y2);
          if (k < 0 || d(y2, y3) != k || d(y1, y3) != k) continue;
          if (d(v[0], y1) + k + d(y2, v[1]) != d(v[0], v[1])) continue;
          if (d(v[0], y1) + k + d(y3, v[2]) != d(v[0], v[2])) continue;
          if (d(v[1], y2) + k + d(y3, v[2]) != d(v[1], v[2])) continue;
          if (best < 0 || k < best) {
            best = k;
            count = 0;
          }
          if (k == best) ++count;
        }
    return count != 1;
  }
  if (w.axiom == "hexagon") {
    if (v.size() != 6) return false;
    auto hull = detail::convex_hull(d, QmMode::exact(), v);
    return hull && !detail::hull_is_cube(g, *hull);
  }
  return false;
}

}  // namespace qmlab
