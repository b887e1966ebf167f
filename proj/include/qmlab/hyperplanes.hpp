#pragma once

#include <algorithm>
#include <compare>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ball.hpp"
#include "presentation.hpp"

namespace qmlab {

// Hyperplane with carrier P[star(vertex)] * base, base the shortest coset element.
struct Hyperplane {
  VertexId vertex = 0;
  NormalForm base;
  friend bool operator==(const Hyperplane&, const Hyperplane&) = default;
  friend std::strong_ordering operator<=>(const Hyperplane& a, const Hyperplane& b) {
    if (auto c = a.vertex <=> b.vertex; c != 0) return c;
    return a.base <=> b.base;
  }
};

struct HyperplaneHash {
  std::size_t operator()(const Hyperplane& h) const { return h.base.hash() * 31u + static_cast<std::size_t>(h.vertex); }
};

// The hyperplane labelled v whose carrier contains x.
inline Hyperplane hyperplane_through(const GraphProduct& gp, const NormalForm& x, VertexId v) {
  return {v, parabolic_strip(gp, gp.graph.star(v), x).rep};
}

// Hyperplane dual to the edge x -- s x.
inline Hyperplane dual_hyperplane(const GraphProduct& gp, const NormalForm& x, Syllable s) {
  return hyperplane_through(gp, x, s.vertex);
}

inline bool in_carrier(const GraphProduct& gp, const Hyperplane& h, const NormalForm& x) {
  return hyperplane_through(gp, x, h.vertex).base == h.base;
}

// Right translate h * g.
inline Hyperplane act(const GraphProduct& gp, const Hyperplane& h, const NormalForm& g) {
  return {h.vertex, parabolic_strip(gp, gp.graph.star(h.vertex), multiply(gp, h.base, g)).rep};
}

inline bool parabolic_finite(const GraphProduct& gp, VertexSet a) {
  for (VertexId x : a.members())
    for (VertexId y : a.members())
      if (x != y && !gp.commute(x, y)) return false;
  return true;
}

inline std::size_t parabolic_order(const GraphProduct& gp, VertexSet a) {
  std::size_t n = 1;
  for (VertexId x : a.members()) n *= static_cast<std::size_t>(gp.group(x).order());
  return n;
}

// Membership in P[factors[0]] * P[factors[1]] * ... by greedy stripping from
// the left; exact for graph products.
inline bool in_parabolic_product(const GraphProduct& gp, std::span<const VertexSet> factors, NormalForm g) {
  for (VertexSet a : factors) g = parabolic_strip(gp, a, g).rep;
  return g.empty();
}

// Elements on geodesics from x to y: translates of order filters of the
// heap of y * x^-1.
inline std::vector<NormalForm> interval_elements(const GraphProduct& gp, const NormalForm& x, const NormalForm& y) {
  const NormalForm h = multiply(gp, y, invert(gp, x));
  const std::size_t n = h.size();
  if (n > 24) throw HypothesisError("interval too long to enumerate");
  // after[i]: later syllables that must precede i in any filter.
  std::vector<std::uint32_t> after(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (h[i].vertex == h[j].vertex || !gp.commute(h[i].vertex, h[j].vertex)) after[i] |= 1u << j;
  std::set<std::uint32_t> seen{0};
  std::vector<std::uint32_t> stack{0};
  while (!stack.empty()) {
    std::uint32_t f = stack.back();
    stack.pop_back();
    for (std::size_t i = 0; i < n; ++i) {
      if (f & (1u << i)) continue;
      if ((after[i] & f) != after[i]) continue;
      std::uint32_t g = f | (1u << i);
      if (seen.insert(g).second) stack.push_back(g);
    }
  }
  std::vector<NormalForm> out;
  for (std::uint32_t f : seen) {
    std::vector<Syllable> w;
    for (std::size_t i = 0; i < n; ++i)
      if (f & (1u << i)) w.push_back(h[i]);
    out.push_back(multiply(gp, normal_form(gp, w), x));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Hyperplanes crossed by a geodesic from p to q.
inline std::vector<Hyperplane> separating_hyperplanes(const GraphProduct& gp, const NormalForm& p, const NormalForm& q) {
  const NormalForm h = multiply(gp, q, invert(gp, p));
  std::vector<Hyperplane> out;
  NormalForm x = p;
  for (std::size_t i = h.size(); i-- > 0;) {
    out.push_back(dual_hyperplane(gp, x, h[i]));
    x = multiply(gp, h[i], x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Hyperplane> separating_hyperplanes(const BallGraph& ball, int p, int q) {
  if (!ball.interior(p) || !ball.interior(q)) throw HypothesisError("separation endpoints must be interior");
  return separating_hyperplanes(ball.gp(), ball.element(p), ball.element(q));
}

enum class PairRelation { equal, intersect, osculate, separated, inconclusive };

inline const char* to_string(PairRelation r) {
  switch (r) {
    case PairRelation::equal: return "equal";
    case PairRelation::intersect: return "intersect";
    case PairRelation::osculate: return "osculate";
    case PairRelation::separated: return "separated";
    case PairRelation::inconclusive: return "inconclusive";
  }
  return "?";
}

struct InterosculationError : Error {
  using Error::Error;
};

// A vertex in both carriers, if any.
inline std::optional<NormalForm> common_carrier_vertex(const GraphProduct& gp, const Hyperplane& a, const Hyperplane& b) {
  const NormalForm g = multiply(gp, b.base, invert(gp, a.base));
  const auto s = parabolic_strip(gp, gp.graph.star(b.vertex), g);
  if (!support(s.rep).subset_of(gp.graph.star(a.vertex))) return std::nullopt;
  return multiply(gp, s.rep, a.base);
}

// True if some edges x -- s x (s in G_v) and x -- t x (t in G_w) span a square.
inline bool square_at(const GraphProduct& gp, const NormalForm& x, VertexId v, VertexId w) {
  const NormalForm sx = multiply(gp, Syllable{v, 1}, x);
  const NormalForm tx = multiply(gp, Syllable{w, 1}, x);
  if (distance(gp, sx, tx) != 2) return false;
  for (const auto& r : all_syllables(gp)) {
    NormalForm z = multiply(gp, r, sx);
    if (z != x && distance(gp, z, tx) == 1) return true;
  }
  return false;
}

// Relation computed from coset arithmetic plus a local square test at a
// shared carrier vertex; no ball truncation involved.
inline PairRelation classify_exact(const GraphProduct& gp, const Hyperplane& a, const Hyperplane& b) {
  if (a == b) return PairRelation::equal;
  auto x = common_carrier_vertex(gp, a, b);
  if (!x) return PairRelation::separated;
  return square_at(gp, *x, a.vertex, b.vertex) ? PairRelation::intersect : PairRelation::osculate;
}

// Carriers of all hyperplanes meeting a ball.
class HyperplaneIndex {
 public:
  explicit HyperplaneIndex(const BallGraph& ball) : ball_(&ball) {
    const auto& gp = ball.gp();
    std::map<Hyperplane, std::vector<int>> carriers;
    for (int i = 0; i < ball.size(); ++i)
      for (VertexId v = 0; v < gp.vertex_count(); ++v) carriers[hyperplane_through(gp, ball.element(i), v)].push_back(i);
    for (auto& [h, verts] : carriers) {
      id_.emplace(h, static_cast<int>(planes_.size()));
      const VertexSet st = gp.graph.star(h.vertex);
      complete_.push_back(parabolic_finite(gp, st) && verts.size() == parabolic_order(gp, st));
      planes_.push_back(h);
      carriers_.push_back(std::move(verts));
    }
    through_.resize(ball.size());
    for (int h = 0; h < size(); ++h)
      for (int x : carriers_[h]) through_[x].push_back(h);
  }

  int size() const { return static_cast<int>(planes_.size()); }
  const Hyperplane& operator[](int h) const { return planes_[h]; }
  const std::vector<Hyperplane>& hyperplanes() const { return planes_; }
  const std::vector<int>& carrier(int h) const { return carriers_[h]; }
  bool carrier_complete(int h) const { return complete_[h]; }
  const std::vector<int>& through(int vertex) const { return through_[vertex]; }
  std::optional<int> find(const Hyperplane& h) const {
    auto it = id_.find(h);
    if (it == id_.end()) return std::nullopt;
    return it->second;
  }
  const BallGraph& ball() const { return *ball_; }

 private:
  const BallGraph* ball_;
  std::vector<Hyperplane> planes_;
  std::vector<std::vector<int>> carriers_;
  std::vector<char> complete_;
  std::vector<std::vector<int>> through_;
  std::unordered_map<Hyperplane, int, HyperplaneHash> id_;
};

struct CarrierSet {
  std::vector<int> vertices;
  bool partial = false;
};

inline CarrierSet carrier(const BallGraph& ball, const Hyperplane& h) {
  const auto& gp = ball.gp();
  CarrierSet out;
  for (int i = 0; i < ball.size(); ++i)
    if (in_carrier(gp, h, ball.element(i))) out.vertices.push_back(i);
  if (out.vertices.empty()) throw HypothesisError("hyperplane does not meet the ball");
  const VertexSet st = gp.graph.star(h.vertex);
  out.partial = !(parabolic_finite(gp, st) && out.vertices.size() == parabolic_order(gp, st));
  return out;
}

namespace detail {

// Relation read off the ball alone: a shared carrier vertex at depth at most
// radius - 2 (so that any square through it is inside the ball) decides
// intersect versus osculate.
inline PairRelation classify_in_ball(const BallGraph& ball, const Hyperplane& a, const CarrierSet& ca,
                                     const Hyperplane& b, const CarrierSet& cb) {
  if (a == b) return PairRelation::equal;
  const auto& gp = ball.gp();
  std::vector<int> common;
  std::set_intersection(ca.vertices.begin(), ca.vertices.end(), cb.vertices.begin(), cb.vertices.end(),
                        std::back_inserter(common));
  const auto& g = ball.graph();
  auto label = [&](int x, int y) {
    const NormalForm e = multiply(gp, ball.element(y), invert(gp, ball.element(x)));
    return e.size() == 1 ? e[0].vertex : -1;
  };
  bool squared = false, bare = false;
  for (int x : common) {
    if (ball.depth(x) > ball.radius() - 2) continue;
    bool sq = false;
    for (int y : g.neighbours(x)) {
      if (label(x, y) != a.vertex) continue;
      for (int z : g.neighbours(x)) {
        if (label(x, z) != b.vertex || g.adjacent(y, z)) continue;
        for (int u : g.neighbours(y))
          if (u != x && g.adjacent(u, z) && !g.adjacent(u, x)) sq = true;
      }
    }
    (sq ? squared : bare) = true;
  }
  if (squared && bare) throw InterosculationError("hyperplanes both intersect and osculate");
  if (squared) return PairRelation::intersect;
  if (bare) return PairRelation::osculate;
  if (common.empty() && !ca.partial && !cb.partial) return PairRelation::separated;
  return PairRelation::inconclusive;
}

}  // namespace detail

inline PairRelation classify_pair(const BallGraph& ball, const Hyperplane& a, const Hyperplane& b) {
  if (a == b) return PairRelation::equal;
  return detail::classify_in_ball(ball, a, carrier(ball, a), b, carrier(ball, b));
}

inline PairRelation classify_pair(const HyperplaneIndex& index, int a, int b) {
  auto set = [&](int h) { return CarrierSet{index.carrier(h), !index.carrier_complete(h)}; };
  return detail::classify_in_ball(index.ball(), index[a], set(a), index[b], set(b));
}

enum class GraphKind { contact, crossing };

inline bool adjacent_in(GraphKind kind, PairRelation r) {
  return r == PairRelation::intersect || (kind == GraphKind::contact && r == PairRelation::osculate);
}

// Exact distance in the contact or crossing graph of the whole Cayley graph.
// a and b are joined by a path of length m through labels v_0..v_m iff
// b.base * a.base^-1 lies in P[st v_m] ... P[st v_0]; breadth-first search
// over (label, unstripped remainder) states finds the least m.
inline std::optional<int> hyperplane_distance(const GraphProduct& gp, const Hyperplane& a, const Hyperplane& b,
                                              GraphKind kind) {
  const NormalForm g = multiply(gp, b.base, invert(gp, a.base));
  struct State {
    VertexId label;
    NormalForm rest;
    bool operator==(const State&) const = default;
  };
  struct StateHash {
    std::size_t operator()(const State& s) const { return s.rest.hash() * 131u + static_cast<std::size_t>(s.label); }
  };
  State start{b.vertex, parabolic_strip(gp, gp.graph.star(b.vertex), g).rep};
  std::unordered_set<State, StateHash> seen{start};
  std::vector<State> frontier{start};
  for (int depth = 0; !frontier.empty(); ++depth) {
    std::vector<State> next;
    for (const auto& s : frontier) {
      if (s.label == a.vertex && s.rest.empty()) return depth;
      for (VertexId u = 0; u < gp.vertex_count(); ++u) {
        if (u == s.label || (kind == GraphKind::crossing && !gp.commute(u, s.label))) continue;
        State t{u, parabolic_strip(gp, gp.graph.star(u), s.rest).rep};
        if (seen.insert(t).second) next.push_back(std::move(t));
      }
    }
    frontier = std::move(next);
  }
  return std::nullopt;
}

// Union-find over ball edges under triangle and square moves.
class EdgeClassTable {
 public:
  explicit EdgeClassTable(const BallGraph& ball) {
    const auto& edges = ball.edges();
    const auto& g = ball.graph();
    parent_.resize(edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e) parent_[e] = static_cast<int>(e);
    std::unordered_map<std::uint64_t, int> id;
    auto key = [](int a, int b) {
      if (a > b) std::swap(a, b);
      return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
    };
    for (std::size_t e = 0; e < edges.size(); ++e) id.emplace(key(edges[e].a, edges[e].b), static_cast<int>(e));
    auto eid = [&](int a, int b) { return id.at(key(a, b)); };
    for (const auto& e : edges)
      for (int c : g.neighbours(e.a))
        if (g.adjacent(c, e.b)) {
          unite(eid(e.a, e.b), eid(e.a, c));
          unite(eid(e.a, e.b), eid(e.b, c));
        }
    for (int x = 0; x < g.size(); ++x) {
      const auto& nx = g.neighbours(x);
      for (std::size_t i = 0; i < nx.size(); ++i)
        for (std::size_t j = i + 1; j < nx.size(); ++j) {
          int y = nx[i], w = nx[j];
          if (g.adjacent(y, w)) continue;
          for (int z : g.neighbours(y))
            if (z != x && g.adjacent(z, w) && !g.adjacent(z, x)) {
              unite(eid(x, y), eid(w, z));
              unite(eid(x, w), eid(y, z));
            }
        }
    }
    std::map<int, int> dense;
    class_of_.resize(edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e) {
      int r = find(static_cast<int>(e));
      auto [it, fresh] = dense.emplace(r, static_cast<int>(dense.size()));
      class_of_[e] = it->second;
    }
    plane_.assign(dense.size(), std::nullopt);
    consistent_ = true;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const auto& ed = edges[e];
      if (!ball.interior(ed.a) || !ball.interior(ed.b)) continue;
      Hyperplane h = dual_hyperplane(ball.gp(), ball.element(ed.a), ed.label);
      auto& slot = plane_[class_of_[e]];
      if (!slot)
        slot = h;
      else if (*slot != h)
        consistent_ = false;
    }
  }

  int class_count() const { return static_cast<int>(plane_.size()); }
  int class_of(int edge) const { return class_of_[edge]; }
  const std::optional<Hyperplane>& hyperplane(int cls) const { return plane_[cls]; }
  // Interior edges of one class always map to one algebraic hyperplane.
  bool consistent() const { return consistent_; }

 private:
  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

  std::vector<int> parent_;
  std::vector<int> class_of_;
  std::vector<std::optional<Hyperplane>> plane_;
  bool consistent_ = true;
};

inline EdgeClassTable hyperplanes_of_ball(const BallGraph& ball) { return EdgeClassTable(ball); }

struct GateError : Error {
  GateError(int failing) : Error("gate property fails"), witness(failing) {}
  int witness;
};

// Nearest point of y to x, verified against every vertex of y.
inline int gate(const BallGraph& ball, std::span<const int> y, int x) {
  if (y.empty()) throw HypothesisError("gate into an empty set");
  int best = y.front(), bd = ball.group_distance(x, best);
  for (int p : y) {
    int dp = ball.group_distance(x, p);
    if (dp < bd) {
      bd = dp;
      best = p;
    }
  }
  for (int q : y)
    if (ball.group_distance(x, q) != bd + ball.group_distance(best, q)) throw GateError(q);
  return best;
}

struct GatedSubgraph {
  std::vector<int> vertices;
  bool partial = false;
  std::vector<std::pair<int, int>> certificate;  // (vertex, gate)
  std::size_t uncertified = 0;
};

// Vertices reachable from y crossing only hyperplanes labelled in `labels`.
inline GatedSubgraph gated_hull(const BallGraph& ball, std::span<const int> y, VertexSet labels, int margin = 1) {
  const auto& gp = ball.gp();
  for (int p : y)
    if (!ball.interior(p)) throw HypothesisError("gated hull seed must be interior");
  GatedSubgraph out;
  std::vector<NormalForm> inv;
  for (int p : y) inv.push_back(invert(gp, ball.element(p)));
  for (int x = 0; x < ball.size(); ++x)
    for (const auto& pi : inv)
      if (support(multiply(gp, ball.element(x), pi)).subset_of(labels)) {
        out.vertices.push_back(x);
        break;
      }
  for (int x : out.vertices) {
    if (ball.depth(x) < ball.radius()) continue;
    for (const auto& s : all_syllables(gp))
      if (labels.contains(s.vertex) && syllable_length(multiply(gp, s, ball.element(x))) > ball.radius())
        out.partial = true;
  }
  for (int x = 0; x < ball.size(); ++x) {
    if (!ball.interior(x, margin)) continue;
    try {
      out.certificate.emplace_back(x, gate(ball, out.vertices, x));
    } catch (const GateError&) {
      ++out.uncertified;
    }
  }
  return out;
}

// Gate of v in the gated set P[factors.back()] ... P[factors.front()] * anchor,
// found on the interval from v to the anchor.
inline NormalForm iterated_hull_gate(const GraphProduct& gp, const NormalForm& anchor, std::span<const VertexSet> factors,
                                     const NormalForm& v) {
  std::vector<VertexSet> leftmost_first(factors.rbegin(), factors.rend());
  const NormalForm anchor_inv = invert(gp, anchor);
  std::optional<NormalForm> best;
  int bd = 0;
  for (const auto& z : interval_elements(gp, v, anchor)) {
    if (!in_parabolic_product(gp, leftmost_first, multiply(gp, z, anchor_inv))) continue;
    int dz = distance(gp, v, z);
    if (!best || dz < bd) {
      best = z;
      bd = dz;
    }
  }
  return *best;
}

// Gate of v in the carrier of h.
inline NormalForm carrier_gate(const GraphProduct& gp, const Hyperplane& h, const NormalForm& v) {
  const auto s = parabolic_strip(gp, gp.graph.star(h.vertex), multiply(gp, h.base, invert(gp, v)));
  return multiply(gp, invert(gp, s.prefix), h.base);
}

inline std::vector<int> swap_move(const BallGraph& ball, const std::vector<int>& path, std::size_t i) {
  if (path.size() < 3 || i + 2 >= path.size()) throw HypothesisError("no pair of consecutive edges at this position");
  const auto& gp = ball.gp();
  if (ball.group_distance(path.front(), path.back()) != static_cast<int>(path.size()) - 1)
    throw HypothesisError("path is not a geodesic");
  const NormalForm& x0 = ball.element(path[i]);
  const NormalForm& x1 = ball.element(path[i + 1]);
  const NormalForm& x2 = ball.element(path[i + 2]);
  const NormalForm s = multiply(gp, x1, invert(gp, x0));
  const NormalForm t = multiply(gp, x2, invert(gp, x1));
  if (classify_exact(gp, dual_hyperplane(gp, x0, s[0]), dual_hyperplane(gp, x1, t[0])) != PairRelation::intersect)
    throw HypothesisError("dual hyperplanes do not intersect");
  auto z = ball.index_of(multiply(gp, t, x0));
  if (!z || !ball.graph().adjacent(*z, path[i + 2])) throw HypothesisError("square leaves the ball");
  auto out = path;
  out[i + 1] = *z;
  return out;
}

struct LiftResult {
  std::vector<Hyperplane> hyperplanes;
  std::vector<int> breakpoints;  // ball vertices p_0..p_{m+1}
  int sum = 0;
};

struct LiftError : Error {
  LiftError(int best_sum) : Error("no lift achieves the endpoint distance"), best(best_sum) {}
  int best;
};

// Exhaustive lift of a geodesic between a and b with breakpoints in the ball.
inline LiftResult lift_geodesic(const HyperplaneIndex& index, GraphKind kind, const Hyperplane& a, const Hyperplane& b,
                                int p, int q) {
  const auto& ball = index.ball();
  const auto& gp = ball.gp();
  if (!in_carrier(gp, a, ball.element(p)) || !in_carrier(gp, b, ball.element(q)))
    throw HypothesisError("endpoints must lie on the carriers");
  const auto m = hyperplane_distance(gp, a, b, kind);
  if (!m) throw HypothesisError("hyperplanes lie in different components");
  std::vector<std::optional<int>> to_b(index.size());
  for (int h = 0; h < index.size(); ++h) to_b[h] = hyperplane_distance(gp, index[h], b, kind);

  std::optional<LiftResult> best;
  std::vector<Hyperplane> seq{a};
  auto evaluate = [&] {
    // Layers of breakpoint candidates, then a shortest-path DP.
    std::vector<std::vector<int>> layers{{p}};
    for (std::size_t i = 1; i < seq.size(); ++i) {
      std::vector<int> layer;
      auto ia = index.find(seq[i - 1]), ib = index.find(seq[i]);
      if (!ia || !ib) return;
      std::set_intersection(index.carrier(*ia).begin(), index.carrier(*ia).end(), index.carrier(*ib).begin(),
                            index.carrier(*ib).end(), std::back_inserter(layer));
      if (layer.empty()) return;
      layers.push_back(std::move(layer));
    }
    layers.push_back({q});
    const std::size_t L = layers.size();
    std::vector<std::vector<int>> cost(L);
    cost[L - 1] = {0};
    for (std::size_t i = L - 1; i-- > 0;) {
      cost[i].assign(layers[i].size(), 1 << 29);
      for (std::size_t j = 0; j < layers[i].size(); ++j)
        for (std::size_t k = 0; k < layers[i + 1].size(); ++k)
          cost[i][j] = std::min(cost[i][j], ball.group_distance(layers[i][j], layers[i + 1][k]) + cost[i + 1][k]);
    }
    LiftResult r{seq, {p}, cost[0][0]};
    std::size_t cur = 0;
    for (std::size_t i = 0; i + 1 < L; ++i)
      for (std::size_t k = 0; k < layers[i + 1].size(); ++k)
        if (ball.group_distance(layers[i][cur], layers[i + 1][k]) + cost[i + 1][k] == cost[i][cur]) {
          cur = k;
          r.breakpoints.push_back(layers[i + 1][k]);
          break;
        }
    if (!best || r.sum < best->sum) best = std::move(r);
  };
  auto extend = [&](auto&& self, int i) -> void {
    if (i == *m) {
      evaluate();
      return;
    }
    for (int h = 0; h < index.size(); ++h) {
      if (!to_b[h] || *to_b[h] != *m - i - 1) continue;
      if (!adjacent_in(kind, classify_exact(gp, seq.back(), index[h]))) continue;
      seq.push_back(index[h]);
      self(self, i + 1);
      seq.pop_back();
    }
  };
  if (*m == 0) {
    seq = {a};
    evaluate();
  } else {
    extend(extend, 0);
  }
  if (!best) throw LiftError(-1);
  if (best->sum != ball.group_distance(p, q)) throw LiftError(best->sum);
  return *best;
}

}  // namespace qmlab
