#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "ball.hpp"
#include "graph_view.hpp"
#include "hyperplanes.hpp"
#include "parallel.hpp"
#include "presentation.hpp"

namespace qmlab {

// Exact multiple of one half.
class HalfInteger {
 public:
  constexpr HalfInteger() = default;
  static constexpr HalfInteger from_twice(int twice) { return HalfInteger(twice); }
  static constexpr HalfInteger whole(int n) { return HalfInteger(2 * n); }
  constexpr int twice() const { return twice_; }
  constexpr double value() const { return twice_ / 2.0; }
  constexpr auto operator<=>(const HalfInteger&) const = default;
  std::string str() const { return twice_ % 2 == 0 ? std::to_string(twice_ / 2) : std::to_string(twice_) + "/2"; }

 private:
  constexpr explicit HalfInteger(int twice) : twice_(twice) {}
  int twice_ = 0;
};

struct Relation {
  int a = 0;
  int b = 0;
  PairRelation kind = PairRelation::separated;
};

// Hyperplanes with a dual edge inside the ball minus a margin, related by
// exact classification.
struct ContactView {
  GraphKind kind = GraphKind::contact;
  int margin = 1;
  GraphProduct gp;
  std::vector<Hyperplane> nodes;
  std::vector<Relation> relations;  // every intersecting or osculating pair, a < b
  GraphView graph;

  int size() const { return static_cast<int>(nodes.size()); }
  std::optional<int> find(const Hyperplane& h) const {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), h);
    if (it == nodes.end() || *it != h) return std::nullopt;
    return static_cast<int>(it - nodes.begin());
  }
};

inline std::vector<Hyperplane> interior_hyperplanes(const BallGraph& ball, int margin = 1) {
  std::vector<Hyperplane> out;
  for (const auto& e : ball.edges())
    if (ball.interior(e.a, margin) && ball.interior(e.b, margin))
      out.push_back(dual_hyperplane(ball.gp(), ball.element(e.a), e.label));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline ContactView build_view(const BallGraph& ball, GraphKind kind, int margin = 1) {
  ContactView view;
  view.kind = kind;
  view.margin = margin;
  view.gp = ball.gp();
  view.nodes = interior_hyperplanes(ball, margin);
  const int n = view.size();
  view.graph = GraphView(n);
  std::vector<std::vector<Relation>> rows(n);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t a) {
    for (int b = static_cast<int>(a) + 1; b < n; ++b) {
      auto r = classify_exact(ball.gp(), view.nodes[a], view.nodes[b]);
      if (r == PairRelation::intersect || r == PairRelation::osculate)
        rows[a].push_back({static_cast<int>(a), b, r});
    }
  });
  for (auto& row : rows)
    for (const auto& r : row) {
      view.relations.push_back(r);
      if (adjacent_in(kind, r.kind)) view.graph.add_edge(r.a, r.b);
    }
  return view;
}

struct OrbitGraph {
  GraphView graph;  // one node per vertex of the defining graph
  std::optional<std::vector<int>> isomorphism;  // onto the defining graph
};

inline OrbitGraph quotient_crossing(const ContactView& view) {
  const auto& gp = view.gp;
  OrbitGraph out{GraphView(gp.vertex_count()), std::nullopt};
  for (const auto& r : view.relations)
    if (r.kind == PairRelation::intersect) out.graph.add_edge(view.nodes[r.a].vertex, view.nodes[r.b].vertex);
  out.isomorphism = find_isomorphism(out.graph, defining_graph_view(gp.graph));
  return out;
}

struct ViewDistances {
  DistanceMatrix in_view;
  std::vector<int> exact;  // row-major, kUnreachable if disconnected
  int n = 0;
  int exact_at(int a, int b) const { return exact[static_cast<std::size_t>(a) * n + b]; }
  bool certified(int a, int b) const { return in_view(a, b) == exact_at(a, b); }
};

inline ViewDistances view_distances(const ContactView& view) {
  ViewDistances out{DistanceMatrix(view.graph), {}, view.size()};
  out.exact.assign(static_cast<std::size_t>(out.n) * out.n, kUnreachable);
  parallel_for(static_cast<std::size_t>(out.n), [&](std::size_t a) {
    for (int b = 0; b < out.n; ++b) {
      auto d = hyperplane_distance(view.gp, view.nodes[a], view.nodes[b], view.kind);
      out.exact[a * out.n + b] = d ? *d : kUnreachable;
    }
  });
  return out;
}

struct BottleneckReport {
  bool pass = true;
  std::size_t pairs_checked = 0;
  std::size_t pairs_short = 0;  // within 2D, pass trivially
  std::optional<std::pair<int, int>> witness;
};

// For each pair (x, y) farther apart than 2D, look for a midpoint of a
// geodesic (a vertex, or the middle of an edge) whose closed D-ball
// separates x from y.
inline BottleneckReport bottleneck_check(const GraphView& g, HalfInteger bound,
                                         const std::function<bool(int, int)>& include = {}) {
  const DistanceMatrix d(g);
  const int n = g.size();
  std::vector<BottleneckReport> parts(n);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t xi) {
    const int x = static_cast<int>(xi);
    auto& rep = parts[xi];
    std::vector<char> blocked(n);
    // The ball around an edge midpoint always cuts that edge.
    auto separates = [&](const std::function<int(int)>& twice_dist, int y, std::pair<int, int> cut = {-1, -1}) {
      for (int z = 0; z < n; ++z) blocked[z] = twice_dist(z) <= bound.twice();
      if (blocked[x]) return true;
      std::vector<char> seen(n, 0);
      std::vector<int> stack{x};
      seen[x] = 1;
      while (!stack.empty()) {
        int a = stack.back();
        stack.pop_back();
        if (a == y) return false;
        for (int b : g.neighbours(a)) {
          if (seen[b] || blocked[b] || std::minmax(a, b) == std::minmax(cut.first, cut.second)) continue;
          seen[b] = 1;
          stack.push_back(b);
        }
      }
      return true;
    };
    for (int y = x + 1; y < n && !rep.witness; ++y) {
      if (include && !include(x, y)) continue;
      const int dxy = d(x, y);
      if (dxy == kUnreachable) continue;
      ++rep.pairs_checked;
      if (2 * dxy <= 2 * bound.twice()) {
        ++rep.pairs_short;
        continue;
      }
      bool ok = false;
      if (dxy % 2 == 0) {
        for (int m = 0; m < n && !ok; ++m)
          if (d(x, m) == dxy / 2 && d(m, y) == dxy / 2)
            ok = separates([&](int z) { return d(z, m) < 0 ? 1 << 29 : 2 * d(z, m); }, y);
      } else {
        for (int a = 0; a < n && !ok; ++a) {
          if (d(x, a) != dxy / 2 || d(a, y) != dxy / 2 + 1) continue;
          for (int b : g.neighbours(a)) {
            if (d(b, y) != dxy / 2) continue;
            ok = separates(
                [&](int z) {
                  int m = std::min(d(z, a) < 0 ? 1 << 28 : d(z, a), d(z, b) < 0 ? 1 << 28 : d(z, b));
                  return 2 * m + 1;
                },
                y, {a, b});
            if (ok) break;
          }
        }
      }
      if (!ok) rep.witness = std::pair{x, y};
    }
  });
  BottleneckReport out;
  for (const auto& p : parts) {
    out.pairs_checked += p.pairs_checked;
    out.pairs_short += p.pairs_short;
    if (p.witness && !out.witness) out.witness = p.witness;
  }
  out.pass = !out.witness;
  return out;
}

struct SpecialReport {
  bool pass = true;
  std::size_t pairs = 0;
  std::optional<std::pair<int, int>> same_orbit_contact;  // nodes
  std::optional<std::pair<VertexId, VertexId>> mixed_labels;  // labels both intersecting and osculating
};

// No two distinct hyperplanes in one orbit touch, and no pair of orbits is
// realised both by intersecting and by osculating hyperplanes.
inline SpecialReport special_check(const ContactView& view) {
  SpecialReport out;
  const int n = view.gp.vertex_count();
  std::vector<char> inter(static_cast<std::size_t>(n) * n, 0), osc(static_cast<std::size_t>(n) * n, 0);
  for (const auto& r : view.relations) {
    ++out.pairs;
    const VertexId u = view.nodes[r.a].vertex, w = view.nodes[r.b].vertex;
    if (u == w && !out.same_orbit_contact) out.same_orbit_contact = std::pair{r.a, r.b};
    auto& cell = r.kind == PairRelation::intersect ? inter : osc;
    cell[u * n + w] = cell[w * n + u] = 1;
  }
  for (VertexId u = 0; u < n && !out.mixed_labels; ++u)
    for (VertexId w = 0; w < n; ++w)
      if (inter[u * n + w] && osc[u * n + w]) {
        out.mixed_labels = std::pair{u, w};
        break;
      }
  out.pass = !out.same_orbit_contact && !out.mixed_labels;
  return out;
}

inline int osculation_bound(int orbits) { return std::max(2, orbits - 1); }

struct OsculationReport {
  bool pass = true;
  int bound = 0;
  std::size_t pairs = 0;
  std::size_t skipped = 0;  // different crossing components
  int worst = 0;
  std::optional<std::pair<int, int>> witness;
};

// Osculating pairs in one crossing component are close in the crossing graph.
inline OsculationReport osculation_bound_check(const ContactView& view) {
  OsculationReport out;
  out.bound = osculation_bound(view.gp.vertex_count());
  for (const auto& r : view.relations) {
    if (r.kind != PairRelation::osculate) continue;
    auto d = hyperplane_distance(view.gp, view.nodes[r.a], view.nodes[r.b], GraphKind::crossing);
    if (!d) {
      ++out.skipped;
      continue;
    }
    ++out.pairs;
    out.worst = std::max(out.worst, *d);
    if (*d > out.bound && !out.witness) out.witness = std::pair{r.a, r.b};
  }
  out.pass = !out.witness;
  return out;
}

struct DistortionReport {
  bool skipped = false;
  bool pass = true;
  int factor = 0;
  std::size_t pairs = 0;
  std::optional<std::pair<int, int>> witness;
};

inline DistortionReport distortion_check(const ContactView& view) {
  DistortionReport out;
  out.factor = osculation_bound(view.gp.vertex_count());
  const int n = view.size();
  std::vector<DistortionReport> parts(n);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t a) {
    auto& p = parts[a];
    for (int b = static_cast<int>(a) + 1; b < n; ++b) {
      auto dx = hyperplane_distance(view.gp, view.nodes[a], view.nodes[b], GraphKind::crossing);
      if (!dx) {
        p.skipped = true;
        return;
      }
      int dc = *hyperplane_distance(view.gp, view.nodes[a], view.nodes[b], GraphKind::contact);
      ++p.pairs;
      if ((*dx > out.factor * dc || dc > *dx) && !p.witness) p.witness = std::pair{static_cast<int>(a), b};
    }
  });
  for (const auto& p : parts) {
    out.skipped = out.skipped || p.skipped;
    out.pairs += p.pairs;
    if (p.witness && !out.witness) out.witness = p.witness;
  }
  if (out.skipped) {
    out.pairs = 0;
    out.witness.reset();
  }
  out.pass = !out.witness;
  return out;
}

enum class GroupClass { infinite_dihedral, non_elementary_candidate, contact_bounded };

inline const char* to_string(GroupClass c) {
  switch (c) {
    case GroupClass::infinite_dihedral: return "infinite dihedral";
    case GroupClass::non_elementary_candidate: return "non-elementary candidate";
    case GroupClass::contact_bounded: return "contact graph bounded";
  }
  return "?";
}

struct UnboundedWitness {
  GroupClass classification = GroupClass::contact_bounded;
  std::optional<NormalForm> element;
  int power = 0;
  // Least exact contact distance between a hyperplane through 1 and one
  // through element^power.
  int certified_distance = 0;
  std::optional<Hyperplane> from, to;
  bool pass = false;
};

inline GroupClass classify_group(const GraphProduct& gp) {
  const auto& g = gp.graph;
  if (g.size() < 2 || !g.complement_connected()) return GroupClass::contact_bounded;
  if (g.size() == 2 && g.edges().empty() && gp.group(0).order() == 2 && gp.group(1).order() == 2)
    return GroupClass::infinite_dihedral;
  return GroupClass::non_elementary_candidate;
}

inline UnboundedWitness unbounded_witness(const GraphProduct& gp, int n) {
  UnboundedWitness out;
  out.classification = classify_group(gp);
  if (out.classification == GroupClass::contact_bounded) return out;
  const NormalForm g = complement_walk_element(gp);
  const NormalForm gn = power(gp, g, n);
  out.element = g;
  out.power = n;
  std::optional<int> best;
  for (VertexId u = 0; u < gp.vertex_count(); ++u)
    for (VertexId w = 0; w < gp.vertex_count(); ++w) {
      Hyperplane a = hyperplane_through(gp, NormalForm{}, u), b = hyperplane_through(gp, gn, w);
      auto d = hyperplane_distance(gp, a, b, GraphKind::contact);
      if (!d) continue;
      if (!best || *d < *best) {
        best = *d;
        out.from = a;
        out.to = b;
      }
    }
  out.certified_distance = best.value_or(0);
  out.pass = best && *best >= n;
  return out;
}

struct AcylindricityReport {
  int distance = 0;  // exact contact distance between the two hyperplanes
  int stabilizer_bound = 1;
  int degree_bound = 0;
  std::size_t count = 0;
  long double bound = 0;
  bool pass = false;
  std::vector<NormalForm> elements;
};

inline long double acylindricity_bound(int d, int epsilon) {
  const long double n = static_cast<long double>((d + 1) * (d + 1)) * std::pow(2.0L, d + 1);
  return std::pow(n, 2.0L * (epsilon + 3)) * d / ((n - 1) * (n - 1));
}

// Counts ball elements moving both hyperplanes by at most epsilon.
inline AcylindricityReport acylindricity_experiment(const BallGraph& ball, const Hyperplane& h, const Hyperplane& k,
                                                    int epsilon, int stabilizer_bound = 1) {
  const auto& gp = ball.gp();
  AcylindricityReport out;
  auto dist = hyperplane_distance(gp, h, k, GraphKind::contact);
  if (!dist || *dist < 2 * epsilon + 6) throw HypothesisError("hyperplanes are not far enough apart");
  out.distance = *dist;
  out.stabilizer_bound = stabilizer_bound;
  out.degree_bound = std::max(stabilizer_bound, gp.graph.max_degree());
  out.bound = acylindricity_bound(out.degree_bound, epsilon);
  std::vector<char> hit(ball.size(), 0);
  parallel_for(static_cast<std::size_t>(ball.size()), [&](std::size_t i) {
    const auto& g = ball.element(static_cast<int>(i));
    auto dh = hyperplane_distance(gp, h, act(gp, h, g), GraphKind::contact);
    if (!dh || *dh > epsilon) return;
    auto dk = hyperplane_distance(gp, k, act(gp, k, g), GraphKind::contact);
    hit[i] = dk && *dk <= epsilon;
  });
  for (int i = 0; i < ball.size(); ++i)
    if (hit[i]) out.elements.push_back(ball.element(i));
  out.count = out.elements.size();
  out.pass = static_cast<long double>(out.count) <= out.bound;
  return out;
}

struct FewPlanesReport {
  int count = 0;
  int bound = 0;
  bool pass = true;
};

// Hyperplanes whose carrier holds w but which do not gate v at w.
inline FewPlanesReport fewplanes_count(const GraphProduct& gp, const NormalForm& v, const NormalForm& w) {
  FewPlanesReport out;
  const int d = gp.graph.max_degree();
  out.bound = (d + 1) * (d + 1);
  for (VertexId u = 0; u < gp.vertex_count(); ++u)
    if (carrier_gate(gp, hyperplane_through(gp, w, u), v) != w) ++out.count;
  out.pass = out.count <= out.bound;
  return out;
}

// Largest four-point defect over all quadruples of a connected graph.
inline HalfInteger delta_estimate(const GraphView& g) {
  const DistanceMatrix d(g);
  const int n = g.size();
  std::vector<int> best(n, 0);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t xi) {
    const int x = static_cast<int>(xi);
    for (int y = x; y < n; ++y)
      for (int z = y; z < n; ++z)
        for (int w = z; w < n; ++w) {
          std::array<int, 3> s{d(x, y) + d(z, w), d(x, z) + d(y, w), d(x, w) + d(y, z)};
          std::sort(s.begin(), s.end());
          best[xi] = std::max(best[xi], s[2] - s[1]);
        }
  });
  return HalfInteger::from_twice(n ? *std::max_element(best.begin(), best.end()) : 0);
}

struct ContactSequence {
  std::vector<Hyperplane> planes;       // H_0..H_n
  std::vector<NormalForm> breakpoints;  // p_0..p_{n+1}
  int length() const { return static_cast<int>(planes.size()) - 1; }
};

struct Profiles {
  std::vector<NormalForm> gates;  // gate of v in each carrier
  std::vector<int> up;            // d(p_n, g_n), ..., d(p_0, g_0)
  std::vector<int> down;          // d(p_1, g_0), ..., d(p_{n+1}, g_n)
};

inline Profiles profiles(const GraphProduct& gp, const ContactSequence& s, const NormalForm& v) {
  Profiles out;
  const int n = s.length();
  for (const auto& h : s.planes) out.gates.push_back(carrier_gate(gp, h, v));
  for (int i = n; i >= 0; --i) out.up.push_back(distance(gp, s.breakpoints[i], out.gates[i]));
  for (int i = 0; i <= n; ++i) out.down.push_back(distance(gp, s.breakpoints[i + 1], out.gates[i]));
  return out;
}

inline constexpr int kMaxSequenceLength = 4;

// Every contact sequence for (h, h2, p, p2) whose breakpoints lie in the ball.
inline std::vector<ContactSequence> enumerate_contact_sequences(const HyperplaneIndex& index, const Hyperplane& h,
                                                                const Hyperplane& h2, int p, int p2) {
  const auto& ball = index.ball();
  const auto& gp = ball.gp();
  if (!in_carrier(gp, h, ball.element(p)) || !in_carrier(gp, h2, ball.element(p2)))
    throw HypothesisError("endpoints must lie on the carriers");
  auto n = hyperplane_distance(gp, h, h2, GraphKind::contact);
  if (!n) throw HypothesisError("hyperplanes are not connected");
  if (*n > kMaxSequenceLength) throw BudgetError("contact sequence longer than the enumeration cap", *n);
  auto ih = index.find(h), ih2 = index.find(h2);
  if (!ih || !ih2) throw HypothesisError("hyperplane does not meet the ball");

  std::vector<std::vector<int>> chains;
  std::vector<int> chain{*ih};
  auto extend = [&](auto&& self) -> void {
    const int i = static_cast<int>(chain.size());
    if (i == *n + 1) {
      chains.push_back(chain);
      return;
    }
    std::vector<int> near;
    for (int x : index.carrier(chain.back()))
      for (int c : index.through(x)) near.push_back(c);
    std::sort(near.begin(), near.end());
    near.erase(std::unique(near.begin(), near.end()), near.end());
    for (int c : near) {
      if (i == *n && c != *ih2) continue;
      if (c == chain.back()) continue;
      auto rel = classify_exact(gp, index[chain.back()], index[c]);
      if (!adjacent_in(GraphKind::contact, rel)) continue;
      auto dc = hyperplane_distance(gp, index[c], h2, GraphKind::contact);
      if (!dc || *dc != *n - i) continue;
      chain.push_back(c);
      self(self);
      chain.pop_back();
    }
  };
  if (*n == 0)
    chains.push_back(chain);
  else
    extend(extend);

  std::vector<ContactSequence> out;
  for (const auto& c : chains) {
    std::vector<std::vector<int>> layers;
    for (std::size_t i = 1; i < c.size(); ++i) {
      std::vector<int> layer;
      std::set_intersection(index.carrier(c[i - 1]).begin(), index.carrier(c[i - 1]).end(),
                            index.carrier(c[i]).begin(), index.carrier(c[i]).end(), std::back_inserter(layer));
      layers.push_back(std::move(layer));
    }
    std::vector<int> pick(layers.size(), 0);
    for (;;) {
      ContactSequence s;
      for (int x : c) s.planes.push_back(index[x]);
      s.breakpoints.push_back(ball.element(p));
      for (std::size_t i = 0; i < layers.size(); ++i) {
        if (layers[i].empty()) break;
        s.breakpoints.push_back(ball.element(layers[i][pick[i]]));
      }
      if (s.breakpoints.size() != layers.size() + 1) break;
      s.breakpoints.push_back(ball.element(p2));
      out.push_back(std::move(s));
      std::size_t k = 0;
      while (k < pick.size() && ++pick[k] == static_cast<int>(layers[k].size())) pick[k++] = 0;
      if (k == pick.size()) break;
    }
  }
  return out;
}

// Indices of the v-minimal sequences: no other sequence is strictly smaller
// in both profiles.
inline std::vector<std::size_t> v_minimal_indices(const std::vector<Profiles>& prof) {
  std::vector<std::size_t> order(prof.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return prof[a].up < prof[b].up; });
  std::vector<std::size_t> out;
  std::optional<std::vector<int>> best_down;  // over strictly smaller up-profiles
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && prof[order[j]].up == prof[order[i]].up) ++j;
    for (std::size_t k = i; k < j; ++k)
      if (!best_down || !(*best_down < prof[order[k]].down)) out.push_back(order[k]);
    for (std::size_t k = i; k < j; ++k)
      if (!best_down || prof[order[k]].down < *best_down) best_down = prof[order[k]].down;
    i = j;
  }
  std::sort(out.begin(), out.end());
  return out;
}

// The sequence with the least up-profile, ties broken by hyperplane order
// then breakpoints.
inline ContactSequence v_minimal_contact_sequence(const HyperplaneIndex& index, const Hyperplane& h,
                                                  const Hyperplane& h2, int p, int p2, int v) {
  const auto& ball = index.ball();
  if (!ball.interior(p) || !ball.interior(p2) || !ball.interior(v)) throw HypothesisError("vertices must be interior");
  auto all = enumerate_contact_sequences(index, h, h2, p, p2);
  std::optional<std::size_t> best;
  std::vector<int> best_up;
  for (std::size_t i = 0; i < all.size(); ++i) {
    auto up = profiles(ball.gp(), all[i], ball.element(v)).up;
    auto key = std::tie(up, all[i].planes, all[i].breakpoints);
    if (!best || key < std::tie(best_up, all[*best].planes, all[*best].breakpoints)) {
      best = i;
      best_up = up;
    }
  }
  return all[*best];
}

struct TechnicalReport {
  bool gates_meet = true;       // first clause
  bool no_osculation = true;    // second clause
  bool separators_match = true;  // third clause
  bool pass() const { return gates_meet && no_osculation && separators_match; }
};

// Labels of hyperplanes separating x from y: one orbit per vertex label.
inline VertexSet separating_labels(const GraphProduct& gp, const NormalForm& x, const NormalForm& y) {
  return support(multiply(gp, y, invert(gp, x)));
}

// True if some hyperplanes labelled u and w osculate.
inline bool labels_can_osculate(const GraphProduct& gp, VertexId u, VertexId w) {
  return classify_exact(gp, Hyperplane{u, {}}, Hyperplane{w, {}}) == PairRelation::osculate;
}

inline TechnicalReport verify_technical(const GraphProduct& gp, const ContactSequence& s, const NormalForm& v) {
  const int n = s.length();
  const auto prof = profiles(gp, s, v);
  std::vector<VertexSet> forward(n + 1), backward(n + 1);
  for (int i = 0; i <= n; ++i) {
    forward[i] = separating_labels(gp, s.breakpoints[i], prof.gates[i]);
    backward[i] = separating_labels(gp, s.breakpoints[i + 1], prof.gates[i]);
  }
  const NormalForm& p = s.breakpoints.front();
  const NormalForm& p2 = s.breakpoints.back();
  std::vector<NormalForm> g(n + 1), g2(n + 1);
  for (int i = 0; i <= n; ++i) {
    std::vector<VertexSet> f(forward.begin(), forward.begin() + i + 1);
    g[i] = iterated_hull_gate(gp, p, f, v);
    std::vector<VertexSet> b;
    for (int j = n; j >= i; --j) b.push_back(backward[j]);
    g2[i] = iterated_hull_gate(gp, p2, b, v);
  }
  TechnicalReport out;
  out.gates_meet = g[n] == g2[0];
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j < i; ++j)
      for (VertexId x : forward[i].members())
        for (VertexId y : backward[j].members())
          if (labels_can_osculate(gp, x, y)) out.no_osculation = false;
  for (int i = 1; i <= n; ++i) {
    if (separating_hyperplanes(gp, g[i - 1], g[i]) != separating_hyperplanes(gp, s.breakpoints[i], prof.gates[i]))
      out.separators_match = false;
    if (separating_hyperplanes(gp, g2[i], g2[i - 1]) != separating_hyperplanes(gp, s.breakpoints[i], prof.gates[i - 1]))
      out.separators_match = false;
  }
  return out;
}

}  // namespace qmlab
