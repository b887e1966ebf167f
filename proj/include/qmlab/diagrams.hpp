#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "presentation.hpp"

namespace qmlab {

// Degree-based taxonomy: boundary points have degree 1, crossings (from
// commuting swaps) degree 2 and branch points (from merges inside one
// vertex group) degree 3 within their component.
enum class NodeKind { boundary, crossing, branch };

struct DiagramNode {
  NodeKind kind = NodeKind::boundary;
  int position = -1;  // boundary letter, boundary nodes only
};

struct Component {
  VertexId vertex = 0;
  std::vector<DiagramNode> nodes;
  std::vector<std::pair<int, int>> edges;

  std::vector<int> boundary_positions() const {
    std::vector<int> out;
    for (const auto& n : nodes)
      if (n.kind == NodeKind::boundary) out.push_back(n.position);
    std::sort(out.begin(), out.end());
    return out;
  }
  int degree(int node) const {
    int d = 0;
    for (auto [a, b] : edges) d += (a == node) + (b == node);
    return d;
  }
};

struct Crossing {
  int first = 0, first_node = 0;
  int second = 0, second_node = 0;
};

struct DualDiagram {
  Word boundary;
  std::vector<Component> components;
  std::vector<Crossing> crossings;

  int length() const { return static_cast<int>(boundary.size()); }
  bool cross(int a, int b) const {
    return std::any_of(crossings.begin(), crossings.end(), [&](const Crossing& c) {
      return (c.first == a && c.second == b) || (c.first == b && c.second == a);
    });
  }
  // Component owning each boundary position.
  std::vector<int> owner() const {
    std::vector<int> out(boundary.size(), -1);
    for (std::size_t c = 0; c < components.size(); ++c)
      for (int p : components[c].boundary_positions()) out[p] = static_cast<int>(c);
    return out;
  }
};

namespace detail {

struct DiagramBuilder {
  struct Strand {
    Syllable letter;
    int end;  // open node of its tree
  };
  const GraphProduct& gp;
  std::vector<DiagramNode> nodes;
  std::vector<VertexId> node_vertex;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::pair<int, int>> crossings;
  std::vector<Strand> word;

  int add_node(NodeKind k, VertexId v, int position = -1) {
    nodes.push_back({k, position});
    node_vertex.push_back(v);
    return static_cast<int>(nodes.size()) - 1;
  }

  void extend(Strand& s, NodeKind k) {
    int n = add_node(k, s.letter.vertex);
    edges.emplace_back(s.end, n);
    s.end = n;
  }

  // Moves the strand at j left until it sits just after i.
  void bring_next_to(std::size_t i, std::size_t j) {
    for (std::size_t k = j; k > i + 1; --k) {
      extend(word[k], NodeKind::crossing);
      extend(word[k - 1], NodeKind::crossing);
      crossings.emplace_back(word[k].end, word[k - 1].end);
      std::swap(word[k], word[k - 1]);
    }
  }

  std::optional<std::pair<std::size_t, std::size_t>> find_pair(bool cancelling) const {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = 0; i < word.size(); ++i) {
      const VertexId v = word[i].letter.vertex;
      for (std::size_t j = i + 1; j < word.size(); ++j) {
        const auto& s = word[j].letter;
        if (s.vertex == v) {
          bool ok = !cancelling || gp.group(v).mul(word[i].letter.element, s.element) == 0;
          if (ok && (!best || j - i < best->second - best->first)) best = std::pair{i, j};
          break;
        }
        if (!gp.commute(s.vertex, v)) break;
      }
    }
    return best;
  }

  bool step() {
    if (auto p = find_pair(true)) {
      auto [i, j] = *p;
      bring_next_to(i, j);
      edges.emplace_back(word[i].end, word[i + 1].end);
      word.erase(word.begin() + static_cast<std::ptrdiff_t>(i), word.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      return true;
    }
    if (auto p = find_pair(false)) {
      auto [i, j] = *p;
      bring_next_to(i, j);
      const VertexId v = word[i].letter.vertex;
      int b = add_node(NodeKind::branch, v);
      edges.emplace_back(word[i].end, b);
      edges.emplace_back(word[i + 1].end, b);
      word[i] = {{v, gp.group(v).mul(word[i].letter.element, word[i + 1].letter.element)}, b};
      word.erase(word.begin() + static_cast<std::ptrdiff_t>(i) + 1);
      return true;
    }
    return false;
  }
};

}  // namespace detail

// Reduces w to the empty word, cancelling inverse pairs before merging, and
// records the dual picture of every step.
inline DualDiagram build_dual_diagram(const GraphProduct& gp, std::span<const Syllable> w) {
  check_word(gp, w);
  if (!normal_form(gp, w).empty()) throw HypothesisError("word is not the identity");
  detail::DiagramBuilder b{gp, {}, {}, {}, {}, {}};
  for (std::size_t i = 0; i < w.size(); ++i)
    b.word.push_back({w[i], b.add_node(NodeKind::boundary, w[i].vertex, static_cast<int>(i))});
  while (!b.word.empty())
    if (!b.step()) throw HypothesisError("word does not reduce to the identity");

  const int n = static_cast<int>(b.nodes.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [x, y] : b.edges) parent[find(x)] = find(y);

  DualDiagram d;
  d.boundary.assign(w.begin(), w.end());
  std::vector<int> comp_of_root(n, -1), comp(n), local(n);
  for (int x = 0; x < n; ++x) {  // boundary nodes come first, so components follow boundary order
    int r = find(x);
    if (comp_of_root[r] < 0) {
      comp_of_root[r] = static_cast<int>(d.components.size());
      d.components.push_back({b.node_vertex[x], {}, {}});
    }
    comp[x] = comp_of_root[r];
    local[x] = static_cast<int>(d.components[comp[x]].nodes.size());
    d.components[comp[x]].nodes.push_back(b.nodes[x]);
  }
  for (auto [x, y] : b.edges) d.components[comp[x]].edges.emplace_back(local[x], local[y]);
  for (auto [x, y] : b.crossings) d.crossings.push_back({comp[x], local[x], comp[y], local[y]});
  return d;
}

struct DiagramReport {
  bool pass = true;
  std::string witness;
};

namespace detail {

// Nodes on the tree path between two nodes of a component.
inline std::vector<int> tree_path(const Component& c, int from, int to) {
  const int n = static_cast<int>(c.nodes.size());
  std::vector<std::vector<int>> adj(n);
  for (auto [a, b] : c.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<int> prev(n, -2), stack{from};
  prev[from] = -1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int y : adj[x])
      if (prev[y] == -2) {
        prev[y] = x;
        stack.push_back(y);
      }
  }
  std::vector<int> out;
  if (prev[to] == -2) return out;
  for (int x = to; x >= 0; x = prev[x]) out.push_back(x);
  return out;
}

// Chords (a, b) and (c, d) of a circle, all endpoints distinct.
inline bool interleave(int a, int b, int c, int d) {
  if (a > b) std::swap(a, b);
  return (a < c && c < b) != (a < d && d < b);
}

}  // namespace detail

// Degrees, tree shape, identity products per component, and crossing parity
// along every pair of leaf-to-leaf paths.
inline DiagramReport check_diagram(const GraphProduct& gp, const DualDiagram& d) {
  DiagramReport r;
  auto fail = [&](std::string why) {
    if (r.pass) r.witness = std::move(why);
    r.pass = false;
  };
  std::vector<char> seen(d.boundary.size(), 0);
  for (std::size_t ci = 0; ci < d.components.size(); ++ci) {
    const auto& c = d.components[ci];
    const std::string tag = "component " + std::to_string(ci);
    for (std::size_t x = 0; x < c.nodes.size(); ++x) {
      const int want = c.nodes[x].kind == NodeKind::boundary ? 1 : c.nodes[x].kind == NodeKind::crossing ? 2 : 3;
      if (c.degree(static_cast<int>(x)) != want) fail(tag + ": node " + std::to_string(x) + " has wrong degree");
    }
    bool tree = c.edges.size() + 1 == c.nodes.size();
    for (std::size_t x = 1; x < c.nodes.size() && tree; ++x) tree = !detail::tree_path(c, 0, static_cast<int>(x)).empty();
    if (!tree) fail(tag + " is not a tree");
    int product = 0;
    for (int p : c.boundary_positions()) {
      if (p < 0 || p >= d.length() || seen[p]++) fail(tag + ": bad boundary position");
      else if (d.boundary[p].vertex != c.vertex) fail(tag + ": letter of another vertex");
      else product = gp.group(c.vertex).mul(product, d.boundary[p].element);
    }
    if (product != 0) fail(tag + ": boundary letters do not multiply to 1");
  }
  for (std::size_t p = 0; p < seen.size(); ++p)
    if (!seen[p]) fail("boundary position " + std::to_string(p) + " has no component");
  for (const auto& x : d.crossings) {
    if (x.first == x.second || !gp.commute(d.components[x.first].vertex, d.components[x.second].vertex))
      fail("crossing between non-commuting components");
    if (d.components[x.first].nodes[x.first_node].kind != NodeKind::crossing ||
        d.components[x.second].nodes[x.second_node].kind != NodeKind::crossing)
      fail("crossing recorded at a non-crossing node");
  }
  if (!r.pass) return r;

  auto leaves = [](const Component& c) {
    std::vector<int> out;
    for (std::size_t x = 0; x < c.nodes.size(); ++x)
      if (c.nodes[x].kind == NodeKind::boundary) out.push_back(static_cast<int>(x));
    return out;
  };
  const int m = static_cast<int>(d.components.size());
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      const auto& ca = d.components[a];
      const auto& cb = d.components[b];
      const auto la = leaves(ca), lb = leaves(cb);
      for (std::size_t i = 0; i < la.size(); ++i)
        for (std::size_t j = i + 1; j < la.size(); ++j) {
          auto pa = detail::tree_path(ca, la[i], la[j]);
          std::sort(pa.begin(), pa.end());
          for (std::size_t k = 0; k < lb.size(); ++k)
            for (std::size_t l = k + 1; l < lb.size(); ++l) {
              auto pb = detail::tree_path(cb, lb[k], lb[l]);
              std::sort(pb.begin(), pb.end());
              int count = 0;
              for (const auto& x : d.crossings) {
                int na = -1, nb = -1;
                if (x.first == a && x.second == b) na = x.first_node, nb = x.second_node;
                else if (x.first == b && x.second == a) na = x.second_node, nb = x.first_node;
                else continue;
                count += std::binary_search(pa.begin(), pa.end(), na) && std::binary_search(pb.begin(), pb.end(), nb);
              }
              const bool inter = detail::interleave(ca.nodes[la[i]].position, ca.nodes[la[j]].position,
                                                    cb.nodes[lb[k]].position, cb.nodes[lb[l]].position);
              if ((count % 2 == 1) != inter)
                fail("components " + std::to_string(a) + " and " + std::to_string(b) + " break crossing parity");
            }
        }
    }
  return r;
}

enum class Flavour { dot, hat };

struct PieceLabel {
  VertexId vertex = 0;
  Flavour flavour = Flavour::dot;
  auto operator<=>(const PieceLabel&) const = default;
  std::string str(const DefGraph& g) const { return (flavour == Flavour::dot ? "dot " : "hat ") + g.name(vertex); }
};

// What the reduction conditions need to know about a piece.
struct PieceShape {
  PieceLabel label;
  int length = 0;
  bool small = false;
};

enum class RedCondition { no_trivial = 1, small_is_dot, hat_then_dots, dots_between_dots, same_label, dot_beside_hat,
                          hat_hat_dot, dot_hat_dot, hat_dot_hat };

struct RedViolation {
  RedCondition condition;
  int first = 0;  // piece index where the offending run starts
  int span = 1;   // run length
  bool mirrored = false;
};

// Every site where one of the nine reduction conditions fails, cyclically.
inline std::vector<RedViolation> red_violations(const DefGraph& g, std::span<const PieceShape> p,
                                                bool with_mirrors = false) {
  std::vector<RedViolation> out;
  const int k = static_cast<int>(p.size());
  auto at = [&](int i) -> const PieceShape& { return p[((i % k) + k) % k]; };
  auto is = [](const PieceShape& s, Flavour f) { return s.label.flavour == f; };
  for (int i = 0; i < k; ++i) {
    if (p[i].length == 0) out.push_back({RedCondition::no_trivial, i});
    else if (p[i].small && is(p[i], Flavour::hat)) out.push_back({RedCondition::small_is_dot, i});
  }
  for (int i = 0; i < k; ++i)
    for (int m = 2; m <= k; ++m) {
      // p_i .. p_{i+m-1}; every piece after the first is a dot piece.
      bool dots = true;
      for (int j = 1; j < m && dots; ++j) dots = is(at(i + j), Flavour::dot);
      if (!dots) break;
      const auto& first = at(i);
      const VertexId v = at(i + m - 1).label.vertex;
      VertexSet middle;
      for (int j = 1; j < m - 1; ++j) middle.insert(at(i + j).label.vertex);
      const VertexSet link = g.link(v);
      if (is(first, Flavour::hat) && (middle | VertexSet::single(first.label.vertex)).subset_of(link))
        out.push_back({RedCondition::hat_then_dots, i, m});
      if (is(first, Flavour::dot) && first.label.vertex == v && middle.subset_of(link))
        out.push_back({RedCondition::dots_between_dots, i, m});
    }
  if (with_mirrors)
    for (int i = 0; i < k; ++i)
      for (int m = 2; m <= k; ++m) {
        // dot-v, dots, then a hat piece at the end.
        bool dots = true;
        for (int j = 0; j < m - 1 && dots; ++j) dots = is(at(i + j), Flavour::dot);
        if (!dots) break;
        const auto& last = at(i + m - 1);
        if (!is(last, Flavour::hat)) continue;
        const VertexId v = at(i).label.vertex;
        VertexSet others = VertexSet::single(last.label.vertex);
        for (int j = 1; j < m - 1; ++j) others.insert(at(i + j).label.vertex);
        if (others.subset_of(g.link(v))) out.push_back({RedCondition::hat_then_dots, i, m, true});
      }
  if (k >= 2)
    for (int i = 0; i < k; ++i) {
      const auto& a = p[i];
      const auto& b = at(i + 1);
      if (a.label == b.label) out.push_back({RedCondition::same_label, i, 2});
      if (is(a, Flavour::hat) && is(b, Flavour::dot) && g.adjacent(a.label.vertex, b.label.vertex))
        out.push_back({RedCondition::dot_beside_hat, i, 2});
      if (is(a, Flavour::dot) && is(b, Flavour::hat) && g.adjacent(a.label.vertex, b.label.vertex))
        out.push_back({RedCondition::dot_beside_hat, i, 2, true});
    }
  if (k >= 3)
    for (int i = 0; i < k; ++i) {
      const auto& a = p[i];
      const auto& b = at(i + 1);
      const auto& c = at(i + 2);
      const VertexId v = b.label.vertex;
      const PieceLabel dot_v{v, Flavour::dot}, hat_v{v, Flavour::hat};
      auto hat_of_link = [&](const PieceShape& s) { return is(s, Flavour::hat) && g.adjacent(s.label.vertex, v); };
      if (b.label == hat_v) {
        if (hat_of_link(a) && c.label == dot_v) out.push_back({RedCondition::hat_hat_dot, i, 3});
        if (a.label == dot_v && hat_of_link(c)) out.push_back({RedCondition::hat_hat_dot, i, 3, true});
        if (a.label == dot_v && c.label == dot_v) out.push_back({RedCondition::dot_hat_dot, i, 3});
      }
      if (b.label == dot_v && a.label == hat_v && c.label == hat_v) out.push_back({RedCondition::hat_dot_hat, i, 3});
    }
  return out;
}

inline int roman(RedCondition c) { return static_cast<int>(c); }

inline std::string to_string(RedCondition c) {
  static const char* names[] = {"i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix"};
  return names[roman(c) - 1];
}

struct VkPiece {
  int start = 0;
  int size = 0;
  PieceLabel label;
};

// Cyclic subdivision of a boundary word into labelled geodesic subwords.
struct Subdivision {
  int length = 0;
  std::vector<VkPiece> pieces;

  int piece_of(int position) const {
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      int off = ((position - pieces[i].start) % length + length) % length;
      if (off < pieces[i].size) return static_cast<int>(i);
    }
    return -1;
  }
  int count() const { return static_cast<int>(pieces.size()); }
};

// Labels allowed for a subword: dot-v for a single v letter, hat-v when the
// support lies in link(v). Smallest candidate first, dot before hat.
inline std::vector<PieceLabel> piece_labels(const GraphProduct& gp, std::span<const Syllable> w) {
  std::vector<PieceLabel> out;
  VertexSet supp;
  for (const auto& s : w) supp.insert(s.vertex);
  if (w.size() == 1) out.push_back({w[0].vertex, Flavour::dot});
  for (VertexId v = 0; v < gp.vertex_count(); ++v)
    if (supp.subset_of(gp.graph.link(v))) out.push_back({v, Flavour::hat});
  return out;
}

inline bool is_geodesic(const GraphProduct& gp, std::span<const Syllable> w) {
  return syllable_length(normal_form(gp, w)) == static_cast<int>(w.size());
}

inline std::vector<Syllable> piece_word(std::span<const Syllable> boundary, const VkPiece& p) {
  std::vector<Syllable> out;
  const int n = static_cast<int>(boundary.size());
  for (int i = 0; i < p.size; ++i) out.push_back(boundary[(p.start + i) % n]);
  return out;
}

inline void validate_subdivision(const GraphProduct& gp, std::span<const Syllable> boundary, const Subdivision& s) {
  if (s.length != static_cast<int>(boundary.size())) throw InputError("subdivision length mismatch");
  int covered = 0;
  for (std::size_t i = 0; i < s.pieces.size(); ++i) {
    const auto& p = s.pieces[i];
    const auto& next = s.pieces[(i + 1) % s.pieces.size()];
    if (s.length && (p.start + p.size) % s.length != next.start) throw InputError("pieces are not contiguous");
    covered += p.size;
    auto w = piece_word(boundary, p);
    if (!is_geodesic(gp, w)) throw InputError("piece " + std::to_string(i) + " is not geodesic");
    auto labels = piece_labels(gp, w);
    if (!w.empty() && std::find(labels.begin(), labels.end(), p.label) == labels.end())
      throw InputError("piece " + std::to_string(i) + " violates its label");
  }
  if (covered != s.length) throw InputError("pieces do not cover the boundary");
}

// Greedy cut from position 0: extend each piece while it stays geodesic and
// some label fits.
inline Subdivision subdivide(const GraphProduct& gp, std::span<const Syllable> boundary) {
  Subdivision s;
  s.length = static_cast<int>(boundary.size());
  for (int start = 0; start < s.length;) {
    int size = 1;
    while (start + size < s.length) {
      std::span<const Syllable> next(boundary.begin() + start, boundary.begin() + start + size + 1);
      if (!is_geodesic(gp, next) || piece_labels(gp, next).empty()) break;
      ++size;
    }
    auto labels = piece_labels(gp, boundary.subspan(start, size));
    if (labels.empty()) throw HypothesisError("letter fits no piece label");
    s.pieces.push_back({start, size, labels.front()});
    start += size;
  }
  return s;
}

struct PolygonalVkd {
  DualDiagram diagram;
  Subdivision subdivision;
};

inline PolygonalVkd polygonal_diagram(const GraphProduct& gp, std::span<const Syllable> w) {
  PolygonalVkd out{build_dual_diagram(gp, w), subdivide(gp, w)};
  return out;
}

enum class ComponentClass { trivial, minimal, almost_minimal, other };

inline const char* to_string(ComponentClass c) {
  switch (c) {
    case ComponentClass::trivial: return "trivial";
    case ComponentClass::minimal: return "minimal";
    case ComponentClass::almost_minimal: return "almost minimal";
    case ComponentClass::other: return "other";
  }
  return "?";
}

// A component with a supporting interval [first, last], read clockwise.
struct OrientedComponent {
  int component = 0;
  int first = 0;
  int last = 0;
  ComponentClass kind = ComponentClass::other;
};

namespace detail {

inline bool strictly_within(int n, const OrientedComponent& outer, const OrientedComponent& inner) {
  const int off_q = ((outer.last - outer.first) % n + n) % n;
  const int off_a = ((inner.first - outer.first) % n + n) % n;
  const int off_b = ((inner.last - outer.first) % n + n) % n;
  return off_a <= off_b && off_b <= off_q && (inner.first != outer.first || inner.last != outer.last);
}

}  // namespace detail

inline std::vector<OrientedComponent> classify_components(const DualDiagram& d, const Subdivision& s) {
  std::vector<OrientedComponent> out;
  const int n = d.length();
  const int k = s.count();
  for (std::size_t c = 0; c < d.components.size(); ++c) {
    auto pos = d.components[c].boundary_positions();
    const int m = static_cast<int>(pos.size());
    if (m < 2) continue;
    for (int i = 0; i < m; ++i) out.push_back({static_cast<int>(c), pos[(i + 1) % m], pos[i], ComponentClass::other});
  }
  std::vector<char> trivial(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const int g = s.piece_of(out[i].first), h = s.piece_of(out[i].last);
    trivial[i] = k >= 2 && h == (g + 1) % k;
  }
  auto encloses_any = [&](std::size_t i, auto&& pred) {
    for (std::size_t j = 0; j < out.size(); ++j)
      if (out[j].component != out[i].component && detail::strictly_within(n, out[i], out[j]) && pred(j)) return true;
    return false;
  };
  std::vector<char> minimal(out.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    minimal[i] = !trivial[i] && !encloses_any(i, [&](std::size_t j) { return !trivial[j]; });
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (trivial[i]) out[i].kind = ComponentClass::trivial;
    else if (minimal[i]) out[i].kind = ComponentClass::minimal;
    else if (!encloses_any(i, [&](std::size_t j) { return !trivial[j] && !minimal[j]; }))
      out[i].kind = ComponentClass::almost_minimal;
  }
  return out;
}

struct CheckReport {
  bool applicable = true;  // false: hypothesis on the defining graph unmet, nothing checked
  bool pass = true;
  std::size_t checked = 0;
  std::string witness;
};

namespace detail {

// Components with a boundary point in each piece, in clockwise order.
inline std::vector<std::vector<int>> supported(const DualDiagram& d, const Subdivision& s) {
  std::vector<std::vector<int>> out(s.pieces.size());
  const auto own = d.owner();
  for (std::size_t i = 0; i < s.pieces.size(); ++i)
    for (int j = 0; j < s.pieces[i].size; ++j) out[i].push_back(own[(s.pieces[i].start + j) % d.length()]);
  return out;
}

}  // namespace detail

inline CheckReport check_nointer(const GraphProduct& gp, const PolygonalVkd& pv) {
  CheckReport r;
  const auto girth = gp.graph.girth();
  if (girth && *girth < 4) {
    r.applicable = false;
    return r;
  }
  const auto sup = detail::supported(pv.diagram, pv.subdivision);
  for (std::size_t g = 0; g < sup.size(); ++g)
    for (std::size_t i = 0; i < sup[g].size(); ++i)
      for (std::size_t j = i + 1; j < sup[g].size(); ++j) {
        ++r.checked;
        if (sup[g][i] != sup[g][j] && pv.diagram.cross(sup[g][i], sup[g][j]) && r.pass) {
          r.pass = false;
          r.witness = "components " + std::to_string(sup[g][i]) + " and " + std::to_string(sup[g][j]) +
                      " cross and share piece " + std::to_string(g);
        }
      }
  return r;
}

inline CheckReport check_interhat(const GraphProduct& gp, const PolygonalVkd& pv) {
  CheckReport r;
  const auto girth = gp.graph.girth();
  if (girth && *girth < 5) {
    r.applicable = false;
    return r;
  }
  const auto& d = pv.diagram;
  const auto sup = detail::supported(d, pv.subdivision);
  const int m = static_cast<int>(d.components.size());
  for (std::size_t g = 0; g < sup.size(); ++g)
    for (std::size_t i = 0; i < sup[g].size(); ++i)
      for (std::size_t j = i + 1; j < sup[g].size(); ++j) {
        const int c1 = sup[g][i], c2 = sup[g][j];
        if (c1 == c2) continue;
        for (int c = 0; c < m; ++c) {
          const bool meets1 = c == c1 || d.cross(c, c1), meets2 = c == c2 || d.cross(c, c2);
          if (!meets1 || !meets2) continue;
          ++r.checked;
          const PieceLabel want{d.components[c].vertex, Flavour::hat};
          const bool ok = pv.subdivision.pieces[g].label == want && c != c1 && c != c2;
          if (!ok && r.pass) {
            r.pass = false;
            r.witness = "component " + std::to_string(c) + " meets components " + std::to_string(c1) + " and " +
                        std::to_string(c2) + " at piece " + std::to_string(g);
          }
        }
      }
  return r;
}

// Pieces are geodesic, so length is the letter count.
inline std::vector<PieceShape> piece_shapes(const Subdivision& s) {
  std::vector<PieceShape> out;
  for (const auto& p : s.pieces) out.push_back({p.label, p.size, p.size == 1});
  return out;
}

struct MinimalDiagramReport {
  std::optional<RedViolation> precondition;  // set: diagram is not reduced, no claim made
  bool pass = true;
  std::string witness;
};

// For a diagram meeting all nine reduction conditions over a girth >= 6
// graph: trivial and minimal components sit only on large pieces and come
// first or last there, nothing is almost minimal, and no pieces remain.
inline MinimalDiagramReport check_minimal_diagram(const GraphProduct& gp, const PolygonalVkd& pv) {
  MinimalDiagramReport r;
  const auto shapes = piece_shapes(pv.subdivision);
  auto v = red_violations(gp.graph, shapes);
  if (!v.empty()) {
    r.precondition = v.front();
    return r;
  }
  const auto girth = gp.graph.girth();
  if (girth && *girth < 6) throw HypothesisError("defining graph has girth below 6");
  auto fail = [&](std::string why) {
    if (r.pass) r.witness = std::move(why);
    r.pass = false;
  };
  const auto& s = pv.subdivision;
  const auto sup = detail::supported(pv.diagram, s);
  for (const auto& oc : classify_components(pv.diagram, s)) {
    const std::string tag = "component " + std::to_string(oc.component);
    if (oc.kind == ComponentClass::almost_minimal) fail(tag + " is almost minimal");
    if (oc.kind != ComponentClass::trivial && oc.kind != ComponentClass::minimal) continue;
    for (std::size_t g = 0; g < sup.size(); ++g) {
      auto it = std::find(sup[g].begin(), sup[g].end(), oc.component);
      if (it == sup[g].end()) continue;
      if (s.pieces[g].size < 2) fail(tag + " is supported at a small piece");
      const bool starts_last = s.piece_of(oc.first) == static_cast<int>(g) && sup[g].back() == oc.component;
      const bool ends_first = s.piece_of(oc.last) == static_cast<int>(g) && sup[g].front() == oc.component;
      if (!starts_last && !ends_first) fail(tag + " is neither last nor first at piece " + std::to_string(g));
    }
  }
  if (s.count() > 0) fail("diagram still has " + std::to_string(s.count()) + " pieces");
  return r;
}

}  // namespace qmlab
