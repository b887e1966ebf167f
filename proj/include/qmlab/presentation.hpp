#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

namespace qmlab {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input (presentations, words, tables).
struct InputError : Error {
  using Error::Error;
};

// A precondition of a mathematical operation does not hold.
struct HypothesisError : Error {
  using Error::Error;
};

struct BudgetError : Error {
  BudgetError(const std::string& what, int at_radius) : Error(what), radius(at_radius) {}
  int radius;
};

using VertexId = int;

// Set of defining-graph vertices; graphs are capped at 64 vertices.
class VertexSet {
 public:
  constexpr VertexSet() = default;
  constexpr explicit VertexSet(std::uint64_t bits) : bits_(bits) {}
  static constexpr VertexSet single(VertexId v) { return VertexSet(std::uint64_t{1} << v); }
  static constexpr VertexSet all(int n) {
    return VertexSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }

  constexpr bool contains(VertexId v) const { return (bits_ >> v) & 1u; }
  constexpr void insert(VertexId v) { bits_ |= std::uint64_t{1} << v; }
  constexpr void erase(VertexId v) { bits_ &= ~(std::uint64_t{1} << v); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool subset_of(VertexSet o) const { return (bits_ & ~o.bits_) == 0; }
  constexpr std::uint64_t bits() const { return bits_; }
  constexpr VertexSet operator|(VertexSet o) const { return VertexSet(bits_ | o.bits_); }
  constexpr VertexSet operator&(VertexSet o) const { return VertexSet(bits_ & o.bits_); }
  constexpr auto operator<=>(const VertexSet&) const = default;

  std::vector<VertexId> members() const {
    std::vector<VertexId> out;
    for (std::uint64_t b = bits_; b; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }

 private:
  std::uint64_t bits_ = 0;
};

class DefGraph {
 public:
  DefGraph() = default;
  DefGraph(std::vector<std::string> names, const std::vector<std::pair<VertexId, VertexId>>& edges)
      : names_(std::move(names)), link_(names_.size()) {
    const int n = size();
    if (n > 64) throw InputError("defining graph has more than 64 vertices");
    for (auto [a, b] : edges) {
      if (a < 0 || b < 0 || a >= n || b >= n) throw InputError("edge endpoint out of range");
      if (a == b) throw InputError("loop at vertex " + names_[a]);
      if (link_[a].contains(b)) throw InputError("duplicate edge " + names_[a] + "-" + names_[b]);
      link_[a].insert(b);
      link_[b].insert(a);
    }
    girth_ = compute_girth();
    connected_ = compute_connected(false);
    complement_connected_ = compute_connected(true);
  }

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(VertexId v) const { return names_[v]; }
  const std::vector<std::string>& names() const { return names_; }
  bool adjacent(VertexId a, VertexId b) const { return link_[a].contains(b); }
  VertexSet link(VertexId v) const { return link_[v]; }
  VertexSet star(VertexId v) const { return link_[v] | VertexSet::single(v); }
  int degree(VertexId v) const { return link_[v].size(); }
  int max_degree() const {
    int d = 0;
    for (VertexId v = 0; v < size(); ++v) d = std::max(d, degree(v));
    return d;
  }
  // Length of a shortest cycle; nullopt for forests.
  std::optional<int> girth() const { return girth_; }
  bool connected() const { return connected_; }
  bool complement_connected() const { return complement_connected_; }
  bool complete() const {
    for (VertexId v = 0; v < size(); ++v)
      if (degree(v) != size() - 1) return false;
    return true;
  }

  std::vector<std::pair<VertexId, VertexId>> edges() const {
    std::vector<std::pair<VertexId, VertexId>> out;
    for (VertexId a = 0; a < size(); ++a)
      for (VertexId b : link_[a].members())
        if (a < b) out.emplace_back(a, b);
    return out;
  }

  std::optional<VertexId> find(std::string_view name) const {
    for (VertexId v = 0; v < size(); ++v)
      if (names_[v] == name) return v;
    return std::nullopt;
  }

 private:
  std::optional<int> compute_girth() const {
    const int n = size();
    std::optional<int> best;
    for (VertexId s = 0; s < n; ++s) {
      std::vector<int> dist(n, -1), parent(n, -1);
      std::deque<VertexId> queue{s};
      dist[s] = 0;
      while (!queue.empty()) {
        VertexId x = queue.front();
        queue.pop_front();
        for (VertexId y : link_[x].members()) {
          if (dist[y] < 0) {
            dist[y] = dist[x] + 1;
            parent[y] = x;
            queue.push_back(y);
          } else if (parent[x] != y) {
            int len = dist[x] + dist[y] + 1;
            if (!best || len < *best) best = len;
          }
        }
      }
    }
    return best;
  }

  bool compute_connected(bool complement) const {
    const int n = size();
    if (n <= 1) return true;
    VertexSet seen = VertexSet::single(0);
    std::vector<VertexId> stack{0};
    while (!stack.empty()) {
      VertexId x = stack.back();
      stack.pop_back();
      VertexSet next = complement ? VertexSet(VertexSet::all(n).bits() & ~star(x).bits()) : link_[x];
      for (VertexId y : next.members())
        if (!seen.contains(y)) {
          seen.insert(y);
          stack.push_back(y);
        }
    }
    return seen.size() == n;
  }

  std::vector<std::string> names_;
  std::vector<VertexSet> link_;
  std::optional<int> girth_;
  bool connected_ = true;
  bool complement_connected_ = true;
};

// Finite group on 0..order-1 with 0 the identity.
class VertexGroup {
 public:
  static VertexGroup cyclic(int n) {
    if (n < 1) throw InputError("cyclic group order must be positive");
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) table[a][b] = (a + b) % n;
    return from_table(table);
  }

  static VertexGroup from_table(const std::vector<std::vector<int>>& table) {
    const int n = static_cast<int>(table.size());
    if (n == 0) throw InputError("empty multiplication table");
    VertexGroup g;
    g.order_ = n;
    g.table_.resize(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a) {
      if (static_cast<int>(table[a].size()) != n) throw InputError("multiplication table is not square");
      for (int b = 0; b < n; ++b) {
        if (table[a][b] < 0 || table[a][b] >= n) throw InputError("table entry out of range");
        g.table_[a * n + b] = table[a][b];
      }
    }
    for (int a = 0; a < n; ++a)
      if (g.mul(0, a) != a || g.mul(a, 0) != a) throw InputError("element 0 is not a two-sided identity");
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
            throw InputError("multiplication table is not associative");
    g.inverse_.assign(n, -1);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (g.mul(a, b) == 0 && g.mul(b, a) == 0) g.inverse_[a] = b;
    for (int a = 0; a < n; ++a)
      if (g.inverse_[a] < 0) throw InputError("element without two-sided inverse");
    return g;
  }

  int order() const { return order_; }
  int mul(int a, int b) const { return table_[a * order_ + b]; }
  int inv(int a) const { return inverse_[a]; }

 private:
  int order_ = 0;
  std::vector<int> table_;
  std::vector<int> inverse_;
};

struct GraphProduct {
  GraphProduct() = default;
  GraphProduct(DefGraph g, std::vector<VertexGroup> gs) : graph(std::move(g)), groups(std::move(gs)) {
    if (static_cast<int>(groups.size()) != graph.size()) throw InputError("one group per vertex required");
    for (VertexId v = 0; v < graph.size(); ++v)
      if (groups[v].order() < 2) throw InputError("vertex group of " + graph.name(v) + " is trivial");
  }

  int vertex_count() const { return graph.size(); }
  bool commute(VertexId a, VertexId b) const { return graph.adjacent(a, b); }
  const VertexGroup& group(VertexId v) const { return groups[v]; }

  DefGraph graph;
  std::vector<VertexGroup> groups;
};

struct Syllable {
  VertexId vertex = 0;
  int element = 0;
  auto operator<=>(const Syllable&) const = default;
};

using Word = std::vector<Syllable>;

class NormalForm;
NormalForm normal_form(const GraphProduct& gp, std::span<const Syllable> w);

namespace detail {

// Right-multiplies a reduced word by one syllable, keeping it reduced.
inline void push_reduced(const GraphProduct& gp, std::vector<Syllable>& w, Syllable s) {
  for (std::size_t i = w.size(); i-- > 0;) {
    if (w[i].vertex == s.vertex) {
      int e = gp.group(s.vertex).mul(w[i].element, s.element);
      if (e == 0)
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(i));
      else
        w[i].element = e;
      return;
    }
    if (!gp.commute(w[i].vertex, s.vertex)) break;
  }
  w.push_back(s);
}

// Lexicographically least shuffle of a reduced word: repeatedly emit the
// smallest syllable that commutes with every remaining syllable before it.
inline std::vector<Syllable> canonical_order(const GraphProduct& gp, const std::vector<Syllable>& w) {
  const std::size_t n = w.size();
  std::vector<Syllable> out;
  out.reserve(n);
  std::vector<char> used(n, 0);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t best = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (used[i]) continue;
      bool front = true;
      for (std::size_t j = 0; j < i && front; ++j)
        if (!used[j] && !gp.commute(w[j].vertex, w[i].vertex)) front = false;
      if (front && (best == n || w[i] < w[best])) best = i;
    }
    used[best] = 1;
    out.push_back(w[best]);
  }
  return out;
}

}  // namespace detail

// Canonical reduced word of a group element.
class NormalForm {
 public:
  NormalForm() = default;

  std::span<const Syllable> syllables() const { return syl_; }
  std::size_t size() const { return syl_.size(); }
  bool empty() const { return syl_.empty(); }
  const Syllable& operator[](std::size_t i) const { return syl_[i]; }
  auto begin() const { return syl_.begin(); }
  auto end() const { return syl_.end(); }

  friend bool operator==(const NormalForm&, const NormalForm&) = default;
  // Shortlex order: length first, then syllables.
  friend std::strong_ordering operator<=>(const NormalForm& a, const NormalForm& b) {
    if (auto c = a.syl_.size() <=> b.syl_.size(); c != 0) return c;
    return std::lexicographical_compare_three_way(a.syl_.begin(), a.syl_.end(), b.syl_.begin(), b.syl_.end());
  }

  std::size_t hash() const {
    std::size_t h = 1469598103934665603ull;
    for (const auto& s : syl_) {
      h ^= static_cast<std::size_t>(s.vertex) * 1315423911u + static_cast<std::size_t>(s.element);
      h *= 1099511628211ull;
    }
    return h;
  }

  // Trusted construction from an already reduced word.
  static NormalForm from_reduced(const GraphProduct& gp, const std::vector<Syllable>& reduced) {
    NormalForm nf;
    nf.syl_ = detail::canonical_order(gp, reduced);
    return nf;
  }

 private:
  std::vector<Syllable> syl_;
};

struct NormalFormHash {
  std::size_t operator()(const NormalForm& x) const { return x.hash(); }
};

inline void check_word(const GraphProduct& gp, std::span<const Syllable> w) {
  for (const auto& s : w) {
    if (s.vertex < 0 || s.vertex >= gp.vertex_count()) throw InputError("unknown vertex id in word");
    if (s.element <= 0 || s.element >= gp.group(s.vertex).order()) throw InputError("syllable element out of range");
  }
}

inline NormalForm normal_form(const GraphProduct& gp, std::span<const Syllable> w) {
  check_word(gp, w);
  std::vector<Syllable> reduced;
  reduced.reserve(w.size());
  for (const auto& s : w) detail::push_reduced(gp, reduced, s);
  return NormalForm::from_reduced(gp, reduced);
}

inline NormalForm multiply(const GraphProduct& gp, const NormalForm& x, const NormalForm& y) {
  std::vector<Syllable> reduced(x.begin(), x.end());
  for (const auto& s : y) detail::push_reduced(gp, reduced, s);
  return NormalForm::from_reduced(gp, reduced);
}

inline NormalForm multiply(const GraphProduct& gp, Syllable s, const NormalForm& x) {
  std::vector<Syllable> reduced{s};
  for (const auto& t : x) detail::push_reduced(gp, reduced, t);
  return NormalForm::from_reduced(gp, reduced);
}

inline NormalForm invert(const GraphProduct& gp, const NormalForm& x) {
  std::vector<Syllable> r;
  r.reserve(x.size());
  for (auto it = x.syllables().rbegin(); it != x.syllables().rend(); ++it)
    r.push_back({it->vertex, gp.group(it->vertex).inv(it->element)});
  return NormalForm::from_reduced(gp, r);
}

inline NormalForm power(const GraphProduct& gp, const NormalForm& x, int n) {
  NormalForm base = n < 0 ? invert(gp, x) : x;
  NormalForm out;
  for (int i = 0; i < std::abs(n); ++i) out = multiply(gp, out, base);
  return out;
}

inline VertexSet support(const NormalForm& x) {
  VertexSet s;
  for (const auto& y : x) s.insert(y.vertex);
  return s;
}

inline int syllable_length(const NormalForm& x) { return static_cast<int>(x.size()); }

// d(p, q) in the Cayley graph with edges g -- s g.
inline int distance(const GraphProduct& gp, const NormalForm& p, const NormalForm& q) {
  return syllable_length(multiply(gp, q, invert(gp, p)));
}

// Image under the retraction onto G_v.
inline int project(const GraphProduct& gp, VertexId v, std::span<const Syllable> w) {
  int e = 0;
  for (const auto& s : w)
    if (s.vertex == v) e = gp.group(v).mul(e, s.element);
  return e;
}

struct StripResult {
  NormalForm prefix;  // element of the parabolic subgroup on A
  NormalForm rep;     // minimal representative of the right coset
};

// Splits g = prefix * rep with prefix in the parabolic subgroup on A and rep
// the shortest element of its right coset.
inline StripResult parabolic_strip(const GraphProduct& gp, VertexSet a, const NormalForm& g) {
  const std::size_t n = g.size();
  std::vector<char> gone(n, 0);
  std::vector<Syllable> prefix;
  for (bool progress = true; progress;) {
    progress = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (gone[i] || !a.contains(g[i].vertex)) continue;
      bool front = true;
      for (std::size_t j = 0; j < i && front; ++j)
        if (!gone[j] && !gp.commute(g[j].vertex, g[i].vertex)) front = false;
      if (!front) continue;
      gone[i] = 1;
      prefix.push_back(g[i]);
      progress = true;
    }
  }
  std::vector<Syllable> rest;
  for (std::size_t i = 0; i < n; ++i)
    if (!gone[i]) rest.push_back(g[i]);
  return {NormalForm::from_reduced(gp, prefix), NormalForm::from_reduced(gp, rest)};
}

// Minimal l with g a product of l elements of star-parabolic subgroups.
inline int star_length(const GraphProduct& gp, const NormalForm& g) {
  if (g.empty()) return 0;
  std::unordered_set<NormalForm, NormalFormHash> seen{g};
  std::vector<NormalForm> frontier{g};
  for (int depth = 1;; ++depth) {
    std::vector<NormalForm> next;
    for (const auto& r : frontier)
      for (VertexId v = 0; v < gp.vertex_count(); ++v) {
        NormalForm rest = parabolic_strip(gp, gp.graph.star(v), r).rep;
        if (rest.empty()) return depth;
        if (seen.insert(rest).second) next.push_back(std::move(rest));
      }
    frontier = std::move(next);
  }
}

// Closed walk in the complement of the defining graph through every vertex.
inline std::vector<VertexId> complement_walk(const DefGraph& g) {
  const int n = g.size();
  if (n < 2) throw HypothesisError("complement walk needs at least two vertices");
  if (!g.complement_connected()) throw HypothesisError("complement of the defining graph is disconnected");
  auto path = [&](VertexId from, VertexId to) {
    std::vector<VertexId> parent(n, -1);
    std::deque<VertexId> q{from};
    parent[from] = from;
    while (!q.empty()) {
      VertexId x = q.front();
      q.pop_front();
      for (VertexId y = 0; y < n; ++y)
        if (y != x && !g.adjacent(x, y) && parent[y] < 0) {
          parent[y] = x;
          q.push_back(y);
        }
    }
    std::vector<VertexId> p;
    for (VertexId x = to; x != from; x = parent[x]) p.push_back(x);
    std::reverse(p.begin(), p.end());
    return p;
  };
  std::vector<VertexId> walk{0};
  VertexSet seen = VertexSet::single(0);
  for (VertexId target = 1; target < n; ++target) {
    if (seen.contains(target)) continue;
    for (VertexId x : path(walk.back(), target)) {
      walk.push_back(x);
      seen.insert(x);
    }
  }
  for (VertexId x : path(walk.back(), 0)) walk.push_back(x);
  return walk;
}

// Product of first nontrivial elements along the complement walk (last
// vertex omitted, since the walk is closed).
inline NormalForm complement_walk_element(const GraphProduct& gp) {
  auto walk = complement_walk(gp.graph);
  Word w;
  for (std::size_t i = 0; i + 1 < walk.size(); ++i) w.push_back({walk[i], 1});
  return normal_form(gp, w);
}

}  // namespace qmlab
