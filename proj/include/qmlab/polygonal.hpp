#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <random>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "diagrams.hpp"
#include "presentation.hpp"

namespace qmlab {

// A free generator s, or its projection t_v(s) when `projection` is set.
struct Letter {
  int generator = 0;
  std::optional<VertexId> projection;
  bool inverse = false;
  auto operator<=>(const Letter&) const = default;
  Letter inverted() const { return {generator, projection, !inverse}; }
};

// Free generators with a fixed evaluation map into the graph product; every
// image must be supported in some link.
class Alphabet {
 public:
  Alphabet(GraphProduct gp, std::vector<NormalForm> images) : gp_(std::move(gp)), images_(std::move(images)) {
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (!home(static_cast<int>(i))) throw HypothesisError("generator " + std::to_string(i) + " is not linking");
    }
  }

  const GraphProduct& gp() const { return gp_; }
  int generators() const { return static_cast<int>(images_.size()); }
  const NormalForm& generator_image(int s) const { return images_[s]; }

  NormalForm image(const Letter& l) const {
    NormalForm g = images_[l.generator];
    if (l.projection) {
      const VertexId v = *l.projection;
      int e = project(gp_, v, {g.begin(), g.end()});
      g = e == 0 ? NormalForm{} : normal_form(gp_, std::vector<Syllable>{{v, e}});
    }
    return l.inverse ? invert(gp_, g) : g;
  }

  NormalForm image(std::span<const Letter> w) const {
    NormalForm out;
    for (const auto& l : w) out = multiply(gp_, out, image(l));
    return out;
  }

  // Membership in T_v.
  bool dot_letter(const Letter& l, VertexId v) const { return l.projection == v; }
  // Membership in the hat alphabet of v: S_v together with T_w for w in link(v).
  bool hat_letter(const Letter& l, VertexId v) const {
    if (l.projection) return gp_.graph.adjacent(*l.projection, v);
    return support(images_[l.generator]).subset_of(gp_.graph.link(v));
  }

  // Smallest vertex whose link carries the generator's image.
  std::optional<VertexId> home(int s) const {
    for (VertexId v = 0; v < gp_.vertex_count(); ++v)
      if (support(images_[s]).subset_of(gp_.graph.link(v))) return v;
    return std::nullopt;
  }

  PieceLabel default_label(const Letter& l) const {
    if (l.projection) return {*l.projection, Flavour::dot};
    return {*home(l.generator), Flavour::hat};
  }

  // t_w applied to one letter; nullopt when it maps to 1.
  std::optional<Letter> projected(const Letter& l, VertexId w) const {
    if (l.projection && *l.projection != w) return std::nullopt;
    return Letter{l.generator, w, l.inverse};
  }

  std::string name(const Letter& l) const {
    std::string s = "s" + std::to_string(l.generator);
    if (l.projection) s = "t_" + gp_.graph.name(*l.projection) + "(" + s + ")";
    return l.inverse ? s + "^-1" : s;
  }

 private:
  GraphProduct gp_;
  std::vector<NormalForm> images_;
};

struct Piece {
  std::vector<Letter> letters;
  PieceLabel label;
  auto operator<=>(const Piece&) const = default;
};

struct Measure {
  int hats = 0;
  int dots = 0;
  auto operator<=>(const Measure&) const = default;
};

struct PolygonalRep {
  std::vector<Piece> pieces;

  Measure measure() const {
    Measure m;
    for (const auto& p : pieces) (p.label.flavour == Flavour::hat ? m.hats : m.dots)++;
    return m;
  }
  std::vector<Letter> word() const {
    std::vector<Letter> w;
    for (const auto& p : pieces) w.insert(w.end(), p.letters.begin(), p.letters.end());
    return w;
  }
  // Least rotation of the piece sequence.
  std::vector<Piece> canonical() const {
    std::vector<Piece> best = pieces;
    for (std::size_t r = 1; r < pieces.size(); ++r) {
      std::vector<Piece> rot(pieces.begin() + static_cast<std::ptrdiff_t>(r), pieces.end());
      rot.insert(rot.end(), pieces.begin(), pieces.begin() + static_cast<std::ptrdiff_t>(r));
      if (rot < best) best = std::move(rot);
    }
    return best;
  }
};

inline PieceShape piece_shape(const Alphabet& a, const Piece& p) {
  const NormalForm g = a.image(p.letters);
  VertexSet seen;
  bool small = true;
  for (const auto& s : g) {
    if (seen.contains(s.vertex)) small = false;
    seen.insert(s.vertex);
  }
  return {p.label, syllable_length(g), small};
}

inline std::vector<PieceShape> piece_shapes(const Alphabet& a, const PolygonalRep& r) {
  std::vector<PieceShape> out;
  for (const auto& p : r.pieces) out.push_back(piece_shape(a, p));
  return out;
}

inline void validate_rep(const Alphabet& a, const PolygonalRep& r) {
  for (std::size_t i = 0; i < r.pieces.size(); ++i) {
    const auto& p = r.pieces[i];
    if (p.letters.empty()) throw InputError("piece " + std::to_string(i) + " is empty");
    for (const auto& l : p.letters) {
      if (l.generator < 0 || l.generator >= a.generators()) throw InputError("unknown generator");
      const bool ok = p.label.flavour == Flavour::dot ? a.dot_letter(l, p.label.vertex) : a.hat_letter(l, p.label.vertex);
      if (!ok) throw InputError("letter " + a.name(l) + " does not fit label " + p.label.str(a.gp().graph));
    }
  }
}

// One piece per letter.
inline PolygonalRep initial_rep(const Alphabet& a, std::span<const Letter> w) {
  PolygonalRep r;
  for (const auto& l : w) r.pieces.push_back({{l}, a.default_label(l)});
  return r;
}

using MoveSite = RedViolation;

struct GuardError : Error {
  using Error::Error;
};

inline std::vector<MoveSite> applicable_moves(const Alphabet& a, const PolygonalRep& r) {
  return red_violations(a.gp().graph, piece_shapes(a, r), true);
}

inline PolygonalRep apply_move(const Alphabet& a, const PolygonalRep& r, const MoveSite& site) {
  const auto moves = applicable_moves(a, r);
  const bool guarded = std::any_of(moves.begin(), moves.end(), [&](const MoveSite& m) {
    return m.condition == site.condition && m.first == site.first && m.span == site.span && m.mirrored == site.mirrored;
  });
  if (!guarded) throw GuardError("move " + to_string(site.condition) + " does not apply at piece " +
                                 std::to_string(site.first));
  const int k = static_cast<int>(r.pieces.size());
  auto run = [&](int j) -> const Piece& { return r.pieces[(site.first + j) % k]; };
  auto joined = [](const Piece& x, const Piece& y, PieceLabel label) {
    Piece p{x.letters, label};
    p.letters.insert(p.letters.end(), y.letters.begin(), y.letters.end());
    return p;
  };
  const int m = site.span;
  std::vector<Piece> repl;
  switch (site.condition) {
    case RedCondition::no_trivial:
      break;
    case RedCondition::small_is_dot: {
      const Piece& p = run(0);
      for (const auto& s : a.image(p.letters)) {
        Piece q{{}, {s.vertex, Flavour::dot}};
        for (const auto& l : p.letters)
          if (auto t = a.projected(l, s.vertex)) q.letters.push_back(*t);
        repl.push_back(std::move(q));
      }
      break;
    }
    case RedCondition::hat_then_dots:
      if (!site.mirrored) {
        repl.push_back(joined(run(0), run(m - 1), run(0).label));
        for (int j = 1; j < m - 1; ++j) repl.push_back(run(j));
      } else {
        for (int j = 1; j < m - 1; ++j) repl.push_back(run(j));
        repl.push_back(joined(run(0), run(m - 1), run(m - 1).label));
      }
      break;
    case RedCondition::dots_between_dots:
      repl.push_back(joined(run(0), run(m - 1), run(0).label));
      for (int j = 1; j < m - 1; ++j) repl.push_back(run(j));
      break;
    case RedCondition::same_label:
      repl.push_back(joined(run(0), run(1), run(0).label));
      break;
    case RedCondition::dot_beside_hat: {
      const PieceLabel hat = run(0).label.flavour == Flavour::hat ? run(0).label : run(1).label;
      repl.push_back(joined(run(0), run(1), hat));
      break;
    }
    case RedCondition::hat_hat_dot:
      if (!site.mirrored) {
        repl.push_back(joined(run(0), run(2), run(0).label));
        repl.push_back(run(1));
      } else {
        repl.push_back(run(1));
        repl.push_back(joined(run(0), run(2), run(2).label));
      }
      break;
    case RedCondition::dot_hat_dot:
    case RedCondition::hat_dot_hat:
      repl.push_back(joined(run(0), run(2), run(0).label));
      repl.push_back(run(1));
      break;
  }
  PolygonalRep out;
  out.pieces = std::move(repl);
  for (int j = m; j < k; ++j) out.pieces.push_back(run(j));
  if (!(out.measure() < r.measure())) throw GuardError("move does not decrease the measure");
  return out;
}

struct MoveStep {
  MoveSite site;
  Measure before;
  Measure after;
};

struct MinimizeResult {
  PolygonalRep rep;
  std::vector<MoveStep> path;  // moves from the input to rep
  bool irreducible = false;
  bool exhausted = false;  // budget ran out before the search closed
  std::size_t expanded = 0;
};

// Best-first search over move applications, memoized on rotations; stops
// at the first piece-free rep.
inline MinimizeResult minimize_polygonal(const Alphabet& a, const PolygonalRep& start, std::size_t budget = 100000) {
  validate_rep(a, start);
  struct Node {
    PolygonalRep rep;
    int parent;
    MoveSite site;
  };
  std::vector<Node> nodes{{start, -1, {}}};
  std::map<std::vector<Piece>, int> seen{{start.canonical(), 0}};
  using Entry = std::tuple<Measure, std::size_t, int>;  // measure, insertion order, node
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  open.emplace(start.measure(), 0, 0);
  std::optional<int> best;  // least-measure irreducible node
  MinimizeResult out;
  auto finish = [&](int id) {
    out.rep = nodes[id].rep;
    for (int x = id; nodes[x].parent >= 0; x = nodes[x].parent)
      out.path.push_back({nodes[x].site, nodes[nodes[x].parent].rep.measure(), nodes[x].rep.measure()});
    std::reverse(out.path.begin(), out.path.end());
    return out;
  };
  while (!open.empty()) {
    auto [measure, order, id] = open.top();
    open.pop();
    if (out.expanded >= budget) {
      out.exhausted = true;
      break;
    }
    ++out.expanded;
    auto moves = applicable_moves(a, nodes[id].rep);
    if (moves.empty()) {
      if (!best || measure < nodes[*best].rep.measure()) best = id;
      if (measure == Measure{}) break;
      continue;
    }
    for (const auto& mv : moves) {
      PolygonalRep next = apply_move(a, nodes[id].rep, mv);
      auto key = next.canonical();
      if (seen.contains(key)) continue;
      const int nid = static_cast<int>(nodes.size());
      seen.emplace(std::move(key), nid);
      nodes.push_back({std::move(next), id, mv});
      open.emplace(nodes[nid].rep.measure(), static_cast<std::size_t>(nid), nid);
    }
  }
  if (best) {
    out.irreducible = true;
    return finish(*best);
  }
  int least = 0;
  for (int i = 1; i < static_cast<int>(nodes.size()); ++i)
    if (nodes[i].rep.measure() < nodes[least].rep.measure()) least = i;
  return finish(least);
}

// Free and cyclic reduction of a word over the extended alphabet.
inline std::vector<Letter> cyclically_reduce(std::vector<Letter> w) {
  std::vector<Letter> out;
  for (const auto& l : w) {
    if (!out.empty() && out.back() == l.inverted()) out.pop_back();
    else out.push_back(l);
  }
  std::size_t b = 0, e = out.size();
  while (e - b >= 2 && out[b] == out[e - 1].inverted()) ++b, --e;
  return {out.begin() + static_cast<std::ptrdiff_t>(b), out.begin() + static_cast<std::ptrdiff_t>(e)};
}

inline std::vector<Letter> inverse_word(std::span<const Letter> w) {
  std::vector<Letter> out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverted());
  return out;
}

// Random generator images, each a reduced word of 1..3 syllables supported
// in the link of a random vertex.
inline Alphabet random_alphabet(const GraphProduct& gp, int generators, std::mt19937_64& rng) {
  std::vector<NormalForm> images;
  std::vector<VertexId> with_link;
  for (VertexId v = 0; v < gp.vertex_count(); ++v)
    if (!gp.graph.link(v).empty()) with_link.push_back(v);
  if (with_link.empty()) throw HypothesisError("defining graph has no edges");
  while (static_cast<int>(images.size()) < generators) {
    const VertexId v = with_link[std::uniform_int_distribution<std::size_t>(0, with_link.size() - 1)(rng)];
    const auto link = gp.graph.link(v).members();
    const int len = std::uniform_int_distribution<int>(1, 3)(rng);
    Word w;
    for (int i = 0; i < len; ++i) {
      const VertexId u = link[std::uniform_int_distribution<std::size_t>(0, link.size() - 1)(rng)];
      w.push_back({u, std::uniform_int_distribution<int>(1, gp.group(u).order() - 1)(rng)});
    }
    NormalForm g = normal_form(gp, w);
    if (!g.empty()) images.push_back(std::move(g));
  }
  return Alphabet(gp, std::move(images));
}

namespace detail {

inline Letter random_letter(const Alphabet& a, std::mt19937_64& rng, const std::function<bool(const Letter&)>& keep) {
  std::vector<Letter> pool;
  for (int s = 0; s < a.generators(); ++s) {
    for (bool inv : {false, true}) {
      Letter base{s, std::nullopt, inv};
      if (keep(base)) pool.push_back(base);
      for (VertexId v = 0; v < a.gp().vertex_count(); ++v) {
        Letter t{s, v, inv};
        if (keep(t)) pool.push_back(t);
      }
    }
  }
  if (pool.empty()) throw HypothesisError("no letter fits");
  return pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
}

// One element of the generating set of K: a commutator of a dot-v letter with
// a hat-v word, or a hat-v word with trivial image.
inline std::vector<Letter> random_k_generator(const Alphabet& a, std::mt19937_64& rng) {
  const auto& gp = a.gp();
  std::vector<VertexId> usable;
  for (VertexId v = 0; v < gp.vertex_count(); ++v)
    if (!gp.graph.link(v).empty()) usable.push_back(v);
  const VertexId v = usable[std::uniform_int_distribution<std::size_t>(0, usable.size() - 1)(rng)];
  auto hat = [&](const Letter& l) { return a.hat_letter(l, v); };
  if (std::uniform_int_distribution<int>(0, 1)(rng) == 0) {
    std::vector<int> own;
    for (int s = 0; s < a.generators(); ++s)
      if (support(a.generator_image(s)).subset_of(gp.graph.link(v))) own.push_back(s);
    if (!own.empty()) {
      const int s = own[std::uniform_int_distribution<std::size_t>(0, own.size() - 1)(rng)];
      const Letter base{s, std::nullopt, false};
      const NormalForm g = a.generator_image(s);
      std::vector<Letter> w{base};
      VertexSet supp;
      bool distinct = true;
      for (const auto& x : g) {
        distinct = distinct && !supp.contains(x.vertex);
        supp.insert(x.vertex);
      }
      if (distinct) {
        std::vector<Letter> split;
        for (const auto& x : g) split.push_back({s, x.vertex, false});
        auto inv = inverse_word(split);
        w.insert(w.end(), inv.begin(), inv.end());
      } else if (multiply(gp, g, g).empty()) {
        w.push_back(base);
      } else {
        w.push_back(base.inverted());
      }
      return std::uniform_int_distribution<int>(0, 1)(rng) ? w : inverse_word(w);
    }
  }
  const Letter x{std::uniform_int_distribution<int>(0, a.generators() - 1)(rng), v,
                 std::uniform_int_distribution<int>(0, 1)(rng) == 1};
  std::vector<Letter> y{random_letter(a, rng, hat)};
  if (std::uniform_int_distribution<int>(0, 1)(rng)) y.push_back(random_letter(a, rng, hat));
  std::vector<Letter> w{x};
  w.insert(w.end(), y.begin(), y.end());
  w.push_back(x.inverted());
  auto yi = inverse_word(y);
  w.insert(w.end(), yi.begin(), yi.end());
  return w;
}

}  // namespace detail

// Products of up to three conjugated generators of K, cyclically reduced,
// nonempty and at most max_letters long.
inline std::vector<std::vector<Letter>> k_word_corpus(const Alphabet& a, std::uint64_t seed, int count,
                                                      int max_letters = 16) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<Letter>> out;
  auto any = [](const Letter&) { return true; };
  while (static_cast<int>(out.size()) < count) {
    std::vector<Letter> w;
    const int factors = std::uniform_int_distribution<int>(1, 3)(rng);
    for (int f = 0; f < factors; ++f) {
      std::vector<Letter> c;
      const int clen = std::uniform_int_distribution<int>(0, 2)(rng);
      for (int i = 0; i < clen; ++i) c.push_back(detail::random_letter(a, rng, any));
      auto g = detail::random_k_generator(a, rng);
      w.insert(w.end(), c.begin(), c.end());
      w.insert(w.end(), g.begin(), g.end());
      auto ci = inverse_word(c);
      w.insert(w.end(), ci.begin(), ci.end());
    }
    w = cyclically_reduce(std::move(w));
    if (!w.empty() && static_cast<int>(w.size()) <= max_letters) out.push_back(std::move(w));
  }
  return out;
}

// Words u v with v a shuffled reduced word for u^-1, rotated at random.
inline std::vector<Word> identity_word_corpus(const GraphProduct& gp, std::uint64_t seed, int count,
                                              int max_syllables = 14) {
  std::mt19937_64 rng(seed);
  std::vector<Word> out;
  while (static_cast<int>(out.size()) < count) {
    const int half = std::uniform_int_distribution<int>(1, max_syllables / 2)(rng);
    Word u;
    for (int i = 0; i < half; ++i) {
      const VertexId v = std::uniform_int_distribution<VertexId>(0, gp.vertex_count() - 1)(rng);
      u.push_back({v, std::uniform_int_distribution<int>(1, gp.group(v).order() - 1)(rng)});
    }
    const NormalForm inv = invert(gp, normal_form(gp, u));
    Word v(inv.begin(), inv.end());
    for (int swaps = 0; swaps < 2 * static_cast<int>(v.size()); ++swaps) {
      if (v.size() < 2) break;
      const auto i = std::uniform_int_distribution<std::size_t>(0, v.size() - 2)(rng);
      if (gp.commute(v[i].vertex, v[i + 1].vertex)) std::swap(v[i], v[i + 1]);
    }
    Word w = u;
    w.insert(w.end(), v.begin(), v.end());
    const auto r = std::uniform_int_distribution<std::size_t>(0, w.size() - 1)(rng);
    std::rotate(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(r), w.end());
    out.push_back(std::move(w));
  }
  return out;
}

}  // namespace qmlab
