#include <gtest/gtest.h>

#include <qmlab/presentation.hpp>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace qmlab;
using namespace qmlab::testing;

namespace {

Word w(std::initializer_list<std::pair<int, int>> xs) {
  Word out;
  for (auto [v, e] : xs) out.push_back({v, e});
  return out;
}

// Girth by deleting each edge and measuring the detour.
std::optional<int> brute_girth(const DefGraph& g) {
  std::optional<int> best;
  for (auto [a, b] : g.edges()) {
    std::vector<int> dist(g.size(), -1);
    std::deque<int> q{a};
    dist[a] = 0;
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      for (int y = 0; y < g.size(); ++y) {
        if (!g.adjacent(x, y) || dist[y] >= 0) continue;
        if ((x == a && y == b) || (x == b && y == a)) continue;
        dist[y] = dist[x] + 1;
        q.push_back(y);
      }
    }
    if (dist[b] >= 0 && (!best || dist[b] + 1 < *best)) best = dist[b] + 1;
  }
  return best;
}

bool brute_connected(const DefGraph& g, bool complement) {
  const int n = g.size();
  std::vector<std::vector<char>> r(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r[i][j] = i == j || (complement ? !g.adjacent(i, j) : g.adjacent(i, j));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) r[i][j] = r[i][j] || (r[i][k] && r[k][j]);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!r[i][j]) return false;
  return true;
}

}  // namespace

TEST(DefGraph, RejectsLoopsAndDuplicates) {
  EXPECT_THROW(DefGraph({"a", "b"}, {{0, 0}}), InputError);
  EXPECT_THROW(DefGraph({"a", "b"}, {{0, 1}, {1, 0}}), InputError);
  EXPECT_THROW(DefGraph({"a"}, {{0, 3}}), InputError);
}

TEST(DefGraph, CachedInvariantsMatchBruteForce) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 7;
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
    std::vector<std::pair<int, int>> edges;
    std::bernoulli_distribution coin(0.4);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (coin(rng)) edges.emplace_back(i, j);
    DefGraph g(names, edges);
    EXPECT_EQ(g.girth(), brute_girth(g));
    EXPECT_EQ(g.connected(), brute_connected(g, false));
    EXPECT_EQ(g.complement_connected(), brute_connected(g, true));
  }
}

TEST(VertexGroup, ValidatesAxioms) {
  EXPECT_NO_THROW(VertexGroup::from_table({{0, 1}, {1, 0}}));
  EXPECT_THROW(VertexGroup::from_table({{1, 0}, {0, 1}}), InputError);
  // Identity and inverses fine, associativity broken.
  EXPECT_THROW(VertexGroup::from_table({{0, 1, 2}, {1, 0, 0}, {2, 0, 0}}), InputError);
  EXPECT_THROW(VertexGroup::from_table({{0, 1}, {1, 1}}), InputError);
}

TEST(GraphProduct, RejectsTrivialVertexGroup) {
  EXPECT_THROW(GraphProduct(DefGraph({"a"}, {}), {VertexGroup::cyclic(1)}), InputError);
  EXPECT_THROW(GraphProduct(DefGraph({"a", "b"}, {}), {VertexGroup::cyclic(2)}), InputError);
}

TEST(NormalForm, Examples) {
  auto ep = edge_product();
  EXPECT_TRUE(normal_form(ep, w({{0, 1}, {1, 1}, {0, 1}, {1, 2}})).empty());
  auto d = dinf();
  auto aba = normal_form(d, w({{0, 1}, {1, 1}, {0, 1}}));
  EXPECT_EQ(letters(aba.syllables()), (Letters{{0, 1}, {1, 1}, {0, 1}}));
  auto ab = normal_form(d, w({{0, 1}, {1, 1}}));
  auto abab = multiply(d, ab, ab);
  EXPECT_EQ(letters(abab.syllables()), (Letters{{0, 1}, {1, 1}, {0, 1}, {1, 1}}));
  EXPECT_TRUE(normal_form(ep, Word{}).empty());
  auto uv = multiply(ep, normal_form(ep, w({{0, 1}})), normal_form(ep, w({{1, 1}})));
  EXPECT_EQ(support(uv), VertexSet(0b11));
  EXPECT_EQ(syllable_length(uv), 2);
  EXPECT_THROW(normal_form(ep, w({{2, 1}})), InputError);
  EXPECT_THROW(normal_form(ep, w({{0, 0}})), InputError);
}

TEST(NormalForm, MatchesRewritingOracle) {
  for (const auto& [name, gp] : four_products()) {
    std::mt19937 rng(7);
    for (int i = 0; i < 150; ++i) {
      Word x = random_word(gp, rng, 7);
      EXPECT_EQ(letters(normal_form(gp, x).syllables()), rewrite_canonical(gp, letters(x))) << name;
    }
  }
}

TEST(NormalForm, GroupLawsAndShuffleInvariance) {
  for (const auto& [name, gp] : four_products()) {
    std::mt19937 rng(3);
    for (int i = 0; i < 200; ++i) {
      Word a = random_word(gp, rng, 6), b = random_word(gp, rng, 6), c = random_word(gp, rng, 6);
      auto x = normal_form(gp, a), y = normal_form(gp, b), z = normal_form(gp, c);
      EXPECT_EQ(normal_form(gp, x.syllables()), x);
      EXPECT_TRUE(multiply(gp, x, invert(gp, x)).empty());
      EXPECT_EQ(multiply(gp, multiply(gp, x, y), z), multiply(gp, x, multiply(gp, y, z)));
      EXPECT_LE(syllable_length(multiply(gp, x, y)), syllable_length(x) + syllable_length(y));
      Word shuffled = a;
      std::uniform_int_distribution<std::size_t> pos(0, shuffled.empty() ? 0 : shuffled.size() - 1);
      for (int k = 0; k < 20 && shuffled.size() > 1; ++k) {
        std::size_t j = pos(rng) % (shuffled.size() - 1);
        if (shuffled[j].vertex != shuffled[j + 1].vertex && gp.commute(shuffled[j].vertex, shuffled[j + 1].vertex))
          std::swap(shuffled[j], shuffled[j + 1]);
      }
      EXPECT_EQ(normal_form(gp, shuffled), x) << name;
    }
  }
}

TEST(NormalForm, LengthIsBallDistance) {
  for (const auto& [name, gp] : four_products()) {
    OracleCayley cayley(gp);
    for (auto [node, dist] : cayley.ball(3)) {
      Word x;
      for (auto [v, e] : cayley.key(node)) x.push_back({v, e});
      EXPECT_EQ(syllable_length(normal_form(gp, x)), dist) << name;
    }
  }
}

TEST(ParabolicStrip, Examples) {
  auto gp = p4();
  auto g = normal_form(gp, w({{0, 1}, {2, 1}, {3, 1}}));
  auto s = parabolic_strip(gp, gp.graph.star(1), g);
  EXPECT_EQ(letters(s.prefix.syllables()), (Letters{{0, 1}, {2, 1}}));
  EXPECT_EQ(letters(s.rep.syllables()), (Letters{{3, 1}}));
  auto none = parabolic_strip(gp, VertexSet{}, g);
  EXPECT_TRUE(none.prefix.empty());
  EXPECT_EQ(none.rep, g);
  auto whole = parabolic_strip(gp, VertexSet::all(4), g);
  EXPECT_EQ(whole.prefix, g);
  EXPECT_TRUE(whole.rep.empty());
}

// The representative is the unique shortest element of the coset.
TEST(ParabolicStrip, RepresentativeIsCosetMinimum) {
  for (const auto& [name, gp] : four_products()) {
    OracleCayley cayley(gp);
    auto ball = cayley.ball(3);
    std::mt19937 rng(5);
    for (int i = 0; i < 60; ++i) {
      auto g = normal_form(gp, random_word(gp, rng, 4));
      VertexSet a(std::uniform_int_distribution<std::uint64_t>(0, (1u << gp.vertex_count()) - 1)(rng));
      auto s = parabolic_strip(gp, a, g);
      EXPECT_EQ(multiply(gp, s.prefix, s.rep), g);
      EXPECT_TRUE(support(s.prefix).subset_of(a));
      int best = 1 << 20, count = 0;
      for (auto [node, dist] : ball) {
        Word p;
        for (auto [v, e] : cayley.key(node)) p.push_back({v, e});
        auto pn = normal_form(gp, p);
        if (!support(pn).subset_of(a)) continue;
        int len = syllable_length(multiply(gp, pn, g));
        if (len < best) best = len, count = 0;
        if (len == best) ++count;
      }
      EXPECT_EQ(best, syllable_length(s.rep)) << name;
      EXPECT_EQ(count, 1) << name;
    }
  }
}

TEST(StarLength, Examples) {
  auto gp = p4();
  EXPECT_EQ(star_length(gp, NormalForm{}), 0);
  EXPECT_EQ(star_length(gp, normal_form(gp, w({{0, 1}, {2, 1}}))), 1);
  auto d = dinf();
  EXPECT_EQ(star_length(d, normal_form(d, w({{0, 1}, {1, 1}, {0, 1}, {1, 1}}))), 4);
}

TEST(ComplementWalk, DihedralAndHexagon) {
  auto d = dinf();
  EXPECT_EQ(letters(complement_walk_element(d).syllables()), (Letters{{0, 1}, {1, 1}}));
  for (int n = 1; n <= 5; ++n) EXPECT_EQ(syllable_length(power(d, complement_walk_element(d), n)), 2 * n);
  auto h = hexagon();
  auto g = complement_walk_element(h);
  EXPECT_EQ(support(g), VertexSet::all(6));
  for (int n = 1; n <= 4; ++n) EXPECT_EQ(syllable_length(power(h, g, n)), n * syllable_length(g));
  EXPECT_THROW(complement_walk_element(triangle()), HypothesisError);
  EXPECT_THROW(complement_walk(DefGraph({"x"}, {})), HypothesisError);
}
