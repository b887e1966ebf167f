#include <gtest/gtest.h>

#include <qmlab/diagrams.hpp>
#include <qmlab/io.hpp>
#include <qmlab/polygonal.hpp>

#include "fixtures.hpp"

using namespace qmlab;
using namespace qmlab::testing;

namespace {

GraphProduct figure_product() { return load_presentation_file(std::string(QMLAB_DATA_DIR) + "/figure_path.json"); }

Word figure_word(const GraphProduct& gp) {
  return parse_word(gp, read_file(std::string(QMLAB_DATA_DIR) + "/figure_word.txt")).word;
}

Word parse(const GraphProduct& gp, const std::string& s) { return parse_word(gp, s).word; }

// Each component of a diagram reads off a word that evaluates to 1.
bool components_trivial(const GraphProduct& gp, const DualDiagram& d) {
  for (const auto& c : d.components) {
    Word w;
    for (int p : c.boundary_positions()) w.push_back(d.boundary[p]);
    if (!normal_form(gp, w).empty()) return false;
  }
  return true;
}

// Boundary-only diagram for exercising the classification.
DualDiagram layout(int n, const std::vector<std::vector<int>>& comps) {
  DualDiagram d;
  d.boundary.assign(n, Syllable{0, 1});
  for (const auto& ps : comps) {
    Component c;
    for (int p : ps) c.nodes.push_back({NodeKind::boundary, p});
    d.components.push_back(c);
  }
  return d;
}

Subdivision cuts(int n, const std::vector<std::pair<int, int>>& pieces) {
  Subdivision s{n, {}};
  for (auto [a, b] : pieces) s.pieces.push_back({a, b, {0, Flavour::hat}});
  return s;
}

}  // namespace

TEST(DualDiagram, EmptyWord) {
  auto gp = edge_product();
  auto d = build_dual_diagram(gp, Word{});
  EXPECT_TRUE(d.components.empty());
  EXPECT_TRUE(check_diagram(gp, d).pass);
}

TEST(DualDiagram, RejectsNontrivialWord) {
  auto gp = edge_product();
  EXPECT_THROW(build_dual_diagram(gp, parse(gp, "u:1 v:1")), HypothesisError);
}

TEST(DualDiagram, FigureWord) {
  auto gp = figure_product();
  auto w = figure_word(gp);
  ASSERT_EQ(w.size(), 14u);
  auto d = build_dual_diagram(gp, w);
  auto r = check_diagram(gp, d);
  EXPECT_TRUE(r.pass) << r.witness;
  EXPECT_EQ(d.components.size(), 6u);
  std::vector<int> per_vertex(3, 0);
  for (const auto& c : d.components) per_vertex[c.vertex]++;
  EXPECT_EQ(per_vertex, (std::vector<int>{2, 2, 2}));
  EXPECT_TRUE(components_trivial(gp, d));
}

TEST(DualDiagram, CommutingPairCrossesOnce) {
  auto gp = edge_product();
  auto d = build_dual_diagram(gp, parse(gp, "u:1 v:1 u:1 v:2"));
  ASSERT_EQ(d.components.size(), 2u);
  EXPECT_TRUE(check_diagram(gp, d).pass);
  EXPECT_TRUE(d.cross(0, 1));
  EXPECT_EQ(d.crossings.size() % 2, 1u);
}

TEST(DualDiagram, NestedArcsDoNotCross) {
  auto gp = edge_product();
  auto d = build_dual_diagram(gp, parse(gp, "u:1 v:1 v:2 u:1"));
  ASSERT_EQ(d.components.size(), 2u);
  EXPECT_EQ(d.crossings.size() % 2, 0u);
  EXPECT_TRUE(check_diagram(gp, d).pass);
}

TEST(DualDiagram, IdentityCorpusPassesChecks) {
  for (const auto& [name, gp] : four_products()) {
    for (const auto& w : identity_word_corpus(gp, 7, 40)) {
      auto d = build_dual_diagram(gp, w);
      auto r = check_diagram(gp, d);
      EXPECT_TRUE(r.pass) << name << " " << format_word(gp, w) << ": " << r.witness;
      EXPECT_TRUE(components_trivial(gp, d)) << name;
    }
  }
}

TEST(DualDiagram, CheckCatchesBrokenComponent) {
  auto gp = edge_product();
  auto d = build_dual_diagram(gp, parse(gp, "u:1 v:1 u:1 v:2"));
  d.components[0].edges.clear();
  EXPECT_FALSE(check_diagram(gp, d).pass);
}

TEST(Subdivision, GreedyPiecesAreGeodesicAndLabelled) {
  auto gp = hexagon();
  for (const auto& w : identity_word_corpus(gp, 11, 30)) {
    auto s = subdivide(gp, w);
    EXPECT_NO_THROW(validate_subdivision(gp, w, s));
    int total = 0;
    for (const auto& p : s.pieces) total += p.size;
    EXPECT_EQ(total, static_cast<int>(w.size()));
  }
}

TEST(Subdivision, ValidationRejectsBadLabel) {
  auto gp = hexagon();
  Word w = parse(gp, "v1:1 v3:1 v1:1 v3:1");
  Subdivision s{4, {{0, 4, {1, Flavour::dot}}}};
  EXPECT_THROW(validate_subdivision(gp, w, s), InputError);
}

TEST(Classification, FigureLayout) {
  // Eight pieces, seven components; the last one has four ends.
  auto s = cuts(17, {{0, 1}, {1, 3}, {4, 3}, {7, 2}, {9, 1}, {10, 2}, {12, 2}, {14, 3}});
  auto d = layout(17, {{3, 4}, {13, 15}, {9, 10}, {6, 14}, {1, 16}, {2, 5, 7}, {0, 8, 11, 12}});
  const int cprime = 6;
  auto oc = classify_components(d, s);
  auto kind = [&](int comp, int first, int last) {
    for (const auto& o : oc)
      if (o.component == comp && o.first == first && o.last == last) return o.kind;
    ADD_FAILURE() << "missing oriented component";
    return ComponentClass::other;
  };
  EXPECT_EQ(kind(cprime, 8, 0), ComponentClass::minimal);
  EXPECT_NE(kind(cprime, 11, 8), ComponentClass::minimal);
  EXPECT_NE(kind(cprime, 12, 11), ComponentClass::minimal);
  EXPECT_NE(kind(cprime, 0, 12), ComponentClass::minimal);
}

TEST(Classification, AdjacentPiecesAreTrivial) {
  auto s = cuts(4, {{0, 2}, {2, 2}});
  auto d = layout(4, {{1, 2}, {0, 3}});
  for (const auto& o : classify_components(d, s))
    if (o.component == 0 && o.first == 2) EXPECT_EQ(o.kind, ComponentClass::trivial);
}

TEST(Classification, NestedArcGivesAlmostMinimal) {
  // Inner arc spans P2..P4, outer arc P1..P5 wraps around it.
  auto s = cuts(10, {{0, 2}, {2, 2}, {4, 2}, {6, 2}, {8, 2}});
  auto d = layout(10, {{3, 7}, {1, 9}});
  bool inner_min = false, outer_almost = false;
  for (const auto& o : classify_components(d, s)) {
    if (o.component == 0 && o.first == 3 && o.last == 7) inner_min = o.kind == ComponentClass::minimal;
    if (o.component == 1 && o.first == 1 && o.last == 9) outer_almost = o.kind == ComponentClass::almost_minimal;
  }
  EXPECT_TRUE(inner_min);
  EXPECT_TRUE(outer_almost);
}

TEST(PolygonalChecks, HexagonAndPentagonCorpora) {
  for (auto gp : {hexagon(), pentagon()}) {
    for (const auto& w : identity_word_corpus(gp, 3, 60)) {
      auto pv = polygonal_diagram(gp, w);
      auto a = check_nointer(gp, pv);
      auto b = check_interhat(gp, pv);
      EXPECT_TRUE(a.applicable);
      EXPECT_TRUE(a.pass) << format_word(gp, w) << ": " << a.witness;
      EXPECT_TRUE(b.applicable);
      EXPECT_TRUE(b.pass) << format_word(gp, w) << ": " << b.witness;
    }
  }
}

TEST(PolygonalChecks, SkippedBelowGirth) {
  auto tri = triangle();
  auto pv = polygonal_diagram(tri, Word{});
  EXPECT_FALSE(check_nointer(tri, pv).applicable);
  EXPECT_FALSE(check_interhat(tri, pv).applicable);
  auto sq = square();
  EXPECT_TRUE(check_nointer(sq, polygonal_diagram(sq, Word{})).applicable);
  EXPECT_FALSE(check_interhat(sq, polygonal_diagram(sq, Word{})).applicable);
}

TEST(PolygonalChecks, SyntheticSelfCrossingFails) {
  // Two arcs of one piece crossing each other cannot come from a geodesic piece.
  auto gp = hexagon();
  Word w = parse(gp, "v1:1 v2:1 v1:1 v2:1");
  PolygonalVkd pv{build_dual_diagram(gp, w), Subdivision{4, {{0, 4, {0, Flavour::hat}}}}};
  EXPECT_FALSE(check_nointer(gp, pv).pass);
}

TEST(RedConditions, Sites) {
  auto g = hexagon().graph;
  auto hat = [](VertexId v, int len, bool small = false) { return PieceShape{{v, Flavour::hat}, len, small}; };
  auto dot = [](VertexId v) { return PieceShape{{v, Flavour::dot}, 1, true}; };
  auto has = [&](std::vector<PieceShape> p, RedCondition c) {
    auto v = red_violations(g, p, true);
    return std::any_of(v.begin(), v.end(), [&](const RedViolation& x) { return x.condition == c; });
  };
  EXPECT_TRUE(has({hat(0, 0), hat(1, 3)}, RedCondition::no_trivial));
  EXPECT_TRUE(has({hat(0, 2, true), dot(3)}, RedCondition::small_is_dot));
  EXPECT_TRUE(has({hat(0, 2), dot(1)}, RedCondition::dot_beside_hat));
  EXPECT_FALSE(has({hat(0, 2), dot(0)}, RedCondition::dot_beside_hat));
  EXPECT_TRUE(has({dot(1), dot(1), hat(4, 3)}, RedCondition::same_label));
  EXPECT_TRUE(has({dot(2), hat(2, 3), dot(2), hat(5, 3)}, RedCondition::dot_hat_dot));
  EXPECT_TRUE(has({hat(0, 3), dot(0), hat(0, 3), dot(4)}, RedCondition::hat_dot_hat));
  EXPECT_TRUE(red_violations(g, std::vector<PieceShape>{}).empty());
  EXPECT_EQ(roman(RedCondition::hat_dot_hat), 9);
}

TEST(MinimalDiagram, EmptyDiagramPasses) {
  auto gp = hexagon();
  auto r = check_minimal_diagram(gp, polygonal_diagram(gp, Word{}));
  EXPECT_FALSE(r.precondition);
  EXPECT_TRUE(r.pass);
}

TEST(MinimalDiagram, ReportsUnmetPrecondition) {
  auto gp = hexagon();
  Word w = parse(gp, "v1:1 v1:1");
  auto r = check_minimal_diagram(gp, polygonal_diagram(gp, w));
  EXPECT_TRUE(r.precondition.has_value());
}
