#include <gtest/gtest.h>

#include <qmlab/contact.hpp>

#include "fixtures.hpp"

using namespace qmlab;
using namespace qmlab::testing;

namespace {

NormalForm nf(const GraphProduct& gp, std::initializer_list<std::pair<int, int>> xs) {
  Word w;
  for (auto [v, e] : xs) w.push_back({v, e});
  return normal_form(gp, w);
}

bool is_path(const GraphView& g) {
  if (g.size() < 2) return true;
  int ends = 0;
  for (int v = 0; v < g.size(); ++v) {
    auto d = g.neighbours(v).size();
    if (d == 0 || d > 2) return false;
    ends += d == 1;
  }
  return ends == 2 && g.edge_count() == static_cast<std::size_t>(g.size() - 1);
}

// Four-point defect straight from the definition, in half units.
int brute_delta_twice(int n, const std::function<int(int, int)>& d) {
  int best = 0;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (int w = 0; w < n; ++w) {
          int s[3] = {d(x, y) + d(z, w), d(x, z) + d(y, w), d(x, w) + d(y, z)};
          std::sort(s, s + 3);
          best = std::max(best, s[2] - s[1]);
        }
  return best;
}

}  // namespace

TEST(ContactView, InfiniteDihedralIsAPath) {
  auto gp = dinf();
  auto ball = build_ball(gp, 4);
  auto contact = build_view(ball, GraphKind::contact);
  auto crossing = build_view(ball, GraphKind::crossing);
  EXPECT_GE(contact.size(), 4);
  EXPECT_TRUE(is_path(contact.graph));
  EXPECT_EQ(crossing.graph.edge_count(), 0u);
  EXPECT_EQ(delta_estimate(contact.graph), HalfInteger::whole(0));
}

TEST(ContactView, EdgeProductIsOneEdge) {
  auto gp = edge_product();
  auto ball = build_ball(gp, 2);
  for (auto kind : {GraphKind::contact, GraphKind::crossing}) {
    auto view = build_view(ball, kind);
    ASSERT_EQ(view.size(), 2);
    EXPECT_EQ(view.graph.edge_count(), 1u);
    EXPECT_EQ(view.nodes[0], (Hyperplane{0, {}}));
    EXPECT_EQ(view.nodes[1], (Hyperplane{1, {}}));
  }
}

TEST(ContactView, CrossingIsSubgraphAndRelationsAreExclusive) {
  for (const auto& [name, gp] : four_products()) {
    auto ball = build_ball(gp, 3);
    auto contact = build_view(ball, GraphKind::contact);
    auto crossing = build_view(ball, GraphKind::crossing);
    ASSERT_EQ(contact.nodes, crossing.nodes) << name;
    for (auto [a, b] : crossing.graph.edges()) EXPECT_TRUE(contact.graph.adjacent(a, b)) << name;
    for (const auto& r : contact.relations) {
      EXPECT_EQ(crossing.graph.adjacent(r.a, r.b), r.kind == PairRelation::intersect) << name;
      EXPECT_TRUE(contact.graph.adjacent(r.a, r.b)) << name;
    }
    EXPECT_EQ(contact.relations.size(), contact.graph.edge_count()) << name;
  }
}

TEST(ContactView, ConjugationPreservesRelations) {
  auto gp = p4();
  auto ball = build_ball(gp, 2);
  auto view = build_view(ball, GraphKind::contact);
  const NormalForm g = nf(gp, {{0, 1}, {2, 1}, {3, 1}});
  for (const auto& r : view.relations) {
    auto a = act(gp, view.nodes[r.a], g), b = act(gp, view.nodes[r.b], g);
    EXPECT_EQ(classify_exact(gp, a, b), r.kind);
    EXPECT_EQ(a.vertex, view.nodes[r.a].vertex);
  }
}

TEST(Quotient, MatchesDefiningGraph) {
  for (const auto& [name, gp] : four_products()) {
    auto ball = build_ball(gp, 3);
    auto q = quotient_crossing(build_view(ball, GraphKind::crossing));
    EXPECT_TRUE(q.isomorphism.has_value()) << name;
  }
  auto q = quotient_crossing(build_view(build_ball(dinf(), 3), GraphKind::crossing));
  EXPECT_EQ(q.graph.size(), 2);
  EXPECT_EQ(q.graph.edge_count(), 0u);
  auto hex = quotient_crossing(build_view(build_ball(hexagon(), 2), GraphKind::crossing));
  EXPECT_TRUE(find_isomorphism(hex.graph, cycle_graph(6)).has_value());
  auto single = make_product({"s"}, {}, {3});
  EXPECT_EQ(quotient_crossing(build_view(build_ball(single, 2), GraphKind::crossing)).graph.size(), 1);
}

TEST(Bottleneck, Controls) {
  auto cycle = cycle_graph(100);
  auto fail = bottleneck_check(cycle, HalfInteger::from_twice(7), [](int x, int y) { return x == 0 && y == 50; });
  EXPECT_FALSE(fail.pass);
  ASSERT_TRUE(fail.witness);
  EXPECT_EQ(*fail.witness, std::pair(0, 50));

  // Trees: unique geodesics, and any midpoint cuts.
  GraphView tree(15);
  for (int i = 1; i < 15; ++i) tree.add_edge(i, (i - 1) / 2);
  EXPECT_TRUE(bottleneck_check(tree, HalfInteger::whole(0), [&](int x, int y) {
                return DistanceMatrix(tree)(x, y) % 2 == 0;
              }).pass);
  EXPECT_TRUE(bottleneck_check(path_graph(20), HalfInteger::from_twice(7)).pass);
  EXPECT_TRUE(bottleneck_check(path_graph(20), HalfInteger::whole(0)).pass);
  // Short cycles are within 2D everywhere.
  EXPECT_TRUE(bottleneck_check(cycle_graph(12), HalfInteger::from_twice(7)).pass);
  EXPECT_FALSE(bottleneck_check(cycle_graph(12), HalfInteger::whole(1)).pass);
}

TEST(Bottleneck, ContactViewsPass) {
  for (const auto& [name, gp] : four_products()) {
    auto view = build_view(build_ball(gp, 3), GraphKind::contact);
    auto dist = view_distances(view);
    auto rep = bottleneck_check(view.graph, HalfInteger::from_twice(7),
                                [&](int a, int b) { return dist.certified(a, b); });
    EXPECT_TRUE(rep.pass) << name;
    EXPECT_GT(rep.pairs_checked, 0u) << name;
  }
}

TEST(Delta, CycleMatchesBruteForce) {
  const int twice = brute_delta_twice(12, [](int a, int b) {
    int d = std::abs(a - b);
    return std::min(d, 12 - d);
  });
  EXPECT_EQ(twice, 6);
  EXPECT_EQ(delta_estimate(cycle_graph(12)).twice(), twice);
  EXPECT_EQ(delta_estimate(cycle_graph(12)).str(), "3");
  GraphView tree(10);
  for (int i = 1; i < 10; ++i) tree.add_edge(i, i / 3);
  EXPECT_EQ(delta_estimate(tree).twice(), 0);
  EXPECT_EQ(HalfInteger::from_twice(7).str(), "7/2");
}

TEST(Special, ProductsPassInjectedFails) {
  for (const auto& [name, gp] : four_products()) {
    auto view = build_view(build_ball(gp, 3), GraphKind::contact);
    auto rep = special_check(view);
    EXPECT_TRUE(rep.pass) << name;
  }
  auto gp = p4();
  auto view = build_view(build_ball(gp, 3), GraphKind::contact);
  int a = -1, b = -1;
  for (int i = 0; i < view.size() && b < 0; ++i)
    for (int j = i + 1; j < view.size(); ++j)
      if (view.nodes[i].vertex == view.nodes[j].vertex) {
        a = i;
        b = j;
        break;
      }
  ASSERT_GE(b, 0);
  view.relations.push_back({a, b, PairRelation::osculate});
  view.graph.add_edge(a, b);
  auto rep = special_check(view);
  EXPECT_FALSE(rep.pass);
  ASSERT_TRUE(rep.same_orbit_contact);
  EXPECT_EQ(*rep.same_orbit_contact, std::pair(a, b));
}

TEST(Osculation, BoundHolds) {
  for (auto gp : {p4(), hexagon()}) {
    auto rep = osculation_bound_check(build_view(build_ball(gp, 3), GraphKind::crossing));
    EXPECT_TRUE(rep.pass);
    EXPECT_GT(rep.pairs, 0u);
    EXPECT_EQ(rep.bound, osculation_bound(gp.vertex_count()));
  }
  auto rep = osculation_bound_check(build_view(build_ball(dinf(), 4), GraphKind::crossing));
  EXPECT_EQ(rep.pairs, 0u);
  EXPECT_GT(rep.skipped, 0u);
}

TEST(Distortion, HexHoldsDihedralSkipped) {
  auto hex = distortion_check(build_view(build_ball(hexagon(), 2), GraphKind::crossing));
  EXPECT_FALSE(hex.skipped);
  EXPECT_TRUE(hex.pass);
  EXPECT_EQ(hex.factor, 5);
  auto d = distortion_check(build_view(build_ball(dinf(), 4), GraphKind::crossing));
  EXPECT_TRUE(d.skipped);
  auto e = distortion_check(build_view(build_ball(edge_product(), 2), GraphKind::crossing));
  EXPECT_EQ(e.pairs, 1u);
  EXPECT_TRUE(e.pass);
}

TEST(Unbounded, Classification) {
  auto d = unbounded_witness(dinf(), 3);
  EXPECT_EQ(d.classification, GroupClass::infinite_dihedral);
  EXPECT_TRUE(d.pass);
  EXPECT_GE(d.certified_distance, 3);
  auto h = unbounded_witness(hexagon(), 3);
  EXPECT_EQ(h.classification, GroupClass::non_elementary_candidate);
  EXPECT_TRUE(h.pass);
  EXPECT_EQ(classify_group(make_product({"u", "v"}, {}, {2, 3})), GroupClass::non_elementary_candidate);
  auto k = unbounded_witness(triangle(), 3);
  EXPECT_EQ(k.classification, GroupClass::contact_bounded);
  EXPECT_FALSE(k.pass);
  EXPECT_EQ(classify_group(make_product({"s"}, {}, {2})), GroupClass::contact_bounded);
}

TEST(Acylindricity, DihedralCountsOnlyIdentity) {
  auto gp = dinf();
  auto ball = build_ball(gp, 10);
  Hyperplane h{0, {}};
  std::optional<Hyperplane> k;
  for (const auto& c : interior_hyperplanes(ball, 0))
    if (hyperplane_distance(gp, h, c, GraphKind::contact) == 8) k = c;
  ASSERT_TRUE(k);
  auto rep = acylindricity_experiment(ball, h, *k, 1);
  EXPECT_EQ(rep.count, 1u);
  EXPECT_TRUE(rep.elements.front().empty());
  EXPECT_TRUE(rep.pass);
  EXPECT_THROW(acylindricity_experiment(ball, h, h, 1), HypothesisError);
  auto zero = acylindricity_experiment(ball, h, *k, 0);
  EXPECT_GE(zero.count, 1u);
}

TEST(Acylindricity, BoundFormula) {
  // D = 2: N = 9 * 8 = 72.
  const long double n = 72;
  EXPECT_NEAR(static_cast<double>(acylindricity_bound(2, 1) / (std::pow(n, 8.0L) * 2 / (71.0L * 71.0L))), 1.0, 1e-12);
}

TEST(FewPlanes, BoundOnAllProducts) {
  for (const auto& [name, gp] : four_products()) {
    auto ball = build_ball(gp, 2);
    for (int v = 0; v < ball.size(); ++v)
      for (int w = 0; w < ball.size(); ++w) {
        auto rep = fewplanes_count(gp, ball.element(v), ball.element(w));
        EXPECT_TRUE(rep.pass) << name;
        if (v == w) EXPECT_EQ(rep.count, 0) << name;
      }
  }
  auto gp = dinf();
  EXPECT_LE(fewplanes_count(gp, NormalForm{}, nf(gp, {{0, 1}})).count, 1);
}

TEST(ContactSequence, ZeroLengthGatesAgree) {
  auto gp = p4();
  auto ball = build_ball(gp, 3);
  HyperplaneIndex index(ball);
  const Hyperplane h{1, {}};
  const auto& car = index.carrier(*index.find(h));
  for (int p : car)
    for (int p2 : car) {
      if (!ball.interior(p) || !ball.interior(p2)) continue;
      auto seqs = enumerate_contact_sequences(index, h, h, p, p2);
      ASSERT_EQ(seqs.size(), 1u);
      for (int v = 0; v < ball.size(); v += 3) {
        if (!ball.interior(v)) continue;
        auto prof = profiles(gp, seqs[0], ball.element(v));
        std::vector<VertexSet> f{separating_labels(gp, ball.element(p), prof.gates[0])};
        EXPECT_EQ(iterated_hull_gate(gp, ball.element(p), f, ball.element(v)), prof.gates[0]);
        EXPECT_TRUE(verify_technical(gp, seqs[0], ball.element(v)).pass());
      }
    }
}

TEST(ContactSequence, EdgeProductSquare) {
  auto gp = edge_product();
  auto ball = build_ball(gp, 3);
  HyperplaneIndex index(ball);
  const NormalForm ab = nf(gp, {{0, 1}, {1, 1}}), b2 = nf(gp, {{1, 2}});
  auto s = v_minimal_contact_sequence(index, Hyperplane{0, {}}, Hyperplane{1, {}}, *ball.index_of(NormalForm{}),
                                      *ball.index_of(ab), *ball.index_of(b2));
  ASSERT_EQ(s.length(), 1);
  ASSERT_EQ(s.breakpoints.size(), 3u);
  EXPECT_EQ(s.breakpoints[1], b2);
  EXPECT_TRUE(verify_technical(gp, s, b2).pass());
  EXPECT_EQ(enumerate_contact_sequences(index, Hyperplane{0, {}}, Hyperplane{1, {}}, *ball.index_of(NormalForm{}),
                                        *ball.index_of(ab))
                .size(),
            6u);
}

TEST(ContactSequence, ProfilesAndMinimality) {
  auto gp = p4();
  auto ball = build_ball(gp, 3);
  HyperplaneIndex index(ball);
  const int one = *ball.index_of(NormalForm{});
  const Hyperplane h{0, {}};
  std::size_t checked = 0;
  for (int hi = 0; hi < index.size() && checked < 40; ++hi) {
    const Hyperplane& h2 = index[hi];
    auto n = hyperplane_distance(gp, h, h2, GraphKind::contact);
    if (!n || *n != 2) continue;
    for (int p2 : index.carrier(hi)) {
      if (!ball.interior(p2)) continue;
      auto seqs = enumerate_contact_sequences(index, h, h2, one, p2);
      ASSERT_FALSE(seqs.empty());
      for (int v = 0; v < ball.size(); v += 7) {
        if (!ball.interior(v)) continue;
        std::vector<Profiles> prof;
        for (const auto& s : seqs) {
          ASSERT_EQ(s.length(), 2);
          for (int i = 0; i <= 2; ++i) {
            EXPECT_TRUE(in_carrier(gp, s.planes[i], s.breakpoints[i]));
            EXPECT_TRUE(in_carrier(gp, s.planes[i], s.breakpoints[i + 1]));
          }
          prof.push_back(profiles(gp, s, ball.element(v)));
        }
        auto minimal = v_minimal_indices(prof);
        ASSERT_FALSE(minimal.empty());
        // Pairwise definition.
        for (std::size_t i = 0; i < seqs.size(); ++i) {
          bool ok = true;
          for (std::size_t j = 0; j < seqs.size(); ++j)
            ok = ok && (prof[i].up <= prof[j].up || prof[i].down <= prof[j].down);
          EXPECT_EQ(ok, std::binary_search(minimal.begin(), minimal.end(), i));
        }
        for (auto i : minimal) EXPECT_TRUE(verify_technical(gp, seqs[i], ball.element(v)).pass());
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 0u);
}
