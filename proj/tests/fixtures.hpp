#pragma once

#include <qmlab/presentation.hpp>

#include <string>
#include <vector>

namespace qmlab::testing {

inline GraphProduct make_product(std::vector<std::string> names, std::vector<std::pair<int, int>> edges,
                                 std::vector<int> orders) {
  std::vector<VertexGroup> groups;
  for (int n : orders) groups.push_back(VertexGroup::cyclic(n));
  return GraphProduct(DefGraph(std::move(names), edges), std::move(groups));
}

inline GraphProduct dinf() { return make_product({"u", "v"}, {}, {2, 2}); }
inline GraphProduct edge_product() { return make_product({"u", "v"}, {{0, 1}}, {2, 3}); }
inline GraphProduct p4() { return make_product({"a", "b", "c", "d"}, {{0, 1}, {1, 2}, {2, 3}}, {2, 2, 2, 2}); }
inline GraphProduct hexagon() {
  return make_product({"v1", "v2", "v3", "v4", "v5", "v6"}, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}},
                      {2, 2, 2, 2, 2, 2});
}
inline GraphProduct pentagon() {
  return make_product({"p1", "p2", "p3", "p4", "p5"}, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}}, {2, 2, 2, 2, 2});
}
inline GraphProduct square() { return make_product({"s1", "s2", "s3", "s4"}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}, {2, 2, 2, 2}); }
inline GraphProduct triangle() { return make_product({"x", "y", "z"}, {{0, 1}, {1, 2}, {2, 0}}, {2, 3, 2}); }

struct Named {
  std::string name;
  GraphProduct gp;
};

inline std::vector<Named> four_products() {
  return {{"dinf", dinf()}, {"edgeprod", edge_product()}, {"p4", p4()}, {"hex", hexagon()}};
}

}  // namespace qmlab::testing
