#include <gtest/gtest.h>

#include <qmlab/io.hpp>

#include "fixtures.hpp"

using namespace qmlab;
using namespace qmlab::testing;

namespace {
std::string data(const std::string& f) { return std::string(QMLAB_DATA_DIR) + "/" + f; }
}  // namespace

TEST(Presentation, LoadsShippedFiles) {
  for (const char* f : {"dinf.json", "edgeprod.json", "p4.json", "hex.json", "complete.json", "figure_path.json"})
    EXPECT_NO_THROW(load_presentation_file(data(f))) << f;
  auto hex = load_presentation_file(data("hex.json"));
  EXPECT_EQ(hex.vertex_count(), 6);
  EXPECT_EQ(hex.graph.girth(), 6);
}

TEST(Presentation, TableGroupsExpand) {
  auto gp = load_presentation_file(data("complete.json"));
  ASSERT_EQ(gp.vertex_count(), 3);
  EXPECT_EQ(gp.group(1).order(), 3);
  EXPECT_EQ(gp.group(2).order(), 2);
  EXPECT_EQ(gp.group(2).mul(1, 1), 0);
  EXPECT_TRUE(gp.graph.complete());
}

TEST(Presentation, RejectsMalformedInput) {
  EXPECT_THROW(load_presentation_text("{"), InputError);
  EXPECT_THROW(load_presentation_text(R"({"vertices": [{"name": "a"}]})"), InputError);
  EXPECT_THROW(load_presentation_text(R"({"vertices": [{"name": "a", "group": {"type": "free"}}]})"), InputError);
  EXPECT_THROW(load_presentation_text(
                   R"({"vertices": [{"name": "a", "group": {"type": "cyclic", "n": 2}}], "edges": [["a", "b"]]})"),
               InputError);
  EXPECT_THROW(load_presentation_text(R"({"vertices": [{"name": "a", "group": {"type": "table",
               "table": [[0, 1], [0, 1]]}}]})"),
               InputError);
  EXPECT_THROW(load_presentation_file(data("missing.json")), IoError);
}

TEST(Words, ParseAndFormat) {
  auto gp = edge_product();
  auto w = parse_word(gp, "u:1 v:2 v:1^-1");
  ASSERT_EQ(w.word.size(), 3u);
  EXPECT_FALSE(w.cyclic);
  EXPECT_EQ(w.word[2].element, 2);
  EXPECT_EQ(format_word(gp, w.word), "u:1 v:2 v:2");
  EXPECT_TRUE(parse_word(gp, "cyclic u:1 u:1").cyclic);
  EXPECT_TRUE(parse_word(gp, "").word.empty());
  for (const char* bad : {"u1", "w:1", "u:0", "u:2", "v:x", "v:1x"}) EXPECT_THROW(parse_word(gp, bad), InputError) << bad;
}

TEST(Letters, ParseAndFormat) {
  auto gp = hexagon();
  auto in = load_reduce_input(gp, nlohmann::json::parse(R"({"images": ["v1:1", "v2:1 v6:1"],
      "word": "t_v1(s0) s1 t_v1(s0)^-1 s1^-1"})"));
  ASSERT_EQ(in.word.size(), 4u);
  EXPECT_EQ(in.word[0].projection, 0);
  EXPECT_TRUE(in.word[2].inverse);
  EXPECT_EQ(format_letters(in.alphabet, in.word), "t_v1(s0) s1 t_v1(s0)^-1 s1^-1");
  EXPECT_TRUE(in.alphabet.image(in.word).empty());
  for (const char* bad : {"s2", "x0", "t_v9(s0)", "t_v1(s0", "s"}) EXPECT_THROW(parse_letters(in.alphabet, bad), InputError);
  EXPECT_THROW(load_reduce_input(gp, nlohmann::json::parse(R"({"images": ["v1:1 v4:1"]})")), HypothesisError);
}

TEST(Export, DotGraphmlJson) {
  auto g = export_graph(path_graph(3), "p\"3");
  g.nodes[0].attrs = {{"label", "a<b"}};
  auto dot = to_dot(g);
  EXPECT_NE(dot.find("graph \"p\\\"3\" {"), std::string::npos);
  EXPECT_NE(dot.find("\"0\" -- \"1\""), std::string::npos);
  EXPECT_NE(dot.find("label=\"a<b\""), std::string::npos);
  auto xml = to_graphml(g);
  EXPECT_NE(xml.find("a&lt;b"), std::string::npos);
  EXPECT_NE(xml.find("<edge source=\"1\" target=\"2\"/>"), std::string::npos);
  auto j = to_json(g);
  EXPECT_EQ(j["edges"].size(), 2u);
  EXPECT_EQ(j["nodes"][0]["label"], "a<b");
}

TEST(Export, EmptyGraph) {
  EXPECT_EQ(to_dot(export_graph(GraphView(0))), "graph \"G\" {\n}\n");
}

TEST(GraphDocument, LoadsRawGraph) {
  auto g = load_graph_view(nlohmann::json::parse(read_file(data("k112.json"))));
  EXPECT_EQ(g.size(), 4);
  EXPECT_EQ(g.edges().size(), 5u);
  EXPECT_THROW(load_graph_view(nlohmann::json::parse(R"({"graph": {"vertices": 2, "edges": [[0, 2]]}})")), InputError);
}
