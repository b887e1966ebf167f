#include <CLI11.hpp>
#include <json.hpp>

#include <qmlab/ball.hpp>
#include <qmlab/contact.hpp>
#include <qmlab/diagrams.hpp>
#include <qmlab/hyperplanes.hpp>
#include <qmlab/io.hpp>
#include <qmlab/polygonal.hpp>

#include <iostream>
#include <random>

using namespace qmlab;
using json = nlohmann::ordered_json;

namespace {

enum Exit { ok = 0, usage = 1, check_failed = 2, budget = 3, io = 4 };

struct Config {
  std::string presentation;
  std::string input;
  std::string output;
  std::string format = "dot";
  std::string graph = "contact";
  std::string word;
  std::string bottleneck = "7/2";
  int radius = 3;
  int epsilon = 1;
  int margin = 1;
  int corpus = 0;
  std::uint64_t seed = 1;
  std::size_t budget_vertices = kDefaultBallBudget;
  std::size_t budget_states = 100000;
};

void emit(const Config& c, const std::string& text) {
  if (c.output.empty()) std::cout << text;
  else write_file(c.output, text);
}

void emit(const Config& c, const json& j) { emit(c, j.dump(2) + "\n"); }

std::string render(const Config& c, const ExportGraph& g) {
  if (c.format == "dot") return to_dot(g);
  if (c.format == "graphml") return to_graphml(g);
  return to_json(g).dump(2) + "\n";
}

HalfInteger parse_bound(const std::string& s) {
  if (auto slash = s.find('/'); slash != std::string::npos) {
    if (s.substr(slash + 1) != "2") throw InputError("bottleneck bound must be a multiple of 1/2");
    return HalfInteger::from_twice(std::stoi(s.substr(0, slash)));
  }
  const double x = std::stod(s);
  if (x * 2 != static_cast<int>(x * 2)) throw InputError("bottleneck bound must be a multiple of 1/2");
  return HalfInteger::from_twice(static_cast<int>(x * 2));
}

std::string hyperplane_str(const GraphProduct& gp, const Hyperplane& h) {
  return gp.graph.name(h.vertex) + "@[" + format_word(gp, {h.base.begin(), h.base.end()}) + "]";
}

int cmd_check_qm(const Config& c) {
  const auto doc = nlohmann::json::parse(read_file(c.presentation), nullptr, false);
  if (doc.is_discarded()) throw InputError("input is not JSON");
  QuasiMedianVerdict v;
  json report;
  if (doc.contains("graph")) {
    v = check_quasi_median(load_graph_view(doc));
    report["mode"] = "exact";
  } else {
    auto ball = build_ball(load_presentation(doc), c.radius, c.budget_vertices);
    v = check_quasi_median(ball, c.margin);
    report["mode"] = "interior";
    report["radius"] = c.radius;
    report["margin"] = c.margin;
    report["ball_vertices"] = ball.size();
  }
  report["verdict"] = v.holds == Verdict::yes ? "pass" : v.holds == Verdict::no ? "fail" : "inconclusive";
  report["triples_tested"] = v.triples_tested;
  report["triples_skipped"] = v.triples_skipped;
  report["hexagons_tested"] = v.hexagons_tested;
  report["hexagons_skipped"] = v.hexagons_skipped;
  if (v.witness) report["witness"] = {{"axiom", v.witness->axiom}, {"vertices", v.witness->vertices}};
  emit(c, report);
  return v.holds == Verdict::no ? check_failed : ok;
}

int cmd_ball(const Config& c) {
  auto gp = load_presentation_file(c.presentation);
  auto ball = build_ball(gp, c.radius, c.budget_vertices);
  auto g = export_graph(ball.graph(), "ball");
  for (int i = 0; i < ball.size(); ++i)
    g.nodes[i].attrs = {{"word", format_word(gp, {ball.element(i).begin(), ball.element(i).end()})},
                        {"depth", std::to_string(ball.depth(i))}};
  emit(c, render(c, g));
  return ok;
}

int cmd_contact(const Config& c) {
  auto gp = load_presentation_file(c.presentation);
  auto ball = build_ball(gp, c.radius, c.budget_vertices);
  if (c.graph == "quotient") {
    auto orbit = quotient_crossing(build_view(ball, GraphKind::crossing, c.margin));
    auto g = export_graph(orbit.graph, "quotient");
    for (std::size_t v = 0; v < g.nodes.size(); ++v) g.nodes[v].attrs = {{"label", gp.graph.name(static_cast<VertexId>(v))}};
    emit(c, render(c, g));
    return orbit.isomorphism ? ok : check_failed;
  }
  const auto kind = c.graph == "crossing" ? GraphKind::crossing : GraphKind::contact;
  auto view = build_view(ball, kind, c.margin);
  auto dist = view_distances(view);
  auto g = export_graph(view.graph, c.graph);
  for (int i = 0; i < view.size(); ++i) {
    bool certified = true;
    for (int j = 0; j < view.size() && certified; ++j) certified = dist.certified(i, j);
    const auto& h = view.nodes[i];
    g.nodes[i].attrs = {{"label", gp.graph.name(h.vertex)},
                        {"base", format_word(gp, {h.base.begin(), h.base.end()})},
                        {"margin", std::to_string(c.margin)},
                        {"reliability", certified ? "certified" : "best-effort"}};
  }
  for (auto [a, b] : g.edges) {
    auto it = std::find_if(view.relations.begin(), view.relations.end(), [&](const Relation& r) {
      return (r.a == a && r.b == b) || (r.a == b && r.b == a);
    });
    g.edge_attrs.push_back({{"relation", it == view.relations.end() ? "?" : to_string(it->kind)}});
  }
  emit(c, render(c, g));
  return ok;
}

// A hyperplane at least `far` from h in the contact graph, through a power
// of the complement-walk element.
std::optional<Hyperplane> far_hyperplane(const GraphProduct& gp, const Hyperplane& h, int far) {
  const NormalForm g = complement_walk_element(gp);
  for (int n = 1; n <= 4 * far + 4; ++n) {
    const NormalForm gn = power(gp, g, n);
    for (VertexId v = 0; v < gp.vertex_count(); ++v) {
      Hyperplane k = hyperplane_through(gp, gn, v);
      auto d = hyperplane_distance(gp, h, k, GraphKind::contact);
      if (d && *d >= far) return k;
    }
  }
  return std::nullopt;
}

int cmd_experiments(const Config& c) {
  auto gp = load_presentation_file(c.presentation);
  auto ball = build_ball(gp, c.radius, c.budget_vertices);
  json report;
  report["radius"] = c.radius;
  report["margin"] = c.margin;
  report["epsilon"] = c.epsilon;
  bool failed = false;
  auto status = [&](bool pass) {
    failed = failed || !pass;
    return pass ? "pass" : "fail";
  };

  const auto klass = classify_group(gp);
  report["classification"] = to_string(klass);

  auto contact = build_view(ball, GraphKind::contact, c.margin);
  auto crossing = build_view(ball, GraphKind::crossing, c.margin);
  {
    auto dist = view_distances(contact);
    const HalfInteger bound = parse_bound(c.bottleneck);
    auto r = bottleneck_check(contact.graph, bound, [&](int a, int b) { return dist.certified(a, b); });
    json j{{"status", status(r.pass)}, {"bound", bound.str()}, {"pairs_checked", r.pairs_checked},
           {"pairs_short", r.pairs_short}, {"nodes", contact.size()}};
    if (r.witness)
      j["witness"] = {hyperplane_str(gp, contact.nodes[r.witness->first]),
                      hyperplane_str(gp, contact.nodes[r.witness->second])};
    report["bottleneck"] = j;
    report["delta_estimate"] = delta_estimate(contact.graph).str();
  }
  {
    auto r = special_check(contact);
    json j{{"status", status(r.pass)}};
    if (r.same_orbit_contact)
      j["same_orbit_contact"] = {hyperplane_str(gp, contact.nodes[r.same_orbit_contact->first]),
                                 hyperplane_str(gp, contact.nodes[r.same_orbit_contact->second])};
    if (r.mixed_labels)
      j["mixed_labels"] = {gp.graph.name(r.mixed_labels->first), gp.graph.name(r.mixed_labels->second)};
    report["special"] = j;
  }
  {
    auto r = osculation_bound_check(crossing);
    json j{{"status", status(r.pass)}, {"bound", r.bound}, {"worst", r.worst}, {"pairs", r.pairs},
           {"skipped", r.skipped}};
    if (r.witness)
      j["witness"] = {hyperplane_str(gp, crossing.nodes[r.witness->first]),
                      hyperplane_str(gp, crossing.nodes[r.witness->second])};
    report["osculation"] = j;
  }
  {
    auto r = distortion_check(crossing);
    report["distortion"] = {{"status", r.skipped ? "skipped" : status(r.pass)}, {"factor", r.factor},
                            {"pairs", r.pairs}};
  }
  {
    FewPlanesReport worst;
    std::size_t pairs = 0;
    bool pass = true;
    for (int v = 0; v < ball.size(); ++v) {
      if (!ball.interior(v, c.margin)) continue;
      for (int w = 0; w < ball.size(); ++w) {
        if (!ball.interior(w, c.margin)) continue;
        auto r = fewplanes_count(gp, ball.element(v), ball.element(w));
        ++pairs;
        pass = pass && r.pass;
        if (r.count >= worst.count) worst = r;
      }
    }
    report["fewplanes"] = {{"status", status(pass)}, {"pairs", pairs}, {"max_count", worst.count},
                           {"bound", (gp.graph.max_degree() + 1) * (gp.graph.max_degree() + 1)}};
  }
  {
    json j;
    const Hyperplane h = hyperplane_through(gp, NormalForm{}, 0);
    std::optional<Hyperplane> k;
    if (klass != GroupClass::contact_bounded) k = far_hyperplane(gp, h, 2 * c.epsilon + 6);
    if (!k) {
      j["status"] = "skipped";
    } else {
      auto r = acylindricity_experiment(ball, h, *k, c.epsilon);
      j = {{"status", status(r.pass)}, {"distance", r.distance}, {"count", r.count},
           {"bound", static_cast<double>(r.bound)}, {"degree_bound", r.degree_bound},
           {"from", hyperplane_str(gp, h)}, {"to", hyperplane_str(gp, *k)}};
    }
    report["acylindricity"] = j;
  }
  {
    auto r = unbounded_witness(gp, 3);
    json j{{"classification", to_string(r.classification)}};
    if (r.classification == GroupClass::contact_bounded) {
      j["status"] = "contact graph bounded";
    } else {
      j["status"] = status(r.pass);
      j["power"] = r.power;
      j["certified_distance"] = r.certified_distance;
      if (r.element) j["element"] = format_word(gp, {r.element->begin(), r.element->end()});
    }
    report["unbounded"] = j;
  }
  emit(c, report);
  return failed ? check_failed : ok;
}

json trace_json(const MinimizeResult& r) {
  json t = json::array();
  for (const auto& s : r.path)
    t.push_back({{"move", roman(s.site.condition)},
                 {"name", to_string(s.site.condition)},
                 {"piece", s.site.first},
                 {"span", s.site.span},
                 {"mirrored", s.site.mirrored},
                 {"before", {s.before.hats, s.before.dots}},
                 {"after", {s.after.hats, s.after.dots}}});
  return t;
}

int cmd_reduce(const Config& c) {
  auto gp = load_presentation_file(c.presentation);
  json report;
  if (c.corpus > 0) {
    std::mt19937_64 rng(c.seed);
    auto alphabet = random_alphabet(gp, 4, rng);
    int zero = 0, exhausted = 0;
    json words = json::array();
    for (const auto& w : k_word_corpus(alphabet, c.seed, c.corpus)) {
      auto r = minimize_polygonal(alphabet, initial_rep(alphabet, w), c.budget_states);
      zero += r.rep.pieces.empty();
      exhausted += r.exhausted;
      words.push_back({{"word", format_letters(alphabet, w)}, {"pieces", r.rep.pieces.size()}, {"moves", r.path.size()}});
    }
    json images = json::array();
    for (int s = 0; s < alphabet.generators(); ++s) {
      const auto& g = alphabet.generator_image(s);
      images.push_back(format_word(gp, {g.begin(), g.end()}));
    }
    report = {{"seed", c.seed}, {"images", images}, {"words", c.corpus}, {"zero_piece", zero},
              {"exhausted", exhausted}, {"results", words}};
    emit(c, report);
    if (exhausted) return budget;
    const auto girth = gp.graph.girth();
    return zero < c.corpus && (!girth || *girth >= 6) ? check_failed : ok;
  }
  if (c.input.empty()) throw InputError("reduce needs an input file or --corpus");
  auto in = load_reduce_input(gp, nlohmann::json::parse(read_file(c.input)));
  if (!in.alphabet.image(in.word).empty()) throw HypothesisError("word does not evaluate to the identity");
  auto r = minimize_polygonal(in.alphabet, initial_rep(in.alphabet, in.word), c.budget_states);
  json pieces = json::array();
  for (const auto& p : r.rep.pieces)
    pieces.push_back({{"label", p.label.str(gp.graph)}, {"letters", format_letters(in.alphabet, p.letters)}});
  report = {{"word", format_letters(in.alphabet, in.word)}, {"pieces", r.rep.pieces.size()},
            {"remaining", pieces}, {"irreducible", r.irreducible}, {"exhausted", r.exhausted},
            {"states", r.expanded}, {"trace", trace_json(r)}};
  emit(c, report);
  return r.exhausted ? budget : ok;
}

int cmd_vkd(const Config& c) {
  auto gp = load_presentation_file(c.presentation);
  const std::string text = c.input.empty() ? c.word : read_file(c.input);
  auto w = parse_word(gp, text).word;
  auto d = build_dual_diagram(gp, w);
  ExportGraph g;
  g.name = "vkd";
  const int n = d.length();
  for (int i = 0; i < n; ++i)
    g.nodes.push_back({"b" + std::to_string(i), {{"kind", "boundary"}, {"letter", format_word(gp, {&d.boundary[i], 1})}}});
  for (int i = 0; i < n && n > 1; ++i) {
    g.edges.emplace_back(i, (i + 1) % n);
    g.edge_attrs.push_back({{"kind", "outer"}});
  }
  static const char* palette[] = {"red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan"};
  std::vector<std::vector<int>> ids(d.components.size());
  for (std::size_t ci = 0; ci < d.components.size(); ++ci) {
    const auto& comp = d.components[ci];
    for (std::size_t j = 0; j < comp.nodes.size(); ++j) {
      const auto& node = comp.nodes[j];
      if (node.kind == NodeKind::boundary) {
        ids[ci].push_back(node.position);
        continue;
      }
      ids[ci].push_back(static_cast<int>(g.nodes.size()));
      g.nodes.push_back({"c" + std::to_string(ci) + "n" + std::to_string(j),
                         {{"kind", node.kind == NodeKind::crossing ? "crossing" : "branch"},
                          {"component", std::to_string(ci)}}});
    }
    for (auto [a, b] : comp.edges) {
      g.edges.emplace_back(ids[ci][a], ids[ci][b]);
      g.edge_attrs.push_back({{"component", std::to_string(ci)},
                              {"vertex", gp.graph.name(comp.vertex)},
                              {"color", palette[ci % std::size(palette)]}});
    }
  }
  for (const auto& x : d.crossings) {
    g.edges.emplace_back(ids[x.first][x.first_node], ids[x.second][x.second_node]);
    g.edge_attrs.push_back({{"kind", "crossing"}, {"style", "dashed"}});
  }
  emit(c, render(c, g));
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quasi-median graph and graph product experiments"};
  app.require_subcommand(1);
  Config c;

  auto common = [&](CLI::App* sub) {
    sub->add_option("presentation", c.presentation, "Presentation JSON file")->required();
    sub->add_option("--output,-o", c.output, "Write to this file instead of stdout");
  };
  auto radius = [&](CLI::App* sub) {
    sub->add_option("--radius", c.radius, "Ball radius")->check(CLI::NonNegativeNumber);
    sub->add_option("--budget-vertices", c.budget_vertices, "Ball vertex budget");
  };
  auto format = [&](CLI::App* sub) {
    sub->add_option("--format", c.format, "Export format")->check(CLI::IsMember({"dot", "graphml", "json"}));
  };

  auto* qm = app.add_subcommand("check-qm", "Check the quasi-median axioms on a ball or a raw graph");
  common(qm);
  radius(qm);
  qm->add_option("--margin", c.margin, "Interior margin")->check(CLI::NonNegativeNumber);

  auto* ball = app.add_subcommand("ball", "Export a ball of the Cayley graph");
  common(ball);
  radius(ball);
  format(ball);

  auto* contact = app.add_subcommand("contact", "Export the contact, crossing or quotient graph");
  common(contact);
  radius(contact);
  format(contact);
  contact->add_option("--margin", c.margin, "Hyperplane reliability margin")->check(CLI::NonNegativeNumber);
  contact->add_option("--graph", c.graph, "Which graph")->check(CLI::IsMember({"contact", "crossing", "quotient"}));

  auto* exp = app.add_subcommand("experiments", "Run every contact-graph check");
  common(exp);
  radius(exp);
  exp->add_option("--margin", c.margin, "Hyperplane reliability margin")->check(CLI::NonNegativeNumber);
  exp->add_option("--epsilon", c.epsilon, "Acylindricity epsilon")->check(CLI::NonNegativeNumber);
  exp->add_option("--bottleneck", c.bottleneck, "Bottleneck bound D, e.g. 7/2");

  auto* red = app.add_subcommand("reduce", "Minimize a polygonal representation");
  common(red);
  red->add_option("input", c.input, "JSON with generator images and a word");
  red->add_option("--corpus", c.corpus, "Reduce this many seeded random words instead")->check(CLI::NonNegativeNumber);
  red->add_option("--seed", c.seed, "Corpus seed");
  red->add_option("--budget", c.budget_states, "Search state budget");

  auto* vkd = app.add_subcommand("vkd", "Export the dual diagram of an identity word");
  common(vkd);
  format(vkd);
  vkd->add_option("input", c.input, "File holding the word");
  vkd->add_option("--word", c.word, "The word itself");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return usage;
  }

  try {
    if (*qm) return cmd_check_qm(c);
    if (*ball) return cmd_ball(c);
    if (*contact) return cmd_contact(c);
    if (*exp) return cmd_experiments(c);
    if (*red) return cmd_reduce(c);
    if (*vkd) return cmd_vkd(c);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return io;
  } catch (const BudgetError& e) {
    std::cerr << "budget: " << e.what() << "\n";
    return budget;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage;
  } catch (const std::logic_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage;
  }
  return usage;
}
