#include <doctest.h>

#include <sstream>

#include "coreeff/graph.hpp"
#include "support.hpp"

using namespace testsupport;

namespace {

const char* kExample =
    "(skel s1) (skel s2) (dirt d1) (dirt d2) "
    "(typaram a1 (param s1)) (typaram a1p (param s1)) (typaram a1pp (param s1)) "
    "(typaram a2 (param s2)) (typaram a2p (param s2)) (typaram a2pp (param s2)) "
    "(tyco w1 (param a1) (param a1pp)) (tyco w2 (param a1p) (param a1pp)) (tyco w3 (param a2) (param a2p)) "
    "(dco p1 (dirt () d1) (dirt (Get) d2)) (dco p2 (dirt () d1) (dirt (Put)))";

int count_lines(const std::string& s, const std::string& needle) {
  std::istringstream in(s);
  int n = 0;
  for (std::string line; std::getline(in, line);)
    if (line.find(needle) != std::string::npos) ++n;
  return n;
}

}  // namespace

TEST_CASE("graphs of a reduced context") {
  const ParamContext ctx = context_of(kExample, "(op Get (unit) (base bool)) (op Put (unit) (base bool))");
  const Graphs g = build_graphs(ctx);
  REQUIRE(g.types.components.size() == 2);
  CHECK(g.types.components[0].nodes == std::vector<Name>{"a1", "a1p", "a1pp"});
  CHECK(g.types.components[1].nodes == std::vector<Name>{"a2", "a2p", "a2pp"});
  CHECK(g.types.components[0].edges.size() == 2);
  CHECK(g.types.components[1].edges.size() == 1);
  REQUIRE(g.dirts.edges.size() == 2);
  CHECK(g.dirts.edges[0].dst == std::optional<Name>("d2"));
  CHECK(g.dirts.edges[0].label == OpSet{"Get"});
  CHECK_FALSE(g.dirts.edges[1].dst.has_value());
  CHECK(metrics(g) == MetricsRecord{2, 2, 6, 3});
  CHECK(to_dot(g) == read_file(COREEFF_SOURCE_DIR "/tests/golden/graph_example.dot"));

  const Graphs empty = build_graphs(ParamContext{});
  CHECK(empty.types.components.empty());
  CHECK(metrics(empty) == MetricsRecord{});
  CHECK(to_dot(empty) == "digraph constraints {\n}\n");
}

TEST_CASE("apply_if graph") {
  const CorpusItem it = parse_corpus(read_file(COREEFF_SOURCE_DIR "/corpus/worked.ce")).at(0);
  const Graphs g = build_graphs(it.context);
  REQUIRE(g.types.components.size() == 1);
  CHECK(metrics(g) == MetricsRecord{3, 2, 5, 4});
  const std::string dot = to_dot(g);
  CHECK(count_lines(dot, "shape=ellipse") == 5);
  CHECK(count_lines(dot, "style=solid") == 4);
}
