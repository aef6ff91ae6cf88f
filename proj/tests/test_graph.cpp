#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include <curvreg/graph.hpp>
#include <curvreg/synthetic.hpp>

#include "oracles.hpp"

using namespace curvreg;
using Catch::Matchers::ContainsSubstring;

TEST_CASE("from_edges normalizes raw edge input") {
  // duplicate in both orientations + self-loop
  Graph g = Graph::from_edges(3, {{1, 0}, {0, 1}, {2, 2}, {0, 1}, {1, 2}});
  REQUIRE(g.n == 3);
  REQUIRE(g.edges == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
  REQUIRE(g.adj[0] == std::vector<int>{1});
  REQUIRE(g.adj[1] == std::vector<int>{0, 2});
  REQUIRE(g.adj[2] == std::vector<int>{1});
  REQUIRE(g.degree(1) == 2);
  REQUIRE(g.num_edges() == 2);

  SECTION("adjacency lists are sorted ascending") {
    Graph h = Graph::from_edges(5, {{0, 4}, {0, 2}, {0, 1}, {0, 3}});
    REQUIRE(h.adj[0] == std::vector<int>{1, 2, 3, 4});
  }
  SECTION("out-of-range endpoints are rejected") {
    REQUIRE_THROWS_AS(Graph::from_edges(2, {{0, 2}}), std::invalid_argument);
    REQUIRE_THROWS_AS(Graph::from_edges(2, {{-1, 0}}), std::invalid_argument);
  }
}

TEST_CASE("has_edge agrees with adjacency scan") {
  Graph g = oracles::random_graph(20, 0.2, 7u);
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) {
      bool scan = false;
      for (int w : g.adj[i]) scan = scan || (w == j);
      REQUIRE(g.has_edge(i, j) == scan);
    }
}

TEST_CASE("edge list parsing") {
  SECTION("comments, blanks, and first-appearance ids") {
    std::istringstream in(
        "# a comment\n"
        "\n"
        "b a\n"
        "a c\n"
        "   # indented comment\n"
        "c b\n");
    Graph g = load_edge_list(in);
    REQUIRE(g.n == 3);
    // ids are interned in order of first appearance: b=0, a=1, c=2
    REQUIRE(g.id_of == std::vector<std::string>{"b", "a", "c"});
    REQUIRE(g.num_edges() == 3);
    REQUIRE(g.has_edge(0, 1));  // b-a
    REQUIRE(g.has_edge(1, 2));  // a-c
    REQUIRE(g.has_edge(0, 2));  // c-b
  }
  SECTION("malformed line reports its line number") {
    std::istringstream in("a b\nx y z\n");
    REQUIRE_THROWS_WITH(load_edge_list(in), ContainsSubstring("line 2"));
  }
  SECTION("single-token line is malformed") {
    std::istringstream in("a\n");
    REQUIRE_THROWS_AS(load_edge_list(in), std::runtime_error);
  }
  SECTION("no usable edges") {
    std::istringstream in("# nothing here\n");
    REQUIRE_THROWS_WITH(load_edge_list(in), ContainsSubstring("no usable edges"));
  }
  SECTION("self-loops alone do not make a usable graph") {
    std::istringstream in("a a\n");
    REQUIRE_THROWS_AS(load_edge_list(in), std::runtime_error);
  }
}

TEST_CASE("label parsing") {
  std::istringstream ein("a b\nb c\nc d\n");
  Graph g = load_edge_list(ein);

  SECTION("classes densified by first appearance; unlabeled nodes are -1") {
    std::istringstream lin("a red\nc blue\nb red\n");
    LabelMap lm = load_labels(lin, g);
    REQUIRE(lm.num_classes == 2);
    REQUIRE(lm.label_of[0] == 0);   // a -> red
    REQUIRE(lm.label_of[1] == 0);   // b -> red
    REQUIRE(lm.label_of[2] == 1);   // c -> blue
    REQUIRE(lm.label_of[3] == -1);  // d unlabeled
    REQUIRE(lm.labeled_ids() == std::vector<int>{0, 1, 2});
  }
  SECTION("unknown node token is reported with its name and line") {
    std::istringstream lin("a red\nzz blue\n");
    REQUIRE_THROWS_WITH(load_labels(lin, g),
                        ContainsSubstring("zz") && ContainsSubstring("line 2"));
  }
  SECTION("empty label file is an error") {
    std::istringstream lin("# only a comment\n");
    REQUIRE_THROWS_AS(load_labels(lin, g), std::runtime_error);
  }
}

TEST_CASE("largest connected component") {
  SECTION("connected graph is returned whole") {
    Graph g = path_graph(6);
    std::vector<int> map;
    Graph lcc = largest_connected_component(g, &map);
    REQUIRE(lcc.n == 6);
    REQUIRE(lcc.edges == g.edges);
    for (int v = 0; v < 6; ++v) REQUIRE(map[v] == v);
  }
  SECTION("smaller components are dropped and ids remapped") {
    // path 0-1-2-3 plus a separate edge 4-5 plus isolated 6
    Graph g = Graph::from_edges(7, {{0, 1}, {1, 2}, {2, 3}, {4, 5}});
    std::vector<int> map;
    Graph lcc = largest_connected_component(g, &map);
    REQUIRE(lcc.n == 4);
    REQUIRE(lcc.num_edges() == 3);
    REQUIRE(map == std::vector<int>{0, 1, 2, 3, -1, -1, -1});
  }
  SECTION("size ties go to the component with the smallest node id") {
    Graph g = Graph::from_edges(4, {{2, 3}, {0, 1}});
    std::vector<int> map;
    Graph lcc = largest_connected_component(g, &map);
    REQUIRE(lcc.n == 2);
    REQUIRE(map[0] == 0);
    REQUIRE(map[1] == 1);
    REQUIRE(map[2] == -1);
  }
  SECTION("original string ids survive the remap") {
    std::istringstream in("x y\ny z\nlonely1 lonely2\n");
    Graph g = load_edge_list(in);
    Graph lcc = largest_connected_component(g);
    REQUIRE(lcc.n == 3);
    REQUIRE(lcc.id_of == std::vector<std::string>{"x", "y", "z"});
  }
  SECTION("labels are remapped alongside") {
    Graph g = Graph::from_edges(5, {{0, 1}, {1, 2}, {3, 4}});
    LabelMap lm;
    lm.label_of = {0, 1, 0, 1, 1};
    lm.num_classes = 2;
    std::vector<int> map;
    Graph lcc = largest_connected_component(g, &map);
    LabelMap out = remap_labels(lm, map, lcc.n);
    REQUIRE(out.label_of == std::vector<int>{0, 1, 0});
    REQUIRE(out.num_classes == 2);
  }
}

TEST_CASE("graph hash is content-determined") {
  Graph a = path_graph(10);
  Graph b = path_graph(10);
  Graph c = cycle_graph(10);
  REQUIRE(graph_hash(a) == graph_hash(b));
  REQUIRE(graph_hash(a) != graph_hash(c));
}

TEST_CASE("synthetic generators have the promised shapes") {
  SECTION("path") {
    Graph g = path_graph(5);
    REQUIRE(g.n == 5);
    REQUIRE(g.num_edges() == 4);
    REQUIRE(g.degree(0) == 1);
    REQUIRE(g.degree(2) == 2);
  }
  SECTION("cycle") {
    Graph g = cycle_graph(5);
    REQUIRE(g.num_edges() == 5);
    for (int v = 0; v < 5; ++v) REQUIRE(g.degree(v) == 2);
  }
  SECTION("star") {
    Graph g = star_graph(5);
    REQUIRE(g.n == 6);
    REQUIRE(g.degree(0) == 5);
    REQUIRE(g.num_edges() == 5);
  }
  SECTION("complete") {
    Graph g = complete_graph(6);
    REQUIRE(g.num_edges() == 15);
  }
  SECTION("barbell") {
    Graph g = barbell_graph(4);
    REQUIRE(g.n == 8);
    // two K4s plus one bridge
    REQUIRE(g.num_edges() == 6 + 6 + 1);
    REQUIRE(g.has_edge(3, 4));
  }
  SECTION("two-block generator is labeled, connected, and seeded") {
    LabeledGraph lg = two_block_graph(20, 0.15, 5);
    REQUIRE(lg.graph.n == 40);
    REQUIRE(largest_connected_component(lg.graph).n == 40);
    REQUIRE(lg.labels.num_classes == 2);
    int zeros = 0;
    for (int v = 0; v < 20; ++v) zeros += (lg.labels.label_of[v] == 0);
    REQUIRE(zeros == 20);
    LabeledGraph again = two_block_graph(20, 0.15, 5);
    REQUIRE(graph_hash(lg.graph) == graph_hash(again.graph));
    LabeledGraph other = two_block_graph(20, 0.15, 6);
    REQUIRE(graph_hash(lg.graph) != graph_hash(other.graph));
  }
  SECTION("planted partition matches its block structure") {
    LabeledGraph lg = planted_partition({8, 12, 10}, 0.3, 0.02, 11);
    REQUIRE(lg.graph.n == 30);
    REQUIRE(lg.labels.num_classes == 3);
    REQUIRE(largest_connected_component(lg.graph).n == 30);
    REQUIRE(lg.labels.label_of[0] == 0);
    REQUIRE(lg.labels.label_of[8] == 1);
    REQUIRE(lg.labels.label_of[20] == 2);
  }
}
