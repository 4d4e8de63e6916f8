#include <random>

#include "doctest.h"
#include "tinv/error.hpp"
#include "tinv/io.hpp"

using namespace tinv;

TEST_CASE("edge-list digraphs") {
  const Digraph d = io::parse_digraph("digraph 3\n0 1\n1 2\n2 0\n");
  CHECK(d == Digraph::cycle3());
  CHECK(io::parse_digraph("# comment\n\ndigraph 2\n  \n0 1\n").has_edge(0, 1));
  CHECK(io::parse_digraph(io::format_digraph(d)) == d);
  CHECK(io::parse_digraph("digraph 0\n").order() == 0);
}

TEST_CASE("edge-list errors carry line numbers") {
  auto line_of = [](const std::string& text) {
    try {
      io::parse_digraph(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  CHECK(line_of("digraph 2\n0 1\n1 0\n") == 3);
  CHECK(line_of("digraph 2\n0 1\n0 1\n") == 3);
  CHECK(line_of("digraph 2\n1 1\n") == 2);
  CHECK(line_of("digraph 2\n0 2\n") == 2);
  CHECK(line_of("graph 2\n") == 1);
  CHECK(line_of("digraph x\n") == 1);
  CHECK(line_of("digraph 3\n0 1 2\n") == 2);
  CHECK_THROWS_AS(io::parse_digraph(""), ParseError);
}

TEST_CASE("compact tournaments") {
  const Digraph c = io::parse_compact("t:3:4");
  CHECK(c.is_tournament());
  CHECK_FALSE(is_acyclic(c));
  CHECK(c.has_edge(0, 2));
  CHECK(c.has_edge(2, 1));
  CHECK(c.has_edge(1, 0));
  CHECK(io::format_compact(c) == "t:3:4");
  CHECK(io::format_compact(Digraph::transitive(3)) == "t:3:e");
  CHECK(io::format_compact(Digraph(1)) == "t:1:0");
  CHECK(io::parse_compact("t:0:0").order() == 0);
  CHECK_THROWS_AS(io::parse_compact("t:3:5"), ParseError);   // pad bit set
  CHECK_THROWS_AS(io::parse_compact("t:3:04"), ParseError);  // digit count
  CHECK_THROWS_AS(io::parse_compact("t:3:g"), ParseError);
  CHECK_THROWS_AS(io::parse_compact("3:4"), ParseError);
  CHECK_THROWS_AS(io::format_compact(Digraph(3)), std::invalid_argument);

  std::mt19937_64 rng(41);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = rng() % 12;
    const Digraph d = tournament_from_code(n, rng() & gf2::low_mask(pair_count(n)));
    const std::string s = io::format_compact(d);
    CHECK(io::parse_compact(s) == d);
    CHECK(io::parse_digraph(s) == d);
    CHECK(io::format_compact(io::parse_compact(s)) == s);
  }
}

TEST_CASE("graphs") {
  Graph g(4);
  g.add_edge(0, 3);
  g.add_edge(1, 2);
  CHECK(io::parse_graph(io::format_graph(g)) == g);
  CHECK_THROWS_AS(io::parse_graph("graph 2\n0 1\n1 0\n"), ParseError);
  CHECK_THROWS_AS(io::parse_graph("graph 2\n0 0\n"), ParseError);
}

TEST_CASE("loading") {
  CHECK(io::load_digraph("t:3:4").order() == 3);
  CHECK_THROWS_AS(io::load_digraph("no/such/file.dg"), ParseError);
  CHECK_THROWS_AS(io::read_file("no/such/file"), ParseError);
}
