#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "tinv/digraph.hpp"

using namespace tinv;

namespace {

Digraph c3() { return Digraph::cycle3(); }

bool has_cycle_bruteforce(const Digraph& d) {
  // Some permutation puts every edge forward iff acyclic.
  std::vector<std::size_t> seq(d.order());
  std::iota(seq.begin(), seq.end(), std::size_t{0});
  do {
    std::vector<std::size_t> pos(d.order());
    for (std::size_t i = 0; i < seq.size(); ++i) pos[seq[i]] = i;
    bool ok = true;
    for (const Edge& e : d.edges()) ok = ok && pos[e.from] < pos[e.to];
    if (ok) return false;
  } while (std::next_permutation(seq.begin(), seq.end()));
  return true;
}

Digraph random_digraph(std::mt19937_64& rng, std::size_t n) {
  Digraph d(n);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      switch (rng() % 3) {
        case 0: d.add_edge(u, v); break;
        case 1: d.add_edge(v, u); break;
        default: break;
      }
    }
  }
  return d;
}

}  // namespace

TEST_CASE("edge bookkeeping") {
  Digraph d(3);
  d.add_edge(0, 1);
  CHECK(d.has_edge(0, 1));
  CHECK_THROWS_AS(d.add_edge(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(d.add_edge(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(d.add_edge(2, 2), std::invalid_argument);
  d.reverse_edge(0, 1);
  CHECK(d.has_edge(1, 0));
  CHECK(d.edge_count() == 1);
  CHECK_FALSE(d.is_tournament());
  CHECK(c3().is_tournament());
}

TEST_CASE("invert") {
  CHECK(invert(c3(), VertexSet{}) == c3());
  const Digraph once = invert(c3(), VertexSet{0, 1});
  CHECK(once.has_edge(1, 0));
  CHECK(once.has_edge(1, 2));
  CHECK(once.has_edge(2, 0));
  CHECK(once.edge_count() == 3);
  CHECK(is_acyclic(once));
  CHECK(invert(once, VertexSet{0, 1}) == c3());
}

TEST_CASE("apply_family is order independent and self-inverse") {
  std::mt19937_64 rng(1);
  CHECK(apply_family(c3(), {}) == c3());
  CHECK(is_acyclic(apply_family(c3(), {VertexSet{0, 1}})));
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng() % 8;
    const Digraph d = random_digraph(rng, n);
    SetFamily f(rng() % 5);
    for (auto& x : f) x = VertexSet(rng() & gf2::low_mask(n));
    SetFamily g = f;
    std::shuffle(g.begin(), g.end(), rng);
    CHECK(apply_family(d, f) == apply_family(d, g));
    SetFamily twice = f;
    twice.insert(twice.end(), f.begin(), f.end());
    CHECK(apply_family(d, twice) == d);
    CHECK(apply_family(d, f).is_tournament() == d.is_tournament());
  }
}

TEST_CASE("acyclicity") {
  CHECK(is_acyclic(Digraph::transitive(4)));
  CHECK_FALSE(is_acyclic(c3()));
  CHECK(is_acyclic(Digraph(5)));
  CHECK(is_acyclic(Digraph(0)));
  std::mt19937_64 rng(2);
  for (int t = 0; t < 300; ++t) {
    const Digraph d = random_digraph(rng, 1 + rng() % 6);
    REQUIRE(is_acyclic(d) == !has_cycle_bruteforce(d));
    if (const auto order = topological_order(d)) {
      for (const Edge& e : d.edges()) CHECK(order->position(e.from) < order->position(e.to));
    }
  }
}

TEST_CASE("dijoin and kjoin") {
  const Digraph j = dijoin(c3(), c3());
  CHECK(j.order() == 6);
  CHECK(j.edge_count() == 15);
  CHECK(is_acyclic(dijoin(Digraph::transitive(3), Digraph::transitive(2))));
  std::mt19937_64 rng(4);
  for (int t = 0; t < 50; ++t) {
    const Digraph a = random_digraph(rng, rng() % 5);
    const Digraph b = random_digraph(rng, rng() % 5);
    CHECK(dijoin(a, b).edge_count() == a.edge_count() + b.edge_count() + a.order() * b.order());
  }
  const std::vector<Digraph> one{c3()};
  CHECK(kjoin(one) == c3());
  const std::vector<Digraph> two{c3(), c3()};
  CHECK(kjoin(two) == j);
  const std::vector<Digraph> three{c3(), c3(), c3()};
  CHECK(kjoin(three).order() == 9);
  CHECK(kjoin(three).edge_count() == 36);
}

TEST_CASE("sources and sinks") {
  const auto tt = sources_sinks(Digraph::transitive(3));
  CHECK(tt.sources == VertexSet{0});
  CHECK(tt.sinks == VertexSet{2});
  const auto cyc = sources_sinks(c3());
  CHECK(cyc.sources.empty());
  CHECK(cyc.sinks.empty());
  const auto single = sources_sinks(Digraph(1));
  CHECK(single.sources == VertexSet{0});
  CHECK(single.sinks == VertexSet{0});
}

TEST_CASE("twins") {
  CHECK(twins(Digraph(2)).size() == 1);
  CHECK(twins(c3()).empty());
  const auto tt = twins(Digraph::transitive(3));
  CHECK(tt == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 2}});
}

TEST_CASE("greedy decycling") {
  CHECK(greedy_decycling(Digraph(1)).empty());
  const SetFamily f = greedy_decycling(c3());
  REQUIRE(f.size() == 2);
  CHECK(f[0] == VertexSet{0, 1});
  CHECK(f[1] == VertexSet{1, 2});
  const Digraph r = apply_family(c3(), f);
  CHECK(r.has_edge(1, 0));
  CHECK(r.has_edge(2, 1));
  CHECK(r.has_edge(2, 0));

  std::mt19937_64 rng(9);
  for (int t = 0; t < 2000; ++t) {
    const std::size_t n = 1 + rng() % 10;
    const Digraph d = random_digraph(rng, n);
    const SetFamily g = greedy_decycling(d);
    CHECK(g.size() <= n - 1);
    const Digraph out = apply_family(d, g);
    CHECK(is_acyclic(out));
    for (const Edge& e : out.edges()) CHECK(e.from > e.to);
  }
}

TEST_CASE("tournament completion") {
  const Digraph t = Digraph::transitive(4);
  CHECK(tournament_completion(t, {}) == t);
  Digraph single(3);
  single.add_edge(0, 1);
  const Digraph done = tournament_completion(single, {});
  CHECK(done.is_tournament());
  CHECK(done.has_edge(0, 1));
  CHECK(is_acyclic(done));
  CHECK_THROWS_AS(tournament_completion(c3(), {}), std::invalid_argument);
  std::mt19937_64 rng(10);
  for (int t2 = 0; t2 < 200; ++t2) {
    const Digraph d = random_digraph(rng, 1 + rng() % 7);
    const SetFamily f = greedy_decycling(d);
    const Digraph c = tournament_completion(d, f);
    CHECK(c.is_tournament());
    CHECK(d.is_subgraph_of(c));
    CHECK(is_acyclic(apply_family(c, f)));
  }
}

TEST_CASE("diff graph") {
  CHECK(diff_graph(Digraph::transitive(4), Ordering::identity(4)).empty());
  const Graph g = diff_graph(c3(), Ordering::identity(3));
  CHECK(g.edge_count() == 1);
  CHECK(g.has_edge(0, 2));
  std::vector<std::size_t> rev{3, 2, 1, 0};
  CHECK(diff_graph(Digraph::transitive(4), Ordering::from_sequence(rev)) == Graph::complete(4));

  // Ordering D1's vertices before D2's: cross edges never disagree.
  const Digraph j = dijoin(c3(), c3());
  std::vector<std::size_t> seq{2, 0, 1, 4, 5, 3};
  const Graph h = diff_graph(j, Ordering::from_sequence(seq));
  for (std::size_t u = 0; u < 3; ++u) {
    for (std::size_t v = 3; v < 6; ++v) CHECK_FALSE(h.has_edge(u, v));
  }
  // Empty iff D is the transitive tournament of the ordering.
  std::mt19937_64 rng(12);
  for (int t = 0; t < 100; ++t) {
    std::vector<std::size_t> s(5);
    std::iota(s.begin(), s.end(), std::size_t{0});
    std::shuffle(s.begin(), s.end(), rng);
    const Ordering o = Ordering::from_sequence(s);
    const Digraph d = tournament_from_code(5, rng() & 1023U);
    CHECK(diff_graph(d, o).empty() == (d == Digraph::transitive(o)));
  }
}

TEST_CASE("tournament codes and canonical forms") {
  for (std::uint64_t code = 0; code < 64; ++code) {
    CHECK(tournament_code(tournament_from_code(4, code)) == code);
  }
  std::size_t count = 0;
  LabeledTournaments three(3);
  while (three.next()) ++count;
  CHECK(count == 8);
  CHECK(LabeledTournaments(4).total() == 64);
  CHECK(canonical_tournaments(1).size() == 1);
  CHECK(canonical_tournaments(3).size() == 2);
  CHECK(canonical_tournaments(4).size() == 4);
  CHECK(canonical_tournaments(5).size() == 12);
  CHECK(canonical_tournaments(6).size() == 56);

  // Brute force count of classes at n = 4 and 5.
  for (std::size_t n : {4U, 5U}) {
    std::set<std::uint64_t> classes;
    LabeledTournaments all(n);
    while (auto t = all.next()) {
      std::uint64_t best = ~std::uint64_t{0};
      std::vector<std::size_t> p(n);
      std::iota(p.begin(), p.end(), std::size_t{0});
      do {
        best = std::min(best, tournament_code(t->relabel(p)));
      } while (std::next_permutation(p.begin(), p.end()));
      classes.insert(best);
      CHECK(canonical_code(*t) == best);
    }
    CHECK(classes.size() == canonical_tournaments(n).size());
  }
}

TEST_CASE("graph pair codes") {
  for (std::uint64_t code = 0; code < 1024; code += 37) {
    CHECK(Graph::from_pair_code(5, code).pair_code() == code);
  }
  const Graph k = Graph::complete(4);
  CHECK(k.edge_count() == 6);
  CHECK(Graph::from_matrix(k.adjacency_matrix()) == k);
}
