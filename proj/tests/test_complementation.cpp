#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "tinv/complementation.hpp"

using namespace tinv;
using gf2::Matrix;

namespace {

Graph path3() {
  Graph g(3);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  return g;
}

// Minimum rank over all diagonals, counted the slow way.
struct Brute {
  std::size_t rank = 99;
  std::vector<Word> achievers;
};

Brute brute_min_rank(const Graph& g) {
  Brute b;
  const std::size_t n = g.order();
  for (Word d = 0; d < (Word{1} << n); ++d) {
    Matrix m = g.adjacency_matrix();
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, (d >> i) & 1U);
    const std::size_t r = gf2::rank(m);
    if (r < b.rank) {
      b.rank = r;
      b.achievers.clear();
    }
    if (r == b.rank) b.achievers.push_back(d);
  }
  return b;
}

// The result of applying the family, straight from the definition.
bool empties(const Graph& g, const SetFamily& f) { return apply_complementation(g, f).empty(); }

}  // namespace

TEST_CASE("subgraph complementation") {
  CHECK(complement_subgraph(Graph::complete(3), VertexSet{0, 1, 2}).empty());
  CHECK(complement_subgraph(Graph(2), VertexSet{0, 1}) == Graph::complete(2));
  const Graph g = path3();
  CHECK(complement_subgraph(complement_subgraph(g, VertexSet{0, 2}), VertexSet{0, 2}) == g);
}

TEST_CASE("complementing system predicate") {
  CHECK(is_complementing_system(Graph::complete(5), {VertexSet::range(5)}));
  CHECK(is_complementing_system(Graph(4), {}));
  CHECK_FALSE(is_complementing_system(path3(), {VertexSet{0, 1, 2}}));
  std::mt19937_64 rng(21);
  for (int t = 0; t < 3000; ++t) {
    const std::size_t n = 1 + rng() % 10;
    const Graph g = Graph::from_pair_code(n, rng() & gf2::low_mask(pair_count(n)));
    SetFamily f(rng() % 5);
    for (auto& x : f) x = VertexSet(rng() & gf2::low_mask(n));
    REQUIRE(is_complementing_system(g, f) == empties(g, f));
    // Systems built as F applied to the empty graph.
    const Graph target = apply_complementation(Graph(n), f);
    CHECK(is_complementing_system(target, f));
  }
}

TEST_CASE("c2 search") {
  const C2Result e = c2_oracle(Graph(4));
  CHECK(e.value == 0);
  CHECK(e.witness.empty());
  const C2Result k = c2_oracle(Graph::complete(4));
  CHECK(k.value == 1);
  CHECK(k.witness == SetFamily{VertexSet::range(4)});
  const C2Result p = c2_oracle(path3());
  CHECK(p.value == 2);
  CHECK(is_complementing_system(path3(), p.witness));
}

TEST_CASE("minimum rank") {
  const MinRankOutcome e = min_rank(Graph(3));
  CHECK(e.rank == 0);
  CHECK(e.achievers == std::vector<Word>{0});
  const MinRankOutcome k2 = min_rank(Graph::complete(2));
  CHECK(k2.rank == 1);
  CHECK(k2.unique);
  CHECK(k2.achievers == std::vector<Word>{3});
  CHECK_FALSE(k2.zero_diag_unique);
  CHECK(min_rank(path3()).rank == 2);

  std::mt19937_64 rng(22);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng() % 7;
    const Graph g = Graph::from_pair_code(n, rng() & gf2::low_mask(pair_count(n)));
    const Brute b = brute_min_rank(g);
    const MinRankOutcome m = min_rank(g, 1 + rng() % 3);
    CHECK(m.rank == b.rank);
    CHECK(m.achiever_count == b.achievers.size());
    CHECK(m.unique == (b.achievers.size() == 1));
    CHECK(m.zero_diag_unique == (b.achievers == std::vector<Word>{0}));
    std::vector<Word> got = m.achievers;
    std::sort(got.begin(), got.end());
    CHECK(got == b.achievers);

    // Invariant under relabeling.
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), std::size_t{0});
    std::shuffle(p.begin(), p.end(), rng);
    CHECK(min_rank(g.relabel(p)).rank == m.rank);

    // Depth-first search agrees.
    const auto hit = min_rank_below(g.rows(), n + 1, DiagonalFilter::Any);
    REQUIRE(hit.has_value());
    CHECK(hit->rank == b.rank);
    CHECK(std::find(b.achievers.begin(), b.achievers.end(), hit->diagonal) != b.achievers.end());
    CHECK_FALSE(min_rank_below(g.rows(), b.rank, DiagonalFilter::Any).has_value());
  }
}

TEST_CASE("c2 via rank") {
  CHECK(c2_via_rank(Graph::complete(2)) == 1);
  CHECK(c2_via_rank(Graph(4)) == 0);
  // Smallest order with c2 = mr + 1; the labeled graph with pair code 495 on 5 vertices.
  const Graph g = Graph::from_pair_code(5, 495);
  const MinRankOutcome m = min_rank(g);
  CHECK(m.zero_diag_unique);
  CHECK(m.rank % 2 == 0);
  CHECK(c2_oracle(g).value == m.rank + 1);
  CHECK(c2_via_rank(g) == m.rank + 1);
  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << pair_count(n)); ++code) {
      const Graph h = Graph::from_pair_code(n, code);
      REQUIRE(c2_via_rank(h) == c2_oracle(h).value);
      CHECK(c2_via_rank(h) == min_rank(h).rank);
    }
  }
}

TEST_CASE("representations") {
  CHECK(family_from_representation(Representation{0, std::vector<Word>(3, 0)}).empty());
  CHECK(family_from_representation(Representation{1, {1, 1}}) == SetFamily{VertexSet{0, 1}});
  const Representation full = representation_from_family(Graph::complete(4), {VertexSet::range(4)});
  CHECK(full.dim == 1);
  CHECK(full.vectors == std::vector<Word>(4, 1));
  CHECK(full.is_faithful_for(Graph::complete(4)));
  CHECK(representation_from_family(Graph(3), {}).dim == 0);
  CHECK_THROWS_AS(representation_from_family(path3(), {VertexSet{0, 1, 2}}), std::invalid_argument);

  std::mt19937_64 rng(23);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 1 + rng() % 8;
    SetFamily f(rng() % 5);
    for (auto& x : f) x = VertexSet(rng() & gf2::low_mask(n));
    const Graph g = apply_complementation(Graph(n), f);
    const Representation phi = representation_from_family(g, f);
    CHECK(phi.is_faithful_for(g));
    CHECK(family_from_representation(phi) == f);
    const Matrix gram = phi.gram();
    CHECK(Graph::from_matrix(gram) == g);
    CHECK(gf2::rank(gram) <= phi.dim);
  }
}

TEST_CASE("system from matrix") {
  const Graph k2 = Graph::complete(2);
  CHECK(system_from_matrix(k2, Matrix::from_strings({"11", "11"})).size() == 1);
  CHECK(system_from_matrix(Graph(3), Matrix(3, 3)).empty());
  CHECK_THROWS_AS(system_from_matrix(k2, Matrix::from_strings({"10", "00"})), std::invalid_argument);

  std::mt19937_64 rng(24);
  for (int t = 0; t < 150; ++t) {
    const std::size_t n = 1 + rng() % 6;
    const Graph g = Graph::from_pair_code(n, rng() & gf2::low_mask(pair_count(n)));
    const MinRankOutcome m = min_rank(g);
    Word diag = m.achievers.front();
    for (Word d : m.achievers) {
      if (d != 0) {
        diag = d;
        break;
      }
    }
    Matrix a = g.adjacency_matrix();
    for (std::size_t i = 0; i < n; ++i) a.set(i, i, (diag >> i) & 1U);
    const SetFamily f = system_from_matrix(g, a);
    CHECK(is_complementing_system(g, f));
    CHECK(f.size() == c2_oracle(g).value);
  }
}
