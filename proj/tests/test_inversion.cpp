#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "tinv/error.hpp"
#include "tinv/inversion.hpp"

using namespace tinv;

namespace {

Digraph c3() { return Digraph::cycle3(); }

// inv by trying every family of k sets of size >= 2, for k = 0, 1, 2, ...
std::size_t brute_inv(const Digraph& d) {
  const std::size_t n = d.order();
  std::vector<Word> sets;
  for (Word x = 0; x < (Word{1} << n); ++x) {
    if (std::popcount(x) >= 2) sets.push_back(x);
  }
  for (std::size_t k = 0;; ++k) {
    std::vector<std::size_t> idx(k, 0);
    // Multisets of size k over `sets` in non-decreasing index order.
    for (;;) {
      SetFamily f;
      for (std::size_t i : idx) f.emplace_back(sets[i]);
      if (is_acyclic(apply_family(d, f))) return k;
      std::size_t p = k;
      while (p > 0 && idx[p - 1] + 1 == sets.size()) --p;
      if (p == 0) break;
      ++idx[p - 1];
      for (std::size_t q = p; q < k; ++q) idx[q] = idx[p - 1];
    }
  }
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

TEST_CASE("check_decycling") {
  CHECK(check_decycling(Digraph::transitive(4), {}));
  CHECK(check_decycling(c3(), {VertexSet{0, 1}}));
  CHECK_FALSE(check_decycling(c3(), {}));
  CHECK_FALSE(check_decycling(c3(), {VertexSet{0, 5}}));
}

TEST_CASE("search engine on fixed inputs") {
  CHECK(inv_bfs(Digraph::transitive(5)).value == 0);
  const InvResult r = inv_bfs(c3());
  CHECK(r.value == 1);
  CHECK(r.certificate.size() == 1);
  CHECK(check_decycling(c3(), r.certificate));
  CHECK(inv_bfs(dijoin(c3(), c3())).value == 2);
  CHECK(inv_bfs(Digraph(0)).value == 0);
  CHECK(inv_bfs(Digraph(1)).value == 0);
  CHECK_THROWS_AS(inv_bfs(tournament_from_code(8, 0x5a5a5a5)), LimitExceeded);
}

TEST_CASE("search engine against exhaustive families") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 60; ++t) {
    const Digraph d = random_digraph(rng, 1 + rng() % 5);
    const InvResult r = inv_bfs(d);
    REQUIRE(r.value == brute_inv(d));
    CHECK(check_decycling(d, r.certificate));
    CHECK((r.value == 0) == is_acyclic(d));
  }
}

TEST_CASE("tmr on fixed inputs") {
  for (std::size_t n : {1U, 3U, 6U}) {
    const TmrOutcome t = tmr(Digraph::transitive(n));
    CHECK(t.tmr == 0);
    CHECK(*t.inv_value == 0);
  }
  const TmrOutcome c = tmr(c3());
  CHECK(c.tmr == 1);
  CHECK_FALSE(*c.all_achievers_zero_diag);
  CHECK(c.diagonal != 0);
  CHECK(*c.inv_value == 1);
  CHECK(gf2::rank(c.witness_matrix(c3())) == 1);
  const TmrOutcome j = tmr(dijoin(c3(), c3()));
  CHECK(j.tmr == 2);
  CHECK(*j.inv_value == 2);
  const TmrOutcome v = tmr(dijoin(c3(), c3()), {.classify = false});
  CHECK(v.tmr == 2);
  CHECK_FALSE(v.inv_value.has_value());
  CHECK_THROWS_AS(tmr(Digraph(3)), std::invalid_argument);
  CHECK_THROWS_AS(tmr(Digraph::transitive(12)), LimitExceeded);
}

TEST_CASE("tmr by brute force over orderings and diagonals") {
  std::mt19937_64 rng(32);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 1 + rng() % 5;
    const Digraph d = tournament_from_code(n, rng() & gf2::low_mask(pair_count(n)));
    std::size_t best = 99;
    std::size_t best_zero = 99;
    std::size_t best_nonzero = 99;
    std::vector<std::size_t> seq(n);
    std::iota(seq.begin(), seq.end(), std::size_t{0});
    do {
      const Graph g = diff_graph(d, Ordering::from_sequence(seq));
      for (Word diag = 0; diag < (Word{1} << n); ++diag) {
        gf2::Matrix m = g.adjacency_matrix();
        for (std::size_t i = 0; i < n; ++i) m.set(i, i, (diag >> i) & 1U);
        const std::size_t r = gf2::rank(m);
        best = std::min(best, r);
        std::size_t& slot = diag == 0 ? best_zero : best_nonzero;
        slot = std::min(slot, r);
      }
    } while (std::next_permutation(seq.begin(), seq.end()));
    const TmrOutcome o = tmr(d, {.classify = true, .jobs = 1 + rng() % 3});
    CHECK(o.tmr == best);
    CHECK(*o.all_achievers_zero_diag == (best_zero < best_nonzero));
    CHECK(gf2::rank(o.witness_matrix(d)) == best);
  }
}

TEST_CASE("rank engine agrees with the search engine") {
  std::size_t n6 = 0;
  std::mt19937_64 rng(33);
  for (std::size_t n = 1; n <= 5; ++n) {
    LabeledTournaments all(n);
    while (auto d = all.next()) {
      const InvResult r = inv_rank(*d);
      REQUIRE(r.value == inv_bfs(*d).value);
      CHECK(check_decycling(*d, r.certificate));
      CHECK(r.certificate.size() == r.value);
    }
  }
  for (int t = 0; t < 60; ++t) {
    const Digraph d = tournament_from_code(6, rng() & gf2::low_mask(15));
    CHECK(inv_rank(d, 2).value == inv_bfs(d).value);
    ++n6;
  }
  CHECK(n6 == 60);
}

TEST_CASE("relabeling invariance") {
  std::mt19937_64 rng(34);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 3 + rng() % 4;
    const Digraph d = tournament_from_code(n, rng() & gf2::low_mask(pair_count(n)));
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), std::size_t{0});
    std::shuffle(p.begin(), p.end(), rng);
    const Digraph e = d.relabel(p);
    CHECK(inv(d).value == inv(e).value);
    CHECK(tmr(d).tmr == tmr(e).tmr);
  }
}

TEST_CASE("dispatch") {
  CHECK(inv(Digraph::transitive(9)).value == 0);
  const InvResult c = inv(c3());
  CHECK(c.value == 1);
  CHECK(c.method == Method::Rank);
  CHECK(inv(c3(), {.engine = InvOptions::Engine::Bfs}).method == Method::Bfs);
  CHECK(inv(c3(), {.cross_check = true}).value == 1);
  Digraph partial(4);
  partial.add_edge(0, 1);
  partial.add_edge(1, 2);
  partial.add_edge(2, 0);
  const InvResult p = inv(partial);
  CHECK(p.value == 1);
  CHECK(p.method == Method::Bfs);
  CHECK(to_string(Method::Rank) == "RANK");
}

TEST_CASE("monotone under subgraphs") {
  std::mt19937_64 rng(35);
  for (int t = 0; t < 80; ++t) {
    const Digraph big = random_digraph(rng, 2 + rng() % 4);
    Digraph small(big.order());
    for (const Edge& e : big.edges()) {
      if (rng() & 1U) small.add_edge(e.from, e.to);
    }
    CHECK(inv_bfs(small).value <= inv_bfs(big).value);
  }
}

TEST_CASE("dijoin lower bound") {
  for (std::size_t n1 = 1; n1 <= 4; ++n1) {
    for (std::size_t n2 = 1; n1 + n2 <= 6; ++n2) {
      for (const Digraph& a : canonical_tournaments(n1)) {
        for (const Digraph& b : canonical_tournaments(n2)) {
          CHECK(inv(dijoin(a, b)).value >= std::max(inv(a).value, inv(b).value));
        }
      }
    }
  }
}

TEST_CASE("k-joins of C3") {
  for (std::size_t k = 1; k <= 2; ++k) {
    const std::vector<Digraph> parts(k, c3());
    const InvResult r = inv_rank(kjoin(parts));
    CHECK(r.value == k);
    CHECK(check_decycling(kjoin(parts), r.certificate));
  }
}
