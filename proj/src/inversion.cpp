#include "tinv/inversion.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "tinv/complementation.hpp"
#include "tinv/error.hpp"

namespace tinv {

namespace {

std::size_t lowest(Word w) { return static_cast<std::size_t>(std::countr_zero(w)); }
Word single(std::size_t v) { return Word{1} << v; }

std::uint64_t factorial(std::size_t n) {
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

// The permutation of [0, n) with lexicographic rank `index`.
std::vector<std::size_t> unrank_permutation(std::size_t n, std::uint64_t index) {
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  std::vector<std::size_t> seq;
  seq.reserve(n);
  for (std::size_t i = n; i > 0; --i) {
    const std::uint64_t block = factorial(i - 1);
    const auto k = static_cast<std::size_t>(index / block);
    index %= block;
    seq.push_back(pool[k]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(k));
  }
  return seq;
}

}  // namespace

std::string to_string(Method m) { return m == Method::Bfs ? "BFS" : "RANK"; }

bool check_decycling(const Digraph& d, const SetFamily& family) {
  for (VertexSet x : family) {
    if (!x.within(d.order())) return false;
  }
  return is_acyclic(apply_family(d, family));
}

// ---- breadth-first engine -----------------------------------------------------------------

InvResult inv_bfs(const Digraph& d) {
  InvResult out;
  out.method = Method::Bfs;
  if (is_acyclic(d)) return out;

  const std::vector<Edge> edges = d.edges();
  const std::size_t m = edges.size();
  if (m > kMaxBfsEdges) {
    throw LimitExceeded("search engine is limited to " + std::to_string(kMaxBfsEdges) + " edges");
  }
  Word active = 0;
  for (const Edge& e : edges) active |= single(e.from) | single(e.to);
  const std::vector<std::size_t> verts = VertexSet(active).members();
  if (verts.size() > kMaxBfsActiveVertices) {
    throw LimitExceeded("search engine is limited to " + std::to_string(kMaxBfsActiveVertices) +
                        " non-isolated vertices");
  }

  // One transition per distinct set of edges an inversion can flip.
  std::vector<std::uint32_t> masks;
  std::vector<VertexSet> sets;
  std::unordered_map<std::uint32_t, std::size_t> seen_mask;
  for (Word sub = 0; sub < (Word{1} << verts.size()); ++sub) {
    if (std::popcount(sub) < 2) continue;
    Word x = 0;
    for (Word w = sub; w != 0; w &= w - 1) x |= single(verts[lowest(w)]);
    std::uint32_t mask = 0;
    for (std::size_t k = 0; k < m; ++k) {
      if ((x & single(edges[k].from)) && (x & single(edges[k].to))) mask |= std::uint32_t{1} << k;
    }
    if (mask == 0 || seen_mask.contains(mask)) continue;
    seen_mask.emplace(mask, sets.size());
    masks.push_back(mask);
    sets.emplace_back(x);
  }

  const std::size_t n = d.order();
  auto acyclic = [&](std::uint32_t state) {
    std::array<Word, kMaxOrder> in{};
    for (std::size_t k = 0; k < m; ++k) {
      const bool flipped = (state >> k) & 1U;
      const std::size_t from = flipped ? edges[k].to : edges[k].from;
      const std::size_t to = flipped ? edges[k].from : edges[k].to;
      in[to] |= single(from);
    }
    Word remaining = gf2::low_mask(n);
    while (remaining != 0) {
      Word sources = 0;
      for (Word w = remaining; w != 0; w &= w - 1) {
        const std::size_t v = lowest(w);
        if ((in[v] & remaining) == 0) sources |= single(v);
      }
      if (sources == 0) return false;
      remaining &= ~sources;
    }
    return true;
  };

  constexpr std::uint32_t kUnseen = std::numeric_limits<std::uint32_t>::max();
  const std::size_t states = std::size_t{1} << m;
  std::vector<std::uint32_t> parent(states, kUnseen);
  std::vector<std::uint32_t> via(states, 0);
  parent[0] = 0;
  std::vector<std::uint32_t> frontier{0};
  std::optional<std::uint32_t> target;
  while (!frontier.empty() && !target) {
    std::vector<std::uint32_t> next;
    for (std::uint32_t s : frontier) {
      for (std::size_t k = 0; k < masks.size() && !target; ++k) {
        const std::uint32_t t = s ^ masks[k];
        if (parent[t] != kUnseen) continue;
        parent[t] = s;
        via[t] = static_cast<std::uint32_t>(k);
        if (acyclic(t)) target = t;
        next.push_back(t);
      }
      if (target) break;
    }
    frontier = std::move(next);
  }
  if (!target) throw VerificationFailure("search exhausted without reaching an acyclic orientation");

  for (std::uint32_t s = *target; s != 0; s = parent[s]) out.certificate.push_back(sets[via[s]]);
  std::reverse(out.certificate.begin(), out.certificate.end());
  out.value = out.certificate.size();
  if (!check_decycling(d, out.certificate)) throw VerificationFailure("search certificate does not decycle");
  return out;
}

// ---- rank engine --------------------------------------------------------------------------

gf2::Matrix TmrOutcome::witness_matrix(const Digraph& d) const {
  gf2::Matrix m = diff_graph(d, ordering).adjacency_matrix();
  for (std::size_t i = 0; i < m.rows(); ++i) m.set(i, i, (diagonal >> i) & 1U);
  return m;
}

namespace {

struct ScanHit {
  std::size_t rank = std::numeric_limits<std::size_t>::max();
  std::uint64_t index = 0;
  Word diagonal = 0;
  bool found = false;
};

enum class ScanMode { ZeroDiagonal, NonZeroDiagonal, AnyDiagonal };

// Scans orderings with lexicographic ranks [begin, end). Only ranks strictly below `limit`
// are reported; the first ordering attaining the smallest one wins.
ScanHit scan_orderings(const Digraph& d, std::uint64_t begin, std::uint64_t end, ScanMode mode,
                       std::size_t limit) {
  const std::size_t n = d.order();
  const Word all = d.vertex_mask();
  std::array<Word, kMaxOrder> out_nb{};
  std::array<Word, kMaxOrder> in_nb{};
  for (std::size_t v = 0; v < n; ++v) {
    out_nb[v] = d.out(v);
    in_nb[v] = all & ~d.out(v) & ~single(v);
  }
  std::vector<Word> rows(n);
  std::vector<std::size_t> seq = unrank_permutation(n, begin);
  ScanHit best;
  for (std::uint64_t idx = begin; idx < end; ++idx) {
    Word before = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t v = seq[i];
      rows[v] = (out_nb[v] & before) | (in_nb[v] & ~before);
      before |= single(v);
    }
    if (mode == ScanMode::ZeroDiagonal) {
      const std::size_t r = gf2::rank(rows);
      if (r < limit) {
        best = {r, idx, 0, true};
        limit = r;
      }
    } else {
      const auto filter = mode == ScanMode::NonZeroDiagonal ? DiagonalFilter::NonZero : DiagonalFilter::Any;
      if (const auto hit = min_rank_below(rows, limit, filter)) {
        best = {hit->rank, idx, hit->diagonal, true};
        limit = hit->rank;
      }
    }
    if (limit == 0) break;
    std::next_permutation(seq.begin(), seq.end());
  }
  return best;
}

ScanHit scan_all(const Digraph& d, ScanMode mode, std::size_t limit, std::size_t jobs) {
  const std::uint64_t total = factorial(d.order());
  jobs = std::max<std::size_t>(1, std::min<std::uint64_t>(jobs, total));
  if (jobs == 1) return scan_orderings(d, 0, total, mode, limit);
  std::vector<ScanHit> parts(jobs);
  std::vector<std::thread> workers;
  for (std::size_t j = 0; j < jobs; ++j) {
    workers.emplace_back([&, j] {
      parts[j] = scan_orderings(d, total * j / jobs, total * (j + 1) / jobs, mode, limit);
    });
  }
  for (auto& w : workers) w.join();
  ScanHit best;
  for (const ScanHit& p : parts) {
    if (p.found && (!best.found || p.rank < best.rank)) best = p;
  }
  return best;
}

}  // namespace

TmrOutcome tmr(const Digraph& d, const TmrOptions& options) {
  if (!d.is_tournament()) throw std::invalid_argument("tournament minimum rank needs a tournament");
  const std::size_t n = d.order();
  if (n > kMaxTmrOrder) {
    throw LimitExceeded("rank engine is limited to " + std::to_string(kMaxTmrOrder) + " vertices");
  }
  TmrOutcome out;
  out.classified = options.classify;
  auto ordering_at = [n](std::uint64_t index) {
    const auto seq = unrank_permutation(n, index);
    return Ordering::from_sequence(seq);
  };

  if (!options.classify) {
    const ScanHit best = scan_all(d, ScanMode::AnyDiagonal, n + 1, options.jobs);
    out.tmr = best.rank;
    out.ordering = ordering_at(best.index);
    out.diagonal = best.diagonal;
    return out;
  }

  // tmr = min(A, B) with A the least rank of a zero-diagonal member of M*(D) and B the
  // least rank of a member with a non-zero diagonal; every minimum achiever has an all-zero
  // diagonal exactly when A < B, so B only needs searching up to A.
  const ScanHit zero = scan_all(d, ScanMode::ZeroDiagonal, n + 1, options.jobs);
  ScanHit nonzero;
  if (zero.rank > 0) nonzero = scan_all(d, ScanMode::NonZeroDiagonal, zero.rank + 1, options.jobs);
  if (nonzero.found) {
    out.tmr = nonzero.rank;
    out.ordering = ordering_at(nonzero.index);
    out.diagonal = nonzero.diagonal;
    out.all_achievers_zero_diag = false;
    out.inv_value = out.tmr;
  } else {
    out.tmr = zero.rank;
    out.ordering = ordering_at(zero.index);
    out.diagonal = 0;
    out.all_achievers_zero_diag = true;
    // A transitive tournament has tmr 0 and nothing to add.
    out.inv_value = zero.rank == 0 ? 0 : zero.rank + 1;
  }
  return out;
}

InvResult inv_rank(const Digraph& d, std::size_t jobs) {
  const TmrOutcome t = tmr(d, {.classify = true, .jobs = jobs});
  InvResult out;
  out.method = Method::Rank;
  out.value = *t.inv_value;
  out.tmr = t.tmr;
  if (out.value > 0) {
    const Graph g = diff_graph(d, t.ordering);
    out.certificate = system_from_matrix(g, t.witness_matrix(d));
  }
  if (out.certificate.size() != out.value || !check_decycling(d, out.certificate)) {
    throw VerificationFailure("rank certificate failed verification");
  }
  return out;
}

InvResult inv(const Digraph& d, const InvOptions& options) {
  using Engine = InvOptions::Engine;
  switch (options.engine) {
    case Engine::Bfs:
      return inv_bfs(d);
    case Engine::Rank:
      return inv_rank(d, options.jobs);
    case Engine::Auto:
      break;
  }
  if (is_acyclic(d)) return InvResult{};
  if (d.is_tournament() && d.order() <= kMaxTmrOrder) {
    InvResult r = inv_rank(d, options.jobs);
    if (options.cross_check && d.order() < 6) {
      const InvResult b = inv_bfs(d);
      if (b.value != r.value) {
        throw VerificationFailure("engines disagree: rank " + std::to_string(r.value) + ", search " +
                                  std::to_string(b.value));
      }
    }
    return r;
  }
  try {
    return inv_bfs(d);
  } catch (const LimitExceeded& e) {
    throw LimitExceeded(std::string("no engine applicable: ") + e.what());
  }
}

}  // namespace tinv
