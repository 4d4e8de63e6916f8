#include "tinv/complementation.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <stdexcept>
#include <thread>

#include "tinv/error.hpp"

namespace tinv {

namespace {

std::size_t lowest(Word w) { return static_cast<std::size_t>(std::countr_zero(w)); }
std::size_t highest(Word w) { return 63 - static_cast<std::size_t>(std::countl_zero(w)); }
Word single(std::size_t v) { return Word{1} << v; }

constexpr std::size_t kNoRank = std::numeric_limits<std::size_t>::max();

}  // namespace

Graph complement_subgraph(const Graph& g, VertexSet x) {
  if (!x.within(g.order())) throw std::out_of_range("complementation set out of range");
  Graph out = g;
  const auto members = x.members();
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) out.toggle_edge(members[i], members[j]);
  }
  return out;
}

Graph apply_complementation(const Graph& g, const SetFamily& family) {
  Graph cur = g;
  for (VertexSet x : family) cur = complement_subgraph(cur, x);
  return cur;
}

bool is_complementing_system(const Graph& g, const SetFamily& family) {
  const std::size_t n = g.order();
  for (VertexSet x : family) {
    if (!x.within(n)) return false;
  }
  // Row u of the co-occurrence parity matrix, accumulated set by set.
  std::vector<Word> parity(n, 0);
  for (VertexSet x : family) {
    for (Word w = x.bits(); w != 0; w &= w - 1) parity[lowest(w)] ^= x.bits();
  }
  for (std::size_t u = 0; u < n; ++u) {
    if ((parity[u] & ~single(u)) != g.neighbours(u)) return false;
  }
  return true;
}

C2Result c2_oracle(const Graph& g) {
  const std::size_t n = g.order();
  if (n > kMaxC2OracleOrder) {
    throw LimitExceeded("c2 oracle is limited to " + std::to_string(kMaxC2OracleOrder) + " vertices");
  }
  if (g.empty()) return {};
  const std::uint64_t start = g.pair_code();

  std::vector<std::uint64_t> masks;
  std::vector<VertexSet> sets;
  for (Word x = 0; x < (Word{1} << n); ++x) {
    if (std::popcount(x) < 2) continue;
    sets.emplace_back(x);
    masks.push_back(complement_subgraph(Graph(n), VertexSet(x)).pair_code());
  }

  const std::size_t states = std::size_t{1} << pair_count(n);
  constexpr std::uint32_t kUnseen = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> parent(states, kUnseen);
  std::vector<std::uint16_t> via(states, 0);
  std::vector<std::uint64_t> frontier{start};
  parent[start] = static_cast<std::uint32_t>(start);
  while (!frontier.empty() && parent[0] == kUnseen) {
    std::vector<std::uint64_t> next;
    for (std::uint64_t s : frontier) {
      for (std::size_t k = 0; k < masks.size(); ++k) {
        const std::uint64_t t = s ^ masks[k];
        if (parent[t] != kUnseen) continue;
        parent[t] = static_cast<std::uint32_t>(s);
        via[t] = static_cast<std::uint16_t>(k);
        next.push_back(t);
      }
    }
    frontier = std::move(next);
  }
  if (parent[0] == kUnseen) throw VerificationFailure("c2 oracle did not reach the empty graph");

  C2Result out;
  for (std::uint64_t s = 0; s != start; s = parent[s]) out.witness.push_back(sets[via[s]]);
  std::reverse(out.witness.begin(), out.witness.end());
  out.value = out.witness.size();
  return out;
}

MinRankOutcome min_rank_range(const Graph& g, std::uint64_t begin, std::uint64_t end) {
  const std::size_t n = g.order();
  if (n > kMaxMinRankOrder) {
    throw LimitExceeded("minimum rank enumeration is limited to " +
                        std::to_string(kMaxMinRankOrder) + " vertices");
  }
  MinRankOutcome out;
  out.rank = kNoRank;
  std::vector<Word> rows(g.rows().begin(), g.rows().end());
  const std::uint64_t total = std::uint64_t{1} << n;
  end = std::min(end, total);
  for (std::uint64_t idx = begin; idx < end; ++idx) {
    const Word diag = idx ^ (idx >> 1);
    for (std::size_t i = 0; i < n; ++i) rows[i] = g.neighbours(i) | (diag & single(i));
    const std::size_t r = gf2::rank(rows);
    if (r < out.rank) {
      out.rank = r;
      out.achievers.clear();
      out.achiever_count = 0;
    }
    if (r == out.rank) {
      if (out.achievers.size() < kMaxStoredAchievers) out.achievers.push_back(diag);
      ++out.achiever_count;
    }
  }
  out.unique = out.achiever_count == 1;
  out.zero_diag_unique = out.unique && out.achievers.front() == 0;
  return out;
}

MinRankOutcome merge(const MinRankOutcome& earlier, const MinRankOutcome& later) {
  if (later.achiever_count == 0 || later.rank > earlier.rank) return earlier;
  if (earlier.achiever_count == 0 || earlier.rank > later.rank) return later;
  MinRankOutcome out = earlier;
  for (Word d : later.achievers) {
    if (out.achievers.size() >= kMaxStoredAchievers) break;
    out.achievers.push_back(d);
  }
  out.achiever_count += later.achiever_count;
  out.unique = out.achiever_count == 1;
  out.zero_diag_unique = out.unique && out.achievers.front() == 0;
  return out;
}

MinRankOutcome min_rank(const Graph& g, std::size_t jobs) {
  const std::uint64_t total = std::uint64_t{1} << std::min(g.order(), std::size_t{63});
  jobs = std::max<std::size_t>(1, std::min<std::uint64_t>(jobs, total));
  if (jobs == 1) return min_rank_range(g, 0, total);
  std::vector<MinRankOutcome> parts(jobs);
  std::vector<std::thread> workers;
  for (std::size_t j = 0; j < jobs; ++j) {
    workers.emplace_back([&, j] {
      parts[j] = min_rank_range(g, total * j / jobs, total * (j + 1) / jobs);
    });
  }
  for (auto& w : workers) w.join();
  MinRankOutcome out = parts.front();
  for (std::size_t j = 1; j < jobs; ++j) out = merge(out, parts[j]);
  return out;
}

std::size_t c2_via_rank(const Graph& g) {
  if (g.empty()) return 0;
  const MinRankOutcome mr = min_rank(g);
  return mr.zero_diag_unique ? mr.rank + 1 : mr.rank;
}

gf2::Matrix Representation::gram() const {
  const std::size_t n = vectors.size();
  gf2::Matrix m(n, n);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) m.set(u, v, (std::popcount(vectors[u] & vectors[v]) & 1) != 0);
  }
  return m;
}

bool Representation::is_faithful_for(const Graph& g) const {
  if (vectors.size() != g.order()) return false;
  for (Word v : vectors) {
    if ((v & ~gf2::low_mask(dim)) != 0) return false;
  }
  return Graph::from_matrix(gram()) == g;
}

SetFamily family_from_representation(const Representation& phi) {
  SetFamily family(phi.dim);
  for (std::size_t v = 0; v < phi.vectors.size(); ++v) {
    for (Word w = phi.vectors[v]; w != 0; w &= w - 1) {
      const std::size_t i = lowest(w);
      if (i >= phi.dim) throw std::invalid_argument("representation vector exceeds its dimension");
      family[i].insert(v);
    }
  }
  return family;
}

Representation representation_from_family(const Graph& g, const SetFamily& family) {
  if (family.size() > gf2::kMaxDim) throw std::invalid_argument("family has more than 64 sets");
  if (!is_complementing_system(g, family)) {
    throw std::invalid_argument("family is not a complementing system of the graph");
  }
  Representation phi;
  phi.dim = family.size();
  phi.vectors.assign(g.order(), 0);
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (Word w = family[i].bits(); w != 0; w &= w - 1) phi.vectors[lowest(w)] |= single(i);
  }
  return phi;
}

SetFamily system_from_matrix(const Graph& g, const gf2::Matrix& m) {
  if (m.rows() != g.order() || !m.is_symmetric() || Graph::from_matrix(m) != g) {
    throw std::invalid_argument("matrix does not agree with the graph off the diagonal");
  }
  const gf2::Matrix factor = gram_factorize(m);
  Representation phi;
  phi.dim = factor.cols();
  phi.vectors.assign(factor.row_words().begin(), factor.row_words().end());
  SetFamily family = family_from_representation(phi);
  if (!is_complementing_system(g, family)) {
    throw VerificationFailure("Gram factor did not yield a complementing system");
  }
  return family;
}

namespace {

class DiagonalSearch {
 public:
  DiagonalSearch(std::span<const Word> adj, std::size_t limit, DiagonalFilter filter)
      : adj_(adj), limit_(limit), filter_(filter) {}

  std::optional<DiagonalSearchHit> run() {
    descend(0, 0, false);
    return hit_;
  }

 private:
  // Representative of v modulo the span, with zeros at every pivot position. Linear in v.
  Word reduce(Word v) const {
    for (Word t = v & pivots_; t != 0; t = v & pivots_) v ^= basis_[highest(t)];
    return v;
  }

  void descend(std::size_t i, std::size_t rank, bool nonzero) {
    if (rank >= limit_) return;
    if (i == adj_.size()) {
      if (filter_ == DiagonalFilter::NonZero && !nonzero) return;
      limit_ = rank;
      hit_ = DiagonalSearchHit{rank, diag_};
      return;
    }
    const Word x = reduce(adj_[i]);
    const Word y = reduce(single(i));
    if (y == 0) {
      // e_i is already spanned: both choices give the same rank from here on.
      branch(i, x, y, filter_ == DiagonalFilter::NonZero && !nonzero, rank, nonzero);
      return;
    }
    branch(i, x, y, false, rank, nonzero);
    branch(i, x, y, true, rank, nonzero);
  }

  void branch(std::size_t i, Word x, Word y, bool set, std::size_t rank, bool nonzero) {
    const Word v = set ? x ^ y : x;
    if (set) diag_ |= single(i);
    if (v != 0) {
      const std::size_t p = highest(v);
      basis_[p] = v;
      pivots_ |= single(p);
      descend(i + 1, rank + 1, nonzero || set);
      pivots_ &= ~single(p);
    } else {
      descend(i + 1, rank, nonzero || set);
    }
    if (set) diag_ &= ~single(i);
  }

  std::span<const Word> adj_;
  std::size_t limit_;
  DiagonalFilter filter_;
  std::array<Word, 64> basis_{};
  Word pivots_ = 0;
  Word diag_ = 0;
  std::optional<DiagonalSearchHit> hit_;
};

}  // namespace

std::optional<DiagonalSearchHit> min_rank_below(std::span<const Word> adj, std::size_t limit,
                                                DiagonalFilter filter) {
  if (adj.size() > gf2::kMaxDim) throw std::invalid_argument("diagonal search beyond 64 rows");
  return DiagonalSearch(adj, limit, filter).run();
}

}  // namespace tinv
