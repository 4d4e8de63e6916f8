#include "tinv/digraph.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

namespace tinv {

namespace {

std::size_t lowest(Word w) { return static_cast<std::size_t>(std::countr_zero(w)); }

Word single(std::size_t v) { return Word{1} << v; }

}  // namespace

// ---- VertexSet ----------------------------------------------------------------------------

VertexSet::VertexSet(std::initializer_list<std::size_t> vertices) {
  for (std::size_t v : vertices) {
    if (v >= 64) throw std::out_of_range("vertex index beyond 63");
    insert(v);
  }
}

std::size_t VertexSet::size() const noexcept { return static_cast<std::size_t>(std::popcount(bits_)); }

std::vector<std::size_t> VertexSet::members() const {
  std::vector<std::size_t> out;
  for (Word w = bits_; w != 0; w &= w - 1) out.push_back(lowest(w));
  return out;
}

// ---- Ordering -----------------------------------------------------------------------------

Ordering::Ordering(std::vector<std::size_t> positions) : pos_(std::move(positions)) {
  std::vector<bool> seen(pos_.size(), false);
  for (std::size_t p : pos_) {
    if (p >= pos_.size() || seen[p]) throw std::invalid_argument("ordering is not a permutation");
    seen[p] = true;
  }
}

Ordering Ordering::identity(std::size_t n) {
  std::vector<std::size_t> pos(n);
  std::iota(pos.begin(), pos.end(), std::size_t{0});
  return Ordering(std::move(pos));
}

Ordering Ordering::from_sequence(std::span<const std::size_t> sequence) {
  std::vector<std::size_t> pos(sequence.size(), sequence.size());
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    if (sequence[i] >= sequence.size()) throw std::invalid_argument("ordering is not a permutation");
    pos[sequence[i]] = i;
  }
  return Ordering(std::move(pos));
}

std::vector<std::size_t> Ordering::sequence() const {
  std::vector<std::size_t> seq(pos_.size());
  for (std::size_t v = 0; v < pos_.size(); ++v) seq[pos_[v]] = v;
  return seq;
}

// ---- Digraph ------------------------------------------------------------------------------

Digraph::Digraph(std::size_t n) : n_(n) {
  if (n > kMaxOrder) throw std::invalid_argument("digraph order exceeds 64");
}

void Digraph::check_vertex(std::size_t v) const {
  if (v >= n_) throw std::out_of_range("vertex " + std::to_string(v) + " out of range");
}

Digraph Digraph::from_edges(std::size_t n, std::span<const Edge> edges) {
  Digraph d(n);
  for (const Edge& e : edges) d.add_edge(e.from, e.to);
  return d;
}

Digraph Digraph::transitive(std::size_t n) {
  Digraph d(n);
  for (std::size_t i = 0; i < n; ++i) d.out_[i] = gf2::low_mask(n) & ~gf2::low_mask(i + 1);
  return d;
}

Digraph Digraph::transitive(const Ordering& sigma) {
  const std::size_t n = sigma.size();
  Digraph d(n);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (sigma.position(u) < sigma.position(v)) d.out_[u] |= single(v);
    }
  }
  return d;
}

Digraph Digraph::cycle3() {
  const Edge edges[] = {{0, 1}, {1, 2}, {2, 0}};
  return from_edges(3, edges);
}

void Digraph::add_edge(std::size_t u, std::size_t v) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw std::invalid_argument("loop at vertex " + std::to_string(u));
  if (has_edge(u, v)) {
    throw std::invalid_argument("duplicate edge " + std::to_string(u) + " " + std::to_string(v));
  }
  if (has_edge(v, u)) {
    throw std::invalid_argument("edge " + std::to_string(u) + " " + std::to_string(v) +
                                " conflicts with the opposite orientation");
  }
  out_[u] |= single(v);
}

void Digraph::remove_edge(std::size_t u, std::size_t v) {
  check_vertex(u);
  check_vertex(v);
  out_[u] &= ~single(v);
}

void Digraph::reverse_edge(std::size_t u, std::size_t v) {
  if (!has_edge(u, v)) throw std::invalid_argument("no such edge to reverse");
  out_[u] &= ~single(v);
  out_[v] |= single(u);
}

Word Digraph::in(std::size_t v) const {
  check_vertex(v);
  Word w = 0;
  for (std::size_t u = 0; u < n_; ++u) w |= ((out_[u] >> v) & 1U) << u;
  return w;
}

std::size_t Digraph::edge_count() const noexcept {
  std::size_t m = 0;
  for (std::size_t v = 0; v < n_; ++v) m += static_cast<std::size_t>(std::popcount(out_[v]));
  return m;
}

std::vector<Edge> Digraph::edges() const {
  std::vector<Edge> out;
  for (std::size_t u = 0; u < n_; ++u) {
    for (Word w = out_[u]; w != 0; w &= w - 1) out.push_back({u, lowest(w)});
  }
  return out;
}

bool Digraph::is_tournament() const noexcept {
  for (std::size_t u = 0; u < n_; ++u) {
    const Word others = vertex_mask() & ~single(u);
    Word in_u = 0;
    for (std::size_t v = 0; v < n_; ++v) in_u |= ((out_[v] >> u) & 1U) << v;
    if ((out_[u] | in_u) != others) return false;
  }
  return true;
}

bool Digraph::is_subgraph_of(const Digraph& other) const {
  if (n_ != other.n_) return false;
  for (std::size_t v = 0; v < n_; ++v) {
    if ((out_[v] & ~other.out_[v]) != 0) return false;
  }
  return true;
}

Digraph Digraph::delete_vertex(std::size_t v) const {
  check_vertex(v);
  Digraph d(n_ - 1);
  const Word low = gf2::low_mask(v);
  for (std::size_t u = 0, k = 0; u < n_; ++u) {
    if (u == v) continue;
    const Word w = out_[u];
    d.out_[k++] = (w & low) | ((w >> 1) & ~low);
  }
  return d;
}

Digraph Digraph::relabel(std::span<const std::size_t> new_label) const {
  if (new_label.size() != n_) throw std::invalid_argument("relabeling has the wrong size");
  (void)Ordering(std::vector<std::size_t>(new_label.begin(), new_label.end()));
  Digraph d(n_);
  for (std::size_t u = 0; u < n_; ++u) {
    for (Word w = out_[u]; w != 0; w &= w - 1) d.out_[new_label[u]] |= single(new_label[lowest(w)]);
  }
  return d;
}

// ---- Graph --------------------------------------------------------------------------------

Graph::Graph(std::size_t n) : n_(n) {
  if (n > kMaxOrder) throw std::invalid_argument("graph order exceeds 64");
}

Graph Graph::complete(std::size_t n) {
  Graph g(n);
  for (std::size_t v = 0; v < n; ++v) g.adj_[v] = gf2::low_mask(n) & ~single(v);
  return g;
}

Graph Graph::from_edges(std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> edges) {
  Graph g(n);
  for (const auto& [u, v] : edges) {
    if (g.has_edge(u, v)) {
      throw std::invalid_argument("duplicate edge " + std::to_string(u) + " " + std::to_string(v));
    }
    g.add_edge(u, v);
  }
  return g;
}

Graph Graph::from_matrix(const gf2::Matrix& m) {
  if (!m.is_symmetric()) throw std::invalid_argument("graph from a non-symmetric matrix");
  Graph g(m.rows());
  for (std::size_t v = 0; v < m.rows(); ++v) g.adj_[v] = m.row(v) & ~single(v);
  return g;
}

void Graph::add_edge(std::size_t u, std::size_t v) {
  if (u >= n_ || v >= n_) throw std::out_of_range("vertex out of range");
  if (u == v) throw std::invalid_argument("loop at vertex " + std::to_string(u));
  adj_[u] |= single(v);
  adj_[v] |= single(u);
}

void Graph::remove_edge(std::size_t u, std::size_t v) {
  if (u >= n_ || v >= n_) throw std::out_of_range("vertex out of range");
  adj_[u] &= ~single(v);
  adj_[v] &= ~single(u);
}

void Graph::toggle_edge(std::size_t u, std::size_t v) {
  if (u >= n_ || v >= n_) throw std::out_of_range("vertex out of range");
  if (u == v) throw std::invalid_argument("loop at vertex " + std::to_string(u));
  adj_[u] ^= single(v);
  adj_[v] ^= single(u);
}

std::size_t Graph::edge_count() const noexcept {
  std::size_t m = 0;
  for (std::size_t v = 0; v < n_; ++v) m += static_cast<std::size_t>(std::popcount(adj_[v]));
  return m / 2;
}

std::vector<std::pair<std::size_t, std::size_t>> Graph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t u = 0; u < n_; ++u) {
    for (Word w = adj_[u] & ~gf2::low_mask(u + 1); w != 0; w &= w - 1) out.emplace_back(u, lowest(w));
  }
  return out;
}

gf2::Matrix Graph::adjacency_matrix() const {
  return gf2::Matrix::from_rows(n_, n_, std::vector<Word>(adj_.begin(), adj_.begin() + static_cast<std::ptrdiff_t>(n_)));
}

Graph Graph::relabel(std::span<const std::size_t> new_label) const {
  if (new_label.size() != n_) throw std::invalid_argument("relabeling has the wrong size");
  (void)Ordering(std::vector<std::size_t>(new_label.begin(), new_label.end()));
  Graph g(n_);
  for (std::size_t u = 0; u < n_; ++u) {
    for (Word w = adj_[u]; w != 0; w &= w - 1) g.adj_[new_label[u]] |= single(new_label[lowest(w)]);
  }
  return g;
}

std::uint64_t Graph::pair_code() const {
  if (n_ > 11) throw std::invalid_argument("pair code needs n <= 11");
  std::uint64_t code = 0;
  std::size_t k = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j, ++k) {
      if (has_edge(i, j)) code |= std::uint64_t{1} << k;
    }
  }
  return code;
}

Graph Graph::from_pair_code(std::size_t n, std::uint64_t code) {
  if (n > 11) throw std::invalid_argument("pair code needs n <= 11");
  Graph g(n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++k) {
      if ((code >> k) & 1U) g.add_edge(i, j);
    }
  }
  return g;
}

// ---- operations ---------------------------------------------------------------------------

Digraph invert(const Digraph& d, VertexSet x) {
  if (!x.within(d.order())) throw std::out_of_range("inversion set out of range");
  Digraph out = d;
  const Word xs = x.bits();
  for (Word w = xs; w != 0; w &= w - 1) {
    const std::size_t v = lowest(w);
    Word inside_in = 0;
    for (Word y = xs; y != 0; y &= y - 1) {
      const std::size_t u = lowest(y);
      inside_in |= ((d.out_[u] >> v) & 1U) << u;
    }
    out.out_[v] = (d.out_[v] & ~xs) | inside_in;
  }
  return out;
}

Digraph apply_family(const Digraph& d, const SetFamily& family) {
  Digraph cur = d;
  for (VertexSet x : family) cur = invert(cur, x);
  return cur;
}

std::optional<Ordering> topological_order(const Digraph& d) {
  const std::size_t n = d.order();
  std::vector<std::size_t> seq;
  seq.reserve(n);
  std::array<Word, kMaxOrder> in{};
  for (std::size_t v = 0; v < n; ++v) in[v] = d.in(v);
  Word remaining = d.vertex_mask();
  while (remaining != 0) {
    Word sources = 0;
    for (Word w = remaining; w != 0; w &= w - 1) {
      const std::size_t v = lowest(w);
      if ((in[v] & remaining) == 0) sources |= single(v);
    }
    if (sources == 0) return std::nullopt;
    for (Word w = sources; w != 0; w &= w - 1) seq.push_back(lowest(w));
    remaining &= ~sources;
  }
  return Ordering::from_sequence(seq);
}

bool is_acyclic(const Digraph& d) { return topological_order(d).has_value(); }

Digraph dijoin(const Digraph& d1, const Digraph& d2) {
  const std::size_t n1 = d1.order();
  const std::size_t n2 = d2.order();
  if (n1 + n2 > kMaxOrder) throw std::invalid_argument("dijoin exceeds 64 vertices");
  Digraph d(n1 + n2);
  const Word second = gf2::low_mask(n1 + n2) & ~gf2::low_mask(n1);
  for (std::size_t v = 0; v < n1; ++v) {
    for (Word w = d1.out(v); w != 0; w &= w - 1) d.add_edge(v, lowest(w));
    for (Word w = second; w != 0; w &= w - 1) d.add_edge(v, lowest(w));
  }
  for (std::size_t v = 0; v < n2; ++v) {
    for (Word w = d2.out(v); w != 0; w &= w - 1) d.add_edge(n1 + v, n1 + lowest(w));
  }
  return d;
}

Digraph kjoin(std::span<const Digraph> parts) {
  Digraph acc(0);
  for (const Digraph& p : parts) acc = dijoin(acc, p);
  return acc;
}

SourcesSinks sources_sinks(const Digraph& d) {
  SourcesSinks out;
  for (std::size_t v = 0; v < d.order(); ++v) {
    if (d.in(v) == 0) out.sources.insert(v);
    if (d.out(v) == 0) out.sinks.insert(v);
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> twins(const Digraph& d) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const std::size_t n = d.order();
  std::vector<Word> in(n);
  for (std::size_t v = 0; v < n; ++v) in[v] = d.in(v);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      const Word mask = ~(single(u) | single(v));
      if ((d.out(u) & mask) == (d.out(v) & mask) && (in[u] & mask) == (in[v] & mask)) {
        out.emplace_back(u, v);
      }
    }
  }
  return out;
}

SetFamily greedy_decycling(const Digraph& d) {
  SetFamily family;
  Digraph cur = d;
  for (std::size_t i = 0; i + 1 < d.order(); ++i) {
    const VertexSet x((cur.out(i) | single(i)) & ~gf2::low_mask(i));
    family.push_back(x);
    cur = invert(cur, x);
  }
  return family;
}

Digraph tournament_completion(const Digraph& d, const SetFamily& family) {
  const Digraph reached = apply_family(d, family);
  const auto order = topological_order(reached);
  if (!order) throw std::invalid_argument("family does not decycle the digraph");
  // Inversions are involutions, so inverting the family in the transitive extension of the
  // acyclic result gives a tournament that contains D.
  Digraph completed = apply_family(Digraph::transitive(*order), family);
  return completed;
}

Graph diff_graph(const Digraph& d, const Ordering& sigma) {
  if (!d.is_tournament()) throw std::invalid_argument("disagreement graph needs a tournament");
  if (sigma.size() != d.order()) throw std::invalid_argument("ordering has the wrong size");
  Graph g(d.order());
  for (std::size_t u = 0; u < d.order(); ++u) {
    for (Word w = d.out(u); w != 0; w &= w - 1) {
      const std::size_t v = lowest(w);
      if (sigma.position(u) > sigma.position(v)) g.add_edge(u, v);
    }
  }
  return g;
}

// ---- codes --------------------------------------------------------------------------------

std::uint64_t tournament_code(const Digraph& t) {
  const std::size_t n = t.order();
  if (n > 11) throw std::invalid_argument("tournament code needs n <= 11");
  if (!t.is_tournament()) throw std::invalid_argument("tournament code of a non-tournament");
  const std::size_t p = pair_count(n);
  std::uint64_t code = 0;
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++k) {
      if (t.has_edge(i, j)) code |= std::uint64_t{1} << (p - 1 - k);
    }
  }
  return code;
}

Digraph tournament_from_code(std::size_t n, std::uint64_t code) {
  if (n > 11) throw std::invalid_argument("tournament code needs n <= 11");
  const std::size_t p = pair_count(n);
  if (p < 64 && (code >> p) != 0) throw std::invalid_argument("code has bits beyond the pair count");
  Digraph t(n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++k) {
      if ((code >> (p - 1 - k)) & 1U) {
        t.add_edge(i, j);
      } else {
        t.add_edge(j, i);
      }
    }
  }
  return t;
}

namespace {

// Code of the relabeled tournament whose vertex at rank r is seq[r], compared against
// `best` from the most significant pair down; returns a value > best as soon as it can.
std::uint64_t code_under(const Digraph& t, std::span<const std::size_t> seq, std::uint64_t best) {
  const std::size_t n = seq.size();
  const std::size_t p = pair_count(n);
  std::uint64_t code = 0;
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++k) {
      if (t.has_edge(seq[i], seq[j])) {
        code |= std::uint64_t{1} << (p - 1 - k);
        // Remaining low bits can only increase the code.
        if (code > best) return code;
      }
    }
  }
  return code;
}

}  // namespace

std::uint64_t canonical_code(const Digraph& t) {
  const std::size_t n = t.order();
  if (n > 8) throw std::invalid_argument("canonical form needs n <= 8");
  std::vector<std::size_t> seq(n);
  std::iota(seq.begin(), seq.end(), std::size_t{0});
  std::uint64_t best = ~std::uint64_t{0};
  do {
    best = std::min(best, code_under(t, seq, best));
  } while (std::next_permutation(seq.begin(), seq.end()));
  return best;
}

Digraph canonical_form(const Digraph& t) { return tournament_from_code(t.order(), canonical_code(t)); }

LabeledTournaments::LabeledTournaments(std::size_t n, std::uint64_t begin,
                                       std::optional<std::uint64_t> end)
    : n_(n) {
  if (pair_count(n) >= 63) throw std::invalid_argument("labeled enumeration needs n <= 11");
  total_ = std::uint64_t{1} << pair_count(n);
  begin_ = std::min(begin, total_);
  end_ = std::min(end.value_or(total_), total_);
  cursor_ = begin_;
}

std::optional<Digraph> LabeledTournaments::next() {
  if (cursor_ >= end_) return std::nullopt;
  return tournament_from_code(n_, cursor_++);
}

std::vector<Digraph> canonical_tournaments(std::size_t n) {
  if (n > 8) throw std::invalid_argument("canonical enumeration needs n <= 8");
  if (n <= 1) return {Digraph(n)};
  // Every class on n vertices extends some class on n - 1 vertices by one new vertex.
  std::set<std::uint64_t> codes;
  for (const Digraph& base : canonical_tournaments(n - 1)) {
    for (Word mask = 0; mask < (Word{1} << (n - 1)); ++mask) {
      Digraph t(n);
      for (const Edge& e : base.edges()) t.add_edge(e.from, e.to);
      for (std::size_t v = 0; v + 1 < n; ++v) {
        if ((mask >> v) & 1U) {
          t.add_edge(n - 1, v);
        } else {
          t.add_edge(v, n - 1);
        }
      }
      codes.insert(canonical_code(t));
    }
  }
  std::vector<Digraph> out;
  out.reserve(codes.size());
  for (std::uint64_t c : codes) out.push_back(tournament_from_code(n, c));
  return out;
}

}  // namespace tinv
