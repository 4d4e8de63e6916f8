#pragma once

// Oriented graphs on at most 64 vertices, stored as per-vertex out-neighbour words.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "tinv/gf2.hpp"

namespace tinv {

using gf2::Word;

inline constexpr std::size_t kMaxOrder = 64;

/// Subset of [0, n) as a bit-vector.
class VertexSet {
 public:
  constexpr VertexSet() = default;
  constexpr explicit VertexSet(Word bits) : bits_(bits) {}
  VertexSet(std::initializer_list<std::size_t> vertices);

  static VertexSet range(std::size_t n) { return VertexSet(gf2::low_mask(n)); }

  constexpr Word bits() const noexcept { return bits_; }
  bool contains(std::size_t v) const noexcept { return v < 64 && ((bits_ >> v) & 1U) != 0; }
  std::size_t size() const noexcept;
  bool empty() const noexcept { return bits_ == 0; }
  void insert(std::size_t v) { bits_ |= Word{1} << v; }
  void erase(std::size_t v) { bits_ &= ~(Word{1} << v); }
  bool within(std::size_t n) const noexcept { return (bits_ & ~gf2::low_mask(n)) == 0; }
  std::vector<std::size_t> members() const;

  friend constexpr bool operator==(VertexSet, VertexSet) = default;
  friend constexpr auto operator<=>(VertexSet a, VertexSet b) { return a.bits_ <=> b.bits_; }

 private:
  Word bits_ = 0;
};

/// Inversions and complementations are applied set by set in sequence order; the result
/// does not depend on that order.
using SetFamily = std::vector<VertexSet>;

/// Bijection [0, n) -> [0, n). position(v) is the rank of v; the induced transitive
/// tournament has u -> v iff position(u) < position(v).
class Ordering {
 public:
  Ordering() = default;
  /// `positions[v]` is the rank of vertex v. Throws unless it is a permutation.
  explicit Ordering(std::vector<std::size_t> positions);
  static Ordering identity(std::size_t n);
  /// `sequence[i]` is the vertex at rank i.
  static Ordering from_sequence(std::span<const std::size_t> sequence);

  std::size_t size() const noexcept { return pos_.size(); }
  std::size_t position(std::size_t v) const { return pos_.at(v); }
  std::vector<std::size_t> sequence() const;
  const std::vector<std::size_t>& positions() const noexcept { return pos_; }

  friend bool operator==(const Ordering&, const Ordering&) = default;

 private:
  std::vector<std::size_t> pos_;
};

struct Edge {
  std::size_t from;
  std::size_t to;
  friend bool operator==(const Edge&, const Edge&) = default;
};

class Digraph {
 public:
  Digraph() = default;
  explicit Digraph(std::size_t n);

  /// Throws std::invalid_argument for loops, duplicates, 2-cycles and bad vertices.
  static Digraph from_edges(std::size_t n, std::span<const Edge> edges);
  /// Transitive tournament with i -> j for i < j.
  static Digraph transitive(std::size_t n);
  /// Transitive tournament T_sigma of an ordering.
  static Digraph transitive(const Ordering& sigma);
  /// The directed triangle 0 -> 1 -> 2 -> 0.
  static Digraph cycle3();

  std::size_t order() const noexcept { return n_; }
  Word vertex_mask() const noexcept { return gf2::low_mask(n_); }

  bool has_edge(std::size_t u, std::size_t v) const { return (out_.at(u) >> v) & 1U; }
  bool adjacent(std::size_t u, std::size_t v) const { return has_edge(u, v) || has_edge(v, u); }
  void add_edge(std::size_t u, std::size_t v);
  void remove_edge(std::size_t u, std::size_t v);
  /// Reverses an existing edge.
  void reverse_edge(std::size_t u, std::size_t v);

  Word out(std::size_t v) const { return out_.at(v); }
  Word in(std::size_t v) const;
  std::size_t edge_count() const noexcept;
  std::vector<Edge> edges() const;

  bool is_tournament() const noexcept;
  /// Every edge of this digraph is an edge of `other` (same order).
  bool is_subgraph_of(const Digraph& other) const;

  Digraph delete_vertex(std::size_t v) const;
  /// Vertex v is renamed to new_label[v].
  Digraph relabel(std::span<const std::size_t> new_label) const;

  friend bool operator==(const Digraph& a, const Digraph& b) {
    return a.n_ == b.n_ && a.out_ == b.out_;
  }

 private:
  void check_vertex(std::size_t v) const;

  std::size_t n_ = 0;
  std::array<Word, kMaxOrder> out_{};

  friend Digraph invert(const Digraph& d, VertexSet x);
};

/// Undirected simple graph.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n);

  static Graph complete(std::size_t n);
  static Graph from_edges(std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> edges);
  /// Off-diagonal part of a symmetric matrix.
  static Graph from_matrix(const gf2::Matrix& m);

  std::size_t order() const noexcept { return n_; }
  bool has_edge(std::size_t u, std::size_t v) const { return (adj_.at(u) >> v) & 1U; }
  void add_edge(std::size_t u, std::size_t v);
  void remove_edge(std::size_t u, std::size_t v);
  void toggle_edge(std::size_t u, std::size_t v);
  Word neighbours(std::size_t v) const { return adj_.at(v); }
  std::size_t edge_count() const noexcept;
  bool empty() const noexcept { return edge_count() == 0; }
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;
  /// Rows of the adjacency matrix (zero diagonal).
  std::span<const Word> rows() const noexcept { return {adj_.data(), n_}; }
  gf2::Matrix adjacency_matrix() const;
  Graph relabel(std::span<const std::size_t> new_label) const;

  /// Bit k of the code is pair k of the lexicographic pair list (n <= 11).
  std::uint64_t pair_code() const;
  static Graph from_pair_code(std::size_t n, std::uint64_t code);

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.adj_ == b.adj_;
  }

 private:
  std::size_t n_ = 0;
  std::array<Word, kMaxOrder> adj_{};
};

/// Number of unordered pairs of an n-set.
constexpr std::size_t pair_count(std::size_t n) noexcept { return n * (n - (n > 0 ? 1 : 0)) / 2; }

// ---- operations -------------------------------------------------------------------------

/// Reverses every edge with both ends in x.
Digraph invert(const Digraph& d, VertexSet x);
Digraph apply_family(const Digraph& d, const SetFamily& family);

/// A topological order (every edge points forward) or std::nullopt on a directed cycle.
std::optional<Ordering> topological_order(const Digraph& d);
bool is_acyclic(const Digraph& d);

/// D1 -> D2: D2's vertices are shifted by |D1|, all cross edges point from D1 to D2.
Digraph dijoin(const Digraph& d1, const Digraph& d2);
/// [D1, ..., Dk]; the empty sequence gives the empty digraph.
Digraph kjoin(std::span<const Digraph> parts);

struct SourcesSinks {
  VertexSet sources;
  VertexSet sinks;
};
SourcesSinks sources_sinks(const Digraph& d);

/// Unordered pairs {u, v}, u < v, with equal out- and in-neighbourhoods outside {u, v}.
std::vector<std::pair<std::size_t, std::size_t>> twins(const Digraph& d);

/// Sequential family X_i = N+(i) + {i} - {0..i-1}, i = 0..n-2, N+ taken in the digraph
/// after X_0..X_{i-1} have been inverted. Leaves every edge pointing to the smaller label.
SetFamily greedy_decycling(const Digraph& d);

/// A tournament D* containing D such that `family` also decycles D*. Throws
/// std::invalid_argument if `family` does not decycle D.
Digraph tournament_completion(const Digraph& d, const SetFamily& family);

/// The disagreement graph of a tournament and T_sigma. Throws on non-tournaments.
Graph diff_graph(const Digraph& d, const Ordering& sigma);

// ---- tournament codes and enumeration ---------------------------------------------------

/// Pair bits of a tournament in lexicographic pair order, most significant first: pair k
/// ((0,1), (0,2), ..., (n-2,n-1)) is bit P-1-k, set when i -> j. Requires n <= 11.
std::uint64_t tournament_code(const Digraph& t);
Digraph tournament_from_code(std::size_t n, std::uint64_t code);

/// Lexicographically least code over all relabelings (n <= 8).
std::uint64_t canonical_code(const Digraph& t);
Digraph canonical_form(const Digraph& t);

/// Restartable stream over all 2^P labeled tournaments of order n in code order.
class LabeledTournaments {
 public:
  explicit LabeledTournaments(std::size_t n, std::uint64_t begin = 0,
                              std::optional<std::uint64_t> end = std::nullopt);

  std::uint64_t total() const noexcept { return total_; }
  std::uint64_t begin_index() const noexcept { return begin_; }
  std::uint64_t end_index() const noexcept { return end_; }
  std::optional<Digraph> next();

 private:
  std::size_t n_;
  std::uint64_t total_;
  std::uint64_t begin_;
  std::uint64_t end_;
  std::uint64_t cursor_;
};

/// One representative per isomorphism class, in increasing canonical code order (n <= 8).
std::vector<Digraph> canonical_tournaments(std::size_t n);

}  // namespace tinv
