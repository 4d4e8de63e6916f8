#pragma once

// Subgraph complementation, minimum rank with a free diagonal, and the correspondence
// between complementing systems and faithful orthogonal representations over F2.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tinv/digraph.hpp"
#include "tinv/gf2.hpp"

namespace tinv {

inline constexpr std::size_t kMaxC2OracleOrder = 6;
inline constexpr std::size_t kMaxMinRankOrder = 24;
inline constexpr std::size_t kMaxStoredAchievers = std::size_t{1} << 16;

Graph complement_subgraph(const Graph& g, VertexSet x);
Graph apply_complementation(const Graph& g, const SetFamily& family);

/// Parity test: adjacent pairs share an odd number of sets, non-adjacent pairs an even one.
bool is_complementing_system(const Graph& g, const SetFamily& family);

struct C2Result {
  std::size_t value = 0;
  SetFamily witness;
};

/// Exact c2 by breadth-first search over graph states. Throws LimitExceeded for n > 6.
C2Result c2_oracle(const Graph& g);

/// Minimum rank over all diagonal completions of the adjacency matrix.
struct MinRankOutcome {
  std::size_t rank = 0;
  /// Achieving diagonals (bit i = entry (i, i)) in Gray-code enumeration order, truncated
  /// to kMaxStoredAchievers.
  std::vector<Word> achievers;
  std::uint64_t achiever_count = 0;
  bool unique = false;
  bool zero_diag_unique = false;

  std::uint64_t overflow() const noexcept { return achiever_count - achievers.size(); }
};

/// Partial outcome over Gray-code indices [begin, end); merge partials in index order.
MinRankOutcome min_rank_range(const Graph& g, std::uint64_t begin, std::uint64_t end);
MinRankOutcome merge(const MinRankOutcome& earlier, const MinRankOutcome& later);
MinRankOutcome min_rank(const Graph& g, std::size_t jobs = 1);

/// c2 through the minimum rank: mr + 1 when the unique minimum-rank matrix has an
/// all-zero diagonal, otherwise mr; 0 for the empty graph.
std::size_t c2_via_rank(const Graph& g);

struct Representation {
  std::size_t dim = 0;
  /// vectors[v] has bit i set when coordinate i of vertex v is 1.
  std::vector<Word> vectors;

  gf2::Matrix gram() const;
  bool is_faithful_for(const Graph& g) const;
};

SetFamily family_from_representation(const Representation& phi);
/// Throws std::invalid_argument unless `family` is a complementing system of g.
Representation representation_from_family(const Graph& g, const SetFamily& family);

/// A complementing system of size rank(M), or rank(M + e_i e_i^T) when M is alternating,
/// read off a Gram factor of M. Throws std::invalid_argument when M is not in M(g).
SetFamily system_from_matrix(const Graph& g, const gf2::Matrix& m);

// ---- diagonal search ----------------------------------------------------------------------

enum class DiagonalFilter { Any, NonZero };

struct DiagonalSearchHit {
  std::size_t rank = 0;
  Word diagonal = 0;
};

/// Smallest rank of adj + diag(d) that is strictly below `limit`, over diagonals d allowed
/// by `filter`. Depth-first over d_0, d_1, ... with incremental elimination; subtrees whose
/// running rank reaches the best value so far are cut, so the reported achiever is the
/// first one the search meets. `adj` must be symmetric with a zero diagonal.
std::optional<DiagonalSearchHit> min_rank_below(std::span<const Word> adj, std::size_t limit,
                                                DiagonalFilter filter);

}  // namespace tinv
