#pragma once

// Exact inversion numbers. Two independent engines: breadth-first search over the
// orientations of the underlying graph, and tournament minimum rank over F2 with the
// all-zero-diagonal classification that decides between tmr and tmr + 1.

#include <cstddef>
#include <optional>
#include <string>

#include "tinv/digraph.hpp"
#include "tinv/gf2.hpp"

namespace tinv {

inline constexpr std::size_t kMaxBfsEdges = 21;
inline constexpr std::size_t kMaxBfsActiveVertices = 20;
inline constexpr std::size_t kMaxTmrOrder = 11;

enum class Method { Bfs, Rank };

std::string to_string(Method m);

struct InvResult {
  std::size_t value = 0;
  SetFamily certificate;
  Method method = Method::Bfs;
  /// Filled by the rank engine.
  std::optional<std::size_t> tmr;
};

struct TmrOutcome {
  std::size_t tmr = 0;
  Ordering ordering;
  /// Diagonal of the witness matrix in M(G_{D,T_sigma}).
  Word diagonal = 0;
  bool classified = false;
  /// Set when classified: every minimum-rank matrix in M*(D) has an all-zero diagonal.
  std::optional<bool> all_achievers_zero_diag;
  /// Set when classified.
  std::optional<std::size_t> inv_value;

  /// The witness matrix: adjacency of G_{D,T_sigma} plus the witness diagonal.
  gf2::Matrix witness_matrix(const Digraph& d) const;
};

struct TmrOptions {
  bool classify = true;
  std::size_t jobs = 1;
};

struct InvOptions {
  enum class Engine { Auto, Bfs, Rank };
  Engine engine = Engine::Auto;
  /// In auto mode, also run the search engine on small tournaments and throw
  /// VerificationFailure on disagreement.
  bool cross_check = false;
  std::size_t jobs = 1;
};

/// True iff inverting the family leaves an acyclic digraph.
bool check_decycling(const Digraph& d, const SetFamily& family);

/// Throws LimitExceeded beyond kMaxBfsEdges edges or kMaxBfsActiveVertices non-isolated vertices.
InvResult inv_bfs(const Digraph& d);

/// Minimum rank over M*(D). Throws std::invalid_argument on non-tournaments and
/// LimitExceeded beyond kMaxTmrOrder vertices.
TmrOutcome tmr(const Digraph& d, const TmrOptions& options = {});

/// Rank engine with a certificate read off the witness matrix.
InvResult inv_rank(const Digraph& d, std::size_t jobs = 1);

InvResult inv(const Digraph& d, const InvOptions& options = {});

}  // namespace tinv
