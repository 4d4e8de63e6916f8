#pragma once

// Empirical suites for the inversion-number results at desk scale, and search drivers for
// the open questions about dijoins. Every suite and search is a stream of JSON instances
// fed to a named check; anything the check reports is re-checked from its serialized form
// before it enters a report, and `replay` re-runs both from a saved report.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tinv/digraph.hpp"

namespace tinv::verify {

using nlohmann::json;

inline constexpr std::uint64_t kDefaultSeed = 20240601;

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = kDefaultSeed;
  json params = json::object();
  std::uint64_t instances_checked = 0;
  std::vector<json> violations;
  std::map<std::string, std::uint64_t> tallies;
  double runtime_ms = 0;

  bool passed() const noexcept { return violations.empty(); }
};

struct SearchReport {
  std::string question;
  std::string space_description;
  json params = json::object();
  std::uint64_t instances_checked = 0;
  std::vector<json> hits;
  std::map<std::string, std::uint64_t> tallies;
  bool exhausted = false;
  double runtime_ms = 0;
};

json to_json(const SuiteReport& r);
json to_json(const SearchReport& r);
SuiteReport suite_report_from_json(const json& j);
SearchReport search_report_from_json(const json& j);

/// Tournaments serialize to the compact string, other digraphs to {"n", "edges"}.
json digraph_to_json(const Digraph& d);
Digraph digraph_from_json(const json& j);
json family_to_json(const SetFamily& f);
SetFamily family_from_json(const json& j);

struct RunOptions {
  std::uint64_t seed = kDefaultSeed;
  std::size_t jobs = 1;
};

// ---- suites -------------------------------------------------------------------------------

/// Every canonical pair with |D1| <= n1, |D2| <= n2 and inv(D1) = inv(D2) >= 1 has
/// inv(D1 -> D2) > inv(D1); for inv = 1 by trying all 2^(|D1|+|D2|) single inversions.
SuiteReport verify_theorem_main(std::size_t n1, std::size_t n2, const RunOptions& opt = {});

/// Rank engine against the search engine: all labeled tournaments for n <= 5, `samples`
/// random ones otherwise.
SuiteReport verify_engines(std::size_t n, std::size_t samples, const RunOptions& opt = {});

/// inv in {tmr, tmr + 1}, parity when they differ, and the all-zero-diagonal classification
/// against the search engine.
SuiteReport verify_cor_tmr(std::size_t n, std::size_t samples, const RunOptions& opt = {});

/// c2 through minimum rank against the c2 search, over all labeled graphs of order n.
SuiteReport verify_lemma_c2(std::size_t n, const RunOptions& opt = {});

/// Random symmetric block matrices with a staircase corner.
SuiteReport verify_lemma_staircase(std::size_t trials, std::size_t nmax, const RunOptions& opt = {});

/// inv([C3]_k) = k for k = 1..kmax through the rank engine.
SuiteReport verify_kjoin_c3(std::size_t kmax, const RunOptions& opt = {});

/// Decycling family bound, tournament completion, source/sink and twin deletion.
/// The decycling family is checked on 10 * samples digraphs of order <= 10, the others on
/// `samples` digraphs of order <= nmax each.
SuiteReport verify_props(std::size_t nmax, std::size_t samples, const RunOptions& opt = {});

/// Certificates from every engine on `samples` random instances.
SuiteReport verify_certificates(std::size_t samples, const RunOptions& opt = {});

/// Congruence diagonalization and Gram factors on random symmetric matrices.
SuiteReport verify_gram(std::size_t samples, std::size_t nmax, const RunOptions& opt = {});

/// Block ranks of every minimum-rank matrix of C3 -> C3 in the split ordering.
SuiteReport verify_block_ranks(const RunOptions& opt = {});

// ---- searches -----------------------------------------------------------------------------

/// Pairs with inv(Di) = tmr(Di) and inv(D1 -> D2) < inv(D1) + inv(D2).
SearchReport search_inv_eq_tmr_pairs(std::size_t nmax, const RunOptions& opt = {});
/// Pairs with tmr(D1 -> D2) < tmr(D1) + tmr(D2).
SearchReport search_tmr_subadditivity(std::size_t nmax, const RunOptions& opt = {});
/// Tournaments D with tmr(D -> C3) or tmr(C3 -> D) different from tmr(D) + 1.
SearchReport search_c3_conjecture(std::size_t nmax, const RunOptions& opt = {});
/// Tournaments with inv = tmr + 1; for each, inv(D1 -> D2) <= inv(D1) + inv(D2) - 1 is
/// checked against every canonical D2 of order <= d2max with inv(D2) >= 1.
SearchReport search_inv_eq_tmr_plus_one(std::size_t nmax, std::size_t d2max = 3,
                                        const RunOptions& opt = {});

// ---- dispatch and replay ------------------------------------------------------------------

/// Names accepted by run_suite / run_search.
std::vector<std::string> suite_names();
std::vector<std::string> search_names();

struct SuiteArgs {
  std::optional<std::size_t> n;
  std::optional<std::size_t> n2;
  std::optional<std::size_t> trials;
  std::optional<std::size_t> nmax;
};

/// Throws std::invalid_argument for an unknown name.
SuiteReport run_suite(const std::string& name, const SuiteArgs& args, const RunOptions& opt = {});
SearchReport run_search(const std::string& name, std::size_t nmax, const RunOptions& opt = {});

struct ReplayResult {
  bool ok = true;
  std::vector<std::string> problems;
};

/// Re-checks every reported violation or hit and re-runs the recorded configuration,
/// comparing counts and findings.
ReplayResult replay(const json& report, std::size_t jobs = 1);

}  // namespace tinv::verify
