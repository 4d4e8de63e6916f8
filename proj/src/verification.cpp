#include "tinv/verification.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <exception>
#include <numeric>
#include <random>
#include <stdexcept>
#include <thread>

#include "tinv/complementation.hpp"
#include "tinv/error.hpp"
#include "tinv/gf2.hpp"
#include "tinv/inversion.hpp"
#include "tinv/io.hpp"

namespace tinv::verify {

namespace {

using gf2::Matrix;
using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// ---- serialization helpers ----------------------------------------------------------------

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::string s;
    for (std::size_t j = 0; j < m.cols(); ++j) s.push_back(m.get(i, j) ? '1' : '0');
    rows.push_back(s);
  }
  return rows;
}

Matrix matrix_from_json(const json& j, std::size_t n) {
  const auto rows = j.get<std::vector<std::string>>();
  if (rows.empty()) return Matrix(0, n);
  return Matrix::from_strings(rows);
}

json vertex_list(VertexSet x) { return x.members(); }

// ---- instance runner ----------------------------------------------------------------------

struct CheckOutcome {
  std::optional<json> finding;
  std::string tally;
};

using CheckFn = std::function<CheckOutcome(const json&)>;

struct Findings {
  std::uint64_t checked = 0;
  std::vector<json> findings;
  std::map<std::string, std::uint64_t> tallies;
};

CheckOutcome guarded(const CheckFn& check, const json& instance) {
  try {
    return check(instance);
  } catch (const LimitExceeded& e) {
    return {std::nullopt, "skipped: limit exceeded"};
  }
}

// Instances are checked in contiguous shards; results are merged in instance order so the
// report does not depend on the worker count.
Findings run_checks(const std::vector<json>& instances, const CheckFn& check, std::size_t jobs) {
  std::vector<CheckOutcome> results(instances.size());
  jobs = std::max<std::size_t>(1, std::min(jobs, instances.size()));
  std::vector<std::exception_ptr> errors(jobs);
  auto work = [&](std::size_t shard) {
    try {
      const std::size_t lo = instances.size() * shard / jobs;
      const std::size_t hi = instances.size() * (shard + 1) / jobs;
      for (std::size_t i = lo; i < hi; ++i) results[i] = guarded(check, instances[i]);
    } catch (...) {
      errors[shard] = std::current_exception();
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> workers;
    for (std::size_t s = 0; s < jobs; ++s) workers.emplace_back(work, s);
    for (auto& w : workers) w.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  Findings out;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    ++out.checked;
    if (!results[i].tally.empty()) ++out.tallies[results[i].tally];
    if (!results[i].finding) continue;
    const json reloaded = json::parse(instances[i].dump());
    const CheckOutcome again = guarded(check, reloaded);
    if (!again.finding || *again.finding != *results[i].finding) {
      throw VerificationFailure("finding did not reproduce from its serialized instance: " +
                                instances[i].dump());
    }
    out.findings.push_back(json{{"instance", instances[i]}, {"details", *results[i].finding}});
  }
  return out;
}

std::vector<Digraph> canonical_up_to(std::size_t lo, std::size_t hi) {
  std::vector<Digraph> out;
  for (std::size_t n = lo; n <= hi; ++n) {
    auto batch = canonical_tournaments(n);
    out.insert(out.end(), batch.begin(), batch.end());
  }
  return out;
}

std::size_t inv_value(const Digraph& d) { return inv(d).value; }

// ---- random instances ---------------------------------------------------------------------

using Rng = std::mt19937_64;

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

Digraph random_tournament(Rng& rng, std::size_t n) {
  const std::uint64_t p = pair_count(n);
  const std::uint64_t code = p == 0 ? 0 : rng() & ((std::uint64_t{1} << p) - 1);
  return tournament_from_code(n, code);
}

Digraph random_digraph(Rng& rng, std::size_t n) {
  const double density = std::uniform_real_distribution<double>(0.2, 0.95)(rng);
  Digraph d(n);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (!coin(rng, density)) continue;
      if (coin(rng)) {
        d.add_edge(u, v);
      } else {
        d.add_edge(v, u);
      }
    }
  }
  return d;
}

Matrix random_symmetric(Rng& rng, std::size_t n, bool zero_diagonal) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!zero_diagonal) m.set(i, i, coin(rng));
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool b = coin(rng);
      m.set(i, j, b);
      m.set(j, i, b);
    }
  }
  return m;
}

Matrix random_staircase(Rng& rng, std::size_t n, std::size_t m) {
  // Row i holds ones in columns [0, width[i]) with widths non-decreasing downward.
  std::vector<std::size_t> width(n);
  for (auto& w : width) w = uniform(rng, 0, m);
  std::sort(width.begin(), width.end());
  Matrix c(n, m);
  for (std::size_t i = 0; i < n; ++i) c.set_row(i, gf2::low_mask(width[i]));
  return c;
}

Matrix random_invertible_symmetric(Rng& rng, std::size_t n) {
  for (;;) {
    Matrix a = random_symmetric(rng, n, false);
    if (gf2::rank(a) == n) return a;
  }
}

// ---- suite checks -------------------------------------------------------------------------

CheckOutcome check_theorem_main(const json& inst) {
  const Digraph d1 = digraph_from_json(inst.at("d1"));
  const Digraph d2 = digraph_from_json(inst.at("d2"));
  const std::size_t k = inv_value(d1);
  if (k == 0 || inv_value(d2) != k) return {std::nullopt, "skipped: precondition"};
  const Digraph join = dijoin(d1, d2);
  if (k == 1) {
    for (Word x = 0; x < (Word{1} << join.order()); ++x) {
      if (std::popcount(x) >= 2 && is_acyclic(invert(join, VertexSet(x)))) {
        return {json{{"k", k}, {"decycling_set", vertex_list(VertexSet(x))}}, "k=1"};
      }
    }
    return {std::nullopt, "k=1"};
  }
  const InvResult r = inv(join);
  if (r.value <= k) {
    return {json{{"k", k}, {"inv_dijoin", r.value}, {"certificate", family_to_json(r.certificate)}},
            "k=" + std::to_string(k)};
  }
  return {std::nullopt, "k=" + std::to_string(k)};
}

CheckOutcome check_engines(const json& inst) {
  const Digraph d = digraph_from_json(inst.at("d"));
  try {
    const InvResult r = inv_rank(d);
    const InvResult b = inv_bfs(d);
    if (r.value != b.value) {
      return {json{{"rank", r.value}, {"search", b.value}, {"tmr", *r.tmr}}, "disagree"};
    }
    return {std::nullopt, "inv=" + std::to_string(r.value)};
  } catch (const VerificationFailure& e) {
    return {json{{"error", e.what()}}, "error"};
  }
}

CheckOutcome check_cor_tmr(const json& inst) {
  const Digraph d = digraph_from_json(inst.at("d"));
  const std::size_t oracle = inv_bfs(d).value;
  const TmrOutcome t = tmr(d, {.classify = true});
  std::vector<std::string> problems;
  if (oracle != t.tmr && oracle != t.tmr + 1) problems.emplace_back("inv outside {tmr, tmr+1}");
  if (oracle == t.tmr + 1 && t.tmr % 2 != 0) problems.emplace_back("inv = tmr + 1 with odd tmr");
  if (oracle > 0 && (oracle == t.tmr + 1) != *t.all_achievers_zero_diag) {
    problems.emplace_back("all-zero-diagonal classification disagrees with the oracle");
  }
  if (*t.inv_value != oracle) problems.emplace_back("classified value differs from the oracle");
  const std::string tally = oracle == t.tmr ? "inv=tmr" : "inv=tmr+1";
  if (problems.empty()) return {std::nullopt, tally};
  return {json{{"problems", problems},
               {"oracle_inv", oracle},
               {"tmr", t.tmr},
               {"all_achievers_zero_diag", *t.all_achievers_zero_diag},
               {"witness_ordering", t.ordering.sequence()},
               {"witness_matrix", matrix_to_json(t.witness_matrix(d))}},
          tally};
}

CheckOutcome check_lemma_c2(const json& inst) {
  const std::size_t n = inst.at("n").get<std::size_t>();
  const Graph g = Graph::from_pair_code(n, inst.at("code").get<std::uint64_t>());
  const C2Result oracle = c2_oracle(g);
  const std::size_t via_rank = c2_via_rank(g);
  const MinRankOutcome mr = min_rank(g);
  std::vector<std::string> problems;
  if (oracle.value != via_rank) problems.emplace_back("c2 via rank differs from the c2 search");
  if (!is_complementing_system(g, oracle.witness)) problems.emplace_back("search witness invalid");
  if (oracle.value != mr.rank && oracle.value != mr.rank + 1) problems.emplace_back("c2 outside {mr, mr+1}");
  if (oracle.value == mr.rank + 1 && (mr.rank % 2 != 0 || !mr.zero_diag_unique)) {
    problems.emplace_back("c2 = mr + 1 without an even mr and a unique zero-diagonal achiever");
  }
  if (!g.empty() && mr.zero_diag_unique && oracle.value != mr.rank + 1) {
    problems.emplace_back("unique zero-diagonal achiever but c2 = mr");
  }
  // Certificate from a minimum-rank matrix, preferring a non-zero diagonal.
  Word diag = mr.achievers.front();
  for (Word d : mr.achievers) {
    if (d != 0) {
      diag = d;
      break;
    }
  }
  Matrix m = g.adjacency_matrix();
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, (diag >> i) & 1U);
  const SetFamily from_matrix = system_from_matrix(g, m);
  if (from_matrix.size() != oracle.value) problems.emplace_back("matrix certificate has the wrong size");
  const std::string tally = oracle.value == mr.rank ? "c2=mr" : "c2=mr+1";
  if (problems.empty()) return {std::nullopt, tally};
  return {json{{"problems", problems},
               {"c2_search", oracle.value},
               {"c2_via_rank", via_rank},
               {"mr", mr.rank},
               {"achievers", mr.achiever_count}},
          tally};
}

CheckOutcome check_staircase(const json& inst) {
  const std::size_t n = inst.at("n").get<std::size_t>();
  const std::size_t m = inst.at("m").get<std::size_t>();
  const Matrix mat = matrix_from_json(inst.at("matrix"), n + m);
  try {
    const auto names = gf2::staircase_conclusion(mat, n, m).names();
    std::string tally;
    for (const auto& s : names) tally += (tally.empty() ? "" : "+") + s;
    return {std::nullopt, tally};
  } catch (const VerificationFailure& e) {
    return {json{{"error", e.what()}}, "violation"};
  }
}

CheckOutcome check_kjoin_c3(const json& inst) {
  const std::size_t k = inst.at("k").get<std::size_t>();
  const std::vector<Digraph> parts(k, Digraph::cycle3());
  const Digraph d = kjoin(parts);
  const InvResult r = inv_rank(d);
  if (r.value != k) {
    return {json{{"inv", r.value}, {"tmr", *r.tmr}, {"certificate", family_to_json(r.certificate)}}, "mismatch"};
  }
  return {std::nullopt, "inv=" + std::to_string(k)};
}

CheckOutcome check_props(const json& inst) {
  const std::string kind = inst.at("kind").get<std::string>();
  if (kind == "twins-c3") {
    const auto pairs = twins(Digraph::cycle3());
    if (!pairs.empty()) return {json{{"twin_pairs", pairs}}, kind};
    return {std::nullopt, kind};
  }
  const Digraph d = digraph_from_json(inst.at("d"));
  const std::size_t n = d.order();
  if (kind == "decycling-family") {
    const SetFamily f = greedy_decycling(d);
    std::vector<std::string> problems;
    if (f.size() + 1 > std::max<std::size_t>(n, 1)) problems.emplace_back("more than n - 1 sets");
    const Digraph reached = apply_family(d, f);
    if (!is_acyclic(reached)) problems.emplace_back("result is not acyclic");
    if (d.is_tournament()) {
      std::vector<std::size_t> reverse(n);
      for (std::size_t v = 0; v < n; ++v) reverse[v] = n - 1 - v;
      if (reached != Digraph::transitive(n).relabel(reverse)) {
        problems.emplace_back("tournament result is not the reverse transitive tournament");
      }
    }
    if (problems.empty()) return {std::nullopt, kind};
    return {json{{"problems", problems}, {"family", family_to_json(f)}}, kind};
  }
  if (kind == "completion") {
    const InvResult base = inv_bfs(d);
    const Digraph completed = tournament_completion(d, base.certificate);
    std::vector<std::string> problems;
    if (!completed.is_tournament()) problems.emplace_back("completion is not a tournament");
    if (!d.is_subgraph_of(completed)) problems.emplace_back("completion does not contain D");
    if (!check_decycling(completed, base.certificate)) problems.emplace_back("family does not decycle D*");
    const std::size_t completed_inv = inv_bfs(completed).value;
    if (completed_inv != base.value) problems.emplace_back("inv(D*) differs from inv(D)");
    if (problems.empty()) return {std::nullopt, kind};
    return {json{{"problems", problems},
                 {"inv", base.value},
                 {"inv_completion", completed_inv},
                 {"completion", digraph_to_json(completed)}},
            kind};
  }
  if (kind == "source-sink") {
    const std::size_t v = inst.at("v").get<std::size_t>();
    const auto ss = sources_sinks(d);
    if (n < 2 || !(ss.sources.contains(v) || ss.sinks.contains(v))) return {std::nullopt, "skipped: precondition"};
    const std::size_t full = inv_bfs(d).value;
    const std::size_t reduced = inv_bfs(d.delete_vertex(v)).value;
    if (full != reduced) return {json{{"inv", full}, {"inv_deleted", reduced}}, kind};
    return {std::nullopt, kind};
  }
  if (kind == "twin-deletion") {
    const std::size_t u = inst.at("u").get<std::size_t>();
    const std::size_t v = inst.at("v").get<std::size_t>();
    const auto pairs = twins(d);
    const auto key = std::make_pair(std::min(u, v), std::max(u, v));
    if (n < 2 || std::find(pairs.begin(), pairs.end(), key) == pairs.end()) {
      return {std::nullopt, "skipped: precondition"};
    }
    const std::size_t full = inv_bfs(d).value;
    const std::size_t reduced = inv_bfs(d.delete_vertex(v)).value;
    if (full != reduced) return {json{{"inv", full}, {"inv_deleted", reduced}}, kind};
    return {std::nullopt, kind};
  }
  throw std::invalid_argument("unknown property instance '" + kind + "'");
}

CheckOutcome check_certificates(const json& inst) {
  const std::string kind = inst.at("kind").get<std::string>();
  try {
    if (kind == "cert-graph") {
      const std::size_t n = inst.at("n").get<std::size_t>();
      const Graph g = Graph::from_pair_code(n, inst.at("code").get<std::uint64_t>());
      const C2Result c2 = c2_oracle(g);
      const MinRankOutcome mr = min_rank(g);
      Matrix m = g.adjacency_matrix();
      for (std::size_t i = 0; i < n; ++i) m.set(i, i, (mr.achievers.front() >> i) & 1U);
      const SetFamily from_matrix = system_from_matrix(g, m);
      if (!is_complementing_system(g, c2.witness) || c2.witness.size() != c2.value ||
          !is_complementing_system(g, from_matrix)) {
        return {json{{"witness", family_to_json(c2.witness)}, {"from_matrix", family_to_json(from_matrix)}}, kind};
      }
      return {std::nullopt, kind};
    }
    const Digraph d = digraph_from_json(inst.at("d"));
    const InvResult r = kind == "cert-tournament" ? inv_rank(d) : inv_bfs(d);
    if (r.certificate.size() != r.value || !check_decycling(d, r.certificate)) {
      return {json{{"value", r.value}, {"certificate", family_to_json(r.certificate)}}, kind};
    }
    return {std::nullopt, kind};
  } catch (const VerificationFailure& e) {
    return {json{{"error", e.what()}}, kind};
  }
}

CheckOutcome check_gram(const json& inst) {
  const std::size_t n = inst.at("n").get<std::size_t>();
  const Matrix m = matrix_from_json(inst.at("matrix"), n);
  const std::size_t r = gf2::rank(m);
  const gf2::CongruenceResult cr = gf2::congruence_diagonalize(m);
  const Matrix factor = gf2::gram_factorize(m);
  const Matrix gram = factor * factor.transpose();
  std::vector<std::string> problems;
  if (m.diagonal() == 0 && r % 2 != 0) problems.emplace_back("zero-diagonal matrix of odd rank");
  if (cr.alternating) {
    if (m.diagonal() != 0 || m.is_zero()) problems.emplace_back("flagged alternating wrongly");
    if (Graph::from_matrix(gram) != Graph::from_matrix(m)) problems.emplace_back("factor misses the off-diagonal part");
    if (factor.cols() > r + 1) problems.emplace_back("factor wider than rank + 1");
  } else {
    Matrix target(n, n);
    for (std::size_t i = 0; i < cr.rank; ++i) target.set(i, i, true);
    if (cr.rank != r) problems.emplace_back("congruence rank differs from rank");
    if (!gf2::inverse(cr.transform)) problems.emplace_back("transform is singular");
    if (cr.transform * m * cr.transform.transpose() != target) problems.emplace_back("P M P^T is not I_r + 0");
    if (gram != m) problems.emplace_back("factor does not reproduce M");
    if (factor.cols() != r) problems.emplace_back("factor width differs from rank");
  }
  const std::string tally = cr.alternating ? "alternating" : "non-alternating";
  if (problems.empty()) return {std::nullopt, tally};
  return {json{{"problems", problems}, {"rank", r}}, tally};
}

// Instances are (d1, d2, ordering sequence, diagonal) for one minimum-rank matrix of
// D1 -> D2; the split ordering lists D1's vertices then D2's, each in the order of T.
CheckOutcome check_block_ranks(const json& inst) {
  const Digraph d1 = digraph_from_json(inst.at("d1"));
  const Digraph d2 = digraph_from_json(inst.at("d2"));
  const Digraph join = dijoin(d1, d2);
  const auto seq = inst.at("sequence").get<std::vector<std::size_t>>();
  const Word diag = inst.at("diagonal").get<Word>();
  const std::size_t k = inst.at("k").get<std::size_t>();
  TmrOutcome w;
  w.ordering = Ordering::from_sequence(seq);
  w.diagonal = diag;
  const Matrix m = w.witness_matrix(join);
  const std::size_t n1 = d1.order();
  const std::size_t n2 = d2.order();
  std::vector<std::size_t> split;
  for (std::size_t v : seq) {
    if (v < n1) split.push_back(v);
  }
  for (std::size_t v : seq) {
    if (v >= n1) split.push_back(v);
  }
  const Matrix p = m.permuted(split);
  const std::size_t ra = gf2::rank(p.submatrix(0, 0, n1, n1));
  const std::size_t rb = gf2::rank(p.submatrix(n1, n1, n2, n2));
  std::vector<std::string> problems;
  if (ra + 1 < k || ra > k) problems.emplace_back("rank(A) outside {k-1, k}");
  if (rb + 1 < k || rb > k) problems.emplace_back("rank(B) outside {k-1, k}");
  if (!gf2::is_staircase(p.submatrix(0, n1, n1, n2))) problems.emplace_back("corner block is not a staircase");
  const std::string tally = "rank(A)=" + std::to_string(ra) + ",rank(B)=" + std::to_string(rb);
  if (problems.empty()) return {std::nullopt, tally};
  return {json{{"problems", problems}, {"rank_A", ra}, {"rank_B", rb}, {"rank_M", gf2::rank(m)},
               {"split_matrix", matrix_to_json(p)}},
          tally};
}

// ---- search checks ------------------------------------------------------------------------

CheckOutcome check_inv_eq_tmr_pairs(const json& inst) {
  const Digraph d1 = digraph_from_json(inst.at("d1"));
  const Digraph d2 = digraph_from_json(inst.at("d2"));
  const InvResult r1 = inv_rank(d1);
  const InvResult r2 = inv_rank(d2);
  if (r1.value != *r1.tmr || r2.value != *r2.tmr) return {std::nullopt, "skipped: precondition"};
  const InvResult joined = inv_rank(dijoin(d1, d2));
  if (joined.value < r1.value + r2.value) {
    return {json{{"inv1", r1.value},
                 {"inv2", r2.value},
                 {"inv_dijoin", joined.value},
                 {"tmr_dijoin", *joined.tmr},
                 {"certificate", family_to_json(joined.certificate)}},
            "hit"};
  }
  return {std::nullopt, "additive"};
}

CheckOutcome check_tmr_subadditivity(const json& inst) {
  const Digraph d1 = digraph_from_json(inst.at("d1"));
  const Digraph d2 = digraph_from_json(inst.at("d2"));
  const Digraph join = dijoin(d1, d2);
  const std::size_t t1 = tmr(d1, {.classify = false}).tmr;
  const std::size_t t2 = tmr(d2, {.classify = false}).tmr;
  const TmrOutcome tj = tmr(join, {.classify = false});
  if (tj.tmr < t1 + t2) {
    return {json{{"tmr1", t1},
                 {"tmr2", t2},
                 {"tmr_dijoin", tj.tmr},
                 {"witness_ordering", tj.ordering.sequence()},
                 {"witness_matrix", matrix_to_json(tj.witness_matrix(join))}},
            "hit"};
  }
  return {std::nullopt, tj.tmr == t1 + t2 ? "additive" : "superadditive"};
}

CheckOutcome check_c3_conjecture(const json& inst) {
  const Digraph d = digraph_from_json(inst.at("d"));
  const Digraph c3 = Digraph::cycle3();
  const std::size_t t = tmr(d, {.classify = false}).tmr;
  const std::size_t left = tmr(dijoin(d, c3), {.classify = false}).tmr;
  const std::size_t right = tmr(dijoin(c3, d), {.classify = false}).tmr;
  if (left != t + 1 || right != t + 1) {
    return {json{{"tmr", t}, {"tmr_d_to_c3", left}, {"tmr_c3_to_d", right}}, "hit"};
  }
  return {std::nullopt, "holds"};
}

CheckOutcome check_inv_eq_tmr_plus_one(const json& inst) {
  const Digraph d1 = digraph_from_json(inst.at("d1"));
  const std::size_t d2max = inst.at("d2max").get<std::size_t>();
  const TmrOutcome t = tmr(d1, {.classify = true});
  if (*t.inv_value != t.tmr + 1) return {std::nullopt, "inv=tmr"};
  json checks = json::array();
  for (const Digraph& d2 : canonical_up_to(3, d2max)) {
    const std::size_t inv2 = inv_value(d2);
    if (inv2 == 0) continue;
    json entry{{"d2", digraph_to_json(d2)}, {"inv2", inv2}};
    try {
      const std::size_t joined = inv_value(dijoin(d1, d2));
      entry["inv_dijoin"] = joined;
      entry["holds"] = joined + 1 <= *t.inv_value + inv2;
    } catch (const LimitExceeded&) {
      entry["skipped"] = "limit exceeded";
    }
    checks.push_back(entry);
  }
  return {json{{"tmr", t.tmr}, {"inv", *t.inv_value}, {"lemma_checks", checks}}, "inv=tmr+1"};
}

const std::map<std::string, CheckFn>& checks() {
  static const std::map<std::string, CheckFn> table{
      {"theorem-main", check_theorem_main},
      {"engines", check_engines},
      {"cor-tmr", check_cor_tmr},
      {"lemma-c2", check_lemma_c2},
      {"lemma-staircase", check_staircase},
      {"kjoin-c3", check_kjoin_c3},
      {"props", check_props},
      {"certificates", check_certificates},
      {"gram", check_gram},
      {"block-ranks", check_block_ranks},
      {"inv-eq-tmr-pairs", check_inv_eq_tmr_pairs},
      {"tmr-subadditivity", check_tmr_subadditivity},
      {"c3-conjecture", check_c3_conjecture},
      {"inv-eq-tmr-plus-one", check_inv_eq_tmr_plus_one},
  };
  return table;
}

SuiteReport make_suite(const std::string& name, const json& params, const std::vector<json>& instances,
                       const RunOptions& opt, Clock::time_point start) {
  const Findings f = run_checks(instances, checks().at(name), opt.jobs);
  SuiteReport r;
  r.suite = name;
  r.seed = opt.seed;
  r.params = params;
  r.instances_checked = f.checked;
  r.violations = f.findings;
  r.tallies = f.tallies;
  r.runtime_ms = elapsed_ms(start);
  return r;
}

SearchReport make_search(const std::string& name, std::string space, const json& params,
                         const std::vector<json>& instances, const RunOptions& opt,
                         Clock::time_point start) {
  const Findings f = run_checks(instances, checks().at(name), opt.jobs);
  SearchReport r;
  r.question = name;
  r.space_description = std::move(space);
  r.params = params;
  r.instances_checked = f.checked;
  r.hits = f.findings;
  r.tallies = f.tallies;
  r.exhausted = !f.tallies.contains("skipped: limit exceeded");
  r.runtime_ms = elapsed_ms(start);
  return r;
}

std::vector<json> canonical_pairs(std::size_t nmax) {
  const auto reps = canonical_up_to(1, nmax);
  std::vector<json> out;
  for (const Digraph& a : reps) {
    for (const Digraph& b : reps) out.push_back(json{{"d1", digraph_to_json(a)}, {"d2", digraph_to_json(b)}});
  }
  return out;
}

}  // namespace

// ---- serialization ------------------------------------------------------------------------

json digraph_to_json(const Digraph& d) {
  if (d.is_tournament()) return io::format_compact(d);
  json edges = json::array();
  for (const Edge& e : d.edges()) edges.push_back({e.from, e.to});
  return json{{"n", d.order()}, {"edges", edges}};
}

Digraph digraph_from_json(const json& j) {
  if (j.is_string()) return io::parse_compact(j.get<std::string>());
  Digraph d(j.at("n").get<std::size_t>());
  for (const auto& e : j.at("edges")) d.add_edge(e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>());
  return d;
}

json family_to_json(const SetFamily& f) {
  json out = json::array();
  for (VertexSet x : f) out.push_back(x.members());
  return out;
}

SetFamily family_from_json(const json& j) {
  SetFamily f;
  for (const auto& set : j) {
    VertexSet x;
    for (const auto& v : set) x.insert(v.get<std::size_t>());
    f.push_back(x);
  }
  return f;
}

json to_json(const SuiteReport& r) {
  return json{{"kind", "suite"},
              {"suite", r.suite},
              {"seed", r.seed},
              {"params", r.params},
              {"instances_checked", r.instances_checked},
              {"violations", r.violations},
              {"tallies", r.tallies},
              {"passed", r.passed()},
              {"runtime_ms", r.runtime_ms}};
}

json to_json(const SearchReport& r) {
  return json{{"kind", "search"},
              {"question", r.question},
              {"space_description", r.space_description},
              {"params", r.params},
              {"instances_checked", r.instances_checked},
              {"hits", r.hits},
              {"tallies", r.tallies},
              {"exhausted", r.exhausted},
              {"runtime_ms", r.runtime_ms}};
}

SuiteReport suite_report_from_json(const json& j) {
  SuiteReport r;
  r.suite = j.at("suite").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.params = j.at("params");
  r.instances_checked = j.at("instances_checked").get<std::uint64_t>();
  r.violations = j.at("violations").get<std::vector<json>>();
  r.tallies = j.at("tallies").get<std::map<std::string, std::uint64_t>>();
  r.runtime_ms = j.value("runtime_ms", 0.0);
  return r;
}

SearchReport search_report_from_json(const json& j) {
  SearchReport r;
  r.question = j.at("question").get<std::string>();
  r.space_description = j.at("space_description").get<std::string>();
  r.params = j.at("params");
  r.instances_checked = j.at("instances_checked").get<std::uint64_t>();
  r.hits = j.at("hits").get<std::vector<json>>();
  r.tallies = j.at("tallies").get<std::map<std::string, std::uint64_t>>();
  r.exhausted = j.at("exhausted").get<bool>();
  r.runtime_ms = j.value("runtime_ms", 0.0);
  return r;
}

// ---- suites -------------------------------------------------------------------------------

SuiteReport verify_theorem_main(std::size_t n1, std::size_t n2, const RunOptions& opt) {
  const auto start = Clock::now();
  if (n1 + n2 > kMaxTmrOrder) throw LimitExceeded("theorem suite needs n1 + n2 <= 11");
  const auto left = canonical_up_to(1, n1);
  const auto right = canonical_up_to(1, n2);
  std::map<std::uint64_t, std::size_t> inv_cache;
  auto cached_inv = [&](const Digraph& d) {
    const std::uint64_t key = (tournament_code(d) << 4) | d.order();
    auto it = inv_cache.find(key);
    if (it == inv_cache.end()) it = inv_cache.emplace(key, inv_value(d)).first;
    return it->second;
  };
  std::vector<json> instances;
  for (const Digraph& a : left) {
    const std::size_t k = cached_inv(a);
    if (k == 0) continue;
    for (const Digraph& b : right) {
      if (cached_inv(b) == k) instances.push_back(json{{"d1", digraph_to_json(a)}, {"d2", digraph_to_json(b)}});
    }
  }
  return make_suite("theorem-main", json{{"n", n1}, {"n2", n2}}, instances, opt, start);
}

namespace {

std::vector<json> tournament_instances(std::size_t n, std::size_t samples, std::uint64_t seed) {
  std::vector<json> instances;
  if (n <= 5) {
    LabeledTournaments stream(n);
    while (auto t = stream.next()) instances.push_back(json{{"d", digraph_to_json(*t)}});
  } else {
    Rng rng(seed);
    for (std::size_t i = 0; i < samples; ++i) instances.push_back(json{{"d", digraph_to_json(random_tournament(rng, n))}});
  }
  return instances;
}

json tournament_params(std::size_t n, std::size_t samples) {
  return n <= 5 ? json{{"n", n}, {"exhaustive", true}} : json{{"n", n}, {"trials", samples}, {"exhaustive", false}};
}

}  // namespace

SuiteReport verify_engines(std::size_t n, std::size_t samples, const RunOptions& opt) {
  const auto start = Clock::now();
  if (n > 7) throw LimitExceeded("engine comparison needs n <= 7");
  return make_suite("engines", tournament_params(n, samples), tournament_instances(n, samples, opt.seed), opt, start);
}

SuiteReport verify_cor_tmr(std::size_t n, std::size_t samples, const RunOptions& opt) {
  const auto start = Clock::now();
  if (n > 7) throw LimitExceeded("tmr classification suite needs n <= 7");
  return make_suite("cor-tmr", tournament_params(n, samples), tournament_instances(n, samples, opt.seed), opt, start);
}

SuiteReport verify_lemma_c2(std::size_t n, const RunOptions& opt) {
  const auto start = Clock::now();
  if (n > kMaxC2OracleOrder) throw LimitExceeded("c2 suite needs n <= 6");
  std::vector<json> instances;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << pair_count(n)); ++code) {
    instances.push_back(json{{"n", n}, {"code", code}});
  }
  return make_suite("lemma-c2", json{{"n", n}}, instances, opt, start);
}

SuiteReport verify_lemma_staircase(std::size_t trials, std::size_t nmax, const RunOptions& opt) {
  const auto start = Clock::now();
  if (nmax < 1 || 2 * nmax > gf2::kMaxDim) throw std::invalid_argument("staircase suite needs 1 <= nmax <= 32");
  Rng rng(opt.seed);
  std::vector<json> instances;
  instances.reserve(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    Matrix a;
    Matrix b;
    Matrix c;
    std::size_t n = 0;
    std::size_t m = 0;
    const std::size_t mode = t % 4;
    if (mode == 0) {
      // Unconstrained blocks.
      do {
        n = uniform(rng, 0, nmax);
        m = uniform(rng, 1, nmax);
        a = random_symmetric(rng, n, false);
      } while (m < gf2::rank(a) + 1);
      b = random_symmetric(rng, m, false);
      c = random_staircase(rng, n, m);
    } else if (mode == 1 || mode == 3) {
      // rank(M) = rank(A): B = C^T A^{-1} C for invertible A. Mode 3 fixes C to all ones.
      m = uniform(rng, 1, nmax);
      n = uniform(rng, 0, m - 1);
      a = random_invertible_symmetric(rng, n);
      if (mode == 1) {
        c = random_staircase(rng, n, m);
      } else {
        c = Matrix(n, m);
        for (std::size_t i = 0; i < n; ++i) c.set_row(i, gf2::low_mask(m));
      }
      b = c.transpose() * (*gf2::inverse(a)) * c;
    } else {
      // A = 0.
      n = uniform(rng, 0, nmax);
      m = uniform(rng, 1, nmax);
      a = Matrix(n, n);
      c = random_staircase(rng, n, m);
      b = coin(rng) ? Matrix(m, m) : random_symmetric(rng, m, false);
    }
    const Matrix full = gf2::block_compose(a, b, c);
    instances.push_back(json{{"n", n}, {"m", m}, {"matrix", matrix_to_json(full)}});
  }
  return make_suite("lemma-staircase", json{{"trials", trials}, {"nmax", nmax}}, instances, opt, start);
}

SuiteReport verify_kjoin_c3(std::size_t kmax, const RunOptions& opt) {
  const auto start = Clock::now();
  if (3 * kmax > kMaxTmrOrder) throw LimitExceeded("k-join suite needs 3k <= 11");
  std::vector<json> instances;
  for (std::size_t k = 1; k <= kmax; ++k) instances.push_back(json{{"k", k}});
  return make_suite("kjoin-c3", json{{"n", kmax}}, instances, opt, start);
}

SuiteReport verify_props(std::size_t nmax, std::size_t samples, const RunOptions& opt) {
  const auto start = Clock::now();
  if (nmax < 2 || nmax > 6) throw LimitExceeded("property suite needs 2 <= nmax <= 6");
  Rng rng(opt.seed);
  std::vector<json> instances;
  instances.push_back(json{{"kind", "twins-c3"}});
  Digraph c3_sink(4);
  for (const Edge& e : Digraph::cycle3().edges()) c3_sink.add_edge(e.from, e.to);
  instances.push_back(json{{"kind", "source-sink"}, {"d", digraph_to_json(c3_sink)}, {"v", 3}});

  for (std::size_t i = 0; i < 10 * samples; ++i) {
    const bool tournament = coin(rng, 0.25);
    const std::size_t n = uniform(rng, 1, 10);
    const Digraph d = tournament ? random_tournament(rng, n) : random_digraph(rng, n);
    instances.push_back(json{{"kind", "decycling-family"}, {"d", digraph_to_json(d)}});
  }
  for (std::size_t i = 0; i < samples; ++i) {
    instances.push_back(json{{"kind", "completion"}, {"d", digraph_to_json(random_digraph(rng, uniform(rng, 1, nmax)))}});
  }
  for (std::size_t i = 0; i < samples; ++i) {
    Digraph d = random_digraph(rng, uniform(rng, 2, nmax));
    const std::size_t v = uniform(rng, 0, d.order() - 1);
    const bool source = coin(rng);
    for (std::size_t w = 0; w < d.order(); ++w) {
      if (w == v || !d.adjacent(v, w)) continue;
      if (source && d.has_edge(w, v)) d.reverse_edge(w, v);
      if (!source && d.has_edge(v, w)) d.reverse_edge(v, w);
    }
    instances.push_back(json{{"kind", "source-sink"}, {"d", digraph_to_json(d)}, {"v", v}});
  }
  for (std::size_t i = 0; i < samples; ++i) {
    // Copy a vertex u of a random digraph into a new vertex v.
    const Digraph base = random_digraph(rng, uniform(rng, 1, nmax - 1));
    const std::size_t n = base.order() + 1;
    const std::size_t u = uniform(rng, 0, base.order() - 1);
    const std::size_t v = n - 1;
    Digraph d(n);
    for (const Edge& e : base.edges()) d.add_edge(e.from, e.to);
    for (std::size_t w = 0; w < base.order(); ++w) {
      if (w == u) continue;
      if (base.has_edge(u, w)) d.add_edge(v, w);
      if (base.has_edge(w, u)) d.add_edge(w, v);
    }
    const std::size_t link = uniform(rng, 0, 2);
    if (link == 1) d.add_edge(u, v);
    if (link == 2) d.add_edge(v, u);
    instances.push_back(json{{"kind", "twin-deletion"}, {"d", digraph_to_json(d)}, {"u", u}, {"v", v}});
  }
  return make_suite("props", json{{"nmax", nmax}, {"trials", samples}}, instances, opt, start);
}

SuiteReport verify_certificates(std::size_t samples, const RunOptions& opt) {
  const auto start = Clock::now();
  Rng rng(opt.seed);
  std::vector<json> instances;
  for (std::size_t i = 0; i < samples; ++i) {
    switch (i % 3) {
      case 0:
        instances.push_back(json{{"kind", "cert-tournament"}, {"d", digraph_to_json(random_tournament(rng, uniform(rng, 1, 7)))}});
        break;
      case 1:
        instances.push_back(json{{"kind", "cert-digraph"}, {"d", digraph_to_json(random_digraph(rng, uniform(rng, 1, 6)))}});
        break;
      default: {
        const std::size_t n = uniform(rng, 1, 5);
        const std::uint64_t p = pair_count(n);
        instances.push_back(json{{"kind", "cert-graph"}, {"n", n}, {"code", p == 0 ? 0 : rng() & ((std::uint64_t{1} << p) - 1)}});
      }
    }
  }
  return make_suite("certificates", json{{"trials", samples}}, instances, opt, start);
}

SuiteReport verify_gram(std::size_t samples, std::size_t nmax, const RunOptions& opt) {
  const auto start = Clock::now();
  if (nmax > gf2::kMaxDim) throw std::invalid_argument("matrix order above 64");
  Rng rng(opt.seed);
  std::vector<json> instances;
  for (std::size_t i = 0; i < samples; ++i) {
    const std::size_t n = uniform(rng, 0, nmax);
    const Matrix m = random_symmetric(rng, n, coin(rng));
    instances.push_back(json{{"n", n}, {"matrix", matrix_to_json(m)}});
  }
  return make_suite("gram", json{{"trials", samples}, {"nmax", nmax}}, instances, opt, start);
}

SuiteReport verify_block_ranks(const RunOptions& opt) {
  const auto start = Clock::now();
  const Digraph c3 = Digraph::cycle3();
  const Digraph join = dijoin(c3, c3);
  const std::size_t k = inv_value(c3);
  const std::size_t target = tmr(join, {.classify = false}).tmr;
  const std::size_t n = join.order();
  std::vector<json> instances;
  std::vector<std::size_t> seq(n);
  std::iota(seq.begin(), seq.end(), std::size_t{0});
  do {
    const Graph g = diff_graph(join, Ordering::from_sequence(seq));
    for (Word diag = 0; diag < (Word{1} << n); ++diag) {
      std::vector<Word> rows(g.rows().begin(), g.rows().end());
      for (std::size_t i = 0; i < n; ++i) rows[i] |= diag & (Word{1} << i);
      if (gf2::rank(rows) != target) continue;
      instances.push_back(json{{"d1", digraph_to_json(c3)},
                               {"d2", digraph_to_json(c3)},
                               {"sequence", seq},
                               {"diagonal", diag},
                               {"k", k}});
    }
  } while (std::next_permutation(seq.begin(), seq.end()));
  return make_suite("block-ranks", json{{"tmr_dijoin", target}, {"k", k}}, instances, opt, start);
}

// ---- searches -----------------------------------------------------------------------------

SearchReport search_inv_eq_tmr_pairs(std::size_t nmax, const RunOptions& opt) {
  const auto start = Clock::now();
  const auto reps = canonical_up_to(1, nmax);
  std::vector<json> instances;
  for (const Digraph& a : reps) {
    const InvResult ra = inv_rank(a);
    if (ra.value != *ra.tmr) continue;
    for (const Digraph& b : reps) {
      const InvResult rb = inv_rank(b);
      if (rb.value == *rb.tmr) instances.push_back(json{{"d1", digraph_to_json(a)}, {"d2", digraph_to_json(b)}});
    }
  }
  return make_search("inv-eq-tmr-pairs",
                     "ordered pairs of canonical tournaments of orders 1.." + std::to_string(nmax) +
                         " with inv = tmr on both sides",
                     json{{"nmax", nmax}}, instances, opt, start);
}

SearchReport search_tmr_subadditivity(std::size_t nmax, const RunOptions& opt) {
  const auto start = Clock::now();
  return make_search("tmr-subadditivity",
                     "ordered pairs of canonical tournaments of orders 1.." + std::to_string(nmax),
                     json{{"nmax", nmax}}, canonical_pairs(nmax), opt, start);
}

SearchReport search_c3_conjecture(std::size_t nmax, const RunOptions& opt) {
  const auto start = Clock::now();
  std::vector<json> instances;
  for (const Digraph& d : canonical_up_to(1, nmax)) instances.push_back(json{{"d", digraph_to_json(d)}});
  return make_search("c3-conjecture",
                     "canonical tournaments of orders 1.." + std::to_string(nmax) + ", joined with C3 on both sides",
                     json{{"nmax", nmax}}, instances, opt, start);
}

SearchReport search_inv_eq_tmr_plus_one(std::size_t nmax, std::size_t d2max, const RunOptions& opt) {
  const auto start = Clock::now();
  std::vector<json> instances;
  for (const Digraph& d : canonical_up_to(1, nmax)) {
    instances.push_back(json{{"d1", digraph_to_json(d)}, {"d2max", d2max}});
  }
  return make_search("inv-eq-tmr-plus-one",
                     "canonical tournaments of orders 1.." + std::to_string(nmax) +
                         "; partners are canonical tournaments of orders 3.." + std::to_string(d2max),
                     json{{"nmax", nmax}, {"d2max", d2max}}, instances, opt, start);
}

// ---- dispatch -----------------------------------------------------------------------------

std::vector<std::string> suite_names() {
  return {"theorem-main", "engines", "cor-tmr", "lemma-c2", "lemma-staircase", "kjoin-c3",
          "props", "certificates", "gram", "block-ranks"};
}

std::vector<std::string> search_names() {
  return {"inv-eq-tmr-pairs", "tmr-subadditivity", "c3-conjecture", "inv-eq-tmr-plus-one"};
}

SuiteReport run_suite(const std::string& name, const SuiteArgs& a, const RunOptions& opt) {
  if (name == "theorem-main") return verify_theorem_main(a.n.value_or(4), a.n2.value_or(a.n.value_or(4)), opt);
  if (name == "engines") return verify_engines(a.n.value_or(5), a.trials.value_or(1000), opt);
  if (name == "cor-tmr") return verify_cor_tmr(a.n.value_or(5), a.trials.value_or(1000), opt);
  if (name == "lemma-c2") return verify_lemma_c2(a.n.value_or(5), opt);
  if (name == "lemma-staircase") return verify_lemma_staircase(a.trials.value_or(10000), a.nmax.value_or(8), opt);
  if (name == "kjoin-c3") return verify_kjoin_c3(a.n.value_or(3), opt);
  if (name == "props") return verify_props(a.nmax.value_or(a.n.value_or(6)), a.trials.value_or(1000), opt);
  if (name == "certificates") return verify_certificates(a.trials.value_or(1000), opt);
  if (name == "gram") return verify_gram(a.trials.value_or(1000), a.nmax.value_or(10), opt);
  if (name == "block-ranks") return verify_block_ranks(opt);
  throw std::invalid_argument("unknown suite '" + name + "'");
}

SearchReport run_search(const std::string& name, std::size_t nmax, const RunOptions& opt) {
  if (name == "inv-eq-tmr-pairs") return search_inv_eq_tmr_pairs(nmax, opt);
  if (name == "tmr-subadditivity") return search_tmr_subadditivity(nmax, opt);
  if (name == "c3-conjecture") return search_c3_conjecture(nmax, opt);
  if (name == "inv-eq-tmr-plus-one") return search_inv_eq_tmr_plus_one(nmax, 3, opt);
  throw std::invalid_argument("unknown search '" + name + "'");
}

namespace {

std::optional<std::size_t> param(const json& params, const char* key) {
  if (!params.contains(key)) return std::nullopt;
  return params.at(key).get<std::size_t>();
}

void compare_findings(const std::vector<json>& recorded, const std::vector<json>& rerun,
                      const std::string& what, ReplayResult& out) {
  if (recorded != rerun) {
    out.ok = false;
    out.problems.push_back("re-run produced " + std::to_string(rerun.size()) + " " + what + ", report lists " +
                           std::to_string(recorded.size()) + " (or they differ)");
  }
}

}  // namespace

ReplayResult replay(const json& report, std::size_t jobs) {
  ReplayResult out;
  const std::string kind = report.at("kind").get<std::string>();
  const bool is_suite = kind == "suite";
  if (!is_suite && kind != "search") throw std::invalid_argument("unknown report kind '" + kind + "'");
  const std::string name = report.at(is_suite ? "suite" : "question").get<std::string>();
  const auto it = checks().find(name);
  if (it == checks().end()) throw std::invalid_argument("unknown report name '" + name + "'");

  const auto& findings = report.at(is_suite ? "violations" : "hits");
  for (std::size_t i = 0; i < findings.size(); ++i) {
    const CheckOutcome again = guarded(it->second, findings[i].at("instance"));
    if (!again.finding) {
      out.ok = false;
      out.problems.push_back("finding " + std::to_string(i) + " does not reproduce");
    } else if (*again.finding != findings[i].at("details")) {
      out.ok = false;
      out.problems.push_back("finding " + std::to_string(i) + " reproduces with different details");
    }
  }

  const json& params = report.at("params");
  const RunOptions opt{report.value("seed", kDefaultSeed), jobs};
  std::uint64_t checked = 0;
  if (is_suite) {
    SuiteArgs args{param(params, "n"), param(params, "n2"), param(params, "trials"), param(params, "nmax")};
    const SuiteReport rerun = run_suite(name, args, opt);
    checked = rerun.instances_checked;
    compare_findings(findings.get<std::vector<json>>(), rerun.violations, "violations", out);
  } else {
    const std::size_t nmax = params.at("nmax").get<std::size_t>();
    const SearchReport rerun = name == "inv-eq-tmr-plus-one"
                                   ? search_inv_eq_tmr_plus_one(nmax, param(params, "d2max").value_or(3), opt)
                                   : run_search(name, nmax, opt);
    checked = rerun.instances_checked;
    compare_findings(findings.get<std::vector<json>>(), rerun.hits, "hits", out);
  }
  if (checked != report.at("instances_checked").get<std::uint64_t>()) {
    out.ok = false;
    out.problems.push_back("re-run checked " + std::to_string(checked) + " instances, report lists " +
                           report.at("instances_checked").dump());
  }
  return out;
}

}  // namespace tinv::verify
