// Acceptance gate. One line per criterion; exit status is non-zero if any line fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "tinv/inversion.hpp"
#include "tinv/verification.hpp"

using namespace tinv;
namespace v = tinv::verify;

namespace {

struct Line {
  bool ok;
  std::string detail;
};

int failures = 0;

void report(const char* label, const char* what, double budget_s, const std::function<Line()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Line line{false, ""};
  try {
    line = body();
  } catch (const std::exception& e) {
    line = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = secs < budget_s;
  const bool ok = line.ok && in_time;
  if (!ok) ++failures;
  std::printf("%-12s %s  %s; %s; %.2fs (budget %.0fs)%s\n", label, ok ? "PASS" : "FAIL", what, line.detail.c_str(),
              secs, budget_s, in_time ? "" : " over budget");
  std::fflush(stdout);
}

std::string counts(const v::SuiteReport& r) {
  return std::to_string(r.instances_checked) + " instances, " + std::to_string(r.violations.size()) +
         " violations";
}

Line suite_line(const v::SuiteReport& r, std::uint64_t expected_instances) {
  const bool ok = r.passed() && r.instances_checked == expected_instances &&
                  !r.tallies.contains("skipped: limit exceeded");
  return {ok, counts(r)};
}

}  // namespace

int main() {
  const v::RunOptions opt{v::kDefaultSeed, 1};

  report("criterion 1", "rank engine = search engine on all 5-vertex labeled tournaments", 120, [&] {
    return suite_line(v::verify_engines(5, 0, opt), 1024);
  });

  report("criterion 2", "inv in {tmr, tmr+1}, parity and diagonal classification, 5-vertex exhaustive", 120, [&] {
    return suite_line(v::verify_cor_tmr(5, 0, opt), 1024);
  });

  report("criterion 3", "inv([C3]_k) = k for k = 1, 2, 3 with verified certificates", 600, [&] {
    const v::SuiteReport r = v::verify_kjoin_c3(3, opt);
    Line line = suite_line(r, 3);
    // The k = 3 value separately: tmr lower bound and a certificate of size 3.
    const std::vector<Digraph> parts(3, Digraph::cycle3());
    const Digraph d = kjoin(parts);
    const InvResult inv3 = inv_rank(d);
    const bool k3 = *inv3.tmr == 3 && inv3.certificate.size() == 3 && check_decycling(d, inv3.certificate);
    line.ok = line.ok && k3;
    line.detail += ", k=3: tmr " + std::to_string(*inv3.tmr) + ", certificate size " +
                   std::to_string(inv3.certificate.size());
    return line;
  });

  report("criterion 4", "no single inversion decycles D1 -> D2 for canonical pairs n1, n2 <= 4, inv = 1", 60, [&] {
    const v::SuiteReport r = v::verify_theorem_main(4, 4, opt);
    const bool only_k1 = r.tallies.size() == 1 && r.tallies.contains("k=1");
    return Line{r.passed() && only_k1 && r.instances_checked > 0, counts(r)};
  });

  report("criterion 5", "c2 via minimum rank = c2 search on all 5-vertex labeled graphs", 300, [&] {
    return suite_line(v::verify_lemma_c2(5, opt), 1024);
  });

  report("criterion 6", "staircase block lemma on 10^4 random instances, n, m <= 8", 60, [&] {
    return suite_line(v::verify_lemma_staircase(10000, 8, opt), 10000);
  });

  report("criterion 7", "certificates from every engine on 10^3 random instances", 600, [&] {
    return suite_line(v::verify_certificates(1000, opt), 1000);
  });

  report("criterion 8", "decycling family, completion, source/sink and twin deletion", 600, [&] {
    const v::SuiteReport r = v::verify_props(6, 1000, opt);
    const auto count = [&](const char* key) { return r.tallies.contains(key) ? r.tallies.at(key) : 0; };
    const bool sizes = count("decycling-family") == 10000 && count("completion") == 1000 && count("source-sink") > 0 &&
                       count("twin-deletion") > 0 && count("twins-c3") == 1;
    Line line = suite_line(r, r.instances_checked);
    line.ok = line.ok && sizes;
    line.detail += ", applicable: decycling=" + std::to_string(count("decycling-family")) +
                   " completion=" + std::to_string(count("completion")) + " source-sink=" + std::to_string(count("source-sink")) +
                   " twins=" + std::to_string(count("twin-deletion"));
    return line;
  });

  report("criterion 9", "congruence and Gram factors on 10^3 random symmetric matrices, n <= 10", 60, [&] {
    return suite_line(v::verify_gram(1000, 10, opt), 1000);
  });

  report("search", "tmr subadditivity, nmax = 4, space exhausted", 600, [&] {
    const v::SearchReport r = v::search_tmr_subadditivity(4, opt);
    return Line{r.exhausted, std::to_string(r.instances_checked) + " pairs, " + std::to_string(r.hits.size()) + " hits"};
  });

  report("search", "C3 conjecture, nmax = 5, space exhausted", 600, [&] {
    const v::SearchReport r = v::search_c3_conjecture(5, opt);
    return Line{r.exhausted,
                std::to_string(r.instances_checked) + " tournaments, " + std::to_string(r.hits.size()) + " hits"};
  });

  std::printf("%s: %d failing line(s)\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
