#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "tinv/cli.hpp"
#include "tinv/inversion.hpp"
#include "tinv/io.hpp"
#include "tinv/verification.hpp"

using nlohmann::json;
using namespace tinv;

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int status = cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

std::string temp_path(const std::string& name) { return "cli_test_" + name; }

}  // namespace

TEST_CASE("inv on a compact literal") {
  const Run r = run({"inv", "--format", "compact", "t:3:4"});
  CHECK(r.status == 0);
  CHECK(r.out.find("inv = 1") != std::string::npos);
  const Run j = run({"inv", "t:3:4", "--json"});
  REQUIRE(j.status == 0);
  const json doc = json::parse(j.out);
  CHECK(doc["value"] == 1);
  CHECK(doc["method"] == "RANK");
  CHECK(check_decycling(Digraph::cycle3(), verify::family_from_json(doc["certificate"])));
  const Run b = run({"inv", "t:3:4", "--method", "bfs", "--json"});
  CHECK(json::parse(b.out)["method"] == "BFS");
}

TEST_CASE("inv from a file") {
  const std::string path = temp_path("c5.dg");
  std::ofstream(path) << "digraph 5\n0 1\n1 2\n2 3\n3 4\n4 0\n";
  const Run r = run({"inv", path, "--json"});
  CHECK(r.status == 0);
  CHECK(json::parse(r.out)["value"] == 1);
  std::remove(path.c_str());
}

TEST_CASE("exit statuses") {
  CHECK(run({"inv", "nonexistent.dg"}).status == cli::kExitUsage);
  CHECK(run({}).status == cli::kExitUsage);
  CHECK(run({"inv", "t:3:4", "--bogus"}).status == cli::kExitUsage);
  CHECK(run({"inv", "t:3:4", "--method", "magic"}).status == cli::kExitUsage);
  CHECK(run({"verify", "no-such-suite"}).status == cli::kExitUsage);
  CHECK(run({"tmr", io::format_compact(Digraph::transitive(12))}).status == cli::kExitLimit);
  CHECK(run({"enumerate", "--n", "9"}).status == cli::kExitLimit);
  CHECK(run({"verify", "cor-tmr", "--n", "4"}).status == 0);
  CHECK(run({"--help"}).status == 0);
}

TEST_CASE("tmr, enumerate, dijoin, kjoin") {
  const json t = json::parse(run({"tmr", "t:3:4", "--classify", "--json"}).out);
  CHECK(t["tmr"] == 1);
  CHECK(t["inv"] == 1);
  const Run e = run({"enumerate", "--n", "4", "--canonical"});
  CHECK(std::count(e.out.begin(), e.out.end(), '\n') == 4);
  const json ej = json::parse(run({"enumerate", "--n", "3", "--json"}).out);
  CHECK(ej["count"] == 8);
  const Run d = run({"dijoin", "t:3:4", "t:3:4", "--format", "compact"});
  const Digraph c = io::parse_compact("t:3:4");
  CHECK(io::parse_compact(d.out) == dijoin(c, c));
  const std::string out = temp_path("k3.dg");
  CHECK(run({"kjoin", "t:3:4", "t:3:4", "t:3:4", "-o", out}).status == 0);
  CHECK(io::load_digraph(out).edge_count() == 36);
  std::remove(out.c_str());
}

TEST_CASE("mr and c2") {
  const std::string path = temp_path("p3.g");
  std::ofstream(path) << "graph 3\n0 1\n1 2\n";
  const json m = json::parse(run({"mr", path, "--json"}).out);
  CHECK(m["mr"] == 2);
  const json c = json::parse(run({"c2", path, "--json"}).out);
  CHECK(c["c2"] == 2);
  CHECK(c["system"].size() == 2);
  std::remove(path.c_str());
}

TEST_CASE("verify, search and replay through files") {
  const std::string report = temp_path("report.json");
  CHECK(run({"verify", "lemma-c2", "--n", "3", "-o", report}).status == 0);
  CHECK(run({"replay", report}).status == 0);
  const Run s = run({"search", "c3-conjecture", "--nmax", "3", "--json"});
  CHECK(s.status == 0);
  CHECK(json::parse(s.out)["exhausted"] == true);
  std::ofstream(report) << "{ not json";
  CHECK(run({"replay", report}).status == cli::kExitUsage);
  std::remove(report.c_str());
}
