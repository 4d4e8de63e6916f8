#include "tinv/cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "tinv/complementation.hpp"
#include "tinv/error.hpp"
#include "tinv/inversion.hpp"
#include "tinv/io.hpp"
#include "tinv/verification.hpp"

namespace tinv::cli {

namespace {

using verify::json;

std::string set_text(VertexSet x) {
  std::string s = "{";
  for (std::size_t v : x.members()) s += (s.size() > 1 ? "," : "") + std::to_string(v);
  return s + "}";
}

std::string family_text(const SetFamily& f) {
  if (f.empty()) return "(none)";
  std::string s;
  for (VertexSet x : f) s += (s.empty() ? "" : " ") + set_text(x);
  return s;
}

std::vector<std::size_t> diagonal_bits(Word d, std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back((d >> i) & 1U);
  return out;
}

json matrix_rows(const gf2::Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::string s;
    for (std::size_t j = 0; j < m.cols(); ++j) s.push_back(m.get(i, j) ? '1' : '0');
    rows.push_back(s);
  }
  return rows;
}

Digraph load_input(const std::string& arg, const std::string& format) {
  if (format == "compact") return io::parse_compact(arg);
  if (format == "edges") return io::parse_digraph(io::read_file(arg));
  return io::load_digraph(arg);
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ParseError("cannot write '" + path + "'");
  file << text;
}

std::string digraph_text(const Digraph& d, const std::string& format) {
  if (format == "compact") return io::format_compact(d) + "\n";
  return io::format_digraph(d);
}

struct Options {
  std::string input;
  std::string input2;
  std::vector<std::string> inputs;
  std::string method = "auto";
  std::string format = "auto";
  std::string output;
  std::string name;
  bool json_out = false;
  bool classify = false;
  bool canonical = false;
  bool cross_check = false;
  std::size_t jobs = 1;
  std::optional<std::size_t> n;
  std::optional<std::size_t> n2;
  std::optional<std::size_t> trials;
  std::optional<std::size_t> nmax;
  std::uint64_t seed = verify::kDefaultSeed;
};

int cmd_inv(const Options& o, std::ostream& out) {
  const Digraph d = load_input(o.input, o.format);
  InvOptions opts;
  opts.engine = o.method == "bfs" ? InvOptions::Engine::Bfs
                : o.method == "rank" ? InvOptions::Engine::Rank
                                     : InvOptions::Engine::Auto;
  opts.cross_check = o.cross_check;
  opts.jobs = o.jobs;
  const InvResult r = inv(d, opts);
  if (r.certificate.size() != r.value || !check_decycling(d, r.certificate)) {
    throw VerificationFailure("certificate failed verification before output");
  }
  if (o.json_out) {
    json j{{"value", r.value},
           {"method", to_string(r.method)},
           {"certificate", verify::family_to_json(r.certificate)},
           {"tmr", r.tmr ? json(*r.tmr) : json(nullptr)}};
    out << j.dump(2) << "\n";
  } else {
    out << "inv = " << r.value << " (" << to_string(r.method);
    if (r.tmr) out << ", tmr = " << *r.tmr;
    out << ")\ncertificate: " << family_text(r.certificate) << "\n";
  }
  return kExitOk;
}

int cmd_tmr(const Options& o, std::ostream& out) {
  const Digraph d = load_input(o.input, o.format);
  const TmrOutcome t = tmr(d, {.classify = o.classify, .jobs = o.jobs});
  const gf2::Matrix w = t.witness_matrix(d);
  if (gf2::rank(w) != t.tmr) throw VerificationFailure("witness matrix rank differs from tmr");
  if (o.json_out) {
    json j{{"tmr", t.tmr},
           {"ordering", t.ordering.sequence()},
           {"diagonal", diagonal_bits(t.diagonal, d.order())},
           {"witness_matrix", matrix_rows(w)},
           {"classified", t.classified}};
    if (t.classified) {
      j["all_achievers_zero_diag"] = *t.all_achievers_zero_diag;
      j["inv"] = *t.inv_value;
    }
    out << j.dump(2) << "\n";
  } else {
    out << "tmr = " << t.tmr << "\nordering:";
    for (std::size_t v : t.ordering.sequence()) out << " " << v;
    out << "\nwitness matrix:\n" << w.to_string();
    if (t.classified) {
      out << "all minimum achievers zero-diagonal: " << (*t.all_achievers_zero_diag ? "yes" : "no")
          << "\ninv = " << *t.inv_value << "\n";
    }
  }
  return kExitOk;
}

int cmd_mr(const Options& o, std::ostream& out) {
  const Graph g = io::load_graph(o.input);
  const MinRankOutcome m = min_rank(g, o.jobs);
  if (o.json_out) {
    json diags = json::array();
    for (Word d : m.achievers) diags.push_back(diagonal_bits(d, g.order()));
    out << json{{"mr", m.rank},
                {"achiever_count", m.achiever_count},
                {"achievers", diags},
                {"unique", m.unique},
                {"zero_diag_unique", m.zero_diag_unique}}
               .dump(2)
        << "\n";
  } else {
    out << "mr = " << m.rank << "\nachievers: " << m.achiever_count
        << (m.zero_diag_unique ? " (unique, zero diagonal)\n" : "\n");
  }
  return kExitOk;
}

int cmd_c2(const Options& o, std::ostream& out) {
  const Graph g = io::load_graph(o.input);
  const std::size_t value = c2_via_rank(g);
  SetFamily system;
  if (!g.empty()) {
    // A minimum-rank matrix, with a non-zero diagonal whenever one exists.
    const MinRankOutcome m = min_rank(g, o.jobs);
    Word diag = m.achievers.front();
    for (Word d : m.achievers) {
      if (d != 0) {
        diag = d;
        break;
      }
    }
    gf2::Matrix a = g.adjacency_matrix();
    for (std::size_t i = 0; i < g.order(); ++i) a.set(i, i, (diag >> i) & 1U);
    system = system_from_matrix(g, a);
  }
  if (system.size() != value || !is_complementing_system(g, system)) {
    throw VerificationFailure("complementing system failed verification before output");
  }
  if (o.json_out) {
    out << json{{"c2", value}, {"system", verify::family_to_json(system)}}.dump(2) << "\n";
  } else {
    out << "c2 = " << value << "\nsystem: " << family_text(system) << "\n";
  }
  return kExitOk;
}

int cmd_dijoin(const Options& o, std::ostream& out) {
  const Digraph d = dijoin(load_input(o.input, o.format), load_input(o.input2, o.format));
  write_output(o.output, digraph_text(d, o.format), out);
  return kExitOk;
}

int cmd_kjoin(const Options& o, std::ostream& out) {
  std::vector<Digraph> parts;
  for (const auto& f : o.inputs) parts.push_back(load_input(f, o.format));
  write_output(o.output, digraph_text(kjoin(parts), o.format), out);
  return kExitOk;
}

int cmd_enumerate(const Options& o, std::ostream& out) {
  const std::size_t n = *o.n;
  std::vector<std::string> codes;
  if (o.canonical) {
    if (n > 8) throw LimitExceeded("canonical enumeration is limited to 8 vertices");
    for (const Digraph& t : canonical_tournaments(n)) codes.push_back(io::format_compact(t));
  } else {
    if (n > 7) throw LimitExceeded("labeled enumeration is limited to 7 vertices");
    LabeledTournaments stream(n);
    while (auto t = stream.next()) codes.push_back(io::format_compact(*t));
  }
  if (o.json_out) {
    out << json{{"n", n}, {"canonical", o.canonical}, {"count", codes.size()}, {"tournaments", codes}}.dump(2)
        << "\n";
  } else {
    for (const auto& c : codes) out << c << "\n";
  }
  return kExitOk;
}

void print_tallies(const std::map<std::string, std::uint64_t>& tallies, std::ostream& out) {
  for (const auto& [key, count] : tallies) out << "  " << key << ": " << count << "\n";
}

int cmd_verify(const Options& o, std::ostream& out) {
  const verify::RunOptions run{o.seed, o.jobs};
  const verify::SuiteReport r = verify::run_suite(o.name, {o.n, o.n2, o.trials, o.nmax}, run);
  const json j = verify::to_json(r);
  if (!o.output.empty()) write_output(o.output, j.dump(2) + "\n", out);
  if (o.json_out) {
    out << j.dump(2) << "\n";
  } else {
    out << r.suite << ": " << (r.passed() ? "PASS" : "FAIL") << " (" << r.instances_checked << " instances, "
        << r.violations.size() << " violations, seed " << r.seed << ")\n";
    print_tallies(r.tallies, out);
    for (const auto& v : r.violations) out << "violation: " << v.dump() << "\n";
  }
  return r.passed() ? kExitOk : kExitFindings;
}

int cmd_search(const Options& o, std::ostream& out) {
  const verify::RunOptions run{o.seed, o.jobs};
  const std::size_t nmax = o.nmax.value_or(o.name == "c3-conjecture" || o.name == "inv-eq-tmr-plus-one" ? 5 : 4);
  const verify::SearchReport r = verify::run_search(o.name, nmax, run);
  const json j = verify::to_json(r);
  if (!o.output.empty()) write_output(o.output, j.dump(2) + "\n", out);
  if (o.json_out) {
    out << j.dump(2) << "\n";
  } else {
    out << r.question << ": " << r.hits.size() << " hits in " << r.instances_checked << " instances"
        << (r.exhausted ? " (space exhausted)" : " (incomplete)") << "\n  space: " << r.space_description << "\n";
    print_tallies(r.tallies, out);
    for (const auto& h : r.hits) out << "hit: " << h.dump() << "\n";
  }
  return r.hits.empty() ? kExitOk : kExitFindings;
}

int cmd_replay(const Options& o, std::ostream& out) {
  json report;
  try {
    report = json::parse(io::read_file(o.input));
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("report is not valid JSON: ") + e.what());
  }
  const verify::ReplayResult r = verify::replay(report, o.jobs);
  if (o.json_out) {
    out << json{{"ok", r.ok}, {"problems", r.problems}}.dump(2) << "\n";
  } else {
    out << "replay: " << (r.ok ? "consistent" : "INCONSISTENT") << "\n";
    for (const auto& p : r.problems) out << "  " << p << "\n";
  }
  return r.ok ? kExitOk : kExitFindings;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Inversion numbers of oriented graphs", "tinv"};
  app.require_subcommand(1, 1);
  Options o;

  const std::vector<std::string> formats{"auto", "compact", "edges"};
  auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--json", o.json_out, "Emit JSON");
    sub->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
  };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Input format")->check(CLI::IsMember(formats));
  };

  auto* inv_cmd = app.add_subcommand("inv", "Inversion number with a certificate");
  inv_cmd->add_option("input", o.input, "File or t:<n>:<hex> literal")->required();
  inv_cmd->add_option("--method", o.method, "auto, bfs or rank")->check(CLI::IsMember({"auto", "bfs", "rank"}));
  inv_cmd->add_flag("--cross-check", o.cross_check, "Also run the search engine on small tournaments");
  add_format(inv_cmd);
  add_common(inv_cmd);

  auto* tmr_cmd = app.add_subcommand("tmr", "Tournament minimum rank");
  tmr_cmd->add_option("input", o.input, "File or t:<n>:<hex> literal")->required();
  tmr_cmd->add_flag("--classify", o.classify, "Decide whether inv = tmr or tmr + 1");
  add_format(tmr_cmd);
  add_common(tmr_cmd);

  auto* mr_cmd = app.add_subcommand("mr", "Minimum rank of a graph");
  mr_cmd->add_option("graph", o.input, "Graph file")->required();
  add_common(mr_cmd);

  auto* c2_cmd = app.add_subcommand("c2", "Complementation number with a system");
  c2_cmd->add_option("graph", o.input, "Graph file")->required();
  add_common(c2_cmd);

  auto* dijoin_cmd = app.add_subcommand("dijoin", "Dijoin of two digraphs");
  dijoin_cmd->add_option("a", o.input, "First digraph")->required();
  dijoin_cmd->add_option("b", o.input2, "Second digraph")->required();
  dijoin_cmd->add_option("-o,--output", o.output, "Output file");
  add_format(dijoin_cmd);

  auto* kjoin_cmd = app.add_subcommand("kjoin", "Iterated dijoin");
  kjoin_cmd->add_option("inputs", o.inputs, "Digraphs")->required();
  kjoin_cmd->add_option("-o,--output", o.output, "Output file");
  add_format(kjoin_cmd);

  auto* enum_cmd = app.add_subcommand("enumerate", "List tournaments in compact form");
  enum_cmd->add_option("--n", o.n, "Order")->required();
  enum_cmd->add_flag("--canonical", o.canonical, "One per isomorphism class");
  add_common(enum_cmd);

  const auto suites = verify::suite_names();
  auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite");
  verify_cmd->add_option("suite", o.name, "Suite name")->required()->check(CLI::IsMember(suites));
  verify_cmd->add_option("--n", o.n, "Order");
  verify_cmd->add_option("--n2", o.n2, "Second order (theorem-main)");
  verify_cmd->add_option("--trials", o.trials, "Sample count");
  verify_cmd->add_option("--nmax", o.nmax, "Largest order");
  verify_cmd->add_option("--seed", o.seed, "Random seed");
  verify_cmd->add_option("-o,--output", o.output, "Write the JSON report here");
  add_common(verify_cmd);

  const auto searches = verify::search_names();
  auto* search_cmd = app.add_subcommand("search", "Search an open question");
  search_cmd->add_option("question", o.name, "Question name")->required()->check(CLI::IsMember(searches));
  search_cmd->add_option("--nmax", o.nmax, "Largest order");
  search_cmd->add_option("-o,--output", o.output, "Write the JSON report here");
  add_common(search_cmd);

  auto* replay_cmd = app.add_subcommand("replay", "Re-verify a saved report");
  replay_cmd->add_option("report", o.input, "Report file")->required();
  add_common(replay_cmd);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (inv_cmd->parsed()) return cmd_inv(o, out);
    if (tmr_cmd->parsed()) return cmd_tmr(o, out);
    if (mr_cmd->parsed()) return cmd_mr(o, out);
    if (c2_cmd->parsed()) return cmd_c2(o, out);
    if (dijoin_cmd->parsed()) return cmd_dijoin(o, out);
    if (kjoin_cmd->parsed()) return cmd_kjoin(o, out);
    if (enum_cmd->parsed()) return cmd_enumerate(o, out);
    if (verify_cmd->parsed()) return cmd_verify(o, out);
    if (search_cmd->parsed()) return cmd_search(o, out);
    if (replay_cmd->parsed()) return cmd_replay(o, out);
  } catch (const LimitExceeded& e) {
    err << "limit: " << e.what() << "\n";
    return kExitLimit;
  } catch (const VerificationFailure& e) {
    err << "verification failure: " << e.what() << "\n";
    return kExitInternal;
  } catch (const ParseError& e) {
    err << "input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (const json::exception& e) {
    err << "input: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace tinv::cli
