#include "tinv/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "tinv/error.hpp"

namespace tinv::io {

namespace {

struct Line {
  std::size_t number;
  std::string text;
};

std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    out.push_back({number, line});
  }
  return out;
}

std::size_t parse_count(std::string_view token, std::size_t line, const char* what) {
  std::size_t value = 0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end || token.empty()) {
    throw ParseError(std::string("expected ") + what + ", got '" + std::string(token) + "'", line);
  }
  return value;
}

// Header "<keyword> <n>" followed by "u v" lines, handed to `add` as (line, u, v).
template <typename Add>
std::size_t parse_edge_list(std::string_view text, std::string_view keyword, Add&& add) {
  const auto lines = content_lines(text);
  if (lines.empty()) throw ParseError("empty input");
  std::istringstream header(lines.front().text);
  std::string tag;
  std::string count;
  std::string extra;
  if (!(header >> tag >> count) || tag != keyword || (header >> extra)) {
    throw ParseError("expected header '" + std::string(keyword) + " <n>'", lines.front().number);
  }
  const std::size_t n = parse_count(count, lines.front().number, "vertex count");
  if (n > kMaxOrder) throw ParseError("more than 64 vertices", lines.front().number);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::istringstream row(lines[i].text);
    std::string a;
    std::string b;
    if (!(row >> a >> b) || (row >> extra)) throw ParseError("expected 'u v'", lines[i].number);
    const std::size_t u = parse_count(a, lines[i].number, "vertex");
    const std::size_t v = parse_count(b, lines[i].number, "vertex");
    if (u >= n || v >= n) throw ParseError("vertex out of range", lines[i].number);
    add(lines[i].number, u, v);
  }
  return n;
}

}  // namespace

Digraph parse_digraph(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text.substr(first, 2) == "t:") {
    return parse_compact(text.substr(first));
  }
  std::vector<std::pair<std::size_t, Edge>> edges;
  const std::size_t n = parse_edge_list(text, "digraph", [&](std::size_t line, std::size_t u, std::size_t v) {
    edges.push_back({line, Edge{u, v}});
  });
  Digraph d(n);
  for (const auto& [line, e] : edges) {
    try {
      d.add_edge(e.from, e.to);
    } catch (const std::invalid_argument& err) {
      throw ParseError(err.what(), line);
    }
  }
  return d;
}

std::string format_digraph(const Digraph& d) {
  std::string s = "digraph " + std::to_string(d.order()) + "\n";
  for (const Edge& e : d.edges()) s += std::to_string(e.from) + " " + std::to_string(e.to) + "\n";
  return s;
}

Digraph parse_compact(std::string_view text) {
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' ')) {
    text.remove_suffix(1);
  }
  if (text.substr(0, 2) != "t:") throw ParseError("compact tournament must start with 't:'");
  const auto colon = text.find(':', 2);
  if (colon == std::string_view::npos) throw ParseError("expected 't:<n>:<hex>'");
  const std::size_t n = parse_count(text.substr(2, colon - 2), 0, "vertex count");
  if (n > kMaxOrder) throw ParseError("more than 64 vertices");
  const std::string_view hex = text.substr(colon + 1);
  const std::size_t pairs = pair_count(n);
  const std::size_t digits = (pairs + 3) / 4;
  if (hex.size() != digits && !(pairs == 0 && hex == "0")) {
    throw ParseError("expected " + std::to_string(digits) + " hex digits for " + std::to_string(n) +
                     " vertices");
  }
  std::vector<bool> bits;
  for (char c : hex) {
    int v = 0;
    if (c >= '0' && c <= '9') {
      v = c - '0';
    } else if (c >= 'a' && c <= 'f') {
      v = c - 'a' + 10;
    } else if (c >= 'A' && c <= 'F') {
      v = c - 'A' + 10;
    } else {
      throw ParseError(std::string("invalid hex digit '") + c + "'");
    }
    for (int b = 3; b >= 0; --b) bits.push_back(((v >> b) & 1) != 0);
  }
  for (std::size_t k = pairs; k < bits.size(); ++k) {
    if (bits[k]) throw ParseError("non-zero padding bits in compact tournament");
  }
  Digraph t(n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++k) {
      if (bits[k]) {
        t.add_edge(i, j);
      } else {
        t.add_edge(j, i);
      }
    }
  }
  return t;
}

std::string format_compact(const Digraph& t) {
  if (!t.is_tournament()) throw std::invalid_argument("compact format needs a tournament");
  const std::size_t n = t.order();
  const std::size_t pairs = pair_count(n);
  std::vector<bool> bits;
  bits.reserve(pairs + 3);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) bits.push_back(t.has_edge(i, j));
  }
  while (bits.size() % 4 != 0) bits.push_back(false);
  std::string s = "t:" + std::to_string(n) + ":";
  if (bits.empty()) return s + "0";
  static constexpr char kHex[] = "0123456789abcdef";
  for (std::size_t k = 0; k < bits.size(); k += 4) {
    const int v = (bits[k] << 3) | (bits[k + 1] << 2) | (bits[k + 2] << 1) | static_cast<int>(bits[k + 3]);
    s.push_back(kHex[v]);
  }
  return s;
}

Graph parse_graph(std::string_view text) {
  std::vector<std::pair<std::size_t, std::pair<std::size_t, std::size_t>>> edges;
  const std::size_t n = parse_edge_list(text, "graph", [&](std::size_t line, std::size_t u, std::size_t v) {
    edges.push_back({line, {u, v}});
  });
  Graph g(n);
  for (const auto& [line, e] : edges) {
    if (e.first == e.second) throw ParseError("loop at vertex " + std::to_string(e.first), line);
    if (g.has_edge(e.first, e.second)) throw ParseError("duplicate edge", line);
    g.add_edge(e.first, e.second);
  }
  return g;
}

std::string format_graph(const Graph& g) {
  std::string s = "graph " + std::to_string(g.order()) + "\n";
  for (const auto& [u, v] : g.edges()) s += std::to_string(u) + " " + std::to_string(v) + "\n";
  return s;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Digraph load_digraph(const std::string& literal_or_path) {
  if (literal_or_path.rfind("t:", 0) == 0) return parse_compact(literal_or_path);
  return parse_digraph(read_file(literal_or_path));
}

Graph load_graph(const std::string& path) { return parse_graph(read_file(path)); }

}  // namespace tinv::io
