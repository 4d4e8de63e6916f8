#pragma once

// Text formats.
//
//   digraph <n>      header, then one "u v" line per edge u -> v
//   t:<n>:<hex>      tournament; the hex digits are read as a bit string, most significant
//                    bit of the first digit first. Bit k of that string is the k-th pair
//                    (i, j), i < j, in lexicographic order: 1 means i -> j, 0 means j -> i.
//                    Pad bits after the last pair are zero.
//   graph <n>        header, then one "u v" line per undirected edge
//
// Blank lines and lines starting with '#' are ignored in the line-based formats.

#include <string>
#include <string_view>

#include "tinv/digraph.hpp"

namespace tinv::io {

/// Accepts both digraph formats. Throws ParseError with a line number.
Digraph parse_digraph(std::string_view text);
std::string format_digraph(const Digraph& d);

Digraph parse_compact(std::string_view text);
/// Throws std::invalid_argument for non-tournaments.
std::string format_compact(const Digraph& t);

Graph parse_graph(std::string_view text);
std::string format_graph(const Graph& g);

/// Whole file contents. Throws ParseError when it cannot be opened.
std::string read_file(const std::string& path);
/// A compact literal (t:...) or a path to a file in either digraph format.
Digraph load_digraph(const std::string& literal_or_path);
Graph load_graph(const std::string& path);

}  // namespace tinv::io
