#pragma once

#include <filesystem>
#include <iosfwd>

#include "regmatch/graph.hpp"

namespace regmatch {

// Edge-list text format:
//   n d          (d = 0 for irregular graphs)
//   p q          or   p q w   (0-based, w a nonnegative rational)
// Blank lines and '#' comments are ignored.
BipartiteGraph read_graph(std::istream& in);
void write_graph(std::ostream& out, const BipartiteGraph& g);

BipartiteGraph load_graph(const std::filesystem::path& path);
void store_graph(const BipartiteGraph& g, const std::filesystem::path& path);

}  // namespace regmatch
