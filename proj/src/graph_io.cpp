#include "regmatch/graph_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "regmatch/error.hpp"

namespace regmatch {
namespace {

std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

[[noreturn]] void parse_fail(int line_no, const std::string& what) {
  throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no) + ": " + what);
}

int parse_index(const std::string& token, int line_no) {
  try {
    std::size_t used = 0;
    const int value = std::stoi(token, &used);
    if (used != token.size()) parse_fail(line_no, "bad integer '" + token + "'");
    return value;
  } catch (const std::logic_error&) {
    parse_fail(line_no, "bad integer '" + token + "'");
  }
}

}  // namespace

BipartiteGraph read_graph(std::istream& in) {
  std::string line;
  int line_no = 0;
  bool have_header = false;
  int n = 0;
  int declared_degree = 0;
  std::vector<BipartiteGraph::Edge> edges;
  std::vector<Rational> weights;
  bool any_weight = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(strip_comment(line));
    std::vector<std::string> tokens;
    for (std::string tok; fields >> tok;) tokens.push_back(tok);
    if (tokens.empty()) continue;
    if (!have_header) {
      if (tokens.size() != 2) parse_fail(line_no, "header must be 'n d'");
      n = parse_index(tokens[0], line_no);
      declared_degree = parse_index(tokens[1], line_no);
      if (n < 0 || declared_degree < 0) parse_fail(line_no, "negative header value");
      have_header = true;
      continue;
    }
    if (tokens.size() != 2 && tokens.size() != 3) parse_fail(line_no, "expected 'p q' or 'p q w'");
    const int p = parse_index(tokens[0], line_no);
    const int q = parse_index(tokens[1], line_no);
    if (p < 0 || p >= n || q < 0 || q >= n) parse_fail(line_no, "vertex index out of range");
    Rational w(1);
    if (tokens.size() == 3) {
      try {
        w = parse_rational(tokens[2]);
      } catch (const Error& e) {
        parse_fail(line_no, e.what());
      }
      if (w < 0) parse_fail(line_no, "negative weight");
      any_weight = true;
    }
    edges.push_back({p, q});
    weights.push_back(w);
  }
  if (!have_header) throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no) + ": missing header");
  if (!any_weight) weights.clear();
  BipartiteGraph g(n, n, std::move(edges), std::move(weights));
  if (declared_degree != 0 && !is_regular(g, declared_degree)) {
    throw Error(ErrorCode::kParseError,
                "line 1: header declares " + std::to_string(declared_degree) + "-regular but graph is not");
  }
  return g;
}

void write_graph(std::ostream& out, const BipartiteGraph& g) {
  if (g.n_left() != g.n_right()) throw Error(ErrorCode::kInvalidInput, "edge-list format needs equal sides");
  out << g.n_left() << ' ' << regular_degree(g).value_or(0) << '\n';
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    out << g.edge(e).p << ' ' << g.edge(e).q;
    if (g.weighted()) out << ' ' << format_rational(g.weight(e));
    out << '\n';
  }
}

BipartiteGraph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  return read_graph(in);
}

void store_graph(const BipartiteGraph& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  write_graph(out, g);
  if (!out) throw Error(ErrorCode::kIoError, "write failed for " + path.string());
}

}  // namespace regmatch
