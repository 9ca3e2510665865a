#include "regmatch/bvn.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include "regmatch/error.hpp"
#include "regmatch/strength.hpp"

namespace regmatch {
namespace {

[[noreturn]] void parse_fail(int line_no, const std::string& what) {
  throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no) + ": " + what);
}

int parse_int(const std::string& token, int line_no) {
  try {
    std::size_t used = 0;
    const int value = std::stoi(token, &used);
    if (used != token.size()) parse_fail(line_no, "bad integer '" + token + "'");
    return value;
  } catch (const std::logic_error&) {
    parse_fail(line_no, "bad integer '" + token + "'");
  }
}

// Exponent k when x == 2^k, otherwise -1.
int log2_exact(const BigInt& x) {
  if (x <= 0) return -1;
  const auto k = static_cast<int>(boost::multiprecision::msb(x));
  return boost::multiprecision::lsb(x) == static_cast<unsigned>(k) ? k : -1;
}

std::vector<int> random_permutation(int n, std::mt19937_64& rng) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  return perm;
}

}  // namespace

DoublyStochasticMatrix::DoublyStochasticMatrix(int n, std::vector<MatrixEntry> entries) : n_(n) {
  if (n < 1) throw Error(ErrorCode::kInvalidInput, "matrix dimension must be positive");
  std::vector<Rational> row_sum(static_cast<std::size_t>(n)), col_sum(static_cast<std::size_t>(n));
  std::sort(entries.begin(), entries.end(),
            [](const MatrixEntry& x, const MatrixEntry& y) { return std::pair(x.row, x.col) < std::pair(y.row, y.col); });
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto& e = entries[k];
    if (e.row < 0 || e.row >= n || e.col < 0 || e.col >= n) throw Error(ErrorCode::kInvalidInput, "entry index out of range");
    if (e.value < 0) throw Error(ErrorCode::kInvalidInput, "negative matrix entry");
    if (k > 0 && entries[k - 1].row == e.row && entries[k - 1].col == e.col) {
      throw Error(ErrorCode::kInvalidInput, "duplicate matrix entry");
    }
    if (e.value == 0) continue;
    row_sum[static_cast<std::size_t>(e.row)] += e.value;
    col_sum[static_cast<std::size_t>(e.col)] += e.value;
    entries_.push_back(e);
  }
  for (int i = 0; i < n; ++i) {
    if (row_sum[static_cast<std::size_t>(i)] != 1) throw Error(ErrorCode::kInvalidInput, "row " + std::to_string(i) + " does not sum to 1");
    if (col_sum[static_cast<std::size_t>(i)] != 1) throw Error(ErrorCode::kInvalidInput, "column " + std::to_string(i) + " does not sum to 1");
  }
  for (const auto& e : entries_) {
    const int k = log2_exact(boost::multiprecision::denominator(e.value));
    if (k < 0) {
      dyadic_ = false;
      bits_ = -1;
      break;
    }
    bits_ = std::max(bits_, k);
  }
}

BipartiteGraph DoublyStochasticMatrix::support_graph(bool weighted) const {
  std::vector<BipartiteGraph::Edge> edges;
  std::vector<Rational> weights;
  for (const auto& e : entries_) {
    edges.push_back({e.row, e.col});
    if (weighted) weights.push_back(e.value);
  }
  return BipartiteGraph(n_, n_, std::move(edges), std::move(weights));
}

DoublyStochasticMatrix read_matrix(std::istream& in) {
  std::string line;
  int line_no = 0;
  int n = -1;
  std::vector<MatrixEntry> entries;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    std::istringstream fields(hash == std::string::npos ? line : line.substr(0, hash));
    std::vector<std::string> tokens;
    for (std::string tok; fields >> tok;) tokens.push_back(tok);
    if (tokens.empty()) continue;
    if (n < 0) {
      if (tokens.size() != 1) parse_fail(line_no, "header must be 'n'");
      n = parse_int(tokens[0], line_no);
      if (n < 1) parse_fail(line_no, "dimension must be positive");
      continue;
    }
    if (tokens.size() != 3) parse_fail(line_no, "expected 'i j value'");
    MatrixEntry e;
    e.row = parse_int(tokens[0], line_no);
    e.col = parse_int(tokens[1], line_no);
    try {
      e.value = parse_rational(tokens[2]);
    } catch (const Error& err) {
      parse_fail(line_no, err.what());
    }
    entries.push_back(std::move(e));
  }
  if (n < 0) throw Error(ErrorCode::kParseError, "missing header");
  return DoublyStochasticMatrix(n, std::move(entries));
}

void write_matrix(std::ostream& out, const DoublyStochasticMatrix& m) {
  out << m.n() << '\n';
  for (const auto& e : m.entries()) out << e.row << ' ' << e.col << ' ' << format_rational(e.value) << '\n';
}

DoublyStochasticMatrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  return read_matrix(in);
}

DoublyStochasticMatrix random_dyadic_matrix(int n, int k, int bits, std::uint64_t seed) {
  if (n < 1 || k < 1 || bits < 0 || bits > 30 || k > (1 << bits)) {
    throw Error(ErrorCode::kInvalidParameters, "need n >= 1 and 1 <= k <= 2^bits with bits <= 30");
  }
  std::mt19937_64 rng(seed);
  // Split 2^bits into k positive parts via k - 1 distinct cut points.
  const int total = 1 << bits;
  std::vector<int> cuts(static_cast<std::size_t>(total - 1));
  std::iota(cuts.begin(), cuts.end(), 1);
  std::shuffle(cuts.begin(), cuts.end(), rng);
  cuts.resize(static_cast<std::size_t>(k - 1));
  cuts.push_back(0);
  cuts.push_back(total);
  std::sort(cuts.begin(), cuts.end());
  std::map<std::pair<int, int>, Rational> acc;
  for (int i = 0; i < k; ++i) {
    const Rational w(cuts[static_cast<std::size_t>(i) + 1] - cuts[static_cast<std::size_t>(i)], total);
    const auto perm = random_permutation(n, rng);
    for (int r = 0; r < n; ++r) acc[{r, perm[static_cast<std::size_t>(r)]}] += w;
  }
  std::vector<MatrixEntry> entries;
  for (const auto& [pos, value] : acc) entries.push_back({pos.first, pos.second, value});
  return DoublyStochasticMatrix(n, std::move(entries));
}

std::vector<bool> euler_orient(const BipartiteGraph& g, std::int64_t* touches) {
  const int nl = g.n_left();
  const int nv = g.num_vertices();
  auto incident = [&](int v) { return v < nl ? g.left_incident(v) : g.right_incident(v - nl); };
  for (int v = 0; v < nv; ++v) {
    if (incident(v).size() % 2 != 0) throw Error(ErrorCode::kInvalidInput, "orientation needs even degrees");
  }
  std::vector<bool> left_to_right(static_cast<std::size_t>(g.num_edges()), false);
  std::vector<char> used(static_cast<std::size_t>(g.num_edges()), 0);
  std::vector<std::size_t> cursor(static_cast<std::size_t>(nv), 0);
  std::int64_t scanned = 0;
  // With all degrees even, a walk can only get stuck where it started, so
  // each walk is a closed trail and the orientation is balanced.
  for (int start = 0; start < nv; ++start) {
    int v = start;
    while (true) {
      const auto inc = incident(v);
      auto& pos = cursor[static_cast<std::size_t>(v)];
      while (pos < inc.size() && used[static_cast<std::size_t>(inc[pos])]) {
        ++pos;
        ++scanned;
      }
      if (pos == inc.size()) break;
      const EdgeId e = inc[pos];
      ++pos;
      ++scanned;
      used[static_cast<std::size_t>(e)] = 1;
      const bool from_left = v < nl;
      left_to_right[static_cast<std::size_t>(e)] = from_left;
      v = from_left ? nl + g.edge(e).q : g.edge(e).p;
    }
  }
  if (touches) *touches += scanned;
  return left_to_right;
}

bool BitsResult::invariants_ok() const {
  return std::all_of(rounds.begin(), rounds.end(), [](const BitRound& r) {
    return r.even_degrees && r.stochastic_ok && r.support_ok && r.bit_cleared;
  });
}

BitsResult bvn_match_bits(const DoublyStochasticMatrix& m) {
  if (!m.dyadic()) throw Error(ErrorCode::kUnsupportedInput, "bit elimination needs dyadic entries");
  const int b = m.bits();
  if (b > 62) throw Error(ErrorCode::kUnsupportedInput, "more than 62 bits");
  const int n = m.n();
  const std::int64_t one = std::int64_t{1} << b;
  const auto& entries = m.entries();
  std::vector<std::int64_t> num(entries.size());
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const Rational scaled = entries[k].value * one;
    num[k] = static_cast<std::int64_t>(boost::multiprecision::numerator(scaled));
  }
  BitsResult result;
  while (true) {
    std::int64_t low = 0;
    for (std::int64_t x : num) {
      if (x != 0 && x != one) low |= x & -x;
    }
    if (low == 0) break;
    const std::int64_t step = low & -low;
    BitRound round;
    round.bit = b - std::countr_zero(static_cast<std::uint64_t>(step));
    std::vector<std::size_t> ids;
    std::vector<BipartiteGraph::Edge> edges;
    for (std::size_t k = 0; k < num.size(); ++k) {
      if (num[k] & step) {
        ids.push_back(k);
        edges.push_back({entries[k].row, entries[k].col});
      }
    }
    round.edges = static_cast<int>(ids.size());
    const BipartiteGraph layer(n, n, std::move(edges));
    round.even_degrees = true;
    for (int v = 0; v < n; ++v) {
      if (layer.left_degree(v) % 2 != 0 || layer.right_degree(v) % 2 != 0) round.even_degrees = false;
    }
    if (!round.even_degrees) throw Error(ErrorCode::kInvalidInput, "bit layer has an odd-degree vertex");
    const auto forward = euler_orient(layer);
    const std::vector<std::int64_t> before = num;
    for (std::size_t k = 0; k < ids.size(); ++k) num[ids[k]] += forward[k] ? step : -step;

    std::vector<std::int64_t> row(static_cast<std::size_t>(n), 0), col(static_cast<std::size_t>(n), 0);
    round.support_ok = round.bit_cleared = true;
    for (std::size_t k = 0; k < num.size(); ++k) {
      if (num[k] < 0 || (before[k] == 0 && num[k] != 0)) round.support_ok = false;
      if (num[k] & step) round.bit_cleared = false;
      row[static_cast<std::size_t>(entries[k].row)] += num[k];
      col[static_cast<std::size_t>(entries[k].col)] += num[k];
    }
    round.stochastic_ok = std::all_of(row.begin(), row.end(), [&](std::int64_t s) { return s == one; }) &&
                          std::all_of(col.begin(), col.end(), [&](std::int64_t s) { return s == one; });
    result.rounds.push_back(round);
  }
  result.matching = Matching::empty(n, n);
  for (std::size_t k = 0; k < num.size(); ++k) {
    if (num[k] == one) result.matching.match(entries[k].row, entries[k].col);
  }
  return result;
}

SampledBvnResult bvn_match_sampled(const DoublyStochasticMatrix& m, const SamplerConfig& cfg) {
  SampledBvnResult result;
  const BipartiteGraph g = m.support_graph(true);
  if (m.n() < 2) {
    result.matching = hopcroft_karp(g).matching;
    result.sampled_edges = g.num_edges();
    return result;
  }
  const StrengthMap s = exact_strengths(g);
  const EdgeSet kept = weighted_bk_sample_ids(g, s, Rational(1, 2), cfg);
  result.sampled_edges = static_cast<int>(kept.size());
  result.matching = hopcroft_karp(g.subgraph(kept)).matching;
  if (result.matching.size < m.n()) {
    result.fallback_used = true;
    result.matching = complete_matching(g, std::move(result.matching)).matching;
  }
  return result;
}

BvnDecomposition bvn_decompose(const DoublyStochasticMatrix& m, const SamplerConfig& cfg) {
  BvnDecomposition dec;
  std::vector<MatrixEntry> rest = m.entries();
  Rational mass = 1;
  SamplerConfig step_cfg = cfg;
  while (mass > 0) {
    std::vector<MatrixEntry> normalised;
    for (const auto& e : rest) {
      if (e.value > 0) normalised.push_back({e.row, e.col, e.value / mass});
    }
    const DoublyStochasticMatrix current(m.n(), normalised);
    const SampledBvnResult found = bvn_match_sampled(current, step_cfg);
    ++step_cfg.seed;
    if (found.fallback_used) ++dec.fallbacks;
    BvnTerm term;
    term.permutation = found.matching.left_mate;
    bool first = true;
    for (const auto& e : rest) {
      if (e.value > 0 && term.permutation[static_cast<std::size_t>(e.row)] == e.col) {
        if (first || e.value < term.coefficient) term.coefficient = e.value;
        first = false;
      }
    }
    for (auto& e : rest) {
      if (term.permutation[static_cast<std::size_t>(e.row)] == e.col) e.value -= term.coefficient;
    }
    mass -= term.coefficient;
    dec.terms.push_back(std::move(term));
  }
  return dec;
}

bool reconstructs(const DoublyStochasticMatrix& m, const BvnDecomposition& dec) {
  std::map<std::pair<int, int>, Rational> acc;
  Rational total = 0;
  for (const auto& term : dec.terms) {
    if (term.coefficient <= 0 || static_cast<int>(term.permutation.size()) != m.n()) return false;
    std::vector<char> seen(static_cast<std::size_t>(m.n()), 0);
    for (int r = 0; r < m.n(); ++r) {
      const int c = term.permutation[static_cast<std::size_t>(r)];
      if (c < 0 || c >= m.n() || seen[static_cast<std::size_t>(c)]) return false;
      seen[static_cast<std::size_t>(c)] = 1;
      acc[{r, c}] += term.coefficient;
    }
    total += term.coefficient;
  }
  if (total != 1 || acc.size() != m.entries().size()) return false;
  return std::all_of(m.entries().begin(), m.entries().end(), [&](const MatrixEntry& e) {
    const auto it = acc.find({e.row, e.col});
    return it != acc.end() && it->second == e.value;
  });
}

bool in_support(const DoublyStochasticMatrix& m, const Matching& matching) {
  if (matching.size != m.n() || static_cast<int>(matching.left_mate.size()) != m.n()) return false;
  return is_valid_matching(m.support_graph(false), matching);
}

HalvingResult euler_halve(const BipartiteGraph& g) {
  const auto degree = regular_degree(g);
  if (!degree || *degree < 1 || !std::has_single_bit(static_cast<unsigned>(*degree))) {
    throw Error(ErrorCode::kInvalidParameters, "halving needs a regular graph with degree a power of two");
  }
  HalvingResult result;
  BipartiteGraph current = g;
  result.level_edges.push_back(current.num_edges());
  for (int d = *degree; d > 1; d /= 2) {
    const auto forward = euler_orient(current, &result.touches);
    EdgeSet keep;
    for (EdgeId e = 0; e < current.num_edges(); ++e) {
      if (forward[static_cast<std::size_t>(e)]) keep.push_back(e);
    }
    current = current.subgraph(keep);
    if (!is_regular(current, d / 2)) throw Error(ErrorCode::kInvalidInput, "halving lost regularity");
    result.level_edges.push_back(current.num_edges());
    ++result.depth;
  }
  result.matching = Matching::empty_for(current);
  for (const auto& e : current.edges()) result.matching.match(e.p, e.q);
  return result;
}

}  // namespace regmatch
