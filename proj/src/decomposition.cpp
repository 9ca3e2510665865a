#include "regmatch/decomposition.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "regmatch/error.hpp"
#include "regmatch/strength.hpp"

namespace regmatch {
namespace {

// Number of edges leaving `set` but staying inside `scope` (both given as flags).
std::int64_t boundary(const UndirectedGraph& ug, const std::vector<char>& in_set, const std::vector<char>& in_scope) {
  std::int64_t total = 0;
  for (const auto& e : ug.edges) {
    const auto u = static_cast<std::size_t>(e.u);
    const auto v = static_cast<std::size_t>(e.v);
    if (!in_scope[u] || !in_scope[v]) continue;
    if (in_set[u] != in_set[v]) total += e.w;
  }
  return total;
}

std::vector<char> flags(int size, const std::vector<int>& members) {
  std::vector<char> out(static_cast<std::size_t>(size), 0);
  for (int v : members) out[static_cast<std::size_t>(v)] = 1;
  return out;
}

// Kuhn's algorithm on bitmasks: can every vertex of `left` be matched into `right`?
bool saturates(const std::vector<std::uint32_t>& nbr, std::uint32_t left, std::uint32_t right) {
  std::vector<int> owner(32, -1);
  for (std::uint32_t rest = left; rest; rest &= rest - 1) {
    const int start = std::countr_zero(rest);
    std::uint32_t visited = 0;
    // Iterative augmenting search.
    struct Frame {
      int a;
      std::uint32_t options;
    };
    std::vector<Frame> stack{{start, nbr[static_cast<std::size_t>(start)] & right}};
    std::vector<int> via;
    bool found = false;
    while (!stack.empty() && !found) {
      Frame& top = stack.back();
      const std::uint32_t options = top.options & ~visited;
      if (!options) {
        stack.pop_back();
        if (!via.empty()) via.pop_back();
        continue;
      }
      const int b = std::countr_zero(options);
      visited |= 1u << b;
      top.options &= ~(1u << b);
      if (owner[static_cast<std::size_t>(b)] < 0) {
        via.push_back(b);
        // Flip along the stack: stack[i].a takes via[i].
        for (std::size_t i = 0; i < stack.size(); ++i) owner[static_cast<std::size_t>(via[i])] = stack[i].a;
        found = true;
      } else {
        via.push_back(b);
        const int next = owner[static_cast<std::size_t>(b)];
        stack.push_back({next, nbr[static_cast<std::size_t>(next)] & right});
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace

Decomposition decompose(const BipartiteGraph& g) {
  const auto degree = regular_degree(g);
  if (!degree) throw Error(ErrorCode::kInvalidInput, "decomposition needs a regular graph");
  const std::int64_t d = *degree;
  const UndirectedGraph ug = to_undirected(g);
  const int nv = ug.num_vertices;
  Decomposition dec;
  std::vector<int> remaining(static_cast<std::size_t>(nv));
  for (int v = 0; v < nv; ++v) remaining[static_cast<std::size_t>(v)] = v;

  while (!remaining.empty()) {
    if (remaining.size() == 1) {
      dec.pieces.push_back(remaining);
      break;
    }
    const MinCutResult cut = min_cut_induced(ug, remaining);
    if (4 * cut.value >= d) {
      dec.pieces.push_back(remaining);
      break;
    }
    const auto in_scope = flags(nv, remaining);
    std::vector<int> piece = cut.side;
    if (2 * piece.size() > remaining.size()) {
      std::vector<int> other;
      std::set_difference(remaining.begin(), remaining.end(), piece.begin(), piece.end(), std::back_inserter(other));
      piece = std::move(other);
    }
    // Greedy shrink while the boundary stays below d/4.
    for (bool changed = true; changed && piece.size() > 1;) {
      changed = false;
      for (std::size_t i = 0; i < piece.size() && piece.size() > 1; ++i) {
        std::vector<int> trial = piece;
        trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
        if (4 * boundary(ug, flags(nv, trial), in_scope) < d) {
          piece = std::move(trial);
          changed = true;
          --i;
        }
      }
    }
    // Refine until the piece has no internal cut of value <= d/8; one side of
    // such a cut always keeps a boundary below d/4.
    while (piece.size() > 1) {
      const MinCutResult inner = min_cut_induced(ug, piece);
      if (8 * inner.value > d) break;
      std::vector<int> other;
      std::set_difference(piece.begin(), piece.end(), inner.side.begin(), inner.side.end(), std::back_inserter(other));
      const std::int64_t side_boundary = boundary(ug, flags(nv, inner.side), in_scope);
      const std::int64_t other_boundary = boundary(ug, flags(nv, other), in_scope);
      if (side_boundary <= other_boundary) {
        piece = inner.side;
      } else {
        piece = std::move(other);
      }
      if (4 * std::min(side_boundary, other_boundary) >= d) {
        throw Error(ErrorCode::kInvalidInput, "refinement lost the boundary bound");
      }
    }
    const auto in_piece = flags(nv, piece);
    for (std::size_t id = 0; id < ug.edges.size(); ++id) {
      const auto& e = ug.edges[id];
      const auto u = static_cast<std::size_t>(e.u);
      const auto v = static_cast<std::size_t>(e.v);
      if (in_scope[u] && in_scope[v] && in_piece[u] != in_piece[v]) dec.removed_edges.push_back(static_cast<EdgeId>(id));
    }
    dec.pieces.push_back(piece);
    std::vector<int> rest;
    std::set_difference(remaining.begin(), remaining.end(), piece.begin(), piece.end(), std::back_inserter(rest));
    remaining = std::move(rest);
  }
  std::sort(dec.removed_edges.begin(), dec.removed_edges.end());
  return dec;
}

DecompositionReport validate_decomposition(const BipartiteGraph& g, const Decomposition& dec) {
  const auto degree = regular_degree(g);
  if (!degree) throw Error(ErrorCode::kInvalidInput, "decomposition needs a regular graph");
  const UndirectedGraph ug = to_undirected(g);
  const int nv = ug.num_vertices;
  std::vector<int> owner(static_cast<std::size_t>(nv), -1);
  for (int i = 0; i < dec.k(); ++i) {
    if (dec.pieces[static_cast<std::size_t>(i)].empty()) throw Error(ErrorCode::kInvalidInput, "empty piece");
    for (int v : dec.pieces[static_cast<std::size_t>(i)]) {
      if (v < 0 || v >= nv || owner[static_cast<std::size_t>(v)] >= 0) {
        throw Error(ErrorCode::kInvalidInput, "pieces do not partition the vertex set");
      }
      owner[static_cast<std::size_t>(v)] = i;
    }
  }
  if (std::find(owner.begin(), owner.end(), -1) != owner.end()) {
    throw Error(ErrorCode::kInvalidInput, "pieces do not cover the vertex set");
  }
  EdgeSet crossing;
  for (std::size_t id = 0; id < ug.edges.size(); ++id) {
    const auto& e = ug.edges[id];
    if (owner[static_cast<std::size_t>(e.u)] != owner[static_cast<std::size_t>(e.v)]) crossing.push_back(static_cast<EdgeId>(id));
  }
  EdgeSet declared = dec.removed_edges;
  std::sort(declared.begin(), declared.end());
  if (declared != crossing) throw Error(ErrorCode::kInvalidInput, "removed edges differ from crossing edges");

  DecompositionReport report;
  report.d = *degree;
  report.n = g.n_left();
  report.k = dec.k();
  report.removed = static_cast<int>(crossing.size());
  report.mincut_ok = true;
  for (const auto& piece : dec.pieces) {
    if (piece.size() == 1) {
      report.piece_min_cuts.push_back(-1);
      continue;
    }
    const MinCutResult cut = min_cut_induced(ug, piece);
    report.piece_min_cuts.push_back(cut.value);
    if (8 * cut.value <= report.d) report.mincut_ok = false;
  }
  // Each crossing edge lies on the boundary of exactly two pieces.
  report.boundary_total = 2 * static_cast<std::int64_t>(crossing.size());
  report.count_ok = static_cast<std::int64_t>(report.k) * report.d <= 4LL * report.n + report.d;
  report.boundary_ok = report.boundary_total <= 2LL * report.n;
  report.removed_ok = report.removed <= report.n;
  return report;
}

EdgeSet relevant_edges(const BipartiteGraph& g, const Decomposition& dec) {
  const int nl = g.n_left();
  std::vector<int> owner(static_cast<std::size_t>(g.num_vertices()), -1);
  for (int i = 0; i < dec.k(); ++i) {
    for (int v : dec.pieces[static_cast<std::size_t>(i)]) owner[static_cast<std::size_t>(v)] = i;
  }
  EdgeSet out;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const int a = owner[static_cast<std::size_t>(g.edge(e).p)];
    if (a >= 0 && a == owner[static_cast<std::size_t>(nl + g.edge(e).q)]) out.push_back(e);
  }
  return out;
}

RelevantPairSet relevant_pairs(const BipartiteGraph& g, const Decomposition& dec) {
  const int nl = g.n_left();
  RelevantPairSet out;
  out.relevant_edges = relevant_edges(g, dec);
  for (int i = 0; i < dec.k(); ++i) {
    std::vector<int> left, right;
    for (int v : dec.pieces[static_cast<std::size_t>(i)]) {
      if (v < nl) left.push_back(v);
      else right.push_back(v - nl);
    }
    if (static_cast<int>(left.size()) > kRelevantPieceCap || static_cast<int>(right.size()) > kRelevantPieceCap) {
      throw Error(ErrorCode::kInstanceTooLarge,
                  "relevant-pair enumeration limited to " + std::to_string(kRelevantPieceCap) + " vertices per side");
    }
    std::vector<int> right_local(static_cast<std::size_t>(g.n_right()), -1);
    for (std::size_t j = 0; j < right.size(); ++j) right_local[static_cast<std::size_t>(right[j])] = static_cast<int>(j);
    std::vector<std::uint32_t> nbr(left.size(), 0);
    for (std::size_t a = 0; a < left.size(); ++a) {
      for (EdgeId e : g.left_incident(left[a])) {
        const int b = right_local[static_cast<std::size_t>(g.edge(e).q)];
        if (b >= 0) nbr[a] |= 1u << b;
      }
    }
    auto to_pair = [&](std::uint32_t a_mask, std::uint32_t b_mask) {
      std::vector<int> a, b;
      for (std::size_t j = 0; j < left.size(); ++j) if (a_mask >> j & 1u) a.push_back(left[j]);
      for (std::size_t j = 0; j < right.size(); ++j) if (b_mask >> j & 1u) b.push_back(right[j]);
      return VertexPair(std::move(a), std::move(b));
    };
    const std::uint32_t a_full = left.empty() ? 0u : (1u << left.size()) - 1u;
    for (std::uint32_t a_mask = 1; a_mask <= a_full && a_mask != 0; ++a_mask) {
      const int size = std::popcount(a_mask);
      if (size == 1) {
        out.pairs.push_back({to_pair(a_mask, 0u), i});
        continue;
      }
      std::uint32_t hood = 0;
      for (std::uint32_t r = a_mask; r; r &= r - 1) hood |= nbr[static_cast<std::size_t>(std::countr_zero(r))];
      // B ranges over subsets of N(A) of size |A| - 1 such that A minus any
      // single vertex is saturated into B.
      for (std::uint32_t b_mask = hood;; b_mask = (b_mask - 1) & hood) {
        if (std::popcount(b_mask) == size - 1) {
          bool ok = true;
          for (std::uint32_t r = a_mask; r && ok; r &= r - 1) {
            const std::uint32_t drop = r & (~r + 1u);
            ok = saturates(nbr, a_mask & ~drop, b_mask);
          }
          if (ok) out.pairs.push_back({to_pair(a_mask, b_mask), i});
        }
        if (b_mask == 0) break;
      }
    }
  }
  return out;
}

bool check_hall_hitting(const BipartiteGraph& g, const RelevantPairSet& rel, const EdgeSet& e_star) {
  std::vector<char> usable(static_cast<std::size_t>(g.num_edges()), 0);
  std::vector<char> relevant(static_cast<std::size_t>(g.num_edges()), 0);
  for (EdgeId e : rel.relevant_edges) relevant[static_cast<std::size_t>(e)] = 1;
  for (EdgeId e : e_star) {
    if (e < 0 || e >= g.num_edges()) throw Error(ErrorCode::kInvalidInput, "edge index out of range");
    usable[static_cast<std::size_t>(e)] = relevant[static_cast<std::size_t>(e)];
  }
  for (const auto& entry : rel.pairs) {
    const EdgeSet w = witness_set(g, entry.pair);
    if (std::none_of(w.begin(), w.end(), [&](EdgeId e) { return usable[static_cast<std::size_t>(e)] != 0; })) return false;
  }
  return true;
}

WitnessCutReport witness_cut_report(const BipartiteGraph& g, const RelevantPairSet& rel) {
  std::vector<char> relevant(static_cast<std::size_t>(g.num_edges()), 0);
  for (EdgeId e : rel.relevant_edges) relevant[static_cast<std::size_t>(e)] = 1;
  WitnessCutReport report;
  report.min_ratio = 1e300;
  for (const auto& entry : rel.pairs) {
    const EdgeSet w = witness_set(g, entry.pair);
    const EdgeSet c = cut_set(g, entry.pair);
    const auto inside = std::count_if(w.begin(), w.end(), [&](EdgeId e) { return relevant[static_cast<std::size_t>(e)] != 0; });
    ++report.pairs;
    if (2 * inside >= static_cast<std::ptrdiff_t>(c.size())) ++report.satisfied;
    if (!c.empty()) report.min_ratio = std::min(report.min_ratio, static_cast<double>(inside) / static_cast<double>(c.size()));
  }
  if (report.pairs == 0) report.min_ratio = 0.0;
  return report;
}

}  // namespace regmatch
