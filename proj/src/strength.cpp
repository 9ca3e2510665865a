#include "regmatch/strength.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <limits>
#include <numeric>
#include <string>

#include "regmatch/error.hpp"

namespace regmatch {
namespace {

constexpr std::int64_t kNoStrength = -1;

// Stoer-Wagner over a dense weight matrix indexed by local vertex ids.
MinCutResult stoer_wagner(int n, std::vector<std::int64_t> weight) {
  MinCutResult best;
  if (n <= 1) return best;
  auto at = [&](int i, int j) -> std::int64_t& {
    return weight[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)];
  };
  std::vector<std::vector<int>> group(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) group[static_cast<std::size_t>(i)] = {i};
  std::vector<int> active(static_cast<std::size_t>(n));
  std::iota(active.begin(), active.end(), 0);
  std::vector<std::int64_t> key(static_cast<std::size_t>(n));
  std::vector<char> added(static_cast<std::size_t>(n));
  best.value = std::numeric_limits<std::int64_t>::max();

  while (active.size() > 1) {
    std::fill(added.begin(), added.end(), 0);
    for (int v : active) key[static_cast<std::size_t>(v)] = 0;
    int prev = -1;
    int last = active.front();
    for (std::size_t step = 0; step < active.size(); ++step) {
      int pick = -1;
      for (int v : active) {
        if (added[static_cast<std::size_t>(v)]) continue;
        if (pick < 0 || key[static_cast<std::size_t>(v)] > key[static_cast<std::size_t>(pick)]) pick = v;
      }
      added[static_cast<std::size_t>(pick)] = 1;
      prev = last;
      last = pick;
      for (int v : active) {
        if (!added[static_cast<std::size_t>(v)]) key[static_cast<std::size_t>(v)] += at(pick, v);
      }
    }
    const std::int64_t phase_cut = key[static_cast<std::size_t>(last)];
    if (phase_cut < best.value) {
      best.value = phase_cut;
      best.finite = true;
      best.side = group[static_cast<std::size_t>(last)];
    }
    // Merge `last` into `prev`.
    auto& into = group[static_cast<std::size_t>(prev)];
    const auto& from = group[static_cast<std::size_t>(last)];
    into.insert(into.end(), from.begin(), from.end());
    for (int v : active) {
      at(prev, v) += at(last, v);
      at(v, prev) = at(prev, v);
    }
    at(prev, prev) = 0;
    active.erase(std::find(active.begin(), active.end(), last));
  }
  std::sort(best.side.begin(), best.side.end());
  return best;
}

void check_edges(const UndirectedGraph& g) {
  for (const auto& e : g.edges) {
    if (e.u < 0 || e.u >= g.num_vertices || e.v < 0 || e.v >= g.num_vertices) {
      throw Error(ErrorCode::kInvalidInput, "edge endpoint out of range");
    }
    if (e.w < 0) throw Error(ErrorCode::kInvalidInput, "negative edge weight");
  }
}

// Min cut restricted to `vertices`, using only edges with both endpoints inside.
// `local` must map vertices to their position in `vertices` (others: -1).
MinCutResult induced_min_cut(const UndirectedGraph& g, const std::vector<int>& vertices,
                             const std::vector<int>& edge_ids, const std::vector<int>& local) {
  const int n = static_cast<int>(vertices.size());
  std::vector<std::int64_t> weight(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
  for (int id : edge_ids) {
    const auto& e = g.edges[static_cast<std::size_t>(id)];
    const int a = local[static_cast<std::size_t>(e.u)];
    const int b = local[static_cast<std::size_t>(e.v)];
    if (a == b) continue;
    weight[static_cast<std::size_t>(a) * static_cast<std::size_t>(n) + static_cast<std::size_t>(b)] += e.w;
    weight[static_cast<std::size_t>(b) * static_cast<std::size_t>(n) + static_cast<std::size_t>(a)] += e.w;
  }
  MinCutResult cut = stoer_wagner(n, std::move(weight));
  for (int& v : cut.side) v = vertices[static_cast<std::size_t>(v)];
  std::sort(cut.side.begin(), cut.side.end());
  return cut;
}

struct Subproblem {
  std::vector<int> vertices;
  std::int64_t floor = 0;
};

}  // namespace

UndirectedGraph to_undirected(const BipartiteGraph& g, std::int64_t* scale) {
  UndirectedGraph out;
  out.num_vertices = g.num_vertices();
  std::int64_t factor = 1;
  if (g.weighted()) {
    factor = common_denominator(std::vector<Rational>(g.weights().begin(), g.weights().end()));
    if (factor == 0) throw Error(ErrorCode::kUnsupportedInput, "edge weight denominators overflow 64 bits");
  }
  out.edges.reserve(static_cast<std::size_t>(g.num_edges()));
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    std::int64_t w = 1;
    if (g.weighted()) {
      const Rational scaled = g.weight(e) * factor;
      if (scaled > std::numeric_limits<std::int64_t>::max() / std::max(1, g.num_edges())) {
        throw Error(ErrorCode::kUnsupportedInput, "scaled edge weight overflows 64 bits");
      }
      w = boost::multiprecision::numerator(scaled).convert_to<std::int64_t>();
    }
    out.edges.push_back({g.edge(e).p, g.n_left() + g.edge(e).q, w});
  }
  if (scale) *scale = factor;
  return out;
}

MinCutResult min_cut(const UndirectedGraph& g) {
  if (g.num_vertices <= 0) throw Error(ErrorCode::kInvalidInput, "min cut of an empty graph");
  check_edges(g);
  std::vector<int> vertices(static_cast<std::size_t>(g.num_vertices));
  std::iota(vertices.begin(), vertices.end(), 0);
  std::vector<int> ids(g.edges.size());
  std::iota(ids.begin(), ids.end(), 0);
  return induced_min_cut(g, vertices, ids, vertices);
}

MinCutResult min_cut(const BipartiteGraph& g) { return min_cut(to_undirected(g)); }

MinCutResult min_cut_induced(const UndirectedGraph& g, const std::vector<int>& vertices) {
  if (vertices.empty()) throw Error(ErrorCode::kInvalidInput, "min cut of an empty graph");
  check_edges(g);
  std::vector<int> local(static_cast<std::size_t>(g.num_vertices), -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const int v = vertices[i];
    if (v < 0 || v >= g.num_vertices || local[static_cast<std::size_t>(v)] >= 0) {
      throw Error(ErrorCode::kInvalidInput, "bad vertex list for induced min cut");
    }
    local[static_cast<std::size_t>(v)] = static_cast<int>(i);
  }
  std::vector<int> ids;
  for (std::size_t id = 0; id < g.edges.size(); ++id) {
    const auto& e = g.edges[id];
    if (local[static_cast<std::size_t>(e.u)] >= 0 && local[static_cast<std::size_t>(e.v)] >= 0) {
      ids.push_back(static_cast<int>(id));
    }
  }
  return induced_min_cut(g, vertices, ids, local);
}

std::vector<std::int64_t> exact_strengths(const UndirectedGraph& g) {
  if (g.num_vertices <= 0) throw Error(ErrorCode::kInvalidInput, "strengths of an empty graph");
  check_edges(g);
  const auto nv = static_cast<std::size_t>(g.num_vertices);
  std::vector<std::int64_t> strength(g.edges.size(), kNoStrength);
  std::vector<std::vector<int>> incident(nv);
  for (std::size_t id = 0; id < g.edges.size(); ++id) {
    incident[static_cast<std::size_t>(g.edges[id].u)].push_back(static_cast<int>(id));
    incident[static_cast<std::size_t>(g.edges[id].v)].push_back(static_cast<int>(id));
  }
  // Scratch arrays indexed by global vertex id; `stamp` marks the current subproblem.
  std::vector<int> stamp(nv, -1);
  std::vector<char> alive(nv, 0);
  std::vector<std::int64_t> degree(nv, 0);
  std::vector<int> local(nv, -1);
  int generation = 0;

  std::vector<Subproblem> stack;
  {
    Subproblem root;
    root.vertices.resize(nv);
    std::iota(root.vertices.begin(), root.vertices.end(), 0);
    stack.push_back(std::move(root));
  }
  while (!stack.empty()) {
    Subproblem sub = std::move(stack.back());
    stack.pop_back();
    ++generation;
    for (int v : sub.vertices) {
      stamp[static_cast<std::size_t>(v)] = generation;
      alive[static_cast<std::size_t>(v)] = 1;
      degree[static_cast<std::size_t>(v)] = 0;
    }
    auto inside = [&](int v) {
      return stamp[static_cast<std::size_t>(v)] == generation && alive[static_cast<std::size_t>(v)];
    };
    for (int v : sub.vertices) {
      for (int id : incident[static_cast<std::size_t>(v)]) {
        const auto& e = g.edges[static_cast<std::size_t>(id)];
        const int other = e.u == v ? e.v : e.u;
        if (inside(other)) degree[static_cast<std::size_t>(v)] += e.w;
      }
    }
    // Peel every vertex whose degree cannot exceed the floor.
    std::deque<int> queue;
    for (int v : sub.vertices) {
      if (degree[static_cast<std::size_t>(v)] <= sub.floor) queue.push_back(v);
    }
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      if (!alive[static_cast<std::size_t>(v)]) continue;
      alive[static_cast<std::size_t>(v)] = 0;
      for (int id : incident[static_cast<std::size_t>(v)]) {
        const auto& e = g.edges[static_cast<std::size_t>(id)];
        const int other = e.u == v ? e.v : e.u;
        if (!inside(other)) continue;
        strength[static_cast<std::size_t>(id)] = sub.floor;
        auto& deg = degree[static_cast<std::size_t>(other)];
        const bool was_above = deg > sub.floor;
        deg -= e.w;
        if (was_above && deg <= sub.floor) queue.push_back(other);
      }
    }
    // Connected components of the survivors.
    std::vector<int> survivors;
    for (int v : sub.vertices) {
      if (alive[static_cast<std::size_t>(v)]) survivors.push_back(v);
    }
    std::vector<char> seen(survivors.size(), 0);
    for (std::size_t i = 0; i < survivors.size(); ++i) local[static_cast<std::size_t>(survivors[i])] = static_cast<int>(i);
    for (std::size_t start = 0; start < survivors.size(); ++start) {
      if (seen[start]) continue;
      std::vector<int> component{survivors[start]};
      seen[start] = 1;
      for (std::size_t head = 0; head < component.size(); ++head) {
        const int v = component[head];
        for (int id : incident[static_cast<std::size_t>(v)]) {
          const auto& e = g.edges[static_cast<std::size_t>(id)];
          const int other = e.u == v ? e.v : e.u;
          if (!inside(other)) continue;
          auto& flag = seen[static_cast<std::size_t>(local[static_cast<std::size_t>(other)])];
          if (!flag) {
            flag = 1;
            component.push_back(other);
          }
        }
      }
      if (component.size() < 2) continue;
      std::sort(component.begin(), component.end());
      std::vector<int> comp_local(nv, -1);
      std::vector<int> comp_edges;
      for (std::size_t i = 0; i < component.size(); ++i) comp_local[static_cast<std::size_t>(component[i])] = static_cast<int>(i);
      for (int v : component) {
        for (int id : incident[static_cast<std::size_t>(v)]) {
          const auto& e = g.edges[static_cast<std::size_t>(id)];
          if (e.u == v && comp_local[static_cast<std::size_t>(e.v)] >= 0) comp_edges.push_back(id);
        }
      }
      const MinCutResult cut = induced_min_cut(g, component, comp_edges, comp_local);
      const std::int64_t next_floor = std::max(sub.floor, cut.value);
      std::vector<char> on_side(nv, 0);
      for (int v : cut.side) on_side[static_cast<std::size_t>(v)] = 1;
      Subproblem left{{}, next_floor};
      Subproblem right{{}, next_floor};
      for (int v : component) (on_side[static_cast<std::size_t>(v)] ? left : right).vertices.push_back(v);
      for (int id : comp_edges) {
        const auto& e = g.edges[static_cast<std::size_t>(id)];
        if (on_side[static_cast<std::size_t>(e.u)] != on_side[static_cast<std::size_t>(e.v)]) {
          strength[static_cast<std::size_t>(id)] = next_floor;
        }
      }
      stack.push_back(std::move(left));
      stack.push_back(std::move(right));
    }
  }
  return strength;
}

StrengthMap exact_strengths(const BipartiteGraph& g) {
  StrengthMap out;
  const UndirectedGraph ug = to_undirected(g, &out.scale);
  out.value = exact_strengths(ug);
  return out;
}

std::vector<std::int64_t> brute_strengths(const UndirectedGraph& g) {
  if (g.num_vertices <= 0) throw Error(ErrorCode::kInvalidInput, "strengths of an empty graph");
  if (g.num_vertices > kBruteStrengthCap) {
    throw Error(ErrorCode::kInstanceTooLarge, "brute-force strengths limited to " + std::to_string(kBruteStrengthCap) + " vertices");
  }
  check_edges(g);
  const std::uint32_t full = (1u << g.num_vertices) - 1u;
  std::vector<std::int64_t> strength(g.edges.size(), 0);
  for (std::uint32_t subset = 1; subset <= full; ++subset) {
    if (std::popcount(subset) < 2) continue;
    std::vector<int> inner;
    for (std::size_t id = 0; id < g.edges.size(); ++id) {
      const auto& e = g.edges[id];
      if ((subset >> e.u & 1u) && (subset >> e.v & 1u)) inner.push_back(static_cast<int>(id));
    }
    if (inner.empty()) continue;
    // Connectivity of the induced subgraph: minimum over all bipartitions
    // that keep the lowest vertex on one fixed side.
    const std::uint32_t anchor = subset & (~subset + 1u);
    const std::uint32_t rest = subset & ~anchor;
    std::int64_t connectivity = std::numeric_limits<std::int64_t>::max();
    for (std::uint32_t part = rest;; part = (part - 1) & rest) {
      // `part` is the side without the anchor; it must be nonempty.
      if (part != 0) {
        std::int64_t crossing = 0;
        for (int id : inner) {
          const auto& e = g.edges[static_cast<std::size_t>(id)];
          if (((part >> e.u) & 1u) != ((part >> e.v) & 1u)) crossing += e.w;
        }
        connectivity = std::min(connectivity, crossing);
      }
      if (part == 0) break;
    }
    for (int id : inner) {
      strength[static_cast<std::size_t>(id)] = std::max(strength[static_cast<std::size_t>(id)], connectivity);
    }
  }
  return strength;
}

StrengthMap brute_strengths(const BipartiteGraph& g) {
  StrengthMap out;
  const UndirectedGraph ug = to_undirected(g, &out.scale);
  out.value = brute_strengths(ug);
  return out;
}

int multiset_split_index(const std::vector<int>& s1, const std::vector<int>& s2, const Rational& gamma) {
  if (gamma <= 0) throw Error(ErrorCode::kInvalidParameters, "gamma must be positive");
  int largest = 0;
  for (int v : s1) {
    if (v <= 0) throw Error(ErrorCode::kInvalidParameters, "multiset entries must be positive");
    largest = std::max(largest, v);
  }
  for (int v : s2) {
    if (v <= 0) throw Error(ErrorCode::kInvalidParameters, "multiset entries must be positive");
    largest = std::max(largest, v);
  }
  // Suffix sums of 1/i for each multiset, scanned from j = largest down to 1.
  std::vector<int> count1(static_cast<std::size_t>(largest) + 2, 0);
  std::vector<int> count2(static_cast<std::size_t>(largest) + 2, 0);
  for (int v : s1) ++count1[static_cast<std::size_t>(v)];
  for (int v : s2) ++count2[static_cast<std::size_t>(v)];
  std::vector<Rational> tail1(static_cast<std::size_t>(largest) + 2, Rational(0));
  std::vector<Rational> tail2(static_cast<std::size_t>(largest) + 2, Rational(0));
  for (int j = largest; j >= 1; --j) {
    const auto idx = static_cast<std::size_t>(j);
    tail1[idx] = tail1[idx + 1] + Rational(count1[idx], j);
    tail2[idx] = tail2[idx + 1] + Rational(count2[idx], j);
  }
  for (int j = 1; j <= largest; ++j) {
    const auto idx = static_cast<std::size_t>(j);
    if (tail1[idx] > gamma * tail2[idx]) return j;
  }
  throw Error(ErrorCode::kNoGuarantee, "no split index exists; requires |s1| > gamma |s2|");
}

}  // namespace regmatch
