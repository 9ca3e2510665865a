#include "regmatch/graph.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>
#include <string>

#include "regmatch/error.hpp"

namespace regmatch {
namespace {

const Rational& unit_weight() {
  static const Rational one(1);
  return one;
}

std::vector<char> membership(int size, const std::vector<int>& members) {
  std::vector<char> in(static_cast<std::size_t>(size), 0);
  for (int v : members) in[static_cast<std::size_t>(v)] = 1;
  return in;
}

void check_pair(const BipartiteGraph& g, const VertexPair& pair) {
  for (int p : pair.a) {
    if (p < 0 || p >= g.n_left()) throw Error(ErrorCode::kInvalidPair, "left index " + std::to_string(p) + " out of range");
  }
  for (int q : pair.b) {
    if (q < 0 || q >= g.n_right()) throw Error(ErrorCode::kInvalidPair, "right index " + std::to_string(q) + " out of range");
  }
}

}  // namespace

BipartiteGraph::BipartiteGraph(int n_left, int n_right, std::vector<Edge> edges,
                               std::vector<Rational> weights)
    : n_left_(n_left), n_right_(n_right), edges_(std::move(edges)), weights_(std::move(weights)) {
  if (n_left_ < 0 || n_right_ < 0) throw Error(ErrorCode::kInvalidInput, "negative vertex count");
  if (!weights_.empty() && weights_.size() != edges_.size()) {
    throw Error(ErrorCode::kInvalidInput, "weight count does not match edge count");
  }
  for (const Rational& w : weights_) {
    if (w < 0) throw Error(ErrorCode::kInvalidInput, "negative edge weight");
  }
  const int nv = n_left_ + n_right_;
  offsets_.assign(static_cast<std::size_t>(nv) + 1, 0);
  for (const Edge& e : edges_) {
    if (e.p < 0 || e.p >= n_left_ || e.q < 0 || e.q >= n_right_) {
      throw Error(ErrorCode::kInvalidInput,
                  "edge (" + std::to_string(e.p) + "," + std::to_string(e.q) + ") out of range");
    }
    ++offsets_[static_cast<std::size_t>(e.p) + 1];
    ++offsets_[static_cast<std::size_t>(n_left_ + e.q) + 1];
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
  incident_.resize(edges_.size() * 2);
  std::vector<int> fill(offsets_.begin(), offsets_.end() - 1);
  for (EdgeId id = 0; id < static_cast<EdgeId>(edges_.size()); ++id) {
    const Edge& e = edges_[static_cast<std::size_t>(id)];
    incident_[static_cast<std::size_t>(fill[static_cast<std::size_t>(e.p)]++)] = id;
    incident_[static_cast<std::size_t>(fill[static_cast<std::size_t>(n_left_ + e.q)]++)] = id;
  }
}

const Rational& BipartiteGraph::weight(EdgeId e) const {
  return weights_.empty() ? unit_weight() : weights_[static_cast<std::size_t>(e)];
}

std::span<const EdgeId> BipartiteGraph::left_incident(int p) const {
  const auto begin = static_cast<std::size_t>(offsets_[static_cast<std::size_t>(p)]);
  const auto end = static_cast<std::size_t>(offsets_[static_cast<std::size_t>(p) + 1]);
  return std::span<const EdgeId>(incident_).subspan(begin, end - begin);
}

std::span<const EdgeId> BipartiteGraph::right_incident(int q) const {
  return left_incident(n_left_ + q);
}

BipartiteGraph BipartiteGraph::subgraph(std::span<const EdgeId> edge_ids) const {
  std::vector<Edge> kept;
  std::vector<Rational> kept_weights;
  kept.reserve(edge_ids.size());
  if (weighted()) kept_weights.reserve(edge_ids.size());
  for (EdgeId id : edge_ids) {
    kept.push_back(edge(id));
    if (weighted()) kept_weights.push_back(weight(id));
  }
  return BipartiteGraph(n_left_, n_right_, std::move(kept), std::move(kept_weights));
}

std::vector<BipartiteGraph::Edge> BipartiteGraph::sorted_edges() const {
  std::vector<Edge> out(edges_.begin(), edges_.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<int> regular_degree(const BipartiteGraph& g) {
  if (g.n_left() != g.n_right()) return std::nullopt;
  if (g.n_left() == 0) return 0;
  const int d = g.left_degree(0);
  for (int p = 0; p < g.n_left(); ++p) {
    if (g.left_degree(p) != d) return std::nullopt;
  }
  for (int q = 0; q < g.n_right(); ++q) {
    if (g.right_degree(q) != d) return std::nullopt;
  }
  return d;
}

bool is_regular(const BipartiteGraph& g, int d) {
  const auto degree = regular_degree(g);
  return degree && *degree == d;
}

VertexPair::VertexPair(std::vector<int> left, std::vector<int> right)
    : a(std::move(left)), b(std::move(right)) {
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
}

EdgeSet witness_set(const BipartiteGraph& g, const VertexPair& pair) {
  check_pair(g, pair);
  const auto in_b = membership(g.n_right(), pair.b);
  EdgeSet out;
  for (int p : pair.a) {
    for (EdgeId e : g.left_incident(p)) {
      if (!in_b[static_cast<std::size_t>(g.edge(e).q)]) out.push_back(e);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

EdgeSet reverse_witness_set(const BipartiteGraph& g, const VertexPair& pair) {
  check_pair(g, pair);
  const auto in_a = membership(g.n_left(), pair.a);
  EdgeSet out;
  for (int q : pair.b) {
    for (EdgeId e : g.right_incident(q)) {
      if (!in_a[static_cast<std::size_t>(g.edge(e).p)]) out.push_back(e);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

EdgeSet cut_set(const BipartiteGraph& g, const VertexPair& pair) {
  EdgeSet forward = witness_set(g, pair);
  EdgeSet backward = reverse_witness_set(g, pair);
  EdgeSet out;
  out.reserve(forward.size() + backward.size());
  std::merge(forward.begin(), forward.end(), backward.begin(), backward.end(), std::back_inserter(out));
  return out;
}

std::optional<VertexPair> hall_violator(const BipartiteGraph& g) {
  if (g.n_left() > kHallOracleCap || g.n_right() > kHallOracleCap) {
    throw Error(ErrorCode::kInstanceTooLarge, "hall oracle limited to " + std::to_string(kHallOracleCap) + " vertices per side");
  }
  if (g.n_left() != g.n_right()) throw Error(ErrorCode::kInvalidInput, "hall oracle needs equal sides");
  const int n = g.n_left();
  std::vector<std::uint32_t> nb(static_cast<std::size_t>(n), 0);
  for (const auto& e : g.edges()) nb[static_cast<std::size_t>(e.p)] |= 1u << e.q;
  const std::uint32_t full = n == 0 ? 0u : (n == 32 ? ~0u : ((1u << n) - 1u));
  std::vector<std::uint32_t> hood(static_cast<std::size_t>(full) + 1, 0);
  for (std::uint32_t mask = 1; mask <= full && mask != 0; ++mask) {
    const std::uint32_t low = static_cast<std::uint32_t>(std::countr_zero(mask));
    hood[mask] = hood[mask & (mask - 1)] | nb[low];
    if (std::popcount(hood[mask]) < std::popcount(mask)) {
      std::vector<int> a, b;
      for (int i = 0; i < n; ++i) {
        if (mask >> i & 1u) a.push_back(i);
        if (hood[mask] >> i & 1u) b.push_back(i);
      }
      return VertexPair(std::move(a), std::move(b));
    }
  }
  return std::nullopt;
}

BipartiteGraph gen_regular(int n, int d, std::uint64_t seed) {
  if (n <= 0 || d < 1 || d > n) {
    throw Error(ErrorCode::kInvalidParameters,
                "need 1 <= d <= n, got n=" + std::to_string(n) + " d=" + std::to_string(d));
  }
  std::mt19937_64 rng(seed);
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::vector<BipartiteGraph::Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(d));
  for (int round = 0; round < d; ++round) {
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (int p = 0; p < n; ++p) edges.push_back({p, perm[static_cast<std::size_t>(p)]});
  }
  return BipartiteGraph(n, n, std::move(edges));
}

BipartiteGraph gen_adversarial(const AdversarialParams& params, std::uint64_t seed) {
  const int d = params.d;
  const int t = params.t;
  if (d < 2 || t < 1 || 4 * t > d) {
    throw Error(ErrorCode::kInvalidParameters,
                "need d >= 2 and 1 <= t <= d/4, got d=" + std::to_string(d) + " t=" + std::to_string(t));
  }
  std::mt19937_64 rng(seed);
  const int n = (d + 1) * t;
  // Block j (0-based) occupies left [j*d, (j+1)*d) and right [j*d, (j+1)*d).
  const int hub = d * t;
  std::vector<BipartiteGraph::Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(d));
  std::vector<int> perm(static_cast<std::size_t>(d));
  for (int j = 0; j < t; ++j) {
    // H_{j+1} = H^{(t-j)} is (d - t + j)-regular.
    const int inner = d - t + j;
    for (int round = 0; round < inner; ++round) {
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      for (int i = 0; i < d; ++i) edges.push_back({j * d + i, j * d + perm[static_cast<std::size_t>(i)]});
    }
    // v_{j+1} joins every U vertex of block j.
    for (int i = 0; i < d; ++i) edges.push_back({j * d + i, hub + j});
    // t - (j+1) edge-disjoint perfect matchings into the V part of block j+1.
    if (j + 1 < t) {
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      for (int shift = 0; shift < t - j - 1; ++shift) {
        for (int i = 0; i < d; ++i) {
          edges.push_back({j * d + i, (j + 1) * d + perm[static_cast<std::size_t>((i + shift) % d)]});
        }
      }
    }
  }
  // Each u_i joins every V vertex of the first block.
  for (int i = 0; i < t; ++i) {
    for (int k = 0; k < d; ++k) edges.push_back({hub + i, k});
  }
  return BipartiteGraph(n, n, std::move(edges));
}

}  // namespace regmatch
