#include "regmatch/matching.hpp"

#include <algorithm>

#include "regmatch/error.hpp"

namespace regmatch {
namespace {

constexpr int kNoLayer = -1;

struct Layering {
  LevelGraph graph;
  std::vector<int> b_layer;  // layer index of each Q vertex, kNoLayer when unreached
  std::vector<int> a_layer;  // layer index of each P vertex
};

Layering layer(const BipartiteGraph& g, const Matching& m) {
  Layering out;
  out.b_layer.assign(static_cast<std::size_t>(g.n_right()), kNoLayer);
  out.a_layer.assign(static_cast<std::size_t>(g.n_left()), kNoLayer);
  auto& lg = out.graph;
  lg.b_layers.emplace_back();
  std::vector<int> frontier;
  for (int p = 0; p < g.n_left(); ++p) {
    if (m.left_mate[static_cast<std::size_t>(p)] == kUnmatched) {
      frontier.push_back(p);
      out.a_layer[static_cast<std::size_t>(p)] = 0;
    }
  }
  lg.a_layers.push_back(frontier);
  for (int j = 0;; ++j) {
    std::vector<int> next_b;
    bool free_found = false;
    for (int p : lg.a_layers[static_cast<std::size_t>(j)]) {
      for (EdgeId e : g.left_incident(p)) {
        const int q = g.edge(e).q;
        if (out.b_layer[static_cast<std::size_t>(q)] != kNoLayer) continue;
        out.b_layer[static_cast<std::size_t>(q)] = j + 1;
        next_b.push_back(q);
        if (m.right_mate[static_cast<std::size_t>(q)] == kUnmatched) free_found = true;
      }
    }
    if (next_b.empty()) {
      lg.L = j;
      lg.terminated_by = LevelGraph::Termination::kFrontierEmpty;
      return out;
    }
    lg.b_layers.push_back(next_b);
    if (free_found) {
      lg.L = j + 1;
      lg.terminated_by = LevelGraph::Termination::kFreeVertexFound;
      return out;
    }
    std::vector<int> next_a;
    next_a.reserve(next_b.size());
    for (int q : next_b) {
      const int p = m.right_mate[static_cast<std::size_t>(q)];
      out.a_layer[static_cast<std::size_t>(p)] = j + 1;
      next_a.push_back(p);
    }
    lg.a_layers.push_back(std::move(next_a));
  }
}

void require_valid(const BipartiteGraph& g, const Matching& m) {
  if (!is_valid_matching(g, m)) throw Error(ErrorCode::kInvalidInput, "matching is not valid for this graph");
}

}  // namespace

Matching Matching::empty(int n_left, int n_right) {
  Matching m;
  m.left_mate.assign(static_cast<std::size_t>(n_left), kUnmatched);
  m.right_mate.assign(static_cast<std::size_t>(n_right), kUnmatched);
  return m;
}

void Matching::match(int p, int q) {
  auto& lp = left_mate[static_cast<std::size_t>(p)];
  auto& rq = right_mate[static_cast<std::size_t>(q)];
  if (lp == kUnmatched) ++size;
  if (rq != kUnmatched && rq != p) {
    left_mate[static_cast<std::size_t>(rq)] = kUnmatched;
    --size;
  }
  if (lp != kUnmatched && lp != q) right_mate[static_cast<std::size_t>(lp)] = kUnmatched;
  lp = q;
  rq = p;
}

void Matching::unmatch_left(int p) {
  auto& lp = left_mate[static_cast<std::size_t>(p)];
  if (lp == kUnmatched) return;
  right_mate[static_cast<std::size_t>(lp)] = kUnmatched;
  lp = kUnmatched;
  --size;
}

bool is_valid_matching(const BipartiteGraph& g, const Matching& m) {
  if (m.left_mate.size() != static_cast<std::size_t>(g.n_left()) ||
      m.right_mate.size() != static_cast<std::size_t>(g.n_right())) {
    return false;
  }
  int count = 0;
  for (int p = 0; p < g.n_left(); ++p) {
    const int q = m.left_mate[static_cast<std::size_t>(p)];
    if (q == kUnmatched) continue;
    if (q < 0 || q >= g.n_right() || m.right_mate[static_cast<std::size_t>(q)] != p) return false;
    const auto incident = g.left_incident(p);
    if (std::none_of(incident.begin(), incident.end(), [&](EdgeId e) { return g.edge(e).q == q; })) return false;
    ++count;
  }
  for (int q = 0; q < g.n_right(); ++q) {
    const int p = m.right_mate[static_cast<std::size_t>(q)];
    if (p == kUnmatched) continue;
    if (p < 0 || p >= g.n_left() || m.left_mate[static_cast<std::size_t>(p)] != q) return false;
  }
  return count == m.size;
}

LevelGraph build_level_graph(const BipartiteGraph& g, const Matching& m) {
  require_valid(g, m);
  return layer(g, m).graph;
}

int PhaseStats::total_augmentations() const {
  int total = 0;
  for (const auto& ph : phases) total += ph.augmentations;
  return total;
}

std::vector<int> PhaseStats::path_lengths() const {
  std::vector<int> out;
  out.reserve(phases.size());
  for (const auto& ph : phases) out.push_back(ph.path_length);
  return out;
}

bool PhaseStats::lengths_strictly_increasing() const {
  for (std::size_t i = 1; i < phases.size(); ++i) {
    if (phases[i].path_length <= phases[i - 1].path_length) return false;
  }
  return true;
}

namespace {

int augment_along(const BipartiteGraph& g, Matching& m, const Layering& lay, PhaseRecord* record) {
  const LevelGraph& lg = lay.graph;
  if (lg.terminated_by != LevelGraph::Termination::kFreeVertexFound) {
    throw Error(ErrorCode::kNoAugmentingPath, "matching is already maximum");
  }
  const int L = lg.L;
  std::vector<char> used_b(static_cast<std::size_t>(g.n_right()), 0);
  std::vector<char> dead_a(static_cast<std::size_t>(g.n_left()), 0);
  std::vector<std::size_t> cursor(static_cast<std::size_t>(g.n_left()), 0);
  int count = 0;

  struct Frame {
    int p;
    int q_in;  // right vertex through which p was entered (kUnmatched for roots)
  };
  std::vector<Frame> path;
  for (int root : lg.a_layers.front()) {
    if (dead_a[static_cast<std::size_t>(root)]) continue;
    path.assign(1, Frame{root, kUnmatched});
    bool augmented = false;
    while (!path.empty() && !augmented) {
      const int p = path.back().p;
      const int depth = static_cast<int>(path.size()) - 1;  // p lies in A_depth
      const auto incident = g.left_incident(p);
      auto& pos = cursor[static_cast<std::size_t>(p)];
      bool advanced = false;
      while (pos < incident.size()) {
        const int q = g.edge(incident[pos]).q;
        ++pos;
        if (used_b[static_cast<std::size_t>(q)] || lay.b_layer[static_cast<std::size_t>(q)] != depth + 1) continue;
        used_b[static_cast<std::size_t>(q)] = 1;
        const int mate = m.right_mate[static_cast<std::size_t>(q)];
        if (depth + 1 == L) {
          if (mate != kUnmatched) continue;
          // Flip the path root -> ... -> p -> q.
          int q_next = q;
          for (auto it = path.rbegin(); it != path.rend(); ++it) {
            const int q_prev = it->q_in;
            m.left_mate[static_cast<std::size_t>(it->p)] = q_next;
            m.right_mate[static_cast<std::size_t>(q_next)] = it->p;
            q_next = q_prev;
          }
          ++m.size;
          ++count;
          for (const Frame& f : path) dead_a[static_cast<std::size_t>(f.p)] = 1;
          augmented = true;
          advanced = true;
          break;
        }
        if (mate == kUnmatched || dead_a[static_cast<std::size_t>(mate)]) continue;
        path.push_back(Frame{mate, q});
        advanced = true;
        break;
      }
      if (!advanced) {
        dead_a[static_cast<std::size_t>(p)] = 1;
        path.pop_back();
      }
    }
  }
  if (record) {
    record->path_length = lg.path_length();
    record->augmentations = count;
    record->size_after = m.size;
    record->layer_sizes.clear();
    for (std::size_t j = 1; j < lg.b_layers.size(); ++j) {
      record->layer_sizes.push_back(static_cast<int>(lg.b_layers[j].size()));
    }
  }
  return count;
}

}  // namespace

int augment_phase(const BipartiteGraph& g, Matching& m, PhaseRecord* record) {
  require_valid(g, m);
  return augment_along(g, m, layer(g, m), record);
}

MatchResult complete_matching(const BipartiteGraph& g, Matching start) {
  require_valid(g, start);
  MatchResult result{std::move(start), {}};
  while (true) {
    const Layering lay = layer(g, result.matching);
    if (lay.graph.terminated_by != LevelGraph::Termination::kFreeVertexFound) break;
    PhaseRecord record;
    augment_along(g, result.matching, lay, &record);
    result.stats.phases.push_back(std::move(record));
  }
  return result;
}

MatchResult hopcroft_karp(const BipartiteGraph& g) {
  return complete_matching(g, Matching::empty_for(g));
}

}  // namespace regmatch
