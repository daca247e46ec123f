#include "rsc/treeproc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rsc/rng.hpp"

namespace rsc {

namespace {

void check_params(const TreeParams& params) {
  if (params.d < 1) throw std::invalid_argument("tree: d must be at least 1");
  if (params.depth < 1)
    throw std::invalid_argument("tree: depth must be at least 1");
  if (!(params.gamma >= 0.0))
    throw std::invalid_argument("tree: gamma must be nonnegative");
}

// Degree bookkeeping for pruning rounds: deg(f) counts living incident
// simplices (creator plus children). Only faces touched by a removal can
// change degree, so each round works off a free-face worklist.
struct Pruner {
  const RootedTree& t;
  std::vector<std::int32_t> degree;
  std::vector<std::int32_t> child_begin;  // children simplices grouped by face
  std::vector<std::int32_t> child_data;
  std::vector<std::int32_t> created_begin;  // faces grouped by creator simplex
  std::vector<std::int32_t> created_data;
  std::vector<char> simplex_alive;
  std::vector<std::int32_t> removal_stamp;
  std::vector<std::int32_t> current_free, next_free, removals;
  std::int64_t alive_count;

  explicit Pruner(const RootedTree& tree)
      : t(tree),
        degree(tree.face_creator.size(), 0),
        child_begin(tree.face_creator.size() + 1, 0),
        child_data(tree.simplices.size()),
        created_begin(tree.simplices.size() + 1, 0),
        simplex_alive(tree.simplices.size(), 1),
        removal_stamp(tree.simplices.size(), -1),
        alive_count(tree.simplex_count()) {
    for (const auto& s : t.simplices) ++child_begin[s.parent_face + 1];
    for (std::size_t f = 1; f < child_begin.size(); ++f)
      child_begin[f] += child_begin[f - 1];
    std::vector<std::int32_t> cursor(child_begin.begin(),
                                     child_begin.end() - 1);
    for (std::size_t s = 0; s < t.simplices.size(); ++s)
      child_data[cursor[t.simplices[s].parent_face]++] =
          static_cast<std::int32_t>(s);

    for (std::int32_t c : t.face_creator)
      if (c >= 0) ++created_begin[c + 1];
    for (std::size_t s = 1; s < created_begin.size(); ++s)
      created_begin[s] += created_begin[s - 1];
    created_data.resize(created_begin.back());
    cursor.assign(created_begin.begin(), created_begin.end() - 1);
    for (std::int32_t f = 0; f < t.face_count(); ++f)
      if (t.face_creator[f] >= 0)
        created_data[cursor[t.face_creator[f]]++] = f;

    for (std::int32_t f = 0; f < t.face_count(); ++f) {
      degree[f] = (t.face_creator[f] >= 0 ? 1 : 0) +
                  (child_begin[f + 1] - child_begin[f]);
      if (degree[f] == 1 && f != 0) current_free.push_back(f);
    }
  }

  std::int32_t unique_live_simplex(std::int32_t f) const {
    const std::int32_t creator = t.face_creator[f];
    if (creator >= 0 && simplex_alive[creator]) return creator;
    for (std::int32_t i = child_begin[f]; i < child_begin[f + 1]; ++i)
      if (simplex_alive[child_data[i]]) return child_data[i];
    return -1;
  }

  // One simultaneous round; returns the number of simplices removed.
  // Degrees are read before any removal of the round is applied.
  std::int64_t round(std::int32_t round_id) {
    removals.clear();
    for (std::int32_t f : current_free) {
      if (degree[f] != 1) continue;  // stale entry: lost its simplex earlier
      const std::int32_t s = unique_live_simplex(f);
      if (removal_stamp[s] == round_id) continue;  // shared with another face
      removal_stamp[s] = round_id;
      removals.push_back(s);
    }
    next_free.clear();
    for (std::int32_t s : removals) {
      simplex_alive[s] = 0;
      --alive_count;
      drop_incidence(t.simplices[s].parent_face);
      for (std::int32_t i = created_begin[s]; i < created_begin[s + 1]; ++i)
        drop_incidence(created_data[i]);
    }
    current_free.swap(next_free);
    return static_cast<std::int64_t>(removals.size());
  }

  void drop_incidence(std::int32_t f) {
    if (--degree[f] == 1 && f != 0) next_free.push_back(f);
  }

  // Runs rounds until nothing is free or the budget is spent.
  std::int32_t run(std::int32_t max_rounds) {
    std::int32_t used = 0;
    while (used < max_rounds && !current_free.empty()) {
      if (round(used) == 0) break;
      ++used;
    }
    return used;
  }
};

}  // namespace

VertexList RootedTree::face(std::int32_t f) const {
  const auto* base = &face_verts[static_cast<std::size_t>(f) * d];
  return VertexList(base, base + d);
}

VertexList RootedTree::simplex_vertices(std::int32_t s) const {
  VertexList v = face(simplices[s].parent_face);
  v.push_back(simplices[s].cone_vertex);
  std::sort(v.begin(), v.end());
  return v;
}

RootedTree sample_tree(const TreeParams& params) {
  check_params(params);
  RootedTree t;
  t.d = params.d;
  t.depth = params.depth;
  t.vertex_count = params.d;

  for (std::int32_t v = 0; v < params.d; ++v) t.face_verts.push_back(v);
  t.face_creator.push_back(-1);
  t.face_level.push_back(0);

  SplitMix64 engine(params.seed);
  std::int32_t frontier_begin = 0;
  for (std::int32_t level = 0; level < params.depth; ++level) {
    const std::int32_t frontier_end = t.face_count();
    for (std::int32_t f = frontier_begin; f < frontier_end; ++f) {
      const std::int32_t cones = engine.next_poisson(params.gamma);
      for (std::int32_t j = 0; j < cones; ++j) {
        const std::int32_t z = t.vertex_count++;
        const auto s = static_cast<std::int32_t>(t.simplices.size());
        t.simplices.push_back({f, z, level});
        // The d new facets: drop one vertex of the parent face, add the
        // cone vertex (largest id so far, so appending keeps order).
        const std::size_t base = static_cast<std::size_t>(f) * params.d;
        for (std::int32_t drop = 0; drop < params.d; ++drop) {
          for (std::int32_t i = 0; i < params.d; ++i)
            if (i != drop)
              t.face_verts.push_back(
                  t.face_verts[base + static_cast<std::size_t>(i)]);
          t.face_verts.push_back(z);
          t.face_creator.push_back(s);
          t.face_level.push_back(level + 1);
        }
      }
    }
    frontier_begin = frontier_end;
  }
  return t;
}

RootedTree prune(const RootedTree& t) {
  Pruner pruner(t);
  pruner.round(0);

  RootedTree out;
  out.d = t.d;
  out.depth = t.depth;
  out.vertex_count = t.vertex_count;

  std::vector<std::int32_t> simplex_map(t.simplices.size(), -1);
  for (std::size_t s = 0; s < t.simplices.size(); ++s)
    if (pruner.simplex_alive[s]) {
      simplex_map[s] = static_cast<std::int32_t>(out.simplices.size());
      out.simplices.push_back(t.simplices[s]);
    }

  // Kept faces: the root, plus anything still incident to a live simplex.
  std::vector<std::int32_t> face_map(t.face_creator.size(), -1);
  for (std::int32_t f = 0; f < t.face_count(); ++f) {
    if (f != 0 && pruner.degree[f] < 1) continue;
    face_map[f] = out.face_count();
    const auto* base = &t.face_verts[static_cast<std::size_t>(f) * t.d];
    out.face_verts.insert(out.face_verts.end(), base, base + t.d);
    const std::int32_t creator = t.face_creator[f];
    out.face_creator.push_back(
        creator >= 0 && pruner.simplex_alive[creator] ? simplex_map[creator]
                                                      : -1);
    out.face_level.push_back(t.face_level[f]);
  }
  for (auto& s : out.simplices) s.parent_face = face_map[s.parent_face];
  return out;
}

bool collapses_within(const RootedTree& t, std::int32_t max_rounds) {
  if (max_rounds < 0)
    throw std::invalid_argument("collapses_within: negative round budget");
  Pruner pruner(t);
  pruner.run(max_rounds);
  return pruner.alive_count == 0;
}

Complex tree_complex(const RootedTree& t, std::int32_t vertex_offset) {
  Complex y;
  y.n = vertex_offset + std::max(t.vertex_count, t.d + 1);
  y.d = t.d;
  y.simplices.reserve(t.simplices.size());
  for (std::size_t s = 0; s < t.simplices.size(); ++s) {
    VertexList v = t.simplex_vertices(static_cast<std::int32_t>(s));
    for (auto& id : v) id += vertex_offset;
    y.simplices.push_back(std::move(v));
  }
  std::sort(y.simplices.begin(), y.simplices.end());
  return y;
}

RhoEstimate estimate_rho(std::int32_t d, std::int32_t k, double gamma,
                         std::int64_t trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("estimate_rho: trials < 1");
  if (k < 0) throw std::invalid_argument("estimate_rho: k < 0");
  TreeParams params;
  params.d = d;
  params.depth = k + 1;
  params.gamma = gamma;

  std::int64_t hits = 0;
  for (std::int64_t trial = 0; trial < trials; ++trial) {
    params.seed = derive_trial_seed(seed, static_cast<std::uint64_t>(trial));
    if (collapses_within(sample_tree(params), k)) ++hits;
  }

  RhoEstimate out;
  out.trials = trials;
  out.estimate = static_cast<double>(hits) / static_cast<double>(trials);
  out.std_error =
      std::sqrt(out.estimate * (1.0 - out.estimate) / static_cast<double>(trials));
  return out;
}

}  // namespace rsc
