#pragma once

#include <cstdint>
#include <vector>

#include "rsc/complex.hpp"

namespace rsc {

/** Growth parameters for the rooted random d-tree. */
struct TreeParams {
  std::int32_t d = 2;
  std::int32_t depth = 1;  // levels of growth; faces at distance < depth spawn
  double gamma = 1.0;      // Poisson mean of cone vertices per frontier face
  std::uint64_t seed = 0;
};

/**
 * Rooted random d-tree. Growth starts from the root (d-1)-face {0..d-1};
 * level by level, every frontier face receives an independent Poisson(gamma)
 * number of cone vertices, and each new simplex contributes d fresh frontier
 * faces (its facets other than the spawning one). Vertex ids are allocated
 * sequentially, so distinct trees never share ids unless embedded with an
 * offset. Face 0 is the root; a face keeps creator -1 when it has no living
 * creating simplex (the root always, other faces after pruning).
 */
struct RootedTree {
  std::int32_t d = 2;
  std::int32_t depth = 0;
  std::int32_t vertex_count = 0;

  struct SimplexNode {
    std::int32_t parent_face;  // the face this simplex cones over
    std::int32_t cone_vertex;
    std::int32_t level;        // level of the parent face
  };
  std::vector<SimplexNode> simplices;

  std::vector<std::int32_t> face_verts;  // d ids per face, ascending
  std::vector<std::int32_t> face_creator;
  std::vector<std::int32_t> face_level;

  std::int32_t face_count() const {
    return static_cast<std::int32_t>(face_creator.size());
  }
  std::int64_t simplex_count() const {
    return static_cast<std::int64_t>(simplices.size());
  }
  VertexList face(std::int32_t f) const;
  VertexList simplex_vertices(std::int32_t s) const;
};

RootedTree sample_tree(const TreeParams& params);

// One simultaneous pruning round: every free face other than the root goes,
// together with its unique containing simplex; faces left without any living
// incident simplex disappear. Vertex ids are preserved.
RootedTree prune(const RootedTree& t);

// True iff at most max_rounds pruning rounds remove every simplex, leaving
// the root face alone.
bool collapses_within(const RootedTree& t, std::int32_t max_rounds);

// The tree as a Complex on vertices {offset .. offset+vertex_count-1}.
Complex tree_complex(const RootedTree& t, std::int32_t vertex_offset = 0);

struct RhoEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::int64_t trials = 0;
};

// Monte Carlo estimate of rho_d(k,gamma): the fraction of depth-(k+1) trees
// that collapse to their root within k pruning rounds. Trial t draws with
// derive_trial_seed(seed, t).
RhoEstimate estimate_rho(std::int32_t d, std::int32_t k, double gamma,
                         std::int64_t trials, std::uint64_t seed);

}  // namespace rsc
