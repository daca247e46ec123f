#pragma once

#include <cstdint>
#include <vector>

#include "rsc/complex.hpp"

namespace rsc {

/** Result of peeling a complex down to its fixpoint. */
struct CoreResult {
  Complex core;             // surviving simplices; empty iff collapsible
  std::int32_t rounds = 0;  // simultaneous rounds until the fixpoint (for
                            // core_sequential: single-simplex steps)
  bool collapsible = false;
  std::int64_t removed = 0;  // simplices peeled = f_d(y) - f_d(core)
};

// One simultaneous peeling round: every free (d-1)-face (degree exactly 1)
// is removed together with its unique containing simplex. Fixpoints come
// back unchanged.
Complex collapse_round(const Complex& y);

// Fixpoint of collapse_round. Implemented with a worklist whose entries are
// tagged with the round at which their face becomes free, so `rounds` equals
// the number of simultaneous rounds a pass-by-pass computation would take.
CoreResult core(const Complex& y);

// Peels one uniformly chosen free face at a time until none remain. The
// fixpoint complex is identical to core(y) for every order_seed; `rounds`
// counts single-simplex steps here.
CoreResult core_sequential(const Complex& y, std::uint64_t order_seed);

// All vertex sets S with |S| = d+2 whose d+2 facets are all simplices of y:
// the boundaries of (d+1)-simplices inside y. Lexicographically sorted,
// no duplicates.
std::vector<VertexList> find_boundaries(const Complex& y);

// True iff y contains no boundary of a (d+1)-simplex.
bool in_family_F(const Complex& y);

}  // namespace rsc
