#pragma once

#include <cstdint>
#include <vector>

#include "rsc/complex.hpp"

namespace rsc {

// Prime modulus for homology ranks, checked by trial division.
struct FieldPrime {
  explicit FieldPrime(std::int64_t prime);
  std::int64_t p;
};

/**
 * Top boundary matrix of y over F_p. Rows follow the simplex list; columns
 * are the (d-1)-faces of positive degree in lexicographic order. The entry
 * for a simplex and its i-th facet (drop the i-th smallest vertex) is (-1)^i
 * mod p, so every row carries exactly d+1 entries, stored by ascending
 * column. Fixing both orders makes matrices reproducible.
 */
struct BoundaryMatrix {
  std::int64_t p = 2;
  std::int64_t rows = 0;
  std::int64_t cols = 0;
  std::vector<VertexList> col_faces;
  struct Entry {
    std::int32_t col;
    std::int32_t value;  // in [1, p)
  };
  std::vector<Entry> entries;  // (d+1) per row, row-major
  std::int32_t row_width = 0;
};

BoundaryMatrix boundary_matrix(const Complex& y, FieldPrime prime);

// Exact rank over F_p by row reduction with pivoting by leading column.
// p = 2 runs on packed 64-bit rows with XOR elimination; odd p reduces a
// dense working row against sparse pivot rows.
std::int64_t rank_mod_p(const BoundaryMatrix& m);

/**
 * Homology dimensions of y over F_p in the top two degrees, all derived from
 * the single top boundary rank: h_top = f_d - rank, cocycles = C(n,d) - rank,
 * h_below = cocycles - C(n-1,d-1) (reduced). The two satisfy
 * h_top - h_below = f_d - C(n-1,d).
 */
struct HomologySummary {
  std::int64_t p = 2;
  std::int64_t f_d = 0;
  std::int64_t rank = 0;
  std::int64_t cocycles = 0;
  std::int64_t h_top = 0;
  std::int64_t h_below = 0;
};

HomologySummary betti(const Complex& y, FieldPrime prime);

/**
 * Degree-profile counts giving a computable lower bound for h_top without
 * any elimination:
 *   isolated    = #(d-1)-faces of degree 0,
 *   alpha[j]    = #simplices with exactly d+1-j facets of degree 1 (j<=d),
 *   cocycle_lb  = isolated + sum_j alpha[j]*(d-j)   <= cocycles,
 *   homology_lb = f_d + cocycle_lb - C(n,d)         <= h_top.
 */
struct CocycleCounts {
  std::int64_t isolated = 0;
  std::vector<std::int64_t> alpha;
  std::int64_t cocycle_lb = 0;
  std::int64_t homology_lb = 0;
};

CocycleCounts cocycle_counts(const Complex& y);

}  // namespace rsc
