#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace rsc {

// A simplex or face as its strictly increasing list of vertex ids.
using VertexList = std::vector<std::int32_t>;

/**
 * A d-dimensional complex on vertex set {0,...,n-1} with full (d-1)-skeleton,
 * given by its list of d-simplices. Each simplex is a strictly increasing
 * (d+1)-tuple; the list is kept sorted lexicographically with no duplicates.
 * Lower-dimensional faces are implicit: every (d-1)-subset of the vertex set
 * is present, and its degree is the number of listed simplices containing it.
 */
struct Complex {
  std::int32_t n = 0;
  std::int32_t d = 1;
  std::vector<VertexList> simplices;

  std::int64_t simplex_count() const {
    return static_cast<std::int64_t>(simplices.size());
  }
};

// Exact C(a,b) as a 64-bit value; 0 outside 0 <= b <= a. Throws
// std::overflow_error beyond 2^63.
std::uint64_t binomial(std::int64_t a, std::int64_t b);

// Pascal table of C(a,b) for a <= max_a, b <= max_b, for hot paths that rank
// many tuples. Entries above 2^63 throw at construction.
class BinomialTable {
 public:
  BinomialTable(std::int32_t max_a, std::int32_t max_b);

  std::uint64_t at(std::int32_t a, std::int32_t b) const {
    if (b < 0 || b > a) return 0;
    return c_[static_cast<std::size_t>(a) * cols_ + b];
  }

  std::int32_t max_a() const { return rows_ - 1; }
  std::int32_t max_b() const { return cols_ - 1; }

 private:
  std::int32_t rows_;
  std::int32_t cols_;
  std::vector<std::uint64_t> c_;
};

// Colex rank of a strictly increasing tuple: sum_i C(v_i, i+1). Bijection
// from k-subsets of {0..n-1} onto [0, C(n,k)); used as a hash key for faces
// and simplices. Independent of n.
std::uint64_t tuple_key(const VertexList& verts, const BinomialTable& binom);

// The d+1 facets of a simplex; the i-th drops the i-th smallest vertex.
// Orientation signs elsewhere rely on this order.
std::vector<VertexList> faces_of(const VertexList& simplex);

// Keys of the facets of `simplex`, written to `out[0..size-1]` in drop order,
// without materializing the tuples.
void facet_keys_of(const VertexList& simplex, const BinomialTable& binom,
                   std::uint64_t* out);

/**
 * Degree of every (d-1)-face contained in at least one simplex. Faces absent
 * from the map have degree 0. Immutable once built; safe to share across
 * concurrent readers.
 */
struct DegreeIndex {
  DegreeIndex(std::int32_t n_, std::int32_t d_)
      : n(n_), d(d_), binom(n_ > 0 ? n_ : 1, d_ + 1) {}

  std::int32_t n;
  std::int32_t d;
  BinomialTable binom;
  std::unordered_map<std::uint64_t, std::int32_t> counts;  // facet key -> degree

  std::int32_t degree_of(const VertexList& face) const;

  // Number of faces of positive degree.
  std::int64_t support_size() const {
    return static_cast<std::int64_t>(counts.size());
  }
};

DegreeIndex build_degree_index(const Complex& y);

// std::nullopt if y satisfies the structural invariants, otherwise a
// description of the first violation: wrong arity, unsorted tuple, vertex out
// of range, duplicate simplex, list out of lexicographic order.
std::optional<std::string> validate(const Complex& y);

// Lexicographic enumeration of k-subsets of {0..n-1}: overwrite v with its
// successor, false once v was the last tuple. Start from {0,...,k-1}.
bool next_combination(VertexList& v, std::int32_t n);

VertexList first_combination(std::int32_t k);

// Rank of v within the lexicographic enumeration of k-subsets of {0..n-1},
// and its inverse.
std::uint64_t lex_rank(const VertexList& v, std::int32_t n,
                       const BinomialTable& binom);
VertexList lex_unrank(std::uint64_t rank, std::int32_t n, std::int32_t k,
                      const BinomialTable& binom);

}  // namespace rsc
