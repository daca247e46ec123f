#include "rsc/homology.hpp"

#include <algorithm>
#include <bit>
#include <queue>
#include <stdexcept>
#include <unordered_map>

namespace rsc {

FieldPrime::FieldPrime(std::int64_t prime) : p(prime) {
  if (prime < 2 || prime >= (std::int64_t{1} << 31))
    throw std::invalid_argument("FieldPrime: modulus out of range");
  for (std::int64_t q = 2; q * q <= prime; ++q)
    if (prime % q == 0)
      throw std::invalid_argument("FieldPrime: modulus is not prime");
}

BoundaryMatrix boundary_matrix(const Complex& y, FieldPrime prime) {
  BoundaryMatrix m;
  m.p = prime.p;
  m.rows = y.simplex_count();
  m.row_width = y.d + 1;

  BinomialTable binom(y.n > 0 ? y.n : 1, y.d + 1);
  const std::size_t arity = static_cast<std::size_t>(y.d) + 1;
  std::vector<std::uint64_t> keys(arity);

  // Faces of positive degree, then lexicographic order fixes the columns.
  std::unordered_map<std::uint64_t, std::int32_t> col_of_key;
  col_of_key.reserve(2 * y.simplices.size());
  for (const VertexList& s : y.simplices) {
    facet_keys_of(s, binom, keys.data());
    auto facets = faces_of(s);
    for (std::size_t i = 0; i < arity; ++i) {
      if (col_of_key.try_emplace(keys[i], 0).second)
        m.col_faces.push_back(std::move(facets[i]));
    }
  }
  std::sort(m.col_faces.begin(), m.col_faces.end());
  for (std::size_t j = 0; j < m.col_faces.size(); ++j)
    col_of_key[tuple_key(m.col_faces[j], binom)] =
        static_cast<std::int32_t>(j);
  m.cols = static_cast<std::int64_t>(m.col_faces.size());

  m.entries.reserve(static_cast<std::size_t>(m.rows) * arity);
  for (const VertexList& s : y.simplices) {
    facet_keys_of(s, binom, keys.data());
    const std::size_t base = m.entries.size();
    for (std::size_t i = 0; i < arity; ++i) {
      const std::int32_t value =
          (i % 2 == 0) ? 1 : static_cast<std::int32_t>(m.p - 1);
      m.entries.push_back({col_of_key[keys[i]], value});
    }
    std::sort(m.entries.begin() + static_cast<std::ptrdiff_t>(base),
              m.entries.end(),
              [](const BoundaryMatrix::Entry& a, const BoundaryMatrix::Entry& b) {
                return a.col < b.col;
              });
  }
  return m;
}

namespace {

std::int64_t rank_gf2(const BoundaryMatrix& m) {
  const std::int64_t words = (m.cols + 63) / 64;
  std::vector<std::uint64_t> bits(static_cast<std::size_t>(m.rows) * words, 0);
  for (std::int64_t r = 0; r < m.rows; ++r) {
    const auto* row = &m.entries[static_cast<std::size_t>(r) * m.row_width];
    for (std::int32_t i = 0; i < m.row_width; ++i) {
      const std::int32_t c = row[i].col;
      bits[static_cast<std::size_t>(r) * words + c / 64] ^=
          std::uint64_t{1} << (c % 64);
    }
  }

  std::vector<std::int32_t> pivot_row_of_col(static_cast<std::size_t>(m.cols),
                                             -1);
  std::int64_t rank = 0;
  for (std::int64_t r = 0; r < m.rows; ++r) {
    std::uint64_t* row = &bits[static_cast<std::size_t>(r) * words];
    std::int64_t w = 0;
    for (;;) {
      while (w < words && row[w] == 0) ++w;
      if (w == words) break;
      const auto c = static_cast<std::int32_t>(
          w * 64 + std::countr_zero(row[w]));
      const std::int32_t pr = pivot_row_of_col[c];
      if (pr < 0) {
        pivot_row_of_col[c] = static_cast<std::int32_t>(r);
        ++rank;
        break;
      }
      // The pivot row leads at column c, so its earlier words are zero.
      const std::uint64_t* prow = &bits[static_cast<std::size_t>(pr) * words];
      for (std::int64_t j = w; j < words; ++j) row[j] ^= prow[j];
    }
  }
  return rank;
}

std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t mod) {
  std::int64_t out = 1;
  base %= mod;
  while (exp > 0) {
    if (exp & 1) out = out * base % mod;
    base = base * base % mod;
    exp >>= 1;
  }
  return out;
}

std::int64_t rank_odd(const BoundaryMatrix& m) {
  const std::int64_t p = m.p;
  std::vector<std::vector<BoundaryMatrix::Entry>> pivot_rows(
      static_cast<std::size_t>(m.cols));
  std::vector<char> has_pivot(static_cast<std::size_t>(m.cols), 0);

  // Dense working row plus a column heap, so each reduction step touches
  // only the entries the pivot rows introduce.
  std::vector<std::int64_t> acc(static_cast<std::size_t>(m.cols), 0);
  std::vector<char> touched_flag(static_cast<std::size_t>(m.cols), 0);
  std::vector<std::int32_t> touched;
  std::priority_queue<std::int32_t, std::vector<std::int32_t>,
                      std::greater<>> heap;

  const auto touch = [&](std::int32_t col) {
    if (!touched_flag[col]) {
      touched_flag[col] = 1;
      touched.push_back(col);
      heap.push(col);
    }
  };

  std::int64_t rank = 0;
  for (std::int64_t r = 0; r < m.rows; ++r) {
    const auto* row = &m.entries[static_cast<std::size_t>(r) * m.row_width];
    for (std::int32_t i = 0; i < m.row_width; ++i) {
      acc[row[i].col] = row[i].value;
      touch(row[i].col);
    }

    while (!heap.empty()) {
      const std::int32_t c = heap.top();
      while (!heap.empty() && heap.top() == c) heap.pop();
      const std::int64_t v = acc[c];
      if (v == 0) continue;
      if (has_pivot[c]) {
        // Pivot rows are normalized to lead 1, tail columns all exceed c and
        // are still in the heap when touched, so pushing on first touch is
        // enough to visit them.
        for (const auto& e : pivot_rows[c]) {
          std::int64_t nv = (acc[e.col] - v * e.value) % p;
          if (nv < 0) nv += p;
          acc[e.col] = nv;
          touch(e.col);
        }
      } else {
        std::vector<BoundaryMatrix::Entry> prow;
        prow.push_back({c, 1});
        const std::int64_t inv = mod_pow(v, p - 2, p);
        while (!heap.empty()) {
          const std::int32_t c2 = heap.top();
          while (!heap.empty() && heap.top() == c2) heap.pop();
          const std::int64_t w = acc[c2];
          if (w == 0) continue;
          prow.push_back({c2, static_cast<std::int32_t>(w * inv % p)});
        }
        pivot_rows[c] = std::move(prow);
        has_pivot[c] = 1;
        ++rank;
      }
    }

    for (std::int32_t col : touched) {
      acc[col] = 0;
      touched_flag[col] = 0;
    }
    touched.clear();
  }
  return rank;
}

}  // namespace

std::int64_t rank_mod_p(const BoundaryMatrix& m) {
  if (m.rows == 0 || m.cols == 0) return 0;
  return m.p == 2 ? rank_gf2(m) : rank_odd(m);
}

HomologySummary betti(const Complex& y, FieldPrime prime) {
  HomologySummary h;
  h.p = prime.p;
  h.f_d = y.simplex_count();
  h.rank = rank_mod_p(boundary_matrix(y, prime));
  const auto n = static_cast<std::int64_t>(y.n);
  const auto d = static_cast<std::int64_t>(y.d);
  h.cocycles = static_cast<std::int64_t>(binomial(n, d)) - h.rank;
  h.h_top = h.f_d - h.rank;
  h.h_below = h.cocycles - static_cast<std::int64_t>(binomial(n - 1, d - 1));
  return h;
}

CocycleCounts cocycle_counts(const Complex& y) {
  const DegreeIndex index = build_degree_index(y);
  CocycleCounts out;
  out.alpha.assign(static_cast<std::size_t>(y.d) + 1, 0);
  out.isolated = static_cast<std::int64_t>(binomial(y.n, y.d)) -
                 index.support_size();

  const std::size_t arity = static_cast<std::size_t>(y.d) + 1;
  std::vector<std::uint64_t> keys(arity);
  for (const VertexList& s : y.simplices) {
    facet_keys_of(s, index.binom, keys.data());
    std::int32_t free_facets = 0;
    for (std::size_t i = 0; i < arity; ++i)
      if (index.counts.at(keys[i]) == 1) ++free_facets;
    if (free_facets >= 1) ++out.alpha[arity - free_facets];
  }

  out.cocycle_lb = out.isolated;
  for (std::int32_t j = 0; j <= y.d; ++j)
    out.cocycle_lb += out.alpha[j] * (y.d - j);
  out.homology_lb = y.simplex_count() + out.cocycle_lb -
                    static_cast<std::int64_t>(binomial(y.n, y.d));
  return out;
}

}  // namespace rsc
