#include "rsc/complex.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace rsc {

namespace {

constexpr std::uint64_t kBinomialCap = 1ull << 63;

std::string render_tuple(const VertexList& v) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << " ";
    os << v[i];
  }
  os << "]";
  return os.str();
}

}  // namespace

std::uint64_t binomial(std::int64_t a, std::int64_t b) {
  if (b < 0 || a < 0 || b > a) return 0;
  b = std::min(b, a - b);
  unsigned __int128 r = 1;
  for (std::int64_t i = 1; i <= b; ++i) {
    // Exact at every step: the running value is C(a-b+i, i).
    r = r * static_cast<unsigned __int128>(a - b + i) /
        static_cast<unsigned __int128>(i);
    if (r >= kBinomialCap) throw std::overflow_error("binomial: exceeds 2^63");
  }
  return static_cast<std::uint64_t>(r);
}

BinomialTable::BinomialTable(std::int32_t max_a, std::int32_t max_b)
    : rows_(max_a + 1),
      cols_(max_b + 1),
      c_(static_cast<std::size_t>(max_a + 1) * (max_b + 1), 0) {
  if (max_a < 0 || max_b < 0)
    throw std::invalid_argument("BinomialTable: negative bounds");
  for (std::int32_t a = 0; a <= max_a; ++a) {
    c_[static_cast<std::size_t>(a) * cols_] = 1;
    for (std::int32_t b = 1; b <= std::min(a, max_b); ++b) {
      const std::uint64_t left = at(a - 1, b - 1);
      const std::uint64_t right = at(a - 1, b);
      const std::uint64_t v = left + right;
      if (v < left || v >= kBinomialCap)
        throw std::overflow_error("BinomialTable: entry exceeds 2^63");
      c_[static_cast<std::size_t>(a) * cols_ + b] = v;
    }
  }
}

std::uint64_t tuple_key(const VertexList& verts, const BinomialTable& binom) {
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < verts.size(); ++i)
    r += binom.at(verts[i], static_cast<std::int32_t>(i) + 1);
  return r;
}

std::vector<VertexList> faces_of(const VertexList& simplex) {
  std::vector<VertexList> out;
  out.reserve(simplex.size());
  for (std::size_t i = 0; i < simplex.size(); ++i) {
    VertexList f;
    f.reserve(simplex.size() - 1);
    for (std::size_t j = 0; j < simplex.size(); ++j)
      if (j != i) f.push_back(simplex[j]);
    out.push_back(std::move(f));
  }
  return out;
}

void facet_keys_of(const VertexList& simplex, const BinomialTable& binom,
                   std::uint64_t* out) {
  // Dropping vertex i shifts the positions of the larger vertices down by
  // one: key_i = sum_{j<i} C(v_j, j+1) + sum_{j>i} C(v_j, j).
  const auto k = simplex.size();
  std::uint64_t prefix = 0;
  for (std::size_t i = 0; i < k; ++i) {
    std::uint64_t key = prefix;
    for (std::size_t j = i + 1; j < k; ++j)
      key += binom.at(simplex[j], static_cast<std::int32_t>(j));
    out[i] = key;
    prefix += binom.at(simplex[i], static_cast<std::int32_t>(i) + 1);
  }
}

std::int32_t DegreeIndex::degree_of(const VertexList& face) const {
  const auto it = counts.find(tuple_key(face, binom));
  return it == counts.end() ? 0 : it->second;
}

DegreeIndex build_degree_index(const Complex& y) {
  DegreeIndex index(y.n, y.d);
  const std::size_t arity = static_cast<std::size_t>(y.d) + 1;
  std::vector<std::uint64_t> keys(arity);
  index.counts.reserve(y.simplices.size() * 2);
  for (const VertexList& s : y.simplices) {
    facet_keys_of(s, index.binom, keys.data());
    for (std::size_t i = 0; i < arity; ++i) ++index.counts[keys[i]];
  }
  return index;
}

std::optional<std::string> validate(const Complex& y) {
  if (y.d < 1) return "dimension d must be at least 1";
  if (y.n < 0) return "vertex count n must be nonnegative";
  const std::size_t arity = static_cast<std::size_t>(y.d) + 1;
  for (std::size_t i = 0; i < y.simplices.size(); ++i) {
    const VertexList& s = y.simplices[i];
    std::ostringstream os;
    if (s.size() != arity) {
      os << "simplex " << i << " has arity " << s.size() << ", expected "
         << arity;
      return os.str();
    }
    for (std::size_t j = 0; j + 1 < s.size(); ++j) {
      if (s[j] >= s[j + 1]) {
        os << "simplex " << i << " " << render_tuple(s)
           << " is not strictly increasing";
        return os.str();
      }
    }
    if (s.front() < 0 || s.back() >= y.n) {
      os << "simplex " << i << " " << render_tuple(s)
         << " has a vertex out of range [0," << y.n << ")";
      return os.str();
    }
    if (i > 0) {
      const VertexList& prev = y.simplices[i - 1];
      if (prev == s) {
        os << "duplicate simplex " << render_tuple(s) << " at position " << i;
        return os.str();
      }
      if (!std::lexicographical_compare(prev.begin(), prev.end(), s.begin(),
                                        s.end())) {
        os << "simplex list out of lexicographic order at position " << i;
        return os.str();
      }
    }
  }
  return std::nullopt;
}

bool next_combination(VertexList& v, std::int32_t n) {
  const auto k = static_cast<std::int32_t>(v.size());
  std::int32_t i = k - 1;
  while (i >= 0 && v[i] == n - k + i) --i;
  if (i < 0) return false;
  ++v[i];
  for (std::int32_t j = i + 1; j < k; ++j) v[j] = v[j - 1] + 1;
  return true;
}

VertexList first_combination(std::int32_t k) {
  VertexList v(static_cast<std::size_t>(k));
  for (std::int32_t i = 0; i < k; ++i) v[i] = i;
  return v;
}

std::uint64_t lex_rank(const VertexList& v, std::int32_t n,
                       const BinomialTable& binom) {
  const auto k = static_cast<std::int32_t>(v.size());
  std::uint64_t r = 0;
  std::int32_t prev = -1;
  for (std::int32_t i = 0; i < k; ++i) {
    for (std::int32_t w = prev + 1; w < v[i]; ++w)
      r += binom.at(n - 1 - w, k - 1 - i);
    prev = v[i];
  }
  return r;
}

VertexList lex_unrank(std::uint64_t rank, std::int32_t n, std::int32_t k,
                      const BinomialTable& binom) {
  VertexList v;
  v.reserve(static_cast<std::size_t>(k));
  std::int32_t w = 0;
  for (std::int32_t i = 0; i < k; ++i) {
    for (;; ++w) {
      const std::uint64_t count = binom.at(n - 1 - w, k - 1 - i);
      if (rank < count) break;
      rank -= count;
    }
    v.push_back(w);
    ++w;
  }
  return v;
}

}  // namespace rsc
