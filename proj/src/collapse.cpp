#include "rsc/collapse.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "rsc/rng.hpp"

namespace rsc {

namespace {

// Face-incidence view of a complex: dense face ids in order of first
// appearance (deterministic, since simplices are visited in list order),
// per-face degree and list of containing simplices.
struct Incidence {
  BinomialTable binom;
  std::unordered_map<std::uint64_t, std::int32_t> slot_of_key;
  std::vector<std::int32_t> degree;
  std::vector<std::vector<std::int32_t>> containing;
  std::vector<std::int32_t> simplex_faces;  // d+1 face ids per simplex
  std::int32_t arity;

  explicit Incidence(const Complex& y)
      : binom(y.n > 0 ? y.n : 1, y.d + 1), arity(y.d + 1) {
    const auto f_d = y.simplices.size();
    slot_of_key.reserve(2 * f_d);
    simplex_faces.reserve(f_d * arity);
    std::vector<std::uint64_t> keys(static_cast<std::size_t>(arity));
    for (std::size_t s = 0; s < f_d; ++s) {
      facet_keys_of(y.simplices[s], binom, keys.data());
      for (std::int32_t i = 0; i < arity; ++i) {
        auto [it, inserted] = slot_of_key.try_emplace(
            keys[i], static_cast<std::int32_t>(degree.size()));
        if (inserted) {
          degree.push_back(0);
          containing.emplace_back();
        }
        const std::int32_t f = it->second;
        ++degree[f];
        containing[f].push_back(static_cast<std::int32_t>(s));
        simplex_faces.push_back(f);
      }
    }
  }

  std::int32_t face_count() const {
    return static_cast<std::int32_t>(degree.size());
  }

  std::int32_t unique_live_simplex(std::int32_t face,
                                   const std::vector<char>& alive) const {
    for (std::int32_t s : containing[face])
      if (alive[s]) return s;
    return -1;
  }
};

Complex surviving(const Complex& y, const std::vector<char>& alive) {
  Complex out;
  out.n = y.n;
  out.d = y.d;
  out.simplices.reserve(y.simplices.size());
  for (std::size_t s = 0; s < y.simplices.size(); ++s)
    if (alive[s]) out.simplices.push_back(y.simplices[s]);
  return out;
}

}  // namespace

Complex collapse_round(const Complex& y) {
  Incidence inc(y);
  std::vector<char> alive(y.simplices.size(), 1);
  for (std::int32_t f = 0; f < inc.face_count(); ++f) {
    if (inc.degree[f] != 1) continue;
    // Degrees are those of y itself: all faces free in y go in one round,
    // and a simplex is removed once no matter how many of its faces are free.
    alive[inc.containing[f][0]] = 0;
  }
  return surviving(y, alive);
}

CoreResult core(const Complex& y) {
  Incidence inc(y);
  std::vector<char> alive(y.simplices.size(), 1);

  std::vector<std::int32_t> current, next;
  for (std::int32_t f = 0; f < inc.face_count(); ++f)
    if (inc.degree[f] == 1) current.push_back(f);

  CoreResult result;
  std::int32_t round = 1;
  while (!current.empty()) {
    for (std::int32_t f : current) {
      if (inc.degree[f] != 1) continue;  // lost its simplex earlier this round
      const std::int32_t s = inc.unique_live_simplex(f, alive);
      alive[s] = 0;
      ++result.removed;
      result.rounds = round;
      const std::int32_t* faces = &inc.simplex_faces[static_cast<std::size_t>(
          s) * inc.arity];
      for (std::int32_t i = 0; i < inc.arity; ++i) {
        // A face hitting degree 1 now is free in the complex this round
        // leaves behind, hence removable in the next one.
        if (--inc.degree[faces[i]] == 1) next.push_back(faces[i]);
      }
    }
    current.swap(next);
    next.clear();
    ++round;
  }

  result.core = surviving(y, alive);
  result.collapsible = result.core.simplices.empty();
  return result;
}

CoreResult core_sequential(const Complex& y, std::uint64_t order_seed) {
  Incidence inc(y);
  std::vector<char> alive(y.simplices.size(), 1);
  SplitMix64 engine(order_seed);

  // Free faces keyed by dense id; ids are assigned in deterministic order,
  // so the uniform index draw below is reproducible.
  std::set<std::int32_t> free_faces;
  for (std::int32_t f = 0; f < inc.face_count(); ++f)
    if (inc.degree[f] == 1) free_faces.insert(f);

  CoreResult result;
  while (!free_faces.empty()) {
    auto it = free_faces.begin();
    std::advance(it, static_cast<std::ptrdiff_t>(
                         engine.next_below(free_faces.size())));
    const std::int32_t f = *it;
    const std::int32_t s = inc.unique_live_simplex(f, alive);
    alive[s] = 0;
    ++result.removed;
    const std::int32_t* faces =
        &inc.simplex_faces[static_cast<std::size_t>(s) * inc.arity];
    for (std::int32_t i = 0; i < inc.arity; ++i) {
      const std::int32_t g = faces[i];
      const std::int32_t old = inc.degree[g]--;
      if (old == 1)
        free_faces.erase(g);  // freed earlier, now gone with s (or g == f)
      else if (old == 2)
        free_faces.insert(g);
    }
  }

  result.rounds = static_cast<std::int32_t>(result.removed);
  result.core = surviving(y, alive);
  result.collapsible = result.core.simplices.empty();
  return result;
}

namespace {

std::vector<VertexList> scan_boundaries(const Complex& y, bool stop_at_first) {
  std::vector<VertexList> found;
  if (y.simplices.empty()) return found;

  BinomialTable binom(y.n > 0 ? y.n : 1, y.d + 2);
  std::unordered_set<std::uint64_t> present;
  present.reserve(2 * y.simplices.size());
  for (const VertexList& s : y.simplices) present.insert(tuple_key(s, binom));

  std::unordered_set<std::uint64_t> considered;
  const std::size_t arity = static_cast<std::size_t>(y.d) + 1;
  VertexList candidate(arity + 1);
  VertexList facet(arity);

  for (const VertexList& s : y.simplices) {
    for (std::int32_t v = 0; v < y.n; ++v) {
      if (std::binary_search(s.begin(), s.end(), v)) continue;
      // candidate = s with v merged in, sorted.
      std::merge(s.begin(), s.end(), &v, &v + 1, candidate.begin());
      if (!considered.insert(tuple_key(candidate, binom)).second) continue;
      bool all = true;
      for (std::size_t drop = 0; all && drop <= arity; ++drop) {
        std::size_t t = 0;
        for (std::size_t j = 0; j <= arity; ++j)
          if (j != drop) facet[t++] = candidate[j];
        all = present.count(tuple_key(facet, binom)) != 0;
      }
      if (all) {
        found.push_back(candidate);
        if (stop_at_first) return found;
      }
    }
  }
  std::sort(found.begin(), found.end());
  return found;
}

}  // namespace

std::vector<VertexList> find_boundaries(const Complex& y) {
  return scan_boundaries(y, false);
}

bool in_family_F(const Complex& y) {
  return scan_boundaries(y, true).empty();
}

}  // namespace rsc
