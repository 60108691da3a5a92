#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "stab_lu/bits.hpp"
#include "stab_lu/graph.hpp"
#include "stab_lu/pauli.hpp"

namespace stab_lu {

using VertexSet = std::uint64_t;

// Vertices adjacent to an odd number of members of d (membership in d itself
// does not matter).
inline VertexSet odd_set(const Graph& g, VertexSet d) {
  VertexSet out = 0;
  for (std::size_t v = 0; v < g.n; ++v)
    if (std::popcount(g.neighborhood(v) & d) % 2 == 1) out |= VertexSet{1} << v;
  return out;
}

// The local set generated by d.
inline VertexSet local_set(const Graph& g, VertexSet d) { return d | odd_set(g, d); }

// A set is minimal-local iff it is rank deficient (cut rank below its size)
// while every one-vertex-removed subset has full cut rank. Checking only
// those co-singletons suffices: deficiency of a subset propagates to every
// superset because adding a vertex grows the cut rank by at most one.
inline bool is_mls(const Graph& g, VertexSet m) {
  if (m == 0) throw std::invalid_argument("is_mls: empty set");
  const int size = std::popcount(m);
  if (cut_rank(g, m) >= static_cast<std::size_t>(size)) return false;
  for (std::size_t v = 0; v < g.n; ++v)
    if ((m >> v) & 1)
      if (cut_rank(g, m & ~(VertexSet{1} << v)) != static_cast<std::size_t>(size) - 1)
        return false;
  return true;
}

namespace detail {

// Cut submatrix with rows indexed by vertices outside m and columns by
// vertices inside m (both ascending). A kernel vector over the columns is a
// generator set D whose odd set stays inside m.
inline BitMatrix outside_by_inside(const Graph& g, VertexSet m) {
  std::vector<std::size_t> inside, outside;
  for (std::size_t v = 0; v < g.n; ++v)
    ((m >> v) & 1 ? inside : outside).push_back(v);
  BitMatrix a(outside.size(), inside.size());
  for (std::size_t r = 0; r < outside.size(); ++r)
    for (std::size_t c = 0; c < inside.size(); ++c)
      if (g.edge(outside[r], inside[c])) a.set(r, c, true);
  return a;
}

inline VertexSet column_mask_to_vertices(std::uint64_t cols, VertexSet m) {
  VertexSet out = 0;
  std::size_t idx = 0;
  for (std::size_t v = 0; v < 64; ++v)
    if ((m >> v) & 1) {
      if ((cols >> idx) & 1) out |= VertexSet{1} << v;
      ++idx;
    }
  return out;
}

}  // namespace detail

// All stabilizer elements supported inside m, exact phases, identity
// included, sorted by (xbits, zbits). The element count is
// 2^(|m| - cut_rank(m)); the exponent is guarded.
inline std::vector<PauliString> reduced_stabilizer_group(const Graph& g, VertexSet m,
                                                         int max_log = 16) {
  BitMatrix a = detail::outside_by_inside(g, m);
  BitMatrix basis = kernel_basis(a);
  const std::size_t q = basis.rows();
  if (q > static_cast<std::size_t>(max_log))
    throw std::invalid_argument("reduced_stabilizer_group: group too large");

  CheckMatrix gens = standard_generators(g);
  std::vector<PauliString> out;
  out.reserve(std::size_t{1} << q);
  for (std::uint64_t word = 0; word < (std::uint64_t{1} << q); ++word) {
    std::uint64_t cols = 0;
    for (std::size_t b = 0; b < q; ++b)
      if ((word >> b) & 1) cols ^= basis.row_mask(b);
    VertexSet d = detail::column_mask_to_vertices(cols, m);
    PauliString p = PauliString::identity(g.n);
    for (std::size_t v = 0; v < g.n; ++v)
      if ((d >> v) & 1) p = multiply(p, gens.rows[v]);
    if ((p.support() & ~m) != 0)
      throw std::logic_error("reduced_stabilizer_group: support escaped");
    if (p.literal_phase_exp() % 2 != 0)
      throw std::logic_error("reduced_stabilizer_group: imaginary sign");
    out.push_back(p);
  }
  std::sort(out.begin(), out.end(), [](const PauliString& a_, const PauliString& b_) {
    return std::pair(a_.xbits, a_.zbits) < std::pair(b_.xbits, b_.zbits);
  });
  return out;
}

enum class MlsType { TypeI, TypeII, NotMinimal };

inline std::string mls_type_name(MlsType t) {
  switch (t) {
    case MlsType::TypeI: return "I";
    case MlsType::TypeII: return "II";
    default: return "not-minimal";
  }
}

struct LocalSet {
  VertexSet d = 0;  // generator: m = d | odd_set(d)
  VertexSet m = 0;
  MlsType mls_type = MlsType::NotMinimal;
};

struct MlsCover {
  std::vector<LocalSet> sets;
};

// Type from the cut-rank deficiency: 1 -> four-element group quotiented to a
// single nontrivial element (Type I), 2 -> Type II. Every minimal local set
// falls in one of the two classes.
inline MlsType classify(const Graph& g, VertexSet m) {
  if (!is_mls(g, m)) throw std::invalid_argument("classify: not a minimal local set");
  const std::size_t deficiency = std::popcount(m) - cut_rank(g, m);
  if (deficiency == 1) return MlsType::TypeI;
  if (deficiency == 2) return MlsType::TypeII;
  throw std::logic_error("classify: unexpected deficiency");
}

namespace detail {

// The generator of a minimal local set: the X-support of its smallest
// nontrivial reduced element (every nontrivial element has full support m).
inline VertexSet mls_generator(const Graph& g, VertexSet m) {
  auto group = reduced_stabilizer_group(g, m);
  for (const auto& p : group) {
    if (p.xbits == 0 && p.zbits == 0) continue;
    return p.xbits;
  }
  throw std::logic_error("mls_generator: trivial group");
}

enum class ShrinkOutcome { Shrunk, Minimal, LostVertex };

// One shrink step: scan kernel words (ordered by popcount, then value) for a
// proper local subset of m containing v. Minimal is only reported when the
// whole kernel was enumerated without finding any proper subset; hitting the
// enumeration cap degrades to LostVertex so the caller falls back.
inline ShrinkOutcome shrink_step(const Graph& g, VertexSet m, std::size_t v,
                                 VertexSet* out) {
  BitMatrix basis = kernel_basis(outside_by_inside(g, m));
  const std::size_t q = basis.rows();
  const std::uint64_t cap = std::uint64_t{1} << 16;
  std::uint64_t tried = 0;
  bool any_proper = false, capped = false;
  for (std::size_t pc = 1; pc <= q; ++pc) {
    if (tried >= cap) {
      capped = true;
      break;
    }
    std::uint64_t word = (std::uint64_t{1} << pc) - 1;
    const std::uint64_t limit = (q >= 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << q);
    while (word < limit) {
      if (tried >= cap) {
        capped = true;
        break;
      }
      ++tried;
      std::uint64_t cols = 0;
      for (std::size_t b = 0; b < q; ++b)
        if ((word >> b) & 1) cols ^= basis.row_mask(b);
      VertexSet d = column_mask_to_vertices(cols, m);
      VertexSet sub = local_set(g, d);
      if (sub != m) {
        if ((sub & ~m) != 0) throw std::logic_error("shrink_step: escaped the set");
        any_proper = true;
        if ((sub >> v) & 1) {
          *out = sub;
          return ShrinkOutcome::Shrunk;
        }
      }
      // next word with the same popcount
      std::uint64_t c = word & -word, r = word + c;
      word = (((r ^ word) >> 2) / c) | r;
    }
  }
  *out = 0;
  if (!any_proper && !capped) return ShrinkOutcome::Minimal;
  return ShrinkOutcome::LostVertex;
}

// Deterministic exhaustive search: smallest minimal local set containing v
// drawn from the subsets of `universe`, ordered by size then by mask value.
inline VertexSet exhaustive_mls(const Graph& g, std::size_t v, VertexSet universe,
                                int guard_bits) {
  std::vector<std::size_t> members;
  for (std::size_t u = 0; u < g.n; ++u)
    if ((universe >> u) & 1 && u != v) members.push_back(u);
  if (members.size() + 1 > static_cast<std::size_t>(guard_bits))
    throw std::runtime_error("mls_cover: construction guard exceeded");
  const std::uint64_t total = std::uint64_t{1} << members.size();
  std::vector<VertexSet> masks;
  masks.reserve(total);
  for (std::uint64_t w = 0; w < total; ++w) {
    VertexSet m = VertexSet{1} << v;
    for (std::size_t b = 0; b < members.size(); ++b)
      if ((w >> b) & 1) m |= VertexSet{1} << members[b];
    masks.push_back(m);
  }
  std::sort(masks.begin(), masks.end(), [](VertexSet a, VertexSet b) {
    return std::pair(std::popcount(a), a) < std::pair(std::popcount(b), b);
  });
  for (VertexSet m : masks)
    if (is_mls(g, m)) return m;
  throw std::runtime_error("mls_cover: no minimal local set found");
}

}  // namespace detail

// Deterministic cover: for each still-uncovered vertex v (ascending), grow
// {v} with its neighborhood and shrink along kernel-generated proper local
// subsets keeping v; exhaustive fallbacks bound the search when the greedy
// path cannot keep v.
inline MlsCover mls_cover(const Graph& g) {
  MlsCover cover;
  VertexSet covered = 0;
  for (std::size_t v = 0; v < g.n; ++v) {
    if ((covered >> v) & 1) continue;
    VertexSet m = local_set(g, VertexSet{1} << v);
    while (!is_mls(g, m)) {
      VertexSet next = 0;
      auto outcome = detail::shrink_step(g, m, v, &next);
      if (outcome == detail::ShrinkOutcome::Shrunk) {
        m = next;
        continue;
      }
      if (outcome == detail::ShrinkOutcome::Minimal)
        throw std::logic_error("mls_cover: minimality disagreement");
      // greedy path lost v: search inside the grown set, then globally
      VertexSet grown = local_set(g, VertexSet{1} << v);
      bool found = false;
      if (std::popcount(grown) <= 20) {
        try {
          m = detail::exhaustive_mls(g, v, grown, 21);
          found = true;
        } catch (const std::runtime_error&) {
          found = false;
        }
      }
      if (!found)
        m = detail::exhaustive_mls(g, v, ((VertexSet{1} << g.n) - 1), 15);
      break;
    }
    LocalSet ls;
    ls.m = m;
    ls.mls_type = classify(g, m);
    ls.d = detail::mls_generator(g, m);
    if (local_set(g, ls.d) != ls.m) throw std::logic_error("mls_cover: generator mismatch");
    cover.sets.push_back(ls);
    covered |= m;
  }
  return cover;
}

// Connected components of the pairwise-intersection graph of the cover, and
// the number t of components made up purely of Type II sets.
inline std::pair<std::vector<std::vector<std::size_t>>, std::size_t>
intersection_components(const MlsCover& c) {
  const std::size_t k = c.sets.size();
  std::vector<int> comp(k, -1);
  std::vector<std::vector<std::size_t>> comps;
  for (std::size_t i = 0; i < k; ++i) {
    if (comp[i] >= 0) continue;
    std::vector<std::size_t> stack{i}, members;
    comp[i] = static_cast<int>(comps.size());
    while (!stack.empty()) {
      std::size_t a = stack.back();
      stack.pop_back();
      members.push_back(a);
      for (std::size_t b = 0; b < k; ++b)
        if (comp[b] < 0 && (c.sets[a].m & c.sets[b].m) != 0) {
          comp[b] = comp[i];
          stack.push_back(b);
        }
    }
    std::sort(members.begin(), members.end());
    comps.push_back(std::move(members));
  }
  std::size_t t = 0;
  for (const auto& members : comps) {
    bool all2 = true;
    for (std::size_t idx : members)
      if (c.sets[idx].mls_type != MlsType::TypeII) all2 = false;
    if (all2) ++t;
  }
  return {comps, t};
}

inline std::vector<int> vertex_list(VertexSet s) {
  std::vector<int> out;
  for (int v = 0; v < 64; ++v)
    if ((s >> v) & 1) out.push_back(v);
  return out;
}

inline nlohmann::json cover_json(const MlsCover& c) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& ls : c.sets)
    arr.push_back({{"D", vertex_list(ls.d)},
                   {"M", vertex_list(ls.m)},
                   {"type", mls_type_name(ls.mls_type)}});
  return arr;
}

}  // namespace stab_lu
