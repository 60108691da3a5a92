#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "stab_lu/graph.hpp"

namespace stab_lu {

// ---------------------------------------------------------------------------
// All connected unlabeled graphs on n vertices, one representative each.
// Built by extending every connected (m-1)-vertex representative with a new
// vertex attached to every nonempty neighborhood, deduplicated by canonical
// form. Complete because every connected graph has a non-cut vertex, whose
// removal leaves a connected graph.
inline std::vector<Graph> connected_unlabeled_graphs(std::size_t n) {
  if (n == 0 || n > 8) throw std::invalid_argument("connected_unlabeled_graphs: n out of range");
  std::vector<Graph> reps{Graph(1)};
  for (std::size_t m = 2; m <= n; ++m) {
    std::set<std::vector<std::uint8_t>> seen;
    std::vector<Graph> next;
    for (const Graph& base : reps) {
      for (std::uint64_t nb = 1; nb < (std::uint64_t{1} << (m - 1)); ++nb) {
        Graph g(m);
        for (auto [i, j] : base.edges()) g.set_edge(i, j, true);
        for (std::size_t i = 0; i < m - 1; ++i)
          if ((nb >> i) & 1) g.set_edge(i, m - 1, true);
        if (seen.insert(canonical_form(g).bytes).second) next.push_back(g);
      }
    }
    reps = std::move(next);
  }
  return reps;
}

// ---------------------------------------------------------------------------
// Orbit census over unlabeled connected graphs: BFS closure of every labeled
// connected graph under local complementation (tau at each vertex) and label
// transpositions, which together connect exactly the members of one
// unlabeled LC-orbit. Runs over all 2^(n(n-1)/2) labeled graphs with a
// visited bitset; feasible for n <= 8 (2^28 graphs).

struct CensusResult {
  std::size_t orbit_count = 0;
  std::vector<Graph> reps;  // first-found labeled representative per orbit
};

inline CensusResult census_orbits(std::size_t n) {
  if (n < 1 || n > 8) throw std::invalid_argument("census_orbits: n out of range");
  const std::size_t bits = n * (n - 1) / 2;
  const std::uint64_t total = std::uint64_t{1} << bits;
  std::vector<std::uint64_t> visited((total + 63) / 64, 0);
  auto test = [&](std::uint32_t k) {
    return (visited[k >> 6] >> (k & 63)) & 1;
  };
  auto mark = [&](std::uint32_t k) {
    std::uint64_t& w = visited[k >> 6];
    std::uint64_t bit = std::uint64_t{1} << (k & 63);
    bool fresh = !(w & bit);
    w |= bit;
    return fresh;
  };

  // per-row offsets of the packed upper-triangle key
  std::array<int, 8> off{};
  {
    int p = 0;
    for (std::size_t i = 0; i < n; ++i) {
      off[i] = p;
      p += static_cast<int>(n - 1 - i);
    }
  }
  auto key_of = [&](std::uint64_t adj) {
    std::uint32_t key = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      std::uint32_t row = static_cast<std::uint32_t>((adj >> (8 * i)) & 0xff);
      key |= (row >> (i + 1)) << off[i];
    }
    return key;
  };

  CensusResult out;
  std::vector<std::uint32_t> stack;
  for (std::uint64_t seed = 0; seed < total; ++seed) {
    if (test(static_cast<std::uint32_t>(seed))) continue;
    mark(static_cast<std::uint32_t>(seed));
    std::uint64_t adj0 = packed8::from_upper_bits(static_cast<std::uint32_t>(seed), n);
    bool conn = packed8::connected(adj0, n);
    if (conn) {
      ++out.orbit_count;
      out.reps.push_back(packed8::unpack(adj0, n));
    }
    stack.push_back(static_cast<std::uint32_t>(seed));
    while (!stack.empty()) {
      std::uint64_t adj = packed8::from_upper_bits(stack.back(), n);
      stack.pop_back();
      for (std::size_t a = 0; a < n; ++a) {
        std::uint32_t k = key_of(packed8::tau(adj, a));
        if (mark(k)) stack.push_back(k);
      }
      for (std::size_t p = 0; p + 1 < n; ++p) {
        std::uint32_t k = key_of(packed8::swap_adjacent(adj, p));
        if (mark(k)) stack.push_back(k);
      }
    }
  }
  return out;
}

// Orbit ids of every labeled graph on n vertices under local complementation
// only (no relabeling); index = packed upper-triangle key. Guarded to n <= 7
// (8 MB table). Disconnected graphs get ids too.
inline std::vector<std::uint32_t> labeled_lc_class_ids(std::size_t n) {
  if (n < 1 || n > 7) throw std::invalid_argument("labeled_lc_class_ids: n out of range");
  const std::size_t bits = n * (n - 1) / 2;
  const std::uint64_t total = std::uint64_t{1} << bits;
  const std::uint32_t unset = 0xffffffffu;
  std::vector<std::uint32_t> id(total, unset);
  std::uint32_t next_id = 0;
  std::vector<std::uint32_t> stack;
  for (std::uint64_t seed = 0; seed < total; ++seed) {
    if (id[seed] != unset) continue;
    id[seed] = next_id;
    stack.push_back(static_cast<std::uint32_t>(seed));
    while (!stack.empty()) {
      std::uint64_t adj = packed8::from_upper_bits(stack.back(), n);
      stack.pop_back();
      for (std::size_t a = 0; a < n; ++a) {
        std::uint32_t k = packed8::upper_bits(packed8::tau(adj, a), n);
        if (id[k] == unset) {
          id[k] = next_id;
          stack.push_back(k);
        }
      }
    }
    ++next_id;
  }
  return id;
}

// ---------------------------------------------------------------------------
// Cut-rank screening.

// Permutation-invariant profile: for each subset size, the sorted list of
// cut-ranks over all subsets of that size.
inline std::vector<std::uint8_t> cutrank_profile(const Graph& g) {
  std::vector<std::vector<std::uint8_t>> by_size(g.n + 1);
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << g.n); ++m)
    by_size[std::popcount(m)].push_back(static_cast<std::uint8_t>(cut_rank(g, m)));
  std::vector<std::uint8_t> profile;
  for (auto& v : by_size) {
    std::sort(v.begin(), v.end());
    profile.insert(profile.end(), v.begin(), v.end());
    profile.push_back(0xff);  // size separator
  }
  return profile;
}

namespace detail {

// Backtracking search for a bijection sigma with
// cut_rank_gp(M) == cut_rank_g(sigma(M)) for all subsets M.
inline bool cutrank_match_extend(const Graph& g, const Graph& gp,
                                 std::vector<std::size_t>& sigma,  // gp vertex -> g vertex
                                 std::uint64_t used, std::size_t depth) {
  std::size_t n = g.n;
  if (depth == n) return true;
  for (std::size_t cand = 0; cand < n; ++cand) {
    if ((used >> cand) & 1) continue;
    sigma[depth] = cand;
    // check all subsets of {0..depth} that contain depth
    bool ok = true;
    for (std::uint64_t sub = 0; ok && sub < (std::uint64_t{1} << depth); ++sub) {
      std::uint64_t mp = sub | (std::uint64_t{1} << depth);
      std::uint64_t mg = 0;
      for (std::size_t v = 0; v <= depth; ++v)
        if ((mp >> v) & 1) mg |= std::uint64_t{1} << sigma[v];
      if (cut_rank(gp, mp) != cut_rank(g, mg)) ok = false;
    }
    if (ok && cutrank_match_extend(g, gp, sigma, used | (std::uint64_t{1} << cand),
                                   depth + 1))
      return true;
  }
  return false;
}

}  // namespace detail

// True iff some relabeling of gp has exactly the same cut-rank function as g.
inline bool cutrank_function_match_exists(const Graph& g, const Graph& gp) {
  if (g.n != gp.n) return false;
  std::vector<std::size_t> sigma(g.n);
  return detail::cutrank_match_extend(g, gp, sigma, 0, 0);
}

// Number of unordered cross-orbit pairs whose cut-rank functions can be made
// identical by a relabeling. Profiles are compared first; only colliding
// pairs get the exact bijection search.
inline std::size_t count_cutrank_matching_pairs(const std::vector<Graph>& reps) {
  std::map<std::vector<std::uint8_t>, std::vector<std::size_t>> by_profile;
  for (std::size_t i = 0; i < reps.size(); ++i)
    by_profile[cutrank_profile(reps[i])].push_back(i);
  std::size_t pairs = 0;
  for (const auto& [prof, members] : by_profile)
    for (std::size_t a = 0; a < members.size(); ++a)
      for (std::size_t b = a + 1; b < members.size(); ++b)
        if (cutrank_function_match_exists(reps[members[a]], reps[members[b]])) ++pairs;
  return pairs;
}

}  // namespace stab_lu
