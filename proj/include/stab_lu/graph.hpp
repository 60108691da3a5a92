#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "stab_lu/bits.hpp"
#include "stab_lu/pauli.hpp"

namespace stab_lu {

// Simple undirected graph on n vertices (0-indexed internally; all I/O is
// 1-indexed). Adjacency is a symmetric bit matrix with zero diagonal.
struct Graph {
  std::size_t n = 0;
  BitMatrix adj;

  Graph() = default;
  explicit Graph(std::size_t n_) : n(n_), adj(n_, n_) {}

  static Graph from_edges(std::size_t n, const std::vector<std::pair<int, int>>& edges) {
    Graph g(n);
    for (auto [a, b] : edges) g.set_edge(a, b, true);
    return g;
  }

  bool edge(std::size_t i, std::size_t j) const { return adj.get(i, j); }

  void set_edge(std::size_t i, std::size_t j, bool v) {
    if (i == j) throw std::invalid_argument("Graph: no self-loops");
    if (i >= n || j >= n) throw std::invalid_argument("Graph: vertex out of range");
    adj.set(i, j, v);
    adj.set(j, i, v);
  }

  void toggle_edge(std::size_t i, std::size_t j) { set_edge(i, j, !edge(i, j)); }

  // Neighborhood as a bit mask; requires n <= 64.
  std::uint64_t neighborhood(std::size_t i) const { return adj.row_mask(i); }

  std::size_t degree(std::size_t i) const { return std::popcount(neighborhood(i)); }

  std::size_t max_degree() const {
    std::size_t d = 0;
    for (std::size_t i = 0; i < n; ++i) d = std::max(d, degree(i));
    return d;
  }

  std::vector<std::pair<std::size_t, std::size_t>> edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> e;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (edge(i, j)) e.emplace_back(i, j);
    return e;
  }

  std::size_t edge_count() const { return edges().size(); }

  bool operator==(const Graph& o) const { return n == o.n && adj == o.adj; }
  bool operator!=(const Graph& o) const { return !(*this == o); }

  bool valid() const {
    for (std::size_t i = 0; i < n; ++i) {
      if (adj.get(i, i)) return false;
      for (std::size_t j = i + 1; j < n; ++j)
        if (adj.get(i, j) != adj.get(j, i)) return false;
    }
    return true;
  }

  bool connected() const {
    if (n == 0) return true;
    std::uint64_t seen = 1, frontier = 1;
    while (frontier) {
      std::uint64_t next = 0;
      for (std::size_t i = 0; i < n; ++i)
        if ((frontier >> i) & 1) next |= neighborhood(i);
      frontier = next & ~seen;
      seen |= next;
    }
    return seen == (n == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1));
  }

  // Relabel: vertex i of this graph becomes vertex perm[i] of the result.
  Graph permuted(const std::vector<std::size_t>& perm) const {
    Graph g(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (edge(i, j)) g.set_edge(perm[i], perm[j], true);
    return g;
  }

  // Upper-triangle adjacency bits packed row-major, preceded by n.
  std::vector<std::uint8_t> bytes() const {
    std::vector<std::uint8_t> out{static_cast<std::uint8_t>(n)};
    std::uint8_t cur = 0;
    int nb = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        cur = static_cast<std::uint8_t>((cur << 1) | (edge(i, j) ? 1 : 0));
        if (++nb == 8) {
          out.push_back(cur);
          cur = 0;
          nb = 0;
        }
      }
    if (nb) out.push_back(static_cast<std::uint8_t>(cur << (8 - nb)));
    return out;
  }
};

// ---------------------------------------------------------------------------
// graph6 text format (bit-exact round trip).

inline std::string to_graph6(const Graph& g) {
  if (g.n > 62) throw std::invalid_argument("to_graph6: n > 62 unsupported");
  std::string s(1, static_cast<char>(g.n + 63));
  int acc = 0, nb = 0;
  for (std::size_t j = 1; j < g.n; ++j)
    for (std::size_t i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.edge(i, j) ? 1 : 0);
      if (++nb == 6) {
        s += static_cast<char>(acc + 63);
        acc = 0;
        nb = 0;
      }
    }
  if (nb) s += static_cast<char>((acc << (6 - nb)) + 63);
  return s;
}

inline Graph from_graph6(const std::string& s) {
  std::size_t pos = 0;
  auto next = [&]() -> int {
    if (pos >= s.size()) throw std::invalid_argument("graph6: truncated");
    int c = static_cast<unsigned char>(s[pos++]) - 63;
    if (c < 0 || c > 63) throw std::invalid_argument("graph6: bad character");
    return c;
  };
  std::size_t n;
  int c0 = next();
  if (c0 < 63) {
    n = static_cast<std::size_t>(c0);
  } else {
    int a = next(), b = next(), c = next();
    n = (static_cast<std::size_t>(a) << 12) | (static_cast<std::size_t>(b) << 6) |
        static_cast<std::size_t>(c);
  }
  if (n > 64) throw std::invalid_argument("graph6: n > 64 unsupported");
  Graph g(n);
  int acc = 0, nb = 0;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i) {
      if (nb == 0) {
        acc = next();
        nb = 6;
      }
      if ((acc >> (nb - 1)) & 1) g.set_edge(i, j, true);
      --nb;
    }
  return g;
}

// ---------------------------------------------------------------------------
// Local complementation at a: toggles all edges between neighbors of a.
inline Graph local_complement(const Graph& g, std::size_t a) {
  if (a >= g.n) throw std::invalid_argument("local_complement: vertex out of range");
  Graph out = g;
  std::uint64_t nb = g.neighborhood(a);
  for (std::size_t i = 0; i < g.n; ++i) {
    if (!((nb >> i) & 1)) continue;
    for (std::size_t j = i + 1; j < g.n; ++j)
      if ((nb >> j) & 1) out.toggle_edge(i, j);
  }
  return out;
}

// Rank over F2 of the adjacency submatrix with rows in m and columns outside
// m. Masking the excluded columns to zero leaves the rank unchanged, so the
// whole computation runs on neighborhood masks with an XOR basis.
inline std::size_t cut_rank(const Graph& g, std::uint64_t m) {
  std::uint64_t basis[64] = {};
  std::size_t r = 0;
  for (std::size_t i = 0; i < g.n; ++i) {
    if (!((m >> i) & 1)) continue;
    std::uint64_t row = g.neighborhood(i) & ~m;
    while (row) {
      const int h = 63 - std::countl_zero(row);
      if (basis[h]) {
        row ^= basis[h];
      } else {
        basis[h] = row;
        ++r;
        break;
      }
    }
  }
  return r;
}

// Standard graph-state stabilizer generators: row i is X_i * prod_{j ~ i} Z_j
// with + sign, i.e. check matrix [I | adjacency].
inline CheckMatrix standard_generators(const Graph& g) {
  CheckMatrix c(g.n);
  c.rows.reserve(g.n);
  for (std::size_t i = 0; i < g.n; ++i)
    c.rows.emplace_back(g.n, std::uint64_t{1} << i, g.neighborhood(i), 0);
  return c;
}

// Group the vertices selected by `scope` into classes with identical
// neighborhoods (masks taken over the whole graph). Classes of size one are
// kept; class order follows the lowest member.
inline std::vector<std::vector<std::size_t>> twin_classes(const Graph& g,
                                                          std::uint64_t scope) {
  std::vector<std::vector<std::size_t>> classes;
  std::map<std::uint64_t, std::size_t> by_mask;
  for (std::size_t i = 0; i < g.n; ++i) {
    if (!((scope >> i) & 1)) continue;
    std::uint64_t m = g.neighborhood(i);
    auto it = by_mask.find(m);
    if (it == by_mask.end()) {
      by_mask.emplace(m, classes.size());
      classes.push_back({i});
    } else {
      classes[it->second].push_back(i);
    }
  }
  std::sort(classes.begin(), classes.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return classes;
}

// ---------------------------------------------------------------------------
// Builtin families.

// Star on n vertices with center 0.
inline Graph star(std::size_t n) {
  Graph g(n);
  for (std::size_t i = 1; i < n; ++i) g.set_edge(0, i, true);
  return g;
}

inline Graph complete_graph(std::size_t n) {
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) g.set_edge(i, j, true);
  return g;
}

// Bipartite-incidence family: vertex set [k] together with every t-subset of
// [k] for each t in sizes (subsets enumerated in increasing bit-mask order).
// Element i is adjacent to subset A iff i is a member of A. With hat=true the
// k element vertices additionally form a clique.
inline Graph kneser(std::size_t k, const std::vector<std::size_t>& sizes, bool hat) {
  std::vector<std::uint64_t> subsets;
  for (std::size_t t : sizes) {
    if (t < 1 || t > k) throw std::invalid_argument("kneser: size out of range");
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << k); ++m)
      if (static_cast<std::size_t>(std::popcount(m)) == t) subsets.push_back(m);
  }
  Graph g(k + subsets.size());
  for (std::size_t a = 0; a < subsets.size(); ++a)
    for (std::size_t i = 0; i < k; ++i)
      if ((subsets[a] >> i) & 1) g.set_edge(i, k + a, true);
  if (hat)
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) g.set_edge(i, j, true);
  return g;
}

// ---------------------------------------------------------------------------
// Canonical form: iterated color refinement with individualization branching.
// Isomorphic graphs produce identical bytes; the labeling maps original
// vertices to canonical positions.

namespace detail {

inline std::vector<int> refine_colors(const Graph& g, std::vector<int> color) {
  for (;;) {
    // signature = (current color, sorted neighbor colors)
    std::vector<std::pair<std::vector<int>, std::size_t>> sig(g.n);
    for (std::size_t i = 0; i < g.n; ++i) {
      std::vector<int> s{color[i]};
      for (std::size_t j = 0; j < g.n; ++j)
        if (g.edge(i, j)) s.push_back(color[j]);
      std::sort(s.begin() + 1, s.end());
      sig[i] = {std::move(s), i};
    }
    auto order = sig;
    std::sort(order.begin(), order.end());
    std::vector<int> next(g.n);
    int c = 0;
    for (std::size_t r = 0; r < order.size(); ++r) {
      if (r > 0 && order[r].first != order[r - 1].first) ++c;
      next[order[r].second] = c;
    }
    if (next == color) return color;
    color = std::move(next);
  }
}

inline void canonical_search(const Graph& g, std::vector<int> color,
                             std::optional<std::pair<std::vector<std::uint8_t>,
                                                     std::vector<std::size_t>>>& best) {
  color = refine_colors(g, color);
  // find the smallest non-singleton color class
  std::map<int, std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i < g.n; ++i) classes[color[i]].push_back(i);
  const std::vector<std::size_t>* branch = nullptr;
  for (const auto& [c, members] : classes)
    if (members.size() > 1) {
      branch = &members;
      break;
    }
  if (!branch) {
    // discrete coloring: canonical position of vertex i is color[i]
    std::vector<std::size_t> perm(g.n);
    for (std::size_t i = 0; i < g.n; ++i) perm[i] = static_cast<std::size_t>(color[i]);
    auto b = g.permuted(perm).bytes();
    if (!best || b < best->first) best = {{std::move(b), std::move(perm)}};
    return;
  }
  for (std::size_t v : *branch) {
    std::vector<int> next = color;
    for (std::size_t i = 0; i < g.n; ++i)
      if (next[i] >= next[v] && i != v) next[i] += 1;
    canonical_search(g, std::move(next), best);
  }
}

}  // namespace detail

struct CanonicalForm {
  std::vector<std::uint8_t> bytes;       // identical iff isomorphic
  std::vector<std::size_t> labeling;     // original vertex -> canonical position
};

inline CanonicalForm canonical_form(const Graph& g) {
  std::optional<std::pair<std::vector<std::uint8_t>, std::vector<std::size_t>>> best;
  detail::canonical_search(g, std::vector<int>(g.n, 0), best);
  if (!best) return {Graph(0).bytes(), {}};
  return {best->first, best->second};
}

// ---------------------------------------------------------------------------
// Packed adjacency for n <= 8: row i of the adjacency matrix is byte i of a
// single 64-bit word. Used by the exhaustive orbit searches, which visit
// hundreds of millions of labeled graphs.
namespace packed8 {

inline std::uint64_t pack(const Graph& g) {
  if (g.n > 8) throw std::invalid_argument("packed8: n > 8");
  std::uint64_t a = 0;
  for (std::size_t i = 0; i < g.n; ++i)
    a |= static_cast<std::uint64_t>(g.neighborhood(i) & 0xff) << (8 * i);
  return a;
}

inline Graph unpack(std::uint64_t a, std::size_t n) {
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t row = (a >> (8 * i)) & 0xff;
    for (std::size_t j = i + 1; j < n; ++j)
      if ((row >> j) & 1) g.set_edge(i, j, true);
  }
  return g;
}

// Local complementation at vertex a.
inline std::uint64_t tau(std::uint64_t adj, std::size_t a) {
  std::uint64_t nb = (adj >> (8 * a)) & 0xff;
  std::uint64_t out = adj;
  std::uint64_t rest = nb;
  while (rest) {
    int i = std::countr_zero(rest);
    rest &= rest - 1;
    out ^= (nb ^ (std::uint64_t{1} << i)) << (8 * i);
  }
  return out;
}

// Swap vertex labels p and p+1 (rows and columns).
inline std::uint64_t swap_adjacent(std::uint64_t adj, std::size_t p) {
  std::uint64_t r0 = (adj >> (8 * p)) & 0xff, r1 = (adj >> (8 * p + 8)) & 0xff;
  adj &= ~(std::uint64_t{0xffff} << (8 * p));
  adj |= (r1 << (8 * p)) | (r0 << (8 * p + 8));
  // swap columns p, p+1 in every row
  std::uint64_t colmask = 0x0101010101010101ull;
  std::uint64_t c0 = (adj >> p) & colmask, c1 = (adj >> (p + 1)) & colmask;
  adj &= ~((colmask << p) | (colmask << (p + 1)));
  adj |= (c1 << p) | (c0 << (p + 1));
  return adj;
}

inline bool connected(std::uint64_t adj, std::size_t n) {
  std::uint64_t seen = 1, frontier = 1;
  while (frontier) {
    std::uint64_t next = 0;
    std::uint64_t rest = frontier;
    while (rest) {
      int i = std::countr_zero(rest);
      rest &= rest - 1;
      next |= (adj >> (8 * i)) & 0xff;
    }
    frontier = next & ~seen;
    seen |= next;
  }
  return seen == ((std::uint64_t{1} << n) - 1);
}

// Upper-triangle bits in a compact index (for visited bitsets): bit position
// of edge (i, j), i < j, is i*n - i*(i+1)/2 + (j - i - 1).
inline std::uint32_t upper_bits(std::uint64_t adj, std::size_t n) {
  std::uint32_t key = 0;
  int pos = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t row = (adj >> (8 * i)) & 0xff;
    for (std::size_t j = i + 1; j < n; ++j, ++pos)
      if ((row >> j) & 1) key |= std::uint32_t{1} << pos;
  }
  return key;
}

inline std::uint64_t from_upper_bits(std::uint32_t key, std::size_t n) {
  std::uint64_t adj = 0;
  int pos = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j, ++pos)
      if ((key >> pos) & 1)
        adj |= (std::uint64_t{1} << (8 * i + j)) | (std::uint64_t{1} << (8 * j + i));
  return adj;
}

}  // namespace packed8

// ---------------------------------------------------------------------------
// Closure of a graph under local complementation, deduplicated by canonical
// form; keeps one labeled representative per unlabeled class.

struct LcOrbit {
  std::map<std::vector<std::uint8_t>, Graph> reps;  // canonical bytes -> labeled rep
};

inline LcOrbit lc_orbit(const Graph& g, std::size_t max_n = 12) {
  if (g.n > max_n) throw std::invalid_argument("lc_orbit: size guard exceeded");
  LcOrbit orbit;
  std::vector<Graph> queue{g};
  orbit.reps.emplace(canonical_form(g).bytes, g);
  while (!queue.empty()) {
    Graph cur = queue.back();
    queue.pop_back();
    for (std::size_t a = 0; a < cur.n; ++a) {
      Graph next = local_complement(cur, a);
      auto key = canonical_form(next).bytes;
      if (orbit.reps.emplace(std::move(key), next).second) queue.push_back(next);
    }
  }
  return orbit;
}

}  // namespace stab_lu
