#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "stab_lu/dyadic.hpp"
#include "stab_lu/graph.hpp"

namespace stab_lu {

// Weighted hypergraph: finite map from nonempty vertex subsets (bit masks) to
// dyadic weights reduced into [0,2). Represents the state obtained from
// |+>^n by applying, for every hyperedge e with weight w, the diagonal phase
// e^{i pi w} on basis states whose support contains e. No floating point
// anywhere in this module.
struct WeightedHypergraph {
  std::size_t n = 0;
  std::map<std::uint64_t, Dyadic> weights;  // only nonzero entries, masks != 0

  WeightedHypergraph() = default;
  explicit WeightedHypergraph(std::size_t n_) : n(n_) {
    if (n_ > 64) throw std::invalid_argument("WeightedHypergraph: n > 64");
  }

  Dyadic weight(std::uint64_t e) const {
    auto it = weights.find(e);
    return it == weights.end() ? Dyadic() : it->second;
  }

  void add_weight(std::uint64_t e, const Dyadic& d) {
    if (e == 0) throw std::invalid_argument("add_weight: empty hyperedge");
    if (e >> n) throw std::invalid_argument("add_weight: vertex out of range");
    auto it = weights.find(e);
    if (it == weights.end()) {
      if (!d.is_zero()) weights.emplace(e, d);
      return;
    }
    it->second = it->second + d;
    if (it->second.is_zero()) weights.erase(it);
  }

  bool operator==(const WeightedHypergraph& o) const {
    return n == o.n && weights == o.weights;
  }
  bool operator!=(const WeightedHypergraph& o) const { return !(*this == o); }

  // True when every hyperedge is a weight-1 pair (the graph-state case).
  bool graph_like() const {
    for (const auto& [e, w] : weights)
      if (std::popcount(e) != 2 || !(w == Dyadic(1, 0))) return false;
    return true;
  }

  // Neighborhood of i in the pair-edge part; requires every hyperedge
  // containing i to be a weight-1 pair.
  std::uint64_t graphlike_delta(std::size_t i) const {
    std::uint64_t delta = 0;
    const std::uint64_t bit = std::uint64_t{1} << i;
    for (const auto& [e, w] : weights) {
      if (!(e & bit)) continue;
      if (std::popcount(e) != 2 || !(w == Dyadic(1, 0)))
        throw std::invalid_argument(
            "graphlike_delta: hyperedge at vertex is not a weight-1 pair");
      delta |= e ^ bit;
    }
    return delta;
  }
};

inline WeightedHypergraph from_graph(const Graph& g) {
  WeightedHypergraph h(g.n);
  for (auto [i, j] : g.edges())
    h.add_weight((std::uint64_t{1} << i) | (std::uint64_t{1} << j), Dyadic(1, 0));
  return h;
}

// Inverse of from_graph; requires a graph-like hypergraph.
inline Graph to_graph(const WeightedHypergraph& h) {
  if (!h.graph_like()) throw std::invalid_argument("to_graph: not graph-like");
  Graph g(h.n);
  for (const auto& [e, w] : h.weights) {
    std::size_t i = static_cast<std::size_t>(std::countr_zero(e));
    std::size_t j = static_cast<std::size_t>(63 - std::countl_zero(e));
    g.set_edge(i, j, true);
  }
  return g;
}

// Z^alpha on qubit i adds alpha to the singleton hyperedge {i}.
inline WeightedHypergraph apply_z(WeightedHypergraph h, std::size_t i, const Dyadic& alpha) {
  if (i >= h.n) throw std::invalid_argument("apply_z: vertex out of range");
  h.add_weight(std::uint64_t{1} << i, alpha);
  return h;
}

// X^alpha on qubit i in the restricted setting where every hyperedge at i is
// a weight-1 pair: adds (-2)^{|e|-1} alpha to every nonempty e contained in
// the neighborhood of i. The hyperedges at i itself are untouched.
inline WeightedHypergraph apply_x_graphlike(WeightedHypergraph h, std::size_t i,
                                            const Dyadic& alpha) {
  if (i >= h.n) throw std::invalid_argument("apply_x_graphlike: vertex out of range");
  std::uint64_t delta = h.graphlike_delta(i);  // validates the precondition
  if (alpha.is_zero()) return h;
  int d = std::popcount(delta);
  if (d > 24) throw std::invalid_argument("apply_x_graphlike: neighborhood too large");
  std::vector<std::size_t> members;
  for (std::size_t j = 0; j < h.n; ++j)
    if ((delta >> j) & 1) members.push_back(j);
  for (std::uint64_t s = 1; s < (std::uint64_t{1} << d); ++s) {
    std::uint64_t e = 0;
    for (int b = 0; b < d; ++b)
      if ((s >> b) & 1) e |= std::uint64_t{1} << members[b];
    h.add_weight(e, alpha.times_pow_neg2(std::popcount(s) - 1));
  }
  return h;
}

// Joint layer of X^alpha factors; targets must be pairwise non-adjacent in
// the pair-edge part, which makes the individual actions commute.
inline WeightedHypergraph apply_x_layer(
    WeightedHypergraph h, const std::vector<std::pair<std::size_t, Dyadic>>& targets) {
  for (std::size_t a = 0; a < targets.size(); ++a) {
    std::uint64_t da = h.graphlike_delta(targets[a].first);
    for (std::size_t b = a + 1; b < targets.size(); ++b)
      if ((da >> targets[b].first) & 1)
        throw std::invalid_argument("apply_x_layer: targets are adjacent");
  }
  for (const auto& [i, alpha] : targets) h = apply_x_graphlike(h, i, alpha);
  return h;
}

// Exact certificate check on a reduced pair: both hat graphs share the head
// 1..k and a tail k+1..n of pairwise non-adjacent vertices. Applies the
// X layer on the tail and then the Z layer on the head of from_graph(ghat)
// and compares with from_graph(ghat_prime), all weights mod 2.
inline bool verify_certificate_hyper(const Graph& ghat, const Graph& ghat_prime,
                                     std::size_t k, const DyadicVector& alpha) {
  if (ghat.n != ghat_prime.n || alpha.size() != ghat.n || k > ghat.n)
    throw std::invalid_argument("verify_certificate_hyper: shape mismatch");
  WeightedHypergraph h = from_graph(ghat);
  std::vector<std::pair<std::size_t, Dyadic>> targets;
  for (std::size_t i = k; i < ghat.n; ++i)
    targets.emplace_back(i, alpha[i]);
  h = apply_x_layer(std::move(h), targets);
  for (std::size_t i = 0; i < k; ++i) h = apply_z(std::move(h), i, alpha[i]);
  return h == from_graph(ghat_prime);
}

// JSON-ready dump of the nonzero weights: [{"e":[1-indexed vertices],"w":"..."}].
inline std::vector<std::pair<std::vector<std::size_t>, std::string>> weight_dump(
    const WeightedHypergraph& h) {
  std::vector<std::pair<std::vector<std::size_t>, std::string>> out;
  for (const auto& [e, w] : h.weights) {
    std::vector<std::size_t> verts;
    for (std::size_t j = 0; j < h.n; ++j)
      if ((e >> j) & 1) verts.push_back(j + 1);
    out.emplace_back(std::move(verts), w.to_string());
  }
  return out;
}

}  // namespace stab_lu
