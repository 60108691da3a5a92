#include <catch2/catch_amalgamated.hpp>

#include <bit>
#include <cstdint>
#include <random>
#include <vector>

#include "stab_lu/dyadic.hpp"
#include "stab_lu/graph.hpp"
#include "stab_lu/hypergraph.hpp"
#include "stab_lu/oracle.hpp"

using namespace stab_lu;

namespace {

Graph random_graph(std::mt19937_64& rng, std::size_t n, double p = 0.5) {
  Graph g(n);
  std::bernoulli_distribution coin(p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (coin(rng)) g.set_edge(i, j, true);
  return g;
}

Dyadic random_dyadic(std::mt19937_64& rng, int max_exp = 3) {
  int e = static_cast<int>(rng() % (max_exp + 1));
  std::int64_t num = static_cast<std::int64_t>(rng() % (std::uint64_t{1} << (e + 1)));
  return Dyadic(num, e);
}

}  // namespace

TEST_CASE("graph round trip keeps exactly the weight-one pairs") {
  Graph e3(3);
  CHECK(from_graph(e3).weights.empty());

  Graph tri = complete_graph(3);
  WeightedHypergraph h = from_graph(tri);
  REQUIRE(h.weights.size() == 3);
  CHECK(h.weight(0b011) == Dyadic(1, 0));
  CHECK(h.weight(0b101) == Dyadic(1, 0));
  CHECK(h.weight(0b110) == Dyadic(1, 0));
  CHECK(h.graph_like());
  CHECK(to_graph(h) == tri);

  std::mt19937_64 rng(1);
  for (int it = 0; it < 20; ++it) {
    Graph g = random_graph(rng, 1 + it % 9);
    CHECK(to_graph(from_graph(g)) == g);
  }

  WeightedHypergraph bad(3);
  bad.add_weight(0b111, Dyadic(1, 0));
  CHECK_FALSE(bad.graph_like());
  CHECK_THROWS_AS(to_graph(bad), std::invalid_argument);
}

TEST_CASE("weights stay reduced into the half-open interval") {
  WeightedHypergraph h(2);
  h.add_weight(0b01, Dyadic(1, 1));      // 1/2
  h.add_weight(0b01, Dyadic(7, 2));      // + 7/4 = 9/4 = 1/4 mod 2
  CHECK(h.weight(0b01) == Dyadic(1, 2));
  h.add_weight(0b01, Dyadic(-1, 2));     // back to zero, entry erased
  CHECK(h.weights.empty());
  CHECK_THROWS_AS(h.add_weight(0, Dyadic(1, 0)), std::invalid_argument);
  CHECK_THROWS_AS(h.add_weight(0b100, Dyadic(1, 0)), std::invalid_argument);
}

TEST_CASE("Z rotation adds its exponent to the singleton hyperedge") {
  WeightedHypergraph h(3);
  CHECK(apply_z(h, 1, Dyadic(0, 0)) == h);
  CHECK(apply_z(h, 1, Dyadic(2, 0)) == h);  // full period
  WeightedHypergraph h2 = apply_z(h, 1, Dyadic(1, 1));
  REQUIRE(h2.weights.size() == 1);
  CHECK(h2.weight(0b010) == Dyadic(1, 1));
  // inverse pair cancels exactly
  CHECK(apply_z(h2, 1, Dyadic(-1, 1)) == h);
}

TEST_CASE("X rotation in the restricted setting rewrites the neighborhood subsets") {
  // isolated vertex: nothing happens
  WeightedHypergraph iso(2);
  CHECK(apply_x_graphlike(iso, 0, Dyadic(1, 2)) == iso);

  // single edge {i,j}: only the singleton {j} gains alpha
  Graph pair2(2);
  pair2.set_edge(0, 1, true);
  WeightedHypergraph hp = apply_x_graphlike(from_graph(pair2), 0, Dyadic(3, 2));
  CHECK(hp.weight(0b11) == Dyadic(1, 0));
  CHECK(hp.weight(0b10) == Dyadic(3, 2));
  CHECK(hp.weights.size() == 2);

  // path a - i - b: singletons gain alpha, the pair {a,b} gains -2 alpha
  Graph path(3);
  path.set_edge(0, 1, true);  // a=0, i=1
  path.set_edge(1, 2, true);  // b=2
  WeightedHypergraph hq = apply_x_graphlike(from_graph(path), 1, Dyadic(1, 2));
  CHECK(hq.weight(0b001) == Dyadic(1, 2));
  CHECK(hq.weight(0b100) == Dyadic(1, 2));
  CHECK(hq.weight(0b101) == Dyadic(-1, 1));  // -1/2 = 3/2 mod 2
  CHECK(hq.weight(0b011) == Dyadic(1, 0));
  CHECK(hq.weight(0b110) == Dyadic(1, 0));

  // preconditions: a triangle hyperedge or a non-unit pair at i rejects
  WeightedHypergraph bad(3);
  bad.add_weight(0b111, Dyadic(1, 0));
  CHECK_THROWS_AS(apply_x_graphlike(bad, 0, Dyadic(1, 1)), std::invalid_argument);
  WeightedHypergraph halfpair(2);
  halfpair.add_weight(0b11, Dyadic(1, 1));
  CHECK_THROWS_AS(apply_x_graphlike(halfpair, 0, Dyadic(1, 1)), std::invalid_argument);
  // ... but hyperedges away from i are fine
  WeightedHypergraph mixed(4);
  mixed.add_weight(0b1110, Dyadic(1, 1));
  mixed.add_weight(0b0011, Dyadic(1, 0));
  CHECK_NOTHROW(apply_x_graphlike(mixed, 0, Dyadic(1, 1)));
}

TEST_CASE("X rotations against the dense oracle") {
  std::mt19937_64 rng(20260825);
  for (int it = 0; it < 60; ++it) {
    std::size_t n = 2 + it % 5;  // up to 6
    Graph g = random_graph(rng, n);
    std::size_t i = rng() % n;
    WeightedHypergraph h = from_graph(g);
    // extra weights away from i keep the precondition intact
    for (std::size_t v = 0; v < n; ++v)
      if (v != i) h.add_weight(std::uint64_t{1} << v, random_dyadic(rng));
    if (n >= 3) {
      std::uint64_t e = rng() & ((std::uint64_t{1} << n) - 1);
      e &= ~(std::uint64_t{1} << i);
      if (std::popcount(e) >= 3) h.add_weight(e, random_dyadic(rng));
    }
    Dyadic alpha = random_dyadic(rng);

    WeightedHypergraph hx = apply_x_graphlike(h, i, alpha);
    StateVector lhs = apply_single_qubit(hypergraph_state_vector(h), i,
                                         rotation_dense(alpha, true));
    CHECK(equal_up_to_phase(lhs, hypergraph_state_vector(hx), 1e-9));

    WeightedHypergraph hz = apply_z(h, i, alpha);
    StateVector lhz = apply_single_qubit(hypergraph_state_vector(h), i,
                                         rotation_dense(alpha, false));
    CHECK(equal_up_to_phase(lhz, hypergraph_state_vector(hz), 1e-9));
  }
}

TEST_CASE("joint X layer requires pairwise non-adjacent targets and commutes") {
  Graph g(5);  // two pendants 3,4 hanging off a triangle 0,1,2
  g.set_edge(0, 1, true);
  g.set_edge(1, 2, true);
  g.set_edge(0, 2, true);
  g.set_edge(0, 3, true);
  g.set_edge(1, 4, true);
  WeightedHypergraph h = from_graph(g);

  std::vector<std::pair<std::size_t, Dyadic>> ab = {{3, Dyadic(1, 2)}, {4, Dyadic(5, 3)}};
  std::vector<std::pair<std::size_t, Dyadic>> ba = {{4, Dyadic(5, 3)}, {3, Dyadic(1, 2)}};
  CHECK(apply_x_layer(h, ab) == apply_x_layer(h, ba));
  CHECK(apply_x_layer(h, {}) == h);
  CHECK(apply_x_layer(h, {{3, Dyadic(0, 0)}, {4, Dyadic(0, 0)}}) == h);

  std::vector<std::pair<std::size_t, Dyadic>> adj = {{0, Dyadic(1, 1)}, {3, Dyadic(1, 1)}};
  CHECK_THROWS_AS(apply_x_layer(h, adj), std::invalid_argument);
}

TEST_CASE("certificate verification accepts identity and rejects perturbations") {
  std::mt19937_64 rng(9);
  // head triangle, three tail vertices attached to head subsets only
  Graph g(6);
  g.set_edge(0, 1, true);
  g.set_edge(1, 2, true);
  g.set_edge(0, 2, true);
  g.set_edge(0, 3, true);
  g.set_edge(1, 4, true);
  g.set_edge(2, 5, true);
  g.set_edge(0, 5, true);
  DyadicVector zero(6);
  CHECK(verify_certificate_hyper(g, g, 3, zero));

  DyadicVector bad = zero;
  bad[1] = Dyadic(1, 1);
  CHECK_FALSE(verify_certificate_hyper(g, g, 3, bad));
  DyadicVector badx = zero;
  badx[4] = Dyadic(1, 1);
  CHECK_FALSE(verify_certificate_hyper(g, g, 3, badx));

  CHECK_THROWS_AS(verify_certificate_hyper(g, Graph(5), 3, zero), std::invalid_argument);

  // adjacent tail vertices are rejected by the layer precondition
  Graph adj = g;
  adj.set_edge(3, 4, true);
  CHECK_THROWS_AS(verify_certificate_hyper(adj, adj, 3, zero), std::invalid_argument);
}

TEST_CASE("twin tail vertices admit opposite-exponent automorphisms") {
  std::mt19937_64 rng(424242);
  for (int it = 0; it < 40; ++it) {
    std::size_t k = 2 + it % 4;  // head size up to 5
    std::size_t n = k + 2;
    Graph head = random_graph(rng, k);
    Graph g(n);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j)
        if (head.edge(i, j)) g.set_edge(i, j, true);
    std::uint64_t nb = 0;
    while (nb == 0) nb = rng() & ((std::uint64_t{1} << k) - 1);
    for (std::size_t i = 0; i < k; ++i)
      if ((nb >> i) & 1) {
        g.set_edge(i, k, true);
        g.set_edge(i, k + 1, true);
      }

    Dyadic beta = random_dyadic(rng);
    DyadicVector alpha(n);
    alpha[k] = beta;
    alpha[k + 1] = -beta;
    CHECK(verify_certificate_hyper(g, g, k, alpha));

    // dense cross-check of the same layer
    StateVector psi = graph_state_vector(g);
    StateVector out = apply_single_qubit(psi, k, rotation_dense(beta, true));
    out = apply_single_qubit(out, k + 1, rotation_dense(-beta, true));
    CHECK(equal_up_to_phase(out, psi, 1e-9));

    if (!beta.is_zero()) {
      DyadicVector off = alpha;
      off[k + 1] = beta;  // same sign: only works for beta in {0,1}
      bool expect = beta == Dyadic(1, 0) || beta.is_zero();
      CHECK(verify_certificate_hyper(g, g, k, off) == expect);
    }
  }
}

TEST_CASE("weight dump lists one-indexed vertices with exact fractions") {
  WeightedHypergraph h(4);
  h.add_weight(0b1010, Dyadic(1, 0));
  h.add_weight(0b0001, Dyadic(3, 2));
  auto dump = weight_dump(h);
  REQUIRE(dump.size() == 2);
  CHECK(dump[0].first == std::vector<std::size_t>{1});
  CHECK(dump[0].second == "3/4");
  CHECK(dump[1].first == std::vector<std::size_t>{2, 4});
  CHECK(dump[1].second == "1");
}
