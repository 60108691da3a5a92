#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "stab_lu/graph.hpp"
#include "stab_lu/hypergraph.hpp"
#include "stab_lu/pauli.hpp"

namespace stab_lu {

// Dense statevector ground truth. Amplitude ordering: qubit 1 (index 0) is
// the MOST significant bit of the computational-basis index.
struct StateVector {
  std::size_t n = 0;
  std::vector<std::complex<double>> amp;

  StateVector() = default;
  explicit StateVector(std::size_t n_, std::size_t guard = 14) : n(n_) {
    if (n_ > guard) throw std::invalid_argument("StateVector: size guard exceeded");
    amp.assign(std::size_t{1} << n_, 0.0);
  }

  // Index-space bit of qubit q (0-based).
  std::size_t qubit_bit(std::size_t q) const { return std::size_t{1} << (n - 1 - q); }
};

inline std::complex<double> inner(const StateVector& a, const StateVector& b) {
  std::complex<double> s = 0.0;
  for (std::size_t i = 0; i < a.amp.size(); ++i) s += std::conj(a.amp[i]) * b.amp[i];
  return s;
}

inline double norm(const StateVector& a) { return std::sqrt(std::abs(inner(a, a))); }

inline bool equal_up_to_phase(const StateVector& a, const StateVector& b, double tol) {
  if (a.n != b.n) throw std::invalid_argument("equal_up_to_phase: size mismatch");
  return std::abs(inner(a, b)) >= 1.0 - tol;
}

inline StateVector plus_state(std::size_t n, std::size_t guard = 14) {
  StateVector s(n, guard);
  double a = std::pow(2.0, -static_cast<double>(n) / 2.0);
  for (auto& x : s.amp) x = a;
  return s;
}

// |G> via CZ phase accumulation: amplitude of basis state b is
// 2^{-n/2} (-1)^{#edges inside the support of b}.
inline StateVector graph_state_vector(const Graph& g, std::size_t guard = 14) {
  StateVector s = plus_state(g.n, guard);
  for (std::size_t idx = 0; idx < s.amp.size(); ++idx) {
    int count = 0;
    for (std::size_t i = 0; i < g.n; ++i) {
      if (!((idx >> (g.n - 1 - i)) & 1)) continue;
      for (std::size_t j = i + 1; j < g.n; ++j)
        if (((idx >> (g.n - 1 - j)) & 1) && g.edge(i, j)) ++count;
    }
    if (count % 2) s.amp[idx] = -s.amp[idx];
  }
  return s;
}

// Weighted hypergraph state: amplitude of b is 2^{-n/2} e^{i pi W(b)} with
// W(b) the sum of weights of hyperedges contained in the support of b.
inline StateVector hypergraph_state_vector(const WeightedHypergraph& h,
                                           std::size_t guard = 14) {
  StateVector s = plus_state(h.n, guard);
  for (std::size_t idx = 0; idx < s.amp.size(); ++idx) {
    std::uint64_t supp = 0;
    for (std::size_t q = 0; q < h.n; ++q)
      if ((idx >> (h.n - 1 - q)) & 1) supp |= std::uint64_t{1} << q;
    Dyadic w;
    for (const auto& [e, we] : h.weights)
      if ((e & supp) == e) w = w + we;
    double phase = std::numbers::pi * w.num / std::pow(2.0, w.den_exp);
    s.amp[idx] *= std::complex<double>(std::cos(phase), std::sin(phase));
  }
  return s;
}

// ---------------------------------------------------------------------------
// Single-qubit numerics.

using Mat2 = std::array<std::complex<double>, 4>;  // row-major [a b; c d]

inline Mat2 transition_dense(const TransitionMatrix& t) {
  double scale = t.halved ? 1.0 / std::sqrt(2.0) : 1.0;
  Mat2 m;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      m[2 * r + c] = scale * std::complex<double>(t.numerator[r][c].first,
                                                  t.numerator[r][c].second);
  return m;
}

// A^alpha = e^{i alpha pi/2} (cos(alpha pi/2) I - i sin(alpha pi/2) A).
inline Mat2 rotation_dense(const Dyadic& alpha, bool x_axis) {
  double a = std::numbers::pi * alpha.num / std::pow(2.0, alpha.den_exp + 1);
  std::complex<double> g(std::cos(a), std::sin(a));
  std::complex<double> c = std::cos(a), is(0.0, std::sin(a));
  if (x_axis) return {g * c, g * (-is), g * (-is), g * c};
  return {g * (c - is), 0.0, 0.0, g * (c + is)};
}

inline Mat2 factor_dense(const LocalFactor& f) {
  switch (f.kind) {
    case LocalFactor::Kind::Transition:
      return transition_dense(transition_matrix(f.a, f.b, f.dagger));
    case LocalFactor::Kind::PowZ:
      return rotation_dense(f.alpha, false);
    case LocalFactor::Kind::PowX:
      return rotation_dense(f.alpha, true);
  }
  throw std::logic_error("unreachable");
}

inline StateVector apply_single_qubit(StateVector s, std::size_t q, const Mat2& m) {
  const std::size_t bit = s.qubit_bit(q);
  for (std::size_t idx = 0; idx < s.amp.size(); ++idx) {
    if (idx & bit) continue;
    auto a0 = s.amp[idx], a1 = s.amp[idx | bit];
    s.amp[idx] = m[0] * a0 + m[1] * a1;
    s.amp[idx | bit] = m[2] * a0 + m[3] * a1;
  }
  return s;
}

// Chain factors are listed in application order (first factor acts first).
inline StateVector apply_chain(StateVector s, const LocalOpChain& chain) {
  for (const auto& f : chain) s = apply_single_qubit(std::move(s), f.qubit, factor_dense(f));
  return s;
}

// P|b> = i^phase (-1)^{z . b} |b xor x>, with masks translated to index space.
inline StateVector apply_pauli(const StateVector& s, const PauliString& p) {
  if (p.n != s.n) throw std::invalid_argument("apply_pauli: size mismatch");
  std::size_t xmask = 0, zmask = 0;
  for (std::size_t q = 0; q < s.n; ++q) {
    if ((p.xbits >> q) & 1) xmask |= s.qubit_bit(q);
    if ((p.zbits >> q) & 1) zmask |= s.qubit_bit(q);
  }
  static const std::complex<double> ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  StateVector out(s.n);
  for (std::size_t idx = 0; idx < s.amp.size(); ++idx) {
    std::complex<double> a = ipow[p.phase_exp] * s.amp[idx];
    if (std::popcount(idx & zmask) % 2) a = -a;
    out.amp[idx ^ xmask] = a;
  }
  return out;
}

// Max-norm residual of (P - I)|s>; < 1e-12 certifies a +1 eigenvector.
inline double eigenvector_residual(const StateVector& s, const PauliString& p) {
  StateVector ps = apply_pauli(s, p);
  double r = 0.0;
  for (std::size_t i = 0; i < s.amp.size(); ++i)
    r = std::max(r, std::abs(ps.amp[i] - s.amp[i]));
  return r;
}

// Dense end-to-end check: chain applied to |g> equals |gp> up to global phase.
inline bool verify_chain_dense(const Graph& g, const Graph& gp, const LocalOpChain& chain,
                               double tol = 1e-9, std::size_t guard = 14) {
  StateVector sg = apply_chain(graph_state_vector(g, guard), chain);
  return equal_up_to_phase(sg, graph_state_vector(gp, guard), tol);
}

// ---------------------------------------------------------------------------
// Brute-force labeled LC equivalence: BFS closure of the labeled graph under
// local complementation at every vertex, no relabeling. Guarded to n <= 8.

inline std::unordered_set<std::uint64_t> brute_lc_orbit_labeled(const Graph& g) {
  if (g.n > 8) throw std::invalid_argument("brute_lc_orbit_labeled: n > 8");
  std::unordered_set<std::uint64_t> seen;
  std::vector<std::uint64_t> stack{packed8::pack(g)};
  seen.insert(stack.back());
  while (!stack.empty()) {
    std::uint64_t cur = stack.back();
    stack.pop_back();
    for (std::size_t a = 0; a < g.n; ++a) {
      std::uint64_t next = packed8::tau(cur, a);
      if (seen.insert(next).second) stack.push_back(next);
    }
  }
  return seen;
}

inline bool brute_lc_equivalent(const Graph& g, const Graph& gp) {
  if (g.n != gp.n) return false;
  return brute_lc_orbit_labeled(g).count(packed8::pack(gp)) != 0;
}

}  // namespace stab_lu
