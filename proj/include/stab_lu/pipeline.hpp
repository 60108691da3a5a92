#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "stab_lu/bits.hpp"
#include "stab_lu/dyadic.hpp"
#include "stab_lu/graph.hpp"
#include "stab_lu/hypergraph.hpp"
#include "stab_lu/mls.hpp"
#include "stab_lu/modsystem.hpp"
#include "stab_lu/normal_form.hpp"
#include "stab_lu/oracle.hpp"
#include "stab_lu/pauli.hpp"

namespace stab_lu {

// ---------------------------------------------------------------------------
// Full decision procedure for local-unitary equivalence of two labeled graph
// states, in three stages:
//   1. screening + letter-function enumeration from the minimal-local-set
//      cover (each branch fixes, per vertex, which Pauli letter of one state
//      must map to which letter of the other);
//   2. reduction of both states to a block form: a shared head/tail split
//      where the tail vertices are pairwise disconnected and the two reduced
//      graphs differ only inside the head;
//   3. a linear system over dyadic rotation exponents, solved level by level.
// Public level r admits rotation exponents that are multiples of 1/2^r, so
// level 1 is exactly the local Clifford regime (S and sqrt(X) powers) and
// each next level halves the rotation angle. This is one finer than the
// solver's own modulus parametrization: solving at public level r runs the
// modular solver with modulus exponent r + 1.
// Every "equivalent" answer carries a certificate chain that is re-verified
// symbolically (and numerically for small n) before being returned.

enum class RejectStage { CutRank, MlsCover, SupportScreen, FunctionPairs, Reduction, System };

inline std::string reject_stage_name(RejectStage s) {
  switch (s) {
    case RejectStage::CutRank: return "cut_rank";
    case RejectStage::MlsCover: return "mls_cover";
    case RejectStage::SupportScreen: return "support_screen";
    case RejectStage::FunctionPairs: return "function_pairs";
    case RejectStage::Reduction: return "reduction";
    case RejectStage::System: return "system";
  }
  throw std::logic_error("unreachable");
}

struct Rejection {
  RejectStage stage;
  std::string detail;
};

// Per-vertex Pauli letters: an equivalence operator must conjugate letter
// f_g[i] on qubit i of the first state into letter f_gp[i] of the second.
struct FunctionPair {
  std::vector<Axis> f_g, f_gp;
};

// Result of the block reduction. The hat graphs live on relabeled qubits:
// original qubit j sits at hat position qubit_perm[j]; positions [0,k) are
// the head, [k,n) the pairwise-disconnected tail. chain_g / chain_gp act on
// the ORIGINAL labels and satisfy  |Ghat>  = P(chain_g |G>)  and
// |Ghat'> = P(chain_gp |G'>)  with P the relabeling.
struct ReducedPair {
  Graph g_hat, gp_hat;
  std::size_t k = 0;
  LocalOpChain chain_g, chain_gp;
  std::vector<std::size_t> qubit_perm;
};

// Equivalence witness. alpha is hat-indexed: Z exponents on head positions,
// X exponents on tail positions, every entry a multiple of 2^(1-r). The
// composed chain acts on original labels and maps |G> to |G'> up to a global
// phase: chain_g, then the rotation layer, then the inverse of chain_gp.
struct Certificate {
  ReducedPair reduced;
  DyadicVector alpha;
  int r = 1;
  LocalOpChain composed;
};

enum class VerdictKind { Equivalent, NotEquivalent, NotEquivalentUpTo };

struct Verdict {
  VerdictKind kind = VerdictKind::NotEquivalent;
  std::optional<Certificate> certificate;  // engaged iff Equivalent
  std::optional<RejectStage> stage;        // engaged iff NotEquivalent
  std::string detail;
  int r_cap = 0;  // for NotEquivalentUpTo: the level cap that bound the search
};

namespace detail {

inline Axis axis_of_letter(char c) {
  switch (c) {
    case 'X': return Axis::X;
    case 'Y': return Axis::Y;
    case 'Z': return Axis::Z;
  }
  throw std::logic_error("axis_of_letter: reduced element with identity site");
}

// Nontrivial elements of the reduced stabilizer group over m, in the stable
// (xbits, zbits) order produced by reduced_stabilizer_group.
inline std::vector<PauliString> nontrivial_reduced(const Graph& g, VertexSet m) {
  std::vector<PauliString> out;
  for (const PauliString& p : reduced_stabilizer_group(g, m))
    if (p.support() != 0) out.push_back(p);
  return out;
}

inline std::string vertex_set_text(VertexSet m) {
  std::string s = "{";
  for (int v : vertex_list(m)) {
    if (s.size() > 1) s += ",";
    s += std::to_string(v + 1);
  }
  return s + "}";
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Stage 1a: necessary-condition screening. The cover must be valid for g;
// each set must be a minimal local set of the same type in gp, cut ranks must
// agree, and for every intersecting pair of Type-I sets the supports of the
// products of their unique reduced elements must coincide in both graphs.
inline std::optional<Rejection> screen(const Graph& g, const Graph& gp,
                                       const MlsCover& cover) {
  for (const LocalSet& ls : cover.sets)
    if (cut_rank(g, ls.m) != cut_rank(gp, ls.m))
      return Rejection{RejectStage::CutRank,
                       "cut rank differs on " + detail::vertex_set_text(ls.m)};
  for (const LocalSet& ls : cover.sets) {
    if (!is_mls(gp, ls.m))
      return Rejection{RejectStage::MlsCover,
                       detail::vertex_set_text(ls.m) +
                           " is not a minimal local set of the second graph"};
    if (classify(gp, ls.m) != ls.mls_type)
      return Rejection{RejectStage::MlsCover,
                       detail::vertex_set_text(ls.m) +
                           " changes type between the graphs"};
  }
  std::vector<std::size_t> type1;
  for (std::size_t i = 0; i < cover.sets.size(); ++i)
    if (cover.sets[i].mls_type == MlsType::TypeI) type1.push_back(i);
  for (std::size_t a = 0; a < type1.size(); ++a)
    for (std::size_t b = a + 1; b < type1.size(); ++b) {
      const LocalSet& la = cover.sets[type1[a]];
      const LocalSet& lb = cover.sets[type1[b]];
      if ((la.m & lb.m) == 0) continue;
      PauliString pg = multiply(detail::nontrivial_reduced(g, la.m)[0],
                                detail::nontrivial_reduced(g, lb.m)[0]);
      PauliString pgp = multiply(detail::nontrivial_reduced(gp, la.m)[0],
                                 detail::nontrivial_reduced(gp, lb.m)[0]);
      if (pg.support() != pgp.support())
        return Rejection{RejectStage::SupportScreen,
                         "product support differs for " +
                             detail::vertex_set_text(la.m) + " and " +
                             detail::vertex_set_text(lb.m)};
    }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Stage 1b: enumerate the candidate letter functions. The domain grows by
// consuming cover sets: a Type-I set extends uniquely through its single
// nontrivial reduced element; a set intersecting the domain extends uniquely
// through the elements anchored at a shared vertex (for Type II the three
// nontrivial elements carry pairwise distinct letters at every member, so
// the anchor letter picks exactly one). Only when every remaining set is
// Type II and disjoint from the domain does a 3-way branch occur, once per
// such component, giving at most 3^t branches. A branch dies when, at some
// already-assigned vertex, exactly one side of the new constraint matches
// the existing assignment (a letter bijection must preserve equality).
inline std::vector<FunctionPair> enumerate_function_pairs(const Graph& g,
                                                          const Graph& gp,
                                                          const MlsCover& cover) {
  const std::size_t n = g.n;
  const std::size_t nsets = cover.sets.size();
  std::vector<std::vector<PauliString>> eg(nsets), egp(nsets);
  for (std::size_t s = 0; s < nsets; ++s) {
    eg[s] = detail::nontrivial_reduced(g, cover.sets[s].m);
    egp[s] = detail::nontrivial_reduced(gp, cover.sets[s].m);
    const std::size_t want = cover.sets[s].mls_type == MlsType::TypeI ? 1 : 3;
    if (cover.sets[s].mls_type == MlsType::NotMinimal ||
        eg[s].size() != want || egp[s].size() != want)
      throw std::logic_error("enumerate_function_pairs: cover not screened");
  }

  struct State {
    std::vector<int> fg, fgp;  // -1 = unassigned, else Axis value
    std::uint64_t domain = 0;
    std::vector<std::uint8_t> used;
  };
  State init;
  init.fg.assign(n, -1);
  init.fgp.assign(n, -1);
  init.used.assign(nsets, 0);

  // Returns false when the constraint conflicts with the existing assignment.
  auto extend = [&cover](State& st, std::size_t s, const PauliString& a,
                         const PauliString& b) -> bool {
    for (int v : vertex_list(cover.sets[s].m)) {
      Axis la = detail::axis_of_letter(a.letter(static_cast<std::size_t>(v)));
      Axis lb = detail::axis_of_letter(b.letter(static_cast<std::size_t>(v)));
      if ((st.domain >> v) & 1) {
        bool same_src = st.fg[static_cast<std::size_t>(v)] == static_cast<int>(la);
        bool same_dst = st.fgp[static_cast<std::size_t>(v)] == static_cast<int>(lb);
        if (same_src != same_dst) return false;
      } else {
        st.fg[static_cast<std::size_t>(v)] = static_cast<int>(la);
        st.fgp[static_cast<std::size_t>(v)] = static_cast<int>(lb);
        st.domain |= std::uint64_t{1} << v;
      }
    }
    st.used[s] = 1;
    return true;
  };

  std::vector<FunctionPair> out;
  std::vector<State> stack{std::move(init)};
  while (!stack.empty()) {
    State st = std::move(stack.back());
    stack.pop_back();

    // Deterministic unique-extension loop.
    bool dead = false;
    for (;;) {
      std::size_t pick = nsets;
      for (std::size_t s = 0; s < nsets; ++s)
        if (!st.used[s] && (cover.sets[s].mls_type == MlsType::TypeI ||
                            (cover.sets[s].m & st.domain) != 0)) {
          pick = s;
          break;
        }
      if (pick == nsets) break;
      if (cover.sets[pick].mls_type == MlsType::TypeI) {
        if (!extend(st, pick, eg[pick][0], egp[pick][0])) {
          dead = true;
          break;
        }
      } else {
        const std::uint64_t shared = cover.sets[pick].m & st.domain;
        const auto j = static_cast<std::size_t>(std::countr_zero(shared));
        const PauliString* a = nullptr;
        const PauliString* b = nullptr;
        for (const PauliString& e : eg[pick])
          if (static_cast<int>(detail::axis_of_letter(e.letter(j))) == st.fg[j]) a = &e;
        for (const PauliString& e : egp[pick])
          if (static_cast<int>(detail::axis_of_letter(e.letter(j))) == st.fgp[j]) b = &e;
        if (!a || !b)
          throw std::logic_error("enumerate_function_pairs: missing anchored element");
        if (!extend(st, pick, *a, *b)) {
          dead = true;
          break;
        }
      }
    }
    if (dead) continue;

    std::size_t rest = nsets;
    for (std::size_t s = 0; s < nsets; ++s)
      if (!st.used[s]) {
        rest = s;
        break;
      }
    if (rest == nsets) {
      const std::uint64_t full =
          n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
      if (st.domain != full)
        throw std::logic_error("enumerate_function_pairs: cover misses a vertex");
      FunctionPair fp;
      fp.f_g.reserve(n);
      fp.f_gp.reserve(n);
      for (std::size_t v = 0; v < n; ++v) {
        fp.f_g.push_back(static_cast<Axis>(st.fg[v]));
        fp.f_gp.push_back(static_cast<Axis>(st.fgp[v]));
      }
      out.push_back(std::move(fp));
      continue;
    }
    // All remaining sets are Type II and disjoint from the domain: branch
    // over the three possible images of the first source element. Pushed in
    // reverse so the stack pops branches in ascending order.
    for (std::size_t choice = 3; choice-- > 0;) {
      State nxt = st;
      if (extend(nxt, rest, eg[rest][0], egp[rest][choice]))
        stack.push_back(std::move(nxt));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Stage 2: block reduction for one letter function. Conjugates both standard
// generator sets so the chosen letters become Z everywhere, brings the first
// to its canonical block form (recording the qubit relabeling), regenerates
// the second over the SAME X block, clears diagonals and signs on both, and
// finally turns the tails into graph vertices with Hadamards. Returns
// nothing when the X row spaces differ or the off-diagonal blocks disagree;
// such a branch cannot witness an equivalence.
inline std::optional<ReducedPair> reduce_to_hat(const Graph& g, const Graph& gp,
                                                const FunctionPair& fp) {
  const std::size_t n = g.n;
  if (fp.f_g.size() != n || fp.f_gp.size() != n)
    throw std::invalid_argument("reduce_to_hat: function pair not total");

  CheckMatrix s = standard_generators(g);
  CheckMatrix sp = standard_generators(gp);
  LocalOpChain vg, vgp;
  for (std::size_t i = 0; i < n; ++i) {
    vg.push_back(LocalFactor::transition(static_cast<int>(i), fp.f_g[i], Axis::Z));
    vgp.push_back(LocalFactor::transition(static_cast<int>(i), fp.f_gp[i], Axis::Z));
  }
  s.conjugate_all(vg);
  sp.conjugate_all(vgp);

  NormalForm nf = normal_form(s);
  const std::size_t k = nf.k;
  sp.permute_qubits(nf.qubit_perm);
  std::optional<CheckMatrix> matched = match_x_part(nf.c.xblock(), k, sp);
  if (!matched) return std::nullopt;

  auto [w_c, w_chain] = strong_normal_form(nf.c, k);
  auto [wp_c, wp_chain] = strong_normal_form(*matched, k);
  Graph ghat = hadamard_tail(w_c, k);
  Graph gphat = hadamard_tail(wp_c, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = k; j < n; ++j)
      if (ghat.edge(i, j) != gphat.edge(i, j)) return std::nullopt;

  std::vector<std::size_t> inv(n);
  for (std::size_t j = 0; j < n; ++j) inv[nf.qubit_perm[j]] = j;
  auto to_orig = [&inv](const LocalOpChain& hat_chain) {
    LocalOpChain out;
    out.reserve(hat_chain.size());
    for (LocalFactor f : hat_chain) {
      f.qubit = static_cast<int>(inv[static_cast<std::size_t>(f.qubit)]);
      out.push_back(f);
    }
    return out;
  };
  auto append_nontrivial = [](LocalOpChain& dst, const LocalOpChain& src) {
    for (const LocalFactor& f : src)
      if (!f.is_identity()) dst.push_back(f);
  };

  ReducedPair rp;
  rp.g_hat = std::move(ghat);
  rp.gp_hat = std::move(gphat);
  rp.k = k;
  rp.qubit_perm = nf.qubit_perm;
  LocalOpChain htail;
  for (std::size_t q = k; q < n; ++q)
    htail.push_back(LocalFactor::transition(static_cast<int>(q), Axis::X, Axis::Z));
  append_nontrivial(rp.chain_g, vg);
  append_nontrivial(rp.chain_g, to_orig(w_chain));
  append_nontrivial(rp.chain_g, to_orig(htail));
  append_nontrivial(rp.chain_gp, vgp);
  append_nontrivial(rp.chain_gp, to_orig(wp_chain));
  append_nontrivial(rp.chain_gp, to_orig(htail));
  return rp;
}

// ---------------------------------------------------------------------------
// Stage 3: the exponent system. One variable per class of tail vertices with
// identical neighborhoods (twins contribute identically to every row, so one
// representative suffices). Row e (a head subset, 2 <= |e| <= level cap)
// reads sum over classes whose neighborhood contains e of 2^(|e|-1) alpha,
// congruent mod 2 to the rhs; the rhs is 1 exactly for pairs e lying in one
// hat graph but not the other, and those pair rows are always included.

inline std::vector<std::vector<std::size_t>> tail_twin_classes(const ReducedPair& rp) {
  const std::size_t n = rp.g_hat.n;
  std::uint64_t scope = 0;
  for (std::size_t i = rp.k; i < n; ++i) scope |= std::uint64_t{1} << i;
  return twin_classes(rp.g_hat, scope);
}

// Maximal tail-class degree Delta. A vertex of degree d constrains its
// exponent through coefficients up to 2^(d-1), so denominators beyond
// 2^(Delta-1) can never be forced: the hierarchy is complete at public
// level max(1, Delta - 1).
inline int max_tail_degree(const ReducedPair& rp) {
  int delta = 1;
  for (const auto& cls : tail_twin_classes(rp))
    delta = std::max(delta, std::popcount(rp.g_hat.neighborhood(cls.front())));
  return delta;
}

inline int complete_level(const ReducedPair& rp) {
  return std::max(1, max_tail_degree(rp) - 1);
}

// The system's modulus_exponent is set to Delta, the largest row size; a
// copy may be reinterpreted at any other exponent without losing rows.
inline ModSystem build_system(const ReducedPair& rp) {
  const std::size_t k = rp.k;
  const auto classes = tail_twin_classes(rp);

  ModSystem s;
  s.num_vars = classes.size();
  s.modulus_exponent = max_tail_degree(rp);

  std::map<std::uint64_t, std::vector<std::size_t>> vars_by_edge;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const std::uint64_t delta = rp.g_hat.neighborhood(classes[c].front());
    if (delta >> k)
      throw std::logic_error("build_system: tail vertex with a tail neighbor");
    if (std::popcount(delta) > 24)
      throw std::invalid_argument("build_system: tail degree too large");
    for (std::uint64_t e = delta; e != 0; e = (e - 1) & delta)
      if (std::popcount(e) >= 2) vars_by_edge[e].push_back(c);
  }
  for (std::size_t u = 0; u < k; ++u)
    for (std::size_t v = u + 1; v < k; ++v)
      if (rp.g_hat.edge(u, v) != rp.gp_hat.edge(u, v)) {
        const std::uint64_t e = (std::uint64_t{1} << u) | (std::uint64_t{1} << v);
        if (!vars_by_edge.count(e)) {
          std::vector<std::size_t> vars;
          for (std::size_t c = 0; c < classes.size(); ++c)
            if ((e & ~rp.g_hat.neighborhood(classes[c].front())) == 0)
              vars.push_back(c);
          vars_by_edge.emplace(e, std::move(vars));
        }
      }

  for (auto& [e, vars] : vars_by_edge) {
    ModRow row;
    row.edge_mask = e;
    row.vars = vars;
    if (std::popcount(e) == 2) {
      const auto u = static_cast<std::size_t>(std::countr_zero(e));
      const auto v = static_cast<std::size_t>(63 - std::countl_zero(e));
      row.rhs = rp.g_hat.edge(u, v) != rp.gp_hat.edge(u, v) ? 1 : 0;
    }
    s.rows.push_back(std::move(row));
  }
  return s;
}

// Smallest solvable public level r in 1..min(r_max, complete level), with a
// solution whose entries are multiples of 1/2^r. Solvability is monotone in
// r, and levels above max(1, modulus_exponent - 1) add nothing.
inline std::optional<std::pair<int, DyadicVector>> solve_hierarchy(const ModSystem& s,
                                                                   int r_max) {
  if (r_max < 1) throw std::invalid_argument("solve_hierarchy: r_max must be >= 1");
  const int hi = std::min(r_max, std::max(1, s.modulus_exponent - 1));
  for (int r = 1; r <= hi; ++r) {
    ModSystem sr = s;
    sr.modulus_exponent = r + 1;
    if (std::optional<DyadicVector> alpha = solve_mod_pow2(sr))
      return std::make_pair(r, std::move(*alpha));
  }
  return std::nullopt;
}

namespace detail {

// Expand per-class solution values to a full hat-indexed alpha vector: the
// class representative carries the value, other twins 0, and each head
// exponent cancels the singleton weights its tail neighbors produce.
inline DyadicVector assemble_alpha(const ReducedPair& rp, const DyadicVector& vars) {
  const std::size_t n = rp.g_hat.n;
  const std::size_t k = rp.k;
  const auto classes = tail_twin_classes(rp);
  if (vars.size() != classes.size())
    throw std::invalid_argument("assemble_alpha: variable count mismatch");
  DyadicVector alpha(n);
  for (std::size_t c = 0; c < classes.size(); ++c) alpha[classes[c].front()] = vars[c];
  for (std::size_t j = 0; j < k; ++j) {
    Dyadic sum;
    for (std::size_t i = k; i < n; ++i)
      if (rp.g_hat.edge(j, i)) sum = sum + alpha[i];
    alpha[j] = -sum;
  }
  return alpha;
}

inline Certificate make_certificate(const Graph& g, const Graph& gp,
                                    const ReducedPair& rp, int r,
                                    const DyadicVector& vars) {
  const std::size_t n = rp.g_hat.n;
  const std::size_t k = rp.k;
  Certificate cert;
  cert.reduced = rp;
  cert.alpha = assemble_alpha(rp, vars);
  cert.r = r;

  std::vector<std::size_t> inv(n);
  for (std::size_t j = 0; j < n; ++j) inv[rp.qubit_perm[j]] = j;
  cert.composed = rp.chain_g;
  for (std::size_t i = k; i < n; ++i)
    if (!cert.alpha[i].is_zero())
      cert.composed.push_back(
          LocalFactor::pow_x(static_cast<int>(inv[i]), cert.alpha[i]));
  for (std::size_t i = 0; i < k; ++i)
    if (!cert.alpha[i].is_zero())
      cert.composed.push_back(
          LocalFactor::pow_z(static_cast<int>(inv[i]), cert.alpha[i]));
  for (const LocalFactor& f : chain_inverse(rp.chain_gp))
    if (!f.is_identity()) cert.composed.push_back(f);

  if (!verify_certificate_hyper(rp.g_hat, rp.gp_hat, k, cert.alpha))
    throw std::logic_error("certificate failed the symbolic hypergraph check");
  if (n <= 12 && !verify_chain_dense(g, gp, cert.composed, 1e-9))
    throw std::logic_error("certificate failed the statevector check");
  return cert;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Drivers.

inline Verdict check_lu(const Graph& g, const Graph& gp,
                        std::optional<int> r_max = std::nullopt) {
  if (g.n != gp.n)
    throw std::invalid_argument("check_lu: vertex counts differ");
  if (r_max && *r_max < 1)
    throw std::invalid_argument("check_lu: r_max must be >= 1");

  Verdict v;
  const MlsCover cover = mls_cover(g);
  if (std::optional<Rejection> rej = screen(g, gp, cover)) {
    v.kind = VerdictKind::NotEquivalent;
    v.stage = rej->stage;
    v.detail = rej->detail;
    return v;
  }

  const std::vector<FunctionPair> pairs = enumerate_function_pairs(g, gp, cover);
  if (pairs.empty()) {
    v.kind = VerdictKind::NotEquivalent;
    v.stage = RejectStage::FunctionPairs;
    v.detail = "every letter-extension branch hit a conflict";
    return v;
  }

  struct Branch {
    ReducedPair rp;
    ModSystem system;
    int complete = 1;
  };
  std::vector<Branch> branches;
  for (const FunctionPair& fp : pairs)
    if (std::optional<ReducedPair> rp = reduce_to_hat(g, gp, fp)) {
      Branch b;
      b.system = build_system(*rp);
      b.complete = std::max(1, b.system.modulus_exponent - 1);
      b.rp = std::move(*rp);
      branches.push_back(std::move(b));
    }
  if (branches.empty()) {
    v.kind = VerdictKind::NotEquivalent;
    v.stage = RejectStage::Reduction;
    v.detail = "no letter function admits the block reduction";
    return v;
  }

  int complete_max = 1;
  for (const Branch& b : branches) complete_max = std::max(complete_max, b.complete);
  const int cap = r_max ? std::min(*r_max, complete_max) : complete_max;

  // Level-major search keeps the reported r minimal over all branches.
  for (int r = 1; r <= cap; ++r)
    for (const Branch& b : branches) {
      if (r > b.complete) continue;
      ModSystem sr = b.system;
      sr.modulus_exponent = r + 1;
      if (std::optional<DyadicVector> sol = solve_mod_pow2(sr)) {
        v.kind = VerdictKind::Equivalent;
        v.certificate = detail::make_certificate(g, gp, b.rp, r, *sol);
        return v;
      }
    }

  if (cap < complete_max) {
    v.kind = VerdictKind::NotEquivalentUpTo;
    v.r_cap = cap;
    v.detail = "no solution at any level up to the cap";
    return v;
  }
  v.kind = VerdictKind::NotEquivalent;
  v.stage = RejectStage::System;
  v.detail = "the exponent system is unsolvable at every level";
  return v;
}

inline Verdict check_lc(const Graph& g, const Graph& gp) { return check_lu(g, gp, 1); }

// ---------------------------------------------------------------------------
// JSON serialization.

inline nlohmann::json chain_json(const LocalOpChain& c) {
  nlohmann::json arr = nlohmann::json::array();
  for (const LocalFactor& f : c) arr.push_back(f.to_string());
  return arr;
}

inline nlohmann::json certificate_json(const Certificate& cert) {
  nlohmann::json perm = nlohmann::json::array();
  for (std::size_t p : cert.reduced.qubit_perm) perm.push_back(p + 1);
  nlohmann::json alpha = nlohmann::json::array();
  for (const Dyadic& a : cert.alpha) alpha.push_back(a.to_string());
  return {{"k", cert.reduced.k},
          {"r", cert.r},
          {"qubit_perm", perm},
          {"g_hat", to_graph6(cert.reduced.g_hat)},
          {"gp_hat", to_graph6(cert.reduced.gp_hat)},
          {"alpha", alpha},
          {"chain_g", chain_json(cert.reduced.chain_g)},
          {"chain_gp", chain_json(cert.reduced.chain_gp)},
          {"composed", chain_json(cert.composed)}};
}

inline nlohmann::json verdict_json(const Verdict& v) {
  switch (v.kind) {
    case VerdictKind::Equivalent:
      return {{"verdict", "equivalent"},
              {"r", v.certificate->r},
              {"certificate", certificate_json(*v.certificate)}};
    case VerdictKind::NotEquivalent:
      return {{"verdict", "not_equivalent"},
              {"stage", reject_stage_name(*v.stage)},
              {"detail", v.detail}};
    case VerdictKind::NotEquivalentUpTo:
      return {{"verdict", "not_equivalent_up_to"}, {"r", v.r_cap}};
  }
  throw std::logic_error("unreachable");
}

}  // namespace stab_lu
