#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "stab_lu/bits.hpp"
#include "stab_lu/dyadic.hpp"

namespace stab_lu {

// One congruence of the rotation-exponent system. The row is indexed by a
// vertex subset e (bitmask over the head block) with |e| >= 2 and reads
//
//   sum_{i in vars} 2^(|e|-1) * alpha_hat_i  ==  2^(r-1) * rhs   (mod 2^r)
//
// where alpha_hat_i = 2^(r-1) * alpha_i ranges over [0, 2^r). A variable
// participates exactly when e is contained in its neighborhood.
struct ModRow {
  std::uint64_t edge_mask = 0;
  std::vector<std::size_t> vars;
  std::uint8_t rhs = 0;
};

struct ModSystem {
  std::size_t num_vars = 0;
  int modulus_exponent = 1;  // r
  std::vector<ModRow> rows;

  // Coefficient of variable i in row `row` as an integer (before reduction
  // mod 2^r): 2^(|e|-1) if i participates, else 0. |e| is capped at 62 bits.
  std::uint64_t coeff(std::size_t row, std::size_t i) const {
    const ModRow& rw = rows[row];
    for (std::size_t v : rw.vars)
      if (v == i) return std::uint64_t{1} << (std::popcount(rw.edge_mask) - 1);
    return 0;
  }
};

// Binary expansion of a ModSystem into an F2 system, treating the weighted
// bit contributions as carry-free: variable bit j of alpha_hat_i lands on
// output bit (|e|-1) + j, and each output bit p in [0, r) yields one F2
// equation. var_map[col] identifies F2 column `col` as bit `bit` of variable
// `var`. Rows whose F2 equations are all trivially 0 == 0 are dropped.
//
// This expansion is exact whenever every row has modulus gap r - |e| + 1 <= 1
// (in particular for every system with r <= 2, since rows have |e| >= 2) or
// at most one participating variable; with wider gaps and shared variables
// integer carries make the bit solution set non-affine, and the exact solver
// below must be used instead.
struct F2Expansion {
  BitMatrix a;
  std::vector<std::uint8_t> b;
  struct VarBit {
    std::size_t var;
    int bit;
  };
  std::vector<VarBit> var_map;
};

inline F2Expansion expand_to_f2(const ModSystem& s) {
  const int r = s.modulus_exponent;
  F2Expansion ex;
  ex.var_map.reserve(s.num_vars * r);
  for (std::size_t i = 0; i < s.num_vars; ++i)
    for (int j = 0; j < r; ++j) ex.var_map.push_back({i, j});

  std::vector<std::vector<std::uint8_t>> eq_rows;
  std::vector<std::uint8_t> eq_rhs;
  for (const ModRow& rw : s.rows) {
    const int s_minus_1 = std::popcount(rw.edge_mask) - 1;
    for (int p = 0; p < r; ++p) {
      std::vector<std::uint8_t> eq(s.num_vars * r, 0);
      const int j = p - s_minus_1;  // variable bit landing on output bit p
      bool any = false;
      if (j >= 0 && j < r) {
        for (std::size_t v : rw.vars) {
          eq[v * r + j] ^= 1;
          any = true;
        }
      }
      const std::uint8_t rhs_bit = (p == r - 1) ? rw.rhs : 0;
      if (!any && rhs_bit == 0) continue;  // trivial 0 == 0
      eq_rows.push_back(std::move(eq));
      eq_rhs.push_back(rhs_bit);
    }
  }

  ex.a = BitMatrix(eq_rows.size(), s.num_vars * r);
  for (std::size_t rr = 0; rr < eq_rows.size(); ++rr)
    for (std::size_t c = 0; c < eq_rows[rr].size(); ++c)
      if (eq_rows[rr][c]) ex.a.set(rr, c, true);
  ex.b = std::move(eq_rhs);
  return ex;
}

// Exact solver over Z_{2^r}: Gaussian elimination with pivots of minimal
// 2-adic valuation, row operations only. Since every remaining entry at the
// time a pivot is chosen has valuation >= the pivot's, each pivot row
// 2^v * x_p + (terms of valuation >= v) == d is solvable precisely when
// 2^v divides d; free variables are set to 0 and pivots back-substituted.
// Returns alpha (not alpha_hat): entries are x / 2^(r-1) in V_r.
inline std::optional<DyadicVector> solve_mod_pow2(const ModSystem& s) {
  const int r = s.modulus_exponent;
  if (r < 1 || r > 62)
    throw std::invalid_argument("solve_mod_pow2: modulus exponent out of range");
  const std::uint64_t mod_mask = (r == 62) ? ~std::uint64_t{0} >> 2
                                           : (std::uint64_t{1} << r) - 1;
  const std::size_t n = s.num_vars;
  const std::size_t m = s.rows.size();

  // Dense residue matrix with an appended rhs column.
  std::vector<std::vector<std::uint64_t>> a(m, std::vector<std::uint64_t>(n + 1, 0));
  for (std::size_t i = 0; i < m; ++i) {
    const int s_minus_1 = std::popcount(s.rows[i].edge_mask) - 1;
    const std::uint64_t c =
        s_minus_1 >= r ? 0 : (std::uint64_t{1} << s_minus_1) & mod_mask;
    for (std::size_t v : s.rows[i].vars) a[i][v] = c;
    a[i][n] = (s.rows[i].rhs && r >= 1)
                  ? (std::uint64_t{1} << (r - 1)) & mod_mask
                  : 0;
  }

  auto val2 = [&](std::uint64_t x) { return x == 0 ? r : std::countr_zero(x); };
  // Multiplicative inverse of an odd residue mod 2^r by Newton iteration.
  auto inv_odd = [&](std::uint64_t u) {
    std::uint64_t x = 1;
    for (int it = 0; it < 6; ++it) x = (x * (2 - u * x)) & mod_mask;
    return x;
  };

  std::vector<std::size_t> pivot_col;
  std::vector<int> pivot_val;
  std::vector<std::uint8_t> col_used(n, 0);
  std::size_t row_cur = 0;
  while (row_cur < m) {
    int best_v = r;
    std::size_t best_r = 0, best_c = 0;
    for (std::size_t i = row_cur; i < m; ++i)
      for (std::size_t c = 0; c < n; ++c)
        if (!col_used[c] && a[i][c] != 0 && val2(a[i][c]) < best_v) {
          best_v = val2(a[i][c]);
          best_r = i;
          best_c = c;
        }
    if (best_v == r) break;  // residual coefficients all vanish mod 2^r
    std::swap(a[row_cur], a[best_r]);
    // Scale the row so the pivot becomes exactly 2^v.
    std::uint64_t u = a[row_cur][best_c] >> best_v;
    std::uint64_t ui = inv_odd(u);
    for (auto& x : a[row_cur]) x = (x * ui) & mod_mask;
    // Eliminate below only; rows above keep valuations >= their own pivots.
    for (std::size_t i = row_cur + 1; i < m; ++i) {
      if (a[i][best_c] == 0) continue;
      std::uint64_t mult = a[i][best_c] >> best_v;  // exact: valuation >= best_v
      for (std::size_t c = 0; c <= n; ++c)
        a[i][c] = (a[i][c] - mult * a[row_cur][c]) & mod_mask;
    }
    col_used[best_c] = 1;
    pivot_col.push_back(best_c);
    pivot_val.push_back(best_v);
    ++row_cur;
  }

  // Rows below the last pivot must read 0 == 0.
  for (std::size_t i = row_cur; i < m; ++i)
    if (a[i][n] != 0) return std::nullopt;

  // Back-substitution with free variables at 0.
  std::vector<std::uint64_t> x(n, 0);
  for (std::size_t i = row_cur; i-- > 0;) {
    std::uint64_t acc = a[i][n];
    for (std::size_t c = 0; c < n; ++c)
      if (c != pivot_col[i] && a[i][c]) acc = (acc - a[i][c] * x[c]) & mod_mask;
    if (val2(acc) < pivot_val[i]) return std::nullopt;
    x[pivot_col[i]] = acc >> pivot_val[i];
  }

  DyadicVector alpha(n);
  for (std::size_t i = 0; i < n; ++i)
    alpha[i] = Dyadic(static_cast<std::int64_t>(x[i]), r - 1);
  return alpha;
}

// Exact satisfaction check of a ModSystem by a candidate alpha vector.
inline bool mod_system_satisfied(const ModSystem& s, const DyadicVector& alpha) {
  if (alpha.size() != s.num_vars) return false;
  for (const ModRow& rw : s.rows) {
    Dyadic acc = Dyadic::integer(rw.rhs ? 1 : 0);
    const int k = std::popcount(rw.edge_mask) - 1;
    for (std::size_t v : rw.vars) acc = acc - alpha[v].times_pow_neg2(k);
    // acc must be 0 mod 2: times_pow_neg2 uses (-2)^(|e|-1); the sign is a
    // unit and does not affect membership, but we keep the literal weights.
    if (!acc.is_zero()) return false;
  }
  return true;
}

}  // namespace stab_lu
