#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "stab_lu/bits.hpp"
#include "stab_lu/graph.hpp"
#include "stab_lu/pauli.hpp"

namespace stab_lu {

// Block shape reached by normal_form / match_x_part, for n generators split
// into a head of size k and a tail of size n-k (after qubit permutation):
//   X block = [ I_k  Gamma ]      Z block = [ B       0     ]
//             [ 0    0     ]              [ Gamma^T I_{n-k} ]
// with B symmetric. Both facts follow from commutation and are asserted.

struct NormalForm {
  CheckMatrix c;
  std::vector<std::size_t> qubit_perm;  // old qubit -> new position
  std::size_t k = 0;
};

namespace detail {

// Gauss-Jordan on the tail Z columns of the zero-X rows: make the bottom
// right Z submatrix the identity, then clear tail Z bits from the head rows.
// Expects rows [k..n) to have zero X part; throws if the tail block is
// singular (impossible for valid stabilizers).
inline void reduce_tail(CheckMatrix& c, std::size_t k) {
  const std::size_t n = c.n;
  for (std::size_t j = 0; j < n - k; ++j) {
    const std::uint64_t bit = std::uint64_t{1} << (k + j);
    std::size_t piv = n;
    for (std::size_t r = k + j; r < n; ++r)
      if (c.rows[r].zbits & bit) {
        piv = r;
        break;
      }
    if (piv == n) throw std::logic_error("reduce_tail: singular tail block");
    std::swap(c.rows[k + j], c.rows[piv]);
    for (std::size_t r = k; r < n; ++r)
      if (r != k + j && (c.rows[r].zbits & bit)) c.row_multiply(r, k + j);
  }
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t j = 0; j < n - k; ++j)
      if (c.rows[r].zbits & (std::uint64_t{1} << (k + j))) c.row_multiply(r, k + j);
}

// Asserts the normal-form block structure listed above.
inline void check_block_shape(const CheckMatrix& c, std::size_t k) {
  const std::size_t n = c.n;
  const std::uint64_t head = (k == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << k) - 1);
  for (std::size_t r = 0; r < k; ++r) {
    if ((c.rows[r].xbits & head) != (std::uint64_t{1} << r))
      throw std::logic_error("normal form: head X block is not the identity");
    if ((c.rows[r].zbits >> k) != 0)
      throw std::logic_error("normal form: head rows carry tail Z bits");
  }
  for (std::size_t r = k; r < n; ++r) {
    if (c.rows[r].xbits != 0)
      throw std::logic_error("normal form: tail rows carry X bits");
    if ((c.rows[r].zbits >> k) != (std::uint64_t{1} << (r - k)))
      throw std::logic_error("normal form: tail Z block is not the identity");
  }
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t j = k; j < n; ++j)
      if (((c.rows[r].xbits >> j) & 1) != ((c.rows[j].zbits >> r) & 1))
        throw std::logic_error("normal form: lower left is not Gamma transposed");
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t s = 0; s < k; ++s)
      if (((c.rows[r].zbits >> s) & 1) != ((c.rows[s].zbits >> r) & 1))
        throw std::logic_error("normal form: head Z block is not symmetric");
}

}  // namespace detail

// Brings a valid stabilizer check matrix into the block shape above by row
// multiplications (phases tracked exactly) and a qubit permutation that
// moves the X-pivot columns to the front, preserving relative order.
inline NormalForm normal_form(const CheckMatrix& input) {
  if (!input.valid_stabilizer() || input.rows.size() != input.n)
    throw std::invalid_argument("normal_form: not a full valid stabilizer");
  NormalForm out;
  out.c = input;
  CheckMatrix& c = out.c;
  const std::size_t n = c.n;

  // reduced echelon on the X block with lowest-index pivots
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < n; ++col) {
    const std::uint64_t bit = std::uint64_t{1} << col;
    std::size_t piv = n;
    for (std::size_t r = row; r < n; ++r)
      if (c.rows[r].xbits & bit) {
        piv = r;
        break;
      }
    if (piv == n) continue;
    std::swap(c.rows[row], c.rows[piv]);
    for (std::size_t r = 0; r < n; ++r)
      if (r != row && (c.rows[r].xbits & bit)) c.row_multiply(r, row);
    pivots.push_back(col);
    ++row;
  }
  out.k = pivots.size();

  // stable permutation: pivot columns to the front
  out.qubit_perm.assign(n, 0);
  std::size_t next = 0;
  for (std::size_t col : pivots) out.qubit_perm[col] = next++;
  for (std::size_t col = 0; col < n; ++col)
    if (std::find(pivots.begin(), pivots.end(), col) == pivots.end())
      out.qubit_perm[col] = next++;
  c.permute_qubits(out.qubit_perm);

  detail::reduce_tail(c, out.k);
  detail::check_block_shape(c, out.k);
  return out;
}

// Clears the diagonal of the head Z block with C(Y,X) factors and resets all
// phases to +1 with Z factors on the head and X factors on the tail. Returns
// the transformed matrix and the applied chain (in application order).
// Requires a normal form whose phases are all real.
inline std::pair<CheckMatrix, LocalOpChain> strong_normal_form(const CheckMatrix& input,
                                                               std::size_t k) {
  CheckMatrix c = input;
  const std::size_t n = c.n;
  for (const auto& r : c.rows)
    if (r.literal_phase_exp() % 2 != 0)
      throw std::invalid_argument("strong_normal_form: imaginary sign present");

  LocalOpChain w;
  for (std::size_t i = 0; i < k; ++i)
    if ((c.rows[i].zbits >> i) & 1) {
      LocalFactor f = LocalFactor::transition(static_cast<int>(i), Axis::Y, Axis::X);
      c.conjugate_all(f);
      w.push_back(f);
    }
  for (const auto& r : c.rows)
    if (r.phase_exp % 2 != 0)
      throw std::logic_error("strong_normal_form: odd phase after diagonal clearing");
  for (std::size_t i = 0; i < k; ++i)
    if (c.rows[i].phase_exp == 2) {
      LocalFactor f = LocalFactor::pow_z(static_cast<int>(i), Dyadic(1, 0));
      c.conjugate_all(f);
      w.push_back(f);
    }
  for (std::size_t i = k; i < n; ++i)
    if (c.rows[i].phase_exp == 2) {
      LocalFactor f = LocalFactor::pow_x(static_cast<int>(i), Dyadic(1, 0));
      c.conjugate_all(f);
      w.push_back(f);
    }

  detail::check_block_shape(c, k);
  for (std::size_t i = 0; i < k; ++i)
    if ((c.rows[i].zbits >> i) & 1)
      throw std::logic_error("strong_normal_form: diagonal not cleared");
  for (const auto& r : c.rows)
    if (r.phase_exp != 0) throw std::logic_error("strong_normal_form: phase not cleared");
  return {std::move(c), std::move(w)};
}

// Regenerates the group of `c` with generators whose X block equals
// target_x (which must be in the [I Gamma; 0 0] shape, head size k), then
// reduces the tail as in normal_form. Returns nothing when the X row spaces
// differ, which rules out the candidate branch.
inline std::optional<CheckMatrix> match_x_part(const BitMatrix& target_x,
                                               std::size_t k, const CheckMatrix& c) {
  const std::size_t n = c.n;
  if (target_x.rows() != n || target_x.cols() != n)
    throw std::invalid_argument("match_x_part: shape mismatch");
  BitMatrix xc = c.xblock();
  if (rank(xc) != k) return std::nullopt;

  // top rows: solve y^T X_c = target row; bottom rows: left-kernel basis
  BitMatrix xct = transpose(xc);
  std::vector<std::uint64_t> comb(n);
  for (std::size_t r = 0; r < k; ++r) {
    std::vector<std::uint8_t> t(n);
    for (std::size_t j = 0; j < n; ++j) t[j] = target_x.get(r, j);
    auto sol = solve_f2(xct, t);
    if (!sol) return std::nullopt;
    std::uint64_t m = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (sol->particular[j]) m |= std::uint64_t{1} << j;
    comb[r] = m;
  }
  BitMatrix lk = kernel_basis(xct);
  if (lk.rows() != n - k) throw std::logic_error("match_x_part: kernel dimension");
  for (std::size_t r = 0; r < n - k; ++r) comb[k + r] = lk.row_mask(r);

  CheckMatrix out(n);
  out.rows.reserve(n);
  for (std::size_t r = 0; r < n; ++r) {
    PauliString p = PauliString::identity(n);
    for (std::size_t j = 0; j < n; ++j)
      if ((comb[r] >> j) & 1) p = multiply(p, c.rows[j]);
    out.rows.push_back(p);
  }
  if (out.xblock() != target_x) throw std::logic_error("match_x_part: X part mismatch");

  detail::reduce_tail(out, k);
  detail::check_block_shape(out, k);
  return out;
}

// Hadamard on the tail qubits of a strong normal form: the check matrix
// becomes [I | A] with A = [B Gamma; Gamma^T 0], i.e. a graph adjacency with
// the tail vertices pairwise disconnected.
inline Graph hadamard_tail(const CheckMatrix& input, std::size_t k) {
  detail::check_block_shape(input, k);
  CheckMatrix c = input;
  const std::size_t n = c.n;
  for (const auto& r : c.rows) {
    if (r.phase_exp != 0)
      throw std::invalid_argument("hadamard_tail: nontrivial phase");
    if ((r.xbits & r.zbits) != 0)
      throw std::invalid_argument("hadamard_tail: unexpected Y site");
  }
  for (std::size_t i = 0; i < k; ++i)
    if ((c.rows[i].zbits >> i) & 1)
      throw std::invalid_argument("hadamard_tail: head diagonal not cleared");

  for (std::size_t q = k; q < n; ++q)
    c.conjugate_all(LocalFactor::transition(static_cast<int>(q), Axis::X, Axis::Z));

  if (c.xblock() != BitMatrix::identity(n))
    throw std::logic_error("hadamard_tail: X block is not the identity");
  Graph g(n);
  for (std::size_t r = 0; r < n; ++r) {
    if (c.rows[r].phase_exp != 0) throw std::logic_error("hadamard_tail: phase appeared");
    for (std::size_t j = 0; j < n; ++j)
      if ((c.rows[r].zbits >> j) & 1) {
        if (j == r) throw std::logic_error("hadamard_tail: diagonal entry");
        if (j > r) g.set_edge(r, j, true);
      }
  }
  for (std::size_t i = k; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (g.edge(i, j)) throw std::logic_error("hadamard_tail: tail vertices adjacent");
  if (g.adj != transpose(g.adj)) throw std::logic_error("hadamard_tail: asymmetric");
  return g;
}

}  // namespace stab_lu
