#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace stab_lu {

// Row-major bit-packed matrix over F2. Bit j of word w in a row holds the
// entry of column 64*w + j. Degenerate shapes (0 rows and/or 0 columns) are
// valid and behave as empty matrices.
class BitMatrix {
public:
  BitMatrix() = default;

  BitMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), words_per_row_((cols + 63) / 64),
        data_(rows * words_per_row_, 0) {}

  static BitMatrix identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
  }

  // Rows given as strings of '0'/'1', e.g. {"101", "011"}. All rows must have
  // equal length.
  static BitMatrix from_strings(const std::vector<std::string>& rows) {
    std::size_t cols = rows.empty() ? 0 : rows.front().size();
    BitMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != cols)
        throw std::invalid_argument("BitMatrix::from_strings: ragged rows");
      for (std::size_t c = 0; c < cols; ++c) {
        if (rows[r][c] != '0' && rows[r][c] != '1')
          throw std::invalid_argument("BitMatrix::from_strings: bad digit");
        m.set(r, c, rows[r][c] == '1');
      }
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t words_per_row() const { return words_per_row_; }

  bool get(std::size_t r, std::size_t c) const {
    assert(r < rows_ && c < cols_);
    return (data_[r * words_per_row_ + c / 64] >> (c % 64)) & 1u;
  }

  void set(std::size_t r, std::size_t c, bool v) {
    assert(r < rows_ && c < cols_);
    std::uint64_t& w = data_[r * words_per_row_ + c / 64];
    if (v)
      w |= std::uint64_t{1} << (c % 64);
    else
      w &= ~(std::uint64_t{1} << (c % 64));
  }

  std::uint64_t word(std::size_t r, std::size_t w) const {
    assert(r < rows_ && w < words_per_row_);
    return data_[r * words_per_row_ + w];
  }

  // Low word of a row; convenient when cols <= 64.
  std::uint64_t row_mask(std::size_t r) const {
    assert(cols_ <= 64);
    return words_per_row_ == 0 ? 0 : data_[r * words_per_row_];
  }

  void set_row_mask(std::size_t r, std::uint64_t mask) {
    assert(cols_ <= 64 && r < rows_);
    if (words_per_row_ > 0) data_[r * words_per_row_] = mask;
  }

  void xor_row_into(std::size_t dst, std::size_t src) {
    assert(dst < rows_ && src < rows_);
    for (std::size_t w = 0; w < words_per_row_; ++w)
      data_[dst * words_per_row_ + w] ^= data_[src * words_per_row_ + w];
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t w = 0; w < words_per_row_; ++w)
      std::swap(data_[a * words_per_row_ + w], data_[b * words_per_row_ + w]);
  }

  bool row_is_zero(std::size_t r) const {
    for (std::size_t w = 0; w < words_per_row_; ++w)
      if (data_[r * words_per_row_ + w]) return false;
    return true;
  }

  bool operator==(const BitMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  bool operator!=(const BitMatrix& o) const { return !(*this == o); }

  std::string to_string() const {
    std::string s;
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) s += get(r, c) ? '1' : '0';
      s += '\n';
    }
    return s;
  }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t words_per_row_ = 0;
  std::vector<std::uint64_t> data_;
};

inline BitMatrix transpose(const BitMatrix& m) {
  BitMatrix t(m.cols(), m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m.get(r, c)) t.set(c, r, true);
  return t;
}

inline BitMatrix multiply(const BitMatrix& a, const BitMatrix& b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument("BitMatrix multiply: shape mismatch");
  BitMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t k = 0; k < a.cols(); ++k)
      if (a.get(r, k))
        for (std::size_t c = 0; c < b.cols(); ++c)
          if (b.get(k, c)) out.set(r, c, !out.get(r, c));
  return out;
}

// Result of reduced row echelon form. rowops records the invertible row
// operations applied: rowops * input == reduced.
struct RrefResult {
  BitMatrix reduced;
  std::vector<std::size_t> pivots;  // pivot column per pivot row, increasing
  BitMatrix rowops;
};

inline RrefResult rref(const BitMatrix& m) {
  RrefResult res{m, {}, BitMatrix::identity(m.rows())};
  std::size_t next_row = 0;
  for (std::size_t c = 0; c < m.cols() && next_row < m.rows(); ++c) {
    std::size_t pivot = next_row;
    while (pivot < m.rows() && !res.reduced.get(pivot, c)) ++pivot;
    if (pivot == m.rows()) continue;
    res.reduced.swap_rows(next_row, pivot);
    res.rowops.swap_rows(next_row, pivot);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r != next_row && res.reduced.get(r, c)) {
        res.reduced.xor_row_into(r, next_row);
        res.rowops.xor_row_into(r, next_row);
      }
    }
    res.pivots.push_back(c);
    ++next_row;
  }
  return res;
}

inline std::size_t rank(const BitMatrix& m) { return rref(m).pivots.size(); }

// Solution of a*x = b over F2. kernel rows form a basis of the nullspace of a;
// the full solution set is particular + span(kernel rows).
struct F2Solution {
  std::vector<std::uint8_t> particular;
  BitMatrix kernel;
};

inline std::optional<F2Solution> solve_f2(const BitMatrix& a,
                                          const std::vector<std::uint8_t>& b) {
  if (b.size() != a.rows())
    throw std::invalid_argument("solve_f2: rhs length mismatch");
  RrefResult rr = rref(a);
  // Apply the same row operations to b.
  std::vector<std::uint8_t> rb(a.rows(), 0);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    std::uint8_t v = 0;
    for (std::size_t k = 0; k < a.rows(); ++k)
      if (rr.rowops.get(r, k)) v ^= b[k];
    rb[r] = v;
  }
  // Zero rows of the reduced matrix must have zero rhs.
  for (std::size_t r = rr.pivots.size(); r < a.rows(); ++r)
    if (rb[r]) return std::nullopt;

  F2Solution sol;
  sol.particular.assign(a.cols(), 0);
  for (std::size_t i = 0; i < rr.pivots.size(); ++i)
    sol.particular[rr.pivots[i]] = rb[i];

  std::vector<std::uint8_t> is_pivot(a.cols(), 0);
  for (std::size_t p : rr.pivots) is_pivot[p] = 1;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < a.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);

  sol.kernel = BitMatrix(free_cols.size(), a.cols());
  for (std::size_t f = 0; f < free_cols.size(); ++f) {
    sol.kernel.set(f, free_cols[f], true);
    for (std::size_t i = 0; i < rr.pivots.size(); ++i)
      if (rr.reduced.get(i, free_cols[f])) sol.kernel.set(f, rr.pivots[i], true);
  }
  return sol;
}

// Basis of the nullspace of m, as rows of a BitMatrix.
inline BitMatrix kernel_basis(const BitMatrix& m) {
  return solve_f2(m, std::vector<std::uint8_t>(m.rows(), 0))->kernel;
}

inline std::vector<std::uint8_t> matvec(const BitMatrix& a,
                                        const std::vector<std::uint8_t>& x) {
  if (x.size() != a.cols())
    throw std::invalid_argument("matvec: length mismatch");
  std::vector<std::uint8_t> out(a.rows(), 0);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    std::uint8_t v = 0;
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (a.get(r, c)) v ^= x[c];
    out[r] = v;
  }
  return out;
}

}  // namespace stab_lu
