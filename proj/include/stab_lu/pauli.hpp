#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "stab_lu/bits.hpp"
#include "stab_lu/dyadic.hpp"

namespace stab_lu {

// Thrown when a conjugation is requested for a non-Clifford factor (rotation
// exponent not a multiple of 1/2). Distinct from malformed-input errors.
struct NonCliffordError : std::domain_error {
  using std::domain_error::domain_error;
};

enum class Axis : std::uint8_t { X = 0, Y = 1, Z = 2 };

inline char axis_char(Axis a) { return a == Axis::X ? 'X' : (a == Axis::Y ? 'Y' : 'Z'); }

// An n-qubit Pauli operator i^phase_exp * prod_j X^x_j Z^z_j with qubit j
// stored in bit j of the masks (qubit 0 is the leftmost letter in text form).
// A site with x = z = 1 is X*Z = -i*Y, so the letter Y carries a +i folded
// into phase_exp. Phases are always exact integer powers of i.
struct PauliString {
  std::size_t n = 0;
  std::uint64_t xbits = 0;
  std::uint64_t zbits = 0;
  int phase_exp = 0;  // mod 4

  PauliString() = default;
  PauliString(std::size_t n_, std::uint64_t x, std::uint64_t z, int phase)
      : n(n_), xbits(x), zbits(z), phase_exp(((phase % 4) + 4) % 4) {
    if (n > 64) throw std::invalid_argument("PauliString: at most 64 qubits");
  }

  static PauliString identity(std::size_t n) { return PauliString(n, 0, 0, 0); }

  // Letter at site j as one of 'I', 'X', 'Y', 'Z'.
  char letter(std::size_t j) const {
    bool x = (xbits >> j) & 1, z = (zbits >> j) & 1;
    return x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
  }

  std::uint64_t support() const { return xbits | zbits; }

  bool operator==(const PauliString& o) const {
    return n == o.n && xbits == o.xbits && zbits == o.zbits &&
           phase_exp == o.phase_exp;
  }
  bool operator!=(const PauliString& o) const { return !(*this == o); }

  // Sign prefix of the literal-letter form: i^(phase_exp - #Y) since each Y
  // site contributes X*Z = -i*Y.
  int literal_phase_exp() const {
    int c = std::popcount(xbits & zbits);
    return ((phase_exp - c) % 4 + 4) % 4;
  }

  std::string to_text() const {
    static const char* signs[4] = {"+", "+i", "-", "-i"};
    std::string s = signs[literal_phase_exp()];
    for (std::size_t j = 0; j < n; ++j) s += letter(j);
    return s;
  }

  static PauliString parse(const std::string& text) {
    std::size_t pos = 0;
    int phase = 0;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      phase = text[pos] == '-' ? 2 : 0;
      ++pos;
    }
    if (pos < text.size() && text[pos] == 'i') {
      phase += 1;
      ++pos;
    }
    PauliString p(text.size() - pos, 0, 0, 0);
    for (std::size_t j = 0; pos < text.size(); ++pos, ++j) {
      switch (text[pos]) {
        case 'I': break;
        case 'X': p.xbits |= std::uint64_t{1} << j; break;
        case 'Z': p.zbits |= std::uint64_t{1} << j; break;
        case 'Y':
          p.xbits |= std::uint64_t{1} << j;
          p.zbits |= std::uint64_t{1} << j;
          phase += 1;  // Y = i * X * Z
          break;
        default:
          throw std::invalid_argument("PauliString::parse: bad letter");
      }
    }
    p.phase_exp = ((phase % 4) + 4) % 4;
    return p;
  }
};

// Product a * b with exact phase: moving Z^z past X^x' costs (-1)^(z . x').
inline PauliString multiply(const PauliString& a, const PauliString& b) {
  if (a.n != b.n) throw std::invalid_argument("PauliString multiply: size mismatch");
  return PauliString(a.n, a.xbits ^ b.xbits, a.zbits ^ b.zbits,
                     a.phase_exp + b.phase_exp +
                         2 * std::popcount(a.zbits & b.xbits));
}

inline bool commutes(const PauliString& a, const PauliString& b) {
  return (std::popcount(a.xbits & b.zbits) + std::popcount(a.zbits & b.xbits)) % 2 == 0;
}

// ---------------------------------------------------------------------------
// Local operator chains: ordered products of single-qubit factors.

struct LocalFactor {
  enum class Kind : std::uint8_t { Transition, PowZ, PowX };
  Kind kind = Kind::Transition;
  int qubit = 0;  // 0-based
  Axis a = Axis::X, b = Axis::X;  // for Transition C(a, b)
  bool dagger = false;            // for Transition
  Dyadic alpha;                   // for PowZ / PowX

  static LocalFactor transition(int qubit, Axis a, Axis b, bool dagger = false) {
    LocalFactor f;
    f.kind = Kind::Transition;
    f.qubit = qubit;
    f.a = a;
    f.b = b;
    f.dagger = dagger;
    return f;
  }
  static LocalFactor pow_z(int qubit, Dyadic alpha) {
    LocalFactor f;
    f.kind = Kind::PowZ;
    f.qubit = qubit;
    f.alpha = alpha;
    return f;
  }
  static LocalFactor pow_x(int qubit, Dyadic alpha) {
    LocalFactor f;
    f.kind = Kind::PowX;
    f.qubit = qubit;
    f.alpha = alpha;
    return f;
  }

  LocalFactor inverse() const {
    LocalFactor f = *this;
    if (kind == Kind::Transition)
      f.dagger = !dagger;
    else
      f.alpha = -alpha;
    return f;
  }

  bool is_identity() const {
    if (kind == Kind::Transition) return a == b;
    return alpha.is_zero();
  }

  std::string to_string() const {
    std::string s = "q" + std::to_string(qubit + 1) + ":";
    if (kind == Kind::Transition) {
      s += std::string("C(") + axis_char(a) + "," + axis_char(b) + ")";
      if (dagger) s += "'";
    } else {
      s += (kind == Kind::PowZ ? "Z^" : "X^") + alpha.to_string();
    }
    return s;
  }
};

// Factors listed in application order: the first factor acts first.
using LocalOpChain = std::vector<LocalFactor>;

inline LocalOpChain chain_inverse(const LocalOpChain& c) {
  LocalOpChain inv;
  inv.reserve(c.size());
  for (auto it = c.rbegin(); it != c.rend(); ++it) inv.push_back(it->inverse());
  return inv;
}

inline std::string chain_to_string(const LocalOpChain& c) {
  std::string s;
  for (const auto& f : c) {
    if (!s.empty()) s += " ";
    s += f.to_string();
  }
  return s.empty() ? "(id)" : s;
}

// ---------------------------------------------------------------------------
// Clifford conjugation g P g^dag for single-qubit factors.

// Image of a single-qubit X or Z under conjugation: i^phase * X^x Z^z.
struct PauliImage {
  std::uint8_t x, z;
  int phase;
};

// Images (g X g^dag, g Z g^dag). The transition-matrix table swaps its two
// axes and negates the third, identically for C and C^dag.
inline std::pair<PauliImage, PauliImage> conjugation_images(const LocalFactor& f) {
  auto axis_image = [](Axis d, Axis a, Axis b) -> PauliImage {
    static const PauliImage plain[3] = {{1, 0, 0}, {1, 1, 1}, {0, 1, 0}};  // X, Y=iXZ, Z
    if (a == b) return plain[static_cast<int>(d)];
    Axis out = d;
    int sign = 0;
    if (d == a)
      out = b;
    else if (d == b)
      out = a;
    else
      sign = 2;
    PauliImage img = plain[static_cast<int>(out)];
    img.phase = (img.phase + sign) % 4;
    return img;
  };

  switch (f.kind) {
    case LocalFactor::Kind::Transition:
      return {axis_image(Axis::X, f.a, f.b), axis_image(Axis::Z, f.a, f.b)};
    case LocalFactor::Kind::PowZ: {
      Dyadic a2 = f.alpha + f.alpha;  // Clifford iff alpha is a half-integer
      if (a2.den_exp != 0)
        throw NonCliffordError("conjugation by Z^" + f.alpha.to_string());
      // Z^(1/2) = S: X -> Y, Y -> -X; whole-integer powers flip signs only.
      Dyadic a = f.alpha;
      if (a == Dyadic(0, 0)) return {{1, 0, 0}, {0, 1, 0}};
      if (a == Dyadic(1, 1)) return {{1, 1, 1}, {0, 1, 0}};   // S: X -> Y
      if (a == Dyadic(1, 0)) return {{1, 0, 2}, {0, 1, 0}};   // Z: X -> -X
      return {{1, 1, 3}, {0, 1, 0}};                          // S^dag: X -> -Y
    }
    case LocalFactor::Kind::PowX: {
      Dyadic a2 = f.alpha + f.alpha;
      if (a2.den_exp != 0)
        throw NonCliffordError("conjugation by X^" + f.alpha.to_string());
      Dyadic a = f.alpha;
      if (a == Dyadic(0, 0)) return {{1, 0, 0}, {0, 1, 0}};
      if (a == Dyadic(1, 1)) return {{1, 0, 0}, {1, 1, 3}};   // sqrt(X): Z -> -Y
      if (a == Dyadic(1, 0)) return {{1, 0, 0}, {0, 1, 2}};   // X: Z -> -Z
      return {{1, 0, 0}, {1, 1, 1}};                          // sqrt(X)^dag: Z -> Y
    }
  }
  throw std::logic_error("unreachable");
}

// Conjugate p by factor f acting on f.qubit: p -> f p f^dag.
inline PauliString conjugate_single(const PauliString& p, const LocalFactor& f) {
  if (f.qubit < 0 || static_cast<std::size_t>(f.qubit) >= p.n)
    throw std::invalid_argument("conjugate_single: qubit out of range");
  auto [ix, iz] = conjugation_images(f);
  const std::uint64_t bit = std::uint64_t{1} << f.qubit;
  bool x = p.xbits & bit, z = p.zbits & bit;
  if (!x && !z) return p;

  std::uint8_t nx = 0, nz = 0;
  int phase = p.phase_exp;
  if (x && !z) {
    nx = ix.x; nz = ix.z; phase += ix.phase;
  } else if (!x && z) {
    nx = iz.x; nz = iz.z; phase += iz.phase;
  } else {
    // site operator X*Z maps to (g X g^dag)(g Z g^dag)
    nx = ix.x ^ iz.x;
    nz = ix.z ^ iz.z;
    phase += ix.phase + iz.phase + 2 * (ix.z & iz.x);
  }
  PauliString out = p;
  out.xbits = (p.xbits & ~bit) | (nx ? bit : 0);
  out.zbits = (p.zbits & ~bit) | (nz ? bit : 0);
  out.phase_exp = ((phase % 4) + 4) % 4;
  return out;
}

inline PauliString conjugate_chain(PauliString p, const LocalOpChain& chain) {
  // The chain U = f_k ... f_1 (f_1 first) conjugates as U p U^dag, which
  // applies f_1 innermost: iterate in order.
  for (const auto& f : chain) p = conjugate_single(p, f);
  return p;
}

// ---------------------------------------------------------------------------
// Check matrices: one generator per row, exact phases.

struct CheckMatrix {
  std::size_t n = 0;
  std::vector<PauliString> rows;

  CheckMatrix() = default;
  explicit CheckMatrix(std::size_t n_) : n(n_) {}

  BitMatrix xblock() const {
    BitMatrix m(rows.size(), n);
    for (std::size_t r = 0; r < rows.size(); ++r) m.set_row_mask(r, rows[r].xbits);
    return m;
  }
  BitMatrix zblock() const {
    BitMatrix m(rows.size(), n);
    for (std::size_t r = 0; r < rows.size(); ++r) m.set_row_mask(r, rows[r].zbits);
    return m;
  }

  // rows[dst] *= rows[src], with exact phase bookkeeping.
  void row_multiply(std::size_t dst, std::size_t src) {
    rows[dst] = multiply(rows[dst], rows[src]);
  }

  void conjugate_all(const LocalFactor& f) {
    for (auto& r : rows) r = conjugate_single(r, f);
  }
  void conjugate_all(const LocalOpChain& chain) {
    for (const auto& f : chain) conjugate_all(f);
  }

  // Relabel qubits: new position perm[j] holds old qubit j.
  void permute_qubits(const std::vector<std::size_t>& perm) {
    for (auto& r : rows) {
      std::uint64_t nx = 0, nz = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if ((r.xbits >> j) & 1) nx |= std::uint64_t{1} << perm[j];
        if ((r.zbits >> j) & 1) nz |= std::uint64_t{1} << perm[j];
      }
      r.xbits = nx;
      r.zbits = nz;
    }
  }

  // Generators must commute pairwise, be independent, and have order two
  // (real phase).
  bool valid_stabilizer() const {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].n != n) return false;
      // i^phase * XZ-product squares to (-1)^(x.z) i^(2 phase) I; order two
      // (equivalently, a real +/- literal sign) needs phase + popcount(x&z)
      // even.
      if ((rows[i].phase_exp + std::popcount(rows[i].xbits & rows[i].zbits)) % 2 != 0)
        return false;

      for (std::size_t j = i + 1; j < rows.size(); ++j)
        if (!commutes(rows[i], rows[j])) return false;
    }
    BitMatrix sym(rows.size(), 2 * n);
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < n; ++c) {
        if ((rows[r].xbits >> c) & 1) sym.set(r, c, true);
        if ((rows[r].zbits >> c) & 1) sym.set(r, n + c, true);
      }
    return rank(sym) == rows.size();
  }
};

// ---------------------------------------------------------------------------
// Exact entries of the basis-transition matrices. For distinct axes we take
// C(A, B) = (A + B) / sqrt(2): it is Hermitian, self-inverse, symmetric in
// its arguments, conjugates A <-> B exactly and negates the third axis, and
// specializes to the Hadamard matrix for (X, Z). Entries are Gaussian
// integers over a common 1/sqrt(2) scale, except the identity cases C(A, A).
struct TransitionMatrix {
  Axis a, b;
  bool dagger = false;
  // numerator[r][c] = (re, im); entry value = (re + i*im) * scale, where
  // scale = 1/sqrt(2) if halved else 1.
  std::array<std::array<std::pair<int, int>, 2>, 2> numerator;
  bool halved = true;
};

inline TransitionMatrix transition_matrix(Axis a, Axis b, bool dagger = false) {
  TransitionMatrix t;
  t.a = a;
  t.b = b;
  t.dagger = false;
  if (a == b) {
    t.numerator = {{{{{1, 0}, {0, 0}}}, {{{0, 0}, {1, 0}}}}};
    t.halved = false;
  } else if ((a == Axis::X && b == Axis::Y) || (a == Axis::Y && b == Axis::X)) {
    // (X + Y)/sqrt2 = (1/sqrt2) [[0, 1-i], [1+i, 0]]
    t.numerator = {{{{{0, 0}, {1, -1}}}, {{{1, 1}, {0, 0}}}}};
  } else if ((a == Axis::X && b == Axis::Z) || (a == Axis::Z && b == Axis::X)) {
    // (X + Z)/sqrt2: Hadamard
    t.numerator = {{{{{1, 0}, {1, 0}}}, {{{1, 0}, {-1, 0}}}}};
  } else {
    // (Y + Z)/sqrt2 = (1/sqrt2) [[1, -i], [i, -1]]
    t.numerator = {{{{{1, 0}, {0, -1}}}, {{{0, 1}, {-1, 0}}}}};
  }
  if (dagger) {
    // Hermitian and self-inverse, so the dagger is the same matrix; computed
    // anyway to keep the flag honest.
    TransitionMatrix d = t;
    d.dagger = true;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c)
        d.numerator[r][c] = {t.numerator[c][r].first, -t.numerator[c][r].second};
    return d;
  }
  return t;
}

}  // namespace stab_lu
