#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace stab_lu {

struct Dyadic;
using DyadicVector = std::vector<Dyadic>;

// Dyadic rational num / 2^den_exp reduced modulo 2, i.e. a value in [0, 2).
// These appear as phase exponents (weights of e^{i*pi*w}) and as per-qubit
// rotation exponents, so all arithmetic must stay exact; no floating point.
// Normal form: den_exp == 0, or num odd; num always in [0, 2^(den_exp+1)).
struct Dyadic {
  std::int64_t num = 0;
  int den_exp = 0;

  Dyadic() = default;
  Dyadic(std::int64_t n, int e) : num(n), den_exp(e) { normalize(); }
  static Dyadic integer(std::int64_t n) { return Dyadic(n, 0); }

  void normalize() {
    if (den_exp < 0) {
      if (den_exp < -62) throw std::invalid_argument("Dyadic: exponent overflow");
      num <<= -den_exp;
      den_exp = 0;
    }
    while (den_exp > 0 && num % 2 == 0) {
      num /= 2;
      --den_exp;
    }
    std::int64_t mod = std::int64_t{1} << (den_exp + 1);  // 2 == mod / 2^den_exp
    num %= mod;
    if (num < 0) num += mod;
    if (num == 0) den_exp = 0;
  }

  bool is_zero() const { return num == 0; }

  // Value lies in V_r = {m / 2^(r-1)} exactly when den_exp <= r - 1.
  bool in_level(int r) const { return den_exp <= r - 1; }

  Dyadic operator+(const Dyadic& o) const {
    int e = den_exp > o.den_exp ? den_exp : o.den_exp;
    if (e > 60) throw std::invalid_argument("Dyadic: exponent overflow");
    return Dyadic((num << (e - den_exp)) + (o.num << (e - o.den_exp)), e);
  }
  Dyadic operator-() const { return Dyadic(-num, den_exp); }
  Dyadic operator-(const Dyadic& o) const { return *this + (-o); }

  // Multiply by (-2)^k for k >= 0; used for the weight a degree-|e| hyperedge
  // picks up from an X rotation: (-2)^(|e|-1) * alpha.
  Dyadic times_pow_neg2(int k) const {
    Dyadic d(num * ((k % 2) ? -1 : 1), den_exp - k);
    return d;
  }

  Dyadic times_int(std::int64_t f) const { return Dyadic(num * f, den_exp); }

  bool operator==(const Dyadic& o) const {
    return num == o.num && den_exp == o.den_exp;
  }
  bool operator!=(const Dyadic& o) const { return !(*this == o); }
  bool operator<(const Dyadic& o) const {  // ordering for containers
    int e = den_exp > o.den_exp ? den_exp : o.den_exp;
    return (num << (e - den_exp)) < (o.num << (e - o.den_exp));
  }

  // Rendered as "m" or "m/2^j" with the denominator written out: "3/2", "1/4".
  std::string to_string() const {
    if (den_exp == 0) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(std::int64_t{1} << den_exp);
  }

  static Dyadic parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Dyadic(std::stoll(s), 0);
    std::int64_t n = std::stoll(s.substr(0, slash));
    std::int64_t d = std::stoll(s.substr(slash + 1));
    if (d <= 0 || (d & (d - 1)) != 0)
      throw std::invalid_argument("Dyadic::parse: denominator must be a power of two");
    int e = 0;
    while ((std::int64_t{1} << e) < d) ++e;
    return Dyadic(n, e);
  }
};

}  // namespace stab_lu
