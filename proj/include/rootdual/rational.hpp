#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace rootdual {

using Int = std::int64_t;

// Exact rational with normalized sign and reduced terms. Magnitudes in this
// library stay tiny (denominators bounded by 2 * exponent(Z) * |Gamma|), so
// int64 components are ample; overflow() guards the few places that could grow.
struct Rat {
  Int num = 0;
  Int den = 1;

  Rat() = default;
  Rat(Int n) : num(n), den(1) {}
  Rat(Int n, Int d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw std::domain_error("Rat: zero denominator");
    if (den < 0) { num = -num; den = -den; }
    Int g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
  }

  bool is_zero() const { return num == 0; }
  bool is_integer() const { return den == 1; }

  friend Rat operator+(const Rat& a, const Rat& b) {
    return Rat(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    return Rat(a.num * b.den - b.num * a.den, a.den * b.den);
  }
  friend Rat operator-(const Rat& a) { Rat r; r.num = -a.num; r.den = a.den; return r; }
  friend Rat operator*(const Rat& a, const Rat& b) {
    return Rat(a.num * b.num, a.den * b.den);
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.num == 0) throw std::domain_error("Rat: division by zero");
    return Rat(a.num * b.den, a.den * b.num);
  }
  Rat& operator+=(const Rat& o) { *this = *this + o; return *this; }
  Rat& operator-=(const Rat& o) { *this = *this - o; return *this; }
  Rat& operator*=(const Rat& o) { *this = *this * o; return *this; }

  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) {
    return a.num * b.den < b.num * a.den;
  }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }
  friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }
};

// Element of Q/Z, stored as the representative in [0,1). All root-of-unity
// scalars in the library live here: exponent e stands for exp(2*pi*i*e).
struct QmodZ {
  Rat rep;  // 0 <= rep < 1

  QmodZ() = default;
  QmodZ(const Rat& r) : rep(r) { reduce(); }
  QmodZ(Int n, Int d) : rep(n, d) { reduce(); }

  void reduce() {
    Int q = rep.num / rep.den;
    if (rep.num % rep.den != 0 && rep.num < 0) --q;
    rep = rep - Rat(q);
  }

  bool is_zero() const { return rep.is_zero(); }
  Int order() const { return rep.is_zero() ? 1 : rep.den; }

  friend QmodZ operator+(const QmodZ& a, const QmodZ& b) { return QmodZ(a.rep + b.rep); }
  friend QmodZ operator-(const QmodZ& a, const QmodZ& b) { return QmodZ(a.rep - b.rep); }
  friend QmodZ operator-(const QmodZ& a) { return QmodZ(-a.rep); }
  friend QmodZ operator*(Int k, const QmodZ& a) { return QmodZ(Rat(k) * a.rep); }
  QmodZ& operator+=(const QmodZ& o) { *this = *this + o; return *this; }
  QmodZ& operator-=(const QmodZ& o) { *this = *this - o; return *this; }

  friend bool operator==(const QmodZ& a, const QmodZ& b) { return a.rep == b.rep; }
  friend bool operator!=(const QmodZ& a, const QmodZ& b) { return !(a == b); }
  friend bool operator<(const QmodZ& a, const QmodZ& b) { return a.rep < b.rep; }

  // True when the value lies in (1/2)Z/Z, i.e. the scalar is +-1.
  bool is_sign() const { return rep.den == 1 || rep.den == 2; }

  std::string str() const { return rep.str(); }
};

inline QmodZ half() { return QmodZ(1, 2); }

}  // namespace rootdual
