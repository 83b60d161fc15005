#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace idealseq {

// Exact rational over 128-bit integers. Used as the oracle arithmetic for
// integer-exponent weight ratios and dyadic expansion values; deliberately
// minimal (construction, addition, comparison, conversion).
struct Rat128 {
  __int128 num = 0;
  __int128 den = 1;  // > 0, gcd(|num|, den) == 1

  Rat128() = default;

  static Rat128 make(__int128 n, __int128 d) {
    if (d == 0) throw std::domain_error("Rat128: zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    Rat128 r;
    r.num = n;
    r.den = d;
    return r;
  }

  static Rat128 from_int(std::int64_t v) { return make(v, 1); }

  Rat128 operator+(const Rat128& o) const {
    // gcd-reduced cross addition keeps intermediates small
    __int128 g = gcd128(den, o.den);
    __int128 dl = den / g;
    __int128 n = num * (o.den / g) + o.num * dl;
    return make(n, dl * o.den);
  }

  Rat128 operator*(const Rat128& o) const { return make(num * o.num, den * o.den); }

  bool operator==(const Rat128& o) const { return num == o.num && den == o.den; }
  bool operator!=(const Rat128& o) const { return !(*this == o); }

  double to_double() const {
    return static_cast<double>(num) / static_cast<double>(den);
  }

  std::string to_string() const {
    std::string s = int128_to_string(num);
    if (den != 1) s += "/" + int128_to_string(den);
    return s;
  }

  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a < 0 ? -a : a;
  }

  static std::string int128_to_string(__int128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : v;
    std::string s;
    while (u != 0) {
      s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(u % 10)));
      u /= 10;
    }
    return neg ? "-" + s : s;
  }
};

}  // namespace idealseq
