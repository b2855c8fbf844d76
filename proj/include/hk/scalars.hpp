#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace hk {

/// Exact arbitrary-precision rational. gmp keeps values canonical
/// (lowest terms, positive denominator) under all ring operations.
using Rat = mpq_class;

struct Error : std::runtime_error {
  std::string code;
  Error(std::string c, const std::string& what)
      : std::runtime_error(c + ": " + what), code(std::move(c)) {}
};

inline int sign_of(const Rat& x) { return sgn(x); }
inline bool is_zero(const Rat& x) { return sgn(x) == 0; }

inline std::string to_string(const Rat& x) { return x.get_str(); }

/// Parses "p", "-p" or "p/q"; canonicalizes. Rejects zero denominators.
inline Rat parse_rat(const std::string& s0) {
  std::string s = !s0.empty() && s0[0] == '+' ? s0.substr(1) : s0;
  try {
    mpq_class v(s);
    if (v.get_den() == 0) throw Error("SchemaError", "zero denominator in \"" + s + "\"");
    v.canonicalize();
    return v;
  } catch (const std::invalid_argument&) {
    throw Error("SchemaError", "not a rational: \"" + s + "\"");
  }
}

inline Rat rat_abs(const Rat& x) { return sgn(x) < 0 ? Rat(-x) : x; }

/// Exact square root of a non-negative rational, if one exists in Q.
inline std::optional<Rat> rat_sqrt(const Rat& x) {
  if (sgn(x) < 0) return std::nullopt;
  if (sgn(x) == 0) return Rat(0);
  mpz_class num = x.get_num(), den = x.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) && mpz_perfect_square_p(den.get_mpz_t())) {
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    return Rat(rn) / Rat(rd);
  }
  return std::nullopt;
}

/// Element of the real quadratic extension Q(sqrt(d)): a + b*sqrt(d).
/// d is a square-free integer > 1, carried per value; d == 0 marks a pure
/// rational, compatible with every extension. Mixing two distinct nonzero
/// d's is a logic error.
struct QuadRat {
  Rat a, b;
  int d = 0;

  QuadRat() = default;
  QuadRat(long v) : a(v) {}              // NOLINT(google-explicit-constructor)
  QuadRat(Rat v) : a(std::move(v)) {}    // NOLINT(google-explicit-constructor)
  QuadRat(Rat ra, Rat rb, int dd) : a(std::move(ra)), b(std::move(rb)), d(dd) {
    normalize();
  }

  void normalize() {
    if (is_zero(b)) d = 0;
    else if (d <= 1) throw Error("FieldMismatch", "irrational part needs d > 1");
  }
  bool rational() const { return d == 0; }
};

inline int merge_d(const QuadRat& x, const QuadRat& y) {
  if (x.d == 0) return y.d;
  if (y.d == 0 || x.d == y.d) return x.d;
  throw Error("FieldMismatch", "mixing sqrt(" + std::to_string(x.d) + ") with sqrt(" +
                                   std::to_string(y.d) + ")");
}

inline bool is_zero(const QuadRat& x) { return is_zero(x.a) && is_zero(x.b); }

inline QuadRat operator+(const QuadRat& x, const QuadRat& y) {
  return QuadRat(x.a + y.a, x.b + y.b, merge_d(x, y));
}
inline QuadRat operator-(const QuadRat& x, const QuadRat& y) {
  return QuadRat(x.a - y.a, x.b - y.b, merge_d(x, y));
}
inline QuadRat operator-(const QuadRat& x) { return QuadRat(-x.a, -x.b, x.d); }
inline QuadRat operator*(const QuadRat& x, const QuadRat& y) {
  int d = merge_d(x, y);
  return QuadRat(x.a * y.a + Rat(d) * x.b * y.b, x.a * y.b + x.b * y.a, d);
}
inline QuadRat conj(const QuadRat& x) { return QuadRat(x.a, -x.b, x.d); }

inline QuadRat inverse(const QuadRat& x) {
  if (is_zero(x)) throw Error("SingularMatrix", "division by zero");
  if (x.rational()) return QuadRat(1 / x.a, Rat(0), 0);
  Rat n = x.a * x.a - Rat(x.d) * x.b * x.b;  // nonzero: d is not a square
  return QuadRat(x.a / n, -x.b / n, x.d);
}
inline QuadRat operator/(const QuadRat& x, const QuadRat& y) { return x * inverse(y); }

inline QuadRat& operator+=(QuadRat& x, const QuadRat& y) { return x = x + y; }
inline QuadRat& operator-=(QuadRat& x, const QuadRat& y) { return x = x - y; }
inline QuadRat& operator*=(QuadRat& x, const QuadRat& y) { return x = x * y; }

inline bool operator==(const QuadRat& x, const QuadRat& y) {
  return x.a == y.a && x.b == y.b;  // componentwise; d irrelevant when b == 0
}
inline bool operator!=(const QuadRat& x, const QuadRat& y) { return !(x == y); }

/// Exact sign of a + b*sqrt(d), by case analysis on the signs of a and b
/// and comparison of a^2 against d*b^2.
inline int sign_of(const QuadRat& x) {
  int sa = sgn(x.a), sb = sgn(x.b);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  Rat lhs = x.a * x.a, rhs = Rat(x.d) * x.b * x.b;
  int c = cmp(lhs, rhs);
  if (c == 0) return 0;  // cannot happen for square-free d > 1, kept for safety
  return c > 0 ? sa : sb;
}

inline std::string to_string(const QuadRat& x) {
  if (x.rational()) return to_string(x.a);
  std::string s = to_string(x.a);
  s += sgn(x.b) < 0 ? "-" : "+";
  s += to_string(rat_abs(x.b)) + "*sqrt(" + std::to_string(x.d) + ")";
  return s;
}

/// Parses "p/q" or "p/q+r/s*sqrt(d)" (also with '-').
inline QuadRat parse_quadrat(const std::string& s, int expected_d) {
  auto pos = s.find("*sqrt(");
  if (pos == std::string::npos) return QuadRat(parse_rat(s));
  auto close = s.rfind(')');
  if (close == std::string::npos || close < pos)
    throw Error("SchemaError", "malformed quadratic scalar: \"" + s + "\"");
  int d = std::stoi(s.substr(pos + 6, close - pos - 6));
  if (expected_d != 0 && d != expected_d)
    throw Error("FieldMismatch", "scalar uses sqrt(" + std::to_string(d) + ")");
  // split the rational part from the coefficient: scan back for the sign
  // separating the two terms (skip a leading sign at position 0).
  size_t split = std::string::npos;
  for (size_t i = pos; i > 0; --i) {
    char c = s[i - 1];
    if ((c == '+' || c == '-') && i - 1 > 0 && s[i - 2] != '/' && s[i - 2] != '+' &&
        s[i - 2] != '-') {
      split = i - 1;
      break;
    }
  }
  if (split == std::string::npos) {  // pure irrational term "r/s*sqrt(d)"
    Rat b = parse_rat(s.substr(0, pos));
    return QuadRat(Rat(0), b, d);
  }
  Rat a = parse_rat(s.substr(0, split));
  Rat b = parse_rat(s.substr(split, pos - split));
  return QuadRat(a, b, d);
}

/// Exact square root inside Q(sqrt(d)), if one exists there.
inline std::optional<QuadRat> quad_sqrt(const QuadRat& x, int d) {
  if (sign_of(x) < 0) return std::nullopt;
  if (is_zero(x)) return QuadRat(0);
  if (x.rational()) {
    if (auto r = rat_sqrt(x.a)) return QuadRat(*r);
    if (d > 1) {
      if (auto r = rat_sqrt(x.a / Rat(d))) return QuadRat(Rat(0), *r, d);
    }
    return std::nullopt;
  }
  // (u + v sqrt d)^2 = u^2 + d v^2 + 2uv sqrt d with u, v rational.
  Rat N = x.a * x.a - Rat(x.d) * x.b * x.b;
  auto n0 = rat_sqrt(N);
  if (!n0) return std::nullopt;
  for (const Rat& root : {Rat((x.a + *n0) / 2), Rat((x.a - *n0) / 2)}) {
    auto u = rat_sqrt(root);
    if (!u || is_zero(*u)) continue;
    Rat v = x.b / (2 * *u);
    QuadRat cand(*u, v, x.d);
    if (cand * cand == x) return cand;
  }
  return std::nullopt;
}

/// SplitMix64: tiny deterministic PRNG, identical stream on every platform.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  /// uniform in [0, n)
  std::uint64_t below(std::uint64_t n) { return next() % n; }
  /// rational with numerator in [-h, h] and denominator in [1, h]
  Rat rat(unsigned h) {
    long num = static_cast<long>(below(2 * h + 1)) - static_cast<long>(h);
    long den = static_cast<long>(below(h)) + 1;
    Rat r(num, den);
    r.canonicalize();
    return r;
  }
};

}  // namespace hk
