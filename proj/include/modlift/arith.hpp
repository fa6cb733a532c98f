#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace modlift {

using Int = mpz_class;

// 2x2 integer matrix [[a,b],[c,d]]; callers keep det = 1.
struct Mat2 {
  Int a{1}, b{0}, c{0}, d{1};

  Mat2() = default;
  Mat2(Int a_, Int b_, Int c_, Int d_)
      : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {}

  static Mat2 identity() { return {}; }
  static Mat2 T() { return {1, 1, 0, 1}; }
  static Mat2 S() { return {0, -1, 1, 0}; }

  Int det() const { return a * d - b * c; }
  bool is_identity() const { return a == 1 && b == 0 && c == 0 && d == 1; }
  bool is_minus_identity() const { return a == -1 && b == 0 && c == 0 && d == -1; }
  bool is_pm_identity() const { return b == 0 && c == 0 && a == d && (a == 1 || a == -1); }

  Mat2 operator-() const { return {-a, -b, -c, -d}; }
  bool operator==(const Mat2& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
  bool operator!=(const Mat2& o) const { return !(*this == o); }

  std::string str() const;
};

Mat2 mat_mul(const Mat2& x, const Mat2& y);
Mat2 mat_inv(const Mat2& x);
Mat2 mat_pow(const Mat2& x, long e);
inline Mat2 operator*(const Mat2& x, const Mat2& y) { return mat_mul(x, y); }

// g T^n g^-1 for g with first column (p,q); the other column never matters.
Mat2 conj_translation(const Int& p, const Int& q, const Int& n);

// Element of PSL2(Z), stored as the sign-normalized representative.
struct ProjMat2 {
  Mat2 m;
  bool operator==(const ProjMat2& o) const { return m == o.m; }
  bool operator!=(const ProjMat2& o) const { return !(m == o.m); }
};

// c > 0, or c = 0 and a > 0.
bool is_canonical_sign(const Mat2& m);
ProjMat2 proj_canonical(const Mat2& m);
inline bool proj_equal(const Mat2& x, const Mat2& y) { return x == y || x == -y; }

// Point of P^1(Q); (1,0) is infinity.
struct Cusp {
  Int p{1}, q{0};

  Cusp() = default;
  Cusp(Int p_, Int q_);  // reduces and normalizes

  static Cusp infinity() { return {}; }
  bool is_infinity() const { return q == 0; }
  bool operator==(const Cusp& o) const { return p == o.p && q == o.q; }
  bool operator!=(const Cusp& o) const { return !(*this == o); }
  std::string str() const;  // "p/q", "n", or "oo"
};

// -1 if x < y, 0 if equal, 1 if x > y; infinity compares above everything.
int cusp_cmp(const Cusp& x, const Cusp& y);

Cusp act_on_cusp(const Mat2& m, const Cusp& x);

// Some g in SL2(Z) with g(oo) = x.
Mat2 cusp_conjugator(const Cusp& x);

// Small helpers on big integers.
long to_long(const Int& x);
unsigned long mod_ui(const Int& x, unsigned long m);  // least non-negative residue
Int ext_gcd(const Int& a, const Int& b, Int& u, Int& v);  // a*u + b*v = g

}  // namespace modlift
