#include "modlift/arith.hpp"

#include <stdexcept>

namespace modlift {

std::string Mat2::str() const {
  return "[[" + a.get_str() + "," + b.get_str() + "],[" + c.get_str() + "," + d.get_str() + "]]";
}

Mat2 mat_mul(const Mat2& x, const Mat2& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
          x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

Mat2 mat_inv(const Mat2& x) { return {x.d, -x.b, -x.c, x.a}; }

Mat2 mat_pow(const Mat2& x, long e) {
  Mat2 base = e < 0 ? mat_inv(x) : x;
  unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  Mat2 r;
  while (k) {
    if (k & 1) r = r * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return r;
}

Mat2 conj_translation(const Int& p, const Int& q, const Int& n) {
  Int npq = n * p * q;
  return {1 - npq, n * p * p, -n * q * q, 1 + npq};
}

bool is_canonical_sign(const Mat2& m) { return sgn(m.c) > 0 || (m.c == 0 && sgn(m.a) > 0); }

ProjMat2 proj_canonical(const Mat2& m) { return {is_canonical_sign(m) ? m : -m}; }

Cusp::Cusp(Int p_, Int q_) : p(std::move(p_)), q(std::move(q_)) {
  if (p == 0 && q == 0) throw std::invalid_argument("cusp 0/0");
  Int g;
  mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
  p /= g;
  q /= g;
  if (sgn(q) < 0 || (q == 0 && sgn(p) < 0)) {
    p = -p;
    q = -q;
  }
}

std::string Cusp::str() const {
  if (q == 0) return "oo";
  if (q == 1) return p.get_str();
  return p.get_str() + "/" + q.get_str();
}

int cusp_cmp(const Cusp& x, const Cusp& y) {
  if (x.is_infinity() || y.is_infinity()) return int(x.is_infinity()) - int(y.is_infinity());
  return sgn(Int(x.p * y.q - y.p * x.q));
}

Cusp act_on_cusp(const Mat2& m, const Cusp& x) {
  return Cusp(m.a * x.p + m.b * x.q, m.c * x.p + m.d * x.q);
}

Int ext_gcd(const Int& a, const Int& b, Int& u, Int& v) {
  Int g;
  mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Mat2 cusp_conjugator(const Cusp& x) {
  // p*v - u*q = 1
  Int s, t;
  ext_gcd(x.p, x.q, s, t);  // p*s + q*t = 1
  return {x.p, -t, x.q, s};
}

long to_long(const Int& x) {
  if (!x.fits_slong_p()) throw std::overflow_error("integer does not fit in a machine word");
  return x.get_si();
}

unsigned long mod_ui(const Int& x, unsigned long m) {
  return mpz_fdiv_ui(x.get_mpz_t(), m);
}

}  // namespace modlift
