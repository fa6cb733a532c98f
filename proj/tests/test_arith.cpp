#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "modlift/arith.hpp"

#include <random>

using namespace modlift;

namespace {

// random word in S and T, so det = 1 by construction
Mat2 random_sl2(std::mt19937_64& rng, int len) {
  Mat2 m;
  std::uniform_int_distribution<int> e(-3, 3);
  for (int i = 0; i < len; ++i) m = m * mat_pow(Mat2::T(), e(rng)) * Mat2::S();
  return m;
}

}  // namespace

TEST_CASE("matrix basics") {
  CHECK(mat_pow(Mat2::T(), 5) == Mat2(1, 5, 0, 1));
  CHECK(mat_pow(Mat2::T(), -3) == Mat2(1, -3, 0, 1));
  CHECK((Mat2::S() * Mat2::S()).is_minus_identity());
  CHECK(mat_pow(Mat2::S() * Mat2::T(), 3).is_minus_identity());
  CHECK(mat_pow(Mat2::S() * Mat2::T(), 6).is_identity());
  CHECK(Mat2(-1, 0, 0, -1).is_pm_identity());
  CHECK_FALSE(Mat2(1, 1, 0, 1).is_pm_identity());
  CHECK(Mat2(1, -2, 3, 4).str() == "[[1,-2],[3,4]]");
}

TEST_CASE("inverse and powers on random elements") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    Mat2 m = random_sl2(rng, 12);
    CHECK(m.det() == 1);
    CHECK((m * mat_inv(m)).is_identity());
    CHECK(mat_pow(m, 3) == m * m * m);
    CHECK(mat_pow(m, -2) == mat_inv(m * m));
  }
}

TEST_CASE("entries beyond 64 bits") {
  Mat2 t = mat_pow(Mat2::T(), 1000000000000L);
  Mat2 big = t * Mat2::S() * t * Mat2::S() * t;
  CHECK(big.det() == 1);
  CHECK(big.a.get_str() != "");
  CHECK(!big.a.fits_slong_p());
  CHECK((big * mat_inv(big)).is_identity());
}

TEST_CASE("conjugated translations") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    Mat2 g = random_sl2(rng, 6);
    for (long n : {1L, 2L, 7L, -5L}) {
      Mat2 direct = g * mat_pow(Mat2::T(), n) * mat_inv(g);
      CHECK(conj_translation(g.a, g.c, n) == direct);
    }
  }
}

TEST_CASE("cusps") {
  CHECK(Cusp(2, -4) == Cusp(-1, 2));
  CHECK(Cusp(2, -4).str() == "-1/2");
  CHECK(Cusp(-3, 0).is_infinity());
  CHECK(Cusp(6, 3).str() == "2");
  CHECK(Cusp::infinity().str() == "oo");
  CHECK(cusp_cmp(Cusp(-1, 2), Cusp(1, 3)) < 0);
  CHECK(cusp_cmp(Cusp(1, 3), Cusp(2, 6)) == 0);
  CHECK(cusp_cmp(Cusp::infinity(), Cusp(1000, 1)) > 0);
  CHECK(act_on_cusp(Mat2::S(), Cusp(0, 1)).is_infinity());
  CHECK(act_on_cusp(Mat2::T(), Cusp(1, 2)) == Cusp(3, 2));
  CHECK(act_on_cusp(Mat2::T(), Cusp::infinity()).is_infinity());
}

TEST_CASE("cusp conjugators send infinity to the cusp") {
  for (long p = -12; p <= 12; ++p)
    for (long q = 0; q <= 12; ++q) {
      if (p == 0 && q == 0) continue;
      Cusp x(p, q);
      Mat2 g = cusp_conjugator(x);
      CHECK(g.det() == 1);
      CHECK(act_on_cusp(g, Cusp::infinity()) == x);
    }
}

TEST_CASE("sign normalization") {
  Mat2 m(-2, 1, -3, 1);
  CHECK_FALSE(is_canonical_sign(m));
  CHECK(proj_canonical(m).m == -m);
  CHECK(proj_canonical(m) == proj_canonical(-m));
  CHECK(proj_equal(m, -m));
  CHECK(is_canonical_sign(Mat2(1, 4, 0, 1)));
  CHECK_FALSE(is_canonical_sign(Mat2(-1, 4, 0, -1)));
}

TEST_CASE("integer helpers") {
  CHECK(mod_ui(Int(-7), 5) == 3);
  CHECK(mod_ui(Int(10), 5) == 0);
  CHECK(to_long(Int(-123456789)) == -123456789);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> d(-100000, 100000);
  for (int i = 0; i < 300; ++i) {
    Int a = d(rng), b = d(rng), u, v;
    Int g = ext_gcd(a, b, u, v);
    Int ref;
    mpz_gcd(ref.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    CHECK(abs(g) == ref);
    CHECK(a * u + b * v == g);
  }
}
