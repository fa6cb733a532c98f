#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "modlift/farey.hpp"
#include "modlift/groups.hpp"

#include <numeric>
#include <random>

using namespace modlift;

namespace {

// [PSL2(Z) : image] by counting in SL2(Z/N); the conditions only see residues mod N.
long brute_index(const GroupSpec& spec) {
  const long n = spec.N;
  long total = 0, inside = 0;
  for (long a = 0; a < n; ++a)
    for (long b = 0; b < n; ++b)
      for (long c = 0; c < n; ++c)
        for (long d = 0; d < n; ++d) {
          if (((a * d - b * c) % n + n) % n != 1 % n) continue;
          ++total;
          Mat2 m(a, b, c, d);
          if (member(spec, m) || member(spec, -m)) ++inside;
        }
  return total / inside;
}

long phi(long n) {
  long r = 0;
  for (long k = 1; k <= n; ++k)
    if (std::gcd(k, n) == 1) ++r;
  return r;
}

long solutions(long n, long c) {  // x^2 + c x + 1 = 0 mod n
  long r = 0;
  for (long x = 0; x < n; ++x)
    if ((x * x + c * x + 1) % n == 0) ++r;
  return r;
}

Mat2 random_gamma0(std::mt19937_64& rng, long n) {
  std::uniform_int_distribution<long> d(-40, 40);
  for (;;) {
    long c = n * d(rng), dd = d(rng);
    Int u, v;
    if (ext_gcd(Int(c), Int(dd), u, v) != 1) continue;
    // c u + dd v = 1, so a = v, b = -u
    return {v, -u, c, dd};
  }
}

}  // namespace

TEST_CASE("spec parsing") {
  for (const char* s : {"full", "gamma:4", "gamma0:20", "gamma1:6", "g1:7^2", "g2:11^1"})
    CHECK(parse_spec(s).str() == s);
  CHECK(parse_spec("g1:7").str() == "g1:7^1");
  for (const char* bad : {"", "gamma", "gamma:", "gamma:-3", "gamma:0", "foo:3", "g1:5", "g1:9", "gamma0:x"})
    CHECK_THROWS_AS(parse_spec(bad), std::invalid_argument);
}

TEST_CASE("membership by definition") {
  CHECK(member(GroupSpec::gamma0(5), Mat2(2, 1, 5, 3)));
  CHECK_FALSE(member(GroupSpec::gamma0(5), Mat2(2, 1, 3, 2)));
  CHECK(member(GroupSpec::gamma1(4), Mat2(-3, 1, -4, 1)));
  CHECK_FALSE(member(GroupSpec::gamma1(4), Mat2(3, -1, 4, -1)));
  CHECK(member(GroupSpec::gamma(4), Mat2(-7, 12, 4, -7)));
  CHECK_FALSE(member(GroupSpec::gamma(4), Mat2(7, -12, -4, 7)));
  CHECK(member(GroupSpec::gamma(4), Mat2(9, 4, 20, 9)));
  CHECK(member(GroupSpec::full(), Mat2::S()));
}

TEST_CASE("projective index against SL2(Z/N)") {
  for (long n = 1; n <= 12; ++n) {
    CAPTURE(n);
    CHECK(proj_index(GroupSpec::gamma0(n)) == brute_index(GroupSpec::gamma0(n)));
    CHECK(proj_index(GroupSpec::gamma1(n)) == brute_index(GroupSpec::gamma1(n)));
    if (n <= 9) CHECK(proj_index(GroupSpec::gamma(n)) == brute_index(GroupSpec::gamma(n)));
  }
  CHECK(proj_index(GroupSpec::g1(7, 1)) == 8);
  CHECK(proj_index(GroupSpec::g2(3, 2)) == 12);
}

TEST_CASE("legendre symbol") {
  for (long p : {3L, 7L, 11L, 13L}) {
    for (long a = -30; a <= 30; ++a) {
      long r = ((a % p) + p) % p;
      int expect = 0;
      if (r != 0) {
        expect = -1;
        for (long x = 1; x < p; ++x)
          if (x * x % p == r) expect = 1;
      }
      CHECK(legendre(Int(a), p) == expect);
    }
  }
  CHECK_THROWS(legendre(Int(3), 9));
}

TEST_CASE("the two lifts of Gamma0(p^r) split each projective element") {
  std::mt19937_64 rng(5);
  for (auto spec : {GroupSpec::g1(7, 1), GroupSpec::g2(7, 1), GroupSpec::g1(3, 2), GroupSpec::g2(11, 1)}) {
    CHECK_FALSE(member(spec, -Mat2::identity()));
    for (int i = 0; i < 200; ++i) {
      Mat2 m = random_gamma0(rng, spec.N);
      REQUIRE(m.det() == 1);
      CHECK(member(spec, m) != member(spec, -m));
    }
  }
}

TEST_CASE("cusp widths") {
  auto o = family_oracle(GroupSpec::gamma0(12));
  CHECK(cusp_width(o, Cusp::infinity(), 100) == 1);
  CHECK(cusp_width(o, Cusp(0, 1), 100) == 12);
  CHECK(cusp_width(o, Cusp(1, 2), 100) == 3);
  CHECK(cusp_width(o, Cusp(1, 6), 100) == 1);
  auto g = family_oracle(GroupSpec::gamma(5));
  for (auto x : {Cusp::infinity(), Cusp(0, 1), Cusp(2, 5), Cusp(3, 7)}) CHECK(cusp_width(g, x, 100) == 5);
  CHECK(cusp_width(family_oracle(GroupSpec::gamma1(4)), Cusp(1, 2), 100) == 1);
}

TEST_CASE("invariants of Gamma0(N) against the classical counts") {
  for (long n = 1; n <= 40; ++n) {
    CAPTURE(n);
    auto spec = GroupSpec::gamma0(n);
    GroupInvariants inv = group_invariants(spec);
    CHECK(inv.mu == proj_index(spec));
    long cusps = 0;
    for (long d = 1; d <= n; ++d)
      if (n % d == 0) cusps += phi(std::gcd(d, n / d));
    CHECK(inv.nu_inf() == cusps);
    CHECK(inv.nu2 == (n % 4 == 0 ? 0 : solutions(n, 0)));
    CHECK(inv.nu3 == (n % 9 == 0 ? 0 : solutions(n, 1)));
    long sum = 0;
    for (const auto& c : inv.cusps) sum += c.width;
    CHECK(sum == inv.mu);
    CHECK(inv.general_level == n);
  }
  CHECK(group_invariants(GroupSpec::gamma0(11)).genus == 1);
  CHECK(group_invariants(GroupSpec::gamma0(23)).genus == 2);
  CHECK(group_invariants(GroupSpec::gamma0(37)).genus == 2);
}

TEST_CASE("invariants of Gamma(N) and Gamma1(N)") {
  // genus of Gamma(N): 1 + mu (N - 6) / (12 N)
  for (long n = 3; n <= 8; ++n) {
    GroupInvariants inv = group_invariants(GroupSpec::gamma(n));
    CHECK(inv.genus * 12 * n == 12 * n + inv.mu * (n - 6));
    CHECK(inv.nu_inf() * n == inv.mu);
    CHECK(inv.general_level == n);
  }
  for (long n = 2; n <= 16; ++n) CHECK(group_invariants(GroupSpec::gamma1(n)).general_level == n);
  CHECK(group_invariants(GroupSpec::gamma(2)).general_level == 2);
  CHECK(group_invariants(GroupSpec::full()).general_level == 1);
}
