#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "modlift/lifts.hpp"
#include "modlift/verify.hpp"

#include <random>

using namespace modlift;

namespace {

const SymbolProvider& provider() {
  static SymbolProvider p = default_provider();
  return p;
}

Classification classify(const GroupSpec& spec, bool forms = false) {
  ClassifyOptions o;
  o.provider = provider();
  o.forms = forms;
  return classify_lifts(spec, o);
}

// the sign vector whose lift is the family itself
F2Vec own_signs(const GroupSpec& spec, const GeneratorSet& gs) {
  F2Vec x(gs.size());
  for (std::size_t i = 0; i < gs.size(); ++i) x.set(i, !member(spec, gs[i]));
  return x;
}

const LiftDescriptor& find_lift(const Classification& c, const F2Vec& x) {
  for (const auto& l : c.lifts)
    if (!l.minus_one && l.x == x) return l;
  throw std::runtime_error("no lift with signs " + x.str());
}

Mat2 random_word(std::mt19937_64& rng, const GeneratorSet& gs, int len) {
  Mat2 m;
  for (int i = 0; i < len; ++i) {
    const Mat2& g = gs[rng() % gs.size()];
    m = m * ((rng() & 1) ? g : mat_inv(g));
  }
  return m;
}

bool contains_principal(const GeneratorSet& gs, const LiftDescriptor& l, long M) {
  for (const Mat2& h : principal_generators(M, provider()))
    if (!member_in_lift(gs, l, h)) return false;
  return true;
}

}  // namespace

TEST_CASE("lift enumeration") {
  auto c3 = classify(GroupSpec::gamma0(3));
  CHECK(c3.sign_lifts() == 2);  // the bullet sign is forced, T is free
  CHECK(c3.lifts.size() == 3);
  CHECK(c3.lifts.back().minus_one);
  CHECK(c3.lifts.back().cls == LiftClass::ContainsMinusOne);

  auto c5 = classify(GroupSpec::gamma0(5));
  REQUIRE(c5.lifts.size() == 1);  // circles force -1
  CHECK(c5.lifts[0].minus_one);
  CHECK(c5.pres.minus_one);

  for (auto spec : {GroupSpec::gamma1(4), GroupSpec::gamma0(8), GroupSpec::gamma0(7), GroupSpec::gamma(3)}) {
    auto c = classify(spec);
    long bullets = 0;
    for (const auto& g : c.gens->gens()) bullets += g.kind == GenKind::Bullet;
    CHECK(c.sign_lifts() == (1L << (c.gens->size() - bullets)));
  }
}

TEST_CASE("the family is one of its own lifts") {
  std::mt19937_64 rng(17);
  std::vector<GroupSpec> specs{GroupSpec::gamma(3), GroupSpec::gamma(4), GroupSpec::gamma(5), GroupSpec::g1(7, 1),
                               GroupSpec::g2(7, 1), GroupSpec::g1(3, 2)};
  for (long n = 3; n <= 10; ++n) specs.push_back(GroupSpec::gamma1(n));
  for (const auto& spec : specs) {
    CAPTURE(spec.str());
    auto c = classify(spec);
    F2Vec x = own_signs(spec, *c.gens);
    for (int i = 0; i < 40; ++i) {
      Mat2 m = random_word(rng, *c.gens, 1 + static_cast<int>(rng() % 10));
      CHECK(member_in_lift(*c.gens, x, m) == member(spec, m));
      CHECK(member_in_lift(*c.gens, x, -m) == member(spec, -m));
    }
    const LiftDescriptor& l = find_lift(c, x);
    CHECK(l.cls == LiftClass::Level);
    // G2 only sees the sign of an element through its order mod 2
    const bool twice = spec.family == Family::G2;
    CHECK(l.level == (twice ? 2 : 1) * c.inv.general_level);
    CHECK(c.sysN->contains_gamma(x) == !twice);
    if (twice) CHECK(c.sys2N->contains_gamma(x));
  }
}

TEST_CASE("classification against direct containment of Gamma(M)") {
  for (auto spec : {GroupSpec::gamma1(4), GroupSpec::gamma1(6), GroupSpec::gamma(3), GroupSpec::gamma0(8),
                    GroupSpec::gamma0(7), GroupSpec::gamma0(9), GroupSpec::g2(7, 1)}) {
    CAPTURE(spec.str());
    auto c = classify(spec);
    const long N = c.inv.general_level;
    for (const auto& l : c.lifts) {
      if (l.minus_one) continue;
      CAPTURE(l.bits());
      bool n = contains_principal(*c.gens, l, N), n2 = contains_principal(*c.gens, l, 2 * N);
      if (l.cls == LiftClass::Level && l.level == N) CHECK(n);
      if (l.cls == LiftClass::Level && l.level == 2 * N) CHECK((n2 && !n));
      if (l.cls == LiftClass::Noncongruence) CHECK_FALSE(n2);
    }
  }
}

TEST_CASE("lift counts") {
  struct Row {
    GroupSpec spec;
    long n, n2, nc;
  };
  for (const Row& r : {Row{GroupSpec::gamma1(4), 2, 2, 0}, Row{GroupSpec::gamma1(6), 2, 2, 4},
                       Row{GroupSpec::gamma(3), 1, 1, 6}, Row{GroupSpec::gamma0(8), 4, 4, 0},
                       Row{GroupSpec::gamma0(16), 4, 4, 24}, Row{GroupSpec::gamma(2), 0, 4, 0},
                       Row{GroupSpec::gamma(4), 1, 7, 24}}) {
    CAPTURE(r.spec.str());
    auto c = classify(r.spec);
    CHECK(c.level_n == r.n);
    CHECK(c.level_2n == r.n2);
    CHECK(c.noncongruence == r.nc);
  }
  auto full = classify(GroupSpec::full());
  CHECK(full.lifts.size() == 1);
  CHECK(full.congruence() == 1);
}

TEST_CASE("closed formulas for the counts") {
  for (long n = 1; n <= 5; ++n) {
    CAPTURE(n);
    auto spec = GroupSpec::gamma(n);
    auto c = classify(spec);
    auto p = predicted_counts(spec);
    CHECK(c.congruence() == p.congruence);
  }
  for (long p : {3L, 7L, 11L, 19L, 23L}) {
    CAPTURE(p);
    auto spec = GroupSpec::gamma0(p);
    auto c = classify(spec);
    auto pc = predicted_counts(spec);
    CHECK(c.congruence() == pc.congruence);
    CHECK(c.noncongruence == pc.noncongruence);
  }
  CHECK(predicted_counts(GroupSpec::gamma0(7)).noncongruence == 0);
  CHECK_THROWS_AS(predicted_counts(GroupSpec::gamma1(4)), std::invalid_argument);
}

TEST_CASE("named generators of Gamma1(6)") {
  SignedFareySymbol sym = reference_gamma1_6();
  auto c = classify_symbol(GroupSpec::from_farey(sym), sym, [] {
    ClassifyOptions o;
    o.provider = provider();
    o.forms = false;
    return o;
  }());
  const GeneratorSet& gs = *c.gens;
  const Mat2 T = Mat2::T(), A(-5, 1, -6, 1), B(7, -3, 12, -5);
  const Mat2 tba2 = T * B * A * A;
  CHECK(tba2 == Mat2(169, -36, 108, -23));
  std::vector<Mat2> named{T, A, B};
  auto signs = [&](int sT, int sA, int sB) {
    F2Vec x(gs.size());
    int want[3] = {sT, sA, sB};
    for (int k = 0; k < 3; ++k) {
      int i = generator_index(gs, named[k]);
      REQUIRE(i >= 0);
      x.set(i, want[k] < 0);  // gens[i] is named[k] or its inverse
    }
    return x;
  };
  F2Vec plus = signs(1, 1, 1), minus_t = signs(-1, 1, 1);
  CHECK(member_in_lift(gs, plus, A));
  CHECK_FALSE(member_in_lift(gs, plus, -A));
  CHECK(member_in_lift(gs, plus, tba2));
  CHECK(member_in_lift(gs, minus_t, -tba2));
  CHECK_FALSE(member_in_lift(gs, minus_t, tba2));
  CHECK(find_lift(c, plus).level == 6);
  CHECK(find_lift(c, minus_t).cls == LiftClass::Noncongruence);
}

TEST_CASE("Gamma(4) as one of its lifts") {
  auto c = classify(GroupSpec::gamma(4));
  F2Vec own = own_signs(GroupSpec::gamma(4), *c.gens);
  CHECK(member_in_lift(*c.gens, own, Mat2(-7, 12, 4, -7)));
  CHECK_FALSE(member_in_lift(*c.gens, own, Mat2(7, -12, -4, 7)));
  CHECK(find_lift(c, own).level == 4);
  CHECK(c.level_n == 1);  // Gamma(4) is the only lift containing Gamma(4)
}

TEST_CASE("congruence lifts restrict to congruence lifts") {
  // Gamma1(6) and Gamma0(6) have the same image, so restriction is a bijection on lifts
  auto big = classify(GroupSpec::gamma0(6));
  auto small = classify(GroupSpec::gamma1(6));
  for (const auto& l : big.lifts) {
    if (l.minus_one) continue;
    F2Vec x(small.gens->size());
    for (std::size_t j = 0; j < small.gens->size(); ++j) {
      int s = sign_in_lift(*big.gens, l, (*small.gens)[j]);
      REQUIRE(s != 0);
      x.set(j, s < 0);
    }
    const LiftDescriptor& r = find_lift(small, x);
    if (l.cls == LiftClass::Level) {
      CHECK(r.cls == LiftClass::Level);
      CHECK(l.level % r.level == 0);
    }
  }
  // a sub-lattice of Gamma0(12): congruence passes down, noncongruence may not go up
  auto sub = classify(GroupSpec::gamma0(12));
  for (const auto& l : big.lifts) {
    if (l.minus_one || l.cls != LiftClass::Level) continue;
    F2Vec x(sub.gens->size());
    for (std::size_t j = 0; j < sub.gens->size(); ++j) {
      int s = sign_in_lift(*big.gens, l, (*sub.gens)[j]);
      REQUIRE(s != 0);
      x.set(j, s < 0);
    }
    CHECK(find_lift(sub, x).cls == LiftClass::Level);
  }
}

TEST_CASE("level limit") {
  ClassifyOptions o;
  o.provider = provider();
  o.max_level = 30;
  CHECK_THROWS_AS(classify_lifts(GroupSpec::gamma0(20), o), std::out_of_range);
  o.max_level = 40;
  CHECK_NOTHROW(classify_lifts(GroupSpec::gamma0(20), o));
}

TEST_CASE("squares of principal subgroups") {
  CHECK(squares_status(1).congruence);
  CHECK(squares_status(2).congruence);
  CHECK(squares_status(2).witness == "gamma:4");
  auto s3 = squares_status(3, &provider());
  CHECK_FALSE(s3.congruence);
  for (const auto& line : verify_gamma2_squared(provider())) {
    CAPTURE(line.name);
    CAPTURE(line.detail);
    CHECK(line.ok);
  }
}
