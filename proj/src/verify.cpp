#include "modlift/verify.hpp"

#include "modlift/modforms.hpp"

#include <chrono>
#include <random>
#include <sstream>
#include <stdexcept>

namespace modlift {

SignedFareySymbol reference_gamma1_4() {
  return parse_symbol("farey-symbol v1\ncusps -oo 0 1/2 1 oo\nlabels +1 -2 -2 +1\n");
}

SignedFareySymbol reference_gamma1_6() {
  return parse_symbol("farey-symbol v1\ncusps -oo 0 1/3 1/2 2/3 1 oo\nlabels +1 -2 +3 +3 -2 +1\n");
}

int generator_index(const GeneratorSet& gens, const Mat2& m) {
  Mat2 mi = mat_inv(m);
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (gens[i] == m || gens[i] == mi) return static_cast<int>(i);
  return -1;
}

int sign_in_lift(const GeneratorSet& gens, const LiftDescriptor& lift, const Mat2& m) {
  if (member_in_lift(gens, lift, m)) return 1;
  if (member_in_lift(gens, lift, -m)) return -1;
  return 0;
}

namespace {

CheckLine line(std::string name, bool ok, std::string detail = "") { return {std::move(name), ok, std::move(detail)}; }

std::string num(long x) { return std::to_string(x); }

ClassifyOptions options(const SymbolProvider& provider, bool forms = true) {
  ClassifyOptions o;
  o.provider = provider;
  o.forms = forms;
  return o;
}

std::string summary(const Classification& c) {
  long N = c.inv.general_level;
  return num(c.level_n) + " level-" + num(N) + ", " + num(c.level_2n) + " level-" + num(2 * N) + ", " +
         num(c.noncongruence) + " noncongruence";
}

// both groups contain the other's generators projectively
bool same_projective_group(const SignedFareySymbol& a, const MembershipOracle& oa, const SignedFareySymbol& b,
                           const MembershipOracle& ob) {
  for (const auto& g : generators_from_symbol(a))
    if (!ob.proj_contains(g.m)) return false;
  for (const auto& g : generators_from_symbol(b))
    if (!oa.proj_contains(g.m)) return false;
  return true;
}

F2Vec permute(const F2Vec& v, const std::vector<int>& order) {
  F2Vec out(order.size());
  for (std::size_t j = 0; j < order.size(); ++j) out.set(j, v.get(order[j]));
  return out;
}

std::string span_str(const std::vector<F2Vec>& basis) {
  std::string s = "<";
  for (std::size_t i = 0; i < basis.size(); ++i) s += (i ? "," : "") + basis[i].str();
  return s + ">";
}

// One expected table column: signs of the named matrices, level (0 = noncongruence), regularity, dims.
struct Column {
  std::vector<int> signs;
  long level;
  std::string regular;
  long s3, s5;
};

std::string column_name(const std::vector<std::string>& names, const std::vector<int>& signs) {
  std::string s = "<";
  for (std::size_t i = 0; i < names.size(); ++i) s += (i ? "," : "") + std::string(signs[i] < 0 ? "-" : "") + names[i];
  return s + ">";
}

void check_table(const Classification& c, const std::vector<std::string>& names, const std::vector<Mat2>& mats,
                 const std::vector<Cusp>& cusps, const std::vector<Column>& cols, std::vector<CheckLine>& out) {
  std::vector<std::size_t> cusp_pos;
  for (const Cusp& x : cusps) {
    std::size_t k = 0;
    while (k < c.inv.cusps.size() && c.inv.cusps[k].rep != x) ++k;
    if (k == c.inv.cusps.size()) {
      out.push_back(line("cusp " + x.str(), false, "not a cusp class representative"));
      return;
    }
    cusp_pos.push_back(k);
  }
  for (const Column& col : cols) {
    std::string name = column_name(names, col.signs);
    const LiftDescriptor* hit = nullptr;
    for (const auto& l : c.lifts) {
      if (l.minus_one) continue;
      bool all = true;
      for (std::size_t i = 0; i < mats.size() && all; ++i) all = sign_in_lift(*c.gens, l, mats[i]) == col.signs[i];
      if (all) hit = &l;
    }
    if (!hit) {
      out.push_back(line(name, false, "no such lift"));
      continue;
    }
    std::string reg;
    for (std::size_t k : cusp_pos) reg += hit->regular[k] ? 'Y' : 'n';
    long level = hit->cls == LiftClass::Level ? hit->level : 0;
    bool ok = level == col.level && reg == col.regular && hit->dim_s3 == col.s3 && (col.s5 < 0 || hit->dim_s5 == col.s5);
    std::string got = "level " + (level ? num(level) : std::string("-")) + ", regular " + reg + ", S3 " + num(hit->dim_s3);
    if (col.s5 >= 0) got += ", S5 " + num(hit->dim_s5);
    out.push_back(line(name, ok, got));
  }
}

std::vector<CheckLine> check_principal_counts(const SymbolProvider& provider) {
  std::vector<CheckLine> out;
  const long expect[] = {1, 5, 3, 9, 3, 9};
  for (long N = 1; N <= 6; ++N) {
    GroupSpec s = GroupSpec::gamma(N);
    Classification c = classify_lifts(s, options(provider, false));
    long pred = predicted_counts(s).congruence;
    bool ok = c.congruence() == expect[N - 1] && pred == expect[N - 1];
    out.push_back(line("n(" + num(N) + ")", ok, "computed " + num(c.congruence()) + ", predicted " + num(pred)));
  }
  return out;
}

std::vector<CheckLine> check_gamma1_4(const SymbolProvider& provider) {
  std::vector<CheckLine> out;
  SignedFareySymbol ref = reference_gamma1_4();
  GroupSpec spec = GroupSpec::from_farey(ref);
  Classification c = classify_symbol(spec, ref, options(provider));
  const Mat2 T = Mat2::T(), A{-3, 1, -4, 1};
  bool gens_ok = c.gens->size() == 2 && generator_index(*c.gens, T) >= 0 && generator_index(*c.gens, A) >= 0;
  out.push_back(line("generators T, A", gens_ok));
  SignedFareySymbol built = provider(GroupSpec::gamma1(4));
  out.push_back(line("same group as the built gamma1:4",
                     same_projective_group(ref, oracle_for(spec), built, family_oracle(GroupSpec::gamma1(4)))));
  out.push_back(line("lifts without -1", c.sign_lifts() == 4, num(c.sign_lifts())));
  check_table(c, {"T", "A"}, {T, A}, {Cusp::infinity(), Cusp(0, 1), Cusp(1, 2)},
              {{{1, 1}, 4, "YYn", 0, 1}, {{1, -1}, 8, "YnY", 0, 1}, {{-1, 1}, 8, "nnn", 1, 2}, {{-1, -1}, 4, "nYY", 0, 1}},
              out);
  return out;
}

std::vector<CheckLine> check_gamma1_6(const SymbolProvider& provider) {
  std::vector<CheckLine> out;
  SignedFareySymbol ref = reference_gamma1_6();
  GroupSpec spec = GroupSpec::from_farey(ref);
  Classification c = classify_symbol(spec, ref, options(provider));
  const Mat2 T = Mat2::T(), A{-5, 1, -6, 1}, B{7, -3, 12, -5};
  int iT = generator_index(*c.gens, T), iA = generator_index(*c.gens, A), iB = generator_index(*c.gens, B);
  out.push_back(line("generators T, A, B", c.gens->size() == 3 && iT >= 0 && iA >= 0 && iB >= 0));
  if (iT < 0 || iA < 0 || iB < 0) return out;
  SignedFareySymbol built = provider(GroupSpec::gamma1(6));
  out.push_back(line("same group as the built gamma1:6",
                     same_projective_group(ref, oracle_for(spec), built, family_oracle(GroupSpec::gamma1(6)))));
  out.push_back(line("lifts without -1", c.sign_lifts() == 8, num(c.sign_lifts())));
  out.push_back(line("level counts", c.level_n == 2 && c.level_2n == 2 && c.noncongruence == 4, summary(c)));
  check_table(c, {"T", "A", "B"}, {T, A, B}, {Cusp::infinity(), Cusp(0, 1), Cusp(1, 2), Cusp(1, 3)},
              {{{1, 1, 1}, 6, "YYYY", 0, -1},
               {{1, -1, 1}, 12, "YnYn", 1, -1},
               {{-1, 1, 1}, 0, "nnYY", 1, -1},
               {{-1, -1, 1}, 0, "nYYn", 1, -1},
               {{1, 1, -1}, 0, "YYnn", 1, -1},
               {{1, -1, -1}, 0, "YnnY", 1, -1},
               {{-1, 1, -1}, 12, "nnnn", 2, -1},
               {{-1, -1, -1}, 6, "nYnY", 1, -1}},
              out);

  // spans in the order (A, B, T)
  std::vector<int> order{iA, iB, iT};
  auto span_in_abt = [&](const SigmaSystem& sys) {
    std::vector<F2Vec> v;
    for (const auto& b : sys.basis()) v.push_back(permute(b, order));
    return f2_span_basis(v);
  };
  SigmaSystem s6 = sigma_system(*c.gens, 6, provider, true);
  SigmaSystem s12 = sigma_system(*c.gens, 12, provider, true);
  auto want6 = f2_span_basis({F2Vec::from_string("110"), F2Vec::from_string("101")});
  auto want12 = f2_span_basis({F2Vec::from_string("011")});
  out.push_back(line("V6", span_in_abt(s6) == want6, span_str(span_in_abt(s6))));
  out.push_back(line("V12", span_in_abt(s12) == want12, span_str(span_in_abt(s12))));
  bool eps_zero = true;
  for (bool e : s6.eps) eps_zero = eps_zero && !e;
  out.push_back(line("signs vanish for M = 6", eps_zero && s6.contained));

  Mat2 tba2 = T * B * A * A;
  ReducedWord rw = c.gens->reduce(tba2);
  F2Vec row(3);
  for (const auto& l : rw.word) row.flip(l.gen);
  F2Vec abt = permute(row, order);
  bool in_span = f2_rank({want12[0], abt}) == 1;
  out.push_back(line("TBA^2", tba2 == Mat2{169, -36, 108, -23} && member(GroupSpec::gamma(12), tba2) &&
                                   abt.str() == "011" && in_span,
                     "row " + abt.str()));
  return out;
}

std::vector<CheckLine> check_family(const SymbolProvider& provider, const GroupSpec& spec, long lifts, long n, long n2,
                                    long nc, long dimN, long dim2N, double budget_s = 0) {
  std::vector<CheckLine> out;
  auto t0 = std::chrono::steady_clock::now();
  Classification c = classify_lifts(spec, options(provider, false));
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  long N = c.inv.general_level;
  out.push_back(line("lifts without -1", c.sign_lifts() == lifts, num(c.sign_lifts())));
  out.push_back(line("level counts", c.level_n == n && c.level_2n == n2 && c.noncongruence == nc, summary(c)));
  long vN = static_cast<long>(c.sysN->eq.rank());
  long v2N = c.sys2N ? static_cast<long>(c.sys2N->eq.rank()) : -1;
  if (dimN >= 0) out.push_back(line("dim V" + num(N) + " = " + num(dimN), vN == dimN, "computed " + num(vN)));
  if (dim2N >= 0)
    out.push_back(line("dim V" + num(2 * N) + " = " + num(dim2N), v2N == dim2N, "computed " + num(v2N)));
  if (budget_s > 0) {
    std::ostringstream os;
    os.precision(2);
    os << std::fixed << secs << " s";
    out.push_back(line("time budget", secs <= budget_s, os.str()));
  }
  return out;
}

std::vector<CheckLine> check_gamma0_20(const SymbolProvider& provider) {
  auto out = check_family(provider, GroupSpec::gamma0(20), 128, 4, 4, 120, 6, 4, 600);
  for (auto& l : out)
    if (l.name == "dim V20 = 6" && !l.ok)
      l.detail += "; 4 level-20 lifts among 2^7 force 7 - 2 = 5";
  return out;
}

std::vector<CheckLine> check_prime_powers(const SymbolProvider& provider) {
  std::vector<CheckLine> out;
  const std::pair<long, long> cases[] = {{3, 1}, {7, 1}, {3, 2}, {11, 1}};
  for (auto [p, r] : cases) {
    GroupSpec s = GroupSpec::gamma0(p == 3 && r == 2 ? 9 : p);
    std::string tag = s.str();
    Classification c = classify_lifts(s, options(provider, false));
    out.push_back(line(tag + " congruence lifts", c.congruence() == 3 && predicted_counts(s).congruence == 3,
                       num(c.congruence())));
    // the -1 lift is the preimage of the projective group
    bool pre = c.minus_one_congruence && member(s, -Mat2::identity());
    for (std::size_t i = 0; i < c.gens->size() && pre; ++i) pre = member(s, (*c.gens)[i]) || member(s, -(*c.gens)[i]);
    out.push_back(line(tag + " preimage", pre));
    std::vector<const LiftDescriptor*> matched;
    for (const GroupSpec& g : {GroupSpec::g1(p, r), GroupSpec::g2(p, r)}) {
      auto ggens = generators_from_symbol(provider(g));
      const LiftDescriptor* hit = nullptr;
      int hits = 0;
      for (const auto& l : c.lifts) {
        if (l.minus_one) continue;
        bool fwd = true, back = true;
        for (std::size_t i = 0; i < c.gens->size() && fwd; ++i)
          fwd = member(g, l.x.get(i) ? -(*c.gens)[i] : (*c.gens)[i]);
        for (std::size_t i = 0; i < ggens.size() && back; ++i) back = member_in_lift(*c.gens, l, ggens[i].m);
        if (fwd && back) {
          hit = &l;
          ++hits;
        }
      }
      bool ok = hits == 1 && hit->cls == LiftClass::Level;
      out.push_back(line(tag + " " + g.str(), ok, hit ? "lift " + hit->x.str() : "no lift"));
      if (hit) matched.push_back(hit);
    }
    out.push_back(line(tag + " G1 and G2 distinct", matched.size() == 2 && matched[0] != matched[1]));
  }
  return out;
}

std::vector<CheckLine> check_prime_counts(const SymbolProvider& provider) {
  std::vector<CheckLine> out;
  for (long p : {7L, 11L, 19L, 23L}) {
    GroupSpec s = GroupSpec::gamma0(p);
    Classification c = classify_lifts(s, options(provider, false));
    CountPrediction pred = predicted_counts(s);
    std::string detail = "s = " + num(pred.s) + ", formula " + num(pred.noncongruence) + ", computed " + num(c.noncongruence);
    if (c.noncongruence == 0) detail += "; no noncongruence lift at p = " + num(p) + ", so the count is not positive here";
    out.push_back(line("gamma0:" + num(p), c.noncongruence == pred.noncongruence, detail));
  }
  return out;
}

std::vector<CheckLine> check_gamma_4(const SymbolProvider& provider) {
  return check_family(provider, GroupSpec::gamma(4), 32, 1, 7, 24, -1, 2);
}

// ---------------------------------------------------------------- properties

Mat2 random_sl2(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> len(1, 8), shift(-5, 5), coin(0, 1);
  Mat2 m;
  for (int k = len(rng); k > 0; --k) m = m * (coin(rng) ? Mat2::S() : mat_pow(Mat2::T(), shift(rng)));
  return m;
}

std::vector<GroupSpec> property_fixtures() {
  std::vector<GroupSpec> v;
  for (const char* s : {"full", "gamma:2", "gamma:3", "gamma:4", "gamma0:5", "gamma0:7", "gamma0:8", "gamma0:11",
                        "gamma0:16", "gamma0:20", "gamma1:4", "gamma1:6", "g1:7", "g2:11"})
    v.push_back(parse_spec(s));
  return v;
}

std::vector<CheckLine> check_properties(const SymbolProvider& provider) {
  std::vector<CheckLine> out;
  std::mt19937_64 rng(7321);
  bool levels_ok = true, direct_ok = true, conj_ok = true, count_ok = true, words_ok = true;
  std::string levels_d, direct_d, conj_d, count_d, words_d;
  long lifts_seen = 0, words = 0, conj = 0;
  for (const GroupSpec& spec : property_fixtures()) {
    Classification c = classify_lifts(spec, options(provider, false));
    const long N = c.inv.general_level;
    const std::string tag = spec.str();

    // levels N or 2N, and the level verified generator by generator
    for (const auto& l : c.lifts) {
      if (l.minus_one || l.cls != LiftClass::Level) continue;
      if (l.level != N && l.level != 2 * N) {
        levels_ok = false;
        levels_d += tag + " " + l.bits() + "; ";
      }
      if (c.gens->size() <= 6) {
        for (const Mat2& h : principal_generators(l.level, provider))
          if (!member_in_lift(*c.gens, l, h)) {
            direct_ok = false;
            direct_d += tag + " " + l.bits() + "; ";
            break;
          }
      }
    }
    // noncongruence lifts really miss some generator of Gamma(2N)
    if (c.gens->size() <= 6 && c.noncongruence > 0) {
      auto hs = principal_generators(2 * N, provider);
      for (const auto& l : c.lifts) {
        if (l.minus_one || l.cls != LiftClass::Noncongruence) continue;
        bool misses = false;
        for (const Mat2& h : hs)
          if (!member_in_lift(*c.gens, l, h)) {
            misses = true;
            break;
          }
        if (!misses) {
          direct_ok = false;
          direct_d += tag + " " + l.bits() + " contains Gamma(2N); ";
        }
      }
    }

    // g T^(2N) g^-1 lies in every lift
    for (int k = 0; k < 20; ++k) {
      Mat2 g = random_sl2(rng);
      Mat2 h = g * mat_pow(Mat2::T(), 2 * N) * mat_inv(g);
      for (const auto& l : c.lifts) {
        ++conj;
        if (!member_in_lift(*c.gens, l, h)) {
          conj_ok = false;
          conj_d += tag + " " + l.bits() + "; ";
          break;
        }
      }
    }

    // number of lifts without -1
    const long delta = min_generators(c.symbol);
    const long expect = c.pres.minus_one ? 0 : 1L << (delta - c.inv.nu3);
    if (delta != static_cast<long>(c.gens->size()) || c.sign_lifts() != expect) {
      count_ok = false;
      count_d += tag + " " + num(c.sign_lifts()) + " vs " + num(expect) + "; ";
    }
    lifts_seen += c.sign_lifts();

    // random words evaluate back to themselves
    std::uniform_int_distribution<std::size_t> pick(0, c.gens->size() - 1);
    std::uniform_int_distribution<int> len(0, 20), coin(0, 1);
    for (int k = 0; k < 100; ++k) {
      Word w;
      for (int j = len(rng); j > 0; --j) w.push_back({static_cast<int>(pick(rng)), coin(rng) ? 1 : -1});
      Mat2 m = c.gens->eval(w);
      ReducedWord rw = c.gens->reduce(m);
      Mat2 back = c.gens->eval(rw.word);
      ++words;
      if (!rw.member || back != (rw.sign > 0 ? m : -m)) {
        words_ok = false;
        words_d += tag + " " + m.str() + "; ";
      }
    }
  }
  out.push_back(line("levels are N or 2N", levels_ok, levels_ok ? "" : levels_d));
  out.push_back(line("levels confirmed by generator membership", direct_ok, direct_ok ? "" : direct_d));
  out.push_back(line("g T^2N g^-1 in every lift", conj_ok, conj_ok ? num(conj) + " memberships" : conj_d));
  out.push_back(line("lift count 2^(delta - nu3)", count_ok, count_ok ? num(lifts_seen) + " lifts" : count_d));
  out.push_back(line("word round trips", words_ok, words_ok ? num(words) + " words" : words_d));

  // F2 solver against brute force
  bool f2_ok = true;
  long systems = 0;
  for (std::size_t s = 1; s <= 10; ++s) {
    std::uniform_int_distribution<int> nrows(0, static_cast<int>(s) + 2), bit(0, 1);
    for (int trial = 0; trial < 30; ++trial) {
      std::size_t r = nrows(rng);
      F2Mat rows(r, F2Vec(s));
      F2Vec rhs(r);
      for (auto& row : rows)
        for (std::size_t j = 0; j < s; ++j) row.set(j, bit(rng));
      for (std::size_t i = 0; i < r; ++i) rhs.set(i, bit(rng));
      std::vector<F2Vec> brute;
      for (unsigned long x = 0; x < (1ul << s); ++x) {
        F2Vec v(s);
        for (std::size_t j = 0; j < s; ++j) v.set(j, (x >> j) & 1);
        bool sat = true;
        for (std::size_t i = 0; i < r && sat; ++i) sat = rows[i].dot(v) == rhs.get(i);
        if (sat) brute.push_back(v);
      }
      std::sort(brute.begin(), brute.end());
      F2Solution sol = f2_solution_space(rows, rhs, s);
      std::vector<F2Vec> got = sol.particular ? f2_enumerate(sol) : std::vector<F2Vec>{};
      F2AffineSpan span(s);
      for (std::size_t i = 0; i < r; ++i) span.add(rows[i], rhs.get(i));
      bool span_ok = span.consistent() == !brute.empty();
      for (const auto& v : brute) span_ok = span_ok && span.satisfied_by(v);
      if (got != brute || !span_ok) f2_ok = false;
      ++systems;
    }
  }
  out.push_back(line("F2 solver vs brute force", f2_ok, num(systems) + " systems"));
  return out;
}

}  // namespace

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "thm-gamma", "principal congruence lift counts", check_principal_counts},
      {2, "gamma1-4", "gamma1(4) lifts", check_gamma1_4},
      {3, "gamma1-6", "gamma1(6) lifts", check_gamma1_6},
      {4, "gamma0-8", "gamma0(8) lifts",
       [](const SymbolProvider& p) { return check_family(p, GroupSpec::gamma0(8), 8, 4, 4, 0, 1, 0); }},
      {5, "gamma0-16", "gamma0(16) lifts",
       [](const SymbolProvider& p) { return check_family(p, GroupSpec::gamma0(16), 32, 4, 4, 24, 3, 2); }},
      {6, "gamma0-20", "gamma0(20) lifts", check_gamma0_20},
      {7, "prime-powers", "three congruence lifts of gamma0(p^r)", check_prime_powers},
      {8, "prime-counts", "noncongruence counts for gamma0(p)", check_prime_counts},
      {9, "gamma2-squared", "squares of gamma(2)",
       [](const SymbolProvider& p) { return verify_gamma2_squared(p); }},
      {10, "gamma-4", "gamma(4) lifts", check_gamma_4},
      {11, "properties", "property suites", check_properties},
  };
  return all;
}

const Criterion* find_criterion(const std::string& fixture) {
  for (const auto& c : criteria())
    if (c.fixture == fixture || std::to_string(c.id) == fixture) return &c;
  return nullptr;
}

CriterionResult run_criterion(const Criterion& c, const SymbolProvider& provider) {
  CriterionResult r;
  r.criterion = &c;
  try {
    r.lines = c.run(provider);
  } catch (const std::exception& e) {
    r.lines.push_back(line("exception", false, e.what()));
  }
  r.ok = !r.lines.empty();
  for (const auto& l : r.lines) r.ok = r.ok && l.ok;
  return r;
}

}  // namespace modlift
