#include "modlift/lifts.hpp"

#include "modlift/modforms.hpp"

#include <map>
#include <mutex>
#include <random>
#include <stdexcept>

namespace modlift {

SymbolProvider default_provider() {
  // symbols for Gamma(M) get rebuilt a lot; keep them for the life of the process
  struct Memo {
    std::mutex mu;
    std::map<std::string, SignedFareySymbol> syms;
  };
  static auto memo = std::make_shared<Memo>();
  return [](const GroupSpec& spec) {
    if (!spec.is_family()) return symbol_for(spec);
    std::string key = spec.str();
    {
      std::lock_guard<std::mutex> lock(memo->mu);
      auto it = memo->syms.find(key);
      if (it != memo->syms.end()) return it->second;
    }
    SignedFareySymbol sym = symbol_for(spec);
    std::lock_guard<std::mutex> lock(memo->mu);
    memo->syms.emplace(key, sym);
    return sym;
  };
}

Presentation make_presentation(const SignedFareySymbol& sym) {
  Presentation p;
  p.gens = std::make_shared<const GeneratorSet>(sym);
  const std::size_t s = p.gens->size();
  for (std::size_t i = 0; i < s; ++i)
    if (p.gens->gens()[i].kind == GenKind::Bullet) p.parity_rows.push_back(F2Vec::unit(s, i));
  p.minus_one = sym.has_circle();
  return p;
}

std::vector<LiftDescriptor> enumerate_lifts(const Presentation& pres) {
  std::vector<LiftDescriptor> out;
  const std::size_t s = pres.s();
  if (!pres.minus_one) {
    F2Solution sol = f2_solution_space(pres.parity_rows, F2Vec(pres.parity_rows.size()), s);
    for (F2Vec& x : f2_enumerate(sol)) {
      LiftDescriptor d;
      d.x = std::move(x);
      out.push_back(std::move(d));
    }
  }
  LiftDescriptor full;
  full.x = F2Vec(s);
  full.minus_one = true;
  full.cls = LiftClass::ContainsMinusOne;
  out.push_back(std::move(full));
  return out;
}

namespace {

// (-1)^(x . occurrences) * sign of the reduced word
bool sign_rule(const ReducedWord& rw, const F2Vec& x) {
  if (!rw.member) return false;
  bool flip = false;
  for (const auto& l : rw.word) flip ^= x.get(l.gen);
  return (rw.sign > 0) != flip;
}

}  // namespace

bool member_in_lift(const GeneratorSet& gens, const F2Vec& x, const Mat2& m) {
  return sign_rule(gens.reduce(m), x);
}

bool member_in_lift(const GeneratorSet& gens, const LiftDescriptor& lift, const Mat2& m) {
  if (lift.minus_one) return gens.reduce(m).member;
  return member_in_lift(gens, lift.x, m);
}

MembershipOracle lift_oracle(std::shared_ptr<const GeneratorSet> gens, const F2Vec& x, bool minus_one) {
  MembershipOracle o;
  o.name = minus_one ? "lift:-1" : "lift:" + x.str();
  o.strict = [gens, x, minus_one](const Mat2& m) {
    ReducedWord rw = gens->reduce(m);
    return minus_one ? rw.member : sign_rule(rw, x);
  };
  return o;
}

MembershipOracle oracle_for(const GroupSpec& spec) {
  if (spec.is_family()) return family_oracle(spec);
  auto gens = std::make_shared<const GeneratorSet>(*spec.symbol);
  if (spec.family == Family::FromFarey)
    return lift_oracle(gens, F2Vec(gens->size()), spec.symbol->has_circle());
  F2Vec x = spec.signs.size() == gens->size() ? spec.signs : F2Vec(gens->size());
  return lift_oracle(gens, x, spec.minus_one || spec.symbol->has_circle());
}

std::vector<Mat2> principal_generators(long M, const SymbolProvider& provider) {
  SignedFareySymbol sym = provider(GroupSpec::gamma(M));
  std::vector<Mat2> hs;
  for (auto& g : generators_from_symbol(sym)) hs.push_back(std::move(g.m));
  if (M <= 2) hs.push_back(-Mat2::identity());
  return hs;
}

SigmaSystem sigma_system(const GeneratorSet& base, long M, const SymbolProvider& provider, bool keep_rows) {
  SigmaSystem sys;
  sys.M = M;
  sys.eq = F2AffineSpan(base.size());
  std::vector<Mat2> hs = principal_generators(M, provider);
  sys.generators = hs.size();
  for (const Mat2& h : hs) {
    ReducedWord rw = base.reduce(h);
    if (!rw.member) {
      sys.contained = false;
      break;
    }
    F2Vec v(base.size());
    for (const auto& l : rw.word) v.flip(l.gen);
    bool eps = rw.sign < 0;
    sys.eq.add(v, eps);
    if (keep_rows) {
      sys.rows.push_back(std::move(v));
      sys.eps.push_back(eps);
    }
  }
  return sys;
}

Classification classify_symbol(const GroupSpec& spec, const SignedFareySymbol& sym, const ClassifyOptions& opt) {
  SymbolProvider provider = opt.provider ? opt.provider : default_provider();
  auto log = [&](const std::string& s) {
    if (opt.log) opt.log(s);
  };
  Classification c;
  c.spec = spec;
  c.symbol = sym;
  c.pres = make_presentation(sym);
  c.gens = c.pres.gens;
  c.inv = group_invariants(spec, sym);
  const long N = c.inv.general_level;
  if (opt.max_level > 0 && 2 * N > opt.max_level)
    throw std::out_of_range("general level " + std::to_string(N) + " needs Gamma(" + std::to_string(2 * N) +
                            "), above the level limit " + std::to_string(opt.max_level));

  log("rewriting generators of Gamma(" + std::to_string(N) + ")");
  c.sysN = sigma_system(*c.gens, N, provider);
  c.lifts = enumerate_lifts(c.pres);
  bool any_sign_lift = c.lifts.size() > 1;
  if (any_sign_lift && c.sysN->contained) {
    log("rewriting generators of Gamma(" + std::to_string(2 * N) + ")");
    c.sys2N = sigma_system(*c.gens, 2 * N, provider);
  }

  for (auto& l : c.lifts) {
    if (l.minus_one) {
      c.minus_one_congruence = c.sysN->contained;
      l.level = c.sysN->contained ? N : 0;
      continue;
    }
    if (c.sysN->contains_gamma(l.x)) {
      l.cls = LiftClass::Level;
      l.level = N;
      ++c.level_n;
    } else if (c.sys2N && c.sys2N->contains_gamma(l.x)) {
      l.cls = LiftClass::Level;
      l.level = 2 * N;
      ++c.level_2n;
    } else {
      l.cls = LiftClass::Noncongruence;
      ++c.noncongruence;
    }
  }

  if (opt.forms) {
    for (auto& l : c.lifts) {
      MembershipOracle o = lift_oracle(c.gens, l.x, l.minus_one);
      RegularityTable reg = regularity(o, c.inv);
      l.regular = reg.regular;
      l.dim_s3 = dim_cusp_forms(c.inv, &reg, l.minus_one, 3).dim;
      l.dim_s5 = dim_cusp_forms(c.inv, &reg, l.minus_one, 5).dim;
    }
  }
  return c;
}

Classification classify_lifts(const GroupSpec& spec, const ClassifyOptions& opt) {
  SymbolProvider provider = opt.provider ? opt.provider : default_provider();
  return classify_symbol(spec, provider(spec), opt);
}

CountPrediction predicted_counts(const GroupSpec& spec) {
  CountPrediction cp;
  const long N = spec.N;
  if (spec.family == Family::Gamma) {
    cp.congruence = N == 1 ? 1 : N == 2 ? 5 : N % 2 ? 3 : 9;
    cp.rule = "principal";
    return cp;
  }
  if (spec.family == Family::Gamma0) {
    long p = 0, r = 0;
    for (long d = 2; d <= N; ++d)
      if (N % d == 0) {
        p = d;
        break;
      }
    if (p) {
      long m = N;
      while (m % p == 0) m /= p, ++r;
      if (m != 1) p = 0;
    }
    if (p && p % 4 == 3) {
      cp.congruence = 3;
      cp.rule = "prime power 3 mod 4";
      if (r == 1 && p == 3) cp.noncongruence = 0;
      if (r == 1 && p > 3) {
        cp.s = 2 * (p / 12) + 3;
        cp.noncongruence = p % 12 == 7 ? (1L << (cp.s - 2)) - 2 : (1L << cp.s) - 2;
        cp.rule = p % 12 == 7 ? "prime 7 mod 12" : "prime 11 mod 12";
      }
      return cp;
    }
  }
  throw std::invalid_argument("no closed-form count for " + spec.str());
}

SquaresStatus squares_status(long N, const SymbolProvider* provider) {
  if (N < 1) throw std::invalid_argument("N must be positive");
  SquaresStatus st;
  if (N == 1) {
    st.congruence = true;
    st.witness = "gamma:2";
    st.reason = "Gamma(2) lies in Gamma(1)^2";
    return st;
  }
  if (N == 2) {
    st.congruence = true;
    st.witness = "gamma:4";
    st.reason = "Gamma(2)^2 = Gamma(4)";
    return st;
  }
  st.reason = "every lift of Gamma(N) contains Gamma(N)^2 and some lift is noncongruence";
  if (provider && N <= 8) {
    ClassifyOptions opt;
    opt.provider = *provider;
    opt.forms = false;
    Classification c = classify_lifts(GroupSpec::gamma(N), opt);
    st.reason += "; Gamma(" + std::to_string(N) + ") has " + std::to_string(c.noncongruence) + " noncongruence lifts";
    if (c.noncongruence == 0) throw std::runtime_error("expected a noncongruence lift of Gamma(" + std::to_string(N) + ")");
  }
  return st;
}

namespace {

struct SquareRow {
  Mat2 target;
  Mat2 base;
  bool inverse_prefix = false;  // target = (T^2 squared)^-1 * base^2
};

std::vector<SquareRow> square_table() {
  Mat2 t2{1, 2, 0, 1};
  return {
      {{1, 4, 0, 1}, t2, false},
      {{-7, 12, 4, -7}, {5, -8, 2, -3}, true},
      {{5, 4, -4, -3}, {-3, -2, 2, 1}, false},
      {{1, 0, 4, 1}, {1, 0, 2, 1}, false},
      {{5, -4, 4, -3}, {-3, 2, -2, 1}, false},
  };
}

Mat2 row_value(const SquareRow& r) {
  Mat2 sq = r.base * r.base;
  if (!r.inverse_prefix) return sq;
  Mat2 t4 = Mat2{1, 2, 0, 1} * Mat2{1, 2, 0, 1};
  return mat_inv(t4) * sq;
}

SignedFareySymbol gamma4_reference_symbol() {
  return parse_symbol(
      "farey-symbol v1\n"
      "cusps -oo -2 -3/2 -1 -1/2 0 1/2 1 3/2 2 oo\n"
      "labels +1 -2 +3 +3 +4 +4 +5 +5 -2 +1\n");
}

}  // namespace

std::vector<CheckLine> verify_gamma2_squared(const SymbolProvider& provider) {
  std::vector<CheckLine> out;
  const GroupSpec g4 = GroupSpec::gamma(4);
  auto in4 = [&](const Mat2& m) { return member(g4, m); };
  auto table = square_table();

  {
    CheckLine l{"square identities", true, ""};
    for (const auto& r : table) {
      bool base_ok = member(GroupSpec::gamma(2), r.base);
      bool ok = base_ok && row_value(r) == r.target;
      if (!ok) {
        l.ok = false;
        l.detail += "fails at " + r.target.str() + "; ";
      }
    }
    if (l.ok) l.detail = std::to_string(table.size()) + " identities hold";
    out.push_back(l);
  }

  {
    CheckLine l{"squares of Gamma(2) generators", true, ""};
    auto hs = principal_generators(2, provider);
    for (const Mat2& h : hs)
      if (!in4(h * h)) {
        l.ok = false;
        l.detail += h.str() + " squared is outside Gamma(4); ";
      }
    if (l.ok) l.detail = std::to_string(hs.size()) + " generators";
    out.push_back(l);
  }

  {
    CheckLine l{"squares of random Gamma(2) products", true, ""};
    auto hs = principal_generators(2, provider);
    std::mt19937_64 rng(20240602);
    std::uniform_int_distribution<std::size_t> pick(0, hs.size() - 1);
    std::uniform_int_distribution<int> len(1, 12), coin(0, 1);
    for (int trial = 0; trial < 100; ++trial) {
      Mat2 m;
      for (int k = len(rng); k > 0; --k) {
        const Mat2& h = hs[pick(rng)];
        m = m * (coin(rng) ? h : mat_inv(h));
      }
      if (!member(GroupSpec::gamma(2), m) || !in4(m * m)) {
        l.ok = false;
        l.detail += m.str() + "; ";
      }
    }
    if (l.ok) l.detail = "100 products";
    out.push_back(l);
  }

  {
    // each generator of the reference Gamma(4) symbol is a table entry
    CheckLine l{"Gamma(4) generators through the table", true, ""};
    GeneratorSet ref(gamma4_reference_symbol());
    std::vector<int> row_of(ref.size(), -1);
    for (std::size_t i = 0; i < ref.size(); ++i)
      for (std::size_t r = 0; r < table.size(); ++r)
        if (ref[i] == table[r].target || ref[i] == mat_inv(table[r].target)) row_of[i] = static_cast<int>(r);
    for (std::size_t i = 0; i < ref.size(); ++i)
      if (row_of[i] < 0) {
        l.ok = false;
        l.detail += "generator " + ref[i].str() + " is not in the table; ";
      }
    // and every generator of the built Gamma(4) symbol is a word in them
    std::size_t words = 0;
    for (const auto& g : generators_from_symbol(provider(g4))) {
      ReducedWord rw = ref.reduce(g.m);
      if (!rw.member || rw.sign != 1) {
        l.ok = false;
        l.detail += g.m.str() + " is not a word in the table; ";
        continue;
      }
      if (ref.eval(rw.word) != g.m) {
        l.ok = false;
        l.detail += "word for " + g.m.str() + " evaluates wrongly; ";
      }
      ++words;
    }
    if (l.ok) l.detail = std::to_string(ref.size()) + " table generators, " + std::to_string(words) + " built generators rewritten";
    out.push_back(l);
  }
  return out;
}

}  // namespace modlift
