#include "modlift/groups.hpp"

#include "modlift/farey.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace modlift {

namespace {

long ipow(long b, long e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

std::vector<long> prime_divisors(long n) {
  std::vector<long> ps;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    ps.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

// m mod 2 is one of the three involutions of SL2(F_2)
bool order_two_mod2(const Mat2& m) {
  unsigned a = mod_ui(m.a, 2), b = mod_ui(m.b, 2), c = mod_ui(m.c, 2), d = mod_ui(m.d, 2);
  bool ident = a == 1 && b == 0 && c == 0 && d == 1;
  // square mod 2
  unsigned sa = (a * a + b * c) & 1u, sb = (a * b + b * d) & 1u, sc = (c * a + d * c) & 1u,
           sd = (c * b + d * d) & 1u;
  return !ident && sa == 1 && sb == 0 && sc == 0 && sd == 1;
}

std::uint64_t pack(unsigned long x0, unsigned long x1, unsigned long x2 = 0, unsigned long x3 = 0) {
  return (std::uint64_t(x0) << 48) | (std::uint64_t(x1) << 32) | (std::uint64_t(x2) << 16) | std::uint64_t(x3);
}

// bottom row as a point of P^1(Z/N)
std::uint64_t p1_key(const Mat2& m, unsigned long n) {
  if (n == 1) return 0;
  unsigned long c = mod_ui(m.c, n), d = mod_ui(m.d, n);
  std::uint64_t best = ~std::uint64_t(0);
  for (unsigned long u = 1; u < n; ++u)
    if (std::gcd(u, n) == 1) best = std::min(best, pack(0, 0, (u * c) % n, (u * d) % n));
  return best;
}

}  // namespace

GroupSpec GroupSpec::make(Family f, long n) {
  if (n < 1) throw std::invalid_argument("level must be positive");
  GroupSpec s;
  s.family = f;
  s.N = n;
  return s;
}

GroupSpec GroupSpec::g1(long p, long r) {
  if (!is_prime(p) || p % 4 != 3 || r < 1)
    throw std::invalid_argument("g1 needs a prime p = 3 mod 4 and r >= 1");
  GroupSpec s;
  s.family = Family::G1;
  s.p = p;
  s.r = r;
  s.N = ipow(p, r);
  return s;
}

GroupSpec GroupSpec::g2(long p, long r) {
  GroupSpec s = g1(p, r);
  s.family = Family::G2;
  return s;
}

GroupSpec GroupSpec::from_farey(SignedFareySymbol sym) {
  GroupSpec s;
  s.family = Family::FromFarey;
  s.symbol = std::make_shared<const SignedFareySymbol>(std::move(sym));
  return s;
}

GroupSpec GroupSpec::lift(std::shared_ptr<const SignedFareySymbol> sym, F2Vec x) {
  GroupSpec s;
  s.family = Family::Lift;
  s.symbol = std::move(sym);
  s.signs = std::move(x);
  return s;
}

std::string GroupSpec::str() const {
  switch (family) {
    case Family::Full: return "full";
    case Family::Gamma: return "gamma:" + std::to_string(N);
    case Family::Gamma0: return "gamma0:" + std::to_string(N);
    case Family::Gamma1: return "gamma1:" + std::to_string(N);
    case Family::G1: return "g1:" + std::to_string(p) + "^" + std::to_string(r);
    case Family::G2: return "g2:" + std::to_string(p) + "^" + std::to_string(r);
    case Family::FromFarey: return "farey";
    case Family::Lift: return minus_one ? "lift:-1" : "lift:" + signs.str();
  }
  return "?";
}

GroupSpec parse_spec(const std::string& s) {
  auto colon = s.find(':');
  std::string head = s.substr(0, colon);
  if (head == "full" && colon == std::string::npos) return GroupSpec::full();
  if (colon == std::string::npos) throw std::invalid_argument("bad group spec '" + s + "'");
  std::string arg = s.substr(colon + 1);
  auto number = [&](const std::string& t) {
    if (t.empty() || t.size() > 9 || !std::all_of(t.begin(), t.end(), ::isdigit))
      throw std::invalid_argument("bad number in group spec '" + s + "'");
    return std::stol(t);
  };
  if (head == "gamma") return GroupSpec::gamma(number(arg));
  if (head == "gamma0") return GroupSpec::gamma0(number(arg));
  if (head == "gamma1") return GroupSpec::gamma1(number(arg));
  if (head == "g1" || head == "g2") {
    auto caret = arg.find('^');
    long p = number(arg.substr(0, caret));
    long r = caret == std::string::npos ? 1 : number(arg.substr(caret + 1));
    return head == "g1" ? GroupSpec::g1(p, r) : GroupSpec::g2(p, r);
  }
  throw std::invalid_argument("unknown group family '" + head + "'");
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

int legendre(const Int& a, long p) {
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("legendre needs an odd prime");
  Int r, e = (p - 1) / 2, mod = p;
  Int base = a % mod;
  if (base < 0) base += mod;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), mod.get_mpz_t());
  if (r == 0) return 0;
  return r == 1 ? 1 : -1;
}

bool member(const GroupSpec& spec, const Mat2& m) {
  const unsigned long n = static_cast<unsigned long>(spec.N);
  switch (spec.family) {
    case Family::Full: return true;
    case Family::Gamma:
      return mod_ui(m.a, n) == 1 % n && mod_ui(m.b, n) == 0 && mod_ui(m.c, n) == 0 && mod_ui(m.d, n) == 1 % n;
    case Family::Gamma0: return mod_ui(m.c, n) == 0;
    case Family::Gamma1: return mod_ui(m.c, n) == 0 && mod_ui(m.a, n) == 1 % n && mod_ui(m.d, n) == 1 % n;
    case Family::G1: return mod_ui(m.c, n) == 0 && legendre(m.a, spec.p) == 1;
    case Family::G2:
      return mod_ui(m.c, n) == 0 && (legendre(m.a, spec.p) == -1) == order_two_mod2(m);
    case Family::FromFarey:
    case Family::Lift: break;
  }
  throw std::invalid_argument("membership for symbol-given groups goes through word reduction");
}

MembershipOracle family_oracle(const GroupSpec& spec) {
  if (!spec.is_family()) throw std::invalid_argument("not a congruence family");
  MembershipOracle o;
  o.name = spec.str();
  o.strict = [spec](const Mat2& m) { return member(spec, m); };
  const unsigned long n = static_cast<unsigned long>(spec.N);
  if (n >= (1ul << 16)) return o;
  switch (spec.family) {
    case Family::Full: o.coset_key = [](const Mat2&) { return std::uint64_t(0); }; break;
    case Family::Gamma:
      o.coset_key = [n](const Mat2& m) {
        unsigned long a = mod_ui(m.a, n), b = mod_ui(m.b, n), c = mod_ui(m.c, n), d = mod_ui(m.d, n);
        auto neg = [n](unsigned long x) { return (n - x) % n; };
        return std::min(pack(a, b, c, d), pack(neg(a), neg(b), neg(c), neg(d)));
      };
      break;
    case Family::Gamma1:
      o.coset_key = [n](const Mat2& m) {
        unsigned long c = mod_ui(m.c, n), d = mod_ui(m.d, n);
        return std::min(pack(0, 0, c, d), pack(0, 0, (n - c) % n, (n - d) % n));
      };
      break;
    default:  // Gamma0 and its two lifts share the projective image
      o.coset_key = [n](const Mat2& m) { return p1_key(m, n); };
  }
  return o;
}

long cusp_width(const MembershipOracle& o, const Cusp& x, long bound) {
  for (long n = 1; n <= bound; ++n)
    if (o.proj_contains(conj_translation(x.p, x.q, n))) return n;
  throw std::runtime_error("no cusp width up to " + std::to_string(bound) + " at " + x.str());
}

long proj_index(const GroupSpec& spec) {
  const long n = spec.N;
  auto psl_gamma = [](long m) {
    if (m == 1) return 1L;
    if (m == 2) return 6L;
    long v = m * m * m;
    for (long p : prime_divisors(m)) v = v / (p * p) * (p * p - 1);
    return v / 2;
  };
  auto gamma0 = [](long m) {
    long v = m;
    for (long p : prime_divisors(m)) v = v / p * (p + 1);
    return v;
  };
  switch (spec.family) {
    case Family::Full: return 1;
    case Family::Gamma: return psl_gamma(n);
    case Family::Gamma0:
    case Family::G1:
    case Family::G2: return gamma0(n);
    case Family::Gamma1: {
      if (n <= 2) return gamma0(n);
      long v = n * n;
      for (long p : prime_divisors(n)) v = v / (p * p) * (p * p - 1);
      return v / 2;
    }
    case Family::FromFarey:
    case Family::Lift: return symbol_index(*spec.symbol);
  }
  throw std::invalid_argument("unsupported spec");
}

GroupInvariants group_invariants(const GroupSpec& spec, const SignedFareySymbol& sym) {
  GroupInvariants inv;
  MembershipOracle o = oracle_for(spec);
  inv.mu = symbol_index(sym);
  auto ec = counts(sym);
  inv.nu2 = ec.nu2;
  inv.nu3 = ec.nu3;
  long lcm = 1;
  for (const auto& cc : cusp_classes(sym)) {
    long w = cusp_width(o, cc.rep, inv.mu);
    inv.cusps.push_back({cc.rep, w});
    lcm = std::lcm(lcm, w);
  }
  inv.general_level = lcm;
  // 12 * genus = 12 + mu - 3 nu2 - 4 nu3 - 6 nu_inf
  long twelve_g = 12 + inv.mu - 3 * inv.nu2 - 4 * inv.nu3 - 6 * inv.nu_inf();
  if (twelve_g % 12 != 0 || twelve_g < 0) throw std::runtime_error("genus formula gives a non-integer");
  inv.genus = twelve_g / 12;
  return inv;
}

GroupInvariants group_invariants(const GroupSpec& spec) { return group_invariants(spec, symbol_for(spec)); }

long general_level(const GroupSpec& spec) { return group_invariants(spec).general_level; }

}  // namespace modlift
