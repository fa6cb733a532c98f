#pragma once

#include "modlift/arith.hpp"
#include "modlift/f2.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace modlift {

struct SignedFareySymbol;

enum class Family { Full, Gamma, Gamma0, Gamma1, G1, G2, FromFarey, Lift };

struct GroupSpec {
  Family family = Family::Full;
  long N = 1;  // level for Gamma/Gamma0/Gamma1, p^r for G1/G2
  long p = 0, r = 0;
  std::shared_ptr<const SignedFareySymbol> symbol;  // FromFarey, Lift
  F2Vec signs;                                      // Lift
  bool minus_one = false;                           // Lift: the preimage containing -1

  static GroupSpec full() { return {}; }
  static GroupSpec gamma(long n) { return make(Family::Gamma, n); }
  static GroupSpec gamma0(long n) { return make(Family::Gamma0, n); }
  static GroupSpec gamma1(long n) { return make(Family::Gamma1, n); }
  static GroupSpec g1(long p, long r);
  static GroupSpec g2(long p, long r);
  static GroupSpec from_farey(SignedFareySymbol sym);
  static GroupSpec lift(std::shared_ptr<const SignedFareySymbol> sym, F2Vec x);

  // the same projective group seen as a congruence family, when it is one
  bool is_family() const { return family != Family::FromFarey && family != Family::Lift; }
  std::string str() const;

 private:
  static GroupSpec make(Family f, long n);
};

// "gamma:N", "gamma0:N", "gamma1:N", "g1:p^r", "g2:p^r", "full"
GroupSpec parse_spec(const std::string& s);

// Projective group carried by a strict membership predicate.
struct MembershipOracle {
  std::string name;
  std::function<bool(const Mat2&)> strict;
  // Optional: equal keys iff the right cosets of the projective group agree.
  std::function<std::uint64_t(const Mat2&)> coset_key;

  bool contains(const Mat2& m) const { return strict(m); }
  bool proj_contains(const Mat2& m) const { return strict(m) || strict(-m); }
  bool contains_minus_one() const { return strict(-Mat2::identity()); }
};

bool is_prime(long n);
int legendre(const Int& a, long p);

// Strict membership for the congruence families.
bool member(const GroupSpec& spec, const Mat2& m);

// Oracle for a congruence family; FromFarey and Lift oracles live with the lifts.
MembershipOracle family_oracle(const GroupSpec& spec);

long cusp_width(const MembershipOracle& o, const Cusp& x, long bound);

long proj_index(const GroupSpec& spec);

struct CuspInfo {
  Cusp rep;
  long width = 0;
};

struct GroupInvariants {
  long mu = 0;
  std::vector<CuspInfo> cusps;
  long nu2 = 0, nu3 = 0;
  long general_level = 1;
  long genus = 0;
  long nu_inf() const { return static_cast<long>(cusps.size()); }
};

// Any spec, including FromFarey and Lift (those go through word reduction).
MembershipOracle oracle_for(const GroupSpec& spec);

// Cusp classes, nu2, nu3 from the symbol; widths from the oracle.
GroupInvariants group_invariants(const GroupSpec& spec, const SignedFareySymbol& sym);
GroupInvariants group_invariants(const GroupSpec& spec);
long general_level(const GroupSpec& spec);

}  // namespace modlift
