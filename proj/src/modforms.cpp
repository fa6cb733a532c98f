#include "modlift/modforms.hpp"

#include "modlift/farey.hpp"
#include "modlift/lifts.hpp"

#include <stdexcept>

namespace modlift {

bool regular_cusp(const MembershipOracle& group, const CuspInfo& c) {
  return group.contains(conj_translation(c.rep.p, c.rep.q, c.width));
}

RegularityTable regularity(const MembershipOracle& group, const GroupInvariants& inv) {
  RegularityTable t;
  t.cusps = inv.cusps;
  for (const auto& c : inv.cusps) {
    bool r = regular_cusp(group, c);
    t.regular.push_back(r);
    (r ? t.nu_plus : t.nu_minus) += 1;
  }
  return t;
}

DimensionReport dim_cusp_forms(const GroupInvariants& inv, const RegularityTable* reg, bool minus_one, long k) {
  if (k < 2) throw std::invalid_argument("weight " + std::to_string(k) + " is not supported");
  DimensionReport d;
  d.k = k;
  d.mu = inv.mu;
  d.genus = inv.genus;
  d.nu2 = inv.nu2;
  d.nu3 = inv.nu3;
  d.nu_inf = inv.nu_inf();
  d.nu_plus = d.nu_inf;
  if (reg && !minus_one) {
    d.nu_plus = reg->nu_plus;
    d.nu_minus = reg->nu_minus;
  }
  if (k == 2) {
    d.dim = inv.genus;
    d.flagged = true;
    d.note = "weight 2: genus";
    return d;
  }
  const long g1 = inv.genus - 1;
  if (k % 2 == 0) {
    d.dim = (k - 1) * g1 + (k / 2 - 1) * d.nu_inf + (k / 4) * d.nu2 + (k / 3) * d.nu3;
    return d;
  }
  if (minus_one) {
    d.flagged = true;
    d.note = "odd weight with -1 in the group";
    return d;
  }
  if (!reg) throw std::invalid_argument("odd weight needs the cusp regularity");
  // twice the dimension keeps the half-integer coefficients exact
  long twice = 2 * (k - 1) * g1 + (k - 2) * d.nu_plus + (k - 1) * d.nu_minus + 2 * (k / 4) * d.nu2 +
               2 * (k / 3) * d.nu3;
  // the same number from mu directly: 12 dim = (k-1) mu - 6 nu+ + (12[k/4] - 3(k-1)) nu2 + (12[k/3] - 4(k-1)) nu3
  long twelve = (k - 1) * d.mu - 6 * d.nu_plus + (12 * (k / 4) - 3 * (k - 1)) * d.nu2 +
                (12 * (k / 3) - 4 * (k - 1)) * d.nu3;
  if (twice % 2 != 0 || twelve != 6 * twice) throw std::runtime_error("odd weight dimension formulas disagree");
  d.dim = twice / 2;
  if (d.dim < 0) throw std::runtime_error("negative dimension");
  return d;
}

namespace {

// every generator of one symbol lies projectively in the other group
bool proj_subgroup(const SignedFareySymbol& sub, const MembershipOracle& sup) {
  for (const auto& g : generators_from_symbol(sub))
    if (!sup.proj_contains(g.m)) return false;
  return true;
}

}  // namespace

SameFormsVerdict same_forms_check(const GroupSpec& a, const GroupSpec& b, long k_max) {
  SameFormsVerdict v;
  SignedFareySymbol sa = symbol_for(a), sb = symbol_for(b);
  MembershipOracle oa = oracle_for(a), ob = oracle_for(b);
  v.projectively_equal = proj_subgroup(sa, ob) && proj_subgroup(sb, oa);
  GroupInvariants ia = group_invariants(a, sa), ib = group_invariants(b, sb);
  v.even_dims_equal = true;
  for (long k = 4; k <= k_max; k += 2) {
    long da = dim_cusp_forms(ia, nullptr, true, k).dim;
    long db = dim_cusp_forms(ib, nullptr, true, k).dim;
    if (da != db) {
      v.even_dims_equal = false;
      v.first_difference = k;
      break;
    }
  }
  return v;
}

}  // namespace modlift
