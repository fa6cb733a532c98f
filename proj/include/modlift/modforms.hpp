#pragma once

#include "modlift/groups.hpp"

#include <string>
#include <vector>

namespace modlift {

struct RegularityTable {
  std::vector<CuspInfo> cusps;
  std::vector<bool> regular;
  long nu_plus = 0, nu_minus = 0;
};

// regular iff +g T^h g^-1 lies in the group, h the width
bool regular_cusp(const MembershipOracle& group, const CuspInfo& c);
RegularityTable regularity(const MembershipOracle& group, const GroupInvariants& inv);

struct DimensionReport {
  long k = 0;
  long dim = 0;
  long mu = 0, genus = 0, nu2 = 0, nu3 = 0, nu_inf = 0, nu_plus = 0, nu_minus = 0;
  bool flagged = false;  // k = 2 or odd k with -1 in the group
  std::string note;
};

// reg may be null when -1 lies in the group.
DimensionReport dim_cusp_forms(const GroupInvariants& inv, const RegularityTable* reg, bool minus_one, long k);

struct SameFormsVerdict {
  bool projectively_equal = false;
  bool even_dims_equal = false;
  long first_difference = 0;  // smallest even k with differing dims, 0 if none
  bool agree() const { return projectively_equal == even_dims_equal; }
};

SameFormsVerdict same_forms_check(const GroupSpec& a, const GroupSpec& b, long k_max);

}  // namespace modlift
