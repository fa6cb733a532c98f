#pragma once

#include "modlift/f2.hpp"
#include "modlift/farey.hpp"
#include "modlift/groups.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace modlift {

// Where Farey symbols come from; the CLI swaps in a disk cache.
using SymbolProvider = std::function<SignedFareySymbol(const GroupSpec&)>;
SymbolProvider default_provider();

struct Presentation {
  std::shared_ptr<const GeneratorSet> gens;
  std::vector<F2Vec> parity_rows;  // one unit row per bullet, rhs 0
  bool minus_one = false;          // a circle forces -1 into every lift
  std::size_t s() const { return gens->size(); }
};

Presentation make_presentation(const SignedFareySymbol& sym);

enum class LiftClass { ContainsMinusOne, Level, Noncongruence, Unclassified };

struct LiftDescriptor {
  F2Vec x;  // g_i replaced by -g_i where x_i = 1
  bool minus_one = false;
  LiftClass cls = LiftClass::Unclassified;
  long level = 0;
  std::vector<bool> regular;  // per cusp class, in invariant order
  long dim_s3 = -1, dim_s5 = -1;
  std::string bits() const { return minus_one ? "-1" : x.str(); }
};

// Every lift without -1 first (sorted by sign vector), then the one containing -1.
std::vector<LiftDescriptor> enumerate_lifts(const Presentation& pres);

bool member_in_lift(const GeneratorSet& gens, const LiftDescriptor& lift, const Mat2& m);
bool member_in_lift(const GeneratorSet& gens, const F2Vec& x, const Mat2& m);

// Generators of Gamma(M): Farey generators with strict signs, plus -1 when M <= 2.
std::vector<Mat2> principal_generators(long M, const SymbolProvider& provider);

struct SigmaSystem {
  long M = 0;
  bool contained = true;  // every Gamma(M) generator reduced to a word
  std::size_t generators = 0;
  F2AffineSpan eq{0};
  std::vector<F2Vec> rows;  // only with keep_rows
  std::vector<bool> eps;
  std::vector<F2Vec> basis() const { return eq.basis(); }
  bool solvable() const { return contained && eq.consistent(); }
  bool contains_gamma(const F2Vec& x) const { return contained && eq.satisfied_by(x); }
};

SigmaSystem sigma_system(const GeneratorSet& base, long M, const SymbolProvider& provider, bool keep_rows = false);

struct ClassifyOptions {
  SymbolProvider provider;
  bool forms = true;  // regularity and dim S_3, S_5 per lift
  long max_level = 0;  // refuse Gamma(M) systems above this, 0 for no limit
  std::function<void(const std::string&)> log;
};

struct Classification {
  GroupSpec spec;
  SignedFareySymbol symbol;
  std::shared_ptr<const GeneratorSet> gens;
  GroupInvariants inv;
  Presentation pres;
  std::optional<SigmaSystem> sysN, sys2N;
  std::vector<LiftDescriptor> lifts;
  long level_n = 0, level_2n = 0, noncongruence = 0;  // sign-vector lifts only
  bool minus_one_congruence = false;
  // congruence lifts, the one with -1 included
  long congruence() const { return level_n + level_2n + (minus_one_congruence ? 1 : 0); }
  long sign_lifts() const { return level_n + level_2n + noncongruence; }
};

Classification classify_lifts(const GroupSpec& spec, const ClassifyOptions& opt = {});
Classification classify_symbol(const GroupSpec& spec, const SignedFareySymbol& sym, const ClassifyOptions& opt = {});

struct CountPrediction {
  long congruence = -1;     // lifts containing some Gamma(M), the -1 lift included
  long noncongruence = -1;  // -1 when no closed form applies
  long s = -1;              // generator count used by the prime formula
  std::string rule;
};

CountPrediction predicted_counts(const GroupSpec& spec);

struct SquaresStatus {
  bool congruence = false;
  std::string witness;  // a principal subgroup inside Gamma(N)^2, when congruence
  std::string reason;
};

// With a provider, N > 2 is backed by an actual noncongruence lift of Gamma(N) (small N only).
SquaresStatus squares_status(long N, const SymbolProvider* provider = nullptr);

struct CheckLine {
  std::string name;
  bool ok = false;
  std::string detail;
};

std::vector<CheckLine> verify_gamma2_squared(const SymbolProvider& provider);

// Projective and strict membership for FromFarey and Lift specs.
MembershipOracle lift_oracle(std::shared_ptr<const GeneratorSet> gens, const F2Vec& x, bool minus_one);

}  // namespace modlift
