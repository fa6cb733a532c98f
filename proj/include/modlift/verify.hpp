#pragma once

#include "modlift/lifts.hpp"

#include <functional>
#include <string>
#include <vector>

namespace modlift {

struct Criterion {
  int id;
  std::string fixture;  // name accepted by `verify`
  std::string title;
  std::function<std::vector<CheckLine>(const SymbolProvider&)> run;
};

const std::vector<Criterion>& criteria();
const Criterion* find_criterion(const std::string& fixture);

struct CriterionResult {
  const Criterion* criterion = nullptr;
  bool ok = false;
  std::vector<CheckLine> lines;
};

// exceptions inside a check become a failing line
CriterionResult run_criterion(const Criterion& c, const SymbolProvider& provider);

// Reference symbols whose generators are the named matrices T, A, B used in the tables.
SignedFareySymbol reference_gamma1_4();
SignedFareySymbol reference_gamma1_6();

// index of the generator equal to m or m^-1, or -1
int generator_index(const GeneratorSet& gens, const Mat2& m);

// +1 if m is in the lift, -1 if -m is, 0 if neither
int sign_in_lift(const GeneratorSet& gens, const LiftDescriptor& lift, const Mat2& m);

}  // namespace modlift
