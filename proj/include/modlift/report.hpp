#pragma once

#include "modlift/lifts.hpp"

#include <functional>
#include <stdexcept>
#include <string>

namespace modlift {

// Bad input from the command line; maps to exit status 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ReportOptions {
  bool json = false;
  long weight = 3;
  long max_level = 100;
  SymbolProvider provider;
  std::function<void(const std::string&)> log;
};

struct Output {
  std::string text;
  int status = 0;  // 0 fine, 1 a cross-check failed
};

// parse_spec plus "file:PATH" for a stored symbol
GroupSpec resolve_spec(const std::string& arg);

Output cmd_farey(const GroupSpec& spec, const ReportOptions& opt);
Output cmd_lifts(const GroupSpec& spec, const ReportOptions& opt);
Output cmd_level(const GroupSpec& spec, const ReportOptions& opt);
Output cmd_counts(const GroupSpec& spec, const ReportOptions& opt);
Output cmd_dims(const GroupSpec& spec, const ReportOptions& opt);
Output cmd_verify(const std::string& fixture, const ReportOptions& opt);

}  // namespace modlift
