// modlift: Farey symbols, lifts to SL2(Z), and congruence tests from the command line.
#include "modlift/cache.hpp"
#include "modlift/report.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace modlift;

int main(int argc, char** argv) {
  CLI::App app{"Lifts of projective congruence subgroups to SL2(Z)"};
  app.set_version_flag("--version", std::string(tool_version()));
  app.require_subcommand(1);
  app.fallthrough();

  ReportOptions opt;
  std::string cache_dir = default_cache_dir();
  bool no_cache = false, quiet = false;
  app.add_flag("--json", opt.json, "machine-readable output");
  app.add_option("--cache-dir", cache_dir, "directory for cached Farey symbols (env MODLIFT_CACHE_DIR)");
  app.add_flag("--no-cache", no_cache, "always rebuild symbols");
  app.add_flag("-q,--quiet", quiet, "no progress on stderr");
  app.add_option("--max-level", opt.max_level, "largest Gamma(M) used when classifying")->check(CLI::PositiveNumber);

  std::string spec_arg, fixture;
  auto group_cmd = [&](const char* name, const char* help) {
    auto* c = app.add_subcommand(name, help);
    c->add_option("group", spec_arg, "full, gamma:N, gamma0:N, gamma1:N, g1:p^r, g2:p^r or file:PATH")->required();
    return c;
  };
  auto* farey = group_cmd("farey", "signed Farey symbol, generators and invariants");
  auto* lifts = group_cmd("lifts", "every lift with its congruence class");
  auto* level = group_cmd("level", "general level and the levels of the lifts");
  auto* counts = group_cmd("counts", "lift counts against the closed formulas");
  auto* dims = group_cmd("dims", "dimensions of cusp forms for every lift");
  dims->add_option("--weight,-k", opt.weight, "weight k >= 2");
  auto* verify = app.add_subcommand("verify", "run an acceptance fixture");
  verify->add_option("fixture", fixture, "fixture name or number, or all")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (!quiet) opt.log = [](const std::string& s) { std::cerr << s << std::endl; };
  std::shared_ptr<SymbolCache> cache;
  if (!no_cache && !cache_dir.empty()) cache = std::make_shared<SymbolCache>(cache_dir);
  opt.provider = caching_provider(cache, opt.log);

  try {
    Output out;
    if (verify->parsed()) {
      out = cmd_verify(fixture, opt);
    } else {
      GroupSpec spec = resolve_spec(spec_arg);
      if (farey->parsed()) out = cmd_farey(spec, opt);
      else if (lifts->parsed()) out = cmd_lifts(spec, opt);
      else if (level->parsed()) out = cmd_level(spec, opt);
      else if (counts->parsed()) out = cmd_counts(spec, opt);
      else if (dims->parsed()) out = cmd_dims(spec, opt);
    }
    std::cout << out.text;
    return out.status;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << " (raise --max-level)\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
