#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "modlift/cache.hpp"
#include "modlift/report.hpp"
#include "modlift/verify.hpp"

#include <json.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace modlift;
namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path temp_dir(const std::string& tag) {
  fs::path d = fs::temp_directory_path() / ("modlift-test-" + tag + "-" + std::to_string(::getpid()));
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

ReportOptions plain() {
  ReportOptions o;
  o.provider = default_provider();
  return o;
}

struct Golden {
  const char* file;
  const char* cmd;
  const char* spec;
  bool json;
  long weight;
};

const Golden kGolden[] = {
    {"farey_gamma1_4.txt", "farey", "gamma1:4", false, 3},   {"farey_gamma_2.txt", "farey", "gamma:2", false, 3},
    {"farey_gamma0_5.txt", "farey", "gamma0:5", false, 3},   {"farey_gamma1_6.json", "farey", "gamma1:6", true, 3},
    {"lifts_gamma1_4.txt", "lifts", "gamma1:4", false, 3},   {"lifts_gamma1_6.txt", "lifts", "gamma1:6", false, 3},
    {"lifts_gamma_1.txt", "lifts", "gamma:1", false, 3},     {"lifts_gamma0_20.txt", "lifts", "gamma0:20", false, 3},
    {"lifts_gamma1_4.json", "lifts", "gamma1:4", true, 3},   {"level_gamma0_20.txt", "level", "gamma0:20", false, 3},
    {"level_g2_7.txt", "level", "g2:7", false, 3},           {"counts_gamma0_7.txt", "counts", "gamma0:7", false, 3},
    {"counts_gamma_3.txt", "counts", "gamma:3", false, 3},   {"dims_gamma1_4_k5.txt", "dims", "gamma1:4", false, 5},
    {"dims_gamma0_11_k2.txt", "dims", "gamma0:11", false, 2}, {"dims_gamma1_6_k3.json", "dims", "gamma1:6", true, 3},
};

Output run(const std::string& cmd, const GroupSpec& spec, const ReportOptions& o) {
  if (cmd == "farey") return cmd_farey(spec, o);
  if (cmd == "lifts") return cmd_lifts(spec, o);
  if (cmd == "level") return cmd_level(spec, o);
  if (cmd == "counts") return cmd_counts(spec, o);
  return cmd_dims(spec, o);
}

Output run(const Golden& g, const SymbolProvider& provider) {
  ReportOptions o;
  o.provider = provider;
  o.json = g.json;
  o.weight = g.weight;
  return run(g.cmd, resolve_spec(g.spec), o);
}

struct Proc {
  int status;
  std::string out;
};

// runs the modlift binary; stderr is dropped
Proc sh(const std::string& args) {
  const char* bin = std::getenv("MODLIFT_BIN");
  REQUIRE(bin != nullptr);
  std::string cmd = std::string(bin) + " " + args + " 2>/dev/null";
  FILE* p = ::popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  int st = ::pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

}  // namespace

TEST_CASE("golden outputs") {
  const char* dir = std::getenv("MODLIFT_GOLDEN_DIR");
  REQUIRE(dir != nullptr);
  const bool update = std::getenv("MODLIFT_UPDATE_GOLDEN") != nullptr;
  SymbolProvider provider = default_provider();
  for (const Golden& g : kGolden) {
    CAPTURE(g.file);
    Output out = run(g, provider);
    CHECK(out.status == 0);
    fs::path path = fs::path(dir) / g.file;
    if (update) {
      std::ofstream(path, std::ios::binary) << out.text;
      continue;
    }
    REQUIRE(fs::exists(path));
    CHECK(out.text == read_file(path));
    CHECK(run(g, provider).text == out.text);
  }
}

TEST_CASE("report content") {
  ReportOptions o = plain();
  std::string f4 = cmd_farey(GroupSpec::gamma1(4), o).text;
  CHECK(f4.find("cusps -oo 0 1/2 1 oo\nlabels +1 -2 -2 +1\n") != std::string::npos);
  CHECK(f4.find("[[-3,1],[-4,1]]") != std::string::npos);
  std::string f2 = cmd_farey(GroupSpec::gamma(2), o).text;
  CHECK(f2.find("contains -1 yes") != std::string::npos);
  CHECK(f2.find("[[1,2],[0,1]]") != std::string::npos);
  CHECK(cmd_farey(GroupSpec::gamma0(5), o).text.find(" O O ") != std::string::npos);

  std::string l20 = cmd_lifts(GroupSpec::gamma0(20), o).text;
  CHECK(l20.find("summary: 4 level-20, 4 level-40, 120 noncongruence") != std::string::npos);
  std::string l1 = cmd_lifts(GroupSpec::gamma(1), o).text;
  long rows = 0;
  std::istringstream in(l1);
  for (std::string line; std::getline(in, line);)
    if (line.rfind("-1 ", 0) == 0 || line.rfind("0", 0) == 0 || line.rfind("1", 0) == 0) ++rows;
  CHECK(rows == 1);

  std::string c7 = cmd_counts(GroupSpec::gamma0(7), o).text;
  CHECK(c7.find("noncongruence lifts 0") != std::string::npos);
  CHECK(c7.find("note:") != std::string::npos);
}

TEST_CASE("json output") {
  ReportOptions o = plain();
  o.json = true;
  auto j = nlohmann::json::parse(cmd_lifts(GroupSpec::gamma1(6), o).text);
  CHECK(j["group"] == "gamma1:6");
  CHECK(j["lifts"].size() == 9);
  CHECK(j["summary"]["level_n"] == 2);
  CHECK(j["summary"]["level_2n"] == 2);
  CHECK(j["summary"]["noncongruence"] == 4);
  auto f = nlohmann::json::parse(cmd_farey(GroupSpec::gamma0(5), o).text);
  CHECK(f["nu2"] == 2);
  CHECK(f["contains_minus_one"] == true);
  auto v = nlohmann::json::parse(cmd_verify("gamma2-squared", o).text);
  REQUIRE(v.size() == 1);
  CHECK(v[0]["ok"] == true);
}

TEST_CASE("usage errors") {
  ReportOptions o = plain();
  CHECK_THROWS_AS(resolve_spec("gamma:"), UsageError);
  CHECK_THROWS_AS(resolve_spec("file:/nonexistent/symbol"), UsageError);
  CHECK_THROWS_AS(cmd_verify("no-such-fixture", o), UsageError);
  o.weight = 1;
  CHECK_THROWS_AS(cmd_dims(GroupSpec::gamma1(4), o), UsageError);
}

TEST_CASE("symbol files") {
  fs::path d = temp_dir("file");
  fs::path f = d / "g16.sym";
  std::ofstream(f) << serialize_symbol(reference_gamma1_6());
  GroupSpec spec = resolve_spec("file:" + f.string());
  CHECK(spec.family == Family::FromFarey);
  std::string text = cmd_lifts(spec, plain()).text;
  CHECK(text.find("summary: 2 level-6, 2 level-12, 4 noncongruence") != std::string::npos);
  std::ofstream(d / "bad.sym") << "farey-symbol v1\ncusps -oo 0 2 oo\nlabels +1 O +1\n";
  CHECK_THROWS_AS(resolve_spec("file:" + (d / "bad.sym").string()), UsageError);
  fs::remove_all(d);
}

TEST_CASE("cache entries") {
  CacheEntry e{"gamma1:4", "1.0.0", "", reference_gamma1_4()};
  std::string text = format_cache_entry(e);
  auto back = parse_cache_entry(text);
  REQUIRE(back);
  CHECK(back->spec == "gamma1:4");
  CHECK(back->symbol == e.symbol);
  CHECK(back->hash == content_hash(serialize_symbol(e.symbol)));
  std::string bad = text;
  bad[bad.size() - 3] = bad[bad.size() - 3] == '1' ? '2' : '1';
  CHECK_FALSE(parse_cache_entry(bad));
  CHECK_FALSE(parse_cache_entry("garbage"));
  CHECK(content_hash("") == "cbf29ce484222325");
  CHECK(content_hash("a") == "af63dc4c8601ec8c");
}

TEST_CASE("cache round trip") {
  fs::path d = temp_dir("cache");
  const GroupSpec spec = GroupSpec::gamma0(16);
  ReportOptions o = plain();
  const std::string reference = cmd_lifts(spec, o).text;

  auto c1 = std::make_shared<SymbolCache>(d);
  o.provider = caching_provider(c1);
  CHECK(cmd_lifts(spec, o).text == reference);
  CHECK(c1->builds > 0);
  CHECK(c1->hits == 0);
  CHECK(fs::exists(c1->path_for(spec)));

  auto c2 = std::make_shared<SymbolCache>(d);
  o.provider = caching_provider(c2);
  CHECK(cmd_lifts(spec, o).text == reference);
  CHECK(c2->builds == 0);
  CHECK(c2->hits > 0);

  // a damaged entry is rejected and rebuilt
  {
    std::string text = read_file(c2->path_for(spec));
    text.back() = ' ';
    text += "+9\n";
    std::ofstream(c2->path_for(spec), std::ios::binary) << text;
  }
  auto c3 = std::make_shared<SymbolCache>(d);
  o.provider = caching_provider(c3);
  CHECK(cmd_lifts(spec, o).text == reference);
  CHECK(c3->rejected == 1);
  CHECK(c3->builds == 1);

  // a valid entry for a different group under this name is rejected too
  {
    CacheEntry wrong{spec.str(), tool_version(), "", symbol_for(GroupSpec::gamma0(15))};
    std::ofstream(c3->path_for(spec), std::ios::binary) << format_cache_entry(wrong);
  }
  auto c4 = std::make_shared<SymbolCache>(d);
  CHECK(c4->get(spec) == symbol_for(spec));
  CHECK(c4->rejected == 1);

  // another version rebuilds
  auto c5 = std::make_shared<SymbolCache>(d, "0.0.1");
  c5->get(spec);
  CHECK(c5->rejected == 1);
  CHECK(c5->builds == 1);
  fs::remove_all(d);
}

TEST_CASE("command line") {
  fs::path d = temp_dir("cli");
  const std::string cache = "--cache-dir " + d.string() + " ";
  Proc a = sh(cache + "lifts gamma1:6");
  CHECK(a.status == 0);
  Proc b = sh(cache + "lifts gamma1:6");
  CHECK(b.out == a.out);
  CHECK(sh("--no-cache lifts gamma1:6").out == a.out);
  CHECK(a.out == cmd_lifts(GroupSpec::gamma1(6), plain()).text);
  CHECK(sh(cache + "farey gamma0:5 --json").status == 0);
  CHECK(sh(cache + "dims gamma1:4 --weight 5").status == 0);

  CHECK(sh("").status == 2);
  CHECK(sh("farey").status == 2);
  CHECK(sh("farey gamma:abc").status == 2);
  CHECK(sh("--bogus farey gamma:2").status == 2);
  CHECK(sh(cache + "dims gamma1:4 --weight 1").status == 2);
  CHECK(sh(cache + "lifts gamma0:20 --max-level 30").status == 2);
  CHECK(sh("verify no-such-fixture").status == 2);

  CHECK(sh(cache + "verify gamma2-squared").status == 0);
  // dim V20 comes out 5 against the expected 6, so this cross-check fails
  Proc v = sh(cache + "verify gamma0-20");
  CHECK(v.status == 1);
  CHECK(v.out.rfind("FAIL 6 gamma0-20", 0) == 0);
  fs::remove_all(d);
}
