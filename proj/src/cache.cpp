#include "modlift/cache.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

#ifndef MODLIFT_VERSION
#define MODLIFT_VERSION "dev"
#endif

namespace modlift {

const char* tool_version() { return MODLIFT_VERSION; }

std::string content_hash(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string format_cache_entry(const CacheEntry& e) {
  std::string body = serialize_symbol(e.symbol);
  return "modlift-cache v1\nspec " + e.spec + "\nversion " + e.version + "\nhash " + content_hash(body) + "\n" + body;
}

std::optional<CacheEntry> parse_cache_entry(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  CacheEntry e;
  auto field = [&](const std::string& key, std::string& out) {
    if (!std::getline(in, line) || line.rfind(key + " ", 0) != 0) return false;
    out = line.substr(key.size() + 1);
    return true;
  };
  if (!std::getline(in, line) || line != "modlift-cache v1") return std::nullopt;
  if (!field("spec", e.spec) || !field("version", e.version) || !field("hash", e.hash)) return std::nullopt;
  std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (content_hash(body) != e.hash) return std::nullopt;
  try {
    e.symbol = parse_symbol(body);
  } catch (const std::exception&) {
    return std::nullopt;
  }
  return e;
}

std::string default_cache_dir() {
  if (const char* d = std::getenv("MODLIFT_CACHE_DIR"); d && *d) return d;
  if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return std::string(x) + "/modlift";
  if (const char* h = std::getenv("HOME"); h && *h) return std::string(h) + "/.cache/modlift";
  return "";
}

SymbolCache::SymbolCache(std::filesystem::path dir, std::string version)
    : dir_(std::move(dir)), version_(std::move(version)) {}

std::filesystem::path SymbolCache::path_for(const GroupSpec& spec) const {
  std::string name = spec.str();
  for (char& ch : name)
    if (ch == ':' || ch == '^') ch = '_';
  return dir_ / (name + ".sym");
}

bool SymbolCache::usable(const CacheEntry& e, const GroupSpec& spec) const {
  if (e.spec != spec.str() || e.version != version_) return false;
  if (!validate(e.symbol).empty()) return false;
  if (symbol_index(e.symbol) != proj_index(spec)) return false;
  // the signed generators must lie in the group itself
  for (const auto& g : generators_from_symbol(e.symbol))
    if (g.kind != GenKind::Circle && !member(spec, g.m)) return false;
  return true;
}

SignedFareySymbol SymbolCache::get(const GroupSpec& spec, const BuildOptions& opt) {
  if (!spec.is_family()) return *spec.symbol;
  const auto path = path_for(spec);
  std::error_code ec;
  if (std::filesystem::exists(path, ec)) {
    std::ifstream in(path, std::ios::binary);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    auto e = parse_cache_entry(text);
    if (e && usable(*e, spec)) {
      ++hits;
      return e->symbol;
    }
    ++rejected;
  }
  SignedFareySymbol sym = build_farey(family_oracle(spec), opt);
  ++builds;
  // the cache is an optimization; failing to write it is not an error
  std::filesystem::create_directories(dir_, ec);
  if (!ec) {
    auto tmp = path;
    tmp += ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      out << format_cache_entry({spec.str(), version_, "", sym});
    }
    std::filesystem::rename(tmp, path, ec);
  }
  return sym;
}

SymbolProvider caching_provider(std::shared_ptr<SymbolCache> cache, std::function<void(const std::string&)> log) {
  auto memo = std::make_shared<std::map<std::string, SignedFareySymbol>>();
  auto mu = std::make_shared<std::mutex>();
  return [cache, log, memo, mu](const GroupSpec& spec) {
    if (!spec.is_family()) return *spec.symbol;
    const std::string key = spec.str();
    std::lock_guard<std::mutex> lock(*mu);
    if (auto it = memo->find(key); it != memo->end()) return it->second;
    BuildOptions opt;
    if (log)
      opt.progress = [log, key](std::size_t edges, std::size_t open) {
        log("building " + key + ": " + std::to_string(edges) + " edges, " + std::to_string(open) + " open");
      };
    SignedFareySymbol sym = cache ? cache->get(spec, opt) : build_farey(family_oracle(spec), opt);
    memo->emplace(key, sym);
    return sym;
  };
}

}  // namespace modlift
