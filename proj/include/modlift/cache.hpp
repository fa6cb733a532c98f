#pragma once

#include "modlift/lifts.hpp"

#include <filesystem>
#include <functional>
#include <optional>
#include <string>

namespace modlift {

const char* tool_version();

struct CacheEntry {
  std::string spec;
  std::string version;
  std::string hash;  // of the serialized symbol
  SignedFareySymbol symbol;
};

std::string content_hash(const std::string& text);  // 64-bit FNV-1a, hex
std::string format_cache_entry(const CacheEntry& e);
// nullopt when the text is malformed or the hash does not match
std::optional<CacheEntry> parse_cache_entry(const std::string& text);

// MODLIFT_CACHE_DIR, then $XDG_CACHE_HOME/modlift, then $HOME/.cache/modlift; empty if none is set.
std::string default_cache_dir();

// Farey symbols of congruence families on disk; anything stale or invalid is rebuilt.
class SymbolCache {
 public:
  explicit SymbolCache(std::filesystem::path dir, std::string version = tool_version());

  SignedFareySymbol get(const GroupSpec& spec, const BuildOptions& opt = {});
  std::filesystem::path path_for(const GroupSpec& spec) const;

  long hits = 0, builds = 0, rejected = 0;

 private:
  bool usable(const CacheEntry& e, const GroupSpec& spec) const;
  std::filesystem::path dir_;
  std::string version_;
};

// Provider backed by the cache (or by plain construction when cache is null);
// log receives progress lines for large builds.
SymbolProvider caching_provider(std::shared_ptr<SymbolCache> cache, std::function<void(const std::string&)> log = {});

}  // namespace modlift
