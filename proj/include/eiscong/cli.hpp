#pragma once

// Command-line front end and its on-disk result cache.

#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "eiscong/report.hpp"

namespace eiscong::cli {

/// Parsed flag values keyed by long flag name (without dashes).
using ArgMap = std::map<std::string, std::string>;

inline constexpr int kCacheVersion = 1;

/// Canonical text of (command, arguments); the cache key.
std::string cache_key(const std::string& command, const ArgMap& args);
/// Inverse of cache_key.
std::pair<std::string, ArgMap> parse_cache_key(const std::string& key);

struct CacheEntry {
  std::string key;
  int version = kCacheVersion;
  Json payload;
  std::filesystem::path file;
};

/// <dir>/<version>/<fnv1a64(key)>.json holding {key, version, payload}.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  std::optional<Json> load(const std::string& key) const;
  /// Write-temp-then-rename.
  void store(const std::string& key, const Json& payload) const;
  std::vector<CacheEntry> entries() const;
  std::filesystem::path path_for(const std::string& key) const;

 private:
  std::filesystem::path dir_;
};

/// Runs one subcommand on already-parsed arguments.
Json execute(const std::string& command, const ArgMap& args);

/// Whether a command's output may be cached (depends only on its arguments).
bool cacheable(const std::string& command, const ArgMap& args);

/// Full front end: 0 success, 1 parameter error or bad usage, 2 computation
/// error (including an H construction that fails verification).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace eiscong::cli
