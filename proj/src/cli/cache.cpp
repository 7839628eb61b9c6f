#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "eiscong/cli.hpp"
#include "eiscong/error.hpp"

namespace eiscong::cli {

namespace {

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::optional<Json> read_json(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) return std::nullopt;
  try {
    return Json::parse(in);
  } catch (const Json::parse_error&) {
    return std::nullopt;
  }
}

}  // namespace

std::string cache_key(const std::string& command, const ArgMap& args) {
  Json key;
  key["command"] = command;
  Json a = Json::object();
  for (const auto& [k, v] : args) a[k] = v;
  key["args"] = std::move(a);
  return key.dump();
}

std::pair<std::string, ArgMap> parse_cache_key(const std::string& key) {
  const Json j = Json::parse(key);
  ArgMap args;
  for (const auto& [k, v] : j.at("args").items()) args[k] = v.get<std::string>();
  return {j.at("command").get<std::string>(), std::move(args)};
}

std::filesystem::path ResultCache::path_for(const std::string& key) const {
  char name[32];
  std::snprintf(name, sizeof name, "%016llx.json", static_cast<unsigned long long>(fnv1a64(key)));
  return dir_ / std::to_string(kCacheVersion) / name;
}

std::optional<Json> ResultCache::load(const std::string& key) const {
  const auto doc = read_json(path_for(key));
  if (!doc || !doc->contains("key") || !doc->contains("payload")) return std::nullopt;
  if ((*doc)["key"] != key || (*doc)["version"] != kCacheVersion) return std::nullopt;
  return (*doc)["payload"];
}

void ResultCache::store(const std::string& key, const Json& payload) const {
  const auto target = path_for(key);
  std::filesystem::create_directories(target.parent_path());
  Json doc;
  doc["key"] = key;
  doc["version"] = kCacheVersion;
  doc["payload"] = payload;
  auto tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw ComputationError("cannot write cache file " + tmp.string());
    out << doc.dump();
    if (!out) throw ComputationError("cannot write cache file " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

std::vector<CacheEntry> ResultCache::entries() const {
  std::vector<CacheEntry> out;
  const auto dir = dir_ / std::to_string(kCacheVersion);
  if (!std::filesystem::is_directory(dir)) return out;
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.path().extension() == ".json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    const auto doc = read_json(f);
    CacheEntry entry;
    entry.file = f;
    if (doc && doc->contains("key") && doc->contains("payload")) {
      entry.key = (*doc)["key"].get<std::string>();
      entry.version = (*doc).value("version", 0);
      entry.payload = (*doc)["payload"];
    }
    out.push_back(std::move(entry));
  }
  return out;
}

}  // namespace eiscong::cli
