#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dormant/exact/big_rational.hpp"

namespace dormant::cli {

using exact::BigRational;

/// One line of the cache file.
struct CacheEntry {
  std::string key;
  std::string numerator;
  std::string denominator;
  std::string backend;
  std::string tool_version;
  std::string created_at;
  std::vector<std::string> reductions;

  BigRational value() const;
};

/// "formula:a=1,b=2" with parameter names sorted.
std::string canonical_key(std::string_view formula,
                          const std::map<std::string, std::string>& params);

struct CacheStats {
  std::filesystem::path file;
  std::uintmax_t bytes = 0;
  std::size_t lines = 0;
  std::size_t entries = 0;  // distinct (key, tool_version)
  std::size_t corrupt = 0;
};

struct CachedValue {
  BigRational value;
  std::vector<std::string> reductions;
  bool hit = false;
};

/// Append-only JSONL store. Appends are single O_APPEND writes under an
/// exclusive flock; readers take a shared lock. On duplicate keys the last
/// line wins. Entries from another tool version are ignored.
class CacheStore {
 public:
  CacheStore(std::filesystem::path dir, std::string tool_version);

  const std::filesystem::path& file() const { return file_; }
  const std::string& tool_version() const { return version_; }

  std::optional<CacheEntry> lookup(const std::string& key);
  void store(CacheEntry entry);

  /// Returns the cached value for `key`, or runs `compute`, appends the
  /// result and returns it.
  CachedValue lookup_store(const std::string& key, const std::string& backend,
                           const std::function<CachedValue()>& compute);

  CacheStats stats();
  void clear();

  /// Messages about ignored lines, accumulated across calls.
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  std::vector<CacheEntry> read_all(std::size_t* lines, std::size_t* corrupt);

  std::filesystem::path dir_;
  std::filesystem::path file_;
  std::string version_;
  std::vector<std::string> warnings_;
};

/// Default location: $DORMANT_DEGREE_CACHE, else $XDG_CACHE_HOME/dormant-degree,
/// else ~/.cache/dormant-degree.
std::filesystem::path default_cache_dir();

/// UTC, second resolution, ISO 8601.
std::string utc_timestamp();

}  // namespace dormant::cli
