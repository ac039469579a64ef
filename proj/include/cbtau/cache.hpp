#pragma once

#include <filesystem>
#include <optional>
#include <string>

namespace cbtau {

inline constexpr const char* kCodeVersion = "cbtau-1.0";

// Everything a cached result depends on. Thread counts are deliberately absent:
// results do not depend on them.
struct JobKey {
  std::string operation;
  std::string params;  // canonical JSON
  std::string orders;  // canonical JSON
  std::string mode;
  std::string version = kCodeVersion;

  std::string canonical() const;
  std::string digest() const;  // hex SHA-256 of canonical()
};

std::string sha256_hex(const std::string& data);

class ResultCache {
 public:
  // Uses $CBTAU_CACHE_DIR, else $XDG_CACHE_HOME/cbtau, else ~/.cache/cbtau.
  ResultCache();
  explicit ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  const std::filesystem::path& dir() const { return dir_; }
  std::optional<std::string> get(const JobKey& key) const;
  // Atomic: writes a temporary file in the cache directory and renames it.
  void put(const JobKey& key, const std::string& result) const;

  struct Stats {
    long entries = 0;
    long bytes = 0;
  };
  Stats stats() const;
  long clear() const;

 private:
  std::filesystem::path path_for(const JobKey& key) const;
  std::filesystem::path dir_;
};

}  // namespace cbtau
