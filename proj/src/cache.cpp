#include "cbtau/cache.hpp"

#include <openssl/evp.h>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "cbtau/errors.hpp"
#include "json.hpp"

namespace cbtau {

namespace fs = std::filesystem;

std::string JobKey::canonical() const {
  nlohmann::json j{{"mode", mode},
                   {"operation", operation},
                   {"orders", nlohmann::json::parse(orders.empty() ? "{}" : orders)},
                   {"params", nlohmann::json::parse(params.empty() ? "{}" : params)},
                   {"version", version}};
  return j.dump();
}

std::string JobKey::digest() const { return sha256_hex(canonical()); }

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 computation failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 15]);
  }
  return out;
}

ResultCache::ResultCache() {
  if (const char* d = std::getenv("CBTAU_CACHE_DIR"); d && *d) {
    dir_ = d;
  } else if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) {
    dir_ = fs::path(x) / "cbtau";
  } else if (const char* h = std::getenv("HOME"); h && *h) {
    dir_ = fs::path(h) / ".cache" / "cbtau";
  } else {
    dir_ = fs::temp_directory_path() / "cbtau-cache";
  }
}

fs::path ResultCache::path_for(const JobKey& key) const { return dir_ / (key.digest() + ".json"); }

std::optional<std::string> ResultCache::get(const JobKey& key) const {
  std::ifstream in(path_for(key), std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  // Entries store the key next to the result so collisions and stale files are detectable.
  auto j = nlohmann::json::parse(ss.str(), nullptr, false);
  if (j.is_discarded() || !j.contains("key") || j["key"] != key.canonical() || !j.contains("result"))
    return std::nullopt;
  return j["result"].get<std::string>();
}

void ResultCache::put(const JobKey& key, const std::string& result) const {
  fs::create_directories(dir_);
  static std::atomic<unsigned long> counter{0};
  std::ostringstream name;
  name << ".tmp-" << std::hash<std::thread::id>{}(std::this_thread::get_id()) << "-" << counter++;
  fs::path tmp = dir_ / name.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write cache file in " + dir_.string());
    out << nlohmann::json{{"key", key.canonical()}, {"result", result}}.dump();
    if (!out.flush()) throw Error("cannot write cache file in " + dir_.string());
  }
  fs::rename(tmp, path_for(key));
}

ResultCache::Stats ResultCache::stats() const {
  Stats s;
  std::error_code ec;
  if (!fs::is_directory(dir_, ec)) return s;
  for (const auto& e : fs::directory_iterator(dir_)) {
    if (!e.is_regular_file() || e.path().extension() != ".json") continue;
    ++s.entries;
    s.bytes += static_cast<long>(e.file_size());
  }
  return s;
}

long ResultCache::clear() const {
  long n = 0;
  std::error_code ec;
  if (!fs::is_directory(dir_, ec)) return 0;
  for (const auto& e : fs::directory_iterator(dir_)) {
    if (!e.is_regular_file() || e.path().extension() != ".json") continue;
    fs::remove(e.path());
    ++n;
  }
  return n;
}

}  // namespace cbtau
