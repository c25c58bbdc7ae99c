#ifndef EPSMULT_CACHE_HPP
#define EPSMULT_CACHE_HPP

#include "digest.hpp"
#include "error.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace epsmult {

inline constexpr int cache_format_version = 1;

/// Content address of a cached sequence. `parameters` must not include the
/// sequence length, so that longer runs extend shorter ones.
inline std::string cache_key(const std::string& instance_digest, const std::string& operation,
                             const std::string& parameters) {
  return sha256_hex(instance_digest + "\n" + operation + "\n" + parameters);
}

/// Directory of JSON entries `<key>.json`, each holding an exact integer
/// sequence and a checksum over it. Writes go through a temporary file and
/// a rename, so readers never observe partial entries.
class SequenceCache {
public:
  using Warn = std::function<void(const std::string&)>;

  explicit SequenceCache(std::filesystem::path dir, Warn warn = {})
      : dir_(std::move(dir)), warn_(std::move(warn)) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec)
      throw IngestionError("cannot create cache directory '" + dir_.string() + "'");
  }

  std::filesystem::path entry_path(const std::string& key) const { return dir_ / (key + ".json"); }

  static std::string checksum(const std::vector<std::uint64_t>& values) {
    return sha256_hex(nlohmann::json(values).dump());
  }

  /// The stored sequence, or nothing on a miss. Corrupt entries are
  /// reported, deleted and treated as misses.
  std::optional<std::vector<std::uint64_t>> load(const std::string& key) const {
    auto path = entry_path(key);
    if (!std::filesystem::exists(path))
      return std::nullopt;
    try {
      std::ifstream in(path, std::ios::binary);
      std::ostringstream ss;
      ss << in.rdbuf();
      auto doc = nlohmann::json::parse(ss.str());
      if (doc.at("format_version").get<int>() != cache_format_version)
        throw std::runtime_error("format version mismatch");
      if (doc.at("key").get<std::string>() != key)
        throw std::runtime_error("key mismatch");
      auto values = doc.at("values").get<std::vector<std::uint64_t>>();
      if (doc.at("checksum").get<std::string>() != checksum(values))
        throw std::runtime_error("checksum mismatch");
      return values;
    } catch (const std::exception& e) {
      if (warn_)
        warn_("discarding corrupt cache entry " + path.filename().string() + " (" + e.what() + ")");
      std::error_code ec;
      std::filesystem::remove(path, ec);
      return std::nullopt;
    }
  }

  void store(const std::string& key, const std::string& operation,
             const std::vector<std::uint64_t>& values) const {
    nlohmann::json doc = {{"format_version", cache_format_version},
                          {"key", key},
                          {"operation", operation},
                          {"values", values},
                          {"checksum", checksum(values)}};
    auto final_path = entry_path(key);
    std::random_device rd;
    auto tmp = dir_ / (key + ".tmp." + std::to_string(rd()));
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out)
        throw IngestionError("cannot write cache entry in '" + dir_.string() + "'");
      out << doc.dump(1) << '\n';
      if (!out)
        throw IngestionError("short write to cache entry");
    }
    std::filesystem::rename(tmp, final_path);
  }

private:
  std::filesystem::path dir_;
  Warn warn_;
};

struct CacheStats {
  std::uint64_t reused = 0;
  std::uint64_t computed = 0;
};

/// ℓ_0..ℓ_N through the cache: a stored prefix is reused and only the
/// missing terms are computed. `term(n)` must be a pure function of n.
inline std::vector<std::uint64_t> cached_sequence(const SequenceCache* cache, const std::string& key,
                                                  const std::string& operation, unsigned N,
                                                  const std::function<std::uint64_t(unsigned)>& term,
                                                  CacheStats* stats = nullptr) {
  std::vector<std::uint64_t> values;
  if (cache)
    if (auto hit = cache->load(key))
      values = std::move(*hit);
  const std::size_t reused = std::min<std::size_t>(values.size(), std::size_t(N) + 1);
  bool extended = false;
  for (unsigned n = static_cast<unsigned>(values.size()); n <= N; ++n) {
    values.push_back(term(n));
    extended = true;
  }
  if (stats) {
    stats->reused += reused;
    stats->computed += (std::size_t(N) + 1) - reused;
  }
  if (cache && extended)
    cache->store(key, operation, values);
  values.resize(std::size_t(N) + 1);
  return values;
}

} // namespace epsmult

#endif
