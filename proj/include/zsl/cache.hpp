#pragma once

// Append-only JSON-lines store of computed constants, keyed by
// (group, family, k, code version). Writers take an exclusive flock.

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "zsl/search.hpp"

namespace zsl {

/// A cache line that does not parse, disagrees with another line for the same
/// key, carries an invalid witness, or differs from a recomputation.
class CacheCorrupt : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class CacheMode {
  Use,     // return cached values (witness re-checked), compute and append misses
  Verify,  // always recompute and compare with every cached entry
};

class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path path, std::string version = ZSL_VERSION);

  const std::filesystem::path& path() const { return path_; }
  const std::string& version() const { return version_; }
  std::string key(const ConstantQuery& q) const;

  /// Throws CacheCorrupt when the entries for this key are unusable.
  std::optional<ConstantResult> lookup(const ConstantQuery& q) const;
  void store(const ConstantQuery& q, const ConstantResult& r);

 private:
  std::filesystem::path path_;
  std::string version_;
};

/// compute_constant through the cache (a null cache computes directly).
ConstantResult cached_constant(const ConstantQuery& q, const SearchOptions& opt, ResultCache* cache,
                               CacheMode mode = CacheMode::Use, ResultMemo* memo = nullptr);

}  // namespace zsl
