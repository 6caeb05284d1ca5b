#include "zsl/cache.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>

#include "zsl/report.hpp"

namespace zsl {

namespace {

using report::Json;

// RAII flock on a file descriptor.
class FileLock {
 public:
  FileLock(const std::filesystem::path& p, int flags, int op) : fd_(::open(p.c_str(), flags, 0644)) {
    if (fd_ < 0) return;
    if (::flock(fd_, op) != 0) {
      ::close(fd_);
      fd_ = -1;
    }
  }
  ~FileLock() {
    if (fd_ >= 0) {
      ::flock(fd_, LOCK_UN);
      ::close(fd_);
    }
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;
  int fd() const { return fd_; }

 private:
  int fd_;
};

std::string now_iso() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ConstantResult from_line(const ConstantQuery& q, const Json& j) {
  ConstantResult r;
  r.value = j.at("value").get<std::uint32_t>();
  r.witness = report::elements_from_json(q.group, j.at("witness"));
  r.node_count = j.at("node_count").get<std::uint64_t>();
  r.method = j.at("method").get<std::string>();
  r.witness_orbits = j.at("witness_orbits").get<std::uint64_t>();
  r.level_orbits = j.at("level_orbits").get<std::vector<std::uint64_t>>();
  r.orbits_complete = j.at("orbits_complete").get<bool>();
  return r;
}

void check_witness(const ConstantQuery& q, const ConstantResult& r, const std::string& key) {
  if (r.value == 0 || r.witness.size() + 1 != r.value || !lacks_structure(q, r.witness))
    throw CacheCorrupt("cache: stored witness for " + key + " does not certify value " + std::to_string(r.value));
}

}  // namespace

ResultCache::ResultCache(std::filesystem::path path, std::string version)
    : path_(std::move(path)), version_(std::move(version)) {}

std::string ResultCache::key(const ConstantQuery& q) const {
  return q.group.to_string() + "|" + family_name(q.family) + "|" + (q.k ? std::to_string(*q.k) : "-") + "|" +
         version_;
}

std::optional<ConstantResult> ResultCache::lookup(const ConstantQuery& q) const {
  if (!std::filesystem::exists(path_)) return std::nullopt;
  FileLock lock(path_, O_RDONLY, LOCK_SH);
  std::ifstream in(path_);
  const std::string k = key(q);
  std::optional<ConstantResult> found;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    Json j;
    try {
      j = Json::parse(line);
      if (j.at("key").get<std::string>() != k) continue;
      ConstantResult r = from_line(q, j);
      check_witness(q, r, k);
      if (found && found->value != r.value)
        throw CacheCorrupt("cache: conflicting values for " + k + " at line " + std::to_string(lineno));
      if (!found) found = std::move(r);
    } catch (const CacheCorrupt&) {
      throw;
    } catch (const std::exception& e) {
      throw CacheCorrupt("cache: unreadable line " + std::to_string(lineno) + " in " + path_.string() + ": " +
                         e.what());
    }
  }
  return found;
}

void ResultCache::store(const ConstantQuery& q, const ConstantResult& r) {
  Json j;
  j["key"] = key(q);
  j["group"] = q.group.to_string();
  j["family"] = family_name(q.family);
  j["k"] = q.k ? Json(*q.k) : Json(nullptr);
  j["version"] = version_;
  j["value"] = r.value;
  j["witness"] = report::elements_json(r.witness);
  j["node_count"] = r.node_count;
  j["method"] = r.method;
  j["witness_orbits"] = r.witness_orbits;
  j["level_orbits"] = r.level_orbits;
  j["orbits_complete"] = r.orbits_complete;
  j["timestamp"] = now_iso();
  const std::string line = j.dump() + "\n";

  FileLock lock(path_, O_WRONLY | O_CREAT | O_APPEND, LOCK_EX);
  if (lock.fd() < 0) throw std::runtime_error("cache: cannot open " + path_.string());
  std::size_t off = 0;
  while (off < line.size()) {
    const ssize_t n = ::write(lock.fd(), line.data() + off, line.size() - off);
    if (n < 0) throw std::runtime_error("cache: write failed on " + path_.string());
    off += static_cast<std::size_t>(n);
  }
}

ConstantResult cached_constant(const ConstantQuery& q, const SearchOptions& opt, ResultCache* cache, CacheMode mode,
                               ResultMemo* memo) {
  if (!cache) return compute_constant(q, opt, memo);
  auto hit = cache->lookup(q);
  if (hit && mode == CacheMode::Use) return *hit;
  ConstantResult r = compute_constant(q, opt, memo);
  if (hit) {
    if (hit->value != r.value)
      throw CacheCorrupt("cache: " + cache->key(q) + " holds " + std::to_string(hit->value) + ", recomputed " +
                         std::to_string(r.value));
    return r;
  }
  cache->store(q, r);
  return r;
}

}  // namespace zsl
