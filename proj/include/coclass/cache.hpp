#pragma once

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include "json.hpp"

#include "coclass/fp_matrix.hpp"
#include "coclass/resolution.hpp"

namespace coclass {

inline constexpr int kCacheVersion = 1;

inline std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int k = 0; k < len; ++k) {
    out.push_back(hex[digest[k] >> 4]);
    out.push_back(hex[digest[k] & 15]);
  }
  return out;
}

/// Exclusive advisory lock held for the lifetime of the object.
class FileLock {
 public:
  explicit FileLock(const std::filesystem::path& path) {
    fd_ = ::open(path.c_str(), O_RDWR | O_CREAT, 0644);
    if (fd_ < 0) throw std::runtime_error("cannot open lock file " + path.string());
    if (::flock(fd_, LOCK_EX) != 0) {
      ::close(fd_);
      throw std::runtime_error("cannot lock " + path.string());
    }
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;
  ~FileLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }

 private:
  int fd_ = -1;
};

/// Resolution cache: <dir>/<key>/manifest.json plus <n>.fpmx holding the
/// full matrix of d_n for n = 1..maxDegree.
class ResolutionCache {
 public:
  explicit ResolutionCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  const std::filesystem::path& directory() const { return dir_; }

  static std::string key(const nlohmann::json& descriptor, unsigned p) {
    return sha256_hex(descriptor.dump() + "|p=" + std::to_string(p));
  }

  std::filesystem::path entry(const std::string& key) const { return dir_ / key; }

  std::filesystem::path lock_path(const std::string& key) const { return dir_ / (key + ".lock"); }

  std::optional<Resolution> load(const std::string& key, const GroupAlgebraContext& ctx) const {
    const auto manifest_path = entry(key) / "manifest.json";
    if (!std::filesystem::exists(manifest_path)) return std::nullopt;
    std::ifstream in(manifest_path);
    nlohmann::json manifest = nlohmann::json::parse(in, nullptr, false);
    if (manifest.is_discarded() || manifest.value("version", 0) != kCacheVersion) return std::nullopt;

    Resolution res;
    res.descriptor = manifest.at("descriptor");
    res.p = manifest.at("p").get<unsigned>();
    res.group_order = manifest.at("groupOrder").get<std::size_t>();
    res.max_degree = manifest.at("maxDegree").get<std::size_t>();
    res.betti = manifest.at("betti").get<std::vector<std::size_t>>();
    if (res.group_order != ctx.order() || res.p != ctx.p()) return std::nullopt;
    for (std::size_t n = 1; n <= res.max_degree; ++n) {
      std::ifstream mf(entry(key) / (std::to_string(n) + ".fpmx"), std::ios::binary);
      if (!mf) return std::nullopt;
      res.images.push_back(images_from_boundary(read_fpmx(mf), ctx));
    }
    return res;
  }

  void store(const std::string& key, const Resolution& res, const GroupAlgebraContext& ctx) const {
    const auto dir = entry(key);
    std::filesystem::create_directories(dir);
    for (std::size_t n = 1; n <= res.max_degree; ++n) {
      const auto final_path = dir / (std::to_string(n) + ".fpmx");
      const auto tmp_path = dir / (std::to_string(n) + ".fpmx.tmp");
      {
        std::ofstream out(tmp_path, std::ios::binary | std::ios::trunc);
        write_fpmx(out, boundary_matrix(res, ctx, n));
      }
      std::filesystem::rename(tmp_path, final_path);
    }
    nlohmann::json manifest = {{"version", kCacheVersion},    {"betti", res.betti},
                               {"maxDegree", res.max_degree}, {"p", res.p},
                               {"groupOrder", res.group_order}, {"descriptor", res.descriptor}};
    const auto tmp = dir / "manifest.json.tmp";
    {
      std::ofstream out(tmp, std::ios::trunc);
      out << manifest.dump(2) << '\n';
    }
    std::filesystem::rename(tmp, dir / "manifest.json");
  }

  /// Manifests of all entries, sorted by key.
  std::vector<std::pair<std::string, nlohmann::json>> list() const {
    std::vector<std::pair<std::string, nlohmann::json>> out;
    if (!std::filesystem::exists(dir_)) return out;
    for (const auto& item : std::filesystem::directory_iterator(dir_)) {
      if (!item.is_directory()) continue;
      std::ifstream in(item.path() / "manifest.json");
      if (!in) continue;
      nlohmann::json manifest = nlohmann::json::parse(in, nullptr, false);
      if (manifest.is_discarded()) continue;
      out.emplace_back(item.path().filename().string(), std::move(manifest));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
  }

  std::size_t clear() const {
    std::size_t removed = 0;
    if (!std::filesystem::exists(dir_)) return 0;
    std::vector<std::filesystem::path> victims;
    for (const auto& item : std::filesystem::directory_iterator(dir_)) {
      const auto& path = item.path();
      if (item.is_directory() && std::filesystem::exists(path / "manifest.json")) {
        victims.push_back(path);
        ++removed;
      } else if (path.extension() == ".lock") {
        victims.push_back(path);
      }
    }
    for (const auto& v : victims) std::filesystem::remove_all(v);
    return removed;
  }

 private:
  std::filesystem::path dir_;
};

struct ResolutionOptions {
  ResolutionBudget budget;
  std::optional<std::filesystem::path> cache_dir;
};

/// Minimal resolution through degree N, reusing and extending cached work.
inline Resolution cached_resolution(const ElementTable& table, std::size_t max_degree,
                                    const ResolutionOptions& options) {
  if (!options.cache_dir) return minimal_resolution(table, max_degree, options.budget);
  if (Integer(table.size()) > Integer(options.budget.max_order))
    throw BudgetExceeded("group order " + std::to_string(table.size()) + " exceeds budget " +
                         std::to_string(options.budget.max_order));
  const GroupAlgebraContext ctx(table);
  ResolutionCache cache(*options.cache_dir);
  std::filesystem::create_directories(cache.directory());
  const std::string key = ResolutionCache::key(table.group().descriptor(), ctx.p());
  FileLock lock(cache.lock_path(key));
  std::optional<Resolution> cached = cache.load(key, ctx);
  if (cached && cached->max_degree >= max_degree) {
    cached->betti.resize(max_degree + 1);
    cached->images.resize(max_degree);
    cached->max_degree = max_degree;
    return *cached;
  }
  Resolution res = minimal_resolution(table, max_degree, options.budget, cached ? &*cached : nullptr);
  cache.store(key, res, ctx);
  return res;
}

inline std::vector<std::size_t> betti_numbers(const FiniteGroup& group, std::size_t max_degree,
                                              const ResolutionOptions& options = {}) {
  const ElementTable table = enumerate(group, std::max(options.budget.max_order, std::size_t{1}));
  return cached_resolution(table, max_degree, options).betti;
}

}  // namespace coclass
