// On-disk presentation cache. Each entry is a ZPRES block followed by its
// ZCAN canonical form, with a SHA-256 digest in a sidecar file.
#pragma once

#include "qlie/presented.hpp"

#include <openssl/evp.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

namespace qlie {

inline constexpr int kCacheFormatVersion = 1;

inline std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

class DiskStore : public PresentationStore {
 public:
  explicit DiskStore(std::filesystem::path dir, int version = kCacheFormatVersion)
      : dir_(std::move(dir)), version_(version) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    std::filesystem::path probe = dir_ / (".probe." + unique_suffix());
    {
      std::ofstream f(probe);
      enabled_ = !ec && f && (f << "ok") && f.flush();
    }
    std::filesystem::remove(probe, ec);
    if (!enabled_) warning_ = "cache directory '" + dir_.string() + "' is not writable; running without cache";
  }

  bool enabled() const { return enabled_; }
  const std::string& warning() const { return warning_; }

  std::filesystem::path data_path(const std::string& key) const {
    return dir_ / (key + ".v" + std::to_string(version_) + ".zpres");
  }
  std::filesystem::path digest_path(const std::string& key) const {
    return dir_ / (key + ".v" + std::to_string(version_) + ".sha256");
  }

  std::size_t hits() const { return hits_; }
  std::size_t misses() const { return misses_; }

  std::optional<Presentation> load(const std::string& key) override {
    if (!enabled_) return std::nullopt;
    auto p = try_load(key);
    ++(p ? hits_ : misses_);
    return p;
  }

  void save(const std::string& key, const Presentation& p) override {
    if (!enabled_) return;
    std::ostringstream os;
    write_zpres(os, p);
    write_canonical(os, p.canonical());
    const std::string body = os.str();
    // data first: a reader between the two renames sees a digest mismatch and recomputes
    if (write_atomic(data_path(key), body)) write_atomic(digest_path(key), sha256_hex(body) + "\n");
  }

 private:
  static std::string unique_suffix() {
    static std::atomic<unsigned long> counter{0};
    std::random_device rd;
    return std::to_string(rd()) + "." + std::to_string(counter++);
  }

  static std::optional<std::string> slurp(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) return std::nullopt;
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
  }

  std::optional<Presentation> try_load(const std::string& key) const {
    auto body = slurp(data_path(key));
    auto digest = slurp(digest_path(key));
    if (!body || !digest) return std::nullopt;
    if (digest->substr(0, digest->find('\n')) != sha256_hex(*body)) return std::nullopt;
    try {
      std::istringstream is(*body);
      auto [gens, rel] = read_zpres_parts(is);
      CanonicalForm cf = read_canonical(is);
      if (cf.coord.cols() != gens.size() || cf.section.rows() != gens.size()) return std::nullopt;
      return Presentation(std::move(gens), std::move(rel), std::move(cf));
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }

  bool write_atomic(const std::filesystem::path& path, const std::string& content) const {
    std::filesystem::path tmp = path;
    tmp += ".tmp." + unique_suffix();
    {
      std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
      if (!f || !(f << content) || !f.flush()) {
        std::error_code ec;
        std::filesystem::remove(tmp, ec);
        return false;
      }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (!ec) return true;
    std::filesystem::remove(tmp, ec);
    return false;
  }

  std::filesystem::path dir_;
  int version_;
  bool enabled_ = false;
  std::string warning_;
  std::atomic<std::size_t> hits_{0}, misses_{0};
};

}  // namespace qlie
