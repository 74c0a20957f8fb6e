#pragma once

#include <filesystem>
#include <random>
#include <string>

#include "itocsvm/types.hpp"

namespace testing {

inline itocsvm::PacketRecord pkt(double t, std::string src_ip, std::string src_mac, itocsvm::Protocol p,
                                 itocsvm::TcpFlags flags = {}, std::uint32_t length = 60,
                                 std::string dst_ip = "10.0.0.1", std::string dst_mac = "02:00:00:00:00:01") {
  itocsvm::PacketRecord r;
  r.timestamp = t;
  r.src_ip = std::move(src_ip);
  r.src_mac = std::move(src_mac);
  r.dst_ip = std::move(dst_ip);
  r.dst_mac = std::move(dst_mac);
  r.protocol = p;
  r.tcp_flags = flags;
  r.length = length;
  return r;
}

/// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("itocsvm_" + tag + "_" + std::to_string(rd()));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace testing
