#include "fsutil.hpp"

#include "tsflow/error.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <mutex>
#include <random>
#include <sstream>

namespace tsflow::detail {

namespace {

[[noreturn]] void fail(const std::string &what, const std::filesystem::path &p) {
  throw Error(Errc::StorageError, what + " " + p.string() + ": " + std::strerror(errno));
}

} // namespace

std::string random_hex(std::size_t bytes) {
  static std::mutex mu;
  static std::mt19937_64 gen{std::random_device{}()};
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  std::lock_guard lock(mu);
  for (std::size_t i = 0; i < bytes; ++i) {
    const auto b = static_cast<unsigned>(gen() & 0xffu);
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0xfu]);
  }
  return out;
}

void sync_directory(const std::filesystem::path &dir) {
  const int fd = ::open(dir.c_str(), O_RDONLY | O_DIRECTORY);
  if (fd < 0) {
    return;
  }
  ::fsync(fd);
  ::close(fd);
}

void write_file_atomic(const std::filesystem::path &path, const std::string &content) {
  const auto dir = path.parent_path();
  std::error_code ec;
  if (!dir.empty()) {
    std::filesystem::create_directories(dir, ec);
    if (ec) {
      throw Error(Errc::StorageError, "cannot create " + dir.string() + ": " + ec.message());
    }
  }
  const auto tmp = dir / ("." + path.filename().string() + ".tmp-" + random_hex(6));
  const int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_EXCL, 0644);
  if (fd < 0) {
    fail("cannot create", tmp);
  }
  const char *p = content.data();
  std::size_t left = content.size();
  while (left > 0) {
    const auto n = ::write(fd, p, left);
    if (n < 0) {
      if (errno == EINTR) continue;
      ::close(fd);
      ::unlink(tmp.c_str());
      fail("cannot write", tmp);
    }
    p += n;
    left -= static_cast<std::size_t>(n);
  }
  if (::fsync(fd) != 0 || ::close(fd) != 0) {
    ::unlink(tmp.c_str());
    fail("cannot flush", tmp);
  }
  if (::rename(tmp.c_str(), path.c_str()) != 0) {
    ::unlink(tmp.c_str());
    fail("cannot rename into", path);
  }
  sync_directory(dir.empty() ? std::filesystem::path(".") : dir);
}

std::string read_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Errc::IoError, "cannot read " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

} // namespace tsflow::detail
