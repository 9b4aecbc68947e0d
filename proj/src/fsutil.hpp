#pragma once

#include <filesystem>
#include <string>

namespace tsflow::detail {

// Writes to a uniquely named sibling temp file, flushes it to disk and
// renames it over `path`. Parent directories are created as needed.
void write_file_atomic(const std::filesystem::path &path, const std::string &content);

// Syncs a directory entry so that a preceding rename survives a crash.
void sync_directory(const std::filesystem::path &dir);

std::string read_file(const std::filesystem::path &path);

// Random lowercase hex string of `bytes` bytes.
std::string random_hex(std::size_t bytes);

} // namespace tsflow::detail
