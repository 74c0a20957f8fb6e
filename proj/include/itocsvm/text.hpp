#pragma once

// Small text helpers shared by the file formats.

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace itocsvm::text {

std::vector<std::string_view> split(std::string_view s, char sep);
std::vector<std::string_view> split_ws(std::string_view s);
std::string_view trim(std::string_view s);

/// Shortest representation that parses back to the identical double.
std::string format_double(double v);

/// Strict parsers: the whole token must be consumed.
bool parse_double(std::string_view s, double& out);
bool parse_u64(std::string_view s, std::uint64_t& out);
bool parse_i64(std::string_view s, std::int64_t& out);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

/// Flat `key = value` files; `#` starts a comment, blank lines are ignored.
/// Duplicate keys keep the last value.
std::map<std::string, std::string> parse_key_values(std::string_view content, const std::string& origin);

}  // namespace itocsvm::text
