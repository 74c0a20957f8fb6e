#include "itocsvm/text.hpp"

#include <fstream>
#include <sstream>

#include "itocsvm/errors.hpp"

namespace itocsvm::text {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading " + path.string());
  return std::move(ss).str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("error writing " + path.string());
}

std::map<std::string, std::string> parse_key_values(std::string_view content, const std::string& origin) {
  std::map<std::string, std::string> out;
  std::size_t line_no = 0;
  for (auto raw : split(content, '\n')) {
    ++line_no;
    auto line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(origin + ":" + std::to_string(line_no) + ": expected key = value");
    }
    auto key = trim(line.substr(0, eq));
    auto value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError(origin + ":" + std::to_string(line_no) + ": empty key");
    out[std::string(key)] = std::string(value);
  }
  return out;
}

}  // namespace itocsvm::text
