#include "itocsvm/packet_log.hpp"

#include <algorithm>
#include <cmath>

#include "itocsvm/errors.hpp"
#include "itocsvm/text.hpp"

namespace itocsvm {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

void check_record(const PacketRecord& r, std::size_t line) {
  if (!std::isfinite(r.timestamp) || r.timestamp < 0.0) throw MalformedRecord(line, "timestamp must be >= 0");
  if (!is_valid_ipv4(r.src_ip)) throw MalformedRecord(line, "bad src_ip '" + r.src_ip + "'");
  if (!is_valid_ipv4(r.dst_ip)) throw MalformedRecord(line, "bad dst_ip '" + r.dst_ip + "'");
  if (!is_valid_mac(r.src_mac)) throw MalformedRecord(line, "bad src_mac '" + r.src_mac + "'");
  if (!is_valid_mac(r.dst_mac)) throw MalformedRecord(line, "bad dst_mac '" + r.dst_mac + "'");
  if (r.protocol != Protocol::TCP && !r.tcp_flags.empty()) {
    throw MalformedRecord(line, "tcp flags on a " + std::string(to_string(r.protocol)) + " packet");
  }
  if (r.length == 0) throw MalformedRecord(line, "length must be positive");
}

}  // namespace

std::vector<PacketRecord> validate_dataset(std::vector<PacketRecord> records) {
  if (records.empty()) throw EmptyDataset();
  for (std::size_t i = 0; i < records.size(); ++i) check_record(records[i], i + 2);
  std::stable_sort(records.begin(), records.end(),
                   [](const PacketRecord& a, const PacketRecord& b) { return a.timestamp < b.timestamp; });
  return records;
}

std::string format_record(const PacketRecord& r) {
  std::string out;
  out.reserve(96);
  out += text::format_double(r.timestamp);
  out += ',';
  out += r.src_ip;
  out += ',';
  out += r.src_mac;
  out += ',';
  out += r.dst_ip;
  out += ',';
  out += r.dst_mac;
  out += ',';
  out += to_string(r.protocol);
  out += ',';
  out += r.tcp_flags.to_string();
  out += ',';
  out += std::to_string(r.length);
  return out;
}

PacketRecord parse_record(std::string_view row, std::size_t line) {
  const auto fields = text::split(row, ',');
  if (fields.size() != 8) {
    throw MalformedRecord(line, "expected 8 fields, got " + std::to_string(fields.size()));
  }
  PacketRecord r;
  if (!text::parse_double(fields[0], r.timestamp)) throw MalformedRecord(line, "bad timestamp");
  r.src_ip = std::string(fields[1]);
  r.src_mac = lower(std::string(fields[2]));
  r.dst_ip = std::string(fields[3]);
  r.dst_mac = lower(std::string(fields[4]));
  auto proto = parse_protocol(fields[5]);
  if (!proto) throw MalformedRecord(line, "unknown protocol '" + std::string(fields[5]) + "'");
  r.protocol = *proto;
  auto flags = TcpFlags::parse(fields[6]);
  if (!flags) throw MalformedRecord(line, "bad tcp flags '" + std::string(fields[6]) + "'");
  r.tcp_flags = *flags;
  std::uint64_t len = 0;
  if (!text::parse_u64(fields[7], len) || len > 0xffffffffULL) throw MalformedRecord(line, "bad length");
  r.length = static_cast<std::uint32_t>(len);
  check_record(r, line);
  return r;
}

std::vector<PacketRecord> parse_packet_log(const std::filesystem::path& path) {
  const std::string content = text::read_file(path);
  std::vector<PacketRecord> records;
  records.reserve(content.size() / 64);

  std::size_t line_no = 0;
  bool header_seen = false;
  std::size_t pos = 0;
  while (pos < content.size()) {
    auto end = content.find('\n', pos);
    if (end == std::string::npos) end = content.size();
    std::string_view row(content.data() + pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!row.empty() && row.back() == '\r') row.remove_suffix(1);
    if (!header_seen) {
      if (text::trim(row) != kPacketLogHeader) {
        throw MalformedRecord(line_no, "missing packet-log header");
      }
      header_seen = true;
      continue;
    }
    if (text::trim(row).empty()) continue;
    records.push_back(parse_record(row, line_no));
  }
  if (!header_seen) throw MalformedRecord(1, "missing packet-log header");
  if (records.empty()) throw EmptyDataset();
  std::stable_sort(records.begin(), records.end(),
                   [](const PacketRecord& a, const PacketRecord& b) { return a.timestamp < b.timestamp; });
  return records;
}

void write_packet_log(const std::filesystem::path& path, const std::vector<PacketRecord>& records) {
  std::string out;
  out.reserve(records.size() * 80 + 80);
  out += kPacketLogHeader;
  out += '\n';
  for (const auto& r : records) {
    out += format_record(r);
    out += '\n';
  }
  text::write_file(path, out);
}

}  // namespace itocsvm
