#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "itocsvm/types.hpp"

namespace itocsvm {

inline constexpr std::string_view kPacketLogHeader =
    "timestamp,src_ip,src_mac,dst_ip,dst_mac,protocol,tcp_flags,length";

/// Checks every record and returns them sorted by timestamp (stable).
/// MalformedRecord carries the CSV line the record would occupy (index + 2).
std::vector<PacketRecord> validate_dataset(std::vector<PacketRecord> records);

std::string format_record(const PacketRecord& r);
/// Parses one CSV data row. `line` is only used for error reporting.
PacketRecord parse_record(std::string_view row, std::size_t line);

std::vector<PacketRecord> parse_packet_log(const std::filesystem::path& path);
void write_packet_log(const std::filesystem::path& path, const std::vector<PacketRecord>& records);

}  // namespace itocsvm
