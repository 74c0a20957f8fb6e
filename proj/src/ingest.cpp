#include "itocsvm/ingest.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>

#include "itocsvm/errors.hpp"
#include "itocsvm/text.hpp"

namespace itocsvm {

namespace {

struct WindowAccumulator {
  std::uint64_t packets = 0;
  std::uint64_t bytes = 0;
  std::uint64_t syn = 0;
  std::uint64_t arp = 0;
  std::uint64_t fin = 0;
  std::uint64_t udp = 0;
  std::array<std::uint64_t, kProtocolCount> per_protocol{};
  std::vector<std::string_view> destinations;

  void add(const PacketRecord& r) {
    ++packets;
    bytes += r.length;
    if (r.tcp_flags.has(TcpFlag::SYN)) ++syn;
    if (r.tcp_flags.has(TcpFlag::FIN)) ++fin;
    if (r.protocol == Protocol::ARP) ++arp;
    if (r.protocol == Protocol::UDP) ++udp;
    ++per_protocol[static_cast<std::size_t>(r.protocol)];
    if (std::find(destinations.begin(), destinations.end(), r.dst_ip) == destinations.end()) {
      destinations.push_back(r.dst_ip);
    }
  }

  FeatureValues finish(double window_s) const {
    const double n = static_cast<double>(packets);
    double entropy = 0.0;
    for (auto c : per_protocol) {
      if (c == 0) continue;
      const double p = static_cast<double>(c) / n;
      entropy -= p * std::log2(p);
    }
    // -0.0 for a single protocol reads oddly in dumps
    if (entropy <= 0.0) entropy = 0.0;
    FeatureValues v{};
    v[kPktRate] = n / window_s;
    v[kByteRate] = static_cast<double>(bytes) / window_s;
    v[kDistinctDst] = static_cast<double>(destinations.size());
    v[kTcpSynCount] = static_cast<double>(syn);
    v[kArpCount] = static_cast<double>(arp);
    v[kTcpFinCount] = static_cast<double>(fin);
    v[kUdpFraction] = static_cast<double>(udp) / n;
    v[kProtocolEntropy] = entropy;
    return v;
  }
};

}  // namespace

std::vector<FeatureVector> extract_features(std::span<const PacketRecord> records, double window_s,
                                            FeatureScope scope) {
  if (!(window_s > 0.0)) throw DomainError("window length must be positive");
  if (records.empty()) throw EmptyDataset();
  if (!std::is_sorted(records.begin(), records.end(),
                      [](const PacketRecord& a, const PacketRecord& b) { return a.timestamp < b.timestamp; })) {
    throw DomainError("records are not sorted by timestamp");
  }

  std::vector<FeatureVector> out;
  std::size_t i = 0;
  while (i < records.size()) {
    const auto window = static_cast<std::int64_t>(std::floor(records[i].timestamp / window_s));
    const double window_start = static_cast<double>(window) * window_s;

    WindowAccumulator global;
    std::map<SourceId, WindowAccumulator> per_source;
    std::size_t j = i;
    for (; j < records.size(); ++j) {
      const auto& r = records[j];
      if (static_cast<std::int64_t>(std::floor(r.timestamp / window_s)) != window) break;
      if (scope == FeatureScope::Global) {
        global.add(r);
      } else {
        per_source[r.source()].add(r);
      }
    }

    if (scope == FeatureScope::Global) {
      out.emplace_back(window_start, std::nullopt, global.finish(window_s));
    } else {
      for (const auto& [source, acc] : per_source) {
        out.emplace_back(window_start, source, acc.finish(window_s));
      }
    }
    i = j;
  }
  return out;
}

std::uint64_t ScalingParams::fingerprint() const noexcept {
  // FNV-1a over the raw bit patterns.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](double d) {
    auto bits = std::bit_cast<std::uint64_t>(d);
    for (int b = 0; b < 8; ++b) {
      h ^= (bits >> (8 * b)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  };
  for (double d : min) mix(d);
  for (double d : max) mix(d);
  return h == 0 ? 1 : h;
}

ScalingParams fit_scaling(std::span<const FeatureVector> train) {
  if (train.empty()) throw EmptyInput("cannot fit scaling on an empty training set");
  ScalingParams p;
  p.min = train.front().values();
  p.max = train.front().values();
  for (const auto& v : train) {
    for (std::size_t k = 0; k < kFeatureCount; ++k) {
      p.min[k] = std::min(p.min[k], v[k]);
      p.max[k] = std::max(p.max[k], v[k]);
    }
  }
  return p;
}

FeatureVector apply_scaling(const FeatureVector& v, const ScalingParams& p) {
  FeatureValues out{};
  for (std::size_t k = 0; k < kFeatureCount; ++k) {
    const double range = p.max[k] - p.min[k];
    if (range <= 0.0) {
      out[k] = 0.0;
      continue;
    }
    out[k] = std::clamp((v[k] - p.min[k]) / range, 0.0, 1.0);
  }
  return FeatureVector(v.window_start(), v.source(), out);
}

void save_scaling(const ScalingParams& p, const std::filesystem::path& path) {
  std::string out = "itocsvm-scaler 1 dim=" + std::to_string(kFeatureCount) + "\n";
  for (std::size_t k = 0; k < kFeatureCount; ++k) {
    out += text::format_double(p.min[k]) + " " + text::format_double(p.max[k]) + "\n";
  }
  text::write_file(path, out);
}

ScalingParams load_scaling(const std::filesystem::path& path) {
  const auto content = text::read_file(path);
  const auto lines = text::split(content, '\n');
  if (lines.empty() || text::trim(lines[0]) != "itocsvm-scaler 1 dim=" + std::to_string(kFeatureCount)) {
    throw VersionMismatch("unsupported scaler file " + path.string());
  }
  if (lines.size() < kFeatureCount + 1) throw ParseError("truncated scaler file " + path.string());
  ScalingParams p;
  for (std::size_t k = 0; k < kFeatureCount; ++k) {
    auto tok = text::split_ws(lines[k + 1]);
    if (tok.size() != 2 || !text::parse_double(tok[0], p.min[k]) || !text::parse_double(tok[1], p.max[k]) ||
        p.max[k] < p.min[k]) {
      throw ParseError("bad scaler row " + std::to_string(k + 2) + " in " + path.string());
    }
  }
  return p;
}

void write_feature_dump(const std::filesystem::path& path, std::span<const FeatureVector> vectors) {
  std::string out = "window_start,src_ip,src_mac";
  for (std::size_t k = 1; k <= kFeatureCount; ++k) out += ",f" + std::to_string(k);
  out += '\n';
  for (const auto& v : vectors) {
    out += text::format_double(v.window_start());
    out += ',';
    if (v.source()) out += v.source()->ip;
    out += ',';
    if (v.source()) out += v.source()->mac;
    for (double x : v.values()) {
      out += ',';
      out += text::format_double(x);
    }
    out += '\n';
  }
  text::write_file(path, out);
}

}  // namespace itocsvm
