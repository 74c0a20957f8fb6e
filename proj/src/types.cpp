#include "itocsvm/types.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>
#include <system_error>

#include "itocsvm/errors.hpp"
#include "itocsvm/text.hpp"

namespace itocsvm {

namespace {

constexpr std::array<std::string_view, kProtocolCount> kProtocolNames = {"TCP", "UDP", "ARP",
                                                                          "ICMP", "MODBUS", "OTHER"};

struct FlagName {
  TcpFlag flag;
  std::string_view name;
};
constexpr std::array<FlagName, 6> kFlagNames = {{{TcpFlag::SYN, "SYN"},
                                                  {TcpFlag::ACK, "ACK"},
                                                  {TcpFlag::FIN, "FIN"},
                                                  {TcpFlag::RST, "RST"},
                                                  {TcpFlag::PSH, "PSH"},
                                                  {TcpFlag::URG, "URG"}}};

constexpr std::array<std::string_view, kFeatureCount> kFeatureNames = {
    "pkt_rate", "byte_rate", "distinct_dst_count", "tcp_syn_count",
    "arp_count", "tcp_fin_count", "udp_fraction", "protocol_entropy"};

bool is_hex(char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}

}  // namespace

std::string_view to_string(Protocol p) noexcept { return kProtocolNames[static_cast<std::size_t>(p)]; }

std::optional<Protocol> parse_protocol(std::string_view s) noexcept {
  for (std::size_t i = 0; i < kProtocolCount; ++i) {
    if (kProtocolNames[i] == s) return kAllProtocols[i];
  }
  return std::nullopt;
}

std::string TcpFlags::to_string() const {
  std::string out;
  for (const auto& f : kFlagNames) {
    if (!has(f.flag)) continue;
    if (!out.empty()) out += '|';
    out += f.name;
  }
  return out;
}

std::optional<TcpFlags> TcpFlags::parse(std::string_view s) {
  TcpFlags flags;
  if (s.empty()) return flags;
  for (auto token : text::split(s, '|')) {
    auto it = std::find_if(kFlagNames.begin(), kFlagNames.end(),
                           [&](const FlagName& f) { return f.name == token; });
    if (it == kFlagNames.end()) return std::nullopt;
    flags.set(it->flag);
  }
  return flags;
}

bool is_valid_ipv4(std::string_view s) noexcept {
  auto parts = text::split(s, '.');
  if (parts.size() != 4) return false;
  for (auto p : parts) {
    if (p.empty() || p.size() > 3) return false;
    unsigned v = 0;
    auto [ptr, ec] = std::from_chars(p.data(), p.data() + p.size(), v);
    if (ec != std::errc{} || ptr != p.data() + p.size() || v > 255) return false;
  }
  return true;
}

bool is_valid_mac(std::string_view s) noexcept {
  if (s.size() != 17) return false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i % 3 == 2) {
      if (s[i] != ':') return false;
    } else if (!is_hex(s[i])) {
      return false;
    }
  }
  return true;
}

std::string_view feature_name(std::size_t index) noexcept {
  return index < kFeatureCount ? kFeatureNames[index] : std::string_view{};
}

FeatureVector::FeatureVector(double window_start, std::optional<SourceId> source, const FeatureValues& values)
    : window_start_(window_start), source_(std::move(source)), values_(values) {
  if (!std::isfinite(window_start_)) throw DomainError("feature vector window start is not finite");
  for (double v : values_) {
    if (!std::isfinite(v)) throw DomainError("feature vector contains a non-finite value");
  }
}

namespace {
FeatureValues to_values(std::span<const double> values) {
  if (values.size() != kFeatureCount) {
    throw DimensionMismatch("feature vector needs " + std::to_string(kFeatureCount) + " values, got " +
                            std::to_string(values.size()));
  }
  FeatureValues out{};
  std::copy(values.begin(), values.end(), out.begin());
  return out;
}
}  // namespace

FeatureVector::FeatureVector(double window_start, std::optional<SourceId> source, std::span<const double> values)
    : FeatureVector(window_start, std::move(source), to_values(values)) {}

std::string_view to_string(KernelMode m) noexcept { return m == KernelMode::Gamma ? "gamma" : "sigma"; }

std::optional<KernelMode> parse_kernel_mode(std::string_view s) noexcept {
  if (s == "gamma") return KernelMode::Gamma;
  if (s == "sigma") return KernelMode::Sigma;
  return std::nullopt;
}

void OcsvmModel::validate() const {
  if (alphas.size() != support_vectors.size()) {
    throw DomainError("model has " + std::to_string(alphas.size()) + " alphas for " +
                      std::to_string(support_vectors.size()) + " support vectors");
  }
  if (!(nu > 0.0 && nu <= 1.0)) throw DomainError("model nu outside (0, 1]");
  if (!(kernel.param > 0.0)) throw DomainError("kernel parameter must be positive");
  if (!std::isfinite(rho)) throw DomainError("model rho is not finite");
  const double upper = n_train > 0 ? 1.0 / (nu * static_cast<double>(n_train)) : 1.0;
  double sum = 0.0;
  for (double a : alphas) {
    if (!(a > 0.0) || a > upper * (1.0 + 1e-9)) throw DomainError("model alpha outside (0, 1/(nu*n)]");
    sum += a;
  }
  if (std::abs(sum - 1.0) > 1e-6) throw DomainError("model alphas do not sum to 1");
}

std::string_view to_string(AlertKind k) noexcept { return k == AlertKind::OCSVM ? "OCSVM" : "UNMARKED_SOURCE"; }

std::string_view to_string(Severity s) noexcept {
  switch (s) {
    case Severity::POSSIBLE: return "POSSIBLE";
    case Severity::MEDIUM: return "MEDIUM";
    case Severity::SEVERE: return "SEVERE";
  }
  return "POSSIBLE";
}

std::optional<Severity> parse_severity(std::string_view s) noexcept {
  if (s == "POSSIBLE") return Severity::POSSIBLE;
  if (s == "MEDIUM") return Severity::MEDIUM;
  if (s == "SEVERE") return Severity::SEVERE;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// text helpers
// ---------------------------------------------------------------------------

namespace text {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) throw Error("cannot format double");
  return std::string(buf, ptr);
}

bool parse_double(std::string_view s, double& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

bool parse_u64(std::string_view s, std::uint64_t& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

bool parse_i64(std::string_view s, std::int64_t& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace text

}  // namespace itocsvm
