#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace itocsvm {

// ---------------------------------------------------------------------------
// Protocols and TCP flags
// ---------------------------------------------------------------------------

/// Protocol classes seen in the packet logs. The enumeration order doubles as
/// the deterministic tie-break order for protocol rankings.
enum class Protocol : std::uint8_t { TCP, UDP, ARP, ICMP, MODBUS, OTHER };

inline constexpr std::size_t kProtocolCount = 6;
inline constexpr std::array<Protocol, kProtocolCount> kAllProtocols = {
    Protocol::TCP, Protocol::UDP, Protocol::ARP, Protocol::ICMP, Protocol::MODBUS, Protocol::OTHER};

std::string_view to_string(Protocol p) noexcept;
std::optional<Protocol> parse_protocol(std::string_view s) noexcept;

enum class TcpFlag : std::uint8_t { SYN = 1, ACK = 2, FIN = 4, RST = 8, PSH = 16, URG = 32 };

/// Small bitset over TcpFlag. Serialized as `|`-joined tokens in canonical
/// SYN, ACK, FIN, RST, PSH, URG order.
class TcpFlags {
 public:
  constexpr TcpFlags() = default;
  constexpr TcpFlags(std::initializer_list<TcpFlag> flags) {
    for (auto f : flags) bits_ |= static_cast<std::uint8_t>(f);
  }

  constexpr bool has(TcpFlag f) const noexcept { return (bits_ & static_cast<std::uint8_t>(f)) != 0; }
  constexpr bool empty() const noexcept { return bits_ == 0; }
  constexpr void set(TcpFlag f) noexcept { bits_ |= static_cast<std::uint8_t>(f); }
  constexpr std::uint8_t bits() const noexcept { return bits_; }

  std::string to_string() const;
  /// Parses `SYN|ACK`; empty input yields no flags. Unknown tokens -> nullopt.
  static std::optional<TcpFlags> parse(std::string_view s);

  friend constexpr bool operator==(TcpFlags, TcpFlags) = default;

 private:
  std::uint8_t bits_ = 0;
};

// ---------------------------------------------------------------------------
// Addresses
// ---------------------------------------------------------------------------

bool is_valid_ipv4(std::string_view s) noexcept;
bool is_valid_mac(std::string_view s) noexcept;

/// A traffic origin. ARP spoofing reuses a victim IP with a foreign MAC, so
/// identity is the (ip, mac) pair.
struct SourceId {
  std::string ip;
  std::string mac;

  friend auto operator<=>(const SourceId&, const SourceId&) = default;
  friend bool operator==(const SourceId&, const SourceId&) = default;

  std::string to_string() const { return ip + "/" + mac; }
};

struct SourceIdHash {
  std::size_t operator()(const SourceId& s) const noexcept {
    const std::size_t h = std::hash<std::string>{}(s.ip);
    return h ^ (std::hash<std::string>{}(s.mac) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  }
};

// ---------------------------------------------------------------------------
// Packets
// ---------------------------------------------------------------------------

struct PacketRecord {
  double timestamp = 0.0;  ///< seconds since capture start
  std::string src_ip;
  std::string src_mac;
  std::string dst_ip;
  std::string dst_mac;
  Protocol protocol = Protocol::OTHER;
  TcpFlags tcp_flags;  ///< empty unless protocol == TCP
  std::uint32_t length = 0;

  SourceId source() const { return SourceId{src_ip, src_mac}; }
  friend bool operator==(const PacketRecord&, const PacketRecord&) = default;
};

// ---------------------------------------------------------------------------
// Feature vectors
// ---------------------------------------------------------------------------

inline constexpr std::size_t kFeatureCount = 8;
using FeatureValues = std::array<double, kFeatureCount>;

/// Zero-based positions of the windowed features. ARP count sits at the
/// fifth slot.
enum FeatureIndex : std::size_t {
  kPktRate = 0,
  kByteRate = 1,
  kDistinctDst = 2,
  kTcpSynCount = 3,
  kArpCount = 4,
  kTcpFinCount = 5,
  kUdpFraction = 6,
  kProtocolEntropy = 7,
};

std::string_view feature_name(std::size_t index) noexcept;

/// Descriptor of one tumbling window for one scope (global when `source` is
/// empty). Construction rejects non-finite values and wrong lengths.
class FeatureVector {
 public:
  FeatureVector(double window_start, std::optional<SourceId> source, const FeatureValues& values);
  FeatureVector(double window_start, std::optional<SourceId> source, std::span<const double> values);

  double window_start() const noexcept { return window_start_; }
  const std::optional<SourceId>& source() const noexcept { return source_; }
  const FeatureValues& values() const noexcept { return values_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;

 private:
  double window_start_;
  std::optional<SourceId> source_;
  FeatureValues values_;
};

// ---------------------------------------------------------------------------
// One-class SVM model
// ---------------------------------------------------------------------------

/// Whether the configured kernel value is γ in exp(−γ‖x−y‖²) or the width σ
/// in exp(−‖x−y‖²/(2σ²)).
enum class KernelMode : std::uint8_t { Gamma, Sigma };

std::string_view to_string(KernelMode m) noexcept;
std::optional<KernelMode> parse_kernel_mode(std::string_view s) noexcept;

struct RbfKernel {
  KernelMode mode = KernelMode::Gamma;
  double param = 0.01;

  /// Coefficient γ of the squared distance.
  double gamma() const noexcept { return mode == KernelMode::Gamma ? param : 1.0 / (2.0 * param * param); }
  friend bool operator==(const RbfKernel&, const RbfKernel&) = default;
};

struct OcsvmModel {
  std::vector<FeatureValues> support_vectors;
  std::vector<double> alphas;
  double rho = 0.0;
  RbfKernel kernel;
  double nu = 0.001;
  std::size_t n_train = 0;
  std::optional<SourceId> scope;
  /// Fingerprint of the scaler the training data was scaled with; 0 = unset.
  std::uint64_t scaler_fingerprint = 0;

  /// Throws DomainError when the alpha/support-vector invariants do not hold.
  void validate() const;
  friend bool operator==(const OcsvmModel&, const OcsvmModel&) = default;
};

// ---------------------------------------------------------------------------
// Alerts and alarms
// ---------------------------------------------------------------------------

enum class AlertKind : std::uint8_t { OCSVM, UNMARKED_SOURCE };
enum class Severity : std::uint8_t { POSSIBLE, MEDIUM, SEVERE };

std::string_view to_string(AlertKind k) noexcept;
std::string_view to_string(Severity s) noexcept;
std::optional<Severity> parse_severity(std::string_view s) noexcept;

struct Alert {
  double window_start = 0.0;
  SourceId source;
  double ensemble_score = 0.0;  ///< q_e
  double weighted_score = 0.0;  ///< q_s
  AlertKind kind = AlertKind::OCSVM;

  friend bool operator==(const Alert&, const Alert&) = default;
};

struct AggregatedAlarm {
  SourceId source;
  double qa = 0.0;        ///< severity mass
  std::uint64_t qb = 0;   ///< folded alert count
  std::optional<Severity> severity;
  AlertKind origin = AlertKind::OCSVM;
  double first_seen = 0.0;
  double last_seen = 0.0;

  friend bool operator==(const AggregatedAlarm&, const AggregatedAlarm&) = default;
};

struct SourceProfile {
  SourceId source;
  std::uint64_t packet_count = 0;
  /// Protocols by descending training usage; rank = position + 1, at most 5.
  std::vector<Protocol> protocol_ranks;

  friend bool operator==(const SourceProfile&, const SourceProfile&) = default;
};

}  // namespace itocsvm
