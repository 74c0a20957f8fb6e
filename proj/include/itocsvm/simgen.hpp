#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "itocsvm/types.hpp"

namespace itocsvm {

enum class NodeRole : std::uint8_t { HMI, PLC, SWITCH, WORKSTATION, INTRUDER };
enum class AttackKind : std::uint8_t { NETWORK_SCAN, ARP_SPOOF_MITM, SYN_FLOOD };

std::string_view to_string(NodeRole r) noexcept;
std::string_view to_string(AttackKind k) noexcept;

struct Node {
  std::string name;
  NodeRole role = NodeRole::PLC;
  SourceId id;
};

/// Periodic request/response exchange (e.g. MODBUS polling).
struct PollSpec {
  std::string from;
  std::string to;
  double hz = 1.0;
  Protocol protocol = Protocol::MODBUS;
  double phase_s = 0.0;
};

/// Poisson traffic from one node to another (`to` may be "broadcast").
struct LinkSpec {
  std::string from;
  std::string to;
  double rate_pps = 1.0;
  std::vector<std::pair<Protocol, double>> mix;  ///< relative weights
  bool reply = false;                            ///< destination answers each packet
};

struct AttackSpec {
  AttackKind kind = AttackKind::SYN_FLOOD;
  SourceId attacker;
  SourceId target;
  double start_s = 0.0;
  double end_s = 0.0;
  double intensity = 1.0;  ///< packets per second
  std::uint32_t probes_per_host = 1;  ///< NETWORK_SCAN: consecutive ports probed per host
};

struct ScenarioSpec {
  std::uint64_t seed = 0;
  double duration_s = 60.0;
  double window_s = 2.0;  ///< only used for the label sidecar
  std::vector<Node> topology;
  std::vector<PollSpec> polls;
  std::vector<LinkSpec> links;
  std::vector<AttackSpec> attacks;

  /// Throws InvalidSpec.
  void validate() const;
  const Node* node(std::string_view name) const noexcept;
  const Node* node(const SourceId& id) const noexcept;
};

struct GeneratedTraffic {
  std::vector<PacketRecord> records;  ///< sorted by timestamp
  std::vector<bool> is_attack;        ///< parallel to records
};

struct LabelRow {
  double window_start = 0.0;
  SourceId source;
  bool is_attack = false;
  friend bool operator==(const LabelRow&, const LabelRow&) = default;
};

/// Deterministic for a given spec: background draws come from per-component
/// streams derived from the seed, attack packets are evenly spaced.
///
/// NETWORK_SCAN: TCP FIN probes, `intensity` per second, to sequential ports
/// of one host (`probes_per_host` of them) before moving on to the next host
/// of the target's /24, starting at the target. ARP_SPOOF_MITM: forged ARP replies from the
/// attacker MAC claiming the target's IP towards every HMI that polls it and
/// each such HMI's IP towards the target; while it lasts, the polling traffic
/// between them is relayed under the attacker MAC.
/// SYN_FLOOD: TCP SYN packets from the attacker to the target.
GeneratedTraffic generate(const ScenarioSpec& spec);

/// One row per non-empty (window, source) pair, in extract_features order.
std::vector<LabelRow> window_labels(const GeneratedTraffic& traffic, double window_s);

void write_labels(const std::filesystem::path& path, const std::vector<LabelRow>& labels);
std::vector<LabelRow> read_labels(const std::filesystem::path& path);

/// Flat `key = value` scenario file; see scenarios/example.scn.
ScenarioSpec parse_scenario(std::string_view content, const std::string& origin = "<scenario>");
ScenarioSpec load_scenario(const std::filesystem::path& path);

/// The fixed small-SCADA topology the standard suite runs on.
ScenarioSpec standard_topology(std::uint64_t seed, double duration_s);

struct SuiteFiles {
  std::filesystem::path train;
  std::vector<std::pair<std::string, std::filesystem::path>> tests;   ///< ("A", testA.csv) …
  std::vector<std::pair<std::string, std::filesystem::path>> labels;  ///< ("A", testA.labels.csv) …
};

/// The four-scenario specs (A normal; B ARP spoof + scan; C SYN flood + scan;
/// D MITM) plus the attack-free training spec.
ScenarioSpec standard_train_spec(std::uint64_t seed);
std::vector<std::pair<std::string, ScenarioSpec>> standard_test_specs(std::uint64_t seed);

/// Writes train.csv, testA..D.csv and testA..D.labels.csv into out_dir.
SuiteFiles standard_suite(std::uint64_t seed, const std::filesystem::path& out_dir, double window_s = 2.0);
/// Locates the files of a suite directory written by standard_suite.
SuiteFiles suite_files(const std::filesystem::path& dir);

}  // namespace itocsvm
