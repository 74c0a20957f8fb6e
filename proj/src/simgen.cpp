#include "itocsvm/simgen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>

#include "itocsvm/errors.hpp"
#include "itocsvm/packet_log.hpp"
#include "itocsvm/text.hpp"

namespace itocsvm {

std::string_view to_string(NodeRole r) noexcept {
  switch (r) {
    case NodeRole::HMI: return "HMI";
    case NodeRole::PLC: return "PLC";
    case NodeRole::SWITCH: return "SWITCH";
    case NodeRole::WORKSTATION: return "WORKSTATION";
    case NodeRole::INTRUDER: return "INTRUDER";
  }
  return "PLC";
}

std::string_view to_string(AttackKind k) noexcept {
  switch (k) {
    case AttackKind::NETWORK_SCAN: return "NETWORK_SCAN";
    case AttackKind::ARP_SPOOF_MITM: return "ARP_SPOOF_MITM";
    case AttackKind::SYN_FLOOD: return "SYN_FLOOD";
  }
  return "SYN_FLOOD";
}

namespace {

constexpr std::string_view kBroadcast = "broadcast";
constexpr std::string_view kBroadcastMac = "ff:ff:ff:ff:ff:ff";

std::optional<NodeRole> parse_role(std::string_view s) {
  for (auto r : {NodeRole::HMI, NodeRole::PLC, NodeRole::SWITCH, NodeRole::WORKSTATION, NodeRole::INTRUDER}) {
    if (s == to_string(r)) return r;
  }
  return std::nullopt;
}

std::optional<AttackKind> parse_attack_kind(std::string_view s) {
  for (auto k : {AttackKind::NETWORK_SCAN, AttackKind::ARP_SPOOF_MITM, AttackKind::SYN_FLOOD}) {
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Explicit draws on raw engine bits, so output does not depend on the
// standard library's distribution implementations.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t component) : eng_(splitmix64(seed ^ splitmix64(component + 1))) {}
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::uint32_t below(std::uint32_t n) { return static_cast<std::uint32_t>(uniform() * n); }
  double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

 private:
  std::mt19937_64 eng_;
};

struct Emitted {
  PacketRecord r;
  bool attack = false;
};

PacketRecord packet(double t, const SourceId& src, std::string_view dst_ip, std::string_view dst_mac, Protocol p,
                    TcpFlags flags, std::uint32_t length) {
  PacketRecord r;
  r.timestamp = t;
  r.src_ip = src.ip;
  r.src_mac = src.mac;
  r.dst_ip = std::string(dst_ip);
  r.dst_mac = std::string(dst_mac);
  r.protocol = p;
  r.tcp_flags = p == Protocol::TCP ? flags : TcpFlags{};
  r.length = length;
  return r;
}

std::uint32_t body_length(Protocol p, Stream& rng) {
  switch (p) {
    case Protocol::TCP: return 60 + rng.below(541);
    case Protocol::UDP: return 80 + rng.below(221);
    case Protocol::ARP: return 60;
    case Protocol::ICMP: return 74;
    case Protocol::MODBUS: return 66 + rng.below(6);
    case Protocol::OTHER: return 60 + rng.below(141);
  }
  return 60;
}

TcpFlags chatter_flags(Stream& rng) {
  const double u = rng.uniform();
  if (u < 0.04) return {TcpFlag::SYN};
  if (u < 0.08) return {TcpFlag::FIN, TcpFlag::ACK};
  if (u < 0.5) return {TcpFlag::PSH, TcpFlag::ACK};
  return {TcpFlag::ACK};
}

Protocol pick(const std::vector<std::pair<Protocol, double>>& mix, Stream& rng) {
  double total = 0.0;
  for (const auto& [p, w] : mix) total += w;
  double u = rng.uniform() * total;
  for (const auto& [p, w] : mix) {
    if (u < w) return p;
    u -= w;
  }
  return mix.back().first;
}

double evenly(double start, std::size_t k, double rate) { return start + static_cast<double>(k) / rate; }

std::size_t attack_count(const AttackSpec& a) {
  return static_cast<std::size_t>(std::llround((a.end_s - a.start_s) * a.intensity));
}

}  // namespace

const Node* ScenarioSpec::node(std::string_view name) const noexcept {
  for (const auto& n : topology) {
    if (n.name == name) return &n;
  }
  return nullptr;
}

const Node* ScenarioSpec::node(const SourceId& id) const noexcept {
  for (const auto& n : topology) {
    if (n.id == id) return &n;
  }
  return nullptr;
}

void ScenarioSpec::validate() const {
  if (!(duration_s > 0.0) || !std::isfinite(duration_s)) throw InvalidSpec("duration_s must be positive");
  if (!(window_s > 0.0)) throw InvalidSpec("window_s must be positive");
  bool hmi = false;
  bool plc = false;
  for (const auto& n : topology) {
    if (!is_valid_ipv4(n.id.ip) || !is_valid_mac(n.id.mac)) throw InvalidSpec("node " + n.name + " has a bad address");
    hmi |= n.role == NodeRole::HMI;
    plc |= n.role == NodeRole::PLC;
    if (std::count_if(topology.begin(), topology.end(), [&](const Node& o) { return o.name == n.name; }) > 1) {
      throw InvalidSpec("duplicate node name " + n.name);
    }
  }
  if (!hmi || !plc) throw InvalidSpec("topology needs at least one HMI and one PLC");
  for (const auto& p : polls) {
    if (!node(p.from) || !node(p.to)) throw InvalidSpec("poll references unknown node");
    if (!(p.hz > 0.0) || p.phase_s < 0.0) throw InvalidSpec("poll rate must be positive");
  }
  for (const auto& l : links) {
    if (!node(l.from) || (l.to != kBroadcast && !node(l.to))) throw InvalidSpec("link references unknown node");
    if (!(l.rate_pps >= 0.0) || l.mix.empty()) throw InvalidSpec("link needs a rate and a protocol mix");
    double total = 0.0;
    for (const auto& [p, w] : l.mix) {
      if (!(w >= 0.0)) throw InvalidSpec("negative protocol weight");
      total += w;
    }
    if (!(total > 0.0)) throw InvalidSpec("protocol mix has zero weight");
    if (l.reply && l.to == kBroadcast) throw InvalidSpec("broadcast links cannot reply");
  }
  for (const auto& a : attacks) {
    if (!(a.start_s < a.end_s)) throw InvalidSpec("attack needs start_s < end_s");
    if (a.start_s < 0.0 || a.end_s > duration_s) throw InvalidSpec("attack interval outside [0, duration_s]");
    if (!(a.intensity > 0.0)) throw InvalidSpec("attack intensity must be positive");
    if (a.probes_per_host == 0) throw InvalidSpec("probes_per_host must be positive");
    if (!is_valid_ipv4(a.attacker.ip) || !is_valid_mac(a.attacker.mac) || !is_valid_ipv4(a.target.ip) ||
        !is_valid_mac(a.target.mac)) {
      throw InvalidSpec("attack has a bad address");
    }
    if (a.kind == AttackKind::ARP_SPOOF_MITM) {
      const bool polled = std::any_of(polls.begin(), polls.end(), [&](const PollSpec& p) {
        return node(p.to)->id == a.target && node(p.from)->role == NodeRole::HMI;
      });
      if (!polled) throw InvalidSpec("MITM target " + a.target.ip + " is not polled by any HMI");
    }
  }
}

GeneratedTraffic generate(const ScenarioSpec& spec) {
  spec.validate();
  std::vector<Emitted> out;

  std::vector<std::string> arp_targets;
  for (const auto& n : spec.topology) {
    if (n.role != NodeRole::INTRUDER) arp_targets.push_back(n.id.ip);
  }

  for (std::size_t i = 0; i < spec.polls.size(); ++i) {
    const auto& p = spec.polls[i];
    const auto& from = spec.node(p.from)->id;
    const auto& to = spec.node(p.to)->id;
    Stream rng(spec.seed, i);
    const TcpFlags flags{TcpFlag::PSH, TcpFlag::ACK};
    for (std::size_t k = 0;; ++k) {
      const double t = p.phase_s + static_cast<double>(k) / p.hz + rng.uniform(0.0, 0.002);
      if (t >= spec.duration_s) break;
      out.push_back({packet(t, from, to.ip, to.mac, p.protocol, flags, body_length(p.protocol, rng))});
      const double back = t + rng.uniform(0.003, 0.008);
      out.push_back({packet(back, to, from.ip, from.mac, p.protocol, {TcpFlag::ACK}, body_length(p.protocol, rng) + 4)});
    }
  }

  for (std::size_t i = 0; i < spec.links.size(); ++i) {
    const auto& l = spec.links[i];
    if (l.rate_pps == 0.0) continue;
    const auto& from = spec.node(l.from)->id;
    const bool broadcast = l.to == kBroadcast;
    const SourceId* to = broadcast ? nullptr : &spec.node(l.to)->id;
    Stream rng(spec.seed, 1000 + i);
    for (double t = rng.exponential(l.rate_pps); t < spec.duration_s; t += rng.exponential(l.rate_pps)) {
      const Protocol proto = pick(l.mix, rng);
      const TcpFlags flags = proto == Protocol::TCP ? chatter_flags(rng) : TcpFlags{};
      std::string dst_ip;
      std::string dst_mac;
      if (broadcast) {
        dst_ip = proto == Protocol::ARP ? arp_targets[rng.below(static_cast<std::uint32_t>(arp_targets.size()))]
                                        : std::string("255.255.255.255");
        dst_mac = std::string(kBroadcastMac);
      } else {
        dst_ip = to->ip;
        dst_mac = to->mac;
      }
      out.push_back({packet(t, from, dst_ip, dst_mac, proto, flags, body_length(proto, rng))});
      if (l.reply) {
        TcpFlags back_flags{TcpFlag::ACK};
        if (flags.has(TcpFlag::SYN)) back_flags.set(TcpFlag::SYN);
        const double back = t + rng.uniform(0.001, 0.005);
        out.push_back({packet(back, *to, from.ip, from.mac, proto, back_flags, body_length(proto, rng))});
      }
    }
  }

  const std::size_t background = out.size();
  for (const auto& a : spec.attacks) {
    const std::size_t n = attack_count(a);
    switch (a.kind) {
      case AttackKind::SYN_FLOOD:
        for (std::size_t k = 0; k < n; ++k) {
          out.push_back({packet(evenly(a.start_s, k, a.intensity), a.attacker, a.target.ip, a.target.mac,
                                Protocol::TCP, {TcpFlag::SYN}, 60),
                         true});
        }
        break;
      case AttackKind::NETWORK_SCAN: {
        // FIN probes walk sequential ports of one host, then move to the next
        // host of the target's /24.
        const auto dot = a.target.ip.rfind('.');
        const std::string prefix = a.target.ip.substr(0, dot + 1);
        const int first = std::stoi(a.target.ip.substr(dot + 1));
        for (std::size_t k = 0; k < n; ++k) {
          const auto step = static_cast<int>((k / a.probes_per_host) % 254);
          const int octet = 1 + (first - 1 + step) % 254;
          const std::string ip = prefix + std::to_string(octet);
          std::string mac(kBroadcastMac);
          for (const auto& node : spec.topology) {
            if (node.id.ip == ip) mac = node.id.mac;
          }
          out.push_back(
              {packet(evenly(a.start_s, k, a.intensity), a.attacker, ip, mac, Protocol::TCP, {TcpFlag::FIN}, 60), true});
        }
        break;
      }
      case AttackKind::ARP_SPOOF_MITM: {
        // Victim pairs: the target and every HMI polling it.
        std::vector<SourceId> peers;
        for (const auto& p : spec.polls) {
          const Node* from = spec.node(p.from);
          if (spec.node(p.to)->id == a.target && from->role == NodeRole::HMI &&
              std::find(peers.begin(), peers.end(), from->id) == peers.end()) {
            peers.push_back(from->id);
          }
        }
        if (peers.empty()) throw InvalidSpec("MITM target " + a.target.ip + " is not polled by any HMI");
        // Alternating claims: target IP towards a peer, peer IP towards the target.
        std::vector<std::pair<SourceId, SourceId>> claims;  // (forged source, victim)
        for (const auto& peer : peers) {
          claims.push_back({SourceId{a.target.ip, a.attacker.mac}, peer});
          claims.push_back({SourceId{peer.ip, a.attacker.mac}, a.target});
        }
        for (std::size_t k = 0; k < n; ++k) {
          const auto& [forged, victim] = claims[k % claims.size()];
          out.push_back({packet(evenly(a.start_s, k, a.intensity), forged, victim.ip, victim.mac, Protocol::ARP, {}, 60),
                         true});
        }
        auto between = [&](const PacketRecord& r) {
          const bool to_target = r.dst_ip == a.target.ip;
          const bool from_target = r.src_ip == a.target.ip && r.src_mac == a.target.mac;
          for (const auto& peer : peers) {
            if (to_target && r.src_ip == peer.ip && r.src_mac == peer.mac) return true;
            if (from_target && r.dst_ip == peer.ip) return true;
          }
          return false;
        };
        for (std::size_t i = 0; i < background; ++i) {
          auto& r = out[i].r;
          if (r.timestamp < a.start_s || r.timestamp >= a.end_s || !between(r)) continue;
          // Poisoned caches send the frame to the attacker, which forwards it.
          r.dst_mac = a.attacker.mac;
          PacketRecord relay = r;
          relay.timestamp = r.timestamp + 0.0005;
          relay.src_mac = a.attacker.mac;
          if (r.dst_ip == a.target.ip) {
            relay.dst_mac = a.target.mac;
          } else {
            for (const auto& peer : peers) {
              if (peer.ip == r.dst_ip) relay.dst_mac = peer.mac;
            }
          }
          out.push_back({std::move(relay), true});
        }
        break;
      }
    }
  }

  for (auto& e : out) e.r.timestamp = std::round(e.r.timestamp * 1e6) / 1e6;
  std::erase_if(out, [&](const Emitted& e) { return e.r.timestamp >= spec.duration_s || e.r.timestamp < 0.0; });
  std::stable_sort(out.begin(), out.end(),
                   [](const Emitted& a, const Emitted& b) { return a.r.timestamp < b.r.timestamp; });

  GeneratedTraffic g;
  g.records.reserve(out.size());
  g.is_attack.reserve(out.size());
  for (auto& e : out) {
    g.records.push_back(std::move(e.r));
    g.is_attack.push_back(e.attack);
  }
  return g;
}

std::vector<LabelRow> window_labels(const GeneratedTraffic& traffic, double window_s) {
  if (!(window_s > 0.0)) throw DomainError("window_s must be positive");
  std::map<std::pair<std::int64_t, SourceId>, bool> cells;
  for (std::size_t i = 0; i < traffic.records.size(); ++i) {
    const auto& r = traffic.records[i];
    const auto w = static_cast<std::int64_t>(std::floor(r.timestamp / window_s));
    auto& flag = cells[{w, r.source()}];
    flag = flag || traffic.is_attack[i];
  }
  std::vector<LabelRow> out;
  out.reserve(cells.size());
  for (const auto& [key, attack] : cells) {
    out.push_back(LabelRow{static_cast<double>(key.first) * window_s, key.second, attack});
  }
  return out;
}

void write_labels(const std::filesystem::path& path, const std::vector<LabelRow>& labels) {
  std::string s = "window_start,src_ip,src_mac,is_attack\n";
  for (const auto& l : labels) {
    s += text::format_double(l.window_start) + "," + l.source.ip + "," + l.source.mac + "," + (l.is_attack ? "1" : "0") +
         "\n";
  }
  text::write_file(path, s);
}

std::vector<LabelRow> read_labels(const std::filesystem::path& path) {
  const auto content = text::read_file(path);
  const auto lines = text::split(content, '\n');
  if (lines.empty() || text::trim(lines[0]) != "window_start,src_ip,src_mac,is_attack") {
    throw ParseError("missing label header in " + path.string());
  }
  std::vector<LabelRow> out;
  for (std::size_t ln = 1; ln < lines.size(); ++ln) {
    const auto line = text::trim(lines[ln]);
    if (line.empty()) continue;
    const auto f = text::split(line, ',');
    LabelRow row;
    if (f.size() != 4 || !text::parse_double(f[0], row.window_start) || (f[3] != "0" && f[3] != "1")) {
      throw ParseError(path.string() + ":" + std::to_string(ln + 1) + ": bad label row");
    }
    row.source = SourceId{std::string(f[1]), std::string(f[2])};
    row.is_attack = f[3] == "1";
    out.push_back(std::move(row));
  }
  return out;
}

ScenarioSpec parse_scenario(std::string_view content, const std::string& origin) {
  const auto kv = text::parse_key_values(content, origin);
  ScenarioSpec spec;
  auto bad = [&](const std::string& key, const std::string& why) {
    return InvalidSpec(origin + ": " + key + ": " + why);
  };
  auto number = [&](const std::string& key, std::string_view tok) {
    double v = 0.0;
    if (!text::parse_double(tok, v)) throw bad(key, "not a number: '" + std::string(tok) + "'");
    return v;
  };

  // Nodes first: the other entries refer to them by name.
  for (const auto& [key, value] : kv) {
    if (!key.starts_with("node.")) continue;
    const auto f = text::split_ws(value);
    if (f.size() != 3) throw bad(key, "expected ROLE ip mac");
    const auto role = parse_role(f[0]);
    if (!role) throw bad(key, "unknown role '" + std::string(f[0]) + "'");
    std::string mac(f[2]);
    std::transform(mac.begin(), mac.end(), mac.begin(), [](unsigned char c) { return std::tolower(c); });
    spec.topology.push_back(Node{key.substr(5), *role, SourceId{std::string(f[1]), mac}});
  }
  auto node_id = [&](const std::string& key, std::string_view name) {
    const Node* n = spec.node(name);
    if (!n) throw bad(key, "unknown node '" + std::string(name) + "'");
    return n->id;
  };

  for (const auto& [key, value] : kv) {
    const auto f = text::split_ws(value);
    if (key == "seed") {
      if (!text::parse_u64(value, spec.seed)) throw bad(key, "not an unsigned integer");
    } else if (key == "duration_s") {
      spec.duration_s = number(key, value);
    } else if (key == "window_s") {
      spec.window_s = number(key, value);
    } else if (key.starts_with("node.")) {
      continue;
    } else if (key.starts_with("poll.")) {
      // from to hz [protocol] [phase]
      if (f.size() < 3 || f.size() > 5) throw bad(key, "expected from to hz [protocol] [phase_s]");
      PollSpec p{std::string(f[0]), std::string(f[1]), number(key, f[2])};
      if (f.size() >= 4) {
        const auto proto = parse_protocol(f[3]);
        if (!proto) throw bad(key, "unknown protocol");
        p.protocol = *proto;
      }
      if (f.size() == 5) p.phase_s = number(key, f[4]);
      spec.polls.push_back(std::move(p));
    } else if (key.starts_with("link.")) {
      // from to rate MIX [reply], MIX = PROTO:weight,PROTO:weight
      if (f.size() < 4 || f.size() > 5) throw bad(key, "expected from to rate MIX [reply]");
      LinkSpec l{std::string(f[0]), std::string(f[1]), number(key, f[2]), {}, false};
      for (auto item : text::split(f[3], ',')) {
        const auto parts = text::split(item, ':');
        const auto proto = parts.empty() ? std::nullopt : parse_protocol(parts[0]);
        if (!proto || parts.size() > 2) throw bad(key, "bad mix entry '" + std::string(item) + "'");
        l.mix.emplace_back(*proto, parts.size() == 2 ? number(key, parts[1]) : 1.0);
      }
      if (f.size() == 5) {
        if (f[4] != "reply") throw bad(key, "trailing token must be 'reply'");
        l.reply = true;
      }
      spec.links.push_back(std::move(l));
    } else if (key.starts_with("attack.")) {
      if (f.size() < 6 || f.size() > 7) {
        throw bad(key, "expected KIND attacker target start_s end_s intensity [probes_per_host]");
      }
      const auto kind = parse_attack_kind(f[0]);
      if (!kind) throw bad(key, "unknown attack kind '" + std::string(f[0]) + "'");
      AttackSpec a{*kind, node_id(key, f[1]), node_id(key, f[2]), number(key, f[3]), number(key, f[4]),
                   number(key, f[5])};
      if (f.size() == 7) {
        std::uint64_t probes = 0;
        if (!text::parse_u64(f[6], probes) || probes == 0 || probes > 65535) throw bad(key, "bad probes_per_host");
        a.probes_per_host = static_cast<std::uint32_t>(probes);
      }
      spec.attacks.push_back(std::move(a));
    } else {
      throw bad(key, "unknown key");
    }
  }
  spec.validate();
  return spec;
}

ScenarioSpec load_scenario(const std::filesystem::path& path) {
  return parse_scenario(text::read_file(path), path.string());
}

namespace {

SourceId host(int octet) {
  char mac[18];
  std::snprintf(mac, sizeof(mac), "02:00:00:00:00:%02x", octet);
  return SourceId{"10.0.0." + std::to_string(octet), mac};
}

const SourceId kIntruder{"10.0.0.66", "02:de:ad:be:ef:66"};

}  // namespace

ScenarioSpec standard_topology(std::uint64_t seed, double duration_s) {
  ScenarioSpec s;
  s.seed = seed;
  s.duration_s = duration_s;
  s.topology = {
      {"sw", NodeRole::SWITCH, host(2)},       {"hmi", NodeRole::HMI, host(10)},
      {"plc1", NodeRole::PLC, host(21)},       {"plc2", NodeRole::PLC, host(22)},
      {"ws", NodeRole::WORKSTATION, host(30)}, {"hist", NodeRole::WORKSTATION, host(40)},
      {"intruder", NodeRole::INTRUDER, kIntruder},
  };
  for (int k = 1; k <= 10; ++k) {
    s.topology.push_back({"rtu" + std::to_string(k), NodeRole::PLC, host(100 + k)});
  }

  s.polls = {
      {"hmi", "plc1", 10.0, Protocol::MODBUS, 0.0},
      {"hmi", "plc2", 10.0, Protocol::MODBUS, 0.05},
      {"hist", "plc1", 1.0, Protocol::MODBUS, 0.3},
      {"hist", "plc2", 1.0, Protocol::MODBUS, 0.7},
  };
  for (int k = 1; k <= 10; ++k) {
    s.polls.push_back({"hist", "rtu" + std::to_string(k), 0.2, Protocol::MODBUS, 0.5 * k - 0.25});
  }

  using P = Protocol;
  s.links = {
      {"ws", "hmi", 3.0, {{P::TCP, 1.0}}, true},
      {"ws", "hist", 1.0, {{P::UDP, 0.8}, {P::TCP, 0.2}}, false},
      {"hist", "ws", 0.5, {{P::UDP, 1.0}}, false},
      {"ws", "broadcast", 0.1, {{P::ARP, 1.0}}, false},
      {"sw", "broadcast", 0.2, {{P::ARP, 0.5}, {P::OTHER, 0.5}}, false},
      {"hmi", "broadcast", 0.05, {{P::ARP, 1.0}}, false},
      {"plc1", "broadcast", 0.05, {{P::ARP, 1.0}}, false},
      {"plc2", "broadcast", 0.05, {{P::ARP, 1.0}}, false},
      {"hist", "broadcast", 0.05, {{P::ARP, 1.0}}, false},
      {"ws", "plc1", 0.02, {{P::ICMP, 1.0}}, true},
  };
  return s;
}

ScenarioSpec standard_train_spec(std::uint64_t seed) { return standard_topology(splitmix64(seed ^ 0x7a11), 900.0); }

std::vector<std::pair<std::string, ScenarioSpec>> standard_test_specs(std::uint64_t seed) {
  const SourceId ws = host(30);
  const SourceId plc1 = host(21);
  const SourceId plc2 = host(22);
  using K = AttackKind;

  auto a = standard_topology(splitmix64(seed ^ 0xa), 200.0);

  auto b = standard_topology(splitmix64(seed ^ 0xb), 400.0);
  b.attacks = {
      {K::ARP_SPOOF_MITM, kIntruder, plc1, 100.0, 160.0, 10.0},
      {K::NETWORK_SCAN, ws, plc2, 30.0, 330.0, 5.0, 2},
  };

  auto c = standard_topology(splitmix64(seed ^ 0xc), 1200.0);
  c.attacks = {
      {K::SYN_FLOOD, kIntruder, plc1, 100.0, 1100.0, 100.0},
      {K::NETWORK_SCAN, ws, plc2, 200.0, 800.0, 5.0, 2},
  };

  auto d = standard_topology(splitmix64(seed ^ 0xd), 400.0);
  d.attacks = {{K::ARP_SPOOF_MITM, kIntruder, plc1, 100.0, 300.0, 2.0}};

  return {{"A", std::move(a)}, {"B", std::move(b)}, {"C", std::move(c)}, {"D", std::move(d)}};
}

SuiteFiles suite_files(const std::filesystem::path& dir) {
  SuiteFiles f;
  f.train = dir / "train.csv";
  for (const char* name : {"A", "B", "C", "D"}) {
    f.tests.emplace_back(name, dir / (std::string("test") + name + ".csv"));
    f.labels.emplace_back(name, dir / (std::string("test") + name + ".labels.csv"));
  }
  return f;
}

SuiteFiles standard_suite(std::uint64_t seed, const std::filesystem::path& out_dir, double window_s) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (!std::filesystem::is_directory(out_dir)) throw IoError("cannot create output directory " + out_dir.string());
  const auto files = suite_files(out_dir);

  write_packet_log(files.train, generate(standard_train_spec(seed)).records);
  const auto specs = standard_test_specs(seed);
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const auto traffic = generate(specs[i].second);
    write_packet_log(files.tests[i].second, traffic.records);
    write_labels(files.labels[i].second, window_labels(traffic, window_s));
  }
  return files;
}

}  // namespace itocsvm
