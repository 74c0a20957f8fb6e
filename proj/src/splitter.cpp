#include "itocsvm/splitter.hpp"

#include <algorithm>
#include <unordered_map>

#include "itocsvm/errors.hpp"
#include "itocsvm/social.hpp"
#include "itocsvm/text.hpp"

namespace itocsvm {

namespace {

struct SourceCount {
  SourceId source;
  std::uint64_t packets = 0;
  std::array<std::uint64_t, kProtocolCount> per_protocol{};
};

std::vector<SourceCount> count_sources(std::span<const PacketRecord> data) {
  std::unordered_map<SourceId, SourceCount, SourceIdHash> counts;
  for (const auto& r : data) {
    auto& c = counts[r.source()];
    ++c.packets;
    ++c.per_protocol[static_cast<std::size_t>(r.protocol)];
  }
  std::vector<SourceCount> out;
  out.reserve(counts.size());
  for (auto& [source, c] : counts) {
    c.source = source;
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const SourceCount& a, const SourceCount& b) {
    if (a.packets != b.packets) return a.packets > b.packets;
    return a.source < b.source;
  });
  return out;
}

SourceProfile make_profile(const SourceCount& c) {
  return SourceProfile{c.source, c.packets, rank_protocols(c.per_protocol, kMaxRankedProtocols)};
}

bool meets(std::uint64_t packets, double fraction, std::uint64_t rows) {
  return static_cast<double>(packets) >= fraction * static_cast<double>(rows);
}

}  // namespace

bool SplitPlan::contains(const SourceId& s) const noexcept { return find(s) != nullptr; }

const SourceProfile* SplitPlan::find(const SourceId& s) const noexcept {
  for (const auto& p : significant) {
    if (p.source == s) return &p;
  }
  return nullptr;
}

SplitPlan find_significant_sources(std::span<const PacketRecord> train, double threshold_fraction) {
  if (!(threshold_fraction > 0.0 && threshold_fraction <= 1.0)) {
    throw DomainError("P_packets threshold must lie in (0, 1]");
  }
  SplitPlan plan;
  plan.threshold_fraction = threshold_fraction;
  plan.training_rows = train.size();
  for (const auto& c : count_sources(train)) {
    if (!meets(c.packets, threshold_fraction, plan.training_rows)) break;
    plan.significant.push_back(make_profile(c));
  }
  return plan;
}

SplitPlan top_sources_plan(std::span<const PacketRecord> train, std::size_t count) {
  SplitPlan plan;
  plan.training_rows = train.size();
  const auto counts = count_sources(train);
  const std::size_t take = std::min(count, counts.size());
  for (std::size_t i = 0; i < take; ++i) plan.significant.push_back(make_profile(counts[i]));
  plan.threshold_fraction =
      take == 0 || train.empty() ? 1.0
                                 : static_cast<double>(counts[take - 1].packets) / static_cast<double>(train.size());
  return plan;
}

std::map<SourceId, std::vector<PacketRecord>> split_dataset(std::span<const PacketRecord> data,
                                                            const SplitPlan& plan) {
  std::map<SourceId, std::vector<PacketRecord>> out;
  if (plan.significant.empty()) return out;
  for (const auto& p : plan.significant) out[p.source];
  for (const auto& r : data) {
    auto it = out.find(r.source());
    if (it != out.end()) it->second.push_back(r);
  }
  // A significant source silent in `data` gets no subset.
  std::erase_if(out, [](const auto& kv) { return kv.second.empty(); });
  return out;
}

std::vector<Alert> flag_unmarked_sources(std::span<const PacketRecord> test, const SplitPlan& plan,
                                         double threshold_fraction) {
  // Keyed on views into the records: no per-packet string copies.
  using Key = std::pair<std::string_view, std::string_view>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      const std::size_t h = std::hash<std::string_view>{}(k.first);
      return h ^ (std::hash<std::string_view>{}(k.second) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
    }
  };
  std::unordered_map<Key, std::pair<std::uint64_t, double>, KeyHash> seen;
  for (const auto& r : test) {
    auto [it, inserted] = seen.try_emplace(Key{r.src_ip, r.src_mac}, 0, r.timestamp);
    ++it->second.first;
    it->second.second = std::min(it->second.second, r.timestamp);
  }
  std::vector<Alert> out;
  for (const auto& [key, info] : seen) {
    if (!meets(info.first, threshold_fraction, test.size())) continue;
    SourceId source{std::string(key.first), std::string(key.second)};
    if (plan.contains(source)) continue;
    out.push_back(Alert{info.second, std::move(source), 0.0, 0.0, AlertKind::UNMARKED_SOURCE});
  }
  std::sort(out.begin(), out.end(), [](const Alert& a, const Alert& b) { return a.source < b.source; });
  return out;
}

// ---------------------------------------------------------------------------
// sources file
// ---------------------------------------------------------------------------

namespace {
constexpr std::string_view kSourcesMagic = "# itocsvm-sources 1";
}

void write_sources_file(const SplitPlan& plan, const std::filesystem::path& path) {
  std::string out(kSourcesMagic);
  out += " threshold=" + text::format_double(plan.threshold_fraction);
  out += " training_rows=" + std::to_string(plan.training_rows);
  out += " counts=";
  for (std::size_t i = 0; i < plan.significant.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(plan.significant[i].packet_count);
  }
  out += '\n';
  for (const auto& p : plan.significant) {
    out += p.source.ip + " " + p.source.mac;
    for (auto proto : p.protocol_ranks) {
      out += ' ';
      out += to_string(proto);
    }
    out += '\n';
  }
  text::write_file(path, out);
}

SplitPlan read_sources_file(const std::filesystem::path& path) {
  const auto content = text::read_file(path);
  const auto lines = text::split(content, '\n');
  if (lines.empty() || text::trim(lines[0]).substr(0, kSourcesMagic.size()) != kSourcesMagic) {
    throw ParseError("missing sources-file header in " + path.string());
  }
  SplitPlan plan;
  std::vector<std::uint64_t> counts;
  bool have_threshold = false;
  bool have_rows = false;
  for (auto tok : text::split_ws(text::trim(lines[0]).substr(kSourcesMagic.size()))) {
    const auto eq = tok.find('=');
    if (eq == std::string_view::npos) continue;
    const auto key = tok.substr(0, eq);
    const auto value = tok.substr(eq + 1);
    if (key == "threshold") {
      have_threshold = text::parse_double(value, plan.threshold_fraction);
    } else if (key == "training_rows") {
      have_rows = text::parse_u64(value, plan.training_rows);
    } else if (key == "counts" && !value.empty()) {
      for (auto c : text::split(value, ',')) {
        std::uint64_t v = 0;
        if (!text::parse_u64(c, v)) throw ParseError("bad packet count in " + path.string());
        counts.push_back(v);
      }
    }
  }
  if (!have_threshold || !have_rows) throw ParseError("incomplete sources-file header in " + path.string());

  for (std::size_t ln = 1; ln < lines.size(); ++ln) {
    const auto line = text::trim(lines[ln]);
    if (line.empty()) continue;
    const auto tok = text::split_ws(line);
    if (tok.size() < 2 || tok.size() > 2 + kMaxRankedProtocols) {
      throw ParseError(path.string() + ":" + std::to_string(ln + 1) + ": expected 'ip mac proto…'");
    }
    SourceProfile p;
    p.source = SourceId{std::string(tok[0]), std::string(tok[1])};
    if (!is_valid_ipv4(p.source.ip) || !is_valid_mac(p.source.mac)) {
      throw ParseError(path.string() + ":" + std::to_string(ln + 1) + ": bad address");
    }
    for (std::size_t k = 2; k < tok.size(); ++k) {
      auto proto = parse_protocol(tok[k]);
      if (!proto || std::find(p.protocol_ranks.begin(), p.protocol_ranks.end(), *proto) != p.protocol_ranks.end()) {
        throw ParseError(path.string() + ":" + std::to_string(ln + 1) + ": bad protocol '" + std::string(tok[k]) + "'");
      }
      p.protocol_ranks.push_back(*proto);
    }
    plan.significant.push_back(std::move(p));
  }
  if (counts.size() != plan.significant.size()) {
    throw ParseError("sources-file header lists " + std::to_string(counts.size()) + " counts for " +
                     std::to_string(plan.significant.size()) + " sources");
  }
  for (std::size_t i = 0; i < counts.size(); ++i) plan.significant[i].packet_count = counts[i];
  return plan;
}

}  // namespace itocsvm
