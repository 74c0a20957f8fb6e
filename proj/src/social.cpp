#include "itocsvm/social.hpp"

#include <algorithm>
#include <numeric>

#include "itocsvm/errors.hpp"

namespace itocsvm {

std::vector<Protocol> rank_protocols(const std::array<std::uint64_t, kProtocolCount>& counts, std::size_t k) {
  std::array<std::size_t, kProtocolCount> order{};
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return counts[a] > counts[b]; });
  std::vector<Protocol> out;
  for (auto idx : order) {
    if (out.size() == k || counts[idx] == 0) break;
    out.push_back(kAllProtocols[idx]);
  }
  return out;
}

std::vector<Protocol> protocol_ranking(std::span<const PacketRecord> data, const SourceId& source, std::size_t k) {
  if (k == 0) throw DomainError("protocol ranking needs k >= 1");
  std::array<std::uint64_t, kProtocolCount> counts{};
  bool any = false;
  for (const auto& r : data) {
    if (r.src_ip != source.ip || r.src_mac != source.mac) continue;
    ++counts[static_cast<std::size_t>(r.protocol)];
    any = true;
  }
  if (!any) throw SourceNotFound("source " + source.to_string() + " sent no packets");
  return rank_protocols(counts, k);
}

double spearman_from_ranks(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionMismatch("rank vectors differ in length");
  const std::size_t n = a.size();
  if (n <= 1) return 1.0;
  double sum_d2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    sum_d2 += d * d;
  }
  const double nn = static_cast<double>(n);
  return 1.0 - 6.0 * sum_d2 / (nn * (nn * nn - 1.0));
}

double spearman(std::span<const Protocol> train_ranking, std::span<const Protocol> test_ranking) {
  std::vector<Protocol> universe(train_ranking.begin(), train_ranking.end());
  for (auto p : test_ranking) {
    if (std::find(universe.begin(), universe.end(), p) == universe.end()) universe.push_back(p);
  }
  auto rank_in = [](std::span<const Protocol> list, Protocol p) {
    auto it = std::find(list.begin(), list.end(), p);
    return static_cast<double>(it - list.begin()) + 1.0;  // absent -> len + 1
  };
  std::vector<double> a;
  std::vector<double> b;
  for (auto p : universe) {
    a.push_back(rank_in(train_ranking, p));
    b.push_back(rank_in(test_ranking, p));
  }
  return std::clamp(spearman_from_ranks(a, b), -1.0, 1.0);
}

std::map<SourceId, double> source_coefficients(const SplitPlan& plan, std::span<const PacketRecord> test) {
  std::map<SourceId, double> out;
  for (const auto& profile : plan.significant) {
    try {
      const auto test_ranking = protocol_ranking(test, profile.source, kMaxRankedProtocols);
      out[profile.source] = spearman(profile.protocol_ranks, test_ranking);
    } catch (const SourceNotFound&) {
      // silent during the test period: no alerts to weight
    }
  }
  return out;
}

std::vector<Alert> weight_alerts(std::span<const WindowScore> scores, const std::map<SourceId, double>& coefficients,
                                 double floor) {
  if (!(floor > 0.0 && floor <= 1.0)) throw DomainError("coefficient floor must lie in (0, 1]");
  std::vector<Alert> out;
  for (const auto& s : scores) {
    if (!(s.ensemble < 0.0)) continue;
    auto it = coefficients.find(s.source);
    const double p = it == coefficients.end() ? floor : std::clamp(it->second, floor, 1.0);
    out.push_back(Alert{s.window_start, s.source, s.ensemble, s.ensemble / p, AlertKind::OCSVM});
  }
  return out;
}

}  // namespace itocsvm
