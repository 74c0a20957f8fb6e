#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "itocsvm/ensemble.hpp"
#include "itocsvm/splitter.hpp"
#include "itocsvm/types.hpp"

namespace itocsvm {

inline constexpr std::size_t kMaxRankedProtocols = 5;
inline constexpr double kDefaultCoefficientFloor = 0.05;

/// Protocols with a non-zero count, by descending count (enumeration order on
/// ties), truncated to k.
std::vector<Protocol> rank_protocols(const std::array<std::uint64_t, kProtocolCount>& counts, std::size_t k);

/// Top-k protocols used by `source` in `data`. Throws SourceNotFound when the
/// source sent nothing.
std::vector<Protocol> protocol_ranking(std::span<const PacketRecord> data, const SourceId& source,
                                       std::size_t k = kMaxRankedProtocols);

/// 1 − 6Σd²/(n(n²−1)) on two rank vectors of equal length n. n ≤ 1 gives 1.
double spearman_from_ranks(std::span<const double> a, std::span<const double> b);

/// Spearman coefficient between two protocol rankings. Both are aligned on
/// the union of their protocols; a protocol missing from a list takes rank
/// len(list) + 1 there.
double spearman(std::span<const Protocol> train_ranking, std::span<const Protocol> test_ranking);

/// p_j for each significant source of the plan that is active in `test`.
std::map<SourceId, double> source_coefficients(const SplitPlan& plan, std::span<const PacketRecord> test);

/// Alerts for every negative ensemble score, q_s = q_e / clamp(p_j, floor, 1).
/// Sources without a coefficient use the floor.
std::vector<Alert> weight_alerts(std::span<const WindowScore> scores, const std::map<SourceId, double>& coefficients,
                                 double floor = kDefaultCoefficientFloor);

}  // namespace itocsvm
