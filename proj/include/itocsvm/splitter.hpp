#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <vector>

#include "itocsvm/types.hpp"

namespace itocsvm {

/// Sources whose training packet count reached threshold_fraction · training_rows.
struct SplitPlan {
  double threshold_fraction = 0.01;
  std::vector<SourceProfile> significant;
  std::uint64_t training_rows = 0;

  bool contains(const SourceId& s) const noexcept;
  const SourceProfile* find(const SourceId& s) const noexcept;
  friend bool operator==(const SplitPlan&, const SplitPlan&) = default;
};

/// Ordered by descending packet count, ties by IP string then MAC.
SplitPlan find_significant_sources(std::span<const PacketRecord> train, double threshold_fraction);

/// Plan holding exactly the `count` busiest sources (or all, if fewer exist).
/// The threshold is set to the share of the last admitted source.
SplitPlan top_sources_plan(std::span<const PacketRecord> train, std::size_t count);

/// Disjoint per-source subsets for the significant sources only.
std::map<SourceId, std::vector<PacketRecord>> split_dataset(std::span<const PacketRecord> data, const SplitPlan& plan);

/// One UNMARKED_SOURCE alert per non-significant source whose test packet
/// count reaches threshold_fraction · test_rows. window_start holds the
/// first packet timestamp of that source; both scores are 0.
std::vector<Alert> flag_unmarked_sources(std::span<const PacketRecord> test, const SplitPlan& plan,
                                         double threshold_fraction);

/// Sources file. A `#` header line carries the threshold, the training row
/// count and per-source packet counts; each following line is
/// `ip mac proto1 … protoK` with protocols in descending training usage.
void write_sources_file(const SplitPlan& plan, const std::filesystem::path& path);
SplitPlan read_sources_file(const std::filesystem::path& path);

}  // namespace itocsvm
