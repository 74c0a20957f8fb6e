#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "itocsvm/types.hpp"

namespace itocsvm {

enum class FeatureScope : std::uint8_t { Global, PerSource };

/// One FeatureVector per non-empty tumbling window [k·w, (k+1)·w), or per
/// (window, source) pair when scoped per source. Output is ordered by window,
/// then by SourceId. Records must be sorted by timestamp.
std::vector<FeatureVector> extract_features(std::span<const PacketRecord> records, double window_s,
                                            FeatureScope scope);

/// Per-feature (min, max) learned on training vectors.
struct ScalingParams {
  FeatureValues min{};
  FeatureValues max{};

  /// Stable hash of the exact min/max bit patterns; models record it so
  /// that detection refuses mismatched scalers.
  std::uint64_t fingerprint() const noexcept;
  friend bool operator==(const ScalingParams&, const ScalingParams&) = default;
};

ScalingParams fit_scaling(std::span<const FeatureVector> train);

/// (x − min)/(max − min) clamped to [0, 1]; constant features map to 0.
FeatureVector apply_scaling(const FeatureVector& v, const ScalingParams& p);

void save_scaling(const ScalingParams& p, const std::filesystem::path& path);
ScalingParams load_scaling(const std::filesystem::path& path);

/// Debug dump: `window_start,src_ip,src_mac,f1..f8` (empty ip/mac for global).
void write_feature_dump(const std::filesystem::path& path, std::span<const FeatureVector> vectors);

}  // namespace itocsvm
