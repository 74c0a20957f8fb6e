#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "itocsvm/ingest.hpp"
#include "itocsvm/types.hpp"

namespace itocsvm {

struct EnsembleWeights {
  double central = 0.5;
  double split = 0.5;
};

/// Weighted sum of the available decisions normalised by the weights that
/// took part. Without a split decision the result is the central decision.
/// Throws DomainError for negative weights or when every participating weight
/// is zero.
double ensemble_score(double central, std::optional<double> split, const EnsembleWeights& weights);

/// Central model plus per-source split models, all trained on data scaled by
/// the same scaler.
struct ModelSet {
  OcsvmModel central;
  std::map<SourceId, OcsvmModel> splits;
  std::uint64_t scaler_fingerprint = 0;
};

/// Feature vectors together with the fingerprint of the scaler applied to them.
struct ScaledFeatures {
  std::vector<FeatureVector> vectors;
  std::uint64_t scaler_fingerprint = 0;
};

ScaledFeatures scale_features(std::span<const FeatureVector> raw, const ScalingParams& scaler);

struct WindowScore {
  double window_start = 0.0;
  SourceId source;
  double central = 0.0;
  std::optional<double> split;
  double ensemble = 0.0;  ///< q_e
};

enum class Execution : std::uint8_t { Serial, Parallel };

/// Scores every per-source vector (global vectors are skipped): the central
/// model and, when the source has one, its split model both judge the same
/// vector and are combined with ensemble_score. Throws ScalerMismatch when the
/// features or any model were produced with a different scaler.
std::vector<WindowScore> score_dataset(const ModelSet& models, const ScaledFeatures& features,
                                       const EnsembleWeights& weights, Execution exec = Execution::Parallel);

/// Central-only scores (the plain OCSVM baseline).
std::vector<WindowScore> score_central(const OcsvmModel& central, const ScaledFeatures& features,
                                       Execution exec = Execution::Parallel);

void write_score_dump(const std::filesystem::path& path, std::span<const WindowScore> scores);

}  // namespace itocsvm
