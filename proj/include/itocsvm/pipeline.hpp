#pragma once

// Training and detection end to end: ingest → central + split OCSVMs →
// ensemble → social weighting → fusion.

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "itocsvm/ensemble.hpp"
#include "itocsvm/ingest.hpp"
#include "itocsvm/splitter.hpp"
#include "itocsvm/types.hpp"

namespace itocsvm {

struct DetectorConfig {
  double nu = 0.001;
  RbfKernel kernel{};
  double p_packets = 0.01;
  double window_s = 2.0;
  EnsembleWeights weights{};
  double coefficient_floor = 0.05;
  int kmeans_max_iter = 100;
  std::string analyzer_id = "itocsvm";
  std::int64_t capture_epoch_s = 0;

  /// Throws DomainError on out-of-range values.
  void validate() const;
};

/// `key = value` lines; unknown keys raise ParseError.
std::string format_config(const DetectorConfig& c);
DetectorConfig parse_config(std::string_view content, const std::string& origin = "<config>");
/// Overlays the keys present in `kv` onto `base`.
DetectorConfig apply_config(DetectorConfig base, const std::map<std::string, std::string>& kv,
                            const std::string& origin = "<config>");

/// Per-source training windows, scaled once and grouped by source. Shared by
/// every plan trained on the same capture.
struct TrainingSet {
  double window_s = 2.0;
  ScalingParams scaler;
  std::vector<FeatureValues> pooled;                       ///< all per-source windows
  std::map<SourceId, std::vector<FeatureValues>> by_source;
};

TrainingSet prepare_training(std::span<const PacketRecord> train, double window_s);

struct TrainedDetector {
  DetectorConfig config;
  ScalingParams scaler;
  SplitPlan plan;
  ModelSet models;
};

/// Central model on the pooled windows, split models per significant source.
TrainedDetector train_detector(std::span<const PacketRecord> train, const DetectorConfig& config);
/// Same, with an explicit plan (e.g. a forced number of split models).
TrainedDetector train_detector(const TrainingSet& set, const SplitPlan& plan, const DetectorConfig& config);
/// Reuses an already trained central model; only the split models are trained.
TrainedDetector with_plan(const TrainingSet& set, const OcsvmModel& central, const SplitPlan& plan,
                          const DetectorConfig& config);

/// Model directory: detector.cfg, scaler.txt, sources.txt, central.model,
/// split_<k>.model (k follows the sources-file order).
void save_detector(const TrainedDetector& d, const std::filesystem::path& dir);
/// Throws IoError for a missing directory or file, ScalerMismatch when a model
/// does not match scaler.txt, and the model/format errors of the readers.
TrainedDetector load_detector(const std::filesystem::path& dir);

struct DetectionResult {
  std::vector<WindowScore> scores;
  std::map<SourceId, double> coefficients;
  std::vector<Alert> alerts;  ///< OCSVM alerts, then UNMARKED_SOURCE alerts
  std::vector<AggregatedAlarm> alarms;  ///< classified

  std::size_t ocsvm_alert_count() const noexcept;
};

DetectionResult detect(const TrainedDetector& d, std::span<const PacketRecord> test,
                       Execution exec = Execution::Parallel);

/// Plain central OCSVM over the same per-source windows.
std::vector<WindowScore> detect_baseline(const TrainedDetector& d, std::span<const PacketRecord> test,
                                         Execution exec = Execution::Parallel);

/// (window_start, source) cells flagged anomalous.
using CellKey = std::pair<double, SourceId>;

/// Windows with a negative central decision.
std::vector<CellKey> baseline_predictions(std::span<const WindowScore> scores);
/// Windows carrying an OCSVM alert, plus every window of a source raised as
/// unmarked (its whole activity is suspect).
std::vector<CellKey> itocsvm_predictions(const DetectionResult& r);

}  // namespace itocsvm
