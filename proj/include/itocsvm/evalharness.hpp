#pragma once

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "itocsvm/pipeline.hpp"
#include "itocsvm/simgen.hpp"

namespace itocsvm {

/// Confusion counts over (window, source) cells and the derived percentages.
struct Score {
  std::size_t tp = 0;
  std::size_t tn = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  double da = 0.0;     ///< (TP+TN)/total · 100
  double far = 0.0;    ///< FP/(FP+TN) · 100, 0 without negatives
  double error = 0.0;  ///< 100 − DA

  std::size_t total() const noexcept { return tp + tn + fp + fn; }
};

Score score_counts(std::size_t tp, std::size_t tn, std::size_t fp, std::size_t fn);
/// Every labelled cell is a prediction of "normal" unless listed in
/// `flagged`. Throws LabelMismatch when a flagged cell has no label.
Score score(std::span<const CellKey> flagged, std::span<const LabelRow> labels);
Score merge(std::span<const Score> parts);

struct TestSet {
  std::string name;
  std::vector<PacketRecord> records;
  std::vector<LabelRow> labels;
};

struct Suite {
  std::vector<PacketRecord> train;
  std::vector<TestSet> tests;
};

/// Reads a directory written by standard_suite.
Suite load_suite(const std::filesystem::path& dir);

struct SetResult {
  std::string name;
  std::size_t cells = 0;
  Score baseline;
  Score itocsvm;
  std::size_t raw_alerts = 0;    ///< OCSVM + UNMARKED_SOURCE alerts
  std::size_t ocsvm_alerts = 0;
  std::vector<AggregatedAlarm> alarms;
  std::array<std::size_t, 3> severity_counts{};  ///< POSSIBLE, MEDIUM, SEVERE
  std::vector<SourceId> attackers;               ///< sources with attack-labelled cells
};

struct ComparisonReport {
  std::size_t split_models = 0;
  std::vector<SetResult> sets;
  Score baseline_total;
  Score itocsvm_total;
};

/// Runs the central-only baseline and the full pipeline on every test set.
/// Throws LabelMismatch when the detector's cells and the labels disagree.
ComparisonReport compare_baseline(const TrainedDetector& detector, const Suite& suite);

struct SweepPoint {
  double threshold = 0.0;
  std::size_t split_models = 0;
  double da = 0.0;
  double far = 0.0;
  double baseline_da = 0.0;
};

/// One point per threshold; the central model and the scaler are trained
/// once and shared.
std::vector<SweepPoint> sweep_p_packets(std::span<const double> thresholds, const Suite& suite,
                                        const DetectorConfig& config);

struct TimingRow {
  std::string set;
  std::string configuration;
  std::size_t split_models = 0;
  double baseline_s = 0.0;  ///< median
  double itocsvm_s = 0.0;   ///< median
  double ratio = 0.0;
};

struct TimingSummary {
  std::string configuration;
  std::size_t split_models = 0;
  double baseline_s = 0.0;  ///< sum of the per-set medians
  double itocsvm_s = 0.0;
  double ratio = 0.0;
  double ratio_min = 0.0;  ///< spread of the per-repetition total ratios
  double ratio_max = 0.0;
};

struct TimingReport {
  int repetitions = 0;
  std::vector<TimingRow> rows;
  std::vector<TimingSummary> summaries;
  const TimingSummary* find(std::string_view configuration) const noexcept;
};

/// Wall-clock detection time from parsed records to classified alarms,
/// against the central-only scoring of the same records. Each named detector
/// is timed `repetitions` times per set (baseline and pipeline interleaved);
/// medians are reported.
TimingReport timing_report(const Suite& suite, std::span<const std::pair<std::string, const TrainedDetector*>> detectors,
                           int repetitions = 5);

void write_comparison_markdown(const std::filesystem::path& path, const ComparisonReport& r);
void write_comparison_csv(const std::filesystem::path& path, const ComparisonReport& r);
void write_sweep_csv(const std::filesystem::path& path, std::span<const SweepPoint> points);
void write_timing_markdown(const std::filesystem::path& path, const TimingReport& r);
void write_timing_csv(const std::filesystem::path& path, const TimingReport& r);

}  // namespace itocsvm
