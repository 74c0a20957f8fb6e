#pragma once

#include <array>
#include <filesystem>
#include <span>
#include <vector>

#include "itocsvm/types.hpp"

namespace itocsvm {

/// Groups OCSVM alerts per source: qa = Σ max(0, −q_s), qb = count, seen
/// range from the window timestamps. UNMARKED_SOURCE alerts become separate
/// alarms pre-labelled MEDIUM with qa = 0, qb = 1. Output: OCSVM alarms by
/// source, then the pass-through alarms by source.
std::vector<AggregatedAlarm> aggregate(std::span<const Alert> alerts);

struct KMeansResult {
  std::vector<int> assignment;      ///< 0 = lower centroid, 1 = upper
  std::array<double, 2> centroids;  ///< ascending
  int iterations = 0;
  /// SSE after each assignment + update round, first entry before any update.
  std::vector<double> sse_trace;
  double sse = 0.0;
};

/// Lloyd 2-means on scalars, centroids initialised at min and max. Fewer
/// than two distinct values put everything in cluster 0 with both centroids
/// at that value. Throws EmptyInput on an empty list.
KMeansResult kmeans_1d(std::span<const double> values, int max_iter = 100);

/// Σ (v − centroid(assignment))².
double clustering_sse(std::span<const double> values, std::span<const int> assignment,
                      const std::array<double, 2>& centroids);

/// Two independent 2-means runs, one over qa and one over qb, each voting
/// SEVERE for its upper cluster: two votes → SEVERE, one → MEDIUM, none →
/// POSSIBLE. Pre-labelled alarms keep MEDIUM and stay out of the clustering.
/// A lone clusterable alarm is SEVERE when qa > 0, otherwise POSSIBLE.
std::vector<AggregatedAlarm> classify_severity(std::vector<AggregatedAlarm> alarms, int max_iter = 100);

/// `src_ip,src_mac,qa,qb,severity,first_seen,last_seen`
void write_alarm_report(const std::filesystem::path& path, std::span<const AggregatedAlarm> alarms);
std::vector<AggregatedAlarm> read_alarm_report(const std::filesystem::path& path);

}  // namespace itocsvm
