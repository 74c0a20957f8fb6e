#include "itocsvm/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "itocsvm/errors.hpp"
#include "itocsvm/text.hpp"

namespace itocsvm {

std::vector<AggregatedAlarm> aggregate(std::span<const Alert> alerts) {
  std::map<SourceId, AggregatedAlarm> grouped;
  std::vector<AggregatedAlarm> passthrough;
  for (const auto& a : alerts) {
    if (a.kind == AlertKind::UNMARKED_SOURCE) {
      passthrough.push_back(
          AggregatedAlarm{a.source, 0.0, 1, Severity::MEDIUM, AlertKind::UNMARKED_SOURCE, a.window_start, a.window_start});
      continue;
    }
    auto [it, inserted] = grouped.try_emplace(a.source);
    auto& alarm = it->second;
    if (inserted) {
      alarm.source = a.source;
      alarm.first_seen = a.window_start;
      alarm.last_seen = a.window_start;
    }
    alarm.qa += std::max(0.0, -a.weighted_score);
    alarm.qb += 1;
    alarm.first_seen = std::min(alarm.first_seen, a.window_start);
    alarm.last_seen = std::max(alarm.last_seen, a.window_start);
  }
  std::vector<AggregatedAlarm> out;
  out.reserve(grouped.size() + passthrough.size());
  for (auto& [source, alarm] : grouped) out.push_back(std::move(alarm));
  std::stable_sort(passthrough.begin(), passthrough.end(),
                   [](const AggregatedAlarm& a, const AggregatedAlarm& b) { return a.source < b.source; });
  for (auto& alarm : passthrough) out.push_back(std::move(alarm));
  return out;
}

double clustering_sse(std::span<const double> values, std::span<const int> assignment,
                      const std::array<double, 2>& centroids) {
  double sse = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double d = values[i] - centroids[static_cast<std::size_t>(assignment[i])];
    sse += d * d;
  }
  return sse;
}

KMeansResult kmeans_1d(std::span<const double> values, int max_iter) {
  if (values.empty()) throw EmptyInput("kmeans_1d on an empty list");
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  KMeansResult r;
  r.assignment.assign(values.size(), 0);
  if (*lo_it == *hi_it) {
    r.centroids = {*lo_it, *lo_it};
    r.sse_trace.push_back(0.0);
    return r;
  }

  r.centroids = {*lo_it, *hi_it};
  auto assign = [&](std::vector<int>& out) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      out[i] = std::abs(values[i] - r.centroids[0]) <= std::abs(values[i] - r.centroids[1]) ? 0 : 1;
    }
  };
  assign(r.assignment);
  r.sse_trace.push_back(clustering_sse(values, r.assignment, r.centroids));

  std::vector<int> next(values.size());
  for (int it = 0; it < max_iter; ++it) {
    std::array<double, 2> sum{0.0, 0.0};
    std::array<std::size_t, 2> count{0, 0};
    for (std::size_t i = 0; i < values.size(); ++i) {
      sum[r.assignment[i]] += values[i];
      ++count[r.assignment[i]];
    }
    for (int k = 0; k < 2; ++k) {
      if (count[k] > 0) r.centroids[k] = sum[k] / static_cast<double>(count[k]);
    }
    ++r.iterations;
    r.sse_trace.push_back(clustering_sse(values, r.assignment, r.centroids));

    assign(next);
    if (next == r.assignment) break;
    r.assignment.swap(next);
  }
  if (r.centroids[0] > r.centroids[1]) {
    std::swap(r.centroids[0], r.centroids[1]);
    for (auto& a : r.assignment) a = 1 - a;
  }
  r.sse = clustering_sse(values, r.assignment, r.centroids);
  return r;
}

std::vector<AggregatedAlarm> classify_severity(std::vector<AggregatedAlarm> alarms, int max_iter) {
  std::vector<std::size_t> clusterable;
  for (std::size_t i = 0; i < alarms.size(); ++i) {
    if (alarms[i].origin == AlertKind::UNMARKED_SOURCE) {
      alarms[i].severity = Severity::MEDIUM;
    } else {
      clusterable.push_back(i);
    }
  }
  if (clusterable.empty()) return alarms;
  if (clusterable.size() == 1) {
    auto& a = alarms[clusterable.front()];
    a.severity = a.qa > 0.0 ? Severity::SEVERE : Severity::POSSIBLE;
    return alarms;
  }

  std::vector<double> qa;
  std::vector<double> qb;
  for (auto i : clusterable) {
    qa.push_back(alarms[i].qa);
    qb.push_back(static_cast<double>(alarms[i].qb));
  }
  // Identical values collapse into cluster 0, so a flat dimension casts no votes.
  const auto by_mass = kmeans_1d(qa, max_iter);
  const auto by_count = kmeans_1d(qb, max_iter);
  for (std::size_t k = 0; k < clusterable.size(); ++k) {
    const int votes = by_mass.assignment[k] + by_count.assignment[k];
    alarms[clusterable[k]].severity = votes == 2 ? Severity::SEVERE : votes == 1 ? Severity::MEDIUM : Severity::POSSIBLE;
  }
  return alarms;
}

void write_alarm_report(const std::filesystem::path& path, std::span<const AggregatedAlarm> alarms) {
  std::string out = "src_ip,src_mac,qa,qb,severity,first_seen,last_seen\n";
  for (const auto& a : alarms) {
    if (!a.severity) throw UnsetSeverity("alarm for " + a.source.to_string() + " has no severity");
    out += a.source.ip + "," + a.source.mac + "," + text::format_double(a.qa) + "," + std::to_string(a.qb) + "," +
           std::string(to_string(*a.severity)) + "," + text::format_double(a.first_seen) + "," +
           text::format_double(a.last_seen) + "\n";
  }
  text::write_file(path, out);
}

std::vector<AggregatedAlarm> read_alarm_report(const std::filesystem::path& path) {
  const auto content = text::read_file(path);
  const auto lines = text::split(content, '\n');
  if (lines.empty() || text::trim(lines[0]) != "src_ip,src_mac,qa,qb,severity,first_seen,last_seen") {
    throw ParseError("missing alarm-report header in " + path.string());
  }
  std::vector<AggregatedAlarm> out;
  for (std::size_t ln = 1; ln < lines.size(); ++ln) {
    const auto line = text::trim(lines[ln]);
    if (line.empty()) continue;
    const auto f = text::split(line, ',');
    AggregatedAlarm a;
    auto sev = f.size() == 7 ? parse_severity(f[4]) : std::nullopt;
    if (!sev || !text::parse_double(f[2], a.qa) || !text::parse_u64(f[3], a.qb) ||
        !text::parse_double(f[5], a.first_seen) || !text::parse_double(f[6], a.last_seen)) {
      throw ParseError(path.string() + ":" + std::to_string(ln + 1) + ": bad alarm row");
    }
    a.source = SourceId{std::string(f[0]), std::string(f[1])};
    a.severity = sev;
    out.push_back(std::move(a));
  }
  return out;
}

}  // namespace itocsvm
