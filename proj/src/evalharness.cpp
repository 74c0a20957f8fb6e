#include "itocsvm/evalharness.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>

#include "itocsvm/errors.hpp"
#include "itocsvm/ocsvm.hpp"
#include "itocsvm/packet_log.hpp"
#include "itocsvm/text.hpp"

namespace itocsvm {

Score score_counts(std::size_t tp, std::size_t tn, std::size_t fp, std::size_t fn) {
  Score s{tp, tn, fp, fn};
  const std::size_t total = s.total();
  s.da = total == 0 ? 0.0 : 100.0 * static_cast<double>(tp + tn) / static_cast<double>(total);
  s.far = fp + tn == 0 ? 0.0 : 100.0 * static_cast<double>(fp) / static_cast<double>(fp + tn);
  s.error = 100.0 - s.da;
  return s;
}

Score score(std::span<const CellKey> flagged, std::span<const LabelRow> labels) {
  std::map<CellKey, bool> truth;
  for (const auto& l : labels) {
    if (!truth.emplace(CellKey{l.window_start, l.source}, l.is_attack).second) {
      throw LabelMismatch("duplicate label for " + l.source.to_string() + " at " + text::format_double(l.window_start));
    }
  }
  std::set<CellKey> positive;
  for (const auto& key : flagged) {
    if (!truth.contains(key)) {
      throw LabelMismatch("no label for " + key.second.to_string() + " at " + text::format_double(key.first));
    }
    positive.insert(key);
  }
  std::size_t tp = 0, tn = 0, fp = 0, fn = 0;
  for (const auto& [key, attack] : truth) {
    const bool p = positive.contains(key);
    if (attack) {
      (p ? tp : fn) += 1;
    } else {
      (p ? fp : tn) += 1;
    }
  }
  return score_counts(tp, tn, fp, fn);
}

Score merge(std::span<const Score> parts) {
  std::size_t tp = 0, tn = 0, fp = 0, fn = 0;
  for (const auto& p : parts) {
    tp += p.tp;
    tn += p.tn;
    fp += p.fp;
    fn += p.fn;
  }
  return score_counts(tp, tn, fp, fn);
}

Suite load_suite(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw IoError("suite directory " + dir.string() + " does not exist");
  const auto files = suite_files(dir);
  Suite s;
  s.train = parse_packet_log(files.train);
  for (std::size_t i = 0; i < files.tests.size(); ++i) {
    s.tests.push_back(
        TestSet{files.tests[i].first, parse_packet_log(files.tests[i].second), read_labels(files.labels[i].second)});
  }
  return s;
}

namespace {

/// The detector must score exactly the labelled cells.
void check_alignment(std::span<const WindowScore> scores, std::span<const LabelRow> labels, const std::string& set) {
  if (scores.size() != labels.size()) {
    throw LabelMismatch("set " + set + ": " + std::to_string(scores.size()) + " scored windows vs " +
                        std::to_string(labels.size()) + " labels");
  }
  std::set<CellKey> cells;
  for (const auto& l : labels) cells.emplace(l.window_start, l.source);
  for (const auto& s : scores) {
    if (!cells.contains(CellKey{s.window_start, s.source})) {
      throw LabelMismatch("set " + set + ": window " + text::format_double(s.window_start) + " of " +
                          s.source.to_string() + " is unlabelled");
    }
  }
}

std::vector<SourceId> attackers_of(std::span<const LabelRow> labels) {
  std::set<SourceId> out;
  for (const auto& l : labels) {
    if (l.is_attack) out.insert(l.source);
  }
  return {out.begin(), out.end()};
}

}  // namespace

ComparisonReport compare_baseline(const TrainedDetector& detector, const Suite& suite) {
  ComparisonReport report;
  report.split_models = detector.models.splits.size();
  std::vector<Score> base_parts;
  std::vector<Score> full_parts;
  for (const auto& t : suite.tests) {
    SetResult r;
    r.name = t.name;
    r.cells = t.labels.size();
    const auto base_scores = detect_baseline(detector, t.records);
    check_alignment(base_scores, t.labels, t.name);
    r.baseline = score(baseline_predictions(base_scores), t.labels);

    const auto full = detect(detector, t.records);
    check_alignment(full.scores, t.labels, t.name);
    r.itocsvm = score(itocsvm_predictions(full), t.labels);
    r.raw_alerts = full.alerts.size();
    r.ocsvm_alerts = full.ocsvm_alert_count();
    r.alarms = full.alarms;
    for (const auto& a : full.alarms) ++r.severity_counts[static_cast<std::size_t>(*a.severity)];
    r.attackers = attackers_of(t.labels);

    base_parts.push_back(r.baseline);
    full_parts.push_back(r.itocsvm);
    report.sets.push_back(std::move(r));
  }
  report.baseline_total = merge(base_parts);
  report.itocsvm_total = merge(full_parts);
  return report;
}

std::vector<SweepPoint> sweep_p_packets(std::span<const double> thresholds, const Suite& suite,
                                        const DetectorConfig& config) {
  for (double v : thresholds) {
    if (!(v > 0.0 && v <= 1.0)) throw DomainError("sweep thresholds must lie in (0, 1]");
  }
  config.validate();
  const auto set = prepare_training(suite.train, config.window_s);
  const auto central = train_detector(set, SplitPlan{}, config).models.central;

  std::vector<SweepPoint> out;
  for (double v : thresholds) {
    auto c = config;
    c.p_packets = v;
    const auto detector = with_plan(set, central, find_significant_sources(suite.train, v), c);
    const auto report = compare_baseline(detector, suite);
    out.push_back(SweepPoint{v, detector.models.splits.size(), report.itocsvm_total.da, report.itocsvm_total.far,
                             report.baseline_total.da});
  }
  return out;
}

const TimingSummary* TimingReport::find(std::string_view configuration) const noexcept {
  for (const auto& s : summaries) {
    if (s.configuration == configuration) return &s;
  }
  return nullptr;
}

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

template <class F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

TimingReport timing_report(const Suite& suite,
                           std::span<const std::pair<std::string, const TrainedDetector*>> detectors,
                           int repetitions) {
  if (repetitions < 1) throw DomainError("repetitions must be at least 1");
  TimingReport report;
  report.repetitions = repetitions;
  for (const auto& [name, d] : detectors) {
    TimingSummary sum;
    sum.configuration = name;
    sum.split_models = d->models.splits.size();
    std::vector<double> rep_base(static_cast<std::size_t>(repetitions), 0.0);
    std::vector<double> rep_full(static_cast<std::size_t>(repetitions), 0.0);
    for (const auto& t : suite.tests) {
      std::vector<double> base;
      std::vector<double> full;
      std::size_t sink = 0;
      for (int r = 0; r < repetitions; ++r) {
        base.push_back(seconds([&] { sink += detect_baseline(*d, t.records).size(); }));
        full.push_back(seconds([&] { sink += detect(*d, t.records).alarms.size(); }));
        rep_base[static_cast<std::size_t>(r)] += base.back();
        rep_full[static_cast<std::size_t>(r)] += full.back();
      }
      (void)sink;
      TimingRow row{t.name, name, sum.split_models, median(base), median(full), 0.0};
      row.ratio = row.baseline_s > 0.0 ? row.itocsvm_s / row.baseline_s : 0.0;
      sum.baseline_s += row.baseline_s;
      sum.itocsvm_s += row.itocsvm_s;
      report.rows.push_back(std::move(row));
    }
    sum.ratio = sum.baseline_s > 0.0 ? sum.itocsvm_s / sum.baseline_s : 0.0;
    std::vector<double> ratios;
    for (std::size_t r = 0; r < rep_base.size(); ++r) {
      if (rep_base[r] > 0.0) ratios.push_back(rep_full[r] / rep_base[r]);
    }
    if (!ratios.empty()) {
      sum.ratio_min = *std::min_element(ratios.begin(), ratios.end());
      sum.ratio_max = *std::max_element(ratios.begin(), ratios.end());
    }
    report.summaries.push_back(std::move(sum));
  }
  return report;
}

namespace {

std::string pct(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string fixed(double v, int digits) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

}  // namespace

void write_comparison_markdown(const std::filesystem::path& path, const ComparisonReport& r) {
  std::string s = "# Detection comparison\n\nSplit models: " + std::to_string(r.split_models) + "\n\n";
  s += "| Set | Windows | Baseline DA | Baseline FAR | IT-OCSVM DA | IT-OCSVM FAR |\n";
  s += "|---|---:|---:|---:|---:|---:|\n";
  for (const auto& set : r.sets) {
    s += "| " + set.name + " | " + std::to_string(set.cells) + " | " + pct(set.baseline.da) + " | " +
         pct(set.baseline.far) + " | " + pct(set.itocsvm.da) + " | " + pct(set.itocsvm.far) + " |\n";
  }
  s += "| all | " + std::to_string(r.baseline_total.total()) + " | " + pct(r.baseline_total.da) + " | " +
       pct(r.baseline_total.far) + " | " + pct(r.itocsvm_total.da) + " | " + pct(r.itocsvm_total.far) + " |\n\n";

  s += "## Alarm reduction\n\n";
  s += "| Set | Raw alerts | Alarms | Possible | Medium | Severe |\n|---|---:|---:|---:|---:|---:|\n";
  for (const auto& set : r.sets) {
    s += "| " + set.name + " | " + std::to_string(set.raw_alerts) + " | " + std::to_string(set.alarms.size()) + " | " +
         std::to_string(set.severity_counts[0]) + " | " + std::to_string(set.severity_counts[1]) + " | " +
         std::to_string(set.severity_counts[2]) + " |\n";
  }
  s += "\n## Alarms\n\n| Set | Source | Origin | qa | qb | Severity |\n|---|---|---|---:|---:|---|\n";
  for (const auto& set : r.sets) {
    for (const auto& a : set.alarms) {
      s += "| " + set.name + " | " + a.source.to_string() + " | " + std::string(to_string(a.origin)) + " | " +
           fixed(a.qa, 4) + " | " + std::to_string(a.qb) + " | " + std::string(to_string(*a.severity)) + " |\n";
    }
  }
  text::write_file(path, s);
}

void write_comparison_csv(const std::filesystem::path& path, const ComparisonReport& r) {
  std::string s =
      "set,windows,baseline_tp,baseline_tn,baseline_fp,baseline_fn,baseline_da,baseline_far,itocsvm_tp,itocsvm_tn,"
      "itocsvm_fp,itocsvm_fn,itocsvm_da,itocsvm_far,raw_alerts,alarms,possible,medium,severe\n";
  auto row = [&](const std::string& name, std::size_t cells, const Score& b, const Score& f, std::size_t raw,
                 std::size_t alarms, const std::array<std::size_t, 3>& sev) {
    s += name + "," + std::to_string(cells);
    for (const Score* x : {&b, &f}) {
      s += "," + std::to_string(x->tp) + "," + std::to_string(x->tn) + "," + std::to_string(x->fp) + "," +
           std::to_string(x->fn) + "," + text::format_double(x->da) + "," + text::format_double(x->far);
    }
    s += "," + std::to_string(raw) + "," + std::to_string(alarms);
    for (auto c : sev) s += "," + std::to_string(c);
    s += "\n";
  };
  std::size_t raw = 0, alarms = 0;
  std::array<std::size_t, 3> sev{};
  for (const auto& set : r.sets) {
    row(set.name, set.cells, set.baseline, set.itocsvm, set.raw_alerts, set.alarms.size(), set.severity_counts);
    raw += set.raw_alerts;
    alarms += set.alarms.size();
    for (std::size_t k = 0; k < 3; ++k) sev[k] += set.severity_counts[k];
  }
  row("all", r.baseline_total.total(), r.baseline_total, r.itocsvm_total, raw, alarms, sev);
  text::write_file(path, s);
}

void write_sweep_csv(const std::filesystem::path& path, std::span<const SweepPoint> points) {
  std::string s = "threshold,split_models,da,far,baseline_da\n";
  for (const auto& p : points) {
    s += text::format_double(p.threshold) + "," + std::to_string(p.split_models) + "," + text::format_double(p.da) +
         "," + text::format_double(p.far) + "," + text::format_double(p.baseline_da) + "\n";
  }
  text::write_file(path, s);
}

void write_timing_markdown(const std::filesystem::path& path, const TimingReport& r) {
  std::string s = "# Detection timing\n\nMedian of " + std::to_string(r.repetitions) + " repetitions.\n\n";
  s += "| Configuration | Set | Split models | Baseline (s) | IT-OCSVM (s) | Ratio |\n|---|---|---:|---:|---:|---:|\n";
  for (const auto& row : r.rows) {
    s += "| " + row.configuration + " | " + row.set + " | " + std::to_string(row.split_models) + " | " +
         fixed(row.baseline_s, 6) + " | " + fixed(row.itocsvm_s, 6) + " | " + fixed(row.ratio, 3) + " |\n";
  }
  s += "\n| Configuration | Split models | Baseline total (s) | IT-OCSVM total (s) | Ratio | Ratio range |\n";
  s += "|---|---:|---:|---:|---:|---|\n";
  for (const auto& sum : r.summaries) {
    s += "| " + sum.configuration + " | " + std::to_string(sum.split_models) + " | " + fixed(sum.baseline_s, 6) +
         " | " + fixed(sum.itocsvm_s, 6) + " | " + fixed(sum.ratio, 3) + " | " + fixed(sum.ratio_min, 3) + " to " +
         fixed(sum.ratio_max, 3) + " |\n";
  }
  text::write_file(path, s);
}

void write_timing_csv(const std::filesystem::path& path, const TimingReport& r) {
  std::string s = "configuration,set,split_models,baseline_s,itocsvm_s,ratio\n";
  for (const auto& row : r.rows) {
    s += row.configuration + "," + row.set + "," + std::to_string(row.split_models) + "," +
         text::format_double(row.baseline_s) + "," + text::format_double(row.itocsvm_s) + "," +
         text::format_double(row.ratio) + "\n";
  }
  for (const auto& sum : r.summaries) {
    s += sum.configuration + ",all," + std::to_string(sum.split_models) + "," + text::format_double(sum.baseline_s) +
         "," + text::format_double(sum.itocsvm_s) + "," + text::format_double(sum.ratio) + "\n";
  }
  text::write_file(path, s);
}

}  // namespace itocsvm
