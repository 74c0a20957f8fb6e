// Acceptance run: one PASS/FAIL line per criterion. Each criterion is its own
// test case so ctest can run them separately.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "helpers.hpp"
#include "itocsvm/evalharness.hpp"
#include "itocsvm/fusion.hpp"
#include "itocsvm/idmef.hpp"
#include "itocsvm/ocsvm.hpp"
#include "itocsvm/pipeline.hpp"
#include "itocsvm/simgen.hpp"
#include "itocsvm/social.hpp"
#include "itocsvm/splitter.hpp"

using namespace itocsvm;
using Clock = std::chrono::steady_clock;

namespace {

constexpr std::uint64_t kSeed = 42;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void report(int n, bool pass, const std::string& what, const std::string& detail) {
  std::printf("[%s] criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", n, what.c_str(), detail.c_str());
  std::fflush(stdout);
}

std::string fmt(double v, int digits = 2) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << v;
  return os.str();
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

const Suite& standard() {
  static const Suite s = [] {
    Suite out;
    out.train = generate(standard_train_spec(kSeed)).records;
    for (const auto& [name, spec] : standard_test_specs(kSeed)) {
      const auto g = generate(spec);
      out.tests.push_back(TestSet{name, g.records, window_labels(g, spec.window_s)});
    }
    return out;
  }();
  return s;
}

const TrainedDetector& default_detector() {
  static const TrainedDetector d = train_detector(standard().train, DetectorConfig{});
  return d;
}

struct ComparisonRun {
  ComparisonReport report;
  double seconds = 0.0;
};

const ComparisonRun& comparison() {
  static const ComparisonRun run = [] {
    const auto t0 = Clock::now();
    ComparisonRun r;
    r.report = compare_baseline(default_detector(), standard());
    r.seconds = seconds_since(t0);
    return r;
  }();
  return run;
}

const SetResult& set(const ComparisonReport& r, const std::string& name) {
  for (const auto& s : r.sets) {
    if (s.name == name) return s;
  }
  throw std::runtime_error("no test set " + name);
}

/// Pearson correlation of two equal-length vectors.
double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

/// Minimum SSE over every contiguous split of the sorted values into two
/// non-empty groups; 0 when fewer than two distinct values exist.
double optimal_two_partition_sse(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  if (v.front() == v.back()) return 0.0;
  auto sse = [&](std::size_t b, std::size_t e) {
    double m = 0.0;
    for (std::size_t i = b; i < e; ++i) m += v[i];
    m /= static_cast<double>(e - b);
    double s = 0.0;
    for (std::size_t i = b; i < e; ++i) s += (v[i] - m) * (v[i] - m);
    return s;
  };
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t cut = 1; cut < v.size(); ++cut) best = std::min(best, sse(0, cut) + sse(cut, v.size()));
  return best;
}

}  // namespace

TEST_CASE("criterion 1: spearman matches pearson on ranks") {
  const auto t0 = Clock::now();
  double worst = 0.0;
  std::size_t pairs = 0;
  for (std::size_t n = 2; n <= 5; ++n) {
    std::vector<double> base(n);
    std::iota(base.begin(), base.end(), 1.0);
    auto a = base;
    do {
      auto b = base;
      do {
        worst = std::max(worst, std::abs(spearman_from_ranks(a, b) - pearson(a, b)));
        ++pairs;
      } while (std::next_permutation(b.begin(), b.end()));
    } while (std::next_permutation(a.begin(), a.end()));
  }
  const double secs = seconds_since(t0);
  const bool pass = worst <= 1e-12 && secs < 1.0;
  report(1, pass, "Spearman equals Pearson on ranks for n <= 5",
         std::to_string(pairs) + " pairs, max |diff| " + sci(worst) + ", " + fmt(secs, 3) + " s");
  CHECK(worst <= 1e-12);
  CHECK(secs < 1.0);
}

TEST_CASE("criterion 2: nu bounds the training outlier fraction") {
  const auto t0 = Clock::now();
  const std::size_t n = 200;
  const double slack = 2.0 / std::sqrt(static_cast<double>(n));
  std::size_t runs = 0;
  std::size_t inside = 0;
  for (double nu : {0.05, 0.1, 0.25}) {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      std::mt19937_64 rng(seed * 1000 + static_cast<std::uint64_t>(nu * 1000));
      std::uniform_real_distribution<double> u(0.0, 1.0);
      std::vector<FeatureValues> pts(n);
      for (auto& p : pts) {
        for (auto& x : p) x = u(rng);
      }
      TrainOptions opt;
      opt.nu = nu;
      opt.kernel = DetectorConfig{}.kernel;
      const auto m = train(pts, opt);
      std::size_t neg = 0;
      for (const auto& p : pts) neg += decide(m, p) < 0.0 ? 1 : 0;
      const double frac = static_cast<double>(neg) / static_cast<double>(n);
      ++runs;
      inside += std::abs(frac - nu) <= slack ? 1 : 0;
    }
  }
  const double secs = seconds_since(t0);
  const double share = static_cast<double>(inside) / static_cast<double>(runs);
  const bool pass = share >= 0.9 && secs < 120.0;
  report(2, pass, "outlier fraction within nu +- 2/sqrt(n) in >= 90% of runs",
         std::to_string(inside) + "/" + std::to_string(runs) + " runs inside, " + fmt(secs) + " s");
  CHECK(share >= 0.9);
  CHECK(secs < 120.0);
}

TEST_CASE("criterion 3: 2-means reaches the optimal contiguous partition") {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(kSeed);
  std::size_t mismatches = 0;
  std::size_t sse_increases = 0;
  std::string example;
  for (int c = 0; c < 200; ++c) {
    const std::size_t n = 2 + rng() % 11;
    std::vector<double> v(n);
    // Alternate between continuous and heavily tied integer draws.
    if (c % 2 == 0) {
      std::lognormal_distribution<double> ln(0.0, 1.0);
      for (auto& x : v) x = ln(rng);
    } else {
      for (auto& x : v) x = static_cast<double>(rng() % 21);
    }
    const auto r = kmeans_1d(v);
    for (std::size_t i = 1; i < r.sse_trace.size(); ++i) sse_increases += r.sse_trace[i] > r.sse_trace[i - 1] ? 1 : 0;
    const double best = optimal_two_partition_sse(v);
    if (std::abs(r.sse - best) > 1e-9 * std::max(1.0, best)) {
      if (mismatches++ == 0) {
        std::ostringstream os;
        os << "first: n=" << n << " lloyd " << r.sse << " vs optimum " << best;
        example = os.str();
      }
    }
  }
  const double secs = seconds_since(t0);
  const bool pass = mismatches == 0 && sse_increases == 0 && secs < 10.0;
  report(3, pass, "Lloyd with min/max init matches the exhaustive optimum and SSE never rises",
         std::to_string(mismatches) + "/200 suboptimal, " + std::to_string(sse_increases) + " SSE increases" +
             (example.empty() ? "" : "; " + example) + ", " + fmt(secs, 3) + " s");
  CHECK(sse_increases == 0);
  CHECK(mismatches == 0);
  CHECK(secs < 10.0);
}

TEST_CASE("criterion 4: IT-OCSVM beats the central baseline and catches the scan") {
  const auto t0 = Clock::now();
  const auto& r = comparison().report;
  const double gain = r.itocsvm_total.da - r.baseline_total.da;
  const auto& b = set(r, "B");
  // The scanner is the workstation probing from its own address.
  const SourceId scanner{"10.0.0.30", "02:00:00:00:00:1e"};
  const auto& test_b = standard().tests[1];
  const auto result_b = detect(default_detector(), test_b.records);
  std::size_t scanner_alerts = 0;
  for (const auto& a : result_b.alerts) scanner_alerts += a.source == scanner ? 1 : 0;
  const double secs = seconds_since(t0);
  const bool pass = gain >= 3.0 && scanner_alerts >= 1 && secs < 300.0;
  report(4, pass, "aggregate DA gain >= 3 points and scanner alerted in set B",
         "baseline " + fmt(r.baseline_total.da) + " vs IT-OCSVM " + fmt(r.itocsvm_total.da) + ", gain " + fmt(gain) +
             ", " + std::to_string(scanner_alerts) + " scanner alerts, " + std::to_string(b.alarms.size()) +
             " alarms in B, " + fmt(secs) + " s");
  CHECK(gain >= 3.0);
  CHECK(scanner_alerts >= 1);
  CHECK(secs < 300.0);
}

TEST_CASE("criterion 5: fusion reduces raw alerts to few alarms") {
  const auto& r = comparison().report;
  const auto& c = set(r, "C");
  std::size_t raw = 0;
  std::size_t alarms = 0;
  for (const auto& s : r.sets) {
    raw += s.raw_alerts;
    alarms += s.alarms.size();
  }
  const double c_share = 100.0 * static_cast<double>(c.alarms.size()) / static_cast<double>(c.raw_alerts);
  const double all_share = 100.0 * static_cast<double>(alarms) / static_cast<double>(raw);
  const bool pass = c.raw_alerts > 0 && c_share <= 1.0 && all_share <= 5.0;
  report(5, pass, "set C alarms <= 1% of raw alerts and suite alarms <= 5%",
         "C " + std::to_string(c.raw_alerts) + " -> " + std::to_string(c.alarms.size()) + " (" + fmt(c_share) +
             "%), suite " + std::to_string(raw) + " -> " + std::to_string(alarms) + " (" + fmt(all_share) + "%)");
  CHECK(c.raw_alerts > 0);
  CHECK(c_share <= 1.0);
  CHECK(all_share <= 5.0);
}

TEST_CASE("criterion 6: attackers are raised and the flood is severe") {
  const auto& r = comparison().report;
  std::vector<std::string> missing;
  std::size_t attackers = 0;
  for (const auto& s : r.sets) {
    for (const auto& who : s.attackers) {
      ++attackers;
      const bool raised = std::any_of(s.alarms.begin(), s.alarms.end(), [&](const AggregatedAlarm& a) {
        return a.source == who && (a.severity == Severity::MEDIUM || a.severity == Severity::SEVERE);
      });
      if (!raised) missing.push_back(s.name + ":" + who.to_string());
    }
  }
  const SourceId flooder{"10.0.0.66", "02:de:ad:be:ef:66"};
  const auto& c = set(r, "C");
  const bool flood_severe = std::any_of(c.alarms.begin(), c.alarms.end(), [&](const AggregatedAlarm& a) {
    return a.source == flooder && a.severity == Severity::SEVERE;
  });
  const auto& a = set(r, "A");
  const std::size_t severe_in_a = a.severity_counts[static_cast<std::size_t>(Severity::SEVERE)];
  const bool pass = missing.empty() && attackers > 0 && flood_severe && severe_in_a == 0;
  std::string miss;
  for (const auto& m : missing) miss += " " + m;
  report(6, pass, "every attacker MEDIUM/SEVERE; flooder SEVERE; no SEVERE in set A",
         std::to_string(attackers - missing.size()) + "/" + std::to_string(attackers) + " attackers raised" +
             (miss.empty() ? "" : " missing:" + miss) + ", flooder " + (flood_severe ? "SEVERE" : "not SEVERE") + ", " +
             std::to_string(severe_in_a) + " SEVERE in A");
  CHECK(missing.empty());
  CHECK(attackers > 0);
  CHECK(flood_severe);
  CHECK(severe_in_a == 0);
}

TEST_CASE("criterion 7: large thresholds degrade to the plain OCSVM") {
  const auto t0 = Clock::now();
  const std::vector<double> thresholds = {1.0, 0.5, 0.2, 0.1, 0.05, 0.025, 0.01, 0.005};
  const auto curve = sweep_p_packets(thresholds, standard(), DetectorConfig{});
  bool near_baseline = true;
  bool monotone = true;
  std::string detail;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const auto& p = curve[i];
    if (p.threshold >= 0.1 && std::abs(p.da - p.baseline_da) > 1.0) near_baseline = false;
    // thresholds descend, so the split count may only grow
    if (i > 0 && p.split_models < curve[i - 1].split_models) monotone = false;
    detail += (i ? ", " : "") + fmt(p.threshold, 3) + ":" + std::to_string(p.split_models) + "/" + fmt(p.da);
  }
  const double secs = seconds_since(t0);
  const bool pass = near_baseline && monotone && secs < 600.0;
  report(7, pass, "DA within 1 point of baseline at thresholds >= 0.1; split count monotone",
         "baseline " + fmt(curve.front().baseline_da) + "; threshold:splits/DA " + detail + ", " + fmt(secs) + " s");
  CHECK(near_baseline);
  CHECK(monotone);
  CHECK(secs < 600.0);
}

TEST_CASE("criterion 8: more split models cost more detection time") {
  const auto t0 = Clock::now();
  const auto& base = default_detector();
  const auto set = prepare_training(standard().train, base.config.window_s);
  const auto forced = with_plan(set, base.models.central, top_sources_plan(standard().train, 15), base.config);
  const std::vector<std::pair<std::string, const TrainedDetector*>> dets = {{"default", &base}, {"forced", &forced}};
  const auto t = timing_report(standard(), dets, 5);
  const auto* d = t.find("default");
  const auto* f = t.find("forced");
  REQUIRE(d != nullptr);
  REQUIRE(f != nullptr);
  const double secs = seconds_since(t0);
  const bool pass = d->ratio >= 1.0 && f->ratio > d->ratio && f->split_models == 15 && secs < 600.0;
  report(8, pass, "ratio >= 1 at default split count and larger at 15 splits",
         "default " + std::to_string(d->split_models) + " splits ratio " + fmt(d->ratio) + " [" + fmt(d->ratio_min) +
             ", " + fmt(d->ratio_max) + "] per-rep, forced " + std::to_string(f->split_models) + " splits ratio " +
             fmt(f->ratio) + " [" + fmt(f->ratio_min) + ", " + fmt(f->ratio_max) + "], 5 reps, " + fmt(secs) + " s");
  CHECK(d->ratio >= 1.0);
  CHECK(f->ratio > d->ratio);
  CHECK(f->split_models == 15);
  CHECK(secs < 600.0);
}

TEST_CASE("criterion 9: IDMEF files re-parse to the emitted alarm") {
  const auto& r = comparison().report;
  testing::TempDir dir("acceptance_idmef");
  const std::int64_t epoch = 1700000000;
  const auto t0 = Clock::now();
  IdmefWriter writer("itocsvm", dir.path(), epoch);
  std::size_t total = 0;
  std::size_t matched = 0;
  for (const auto& s : r.sets) {
    for (const auto& a : s.alarms) {
      const auto path = writer.emit(a);
      ++total;
      const auto back = read_idmef(path);
      const bool same = back.source == a.source && back.classification == classification_text(*a.severity) &&
                        back.qa == a.qa && back.qb == a.qb &&
                        std::abs(back.create_time_s - (static_cast<double>(epoch) + a.last_seen)) <= 1e-6;
      matched += same ? 1 : 0;
    }
  }
  const double secs = seconds_since(t0);
  const bool pass = total > 0 && matched == total && secs < 5.0;
  report(9, pass, "every IDMEF file re-parses to (source, time, classification, qa, qb)",
         std::to_string(matched) + "/" + std::to_string(total) + " files match, " + fmt(secs, 3) + " s");
  CHECK(total > 0);
  CHECK(matched == total);
  CHECK(secs < 5.0);
}
