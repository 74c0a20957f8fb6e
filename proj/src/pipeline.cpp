#include "itocsvm/pipeline.hpp"

#include <algorithm>
#include <set>

#include "itocsvm/errors.hpp"
#include "itocsvm/fusion.hpp"
#include "itocsvm/ocsvm.hpp"
#include "itocsvm/social.hpp"
#include "itocsvm/text.hpp"

namespace itocsvm {

void DetectorConfig::validate() const {
  if (!(nu > 0.0 && nu <= 1.0)) throw DomainError("nu must lie in (0, 1]");
  if (!(kernel.param > 0.0)) throw DomainError("kernel value must be positive");
  if (!(p_packets > 0.0 && p_packets <= 1.0)) throw DomainError("p_packets must lie in (0, 1]");
  if (!(window_s > 0.0)) throw DomainError("window must be positive");
  if (weights.central < 0.0 || weights.split < 0.0 || weights.central + weights.split <= 0.0) {
    throw DomainError("ensemble weights must be non-negative and not both zero");
  }
  if (!(coefficient_floor > 0.0 && coefficient_floor <= 1.0)) throw DomainError("coefficient floor must lie in (0, 1]");
  if (kmeans_max_iter < 1) throw DomainError("kmeans_max_iter must be at least 1");
  if (analyzer_id.empty() || analyzer_id.find_first_of("/\\ \t") != std::string::npos) {
    throw DomainError("analyzer id must be a non-empty token");
  }
}

std::string format_config(const DetectorConfig& c) {
  std::string s;
  s += "nu = " + text::format_double(c.nu) + "\n";
  s += "kernel = " + text::format_double(c.kernel.param) + "\n";
  s += "kernel_param = " + std::string(to_string(c.kernel.mode)) + "\n";
  s += "p_packets = " + text::format_double(c.p_packets) + "\n";
  s += "window = " + text::format_double(c.window_s) + "\n";
  s += "weight_central = " + text::format_double(c.weights.central) + "\n";
  s += "weight_split = " + text::format_double(c.weights.split) + "\n";
  s += "coefficient_floor = " + text::format_double(c.coefficient_floor) + "\n";
  s += "kmeans_max_iter = " + std::to_string(c.kmeans_max_iter) + "\n";
  s += "analyzer_id = " + c.analyzer_id + "\n";
  s += "capture_epoch = " + std::to_string(c.capture_epoch_s) + "\n";
  return s;
}

DetectorConfig apply_config(DetectorConfig c, const std::map<std::string, std::string>& kv, const std::string& origin) {
  auto real = [&](const std::string& key, const std::string& v) {
    double out = 0.0;
    if (!text::parse_double(v, out)) throw ParseError(origin + ": " + key + " is not a number");
    return out;
  };
  for (const auto& [key, value] : kv) {
    if (key == "nu") {
      c.nu = real(key, value);
    } else if (key == "kernel") {
      c.kernel.param = real(key, value);
    } else if (key == "kernel_param") {
      const auto mode = parse_kernel_mode(value);
      if (!mode) throw ParseError(origin + ": kernel_param must be gamma or sigma");
      c.kernel.mode = *mode;
    } else if (key == "p_packets") {
      c.p_packets = real(key, value);
    } else if (key == "window") {
      c.window_s = real(key, value);
    } else if (key == "weight_central") {
      c.weights.central = real(key, value);
    } else if (key == "weight_split") {
      c.weights.split = real(key, value);
    } else if (key == "coefficient_floor") {
      c.coefficient_floor = real(key, value);
    } else if (key == "kmeans_max_iter") {
      std::int64_t v = 0;
      if (!text::parse_i64(value, v) || v < 1 || v > 1'000'000) throw ParseError(origin + ": bad kmeans_max_iter");
      c.kmeans_max_iter = static_cast<int>(v);
    } else if (key == "analyzer_id") {
      c.analyzer_id = value;
    } else if (key == "capture_epoch") {
      if (!text::parse_i64(value, c.capture_epoch_s)) throw ParseError(origin + ": bad capture_epoch");
    } else {
      throw ParseError(origin + ": unknown key '" + key + "'");
    }
  }
  return c;
}

DetectorConfig parse_config(std::string_view content, const std::string& origin) {
  auto c = apply_config(DetectorConfig{}, text::parse_key_values(content, origin), origin);
  c.validate();
  return c;
}

TrainingSet prepare_training(std::span<const PacketRecord> train, double window_s) {
  if (train.empty()) throw EmptyDataset();
  const auto raw = extract_features(train, window_s, FeatureScope::PerSource);
  TrainingSet set;
  set.window_s = window_s;
  set.scaler = fit_scaling(raw);
  set.pooled.reserve(raw.size());
  for (const auto& v : raw) {
    const auto scaled = apply_scaling(v, set.scaler);
    set.pooled.push_back(scaled.values());
    set.by_source[*v.source()].push_back(scaled.values());
  }
  return set;
}

namespace {

OcsvmModel fit(std::span<const FeatureValues> samples, const DetectorConfig& config, std::optional<SourceId> scope,
               std::uint64_t fingerprint) {
  TrainOptions opt;
  opt.nu = config.nu;
  opt.kernel = config.kernel;
  auto m = train(samples, opt);
  m.scope = std::move(scope);
  m.scaler_fingerprint = fingerprint;
  return m;
}

}  // namespace

TrainedDetector with_plan(const TrainingSet& set, const OcsvmModel& central, const SplitPlan& plan,
                          const DetectorConfig& config) {
  TrainedDetector d;
  d.config = config;
  d.scaler = set.scaler;
  d.plan = plan;
  d.models.scaler_fingerprint = set.scaler.fingerprint();
  d.models.central = central;
  for (const auto& profile : plan.significant) {
    const auto it = set.by_source.find(profile.source);
    const std::size_t windows = it == set.by_source.end() ? 0 : it->second.size();
    if (windows < 2) {
      throw TooFewSamples("source " + profile.source.to_string() + " has only " + std::to_string(windows) +
                          " training window(s)");
    }
    d.models.splits.emplace(profile.source, fit(it->second, config, profile.source, d.models.scaler_fingerprint));
  }
  return d;
}

TrainedDetector train_detector(const TrainingSet& set, const SplitPlan& plan, const DetectorConfig& config) {
  config.validate();
  const auto central = fit(set.pooled, config, std::nullopt, set.scaler.fingerprint());
  return with_plan(set, central, plan, config);
}

TrainedDetector train_detector(std::span<const PacketRecord> train, const DetectorConfig& config) {
  config.validate();
  const auto set = prepare_training(train, config.window_s);
  return train_detector(set, find_significant_sources(train, config.p_packets), config);
}

void save_detector(const TrainedDetector& d, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (!std::filesystem::is_directory(dir)) throw IoError("cannot create model directory " + dir.string());
  text::write_file(dir / "detector.cfg", format_config(d.config));
  save_scaling(d.scaler, dir / "scaler.txt");
  write_sources_file(d.plan, dir / "sources.txt");
  save_model(d.models.central, dir / "central.model");
  // Remove split models left over from an earlier plan.
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    if (name.starts_with("split_") && name.ends_with(".model")) std::filesystem::remove(entry.path());
  }
  for (std::size_t k = 0; k < d.plan.significant.size(); ++k) {
    const auto it = d.models.splits.find(d.plan.significant[k].source);
    if (it != d.models.splits.end()) save_model(it->second, dir / ("split_" + std::to_string(k) + ".model"));
  }
}

TrainedDetector load_detector(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw IoError("model directory " + dir.string() + " does not exist");
  TrainedDetector d;
  d.config = parse_config(text::read_file(dir / "detector.cfg"), (dir / "detector.cfg").string());
  d.config.validate();
  d.scaler = load_scaling(dir / "scaler.txt");
  d.plan = read_sources_file(dir / "sources.txt");
  d.models.scaler_fingerprint = d.scaler.fingerprint();
  d.models.central = load_model(dir / "central.model");
  auto check = [&](const OcsvmModel& m, const std::string& what) {
    if (m.scaler_fingerprint != d.models.scaler_fingerprint) {
      throw ScalerMismatch(what + " was trained with a different scaler than " + (dir / "scaler.txt").string());
    }
  };
  check(d.models.central, "central.model");
  for (std::size_t k = 0; k < d.plan.significant.size(); ++k) {
    const auto path = dir / ("split_" + std::to_string(k) + ".model");
    if (!std::filesystem::exists(path)) continue;
    auto m = load_model(path);
    if (!m.scope || *m.scope != d.plan.significant[k].source) {
      throw ParseError(path.string() + " does not belong to source " + d.plan.significant[k].source.to_string());
    }
    check(m, path.filename().string());
    d.models.splits.emplace(*m.scope, std::move(m));
  }
  return d;
}

std::size_t DetectionResult::ocsvm_alert_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(alerts.begin(), alerts.end(), [](const Alert& a) { return a.kind == AlertKind::OCSVM; }));
}

namespace {

ScaledFeatures test_features(const TrainedDetector& d, std::span<const PacketRecord> test) {
  if (test.empty()) throw EmptyDataset();
  const auto raw = extract_features(test, d.config.window_s, FeatureScope::PerSource);
  return scale_features(raw, d.scaler);
}

}  // namespace

DetectionResult detect(const TrainedDetector& d, std::span<const PacketRecord> test, Execution exec) {
  DetectionResult r;
  r.scores = score_dataset(d.models, test_features(d, test), d.config.weights, exec);
  r.coefficients = source_coefficients(d.plan, test);
  r.alerts = weight_alerts(r.scores, r.coefficients, d.config.coefficient_floor);
  const auto unmarked = flag_unmarked_sources(test, d.plan, d.config.p_packets);
  r.alerts.insert(r.alerts.end(), unmarked.begin(), unmarked.end());
  r.alarms = classify_severity(aggregate(r.alerts), d.config.kmeans_max_iter);
  return r;
}

std::vector<WindowScore> detect_baseline(const TrainedDetector& d, std::span<const PacketRecord> test,
                                         Execution exec) {
  return score_central(d.models.central, test_features(d, test), exec);
}

std::vector<CellKey> baseline_predictions(std::span<const WindowScore> scores) {
  std::vector<CellKey> out;
  for (const auto& s : scores) {
    if (s.central < 0.0) out.emplace_back(s.window_start, s.source);
  }
  return out;
}

std::vector<CellKey> itocsvm_predictions(const DetectionResult& r) {
  std::set<SourceId> unmarked;
  std::set<CellKey> flagged;
  for (const auto& a : r.alerts) {
    if (a.kind == AlertKind::UNMARKED_SOURCE) {
      unmarked.insert(a.source);
    } else {
      flagged.emplace(a.window_start, a.source);
    }
  }
  for (const auto& s : r.scores) {
    if (unmarked.contains(s.source)) flagged.emplace(s.window_start, s.source);
  }
  return {flagged.begin(), flagged.end()};
}

}  // namespace itocsvm
