#include "itocsvm/ensemble.hpp"

#include <string>

#include "itocsvm/errors.hpp"
#include "itocsvm/kernels.hpp"
#include "itocsvm/text.hpp"

namespace itocsvm {

double ensemble_score(double central, std::optional<double> split, const EnsembleWeights& weights) {
  if (weights.central < 0.0 || weights.split < 0.0) throw DomainError("ensemble weights must be non-negative");
  if (!split) {
    if (weights.central == 0.0 && weights.split == 0.0) throw DomainError("ensemble weights are both zero");
    return central;
  }
  const double total = weights.central + weights.split;
  if (total == 0.0) throw DomainError("ensemble weights are both zero");
  return (weights.central * central + weights.split * *split) / total;
}

ScaledFeatures scale_features(std::span<const FeatureVector> raw, const ScalingParams& scaler) {
  ScaledFeatures out;
  out.scaler_fingerprint = scaler.fingerprint();
  out.vectors.reserve(raw.size());
  for (const auto& v : raw) out.vectors.push_back(apply_scaling(v, scaler));
  return out;
}

namespace {

void check_scaler(std::uint64_t expected, std::uint64_t got, const std::string& what) {
  if (expected != got) {
    throw ScalerMismatch(what + " was scaled with scaler " + std::to_string(got) + ", expected " +
                         std::to_string(expected));
  }
}

std::vector<double> decisions(const OcsvmModel& m, std::span<const FeatureValues> inputs, Execution exec) {
  std::vector<double> out(inputs.size());
  if (exec == Execution::Parallel) {
    kernels::decision_values_omp(m, inputs, out);
  } else {
    kernels::decision_values_serial(m, inputs, out);
  }
  return out;
}

std::vector<std::size_t> per_source_indices(const ScaledFeatures& features) {
  std::vector<std::size_t> index;
  for (std::size_t i = 0; i < features.vectors.size(); ++i) {
    if (features.vectors[i].source()) index.push_back(i);
  }
  return index;
}

}  // namespace

std::vector<WindowScore> score_central(const OcsvmModel& central, const ScaledFeatures& features, Execution exec) {
  check_scaler(central.scaler_fingerprint, features.scaler_fingerprint, "test features");
  const auto index = per_source_indices(features);
  std::vector<FeatureValues> values;
  values.reserve(index.size());
  for (auto i : index) values.push_back(features.vectors[i].values());
  const auto g = decisions(central, values, exec);
  std::vector<WindowScore> out;
  out.reserve(index.size());
  for (std::size_t k = 0; k < index.size(); ++k) {
    const auto& v = features.vectors[index[k]];
    out.push_back(WindowScore{v.window_start(), *v.source(), g[k], std::nullopt, g[k]});
  }
  return out;
}

std::vector<WindowScore> score_dataset(const ModelSet& models, const ScaledFeatures& features,
                                       const EnsembleWeights& weights, Execution exec) {
  check_scaler(models.scaler_fingerprint, models.central.scaler_fingerprint, "central model");
  for (const auto& [source, m] : models.splits) {
    check_scaler(models.scaler_fingerprint, m.scaler_fingerprint, "split model " + source.to_string());
  }
  auto out = score_central(models.central, features, exec);
  const auto index = per_source_indices(features);

  // Positions in `out` per split-covered source.
  std::map<SourceId, std::vector<std::size_t>> groups;
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (models.splits.contains(out[k].source)) groups[out[k].source].push_back(k);
  }
  for (const auto& [source, positions] : groups) {
    std::vector<FeatureValues> values;
    values.reserve(positions.size());
    for (auto k : positions) values.push_back(features.vectors[index[k]].values());
    const auto d = decisions(models.splits.at(source), values, exec);
    for (std::size_t k = 0; k < positions.size(); ++k) out[positions[k]].split = d[k];
  }
  for (auto& s : out) s.ensemble = ensemble_score(s.central, s.split, weights);
  return out;
}

void write_score_dump(const std::filesystem::path& path, std::span<const WindowScore> scores) {
  std::string out = "window_start,src_ip,src_mac,central,split,ensemble\n";
  for (const auto& s : scores) {
    out += text::format_double(s.window_start) + "," + s.source.ip + "," + s.source.mac + "," +
           text::format_double(s.central) + "," + (s.split ? text::format_double(*s.split) : std::string()) + "," +
           text::format_double(s.ensemble) + "\n";
  }
  text::write_file(path, out);
}

}  // namespace itocsvm
