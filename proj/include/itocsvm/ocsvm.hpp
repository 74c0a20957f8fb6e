#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

#include "itocsvm/types.hpp"

namespace itocsvm {

struct TrainOptions {
  double nu = 0.001;
  RbfKernel kernel{};
  /// Stop once the maximal KKT violation drops to this value.
  double tolerance = 1e-6;
  /// Pair-update budget; 0 means 10·n².
  std::size_t max_iterations = 0;
  /// Alphas at or below this value are dropped from the model.
  double sv_threshold = 1e-8;
  /// Byte budget for cached kernel columns.
  std::size_t cache_bytes = std::size_t{256} << 20;
};

/// Diagnostics of one training run.
struct TrainStats {
  std::size_t iterations = 0;
  double final_violation = 0.0;
  std::size_t free_support_vectors = 0;
  std::size_t bounded_support_vectors = 0;
};

/// Schölkopf one-class dual,
///   minimise ½ Σᵢⱼ αᵢαⱼ K(xᵢ, xⱼ)  s.t.  0 ≤ αᵢ ≤ 1/(νn),  Σαᵢ = 1,
/// solved with maximal-violating-pair updates. ρ is the mean decision value
/// over free support vectors (0 < α < 1/(νn)); when none exist it is the
/// midpoint of the feasible interval.
///
/// Throws TooFewSamples for n < 2, DomainError for ν ∉ (0, 1] or a
/// non-positive kernel parameter, SolverNotConverged when the budget runs out.
OcsvmModel train(std::span<const FeatureValues> samples, const TrainOptions& options, TrainStats* stats = nullptr);
OcsvmModel train(std::span<const FeatureVector> samples, const TrainOptions& options, TrainStats* stats = nullptr);

/// g(v) = Σ αᵢ K(sᵢ, v) − ρ; negative means anomalous.
double decide(const OcsvmModel& model, const FeatureValues& v) noexcept;
double decide(const OcsvmModel& model, const FeatureVector& v) noexcept;
/// Span form; throws DimensionMismatch unless v has 8 entries.
double decide(const OcsvmModel& model, std::span<const double> v);

/// ½ αᵀKα over the model's support vectors.
double dual_objective(std::span<const FeatureValues> points, std::span<const double> alphas, const RbfKernel& kernel);

/// Text model file: header (version, nu, kernel mode/value, dimension, n_train,
/// scope, scaler fingerprint, support-vector count), a `rho` line, then one
/// line per support vector: alpha followed by the feature values. Doubles are
/// written in shortest round-trip form, so load(save(m)) == m.
void save_model(const OcsvmModel& model, const std::filesystem::path& path);
OcsvmModel load_model(const std::filesystem::path& path);

}  // namespace itocsvm
