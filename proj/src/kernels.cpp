#include "itocsvm/kernels.hpp"

#include <cmath>
#include <cstdint>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "itocsvm/errors.hpp"

namespace itocsvm {

namespace {

inline double squared_distance(const FeatureValues& x, const FeatureValues& y) noexcept {
  double d2 = 0.0;
  for (std::size_t k = 0; k < kFeatureCount; ++k) {
    const double d = x[k] - y[k];
    d2 += d * d;
  }
  return d2;
}

inline double decision_one(const OcsvmModel& m, double gamma, const FeatureValues& v) noexcept {
  double sum = 0.0;
  for (std::size_t s = 0; s < m.support_vectors.size(); ++s) {
    sum += m.alphas[s] * std::exp(-gamma * squared_distance(m.support_vectors[s], v));
  }
  return sum - m.rho;
}

void check_sizes(std::size_t expected, std::size_t got) {
  if (expected != got) {
    throw DimensionMismatch("output span has " + std::to_string(got) + " slots for " + std::to_string(expected) +
                            " inputs");
  }
}

}  // namespace

double rbf_kernel(std::span<const double> x, std::span<const double> y, double sigma) {
  if (x.size() != y.size()) {
    throw DimensionMismatch("rbf_kernel on vectors of length " + std::to_string(x.size()) + " and " +
                            std::to_string(y.size()));
  }
  if (!(sigma > 0.0)) throw DomainError("rbf_kernel needs sigma > 0");
  double d2 = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double d = x[k] - y[k];
    d2 += d * d;
  }
  return std::exp(-d2 / (2.0 * sigma * sigma));
}

double kernel_value(const RbfKernel& k, const FeatureValues& x, const FeatureValues& y) noexcept {
  return std::exp(-k.gamma() * squared_distance(x, y));
}

namespace kernels {

void kernel_column_serial(const RbfKernel& k, std::span<const FeatureValues> samples, std::size_t col,
                          std::span<double> out) {
  check_sizes(samples.size(), out.size());
  const double gamma = k.gamma();
  const FeatureValues& c = samples[col];
  for (std::size_t i = 0; i < samples.size(); ++i) {
    out[i] = std::exp(-gamma * squared_distance(samples[i], c));
  }
}

void kernel_column_omp(const RbfKernel& k, std::span<const FeatureValues> samples, std::size_t col,
                       std::span<double> out) {
  check_sizes(samples.size(), out.size());
  const double gamma = k.gamma();
  const FeatureValues& c = samples[col];
  const auto n = static_cast<std::int64_t>(samples.size());
#pragma omp parallel for schedule(static) if (n > 2048)
  for (std::int64_t i = 0; i < n; ++i) {
    out[i] = std::exp(-gamma * squared_distance(samples[i], c));
  }
}

void decision_values_serial(const OcsvmModel& model, std::span<const FeatureValues> inputs,
                            std::span<double> out) {
  check_sizes(inputs.size(), out.size());
  const double gamma = model.kernel.gamma();
  for (std::size_t i = 0; i < inputs.size(); ++i) out[i] = decision_one(model, gamma, inputs[i]);
}

void decision_values_omp(const OcsvmModel& model, std::span<const FeatureValues> inputs, std::span<double> out) {
  check_sizes(inputs.size(), out.size());
  const double gamma = model.kernel.gamma();
  const auto n = static_cast<std::int64_t>(inputs.size());
#pragma omp parallel for schedule(static) if (n * static_cast<std::int64_t>(model.support_vectors.size()) > 4096)
  for (std::int64_t i = 0; i < n; ++i) out[i] = decision_one(model, gamma, inputs[i]);
}

int max_threads() noexcept {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace kernels
}  // namespace itocsvm
