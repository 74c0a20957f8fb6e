#pragma once

// Data-parallel inner loops of the one-class SVM. Every kernel has a serial
// reference next to the OpenMP version; both evaluate each output element
// with the same expression, so their results are bitwise identical and the
// serial path serves as the oracle in tests and the baseline in bench/.

#include <span>

#include "itocsvm/types.hpp"

namespace itocsvm {

/// exp(−‖x − y‖² / (2σ²)). Throws DimensionMismatch on unequal lengths and
/// DomainError when sigma ≤ 0.
double rbf_kernel(std::span<const double> x, std::span<const double> y, double sigma);

/// Kernel value under either parameterization.
double kernel_value(const RbfKernel& k, const FeatureValues& x, const FeatureValues& y) noexcept;

namespace kernels {

/// out[i] = K(samples[i], samples[col])
void kernel_column_serial(const RbfKernel& k, std::span<const FeatureValues> samples, std::size_t col,
                          std::span<double> out);
void kernel_column_omp(const RbfKernel& k, std::span<const FeatureValues> samples, std::size_t col,
                       std::span<double> out);

/// out[i] = Σ_s α_s K(sv_s, inputs[i]) − ρ
void decision_values_serial(const OcsvmModel& model, std::span<const FeatureValues> inputs,
                            std::span<double> out);
void decision_values_omp(const OcsvmModel& model, std::span<const FeatureValues> inputs, std::span<double> out);

/// Number of OpenMP threads the parallel kernels will use (1 without OpenMP).
int max_threads() noexcept;

}  // namespace kernels
}  // namespace itocsvm
