#include "itocsvm/ocsvm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <list>
#include <string>

#include "itocsvm/errors.hpp"
#include "itocsvm/kernels.hpp"
#include "itocsvm/text.hpp"

namespace itocsvm {

namespace {

/// Kernel columns on demand. Holds the full Gram matrix when it fits the
/// budget, otherwise an LRU set of columns (at least two, so the pair being
/// updated is never evicted under itself).
class KernelColumns {
 public:
  KernelColumns(std::span<const FeatureValues> samples, const RbfKernel& kernel, std::size_t budget_bytes)
      : samples_(samples), kernel_(kernel), slot_of_(samples.size(), kNone) {
    const std::size_t col_bytes = samples.size() * sizeof(double);
    capacity_ = std::max<std::size_t>(2, budget_bytes / std::max<std::size_t>(col_bytes, 1));
    capacity_ = std::min(capacity_, samples.size());
  }

  const double* column(std::size_t j) {
    if (slot_of_[j] != kNone) {
      lru_.splice(lru_.begin(), lru_, where_[slot_of_[j]]);
      return slots_[slot_of_[j]].data();
    }
    std::size_t slot;
    if (slots_.size() < capacity_) {
      slot = slots_.size();
      slots_.emplace_back(samples_.size());
      owner_.push_back(j);
      where_.push_back(lru_.end());
    } else {
      slot = lru_.back();
      lru_.pop_back();
      slot_of_[owner_[slot]] = kNone;
      owner_[slot] = j;
    }
    kernels::kernel_column_omp(kernel_, samples_, j, slots_[slot]);
    slot_of_[j] = slot;
    lru_.push_front(slot);
    where_[slot] = lru_.begin();
    return slots_[slot].data();
  }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::span<const FeatureValues> samples_;
  RbfKernel kernel_;
  std::size_t capacity_ = 2;
  std::vector<std::vector<double>> slots_;
  std::vector<std::size_t> owner_;
  std::vector<std::list<std::size_t>::iterator> where_;
  std::vector<std::size_t> slot_of_;
  std::list<std::size_t> lru_;
};

void check_options(std::size_t n, const TrainOptions& o) {
  if (n < 2) throw TooFewSamples("one-class SVM training needs at least 2 samples, got " + std::to_string(n));
  if (!(o.nu > 0.0 && o.nu <= 1.0)) throw DomainError("nu must lie in (0, 1]");
  if (!(o.kernel.param > 0.0)) throw DomainError("kernel parameter must be positive");
  if (!(o.tolerance > 0.0)) throw DomainError("solver tolerance must be positive");
}

}  // namespace

OcsvmModel train(std::span<const FeatureValues> samples, const TrainOptions& options, TrainStats* stats) {
  const std::size_t n = samples.size();
  check_options(n, options);

  const double upper = 1.0 / (options.nu * static_cast<double>(n));
  const std::size_t budget = options.max_iterations > 0 ? options.max_iterations : 10 * n * n;

  // Feasible start: fill alphas at the upper bound until the mass runs out.
  std::vector<double> alpha(n, 0.0);
  double remaining = 1.0;
  for (std::size_t i = 0; i < n && remaining > 0.0; ++i) {
    const double a = std::min(upper, remaining);
    alpha[i] = a;
    remaining -= a;
    if (remaining < 1e-15) remaining = 0.0;
  }

  KernelColumns columns(samples, options.kernel, options.cache_bytes);

  // Gradient of ½αᵀKα.
  std::vector<double> grad(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    if (alpha[j] == 0.0) continue;
    const double* kj = columns.column(j);
    for (std::size_t t = 0; t < n; ++t) grad[t] += alpha[j] * kj[t];
  }

  std::size_t iter = 0;
  double violation = 0.0;
  bool converged = false;
  for (; iter <= budget; ++iter) {
    // i: may grow (α < C) with the smallest gradient; j: may shrink (α > 0)
    // with the largest. Lowest index wins ties.
    std::size_t i = n;
    std::size_t j = n;
    double g_min = std::numeric_limits<double>::infinity();
    double g_max = -std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < n; ++t) {
      if (alpha[t] < upper && grad[t] < g_min) {
        g_min = grad[t];
        i = t;
      }
      if (alpha[t] > 0.0 && grad[t] > g_max) {
        g_max = grad[t];
        j = t;
      }
    }
    violation = (i == n || j == n) ? 0.0 : g_max - g_min;
    if (violation <= options.tolerance) {
      converged = true;
      break;
    }
    if (iter == budget) break;

    const double* ki = columns.column(i);
    const double* kj = columns.column(j);
    double curvature = 2.0 - 2.0 * ki[j];
    if (curvature < 1e-12) curvature = 1e-12;
    double delta = violation / curvature;
    const double room_i = upper - alpha[i];
    const double room_j = alpha[j];
    if (delta >= room_i || delta >= room_j) {
      if (room_i <= room_j) {
        delta = room_i;
        alpha[i] = upper;
        alpha[j] = room_j - delta;
        if (room_i == room_j) alpha[j] = 0.0;
      } else {
        delta = room_j;
        alpha[i] += delta;
        alpha[j] = 0.0;
      }
    } else {
      alpha[i] += delta;
      alpha[j] -= delta;
    }
    for (std::size_t t = 0; t < n; ++t) grad[t] += delta * (ki[t] - kj[t]);
  }

  if (!converged) {
    throw SolverNotConverged("one-class SVM did not converge after " + std::to_string(budget) +
                             " pair updates (violation " + text::format_double(violation) + ")");
  }

  // ρ from free support vectors; otherwise midpoint of the KKT interval.
  double free_sum = 0.0;
  std::size_t free_count = 0;
  std::size_t bounded = 0;
  double lower_bound = -std::numeric_limits<double>::infinity();  // max grad over α = C
  double upper_bound = std::numeric_limits<double>::infinity();   // min grad over α = 0
  for (std::size_t t = 0; t < n; ++t) {
    if (alpha[t] > 0.0 && alpha[t] < upper) {
      free_sum += grad[t];
      ++free_count;
    } else if (alpha[t] >= upper) {
      ++bounded;
      lower_bound = std::max(lower_bound, grad[t]);
    } else {
      upper_bound = std::min(upper_bound, grad[t]);
    }
  }
  double rho;
  if (free_count > 0) {
    rho = free_sum / static_cast<double>(free_count);
  } else if (std::isfinite(lower_bound) && std::isfinite(upper_bound)) {
    rho = 0.5 * (lower_bound + upper_bound);
  } else {
    rho = std::isfinite(lower_bound) ? lower_bound : upper_bound;
  }

  OcsvmModel model;
  model.kernel = options.kernel;
  model.nu = options.nu;
  model.n_train = n;
  model.rho = rho;
  for (std::size_t t = 0; t < n; ++t) {
    if (alpha[t] > options.sv_threshold) {
      model.support_vectors.push_back(samples[t]);
      model.alphas.push_back(alpha[t]);
    }
  }

  if (stats) {
    stats->iterations = iter;
    stats->final_violation = violation;
    stats->free_support_vectors = free_count;
    stats->bounded_support_vectors = bounded;
  }
  return model;
}

OcsvmModel train(std::span<const FeatureVector> samples, const TrainOptions& options, TrainStats* stats) {
  std::vector<FeatureValues> values;
  values.reserve(samples.size());
  for (const auto& v : samples) values.push_back(v.values());
  return train(values, options, stats);
}

double decide(const OcsvmModel& model, const FeatureValues& v) noexcept {
  double sum = 0.0;
  for (std::size_t s = 0; s < model.support_vectors.size(); ++s) {
    sum += model.alphas[s] * kernel_value(model.kernel, model.support_vectors[s], v);
  }
  return sum - model.rho;
}

double decide(const OcsvmModel& model, const FeatureVector& v) noexcept { return decide(model, v.values()); }

double decide(const OcsvmModel& model, std::span<const double> v) {
  if (v.size() != kFeatureCount) {
    throw DimensionMismatch("decide expects " + std::to_string(kFeatureCount) + " values, got " +
                            std::to_string(v.size()));
  }
  FeatureValues values{};
  std::copy(v.begin(), v.end(), values.begin());
  return decide(model, values);
}

double dual_objective(std::span<const FeatureValues> points, std::span<const double> alphas,
                      const RbfKernel& kernel) {
  if (points.size() != alphas.size()) throw DimensionMismatch("dual_objective: points and alphas differ in length");
  double sum = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j < points.size(); ++j) {
      sum += alphas[i] * alphas[j] * kernel_value(kernel, points[i], points[j]);
    }
  }
  return 0.5 * sum;
}

// ---------------------------------------------------------------------------
// persistence
// ---------------------------------------------------------------------------

namespace {

constexpr std::string_view kModelMagic = "itocsvm-model";
constexpr std::string_view kModelVersion = "1";

std::string scope_token(const std::optional<SourceId>& scope) {
  return scope ? scope->ip + "/" + scope->mac : std::string("global");
}

std::optional<SourceId> parse_scope(std::string_view token) {
  if (token == "global") return std::nullopt;
  const auto slash = token.find('/');
  if (slash == std::string_view::npos) throw ParseError("bad model scope '" + std::string(token) + "'");
  SourceId s{std::string(token.substr(0, slash)), std::string(token.substr(slash + 1))};
  if (!is_valid_ipv4(s.ip) || !is_valid_mac(s.mac)) throw ParseError("bad model scope '" + std::string(token) + "'");
  return s;
}

std::string_view header_field(const std::vector<std::string_view>& tokens, std::string_view key) {
  for (auto t : tokens) {
    if (t.size() > key.size() && t.substr(0, key.size()) == key && t[key.size()] == '=') {
      return t.substr(key.size() + 1);
    }
  }
  throw ParseError("model header lacks '" + std::string(key) + "'");
}

}  // namespace

void save_model(const OcsvmModel& model, const std::filesystem::path& path) {
  model.validate();
  std::string out;
  out += kModelMagic;
  out += ' ';
  out += kModelVersion;
  out += " nu=" + text::format_double(model.nu);
  out += " kernel=" + std::string(to_string(model.kernel.mode));
  out += " param=" + text::format_double(model.kernel.param);
  out += " dim=" + std::to_string(kFeatureCount);
  out += " n_train=" + std::to_string(model.n_train);
  out += " scope=" + scope_token(model.scope);
  out += " scaler=" + std::to_string(model.scaler_fingerprint);
  out += " n_sv=" + std::to_string(model.support_vectors.size());
  out += "\nrho " + text::format_double(model.rho) + "\n";
  for (std::size_t s = 0; s < model.support_vectors.size(); ++s) {
    out += text::format_double(model.alphas[s]);
    for (double x : model.support_vectors[s]) {
      out += ' ';
      out += text::format_double(x);
    }
    out += '\n';
  }
  text::write_file(path, out);
}

OcsvmModel load_model(const std::filesystem::path& path) {
  const auto content = text::read_file(path);
  auto lines = text::split(content, '\n');
  if (lines.empty()) throw VersionMismatch("empty model file " + path.string());
  const auto header = text::split_ws(lines[0]);
  if (header.size() < 2 || header[0] != kModelMagic || header[1] != kModelVersion) {
    throw VersionMismatch("unsupported model file " + path.string());
  }

  OcsvmModel m;
  std::uint64_t dim = 0;
  std::uint64_t n_sv = 0;
  std::uint64_t n_train = 0;
  auto mode = parse_kernel_mode(header_field(header, "kernel"));
  if (!mode || !text::parse_double(header_field(header, "nu"), m.nu) ||
      !text::parse_double(header_field(header, "param"), m.kernel.param) ||
      !text::parse_u64(header_field(header, "dim"), dim) ||
      !text::parse_u64(header_field(header, "n_train"), n_train) ||
      !text::parse_u64(header_field(header, "scaler"), m.scaler_fingerprint) ||
      !text::parse_u64(header_field(header, "n_sv"), n_sv)) {
    throw ParseError("bad model header in " + path.string());
  }
  if (dim != kFeatureCount) throw VersionMismatch("model dimension " + std::to_string(dim) + " unsupported");
  m.kernel.mode = *mode;
  m.n_train = n_train;
  m.scope = parse_scope(header_field(header, "scope"));

  if (lines.size() < 2 + n_sv) throw ParseError("truncated model file " + path.string());
  const auto rho_tokens = text::split_ws(lines[1]);
  if (rho_tokens.size() != 2 || rho_tokens[0] != "rho" || !text::parse_double(rho_tokens[1], m.rho)) {
    throw ParseError("bad rho line in " + path.string());
  }
  for (std::size_t s = 0; s < n_sv; ++s) {
    const auto tok = text::split_ws(lines[2 + s]);
    if (tok.size() != kFeatureCount + 1) {
      throw ParseError("support vector line " + std::to_string(s + 3) + " has " + std::to_string(tok.size()) +
                       " fields");
    }
    double alpha = 0.0;
    FeatureValues sv{};
    bool ok = text::parse_double(tok[0], alpha);
    for (std::size_t k = 0; k < kFeatureCount && ok; ++k) ok = text::parse_double(tok[k + 1], sv[k]);
    if (!ok) throw ParseError("bad number on support vector line " + std::to_string(s + 3));
    m.alphas.push_back(alpha);
    m.support_vectors.push_back(sv);
  }
  m.validate();
  return m;
}

}  // namespace itocsvm
