#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "itocsvm/ensemble.hpp"
#include "itocsvm/errors.hpp"
#include "itocsvm/ingest.hpp"
#include "itocsvm/ocsvm.hpp"

using namespace itocsvm;
using testing::pkt;

namespace {

const SourceId kQuiet{"10.0.0.21", "02:00:00:00:00:15"};
const SourceId kOther{"10.0.0.30", "02:00:00:00:00:1e"};

/// Quiet source: ~4 UDP packets/s with jitter; other source: steady TCP.
std::vector<PacketRecord> quiet_traffic(double duration, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> gap(4.0);
  std::vector<PacketRecord> out;
  for (double t = gap(rng); t < duration; t += gap(rng)) {
    out.push_back(pkt(t, kQuiet.ip, kQuiet.mac, Protocol::MODBUS, {}, 66));
  }
  for (double t = 0.05; t < duration; t += 0.5) out.push_back(pkt(t, kOther.ip, kOther.mac, Protocol::TCP, {}, 120));
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.timestamp < b.timestamp; });
  return out;
}

struct Fixture {
  ScalingParams scaler;
  ModelSet models;
  ScaledFeatures train_features;
  double nu = 0.1;

  Fixture() {
    const auto raw = extract_features(quiet_traffic(600.0, 1), 2.0, FeatureScope::PerSource);
    scaler = fit_scaling(raw);
    train_features = scale_features(raw, scaler);
    TrainOptions opt;
    opt.nu = nu;
    opt.kernel = RbfKernel{KernelMode::Gamma, 5.0};
    std::vector<FeatureValues> all;
    std::vector<FeatureValues> own;
    for (const auto& v : train_features.vectors) {
      all.push_back(v.values());
      if (*v.source() == kQuiet) own.push_back(v.values());
    }
    models.central = train(all, opt);
    models.central.scaler_fingerprint = scaler.fingerprint();
    auto split = train(own, opt);
    split.scope = kQuiet;
    split.scaler_fingerprint = scaler.fingerprint();
    models.splits.emplace(kQuiet, std::move(split));
    models.scaler_fingerprint = scaler.fingerprint();
  }
};

}  // namespace

TEST_SUITE("ensemble") {
  TEST_CASE("ensemble_score examples") {
    const EnsembleWeights equal{0.5, 0.5};
    CHECK(ensemble_score(-0.2, std::nullopt, equal) == -0.2);
    CHECK(ensemble_score(-0.2, std::nullopt, EnsembleWeights{3.0, 0.0}) == -0.2);
    CHECK(ensemble_score(-0.2, 0.2, equal) == doctest::Approx(0.0));
    for (auto w : {EnsembleWeights{1.0, 0.0}, EnsembleWeights{0.2, 0.7}, EnsembleWeights{5.0, 5.0}}) {
      CHECK(ensemble_score(0.37, 0.37, w) == doctest::Approx(0.37));
    }
    CHECK_THROWS_AS(ensemble_score(0.1, 0.2, EnsembleWeights{-1.0, 1.0}), DomainError);
    CHECK_THROWS_AS(ensemble_score(0.1, 0.2, EnsembleWeights{0.0, 0.0}), DomainError);
    // Without a split decision the central value stands whatever the weights.
    CHECK(ensemble_score(0.1, std::nullopt, EnsembleWeights{0.0, 1.0}) == 0.1);
  }

  TEST_CASE("ensemble_score properties") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    std::uniform_real_distribution<double> w(0.01, 3.0);
    for (int i = 0; i < 500; ++i) {
      const double a = d(rng);
      const double b = d(rng);
      const double wa = w(rng);
      const double wb = w(rng);
      // classifier order does not matter
      CHECK(ensemble_score(a, b, {wa, wb}) == doctest::Approx(ensemble_score(b, a, {wb, wa})));
      // equal weights give the mean
      CHECK(ensemble_score(a, b, {wa, wa}) == doctest::Approx(0.5 * (a + b)));
      // uniform positive scaling keeps the sign
      const double s = w(rng);
      const double q = ensemble_score(a, b, {wa, wb});
      const double qs = ensemble_score(a, b, {s * wa, s * wb});
      if (std::abs(q) > 1e-12) CHECK((q < 0.0) == (qs < 0.0));
    }
  }

  TEST_CASE("training data mostly scores non-negative") {
    const Fixture f;
    const auto scores = score_dataset(f.models, f.train_features, EnsembleWeights{});
    REQUIRE(scores.size() == f.train_features.vectors.size());
    std::size_t neg = 0;
    for (const auto& s : scores) neg += s.ensemble < 0.0 ? 1 : 0;
    const double n = static_cast<double>(scores.size());
    CHECK(static_cast<double>(neg) / n <= 2.0 * f.nu + 2.0 / std::sqrt(n));
  }

  TEST_CASE("a hundredfold burst on a split source scores negative") {
    const Fixture f;
    auto test = quiet_traffic(20.0, 9);
    for (int i = 0; i < 800; ++i) test.push_back(pkt(10.0 + 0.0025 * i, kQuiet.ip, kQuiet.mac, Protocol::MODBUS, {}, 66));
    std::sort(test.begin(), test.end(), [](const auto& a, const auto& b) { return a.timestamp < b.timestamp; });
    const auto feats = scale_features(extract_features(test, 2.0, FeatureScope::PerSource), f.scaler);
    bool seen = false;
    for (const auto& s : score_dataset(f.models, feats, EnsembleWeights{})) {
      if (s.source == kQuiet && s.window_start == 10.0) {
        seen = true;
        REQUIRE(s.split.has_value());
        CHECK(s.ensemble < 0.0);
      }
      if (s.source == kOther) CHECK_FALSE(s.split.has_value());
    }
    CHECK(seen);
  }

  TEST_CASE("scores combine the central and split decisions") {
    const Fixture f;
    const auto scores = score_dataset(f.models, f.train_features, EnsembleWeights{0.3, 0.7}, Execution::Serial);
    const auto central = score_central(f.models.central, f.train_features, Execution::Serial);
    REQUIRE(central.size() == scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) {
      CHECK(scores[i].central == central[i].central);
      CHECK(scores[i].ensemble == doctest::Approx(ensemble_score(scores[i].central, scores[i].split, {0.3, 0.7})));
    }
    const auto parallel = score_dataset(f.models, f.train_features, EnsembleWeights{0.3, 0.7}, Execution::Parallel);
    REQUIRE(parallel.size() == scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) CHECK(parallel[i].ensemble == scores[i].ensemble);
  }

  TEST_CASE("empty input and scaler mismatch") {
    const Fixture f;
    ScaledFeatures empty;
    empty.scaler_fingerprint = f.scaler.fingerprint();
    CHECK(score_dataset(f.models, empty, EnsembleWeights{}).empty());

    auto other = f.scaler;
    other.max[0] += 1.0;
    const auto wrong = scale_features(std::vector<FeatureVector>{}, other);
    CHECK_THROWS_AS(score_dataset(f.models, wrong, EnsembleWeights{}), ScalerMismatch);
    auto bad_models = f.models;
    bad_models.splits.begin()->second.scaler_fingerprint ^= 1;
    CHECK_THROWS_AS(score_dataset(bad_models, f.train_features, EnsembleWeights{}), ScalerMismatch);
  }
}
