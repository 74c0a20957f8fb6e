#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "helpers.hpp"
#include "itocsvm/errors.hpp"
#include "itocsvm/ingest.hpp"

using namespace itocsvm;
using testing::pkt;

namespace {

FeatureVector vec(double first, double rest = 0.0) {
  FeatureValues v;
  v.fill(rest);
  v[0] = first;
  return FeatureVector(0.0, std::nullopt, v);
}

std::vector<PacketRecord> random_traffic(std::uint64_t seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> t(0.0, 60.0);
  std::vector<PacketRecord> out;
  for (std::size_t i = 0; i < n; ++i) {
    const auto host = std::to_string(1 + rng() % 5);
    const auto p = kAllProtocols[rng() % kProtocolCount];
    TcpFlags flags;
    if (p == Protocol::TCP && rng() % 3 == 0) flags.set(TcpFlag::SYN);
    out.push_back(pkt(t(rng), "10.0.0." + host, "02:00:00:00:00:0" + host, p, flags,
                      static_cast<std::uint32_t>(60 + rng() % 500), "10.0.1." + std::to_string(rng() % 7)));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.timestamp < b.timestamp; });
  return out;
}

}  // namespace

TEST_SUITE("ingest") {
  TEST_CASE("ten SYN packets in one window") {
    std::vector<PacketRecord> r;
    for (int i = 0; i < 10; ++i) r.push_back(pkt(0.1 * i, "10.0.0.9", "02:00:00:00:00:09", Protocol::TCP, {TcpFlag::SYN}));
    const auto f = extract_features(r, 2.0, FeatureScope::Global);
    REQUIRE(f.size() == 1);
    CHECK(f[0][kPktRate] == 5.0);
    CHECK(f[0][kTcpSynCount] == 10.0);
    CHECK(f[0][kArpCount] == 0.0);
    CHECK(f[0][kProtocolEntropy] == 0.0);
  }

  TEST_CASE("entropy of an even two-protocol window is one bit") {
    std::vector<PacketRecord> r;
    for (int i = 0; i < 4; ++i) r.push_back(pkt(0.1 * i, "10.0.0.9", "02:00:00:00:00:09", Protocol::TCP));
    for (int i = 0; i < 4; ++i) r.push_back(pkt(0.5 + 0.1 * i, "10.0.0.9", "02:00:00:00:00:09", Protocol::ARP));
    const auto f = extract_features(r, 2.0, FeatureScope::Global);
    // -Σ p·log2 p with p = 1/2, 1/2
    CHECK(f[0][kProtocolEntropy] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(f[0][kArpCount] == 4.0);
  }

  TEST_CASE("empty windows produce no vector and windows are tumbling") {
    std::vector<PacketRecord> r = {pkt(0.5, "10.0.0.1", "02:00:00:00:00:01", Protocol::UDP),
                                   pkt(1.999, "10.0.0.1", "02:00:00:00:00:01", Protocol::UDP),
                                   pkt(2.0, "10.0.0.1", "02:00:00:00:00:01", Protocol::UDP),
                                   pkt(9.0, "10.0.0.2", "02:00:00:00:00:02", Protocol::UDP)};
    const auto f = extract_features(r, 2.0, FeatureScope::Global);
    REQUIRE(f.size() == 3);
    CHECK(f[0].window_start() == 0.0);
    CHECK(f[0][kPktRate] == 1.0);
    CHECK(f[1].window_start() == 2.0);
    CHECK(f[2].window_start() == 8.0);
    CHECK(f[0][kUdpFraction] == 1.0);
  }

  TEST_CASE("per-source vectors are ordered by window then source") {
    const auto r = random_traffic(3, 400);
    const auto f = extract_features(r, 2.0, FeatureScope::PerSource);
    for (std::size_t i = 1; i < f.size(); ++i) {
      const bool ordered = f[i - 1].window_start() < f[i].window_start() ||
                           (f[i - 1].window_start() == f[i].window_start() && *f[i - 1].source() < *f[i].source());
      CHECK(ordered);
    }
  }

  TEST_CASE("per-source packet counts sum to the global count") {
    const auto r = random_traffic(5, 2000);
    const double w = 2.0;
    const auto global = extract_features(r, w, FeatureScope::Global);
    const auto per = extract_features(r, w, FeatureScope::PerSource);
    std::map<double, double> sums;
    for (const auto& v : per) sums[v.window_start()] += v[kPktRate] * w;
    REQUIRE(sums.size() == global.size());
    for (const auto& g : global) CHECK(sums[g.window_start()] == doctest::Approx(g[kPktRate] * w));
  }

  TEST_CASE("entropy stays within [0, log2 6]") {
    const auto r = random_traffic(7, 3000);
    for (const auto& v : extract_features(r, 1.0, FeatureScope::PerSource)) {
      CHECK(v[kProtocolEntropy] >= 0.0);
      CHECK(v[kProtocolEntropy] <= std::log2(6.0) + 1e-12);
    }
  }

  TEST_CASE("unsorted input and bad windows are rejected") {
    std::vector<PacketRecord> r = {pkt(2.0, "10.0.0.1", "02:00:00:00:00:01", Protocol::UDP),
                                   pkt(1.0, "10.0.0.1", "02:00:00:00:00:01", Protocol::UDP)};
    CHECK_THROWS_AS(extract_features(r, 2.0, FeatureScope::Global), DomainError);
    CHECK_THROWS_AS(extract_features(r, 0.0, FeatureScope::Global), DomainError);
    CHECK_THROWS_AS(extract_features({}, 2.0, FeatureScope::Global), EmptyDataset);
  }

  TEST_CASE("fit_scaling: single vector is degenerate") {
    const std::vector<FeatureVector> one = {vec(3.0, 1.0)};
    const auto p = fit_scaling(one);
    CHECK(p.min == p.max);
    for (double x : apply_scaling(one[0], p).values()) CHECK(x == 0.0);
  }

  TEST_CASE("fit_scaling: min and max per feature") {
    const std::vector<FeatureVector> two = {vec(0.0, 4.0), vec(10.0, 4.0)};
    const auto p = fit_scaling(two);
    CHECK(p.min[0] == 0.0);
    CHECK(p.max[0] == 10.0);
    CHECK(p.min[1] == 4.0);
    CHECK(p.max[1] == 4.0);
    CHECK(apply_scaling(vec(7.0, 4.0), p)[1] == 0.0);
    CHECK_THROWS_AS(fit_scaling(std::vector<FeatureVector>{}), EmptyInput);
  }

  TEST_CASE("apply_scaling: endpoints, linearity and clamping") {
    const std::vector<FeatureVector> two = {vec(2.0), vec(6.0)};
    const auto p = fit_scaling(two);
    CHECK(apply_scaling(vec(2.0), p)[0] == 0.0);
    CHECK(apply_scaling(vec(6.0), p)[0] == 1.0);
    CHECK(apply_scaling(vec(2.0 + 0.25 * 4.0), p)[0] == doctest::Approx(0.25));
    CHECK(apply_scaling(vec(100.0), p)[0] == 1.0);
    CHECK(apply_scaling(vec(-100.0), p)[0] == 0.0);
  }

  TEST_CASE("identity scaling is idempotent on scaled data") {
    ScalingParams id;
    id.min.fill(0.0);
    id.max.fill(1.0);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
      FeatureValues v;
      for (auto& x : v) x = u(rng);
      const FeatureVector fv(0.0, std::nullopt, v);
      CHECK(apply_scaling(fv, id) == fv);
      CHECK(apply_scaling(apply_scaling(fv, id), id) == fv);
    }
  }

  TEST_CASE("scaler file round trip and fingerprint") {
    const auto raw = extract_features(random_traffic(9, 800), 2.0, FeatureScope::PerSource);
    const auto p = fit_scaling(raw);
    testing::TempDir dir("scaler");
    save_scaling(p, dir / "scaler.txt");
    const auto back = load_scaling(dir / "scaler.txt");
    CHECK(back == p);
    CHECK(back.fingerprint() == p.fingerprint());
    auto other = p;
    other.max[2] += 1.0;
    CHECK(other.fingerprint() != p.fingerprint());
  }
}
