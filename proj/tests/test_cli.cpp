#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>

#include "helpers.hpp"
#include "itocsvm/fusion.hpp"
#include "itocsvm/packet_log.hpp"
#include "itocsvm/pipeline.hpp"
#include "itocsvm/text.hpp"

using namespace itocsvm;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run cli(const std::string& args, const fs::path& scratch) {
  const auto log = scratch / "stdout.txt";
  const std::string cmd = std::string(ITOCSVM_CLI) + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::error_code ec;
  if (fs::exists(log, ec)) r.out = text::read_file(log);
  return r;
}

/// One seed-42 suite and model directory shared by the tests below.
struct Workspace {
  testing::TempDir dir{"cli"};
  fs::path data = dir / "data";
  fs::path models = dir / "models";
  Run simulate;
  Run train;

  Workspace() {
    simulate = cli("simulate --standard-suite --seed 42 --out " + data.string(), dir.path());
    train = cli("train --train " + (data / "train.csv").string() + " --model-dir " + models.string(), dir.path());
  }
};

Workspace& workspace() {
  static Workspace w;
  return w;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("usage errors exit 1") {
    testing::TempDir dir("cli_usage");
    CHECK(cli("", dir.path()).code == 1);
    CHECK(cli("simulate --standard-suite", dir.path()).code == 1);
    CHECK(cli("train --bogus-flag 3", dir.path()).code == 1);
    CHECK(cli("frobnicate", dir.path()).code == 1);
    CHECK(cli("--help", dir.path()).code == 0);
  }

  TEST_CASE("simulate writes the suite deterministically") {
    auto& w = workspace();
    REQUIRE(w.simulate.code == 0);
    for (const auto* f : {"train.csv", "testA.csv", "testB.csv", "testC.csv", "testD.csv", "testA.labels.csv",
                          "testB.labels.csv", "testC.labels.csv", "testD.labels.csv"}) {
      CHECK(fs::exists(w.data / f));
    }
    const auto again = w.dir / "again";
    REQUIRE(cli("simulate --standard-suite --seed 42 --out " + again.string(), w.dir.path()).code == 0);
    for (const auto* f : {"train.csv", "testC.csv", "testB.labels.csv"}) {
      CHECK(text::read_file(w.data / f) == text::read_file(again / f));
    }
  }

  TEST_CASE("simulate from a scenario file") {
    testing::TempDir dir("cli_spec");
    const fs::path spec = fs::path(ITOCSVM_SOURCE_DIR) / "scenarios/example.scn";
    CHECK(cli("simulate --spec " + spec.string() + " --out " + (dir / "o").string(), dir.path()).code == 0);
    CHECK(fs::exists(dir / "o" / "example.csv"));
    CHECK(fs::exists(dir / "o" / "example.labels.csv"));
    text::write_file(dir / "bad.scn", "seed = 1\nnonsense = 2\n");
    CHECK(cli("simulate --spec " + (dir / "bad.scn").string() + " --out " + (dir / "o").string(), dir.path()).code == 2);
    CHECK(cli("simulate --spec " + (dir / "none.scn").string() + " --out " + (dir / "o").string(), dir.path()).code == 3);
  }

  TEST_CASE("train reports split models and writes the model directory") {
    auto& w = workspace();
    REQUIRE(w.train.code == 0);
    CHECK(w.train.out.find("split models: ") != std::string::npos);
    const auto d = load_detector(w.models);
    CHECK(d.models.splits.size() >= 2);
    for (const auto* f : {"detector.cfg", "scaler.txt", "sources.txt", "central.model", "split_1.model"}) {
      CHECK(fs::exists(w.models / f));
    }

    const auto one = w.dir / "one";
    const auto r = cli("train --train " + (w.data / "testA.csv").string() + " --p-packets 1.0 --model-dir " + one.string(),
                       w.dir.path());
    REQUIRE(r.code == 0);
    CHECK(load_detector(one).models.splits.size() <= 1);
    CHECK(cli("train --train " + (w.dir / "missing.csv").string() + " --model-dir " + one.string(), w.dir.path()).code == 3);
    CHECK(cli("train --train " + (w.data / "testA.csv").string() + " --nu 7 --model-dir " + one.string(), w.dir.path())
              .code == 2);
  }

  TEST_CASE("config file sits between flags and defaults") {
    auto& w = workspace();
    text::write_file(w.dir / "c.cfg", "nu = 0.05\np_packets = 0.2\n");
    const auto m = w.dir / "cfgmodels";
    const auto args = "--config " + (w.dir / "c.cfg").string() + " train --train " + (w.data / "testA.csv").string() +
                      " --p-packets 0.1 --model-dir " + m.string();
    REQUIRE(cli(args, w.dir.path()).code == 0);
    const auto c = load_detector(m).config;
    CHECK(c.nu == 0.05);
    CHECK(c.p_packets == 0.1);
    CHECK(c.window_s == 2.0);
  }

  TEST_CASE("detect runs the pipeline end to end") {
    auto& w = workspace();
    REQUIRE(w.train.code == 0);
    const auto alerts = w.dir / "alerts";
    fs::create_directories(alerts);
    const auto report = w.dir / "alarms.csv";
    const auto r = cli("detect --test " + (w.data / "testC.csv").string() + " --model-dir " + w.models.string() +
                           " --idmef-out " + alerts.string() + " --report " + report.string(),
                       w.dir.path());
    REQUIRE(r.code == 0);
    CHECK(r.out.find("raw alerts: ") != std::string::npos);
    const auto alarms = read_alarm_report(report);
    bool attacker_severe = false;
    for (const auto& a : alarms) attacker_severe |= a.source.ip == "10.0.0.66" && a.severity == Severity::SEVERE;
    CHECK(attacker_severe);
    std::size_t files = 0;
    for (const auto& e : fs::directory_iterator(alerts)) files += e.path().extension() == ".xml" ? 1 : 0;
    CHECK(files == alarms.size());

    const auto train_report = w.dir / "train_alarms.csv";
    REQUIRE(cli("detect --test " + (w.data / "train.csv").string() + " --model-dir " + w.models.string() + " --report " +
                    train_report.string(),
                w.dir.path())
                .code == 0);
    std::size_t severe = 0;
    for (const auto& a : read_alarm_report(train_report)) severe += a.severity == Severity::SEVERE ? 1 : 0;
    CHECK(severe <= 1);
  }

  TEST_CASE("detect error codes") {
    auto& w = workspace();
    text::write_file(w.dir / "empty.csv", std::string(kPacketLogHeader) + "\n");
    CHECK(cli("detect --test " + (w.dir / "empty.csv").string() + " --model-dir " + w.models.string(), w.dir.path()).code ==
          2);
    CHECK(cli("detect --test " + (w.data / "testA.csv").string() + " --model-dir " + (w.dir / "nomodels").string(),
              w.dir.path())
              .code == 2);
    CHECK(cli("detect --test " + (w.dir / "absent.csv").string() + " --model-dir " + w.models.string(), w.dir.path()).code ==
          3);
  }

  TEST_CASE("eval and sweep write their reports") {
    auto& w = workspace();
    const auto out = w.dir / "eval";
    fs::create_directories(out);
    REQUIRE(cli("eval --suite " + w.data.string() + " --model-dir " + w.models.string() + " --out " + out.string(),
                w.dir.path())
                .code == 0);
    CHECK(fs::exists(out / "report.md"));
    CHECK(fs::exists(out / "report.csv"));
    const auto first = text::read_file(out / "report.csv");
    REQUIRE(cli("eval --suite " + w.data.string() + " --model-dir " + w.models.string() + " --out " + out.string(),
                w.dir.path())
                .code == 0);
    CHECK(text::read_file(out / "report.csv") == first);

    const auto curve = w.dir / "sweep.csv";
    REQUIRE(cli("sweep --suite " + w.data.string() + " --values 0.1,0.025,0.01,0.005 --out " + curve.string(),
                w.dir.path())
                .code == 0);
    const auto content = text::read_file(curve);
    std::size_t rows = 0;
    for (const auto& l : text::split(content, '\n')) rows += l.empty() ? 0 : 1;
    CHECK(rows == 5);  // header plus four thresholds
  }
}
