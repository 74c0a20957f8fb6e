// itocsvm: simulate, train, detect, eval and sweep from the command line.
//
// Exit codes: 0 success, 1 usage, 2 domain error, 3 I/O error.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "itocsvm/errors.hpp"
#include "itocsvm/evalharness.hpp"
#include "itocsvm/fusion.hpp"
#include "itocsvm/idmef.hpp"
#include "itocsvm/packet_log.hpp"
#include "itocsvm/pipeline.hpp"
#include "itocsvm/simgen.hpp"
#include "itocsvm/text.hpp"

namespace fs = std::filesystem;
using namespace itocsvm;

namespace {

struct ModelFlags {
  double nu = 0.0;
  double kernel = 0.0;
  std::string kernel_param;
  double p_packets = 0.0;
  double window = 0.0;
  CLI::Option* nu_opt = nullptr;
  CLI::Option* kernel_opt = nullptr;
  CLI::Option* kernel_param_opt = nullptr;
  CLI::Option* p_packets_opt = nullptr;
  CLI::Option* window_opt = nullptr;

  void add(CLI::App* cmd) {
    nu_opt = cmd->add_option("--nu", nu, "OCSVM nu in (0, 1] (default 0.001)");
    kernel_opt = cmd->add_option("--kernel", kernel, "RBF kernel value (default 0.01)");
    kernel_param_opt = cmd->add_option("--kernel-param", kernel_param, "Meaning of --kernel: gamma or sigma")
                           ->check(CLI::IsMember({"gamma", "sigma"}));
    p_packets_opt = cmd->add_option("--p-packets", p_packets, "Significant-source threshold fraction (default 0.01)");
    window_opt = cmd->add_option("--window", window, "Window length in seconds (default 2.0)");
  }

  /// Defaults, then the config file, then explicit flags.
  DetectorConfig resolve(const std::string& config_path) const {
    DetectorConfig c;
    if (!config_path.empty()) {
      c = apply_config(c, text::parse_key_values(text::read_file(config_path), config_path), config_path);
    }
    if (*nu_opt) c.nu = nu;
    if (*kernel_opt) c.kernel.param = kernel;
    if (*kernel_param_opt) c.kernel.mode = *parse_kernel_mode(kernel_param);
    if (*p_packets_opt) c.p_packets = p_packets;
    if (*window_opt) c.window_s = window;
    c.validate();
    return c;
  }
};

/// Keys of a config file that may change at detection time.
DetectorConfig overlay_runtime(DetectorConfig c, const std::string& config_path) {
  if (config_path.empty()) return c;
  auto kv = text::parse_key_values(text::read_file(config_path), config_path);
  std::map<std::string, std::string> runtime;
  for (const char* key :
       {"weight_central", "weight_split", "coefficient_floor", "kmeans_max_iter", "analyzer_id", "capture_epoch"}) {
    if (auto it = kv.find(key); it != kv.end()) runtime.insert(*it);
  }
  return apply_config(c, runtime, config_path);
}

TrainedDetector load_models(const fs::path& dir) {
  try {
    return load_detector(dir);
  } catch (const IoError& e) {
    // A model directory that cannot be read is a model-load failure.
    throw DomainError(std::string("cannot load models: ") + e.what());
  }
}

std::vector<double> parse_values(const std::string& list) {
  std::vector<double> out;
  for (auto tok : text::split(list, ',')) {
    double v = 0.0;
    if (!text::parse_double(text::trim(tok), v)) throw DomainError("bad threshold '" + std::string(tok) + "'");
    out.push_back(v);
  }
  if (out.empty()) throw DomainError("no thresholds given");
  return out;
}

std::string severity_summary(std::span<const AggregatedAlarm> alarms) {
  std::array<std::size_t, 3> n{};
  for (const auto& a : alarms) ++n[static_cast<std::size_t>(*a.severity)];
  return "alarms: " + std::to_string(alarms.size()) + " (POSSIBLE " + std::to_string(n[0]) + ", MEDIUM " +
         std::to_string(n[1]) + ", SEVERE " + std::to_string(n[2]) + ")";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"IT-OCSVM intrusion detection for SCADA packet logs"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "Flat key = value config file")->check(CLI::ExistingFile);

  // simulate
  auto* sim = app.add_subcommand("simulate", "Generate synthetic packet logs and label sidecars");
  std::string spec_path;
  bool standard = false;
  std::uint64_t seed = 42;
  std::string sim_out;
  double sim_window = 2.0;
  auto* spec_opt = sim->add_option("--spec", spec_path, "Scenario file");
  auto* std_opt = sim->add_flag("--standard-suite", standard, "Write train.csv and test sets A-D");
  sim->add_option("--seed", seed, "Seed for the standard suite");
  sim->add_option("--out", sim_out, "Output directory")->required();
  sim->add_option("--window", sim_window, "Window length for the label sidecars");
  spec_opt->excludes(std_opt);

  // train
  auto* tr = app.add_subcommand("train", "Train the central and split OCSVMs");
  std::string train_path;
  std::string model_dir;
  std::size_t force_splits = 0;
  ModelFlags train_flags;
  tr->add_option("--train", train_path, "Attack-free training packet log")->required();
  tr->add_option("--model-dir", model_dir, "Directory for the trained models")->required();
  auto* force_opt = tr->add_option("--force-splits", force_splits, "Train split models for the N busiest sources");
  train_flags.add(tr);

  // detect
  auto* det = app.add_subcommand("detect", "Run the detection pipeline on a packet log");
  std::string test_path;
  std::string det_model_dir;
  std::string idmef_out;
  std::string report_path;
  std::string scores_path;
  tr->fallthrough(false);
  det->add_option("--test", test_path, "Packet log to inspect")->required();
  det->add_option("--model-dir", det_model_dir, "Directory written by train")->required();
  det->add_option("--idmef-out", idmef_out, "Directory for IDMEF alert files");
  det->add_option("--report", report_path, "Alarm report CSV");
  det->add_option("--scores", scores_path, "Per-window score dump CSV");

  // eval
  auto* ev = app.add_subcommand("eval", "Baseline vs IT-OCSVM comparison on a suite");
  std::string suite_dir;
  std::string eval_model_dir;
  std::string eval_out = ".";
  bool timing = false;
  int repetitions = 5;
  std::size_t forced = 15;
  ev->add_option("--suite", suite_dir, "Suite directory written by simulate --standard-suite")->required();
  ev->add_option("--model-dir", eval_model_dir, "Directory written by train")->required();
  ev->add_option("--out", eval_out, "Directory for report.md / report.csv");
  ev->add_flag("--timing", timing, "Also time detection (timing.md / timing.csv)");
  ev->add_option("--repetitions", repetitions, "Timing repetitions (median reported)")->check(CLI::PositiveNumber);
  ev->add_option("--forced-splits", forced, "Split-model count of the forced timing configuration");

  // sweep
  auto* sw = app.add_subcommand("sweep", "Accuracy as a function of the P_packets threshold");
  std::string sweep_suite;
  std::string values = "0.1,0.05,0.025,0.01,0.005";
  std::string sweep_out = "sweep.csv";
  ModelFlags sweep_flags;
  sw->add_option("--suite", sweep_suite, "Suite directory")->required();
  sw->add_option("--values", values, "Comma-separated thresholds");
  sw->add_option("--out", sweep_out, "Curve CSV");
  sweep_flags.add(sw);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*sim) {
      if (standard) {
        const auto files = standard_suite(seed, sim_out, sim_window);
        std::cout << "wrote " << files.train.string() << " and " << files.tests.size() << " test sets to " << sim_out
                  << "\n";
      } else if (!spec_path.empty()) {
        const auto spec = load_scenario(spec_path);
        const auto traffic = generate(spec);
        fs::create_directories(sim_out);
        const auto stem = fs::path(spec_path).stem().string();
        write_packet_log(fs::path(sim_out) / (stem + ".csv"), traffic.records);
        write_labels(fs::path(sim_out) / (stem + ".labels.csv"), window_labels(traffic, spec.window_s));
        std::cout << "wrote " << traffic.records.size() << " packets to " << (fs::path(sim_out) / (stem + ".csv")).string()
                  << "\n";
      } else {
        std::cerr << "simulate needs --spec or --standard-suite\n";
        return 1;
      }
    } else if (*tr) {
      const auto config = train_flags.resolve(config_path);
      const auto records = parse_packet_log(train_path);
      TrainedDetector d;
      if (*force_opt) {
        const auto set = prepare_training(records, config.window_s);
        d = train_detector(set, top_sources_plan(records, force_splits), config);
      } else {
        d = train_detector(records, config);
      }
      save_detector(d, model_dir);
      std::cout << "split models: " << d.models.splits.size() << "\n";
      for (const auto& p : d.plan.significant) {
        std::cout << "  " << p.source.to_string() << " packets=" << p.packet_count << "\n";
      }
    } else if (*det) {
      auto d = load_models(det_model_dir);
      d.config = overlay_runtime(d.config, config_path);
      d.config.validate();
      const auto records = parse_packet_log(test_path);
      const auto r = detect(d, records);
      if (!scores_path.empty()) write_score_dump(scores_path, r.scores);
      if (!report_path.empty()) write_alarm_report(report_path, r.alarms);
      if (!idmef_out.empty()) {
        fs::create_directories(idmef_out);
        IdmefWriter writer(d.config.analyzer_id, idmef_out, d.config.capture_epoch_s);
        for (const auto& a : r.alarms) writer.emit(a);
      }
      std::cout << "raw alerts: " << r.alerts.size() << "\n" << severity_summary(r.alarms) << "\n";
      for (const auto& a : r.alarms) {
        std::cout << "  " << to_string(*a.severity) << " " << a.source.to_string() << " qa=" << text::format_double(a.qa)
                  << " qb=" << a.qb << " origin=" << to_string(a.origin) << "\n";
      }
    } else if (*ev) {
      const auto d = load_models(eval_model_dir);
      const auto suite = load_suite(suite_dir);
      const auto report = compare_baseline(d, suite);
      fs::create_directories(eval_out);
      write_comparison_markdown(fs::path(eval_out) / "report.md", report);
      write_comparison_csv(fs::path(eval_out) / "report.csv", report);
      std::printf("baseline DA %.2f FAR %.2f | IT-OCSVM DA %.2f FAR %.2f | split models %zu\n",
                  report.baseline_total.da, report.baseline_total.far, report.itocsvm_total.da,
                  report.itocsvm_total.far, report.split_models);
      if (timing) {
        const auto set = prepare_training(suite.train, d.config.window_s);
        const auto forced_d = with_plan(set, d.models.central, top_sources_plan(suite.train, forced), d.config);
        const auto zero_d = with_plan(set, d.models.central, SplitPlan{}, d.config);
        const std::vector<std::pair<std::string, const TrainedDetector*>> configs = {
            {"zero", &zero_d}, {"default", &d}, {"forced", &forced_d}};
        const auto t = timing_report(suite, configs, repetitions);
        write_timing_markdown(fs::path(eval_out) / "timing.md", t);
        write_timing_csv(fs::path(eval_out) / "timing.csv", t);
        for (const auto& s : t.summaries) {
          std::printf("timing %-8s splits %2zu ratio %.3f\n", s.configuration.c_str(), s.split_models, s.ratio);
        }
      }
    } else if (*sw) {
      const auto config = sweep_flags.resolve(config_path);
      const auto suite = load_suite(sweep_suite);
      const auto thresholds = parse_values(values);
      const auto points = sweep_p_packets(thresholds, suite, config);
      write_sweep_csv(sweep_out, points);
      for (const auto& p : points) {
        std::printf("threshold %-8g splits %2zu DA %.2f (baseline %.2f)\n", p.threshold, p.split_models, p.da,
                    p.baseline_da);
      }
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
