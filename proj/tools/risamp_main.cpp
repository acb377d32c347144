// Command-line front end: single experiments and axis sweeps over the
// simulator, with CSV/JSON export.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "risamp/config_io.hpp"
#include "risamp/harness.hpp"
#include "risamp/training.hpp"

namespace fs = std::filesystem;
using namespace risamp;

namespace {

struct CommonArgs {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<double> snr_db;
  std::optional<std::string> bits;
  std::optional<int> tau;
  std::optional<std::string> estimators;
  std::string out_dir;
  bool trace = false;
  std::string format = "csv";
  std::optional<int> workers;
  std::string dump_training_path;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "Config file (flat key = value document)");
  cmd->add_option("--seed", args.seed, "Master seed");
  cmd->add_option("--trials", args.trials, "Monte-Carlo trials");
  cmd->add_option("--snr-db", args.snr_db, "SNR in dB");
  cmd->add_option("--bits", args.bits, "ADC resolution (1..8 or 'inf')");
  cmd->add_option("--tau", args.tau, "Training length");
  cmd->add_option("--estimators", args.estimators,
                  "Comma-separated subset of bigamp,ls,almmse");
  cmd->add_option("--out", args.out_dir, "Output directory");
  cmd->add_flag("--trace", args.trace, "Dump per-iteration traces (bigamp)");
  cmd->add_option("--format", args.format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--workers", args.workers, "Worker threads (0 = hardware)");
  cmd->add_option("--dump-training", args.dump_training_path,
                  "Write the training matrix to this CSV file and continue");
}

SystemConfig resolve_config(const CommonArgs& args) {
  SystemConfig cfg;
  if (!args.config_path.empty()) cfg = load_config(args.config_path);
  if (args.seed) cfg.seed = *args.seed;
  if (args.trials) cfg.trials = *args.trials;
  if (args.snr_db) cfg.snr_db = *args.snr_db;
  if (args.bits) cfg.bits = (*args.bits == "inf") ? 0 : std::stoi(*args.bits);
  if (args.tau) cfg.train_len = *args.tau;
  if (args.estimators) {
    cfg.estimators.clear();
    std::stringstream ss(*args.estimators);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) cfg.estimators.push_back(estimator_from_name(item));
  }
  if (args.workers) cfg.workers = *args.workers;
  if (args.trace) {
    const fs::path base = args.out_dir.empty() ? fs::path(".") : fs::path(args.out_dir);
    cfg.trace_dir = (base / "trace").string();
  }
  return cfg;
}

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

void dump_training_csv(const SystemConfig& cfg, const std::string& path) {
  const TrainingMatrix tr = build_training(cfg.num_ris, cfg.train_len, cfg.zc_root);
  std::ostringstream out;
  out << "m,t,re,im\n";
  out.precision(17);
  for (Eigen::Index m = 0; m < tr.E.rows(); ++m)
    for (Eigen::Index t = 0; t < tr.E.cols(); ++t)
      out << m << ',' << t << ',' << tr.E(m, t).real() << ',' << tr.E(m, t).imag() << '\n';
  write_file(path, out.str());
}

void print_summary(const std::vector<SweepRow>& rows) {
  std::printf("%-12s %-8s %12s %12s %12s %6s %6s\n", "axis", "est", "mean", "median", "stderr",
              "ok", "div");
  for (const SweepRow& r : rows) {
    std::printf("%-12s %-8s %12.5g %12.5g %12.5g %6d %6d\n", r.axis_value.c_str(),
                estimator_name(r.summary.estimator).c_str(), r.summary.mean_nmse,
                r.summary.median_nmse, r.summary.stderr_nmse, r.summary.trials_ok,
                r.summary.trials_diverged);
  }
}

int run_single(const CommonArgs& args) {
  const SystemConfig cfg = resolve_config(args);
  cfg.validate();
  if (!args.dump_training_path.empty()) dump_training_csv(cfg, args.dump_training_path);
  const ExperimentResult res = run_experiment(cfg);
  const std::string axis_value = format_axis_value(SweepAxis::SnrDb, cfg.snr_db);

  std::vector<SweepRow> rows;
  for (const EstimatorSummary& s : res.summary) rows.push_back({axis_value, s});
  print_summary(rows);

  if (!args.out_dir.empty()) {
    const fs::path base(args.out_dir);
    if (args.format == "json") {
      write_file(base / "results.json", to_json(res, axis_value));
    } else {
      write_file(base / "results.csv", to_csv(res, axis_value));
    }
    write_file(base / "config.txt", dump_config(cfg));
  }
  return 0;
}

int run_sweep_cmd(const CommonArgs& args, const std::string& axis_str,
                  const std::vector<double>& values) {
  const SystemConfig cfg = resolve_config(args);
  const SweepAxis axis = axis_from_name(axis_str);
  const std::vector<SweepRow> rows = run_sweep(cfg, axis, values);
  print_summary(rows);

  if (!args.out_dir.empty()) {
    const fs::path base(args.out_dir);
    if (args.format == "json") {
      write_file(base / "results.json", to_json(rows));
    } else {
      write_file(base / "results.csv", to_csv(rows));
      write_file(base / "plot.csv", to_plot_csv(rows));
    }
    write_file(base / "config.txt", dump_config(cfg));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RIS-aided uplink channel estimation under few-bit ADCs"};
  app.require_subcommand(1);

  CommonArgs run_args;
  CLI::App* run = app.add_subcommand("run", "Run one scenario");
  add_common(run, run_args);

  CommonArgs sweep_args;
  std::string axis;
  std::vector<double> values;
  CLI::App* sweep = app.add_subcommand("sweep", "Sweep one axis with common random numbers");
  add_common(sweep, sweep_args);
  sweep->add_option("--axis", axis, "Sweep axis: snr_db, bits or tau")->required();
  sweep
      ->add_option("--values", values,
                   "Axis values (comma separated; bits accepts 0 for infinite)")
      ->required()
      ->delimiter(',');

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return run_single(run_args);
    return run_sweep_cmd(sweep_args, axis, values);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
