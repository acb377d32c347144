#include "risamp/harness.hpp"

#include <cmath>
#include <sstream>

#include "doctest.h"
#include "risamp/channel.hpp"
#include "risamp/config_io.hpp"
#include "risamp/rng.hpp"
#include "risamp/training.hpp"

using namespace risamp;

namespace {

SystemConfig small_config() {
  SystemConfig cfg;
  cfg.num_bs = 16;
  cfg.num_ris = 8;
  cfg.train_len = 64;
  cfg.paths_bs = 2;
  cfg.paths_user = 2;
  cfg.bits = 2;
  cfg.snr_db = 10.0;
  cfg.trials = 4;
  cfg.seed = 7;
  return cfg;
}

}  // namespace

TEST_CASE("calibrate_noise follows the SNR definition") {
  Rng rng(10);
  const PathSet p = sample_paths(2, 2, 1.0, 1.0, rng);
  const ChannelRealization chan = build_channels(p, 8, 4);
  const TrainingMatrix tr = build_training(4, 32, 1);
  const double at0 = calibrate_noise(chan.U, tr, 0.0);
  const double at10 = calibrate_noise(chan.U, tr, 10.0);
  const double energy = (chan.U * tr.E).squaredNorm();
  CHECK(at0 == doctest::Approx(energy / (8.0 * 32.0)).epsilon(1e-12));
  CHECK(at10 == doctest::Approx(at0 / 10.0).epsilon(1e-12));
}

TEST_CASE("calibrated noise reproduces the requested SNR empirically") {
  Rng rng(11);
  double snr_acc = 0.0;
  const int trials = 100;
  for (int i = 0; i < trials; ++i) {
    const PathSet p = sample_paths(2, 2, 1.0, 1.0, rng);
    const ChannelRealization chan = build_channels(p, 8, 4);
    const TrainingMatrix tr = build_training(4, 64, 1);
    const double noise_var = calibrate_noise(chan.U, tr, 7.0);
    MatrixXcd w(8, 64);
    for (Eigen::Index t = 0; t < 64; ++t)
      for (Eigen::Index r = 0; r < 8; ++r)
        w(r, t) = std::sqrt(noise_var) * rng.complex_gaussian();
    snr_acc += (chan.U * tr.E).squaredNorm() / w.squaredNorm();
  }
  const double snr_db = 10.0 * std::log10(snr_acc / trials);
  CHECK(std::abs(snr_db - 7.0) < 0.2);
}

TEST_CASE("nmse basics") {
  MatrixXcd u(2, 2);
  u << Complex(1, 0), Complex(0, 1), Complex(-1, 0), Complex(0, -1);
  CHECK(nmse(u, u) == 0.0);
  CHECK(nmse(MatrixXcd::Zero(2, 2), u) == doctest::Approx(1.0));
  CHECK(nmse(2.0 * u, u) == doctest::Approx(1.0));
  CHECK_THROWS_AS(nmse(MatrixXcd::Zero(2, 3), u), std::invalid_argument);
  CHECK_THROWS_AS(nmse(u, MatrixXcd::Zero(2, 2)), std::invalid_argument);
}

TEST_CASE("run_experiment: deterministic and worker-count independent") {
  SystemConfig cfg = small_config();
  cfg.workers = 1;
  const ExperimentResult a = run_experiment(cfg);
  cfg.workers = 4;
  const ExperimentResult b = run_experiment(cfg);
  REQUIRE(a.trials.size() == b.trials.size());
  for (std::size_t i = 0; i < a.trials.size(); ++i) {
    CHECK(a.trials[i].seed == b.trials[i].seed);
    for (const auto& [est, v] : a.trials[i].nmse)
      CHECK(v == b.trials[i].nmse.at(est));
  }
  CHECK(to_csv(a, "x") == to_csv(b, "x"));
}

TEST_CASE("run_experiment: high-SNR unquantized least squares is tight") {
  SystemConfig cfg = small_config();
  cfg.bits = 0;  // infinite resolution
  cfg.snr_db = 40.0;
  cfg.trials = 5;
  cfg.estimators = {Estimator::Ls};
  const ExperimentResult res = run_experiment(cfg);
  CHECK(res.summary.size() == 1);
  CHECK(res.summary[0].mean_nmse <= 1e-3);
  CHECK(res.summary[0].trials_ok == 5);
}

TEST_CASE("common random numbers: channels repeat across axis values") {
  SystemConfig cfg = small_config();
  // the channel substream depends only on (seed, trial)
  const std::uint64_t s0 = substream_seed(cfg.seed, 2, 0);
  Rng r1(s0), r2(s0);
  const PathSet p1 = sample_paths(cfg.paths_bs, cfg.paths_user, 1.0, 1.0, r1);
  const PathSet p2 = sample_paths(cfg.paths_bs, cfg.paths_user, 1.0, 1.0, r2);
  CHECK(p1.gains_g == p2.gains_g);

  // reported trial seeds are identical whatever the bits/snr settings
  SystemConfig lo = cfg, hi = cfg;
  lo.bits = 1;
  hi.bits = 3;
  hi.snr_db = -10.0;
  lo.estimators = {Estimator::Ls};
  hi.estimators = {Estimator::Ls};
  const ExperimentResult ra = run_experiment(lo);
  const ExperimentResult rb = run_experiment(hi);
  for (std::size_t i = 0; i < ra.trials.size(); ++i)
    CHECK(ra.trials[i].seed == rb.trials[i].seed);
}

TEST_CASE("sweep rows carry the pinned CSV schema") {
  SystemConfig cfg = small_config();
  cfg.trials = 2;
  cfg.estimators = {Estimator::Ls, Estimator::Almmse};
  const std::vector<SweepRow> rows = run_sweep(cfg, SweepAxis::SnrDb, {-10.0, 0.0, 10.0, 20.0});
  CHECK(rows.size() == 8);
  const std::string csv = to_csv(rows);
  CHECK(csv.rfind("axis_value,estimator,mean_nmse,median_nmse,stderr,trials_ok,trials_diverged\n",
                  0) == 0);
  // 8 data rows + header
  int lines = 0;
  for (char ch : csv)
    if (ch == '\n') ++lines;
  CHECK(lines == 9);
  CHECK(csv.find("-10,ls,") != std::string::npos);
  CHECK(csv.find("20,almmse,") != std::string::npos);

  const std::string plot = to_plot_csv(rows);
  CHECK(plot.rfind("axis_value,estimator,median_nmse_db,mean_nmse_db\n", 0) == 0);
}

TEST_CASE("sweep over tau at fixed snr: nmse non-increasing per estimator") {
  SystemConfig cfg = small_config();
  cfg.trials = 8;
  cfg.snr_db = 0.0;
  cfg.estimators = {Estimator::Ls, Estimator::Almmse};
  const std::vector<SweepRow> rows = run_sweep(cfg, SweepAxis::Tau, {16.0, 32.0, 64.0});
  for (const Estimator est : cfg.estimators) {
    std::vector<double> medians;
    for (const SweepRow& r : rows)
      if (r.summary.estimator == est) medians.push_back(r.summary.median_nmse);
    REQUIRE(medians.size() == 3);
    CHECK(medians[1] <= medians[0] * 1.02);
    CHECK(medians[2] <= medians[1] * 1.02);
  }
}

TEST_CASE("axis formatting: integer bits with inf sentinel") {
  CHECK(format_axis_value(SweepAxis::Bits, 0.0) == "inf");
  CHECK(format_axis_value(SweepAxis::Bits, 3.0) == "3");
  CHECK(format_axis_value(SweepAxis::Tau, 500.0) == "500");
  CHECK(format_axis_value(SweepAxis::SnrDb, -10.0) == "-10");
  CHECK(format_axis_value(SweepAxis::SnrDb, 2.5) == "2.5");
}

TEST_CASE("config parsing: round trip and unknown keys") {
  SystemConfig cfg = small_config();
  cfg.u_prior = PriorForm::Harmonic;
  cfg.estimators = {Estimator::BigAmp, Estimator::Ls};
  const std::string text = dump_config(cfg);
  std::istringstream in(text);
  const SystemConfig back = parse_config(in);
  CHECK(back.num_bs == cfg.num_bs);
  CHECK(back.train_len == cfg.train_len);
  CHECK(back.bits == cfg.bits);
  CHECK(back.u_prior == PriorForm::Harmonic);
  CHECK(back.estimators == cfg.estimators);
  CHECK(back.seed == cfg.seed);

  std::istringstream bad("n_bs = 8\nbogus_key = 3\n");
  CHECK_THROWS_AS(parse_config(bad), std::invalid_argument);
  std::istringstream inf_bits("bits = inf\n");
  CHECK(parse_config(inf_bits).bits == 0);
  std::istringstream noisy("# comment\n\n  tau = 96  # trailing\n");
  CHECK(parse_config(noisy).train_len == 96);
}

TEST_CASE("config validation catches bad scenarios") {
  SystemConfig cfg = small_config();
  cfg.num_ris = 32;  // now num_bs <= num_ris with bigamp selected
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = small_config();
  cfg.train_len = 4;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = small_config();
  cfg.bits = 9;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = small_config();
  cfg.amp.damping = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = small_config();
  cfg.estimators = {Estimator::Ls};
  cfg.num_ris = 32;
  cfg.num_bs = 16;
  cfg.train_len = 64;
  CHECK_NOTHROW(cfg.validate());  // N > M only required for the amp
}

TEST_CASE("bigamp outperforms the zero estimate on a quick quantized run") {
  SystemConfig cfg = small_config();
  cfg.trials = 3;
  cfg.bits = 3;
  cfg.estimators = {Estimator::BigAmp, Estimator::Ls, Estimator::Almmse};
  const ExperimentResult res = run_experiment(cfg);
  for (const EstimatorSummary& s : res.summary) {
    CHECK(s.trials_ok == 3);
    CHECK(s.median_nmse > 0.0);
    CHECK(s.median_nmse < 1.0);
  }
}
