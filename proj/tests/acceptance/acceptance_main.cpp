// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion. Exit code is the number of failures.
//
// Heavy sweeps reuse one result set: the full-scale SNR sweep feeds both the
// ordering and the one-bit non-monotonicity checks.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "../oracles.hpp"
#include "risamp/baselines.hpp"
#include "risamp/bigamp.hpp"
#include "risamp/channel.hpp"
#include "risamp/denoisers.hpp"
#include "risamp/harness.hpp"
#include "risamp/quantizer.hpp"
#include "risamp/rng.hpp"
#include "risamp/training.hpp"

using namespace risamp;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& label, const Outcome& o, double secs) {
  std::printf("[%s] criterion %d: %s (%.1f s) %s\n", o.pass ? "PASS" : "FAIL", id, label.c_str(),
              secs, o.detail.c_str());
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

SystemConfig paper_scale_config() {
  SystemConfig cfg;
  cfg.num_bs = 64;
  cfg.num_ris = 32;
  cfg.train_len = 500;
  cfg.paths_bs = 10;
  cfg.paths_user = 10;
  cfg.trials = 50;
  cfg.seed = 1;
  return cfg;
}

double median_for(const ExperimentResult& res, Estimator est) {
  for (const EstimatorSummary& s : res.summary)
    if (s.estimator == est) return s.median_nmse;
  return std::numeric_limits<double>::quiet_NaN();
}

// ---------------------------------------------------------------------------

Outcome criterion1_denoiser_oracle() {
  Rng rng(77);
  int kept = 0, saturated = 0;
  double worst = 0.0;
  for (int attempt = 0; attempt < 200000 && kept < 1000; ++attempt) {
    const int bits = 1 + attempt % 3;
    const double mean = 3.0 * rng.gaussian();
    const double var = 0.05 + 2.0 * rng.uniform();
    const double noise = 0.05 + 2.0 * rng.uniform();

    QuantizerSpec spec;
    spec.bits = bits;
    spec.base_step = 1.0;
    spec.scale_re = 0.3 + 2.0 * rng.uniform();
    spec.scale_im = spec.scale_re;
    const int bin = 1 + static_cast<int>(rng.uniform() * spec.levels());
    const BinBounds bounds = bin_bounds(bin, spec, Part::Re);
    const double level = (bin - spec.levels() / 2 - 0.5) * spec.scale_re;

    const double denom = std::sqrt(var + noise);
    const double worst_edge =
        std::max(std::isinf(bounds.lower) ? 0.0 : std::abs(bounds.lower - mean),
                 std::isinf(bounds.upper) ? 0.0 : std::abs(bounds.upper - mean));
    if (worst_edge / denom > 8.0) continue;
    ++kept;
    if (std::isinf(bounds.lower) || std::isinf(bounds.upper)) ++saturated;

    const PosteriorMoments got = quantized_posterior({mean, var}, level, bounds, 2.0 * noise);
    const oracle::Moments want =
        oracle::truncated_posterior(mean, var, bounds.lower, bounds.upper, noise);
    worst = std::max(worst, std::abs(got.mean - want.mean));
    worst = std::max(worst, std::abs(got.variance - want.variance));
  }
  const bool pass = kept == 1000 && saturated > 100 && worst <= 1e-6;
  return {pass, "cases=" + std::to_string(kept) + " saturated=" + std::to_string(saturated) +
                    " max_abs_err=" + fmt(worst)};
}

Outcome criterion2_quantizer() {
  const double eta1 = distortion_factor(1);
  const double eta1_err = std::abs(eta1 - (1.0 - 2.0 / kPi));
  const double step1_err = std::abs(optimal_stepsize(1) - 2.0 * std::sqrt(2.0 / kPi));
  bool pass = eta1_err <= 1e-3 && step1_err <= 1e-3;
  std::string detail = "eta1_err=" + fmt(eta1_err) + " step1_err=" + fmt(step1_err);

  for (int bits = 1; bits <= 5; ++bits) {
    Rng rng(900 + bits);
    MatrixXcd samples(1000, 1000);
    for (Eigen::Index c = 0; c < 1000; ++c)
      for (Eigen::Index r = 0; r < 1000; ++r) samples(r, c) = rng.complex_gaussian();
    const QuantizedMatrix q = quantize(samples, calibrate(bits, samples));
    const double empirical = (q.values - samples).squaredNorm() / samples.squaredNorm();
    const double rel = std::abs(empirical / distortion_factor(bits) - 1.0);
    detail += " B" + std::to_string(bits) + "=" + fmt(rel);
    if (rel > 0.01) pass = false;
  }
  return {pass, detail};
}

struct GridPoint {
  int bits;
  double snr_db;
  double ba, al, ls;
};

std::vector<GridPoint> run_fig1_grid() {
  std::vector<GridPoint> grid;
  for (int bits : {1, 2, 3}) {
    SystemConfig cfg = paper_scale_config();
    cfg.bits = bits;
    const std::vector<double> snrs = {-10.0, 0.0, 10.0, 20.0};
    for (double snr : snrs) {
      cfg.snr_db = snr;
      const ExperimentResult res = run_experiment(cfg);
      grid.push_back({bits, snr, median_for(res, Estimator::BigAmp),
                      median_for(res, Estimator::Almmse), median_for(res, Estimator::Ls)});
    }
  }
  return grid;
}

Outcome criterion3_ordering(const std::vector<GridPoint>& grid, double secs) {
  bool pass = true;
  std::string detail;
  for (const GridPoint& g : grid) {
    const bool ok = g.ba < g.al && g.al <= 1.05 * g.ls;
    if (!ok) {
      pass = false;
      detail += " violated at B=" + std::to_string(g.bits) + ",snr=" + fmt(g.snr_db) + " (ba=" +
                fmt(g.ba) + ",al=" + fmt(g.al) + ",ls=" + fmt(g.ls) + ")";
    }
  }
  if (secs > 30.0 * 60.0) {
    pass = false;
    detail += " runtime above 30 min";
  }
  if (detail.empty()) detail = "ordering holds at all 12 grid points";
  return {pass, detail};
}

Outcome criterion4_high_resolution() {
  SystemConfig cfg = paper_scale_config();
  cfg.snr_db = 10.0;
  cfg.estimators = {Estimator::BigAmp};
  cfg.bits = 8;
  const double m8 = median_for(run_experiment(cfg), Estimator::BigAmp);
  cfg.bits = 0;
  const double minf = median_for(run_experiment(cfg), Estimator::BigAmp);
  const double gap_db = std::abs(10.0 * std::log10(m8 / minf));
  return {gap_db <= 1.0, "8bit=" + fmt(m8) + " inf=" + fmt(minf) + " gap=" + fmt(gap_db) + " dB"};
}

Outcome criterion5_stochastic_resonance(const std::vector<GridPoint>& grid) {
  std::vector<GridPoint> one_bit;
  for (const GridPoint& g : grid)
    if (g.bits == 1) one_bit.push_back(g);
  double best = std::numeric_limits<double>::infinity();
  double best_snr = 0.0, at20 = std::numeric_limits<double>::quiet_NaN();
  for (const GridPoint& g : one_bit) {
    if (g.ba < best) {
      best = g.ba;
      best_snr = g.snr_db;
    }
    if (g.snr_db == 20.0) at20 = g.ba;
  }
  const bool pass = best_snr != 20.0 && at20 >= best;
  return {pass, "best at " + fmt(best_snr) + " dB (" + fmt(best) + "), 20 dB gives " + fmt(at20)};
}

Outcome criterion6_training_length() {
  SystemConfig cfg = paper_scale_config();
  cfg.bits = 3;
  cfg.snr_db = 0.0;
  const std::vector<double> taus = {100, 200, 300, 400, 500};
  std::map<Estimator, std::vector<double>> medians;
  for (double tau : taus) {
    cfg.train_len = static_cast<int>(tau);
    const ExperimentResult res = run_experiment(cfg);
    for (const EstimatorSummary& s : res.summary) medians[s.estimator].push_back(s.median_nmse);
  }
  bool pass = true;
  std::string detail;
  for (const auto& [est, series] : medians) {
    for (std::size_t i = 1; i < series.size(); ++i) {
      if (series[i] > series[i - 1]) {
        pass = false;
        detail += " " + estimator_name(est) + " rises at tau=" + fmt(taus[i]);
      }
    }
  }
  if (detail.empty()) detail = "all estimators non-increasing over tau";
  return {pass, detail};
}

Outcome criterion7_complexity() {
  struct Size {
    int n, m, tau;
  };
  std::vector<double> ratios;
  std::string detail = "macs/iter/(NMtau):";
  for (const Size sz : {Size{16, 8, 100}, Size{32, 16, 200}, Size{64, 32, 500}}) {
    Rng rng(60 + sz.n);
    const PathSet p = sample_paths(2, 2, 1.0, 1.0, rng);
    const ChannelRealization chan = build_channels(p, sz.n, sz.m);
    const TrainingMatrix tr = build_training(sz.m, sz.tau, 1);
    MatrixXcd y = chan.U * tr.E;
    const double noise_var = y.squaredNorm() / (y.size() * 10.0);
    for (Eigen::Index t = 0; t < y.cols(); ++t)
      for (Eigen::Index r = 0; r < y.rows(); ++r)
        y(r, t) += std::sqrt(noise_var) * rng.complex_gaussian();
    const QuantizedMatrix q = quantize(y, calibrate(3, y));
    AmpOptions opts;
    opts.max_iterations = 5;
    opts.stop_tol = 0.0;
    const AmpReport rep = amp_run(q, tr, noise_var, 4.0, opts);
    const double ratio = static_cast<double>(rep.op_count) / rep.iterations_run /
                         (static_cast<double>(sz.n) * sz.m * sz.tau);
    ratios.push_back(ratio);
    detail += " " + fmt(ratio);
  }
  const double lo = *std::min_element(ratios.begin(), ratios.end());
  const double hi = *std::max_element(ratios.begin(), ratios.end());
  return {hi / lo <= 1.10, detail + " spread=" + fmt(hi / lo)};
}

Outcome criterion8_noiseless_sanity() {
  // At 40 dB the two estimators agree to five digits, so the comparison is
  // run on the expectation (the NMSE definition) with ensemble SNR
  // calibration (the SNR definition is a ratio of expectations) and enough
  // trials to resolve the ~1e-9 gap at many standard errors.
  SystemConfig cfg;
  cfg.num_bs = 16;
  cfg.num_ris = 8;
  cfg.train_len = 64;
  cfg.paths_bs = 2;
  cfg.paths_user = 2;
  cfg.bits = 0;
  cfg.snr_db = 40.0;
  cfg.trials = 20000;
  cfg.seed = 1;
  cfg.snr_calibration = SnrCalibration::Ensemble;
  cfg.amp.stop_tol = 1e-9;
  cfg.amp.max_iterations = 300;
  cfg.estimators = {Estimator::BigAmp, Estimator::Ls};
  const auto t0 = Clock::now();
  const ExperimentResult res = run_experiment(cfg);
  const double per_trial = seconds_since(t0) / cfg.trials;
  double ls = 0.0, ba = 0.0;
  for (const EstimatorSummary& s : res.summary) {
    if (s.estimator == Estimator::Ls) ls = s.mean_nmse;
    if (s.estimator == Estimator::BigAmp) ba = s.mean_nmse;
  }
  const bool pass = ls <= 1e-3 && ba <= ls && per_trial < 1.0;
  return {pass, "ls=" + fmt(ls) + " bigamp=" + fmt(ba) + " per_trial=" + fmt(per_trial) + " s"};
}

Outcome criterion9_determinism() {
  SystemConfig cfg = paper_scale_config();
  cfg.bits = 2;
  cfg.snr_db = 5.0;
  cfg.trials = 3;
  const std::vector<double> values = {0.0, 10.0};

  cfg.workers = 1;
  const std::string csv1 = to_csv(run_sweep(cfg, SweepAxis::SnrDb, values));
  cfg.workers = 4;
  const std::string csv4 = to_csv(run_sweep(cfg, SweepAxis::SnrDb, values));
  cfg.workers = 0;  // hardware default, repeated
  const std::string csv_a = to_csv(run_sweep(cfg, SweepAxis::SnrDb, values));
  const std::string csv_b = to_csv(run_sweep(cfg, SweepAxis::SnrDb, values));

  const bool pass = csv1 == csv4 && csv_a == csv_b && csv1 == csv_a;
  return {pass, pass ? "byte-identical across reruns and worker counts"
                     : "csv outputs differ between runs"};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  auto wanted = [&](int id) { return selected.empty() || selected.count(id) > 0; };

  auto timed = [&](int id, const std::string& label, auto&& fn) {
    if (!wanted(id)) return;
    const auto t0 = Clock::now();
    const Outcome o = fn();
    report(id, label, o, seconds_since(t0));
  };

  timed(1, "denoiser posterior matches the quadrature oracle", criterion1_denoiser_oracle);
  timed(2, "quantizer stepsize and distortion self-consistency", criterion2_quantizer);

  // shared full-scale SNR sweep for criteria 3 and 5
  std::vector<GridPoint> grid;
  double grid_secs = 0.0;
  if (wanted(3) || wanted(5)) {
    const auto t0 = Clock::now();
    grid = run_fig1_grid();
    grid_secs = seconds_since(t0);
  }
  if (wanted(3))
    report(3, "estimator ordering across the SNR/bit grid", criterion3_ordering(grid, grid_secs),
           grid_secs);
  timed(4, "8-bit tracks infinite resolution within 1 dB", criterion4_high_resolution);
  if (wanted(5))
    report(5, "one-bit error is non-monotone in SNR", criterion5_stochastic_resonance(grid), 0.0);
  timed(6, "error non-increasing in training length", criterion6_training_length);
  timed(7, "per-iteration operation count scales with N*M*tau", criterion7_complexity);
  timed(8, "near-noiseless sanity at small scale", criterion8_noiseless_sanity);
  timed(9, "byte-identical reruns independent of worker count", criterion9_determinism);

  std::printf("%s: %d criterion(s) failed\n", failures == 0 ? "OK" : "NOT OK", failures);
  return failures;
}
