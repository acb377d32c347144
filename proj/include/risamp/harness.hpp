#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "risamp/bigamp.hpp"
#include "risamp/common.hpp"
#include "risamp/training.hpp"

namespace risamp {

enum class Estimator { BigAmp, Ls, Almmse };

std::string estimator_name(Estimator e);
Estimator estimator_from_name(const std::string& name);

/// Which variance the Gaussian channel prior uses: the product of the
/// per-entry variances of the two factor channels (their true product
/// second moment) or their harmonic combination.
enum class PriorForm { Product, Harmonic };

/// Noise-power calibration: from the realized transform energy of each
/// trial, or from its ensemble average.
enum class SnrCalibration { PerTrial, Ensemble };

struct AmpConfig {
  int max_iterations = 100;
  double damping = 0.7;
  double stop_tol = 1e-6;
};

/// Full scenario description. `bits == 0` selects infinite resolution
/// (pass-through quantizer).
struct SystemConfig {
  int num_bs = 64;      // N, BS antennas
  int num_ris = 32;     // M, RIS elements
  int train_len = 500;  // tau
  int paths_bs = 10;    // L, RIS->BS paths
  int paths_user = 10;  // J, user->RIS paths
  int bits = 3;
  double snr_db = 10.0;
  double sigma_g2 = 1.0;  // per-path gain variance of the RIS->BS channel
  double sigma_h2 = 1.0;  // per-path gain variance of the user->RIS channel
  int trials = 100;
  std::uint64_t seed = 1;
  std::vector<Estimator> estimators = {Estimator::BigAmp, Estimator::Ls, Estimator::Almmse};
  AmpConfig amp;
  int zc_root = 1;
  PriorForm u_prior = PriorForm::Product;
  SnrCalibration snr_calibration = SnrCalibration::PerTrial;
  int workers = 0;         // 0 = hardware concurrency
  std::string trace_dir;   // when nonempty, per-iteration traces are written here

  bool infinite_resolution() const { return bits == 0; }
  /// Per-entry variance of the RIS->BS channel.
  double entry_var_g() const { return paths_bs * sigma_g2; }
  /// Per-entry variance of the user->RIS channel.
  double entry_var_h() const { return paths_user * sigma_h2; }
  /// Gaussian prior variance for the cascaded-channel entries.
  double u_prior_var() const;
  /// Throws std::invalid_argument when any invariant is violated.
  void validate() const;
};

struct TrialResult {
  int index = 0;
  std::uint64_t seed = 0;  // substream seed of the trial's channel draw
  std::map<Estimator, double> nmse;
  int amp_iterations = 0;
  bool diverged = false;
};

struct EstimatorSummary {
  Estimator estimator;
  double mean_nmse = 0.0;
  double median_nmse = 0.0;
  double stderr_nmse = 0.0;
  int trials_ok = 0;
  int trials_diverged = 0;
};

struct ExperimentResult {
  std::vector<TrialResult> trials;
  std::vector<EstimatorSummary> summary;
};

enum class SweepAxis { SnrDb, Bits, Tau };

std::string axis_name(SweepAxis axis);
SweepAxis axis_from_name(const std::string& name);

struct SweepRow {
  std::string axis_value;  // "inf" for the infinite-resolution point
  EstimatorSummary summary;
};

/// sigma_w^2 from the realized transform energy:
/// |U E|_F^2 / (N * tau * 10^(snr_db / 10)).
double calibrate_noise(const MatrixXcd& cascaded, const TrainingMatrix& training, double snr_db);

/// |u_hat - u|_F^2 / |u|_F^2.
double nmse(const MatrixXcd& u_hat, const MatrixXcd& u_true);

/// Runs cfg.trials independent seeded trials (distributed over a worker
/// pool) and aggregates per-estimator NMSE statistics over the non-diverged
/// trials. Fully reproducible from (cfg, seed) regardless of worker count.
ExperimentResult run_experiment(const SystemConfig& cfg);

/// Runs one experiment per axis value with common random numbers: trial k
/// sees the same channel realization at every axis value.
std::vector<SweepRow> run_sweep(const SystemConfig& base, SweepAxis axis,
                                const std::vector<double>& values);

/// Formats an axis value the way the CSV emitters do ("inf" for bits == 0).
std::string format_axis_value(SweepAxis axis, double value);

/// Aggregate CSV with the fixed header
/// axis_value,estimator,mean_nmse,median_nmse,stderr,trials_ok,trials_diverged.
std::string to_csv(const std::vector<SweepRow>& rows);
std::string to_csv(const ExperimentResult& result, const std::string& axis_value);

/// Plot-ready companion table (NMSE in dB as 10*log10).
std::string to_plot_csv(const std::vector<SweepRow>& rows);

std::string to_json(const std::vector<SweepRow>& rows);
std::string to_json(const ExperimentResult& result, const std::string& axis_value);

}  // namespace risamp
