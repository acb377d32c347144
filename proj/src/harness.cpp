#include "risamp/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "risamp/baselines.hpp"
#include "risamp/channel.hpp"
#include "risamp/denoisers.hpp"
#include "risamp/quantizer.hpp"
#include "risamp/rng.hpp"

namespace risamp {

namespace {

// substream ids per trial
constexpr int kStreamChannel = 0;
constexpr int kStreamNoise = 1;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

double median_of(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

struct TrialContext {
  const SystemConfig* cfg;
  const TrainingMatrix* training;
  double ensemble_noise_var;  // used when snr_calibration == Ensemble
};

void write_trace(const SystemConfig& cfg, int trial, const std::vector<double>& residuals,
                 const std::vector<double>& nmse_trace) {
  namespace fs = std::filesystem;
  fs::create_directories(cfg.trace_dir);
  const fs::path path = fs::path(cfg.trace_dir) / ("trace_trial" + std::to_string(trial) + ".csv");
  std::ofstream out(path);
  out << "iteration,residual,nmse\n";
  for (std::size_t i = 0; i < residuals.size(); ++i) {
    out << (i + 1) << ',' << format_double(residuals[i]) << ','
        << format_double(nmse_trace[i]) << '\n';
  }
}

TrialResult run_trial(const TrialContext& ctx, int trial) {
  const SystemConfig& cfg = *ctx.cfg;
  TrialResult result;
  result.index = trial;
  result.seed = substream_seed(cfg.seed, trial, kStreamChannel);

  Rng channel_rng(result.seed);
  const PathSet paths =
      sample_paths(cfg.paths_bs, cfg.paths_user, cfg.sigma_g2, cfg.sigma_h2, channel_rng);
  const ChannelRealization chan = build_channels(paths, cfg.num_bs, cfg.num_ris);

  const double noise_var = cfg.snr_calibration == SnrCalibration::PerTrial
                               ? calibrate_noise(chan.U, *ctx.training, cfg.snr_db)
                               : ctx.ensemble_noise_var;

  // noise drawn column by column so a longer training window extends a
  // shorter one (common random numbers along the tau axis)
  Rng noise_rng(substream_seed(cfg.seed, trial, kStreamNoise));
  MatrixXcd received = chan.U * ctx.training->E;
  const double noise_sd = std::sqrt(noise_var);
  for (Eigen::Index t = 0; t < received.cols(); ++t)
    for (Eigen::Index r = 0; r < received.rows(); ++r)
      received(r, t) += noise_sd * noise_rng.complex_gaussian();

  std::optional<QuantizedMatrix> quantized;
  MatrixXcd estimator_input;
  double eta = 0.0;
  if (cfg.infinite_resolution()) {
    estimator_input = received;
  } else {
    quantized = quantize(received, calibrate(cfg.bits, received));
    estimator_input = quantized->values;
    eta = quantized->spec.eta_b;
  }

  const double prior_var = cfg.u_prior_var();
  const double obs_power = received.squaredNorm() / static_cast<double>(received.size());

  for (Estimator est : cfg.estimators) {
    double value = std::numeric_limits<double>::quiet_NaN();
    switch (est) {
      case Estimator::Ls:
        value = nmse(ls_estimate(estimator_input, *ctx.training), chan.U);
        break;
      case Estimator::Almmse: {
        const BussgangModel model = make_bussgang(eta, noise_var, obs_power);
        value = nmse(
            almmse_estimate(estimator_input, *ctx.training, model, noise_var, prior_var, cfg.num_bs),
            chan.U);
        break;
      }
      case Estimator::BigAmp: {
        AmpOptions opts;
        opts.max_iterations = cfg.amp.max_iterations;
        opts.damping = cfg.amp.damping;
        opts.stop_tol = cfg.amp.stop_tol;
        std::vector<double> residual_trace, nmse_trace;
        if (!cfg.trace_dir.empty()) {
          opts.observer = [&](int, const MatrixXcd& u_hat, double residual) {
            residual_trace.push_back(residual);
            nmse_trace.push_back(nmse(u_hat, chan.U));
          };
        }
        // on numerical failure retry with stronger damping before giving up
        double damping = cfg.amp.damping;
        bool done = false;
        for (int attempt = 0; attempt <= 3 && !done; ++attempt) {
          opts.damping = damping;
          residual_trace.clear();
          nmse_trace.clear();
          try {
            const AmpReport report =
                cfg.infinite_resolution()
                    ? amp_run(received, *ctx.training, noise_var, prior_var, opts)
                    : amp_run(*quantized, *ctx.training, noise_var, prior_var, opts);
            value = nmse(report.u_hat_final, chan.U);
            result.amp_iterations = report.iterations_run;
            done = std::isfinite(value);
          } catch (const amp_numerical_failure&) {
            done = false;
          }
          if (!done) damping *= 0.5;
        }
        if (!done) {
          result.diverged = true;
          value = std::numeric_limits<double>::quiet_NaN();
        }
        if (!cfg.trace_dir.empty()) write_trace(cfg, trial, residual_trace, nmse_trace);
        break;
      }
    }
    result.nmse[est] = value;
  }
  return result;
}

std::vector<EstimatorSummary> summarize(const SystemConfig& cfg,
                                        const std::vector<TrialResult>& trials) {
  std::vector<EstimatorSummary> out;
  for (Estimator est : cfg.estimators) {
    EstimatorSummary s;
    s.estimator = est;
    std::vector<double> values;
    for (const TrialResult& t : trials) {
      const auto it = t.nmse.find(est);
      if (it == t.nmse.end()) continue;
      if (est == Estimator::BigAmp && t.diverged) {
        ++s.trials_diverged;
        continue;
      }
      values.push_back(it->second);
    }
    s.trials_ok = static_cast<int>(values.size());
    if (!values.empty()) {
      double sum = 0.0;
      for (double v : values) sum += v;
      s.mean_nmse = sum / values.size();
      double sq = 0.0;
      for (double v : values) sq += (v - s.mean_nmse) * (v - s.mean_nmse);
      s.stderr_nmse =
          values.size() > 1 ? std::sqrt(sq / (values.size() - 1) / values.size()) : 0.0;
      s.median_nmse = median_of(values);
    }
    out.push_back(s);
  }
  return out;
}

}  // namespace

std::string estimator_name(Estimator e) {
  switch (e) {
    case Estimator::BigAmp: return "bigamp";
    case Estimator::Ls: return "ls";
    case Estimator::Almmse: return "almmse";
  }
  return "?";
}

Estimator estimator_from_name(const std::string& name) {
  if (name == "bigamp") return Estimator::BigAmp;
  if (name == "ls") return Estimator::Ls;
  if (name == "almmse") return Estimator::Almmse;
  throw std::invalid_argument("unknown estimator: " + name);
}

std::string axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::SnrDb: return "snr_db";
    case SweepAxis::Bits: return "bits";
    case SweepAxis::Tau: return "tau";
  }
  return "?";
}

SweepAxis axis_from_name(const std::string& name) {
  if (name == "snr_db") return SweepAxis::SnrDb;
  if (name == "bits") return SweepAxis::Bits;
  if (name == "tau") return SweepAxis::Tau;
  throw std::invalid_argument("unknown sweep axis: " + name);
}

double SystemConfig::u_prior_var() const {
  const double vg = entry_var_g();
  const double vh = entry_var_h();
  return u_prior == PriorForm::Product ? vg * vh : vg * vh / (vg + vh);
}

void SystemConfig::validate() const {
  if (num_bs < 1 || num_ris < 1 || train_len < 1)
    throw std::invalid_argument("config: dimensions must be positive");
  if (train_len < num_ris) throw std::invalid_argument("config: tau must be >= num_ris");
  if (paths_bs < 1 || paths_user < 1)
    throw std::invalid_argument("config: path counts must be >= 1");
  if (bits < 0 || bits > 8)
    throw std::invalid_argument("config: bits must be in [1, 8] or 0 for infinite resolution");
  if (!(sigma_g2 > 0.0) || !(sigma_h2 > 0.0))
    throw std::invalid_argument("config: gain variances must be > 0");
  if (trials < 1) throw std::invalid_argument("config: trials must be >= 1");
  if (estimators.empty()) throw std::invalid_argument("config: no estimators selected");
  const bool wants_amp =
      std::find(estimators.begin(), estimators.end(), Estimator::BigAmp) != estimators.end();
  if (wants_amp && num_bs <= num_ris)
    throw std::invalid_argument("config: the amp estimator requires num_bs > num_ris");
  if (amp.max_iterations < 1 || !(amp.damping > 0.0) || amp.damping > 1.0 ||
      !(amp.stop_tol >= 0.0))
    throw std::invalid_argument("config: invalid amp options");
  if (zc_root < 1) throw std::invalid_argument("config: zc_root must be >= 1");
  if (workers < 0) throw std::invalid_argument("config: workers must be >= 0");
  if (!std::isfinite(snr_db)) throw std::invalid_argument("config: snr_db must be finite");
}

double calibrate_noise(const MatrixXcd& cascaded, const TrainingMatrix& training, double snr_db) {
  if (!std::isfinite(snr_db)) throw std::invalid_argument("calibrate_noise: snr_db must be finite");
  const MatrixXcd transform = cascaded * training.E;
  const double energy = transform.squaredNorm();
  if (energy <= 0.0) throw std::domain_error("calibrate_noise: zero transform energy");
  return energy /
         (static_cast<double>(transform.size()) * std::pow(10.0, snr_db / 10.0));
}

double nmse(const MatrixXcd& u_hat, const MatrixXcd& u_true) {
  if (u_hat.rows() != u_true.rows() || u_hat.cols() != u_true.cols())
    throw std::invalid_argument("nmse: dimension mismatch");
  const double ref = u_true.squaredNorm();
  if (ref <= 0.0) throw std::invalid_argument("nmse: reference matrix has zero norm");
  return (u_hat - u_true).squaredNorm() / ref;
}

ExperimentResult run_experiment(const SystemConfig& cfg) {
  cfg.validate();
  const TrainingMatrix training = build_training(cfg.num_ris, cfg.train_len, cfg.zc_root);

  TrialContext ctx;
  ctx.cfg = &cfg;
  ctx.training = &training;
  // ensemble transform power per entry is M * var(u); var(u) = vg * vh
  ctx.ensemble_noise_var = cfg.num_ris * cfg.entry_var_g() * cfg.entry_var_h() /
                           std::pow(10.0, cfg.snr_db / 10.0);

  ExperimentResult result;
  result.trials.resize(cfg.trials);
  const int hw = static_cast<int>(std::thread::hardware_concurrency());
  const int workers = std::max(1, std::min(cfg.workers > 0 ? cfg.workers : hw, cfg.trials));

  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (int k; (k = next.fetch_add(1)) < cfg.trials;) {
      try {
        result.trials[k] = run_trial(ctx, k);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  result.summary = summarize(cfg, result.trials);
  return result;
}

std::vector<SweepRow> run_sweep(const SystemConfig& base, SweepAxis axis,
                                const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("run_sweep: empty value list");
  std::vector<SweepRow> rows;
  for (double v : values) {
    SystemConfig cfg = base;
    switch (axis) {
      case SweepAxis::SnrDb: cfg.snr_db = v; break;
      case SweepAxis::Bits: cfg.bits = static_cast<int>(std::lround(v)); break;
      case SweepAxis::Tau: cfg.train_len = static_cast<int>(std::lround(v)); break;
    }
    const ExperimentResult res = run_experiment(cfg);
    for (const EstimatorSummary& s : res.summary)
      rows.push_back({format_axis_value(axis, v), s});
  }
  return rows;
}

std::string format_axis_value(SweepAxis axis, double value) {
  if (axis == SweepAxis::Bits) {
    const int b = static_cast<int>(std::lround(value));
    return b == 0 ? "inf" : std::to_string(b);
  }
  if (axis == SweepAxis::Tau) return std::to_string(static_cast<int>(std::lround(value)));
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%g", value);
  return buf;
}

namespace {

const char* kCsvHeader = "axis_value,estimator,mean_nmse,median_nmse,stderr,trials_ok,trials_diverged\n";

void append_row(std::string& out, const std::string& axis_value, const EstimatorSummary& s) {
  out += axis_value;
  out += ',';
  out += estimator_name(s.estimator);
  out += ',';
  out += format_double(s.mean_nmse);
  out += ',';
  out += format_double(s.median_nmse);
  out += ',';
  out += format_double(s.stderr_nmse);
  out += ',';
  out += std::to_string(s.trials_ok);
  out += ',';
  out += std::to_string(s.trials_diverged);
  out += '\n';
}

nlohmann::json summary_json(const std::string& axis_value, const EstimatorSummary& s) {
  return {{"axis_value", axis_value},
          {"estimator", estimator_name(s.estimator)},
          {"mean_nmse", s.mean_nmse},
          {"median_nmse", s.median_nmse},
          {"stderr", s.stderr_nmse},
          {"trials_ok", s.trials_ok},
          {"trials_diverged", s.trials_diverged}};
}

}  // namespace

std::string to_csv(const std::vector<SweepRow>& rows) {
  std::string out = kCsvHeader;
  for (const SweepRow& r : rows) append_row(out, r.axis_value, r.summary);
  return out;
}

std::string to_csv(const ExperimentResult& result, const std::string& axis_value) {
  std::string out = kCsvHeader;
  for (const EstimatorSummary& s : result.summary) append_row(out, axis_value, s);
  return out;
}

std::string to_plot_csv(const std::vector<SweepRow>& rows) {
  std::string out = "axis_value,estimator,median_nmse_db,mean_nmse_db\n";
  for (const SweepRow& r : rows) {
    out += r.axis_value;
    out += ',';
    out += estimator_name(r.summary.estimator);
    out += ',';
    out += format_double(10.0 * std::log10(r.summary.median_nmse));
    out += ',';
    out += format_double(10.0 * std::log10(r.summary.mean_nmse));
    out += '\n';
  }
  return out;
}

std::string to_json(const std::vector<SweepRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const SweepRow& r : rows) arr.push_back(summary_json(r.axis_value, r.summary));
  return arr.dump(2) + "\n";
}

std::string to_json(const ExperimentResult& result, const std::string& axis_value) {
  nlohmann::json arr = nlohmann::json::array();
  for (const EstimatorSummary& s : result.summary) arr.push_back(summary_json(axis_value, s));
  return arr.dump(2) + "\n";
}

}  // namespace risamp
