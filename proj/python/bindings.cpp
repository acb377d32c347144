// Python bindings for the estimator core: channel/training generation, the
// quantizer, posterior denoisers, the message-passing estimator, baselines
// and the Monte-Carlo harness.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "risamp/baselines.hpp"
#include "risamp/bigamp.hpp"
#include "risamp/channel.hpp"
#include "risamp/config_io.hpp"
#include "risamp/denoisers.hpp"
#include "risamp/harness.hpp"
#include "risamp/normal.hpp"
#include "risamp/quantizer.hpp"
#include "risamp/rng.hpp"
#include "risamp/training.hpp"

namespace py = pybind11;
using namespace risamp;

namespace {

std::vector<Estimator> estimators_from_names(const std::vector<std::string>& names) {
  std::vector<Estimator> out;
  for (const auto& n : names) out.push_back(estimator_from_name(n));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Cascaded-channel estimation for RIS-aided uplinks under few-bit ADCs";

  // channel model -----------------------------------------------------------
  py::class_<PathSet>(m, "PathSet")
      .def_readonly("gains_g", &PathSet::gains_g)
      .def_readonly("gains_h", &PathSet::gains_h)
      .def_readonly("aod_bs", &PathSet::aod_bs)
      .def_readonly("aod_ris", &PathSet::aod_ris)
      .def_readonly("aoa_ris", &PathSet::aoa_ris);

  py::class_<ChannelRealization>(m, "ChannelRealization")
      .def_readonly("G", &ChannelRealization::G)
      .def_readonly("h", &ChannelRealization::h)
      .def_readonly("U", &ChannelRealization::U)
      .def_readonly("paths", &ChannelRealization::paths);

  m.def("steering_vector", &steering_vector, py::arg("n_elems"), py::arg("freq"));
  m.def(
      "sample_paths",
      [](int paths_bs, int paths_user, double var_g, double var_h, std::uint64_t seed) {
        Rng rng(seed);
        return sample_paths(paths_bs, paths_user, var_g, var_h, rng);
      },
      py::arg("paths_bs"), py::arg("paths_user"), py::arg("gain_var_g") = 1.0,
      py::arg("gain_var_h") = 1.0, py::arg("seed") = 1);
  m.def("build_channels", &build_channels, py::arg("paths"), py::arg("num_bs"),
        py::arg("num_ris"));
  m.def("cascaded_channel_direct", &cascaded_channel_direct, py::arg("paths"), py::arg("num_bs"),
        py::arg("num_ris"));

  // training ----------------------------------------------------------------
  py::class_<TrainingMatrix>(m, "TrainingMatrix")
      .def_readonly("E", &TrainingMatrix::E)
      .def_readonly("root", &TrainingMatrix::root)
      .def_readonly("seq_len", &TrainingMatrix::seq_len);

  m.def("zadoff_chu", &zadoff_chu, py::arg("length"), py::arg("root"));
  m.def("build_training", &build_training, py::arg("num_ris"), py::arg("seq_len"),
        py::arg("root") = 1);
  m.def("training_gram_condition", &training_gram_condition);

  // quantizer ---------------------------------------------------------------
  py::class_<QuantizerSpec>(m, "QuantizerSpec")
      .def_readonly("bits", &QuantizerSpec::bits)
      .def_readonly("base_step", &QuantizerSpec::base_step)
      .def_readonly("scale_re", &QuantizerSpec::scale_re)
      .def_readonly("scale_im", &QuantizerSpec::scale_im)
      .def_readonly("thresholds", &QuantizerSpec::thresholds)
      .def_readonly("eta_b", &QuantizerSpec::eta_b)
      .def("levels", &QuantizerSpec::levels);

  py::class_<QuantizedMatrix>(m, "QuantizedMatrix")
      .def_readonly("values", &QuantizedMatrix::values)
      .def_readonly("spec", &QuantizedMatrix::spec)
      .def_readonly("bin_index_re", &QuantizedMatrix::bin_index_re)
      .def_readonly("bin_index_im", &QuantizedMatrix::bin_index_im);

  py::enum_<Part>(m, "Part").value("RE", Part::Re).value("IM", Part::Im);

  m.def("mid_rise_distortion", &mid_rise_distortion, py::arg("bits"), py::arg("step"));
  m.def("optimal_stepsize", &optimal_stepsize, py::arg("bits"));
  m.def("distortion_factor", &distortion_factor, py::arg("bits"));
  m.def("calibrate",
        py::overload_cast<int, double, const MatrixXcd&>(&calibrate), py::arg("bits"),
        py::arg("base_step"), py::arg("samples"));
  m.def("calibrate", py::overload_cast<int, const MatrixXcd&>(&calibrate), py::arg("bits"),
        py::arg("samples"));
  m.def("quantize", &quantize, py::arg("y"), py::arg("spec"));
  m.def(
      "bin_bounds",
      [](int bin_index, const QuantizerSpec& spec, Part part) {
        const BinBounds b = bin_bounds(bin_index, spec, part);
        return std::make_pair(b.lower, b.upper);
      },
      py::arg("bin_index"), py::arg("spec"), py::arg("part"));

  // denoisers ---------------------------------------------------------------
  m.def(
      "quantized_posterior",
      [](double mean, double variance, double observed_level, double lower, double upper,
         double noise_var) {
        const PosteriorMoments p =
            quantized_posterior({mean, variance}, observed_level, {lower, upper}, noise_var);
        return std::make_pair(p.mean, p.variance);
      },
      py::arg("mean"), py::arg("variance"), py::arg("observed_level"), py::arg("lower"),
      py::arg("upper"), py::arg("noise_var"));
  m.def(
      "unquantized_posterior",
      [](double mean, double variance, double observed, double noise_var) {
        const PosteriorMoments p = unquantized_posterior({mean, variance}, observed, noise_var);
        return std::make_pair(p.mean, p.variance);
      },
      py::arg("mean"), py::arg("variance"), py::arg("observed"), py::arg("noise_var"));
  m.def(
      "gaussian_prior_denoiser",
      [](Complex pseudo_obs, double pseudo_var, double prior_var) {
        const ComplexPosterior p = gaussian_prior_denoiser(pseudo_obs, pseudo_var, prior_var);
        return std::make_pair(p.mean, p.variance);
      },
      py::arg("pseudo_obs"), py::arg("pseudo_var"), py::arg("prior_var"));
  m.def("mills_ratio", &mills_ratio, py::arg("x"));

  // message-passing estimator ------------------------------------------------
  py::class_<AmpOptions>(m, "AmpOptions")
      .def(py::init<>())
      .def_readwrite("max_iterations", &AmpOptions::max_iterations)
      .def_readwrite("damping", &AmpOptions::damping)
      .def_readwrite("stop_tol", &AmpOptions::stop_tol);

  py::class_<AmpReport>(m, "AmpReport")
      .def_readonly("u_hat_final", &AmpReport::u_hat_final)
      .def_readonly("iterations_run", &AmpReport::iterations_run)
      .def_readonly("per_iteration_residual", &AmpReport::per_iteration_residual)
      .def_readonly("op_count", &AmpReport::op_count)
      .def_readonly("s_var_clamp_count", &AmpReport::s_var_clamp_count);

  m.def(
      "amp_run",
      [](const QuantizedMatrix& observed, const TrainingMatrix& training, double noise_var,
         double prior_var, const AmpOptions& opts) {
        return amp_run(observed, training, noise_var, prior_var, opts);
      },
      py::arg("observed"), py::arg("training"), py::arg("noise_var"), py::arg("prior_var"),
      py::arg("opts") = AmpOptions{});
  m.def(
      "amp_run_unquantized",
      [](const MatrixXcd& observed, const TrainingMatrix& training, double noise_var,
         double prior_var, const AmpOptions& opts) {
        return amp_run(observed, training, noise_var, prior_var, opts);
      },
      py::arg("observed"), py::arg("training"), py::arg("noise_var"), py::arg("prior_var"),
      py::arg("opts") = AmpOptions{});

  // baselines ---------------------------------------------------------------
  py::class_<BussgangModel>(m, "BussgangModel")
      .def_readonly("gain", &BussgangModel::gain)
      .def_readonly("eff_noise_var", &BussgangModel::eff_noise_var)
      .def_readonly("eta_b", &BussgangModel::eta_b);

  m.def("make_bussgang", &make_bussgang, py::arg("eta_b"), py::arg("noise_var"),
        py::arg("obs_power"));
  m.def("ls_estimate", &ls_estimate, py::arg("observed"), py::arg("training"));
  m.def("almmse_estimate", &almmse_estimate, py::arg("observed"), py::arg("training"),
        py::arg("model"), py::arg("noise_var"), py::arg("prior_var"), py::arg("num_bs"));

  // harness -----------------------------------------------------------------
  py::class_<SystemConfig>(m, "SystemConfig")
      .def(py::init<>())
      .def_readwrite("num_bs", &SystemConfig::num_bs)
      .def_readwrite("num_ris", &SystemConfig::num_ris)
      .def_readwrite("train_len", &SystemConfig::train_len)
      .def_readwrite("paths_bs", &SystemConfig::paths_bs)
      .def_readwrite("paths_user", &SystemConfig::paths_user)
      .def_readwrite("bits", &SystemConfig::bits)
      .def_readwrite("snr_db", &SystemConfig::snr_db)
      .def_readwrite("sigma_g2", &SystemConfig::sigma_g2)
      .def_readwrite("sigma_h2", &SystemConfig::sigma_h2)
      .def_readwrite("trials", &SystemConfig::trials)
      .def_readwrite("seed", &SystemConfig::seed)
      .def_readwrite("zc_root", &SystemConfig::zc_root)
      .def_readwrite("workers", &SystemConfig::workers)
      .def_property(
          "estimators",
          [](const SystemConfig& cfg) {
            std::vector<std::string> names;
            for (Estimator e : cfg.estimators) names.push_back(estimator_name(e));
            return names;
          },
          [](SystemConfig& cfg, const std::vector<std::string>& names) {
            cfg.estimators = estimators_from_names(names);
          })
      .def_property(
          "u_prior",
          [](const SystemConfig& cfg) {
            return cfg.u_prior == PriorForm::Product ? "product" : "harmonic";
          },
          [](SystemConfig& cfg, const std::string& v) {
            if (v == "product") cfg.u_prior = PriorForm::Product;
            else if (v == "harmonic") cfg.u_prior = PriorForm::Harmonic;
            else throw std::invalid_argument("u_prior must be 'product' or 'harmonic'");
          })
      .def_property(
          "snr_calibration",
          [](const SystemConfig& cfg) {
            return cfg.snr_calibration == SnrCalibration::PerTrial ? "per_trial" : "ensemble";
          },
          [](SystemConfig& cfg, const std::string& v) {
            if (v == "per_trial") cfg.snr_calibration = SnrCalibration::PerTrial;
            else if (v == "ensemble") cfg.snr_calibration = SnrCalibration::Ensemble;
            else throw std::invalid_argument("snr_calibration must be 'per_trial' or 'ensemble'");
          })
      .def_readwrite("trace_dir", &SystemConfig::trace_dir)
      .def_property(
          "amp_max_iterations",
          [](const SystemConfig& cfg) { return cfg.amp.max_iterations; },
          [](SystemConfig& cfg, int v) { cfg.amp.max_iterations = v; })
      .def_property(
          "amp_damping", [](const SystemConfig& cfg) { return cfg.amp.damping; },
          [](SystemConfig& cfg, double v) { cfg.amp.damping = v; })
      .def_property(
          "amp_stop_tol", [](const SystemConfig& cfg) { return cfg.amp.stop_tol; },
          [](SystemConfig& cfg, double v) { cfg.amp.stop_tol = v; })
      .def("u_prior_var", &SystemConfig::u_prior_var)
      .def("validate", &SystemConfig::validate);

  py::class_<TrialResult>(m, "TrialResult")
      .def_readonly("index", &TrialResult::index)
      .def_readonly("seed", &TrialResult::seed)
      .def_readonly("amp_iterations", &TrialResult::amp_iterations)
      .def_readonly("diverged", &TrialResult::diverged)
      .def_property_readonly("nmse", [](const TrialResult& t) {
        std::map<std::string, double> out;
        for (const auto& [est, v] : t.nmse) out[estimator_name(est)] = v;
        return out;
      });

  py::class_<EstimatorSummary>(m, "EstimatorSummary")
      .def_property_readonly("estimator",
                             [](const EstimatorSummary& s) { return estimator_name(s.estimator); })
      .def_readonly("mean_nmse", &EstimatorSummary::mean_nmse)
      .def_readonly("median_nmse", &EstimatorSummary::median_nmse)
      .def_readonly("stderr_nmse", &EstimatorSummary::stderr_nmse)
      .def_readonly("trials_ok", &EstimatorSummary::trials_ok)
      .def_readonly("trials_diverged", &EstimatorSummary::trials_diverged);

  py::class_<ExperimentResult>(m, "ExperimentResult")
      .def_readonly("trials", &ExperimentResult::trials)
      .def_readonly("summary", &ExperimentResult::summary);

  py::class_<SweepRow>(m, "SweepRow")
      .def_readonly("axis_value", &SweepRow::axis_value)
      .def_readonly("summary", &SweepRow::summary);

  m.def("calibrate_noise", &calibrate_noise, py::arg("cascaded"), py::arg("training"),
        py::arg("snr_db"));
  m.def("nmse", &nmse, py::arg("u_hat"), py::arg("u_true"));
  m.def("run_experiment", &run_experiment, py::arg("cfg"),
        py::call_guard<py::gil_scoped_release>());
  m.def(
      "run_sweep",
      [](const SystemConfig& base, const std::string& axis, const std::vector<double>& values) {
        py::gil_scoped_release release;
        return run_sweep(base, axis_from_name(axis), values);
      },
      py::arg("base"), py::arg("axis"), py::arg("values"));
  m.def("to_csv",
        py::overload_cast<const std::vector<SweepRow>&>(&to_csv), py::arg("rows"));
  m.def("load_config", &load_config, py::arg("path"));
  m.def("dump_config", &dump_config, py::arg("cfg"));
}
