#include "risamp/bigamp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "risamp/denoisers.hpp"

namespace risamp {

namespace {

constexpr double kVarMin = 1e-12;
constexpr double kVarMax = 1e12;

double clamp_var(double v) { return std::clamp(v, kVarMin, kVarMax); }

bool state_finite(const AmpState& s) {
  return s.p_hat.allFinite() && s.p_var.allFinite() && s.z_hat.allFinite() &&
         s.z_var.allFinite() && s.s_hat.allFinite() && s.s_var.allFinite() &&
         s.q_hat.allFinite() && s.q_var.allFinite() && s.u_hat.allFinite() &&
         s.u_var.allFinite();
}

// Posterior transform moments from the recorded quantizer cells.
struct QuantizedDenoiser {
  const QuantizedMatrix* obs;
  double noise_var;

  void operator()(Eigen::Index r, Eigen::Index c, const Complex& p, double vp, Complex& z_mean,
                  double& z_var) const {
    const QuantizerSpec& qs = obs->spec;
    const PosteriorMoments re = quantized_posterior(
        {p.real(), 0.5 * vp}, obs->values(r, c).real(),
        bin_bounds(obs->bin_index_re(r, c), qs, Part::Re), noise_var);
    const PosteriorMoments im = quantized_posterior(
        {p.imag(), 0.5 * vp}, obs->values(r, c).imag(),
        bin_bounds(obs->bin_index_im(r, c), qs, Part::Im), noise_var);
    z_mean = {re.mean, im.mean};
    z_var = re.variance + im.variance;
  }
};

// Infinite-resolution path: conjugate Gaussian update per real dimension.
struct PassthroughDenoiser {
  const MatrixXcd* obs;
  double noise_var;

  void operator()(Eigen::Index r, Eigen::Index c, const Complex& p, double vp, Complex& z_mean,
                  double& z_var) const {
    const PosteriorMoments re =
        unquantized_posterior({p.real(), 0.5 * vp}, (*obs)(r, c).real(), noise_var);
    const PosteriorMoments im =
        unquantized_posterior({p.imag(), 0.5 * vp}, (*obs)(r, c).imag(), noise_var);
    z_mean = {re.mean, im.mean};
    z_var = re.variance + im.variance;
  }
};

template <class ZDenoiser>
AmpState iterate_impl(const AmpState& st, const MatrixXcd& train, const MatrixXd& train_abs2,
                      const ZDenoiser& zden, double prior_var, double damping,
                      std::uint64_t* op_count, int* s_var_clamps) {
  const Eigen::Index n = st.u_hat.rows();
  const Eigen::Index m = st.u_hat.cols();
  const Eigen::Index tau = train.cols();
  if (train.rows() != m) throw std::invalid_argument("amp_iterate: training row count mismatch");
  if (st.s_hat.rows() != n || st.s_hat.cols() != tau)
    throw std::invalid_argument("amp_iterate: state/training dimension mismatch");
  if (!(damping > 0.0) || damping > 1.0)
    throw std::invalid_argument("amp_iterate: damping must be in (0, 1]");
  if (!(prior_var > 0.0)) throw std::invalid_argument("amp_iterate: prior_var must be > 0");

  const bool first = st.iteration == 0;
  AmpState nx;
  nx.iteration = st.iteration + 1;

  // transform variances and plug-in estimates (Onsager-corrected)
  nx.p_var.noalias() = st.u_var * train_abs2;
  nx.p_hat.noalias() = st.u_hat * train;
  for (Eigen::Index t = 0; t < tau; ++t) {
    for (Eigen::Index r = 0; r < n; ++r) {
      double& pv = nx.p_var(r, t);
      pv = clamp_var(pv);
      nx.p_hat(r, t) -= st.s_hat(r, t) * pv;
    }
  }

  // posterior transform moments
  nx.z_hat.resize(n, tau);
  nx.z_var.resize(n, tau);
  for (Eigen::Index t = 0; t < tau; ++t)
    for (Eigen::Index r = 0; r < n; ++r)
      zden(r, t, nx.p_hat(r, t), nx.p_var(r, t), nx.z_hat(r, t), nx.z_var(r, t));

  // scaled residual and inverse-residual variance
  nx.s_hat.resize(n, tau);
  nx.s_var.resize(n, tau);
  int clamps = 0;
  for (Eigen::Index t = 0; t < tau; ++t) {
    for (Eigen::Index r = 0; r < n; ++r) {
      const double pv = nx.p_var(r, t);
      double sv = (1.0 - nx.z_var(r, t) / pv) / pv;
      if (sv < 0.0) {
        sv = 0.0;
        ++clamps;
      }
      nx.s_var(r, t) = sv;
      nx.s_hat(r, t) = (nx.z_hat(r, t) - nx.p_hat(r, t)) / pv;
    }
  }
  if (s_var_clamps) *s_var_clamps += clamps;
  if (!first) {
    nx.s_hat = damping * nx.s_hat + (1.0 - damping) * st.s_hat;
    nx.s_var = damping * nx.s_var + (1.0 - damping) * st.s_var;
  }

  // channel pseudo-observations
  nx.q_var.noalias() = nx.s_var * train_abs2.transpose();
  nx.q_hat.noalias() = nx.s_hat * train.adjoint();
  for (Eigen::Index c = 0; c < m; ++c) {
    for (Eigen::Index r = 0; r < n; ++r) {
      const double qv = clamp_var(1.0 / std::max(nx.q_var(r, c), 1.0 / kVarMax));
      nx.q_var(r, c) = qv;
      nx.q_hat(r, c) = st.u_hat(r, c) + qv * nx.q_hat(r, c);
    }
  }

  // channel posterior under the zero-mean Gaussian prior
  nx.u_hat.resize(n, m);
  nx.u_var.resize(n, m);
  for (Eigen::Index c = 0; c < m; ++c) {
    for (Eigen::Index r = 0; r < n; ++r) {
      const ComplexPosterior post =
          gaussian_prior_denoiser(nx.q_hat(r, c), nx.q_var(r, c), prior_var);
      nx.u_hat(r, c) = post.mean;
      nx.u_var(r, c) = post.variance;
    }
  }
  nx.u_hat = damping * nx.u_hat + (1.0 - damping) * st.u_hat;
  nx.u_var = damping * nx.u_var + (1.0 - damping) * st.u_var;

  if (op_count) *op_count += 4ull * n * m * tau;
  if (!state_finite(nx))
    throw amp_numerical_failure("amp_iterate: non-finite state", nx.iteration);
  return nx;
}

template <class ZDenoiser>
AmpReport run_impl(Eigen::Index n, const ZDenoiser& zden, const TrainingMatrix& training,
                   double prior_var, const AmpOptions& opts) {
  if (opts.max_iterations < 1)
    throw std::invalid_argument("amp_run: max_iterations must be >= 1");
  if (!(opts.stop_tol >= 0.0)) throw std::invalid_argument("amp_run: stop_tol must be >= 0");

  const MatrixXd train_abs2 = training.E.cwiseAbs2();
  AmpState state = amp_init(static_cast<int>(n), static_cast<int>(training.E.rows()),
                            static_cast<int>(training.E.cols()));
  AmpReport report;
  for (int i = 1; i <= opts.max_iterations; ++i) {
    const MatrixXcd prev = state.u_hat;
    state = iterate_impl(state, training.E, train_abs2, zden, prior_var, opts.damping,
                         &report.op_count, &report.s_var_clamp_count);
    const double num = (state.u_hat - prev).norm();
    const double den = state.u_hat.norm();
    const double residual =
        den > 0.0 ? num / den : (num > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    report.per_iteration_residual.push_back(residual);
    report.iterations_run = i;
    if (opts.observer) opts.observer(i, state.u_hat, residual);
    if (residual < opts.stop_tol) break;
  }
  report.u_hat_final = std::move(state.u_hat);
  return report;
}

}  // namespace

AmpState amp_init(int num_bs, int num_ris, int seq_len) {
  if (num_bs < 1 || num_ris < 1 || seq_len < 1)
    throw std::invalid_argument("amp_init: dimensions must be positive");
  AmpState s;
  s.u_hat = MatrixXcd::Zero(num_bs, num_ris);
  s.u_var = MatrixXd::Ones(num_bs, num_ris);
  s.p_hat = MatrixXcd::Zero(num_bs, seq_len);
  s.p_var = MatrixXd::Ones(num_bs, seq_len);
  s.z_hat = MatrixXcd::Zero(num_bs, seq_len);
  s.z_var = MatrixXd::Ones(num_bs, seq_len);
  s.s_hat = MatrixXcd::Zero(num_bs, seq_len);
  s.s_var = MatrixXd::Zero(num_bs, seq_len);
  s.q_hat = MatrixXcd::Zero(num_bs, num_ris);
  s.q_var = MatrixXd::Ones(num_bs, num_ris);
  s.iteration = 0;
  return s;
}

AmpState amp_iterate(const AmpState& state, const QuantizedMatrix& observed,
                     const TrainingMatrix& training, double noise_var, double prior_var,
                     double damping, std::uint64_t* op_count, int* s_var_clamps) {
  if (observed.values.rows() != state.u_hat.rows() ||
      observed.values.cols() != training.E.cols())
    throw std::invalid_argument("amp_iterate: observation dimension mismatch");
  return iterate_impl(state, training.E, training.E.cwiseAbs2(),
                      QuantizedDenoiser{&observed, noise_var}, prior_var, damping, op_count,
                      s_var_clamps);
}

AmpState amp_iterate(const AmpState& state, const MatrixXcd& observed,
                     const TrainingMatrix& training, double noise_var, double prior_var,
                     double damping, std::uint64_t* op_count, int* s_var_clamps) {
  if (observed.rows() != state.u_hat.rows() || observed.cols() != training.E.cols())
    throw std::invalid_argument("amp_iterate: observation dimension mismatch");
  return iterate_impl(state, training.E, training.E.cwiseAbs2(),
                      PassthroughDenoiser{&observed, noise_var}, prior_var, damping, op_count,
                      s_var_clamps);
}

AmpReport amp_run(const QuantizedMatrix& observed, const TrainingMatrix& training,
                  double noise_var, double prior_var, const AmpOptions& opts) {
  if (observed.values.cols() != training.E.cols())
    throw std::invalid_argument("amp_run: observation/training column mismatch");
  return run_impl(observed.values.rows(), QuantizedDenoiser{&observed, noise_var}, training,
                  prior_var, opts);
}

AmpReport amp_run(const MatrixXcd& observed, const TrainingMatrix& training, double noise_var,
                  double prior_var, const AmpOptions& opts) {
  if (observed.cols() != training.E.cols())
    throw std::invalid_argument("amp_run: observation/training column mismatch");
  return run_impl(observed.rows(), PassthroughDenoiser{&observed, noise_var}, training, prior_var,
                  opts);
}

}  // namespace risamp
