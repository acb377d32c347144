#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "risamp/common.hpp"
#include "risamp/quantizer.hpp"
#include "risamp/training.hpp"

namespace risamp {

/// All per-iteration message quantities. Complex fields carry the estimates,
/// real fields the corresponding (complex, total) variances.
struct AmpState {
  MatrixXcd u_hat;  // N x M channel estimate
  MatrixXd u_var;
  MatrixXcd p_hat;  // N x tau plug-in transform estimate
  MatrixXd p_var;
  MatrixXcd z_hat;  // N x tau posterior transform estimate
  MatrixXd z_var;
  MatrixXcd s_hat;  // N x tau scaled residual
  MatrixXd s_var;
  MatrixXcd q_hat;  // N x M pseudo-observation of the channel
  MatrixXd q_var;
  int iteration = 0;
};

struct AmpOptions {
  int max_iterations = 100;
  double damping = 0.7;   // in (0, 1]; 1 = undamped
  double stop_tol = 1e-6; // relative change of the channel estimate
  /// Optional per-iteration observer: (iteration, current estimate, residual).
  std::function<void(int, const MatrixXcd&, double)> observer;
};

struct AmpReport {
  MatrixXcd u_hat_final;
  int iterations_run = 0;
  std::vector<double> per_iteration_residual;
  std::uint64_t op_count = 0;       // multiply-accumulate tally of the matrix products
  int s_var_clamp_count = 0;        // negative inverse-residual variances clamped to 0
};

/// Raised when the iteration produces non-finite state; carries the
/// 1-based iteration index at which it happened.
class amp_numerical_failure : public std::runtime_error {
 public:
  amp_numerical_failure(const std::string& what, int iter)
      : std::runtime_error(what), iteration(iter) {}
  int iteration;
};

/// Initial state: residuals and estimates zero, variances one.
AmpState amp_init(int num_bs, int num_ris, int seq_len);

/// One full iteration against quantized observations. Posterior moments of
/// the transform come from the quantized-cell denoiser; channel posteriors
/// from the Gaussian-prior denoiser. New u/s quantities are damped against
/// the previous state by `damping`.
AmpState amp_iterate(const AmpState& state, const QuantizedMatrix& observed,
                     const TrainingMatrix& training, double noise_var, double prior_var,
                     double damping, std::uint64_t* op_count = nullptr,
                     int* s_var_clamps = nullptr);

/// Infinite-resolution variant: the transform denoiser is the conjugate
/// Gaussian update on the unquantized observations.
AmpState amp_iterate(const AmpState& state, const MatrixXcd& observed,
                     const TrainingMatrix& training, double noise_var, double prior_var,
                     double damping, std::uint64_t* op_count = nullptr,
                     int* s_var_clamps = nullptr);

AmpReport amp_run(const QuantizedMatrix& observed, const TrainingMatrix& training,
                  double noise_var, double prior_var, const AmpOptions& opts);

AmpReport amp_run(const MatrixXcd& observed, const TrainingMatrix& training, double noise_var,
                  double prior_var, const AmpOptions& opts);

}  // namespace risamp
