#pragma once

#include "risamp/common.hpp"
#include "risamp/training.hpp"

namespace risamp {

/// Linearized quantizer: output = gain * input + distortion noise that is
/// uncorrelated with the input.
struct BussgangModel {
  double gain = 1.0;           // 1 - eta_b
  double eff_noise_var = 0.0;  // per-entry variance of gain*W + W_q
  double eta_b = 0.0;
};

/// gain = 1 - eta_b; eff_noise_var = gain^2 * noise_var + eta_b * gain *
/// (signal-plus-noise power per entry).
BussgangModel make_bussgang(double eta_b, double noise_var, double obs_power);

/// Least-squares channel estimate from the (quantized) observations.
/// Solved by column-pivoted QR; throws std::runtime_error when the training
/// matrix is rank deficient.
MatrixXcd ls_estimate(const MatrixXcd& observed, const TrainingMatrix& training);

/// Ridge-regularized estimate built on the Bussgang linearization. The
/// regularized normal matrix is gain * E E^H + (gain * noise_var / prior_var
/// + eta_b * num_bs) * I.
MatrixXcd almmse_estimate(const MatrixXcd& observed, const TrainingMatrix& training,
                          const BussgangModel& model, double noise_var, double prior_var,
                          int num_bs);

}  // namespace risamp
