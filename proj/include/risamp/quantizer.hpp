#pragma once

#include <vector>

#include "risamp/common.hpp"

namespace risamp {

/// B-bit uniform mid-rise quantizer with AGC power scaling. The real and
/// imaginary parts of each sample are quantized independently; each real
/// dimension has 2^B reconstruction levels at odd multiples of half the
/// scaled step, and decision thresholds at integer multiples of it.
struct QuantizerSpec {
  int bits = 0;                    // B >= 1
  double base_step = 0.0;          // stepsize at unit input variance
  double scale_re = 0.0;           // AGC-scaled step applied to real parts
  double scale_im = 0.0;           // AGC-scaled step applied to imaginary parts
  std::vector<double> thresholds;  // normalized thresholds, size 2^B - 1
  double eta_b = 0.0;              // quantization NMSE at base_step, Gaussian input

  int levels() const { return 1 << bits; }
};

struct QuantizedMatrix {
  MatrixXcd values;      // reconstruction levels
  QuantizerSpec spec;
  MatrixXi bin_index_re;  // 1-based bin of each real part, in [1, 2^B]
  MatrixXi bin_index_im;
};

enum class Part { Re, Im };

/// Half-open quantizer cell (lower, upper]; outer cells extend to +/-inf.
struct BinBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Mean squared error E[(Q(x) - x)^2] of the B-bit mid-rise quantizer with
/// stepsize `step` for x ~ N(0, 1), evaluated by adaptive quadrature.
double mid_rise_distortion(int bits, double step);

/// Stepsize minimizing mid_rise_distortion for a unit-variance Gaussian
/// input, found by golden-section search. Cached after the first call.
/// Valid for 1 <= bits <= 8.
double optimal_stepsize(int bits);

/// Quantization NMSE eta_b = E[|Q(xi) - xi|^2] / E[|xi|^2] for a circularly
/// symmetric Gaussian input at the optimal stepsize. Equals the per-real-
/// dimension distortion at unit variance by symmetry.
double distortion_factor(int bits);

/// Builds a calibrated spec: the applied step per real dimension is the
/// measured RMS of that dimension times base_step. Throws std::domain_error
/// if either dimension of `samples` has zero power.
QuantizerSpec calibrate(int bits, double base_step, const MatrixXcd& samples);
QuantizerSpec calibrate(int bits, const MatrixXcd& samples);

QuantizedMatrix quantize(const MatrixXcd& y, const QuantizerSpec& spec);

/// Decision interval of a bin as actually applied by quantize:
/// quantize lands a real part in bin b iff lower < x <= upper.
BinBounds bin_bounds(int bin_index, const QuantizerSpec& spec, Part part);

}  // namespace risamp
