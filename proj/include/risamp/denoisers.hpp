#pragma once

#include "risamp/common.hpp"
#include "risamp/quantizer.hpp"

namespace risamp {

/// Gaussian belief about one real dimension of a complex quantity: for a
/// complex belief CN(p, v) the real and imaginary parts each carry
/// {Re/Im(p), v/2}.
struct GaussianBelief {
  double mean = 0.0;
  double variance = 1.0;
};

struct PosteriorMoments {
  double mean = 0.0;
  double variance = 0.0;
};

/// Posterior mean/variance of one real dimension of z given that its noisy
/// version fell into the quantizer cell `bin`. `observed_level` is the
/// reconstruction level reported by the quantizer (its sign selects the
/// cell side); `noise_var` is the complex noise variance, of which half
/// sits in this dimension. Stable for cells arbitrarily deep in the tails.
PosteriorMoments quantized_posterior(const GaussianBelief& belief, double observed_level,
                                     const BinBounds& bin, double noise_var);

/// Conjugate Gaussian update for an unquantized real observation
/// y = z + n, n ~ N(0, noise_var / 2); the infinite-resolution path.
PosteriorMoments unquantized_posterior(const GaussianBelief& belief, double observed,
                                       double noise_var);

struct ComplexPosterior {
  Complex mean{0.0, 0.0};
  double variance = 0.0;
};

/// Exact MMSE shrinkage for a zero-mean complex Gaussian prior CN(0,
/// prior_var) observed in complex Gaussian pseudo-noise of variance
/// pseudo_var.
ComplexPosterior gaussian_prior_denoiser(Complex pseudo_obs, double pseudo_var, double prior_var);

}  // namespace risamp
