#include "risamp/denoisers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "risamp/normal.hpp"

namespace risamp {

namespace {

constexpr double kVarFloor = 1e-300;

// Ratios over a standardized cell with edge arguments eta1 >= eta2
// (eta2 may be -inf), Z = Phi(eta1) - Phi(eta2):
//   r1 = (pdf(eta1) - pdf(eta2)) / Z
//   r2 = (eta1*pdf(eta1) - eta2*pdf(eta2)) / Z
// When both arguments sit on one side of zero the difference of CDFs is
// evaluated on the complementary side through Mills ratios, so cells deep
// in a tail lose no precision and never divide by an underflowed Z.
struct CellRatios {
  double r1;
  double r2;
};

CellRatios cell_ratios(double eta1, double eta2) {
  const double inf = std::numeric_limits<double>::infinity();
  if (eta1 <= 0.0) {
    // both edges at or left of zero; work with u = -eta1 <= w = -eta2
    const double u = -eta1;
    const double w = -eta2;
    const double mu = mills_ratio(u);
    if (w == inf) {
      return {1.0 / mu, -u / mu};
    }
    const double d = std::exp(0.5 * (u - w) * (u + w));  // pdf(w)/pdf(u) in [0,1]
    const double den = mu - d * mills_ratio(w);
    return {-std::expm1(0.5 * (u - w) * (u + w)) / den, (w * d - u) / den};
  }
  if (eta2 >= 0.0) {
    // both edges at or right of zero; u = eta2 <= w = eta1
    const double u = eta2;
    const double w = eta1;
    const double d = std::exp(0.5 * (u - w) * (u + w));
    const double den = mills_ratio(u) - d * mills_ratio(w);
    return {std::expm1(0.5 * (u - w) * (u + w)) / den, (w * d - u) / den};
  }
  // cell straddles zero: Z >= Phi(eta1) - 0.5, no cancellation
  const double z = (eta2 == -inf) ? normal_cdf(eta1) : normal_cdf(eta1) - normal_cdf(eta2);
  const double p1 = normal_pdf(eta1);
  const double p2 = (eta2 == -inf) ? 0.0 : normal_pdf(eta2);
  const double e2p2 = (eta2 == -inf) ? 0.0 : eta2 * p2;
  return {(p1 - p2) / z, (eta1 * p1 - e2p2) / z};
}

}  // namespace

PosteriorMoments quantized_posterior(const GaussianBelief& belief, double observed_level,
                                     const BinBounds& bin, double noise_var) {
  if (!(noise_var > 0.0)) throw std::invalid_argument("quantized_posterior: noise_var must be > 0");
  if (!(belief.variance >= 0.0) || !std::isfinite(belief.variance))
    throw std::invalid_argument("quantized_posterior: belief variance must be finite and >= 0");
  if (!(bin.lower < bin.upper))
    throw std::invalid_argument("quantized_posterior: empty quantizer cell");

  const double vr = belief.variance;    // prior variance of this real dimension
  const double sr = 0.5 * noise_var;    // noise variance in this real dimension
  const double denom = std::sqrt(vr + sr);
  const double sgn = observed_level > 0.0 ? 1.0 : -1.0;

  // edge magnitudes; the cell never straddles zero for a mid-rise grid but
  // arbitrary (lower, upper] cells are accepted
  const double lo_mag = std::min(std::abs(bin.lower), std::abs(bin.upper));
  const double hi_mag = std::max(std::abs(bin.lower), std::abs(bin.upper));
  const double eta1 = (sgn * belief.mean - lo_mag) / denom;
  const double eta2 = std::isinf(hi_mag) ? -std::numeric_limits<double>::infinity()
                                         : (sgn * belief.mean - hi_mag) / denom;

  const CellRatios rr = cell_ratios(eta1, eta2);

  PosteriorMoments post;
  post.mean = belief.mean + sgn * (vr / denom) * rr.r1;
  const double shrink = (vr / denom) * (vr / denom) * (rr.r2 + rr.r1 * rr.r1);
  post.variance = std::max(vr - shrink, kVarFloor);
  // posterior contraction: the cell likelihood is log-concave
  post.variance = std::min(post.variance, vr > 0.0 ? vr : kVarFloor);
  return post;
}

PosteriorMoments unquantized_posterior(const GaussianBelief& belief, double observed,
                                       double noise_var) {
  if (!(noise_var > 0.0))
    throw std::invalid_argument("unquantized_posterior: noise_var must be > 0");
  const double vr = belief.variance;
  const double sr = 0.5 * noise_var;
  const double gain = vr / (vr + sr);
  return {belief.mean + gain * (observed - belief.mean), vr * sr / (vr + sr)};
}

ComplexPosterior gaussian_prior_denoiser(Complex pseudo_obs, double pseudo_var,
                                         double prior_var) {
  if (!(pseudo_var > 0.0) || !(prior_var > 0.0))
    throw std::invalid_argument("gaussian_prior_denoiser: variances must be > 0");
  const double gain = prior_var / (prior_var + pseudo_var);
  return {gain * pseudo_obs, gain * pseudo_var};
}

}  // namespace risamp
