#include "risamp/normal.hpp"

#include <cmath>

#include "risamp/common.hpp"

namespace risamp {

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * kPi);
}  // namespace

double normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double normal_cdf(double x) { return 0.5 * std::erfc(-x * kInvSqrt2); }

double normal_cdf_c(double x) { return 0.5 * std::erfc(x * kInvSqrt2); }

double mills_ratio(double x) {
  if (x < 8.0) {
    // pdf(8) ~ 5e-15, far from underflow; erfc keeps relative accuracy
    return normal_cdf_c(x) / normal_pdf(x);
  }
  // Continued fraction 1/(x + 1/(x + 2/(x + 3/(...)))), evaluated by
  // backward recurrence; depth 64 is past full precision for x >= 8.
  double t = 0.0;
  for (int n = 64; n >= 1; --n) t = n / (x + t);
  return 1.0 / (x + t);
}

}  // namespace risamp
