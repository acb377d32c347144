#pragma once

namespace risamp {

/// Standard normal density.
double normal_pdf(double x);

/// Standard normal CDF, evaluated through erfc so the lower tail keeps full
/// relative accuracy.
double normal_cdf(double x);

/// Upper tail 1 - CDF(x) with full relative accuracy in the right tail.
double normal_cdf_c(double x);

/// Mills ratio (1 - CDF(x)) / pdf(x). Uses the erfc form where both factors
/// are representable and switches to a continued fraction deep in the right
/// tail, where the direct ratio would lose precision or underflow.
double mills_ratio(double x);

}  // namespace risamp
