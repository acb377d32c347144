#include "risamp/quantizer.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

namespace risamp {

namespace {

constexpr int kMaxBits = 8;

void check_bits(int bits) {
  if (bits < 1 || bits > kMaxBits)
    throw std::invalid_argument("quantizer: bits must be in [1, " + std::to_string(kMaxBits) +
                                "], got " + std::to_string(bits));
}

double gauss_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * kPi); }

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(a, m, fa, flm, fm);
  const double right = simpson(m, b, fm, frm, fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  return adaptive_simpson(f, a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), tol, 48);
}

// Minimizes a unimodal function on [a, b] by golden-section search.
double golden_section_min(const std::function<double(double)>& f, double a, double b,
                          double xtol) {
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > xtol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

struct StepTable {
  std::array<double, kMaxBits + 1> step{};
  std::array<double, kMaxBits + 1> eta{};
  StepTable() {
    for (int b = 1; b <= kMaxBits; ++b) {
      step[b] = golden_section_min([b](double d) { return mid_rise_distortion(b, d); }, 1e-3, 4.0,
                                   1e-6);
      eta[b] = mid_rise_distortion(b, step[b]);
    }
  }
};

const StepTable& step_table() {
  static const StepTable table;
  return table;
}

// Bin of a real value; the cell is (lower, upper] so threshold hits round down.
inline int bin_of(double x, double scale, int half_levels) {
  const double t = std::ceil(x / scale);
  if (t < 1.0 - half_levels) return 1;
  if (t > half_levels) return 2 * half_levels;
  return half_levels + static_cast<int>(t);
}

inline double level_of(int bin, double scale, int half_levels) {
  return (bin - half_levels - 0.5) * scale;
}

}  // namespace

double mid_rise_distortion(int bits, double step) {
  check_bits(bits);
  if (!(step > 0.0)) throw std::invalid_argument("mid_rise_distortion: step must be positive");
  const int half = 1 << (bits - 1);
  double total = 0.0;
  for (int k = 1; k <= half; ++k) {
    const double lo = (k - 1) * step;
    const double level = (k - 0.5) * step;
    // last cell is unbounded; the integrand is negligible 12 sigmas out
    const double hi = (k < half) ? k * step : std::max(lo, 8.0) + 12.0;
    total += integrate([level](double x) { return (x - level) * (x - level) * gauss_pdf(x); }, lo,
                       hi, 1e-13);
  }
  return 2.0 * total;
}

double optimal_stepsize(int bits) {
  check_bits(bits);
  return step_table().step[bits];
}

double distortion_factor(int bits) {
  check_bits(bits);
  return step_table().eta[bits];
}

QuantizerSpec calibrate(int bits, double base_step, const MatrixXcd& samples) {
  check_bits(bits);
  if (!(base_step > 0.0)) throw std::invalid_argument("calibrate: base_step must be positive");
  if (samples.size() == 0) throw std::invalid_argument("calibrate: samples must be nonempty");
  const double power_re = samples.real().array().square().mean();
  const double power_im = samples.imag().array().square().mean();
  if (power_re <= 0.0 || power_im <= 0.0)
    throw std::domain_error("calibrate: degenerate sample power (all-zero part)");

  QuantizerSpec spec;
  spec.bits = bits;
  spec.base_step = base_step;
  spec.scale_re = std::sqrt(power_re) * base_step;
  spec.scale_im = std::sqrt(power_im) * base_step;
  const int half = 1 << (bits - 1);
  spec.thresholds.resize(2 * half - 1);
  for (int b = 1; b <= 2 * half - 1; ++b) spec.thresholds[b - 1] = (b - half) * base_step;
  spec.eta_b = distortion_factor(bits);
  return spec;
}

QuantizerSpec calibrate(int bits, const MatrixXcd& samples) {
  return calibrate(bits, optimal_stepsize(bits), samples);
}

QuantizedMatrix quantize(const MatrixXcd& y, const QuantizerSpec& spec) {
  if (spec.bits < 1 || !(spec.scale_re > 0.0) || !(spec.scale_im > 0.0))
    throw std::invalid_argument("quantize: spec is not calibrated");
  const int half = spec.levels() / 2;
  QuantizedMatrix out;
  out.spec = spec;
  out.values.resize(y.rows(), y.cols());
  out.bin_index_re.resize(y.rows(), y.cols());
  out.bin_index_im.resize(y.rows(), y.cols());
  for (Eigen::Index c = 0; c < y.cols(); ++c) {
    for (Eigen::Index r = 0; r < y.rows(); ++r) {
      const int bre = bin_of(y(r, c).real(), spec.scale_re, half);
      const int bim = bin_of(y(r, c).imag(), spec.scale_im, half);
      out.bin_index_re(r, c) = bre;
      out.bin_index_im(r, c) = bim;
      out.values(r, c) = {level_of(bre, spec.scale_re, half), level_of(bim, spec.scale_im, half)};
    }
  }
  return out;
}

BinBounds bin_bounds(int bin_index, const QuantizerSpec& spec, Part part) {
  const int levels = spec.levels();
  if (bin_index < 1 || bin_index > levels)
    throw std::out_of_range("bin_bounds: bin index " + std::to_string(bin_index) +
                            " outside [1, " + std::to_string(levels) + "]");
  const double scale = (part == Part::Re) ? spec.scale_re : spec.scale_im;
  const int half = levels / 2;
  BinBounds b;
  b.lower = (bin_index == 1) ? -std::numeric_limits<double>::infinity()
                             : (bin_index - 1 - half) * scale;
  b.upper = (bin_index == levels) ? std::numeric_limits<double>::infinity()
                                  : (bin_index - half) * scale;
  return b;
}

}  // namespace risamp
