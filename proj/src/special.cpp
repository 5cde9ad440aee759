#include "uwloc/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace uwloc {

namespace {

// Seed for Halley iteration, accurate enough that a handful of cubic steps
// reaches machine precision on the whole domain.
double w0_seed(double x) {
  if (x > std::exp(1.0)) {
    const double l1 = std::log(x);
    const double l2 = std::log(l1);
    return l1 - l2 + l2 / l1;
  }
  if (x < -0.25) {
    // Branch-point expansion in p = sqrt(2(e*x + 1)).
    const double p = std::sqrt(2.0 * (std::exp(1.0) * x + 1.0));
    return -1.0 + p - p * p / 3.0;
  }
  if (std::fabs(x) < 0.5) return x * (1.0 - x);
  return std::log1p(x);
}

}  // namespace

double lambert_w0(double x) {
  const double branch = -std::exp(-1.0);
  if (x < branch) {
    if (x >= branch - 1e-12) return -1.0;
    throw std::domain_error("lambert_w0: x = " + std::to_string(x) +
                            " below branch point -1/e");
  }
  if (x - branch <= 1e-12) return -1.0;
  if (x == 0.0) return 0.0;

  double w = w0_seed(x);
  for (int i = 0; i < 64; ++i) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    if (std::fabs(f) <= 1e-14 * std::fmax(1.0, std::fabs(x))) break;
    // Halley step: cubic convergence keeps the loop count low even from
    // the coarse series seed.
    const double d1 = ew * (w + 1.0);
    const double step = f / (d1 - (w + 2.0) * f / (2.0 * w + 2.0));
    w -= step;
    if (std::fabs(step) <= std::numeric_limits<double>::epsilon() * std::fabs(w)) break;
  }

  const double resid = std::fabs(w * std::exp(w) - x);
  if (resid > 1e-12 * std::fmax(1.0, std::fabs(x)))
    throw std::runtime_error("lambert_w0: failed to converge at x = " +
                             std::to_string(x));
  return w;
}

double erfc_inv(double y) {
  if (!(y > 0.0 && y < 2.0))
    throw std::domain_error("erfc_inv: y = " + std::to_string(y) +
                            " outside (0, 2)");
  if (y == 1.0) return 0.0;
  // erfc is strictly decreasing; erfc(27.3) underflows double, so the root of
  // erfc(w) = y for any representable y lies inside this bracket.
  double lo = -27.5, hi = 27.5;
  double w = (y < 1.0) ? 1.0 : -1.0;
  const double sqrt_pi = std::sqrt(std::acos(-1.0));
  for (int i = 0; i < 200; ++i) {
    const double f = std::erfc(w) - y;
    if (std::fabs(f) <= 1e-13 * y) break;
    if (f > 0.0) lo = w; else hi = w;  // erfc(w) too big means w too small
    const double deriv = -2.0 / sqrt_pi * std::exp(-w * w);
    double next = w - f / deriv;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == w) break;
    w = next;
  }
  if (std::fabs(std::erfc(w) - y) > 1e-12 * y)
    throw std::runtime_error("erfc_inv: failed to converge at y = " +
                             std::to_string(y));
  return w;
}

}  // namespace uwloc
