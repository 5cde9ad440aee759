#include "uwloc/channels.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "uwloc/special.hpp"

namespace uwloc {

namespace {
constexpr double kPi = 3.141592653589793;
constexpr double kLn10 = 2.302585092994046;

void require_positive(double r) {
  if (!(r > 0.0))
    throw std::invalid_argument("distance must be positive, got " +
                                std::to_string(r));
}
}  // namespace

double mi_skin_loss(const MiParams& p, double r) {
  // skin depth sqrt(2/(omega*mu*sigma)); sigma -> 0 gives depth -> inf, G -> 1.
  const double depth = std::sqrt(2.0 / (p.omega * p.mu * p.sigma));
  return std::exp(-r / depth);
}

double mi_received_power(const MiParams& p, double r) {
  require_positive(r);
  const double s = std::sin(p.theta_mn);
  const double coupling = p.omega * p.mu * p.p_t * p.z_r * p.z_t *
                          p.d_t * p.d_t * p.d_t * p.d_r * p.d_r * p.d_r * s * s;
  const double g = mi_skin_loss(p, r);
  return coupling / (16.0 * p.d0_t * p.d0_r * r * r) * g * g;
}

double mi_invert_range(const MiParams& p, double observed_power) {
  const double p_near = mi_received_power(p, p.r_min);
  const double p_far = mi_received_power(p, p.r_max);
  if (!(observed_power <= p_near && observed_power >= p_far))
    throw std::out_of_range(
        "mi_invert_range: power " + std::to_string(observed_power) +
        " W outside achievable bracket [" + std::to_string(p_far) + ", " +
        std::to_string(p_near) + "]");
  double lo = p.r_min, hi = p.r_max;
  while (hi - lo > 1e-13 * std::fmax(1.0, lo)) {
    const double mid = 0.5 * (lo + hi);
    if (mi_received_power(p, mid) >= observed_power) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

double thorp_absorption(double f_khz) {
  if (f_khz < 0.0)
    throw std::invalid_argument("thorp_absorption: negative frequency");
  const double f2 = f_khz * f_khz;
  return 0.11 * f2 / (1.0 + f2) + 44.0 * f2 / (4100.0 + f2);
}

double acoustic_path_loss(const AcousticParams& p, double r) {
  require_positive(r);
  return 20.0 * std::log10(r) + 1e-3 * thorp_absorption(p.f) * r;
}

double acoustic_invert_range(const AcousticParams& p, double loss_db) {
  // loss = (1/a) ln r + b r with a = ln10/20 and b = 1e-3*phi(f), so
  // a b r e^{a b r} = a b e^{a loss} and r = W0(a b e^{a loss}) / (a b).
  const double a = kLn10 / 20.0;
  const double b = 1e-3 * thorp_absorption(p.f);
  double r;
  if (b == 0.0) {
    r = std::pow(10.0, loss_db / 20.0);  // pure spherical spreading
  } else {
    const double arg = a * b * std::exp(a * loss_db);
    if (!std::isfinite(arg))
      throw std::out_of_range("acoustic_invert_range: loss " +
                              std::to_string(loss_db) + " dB overflows");
    r = lambert_w0(arg) / (a * b);
  }
  if (!(r >= p.r_min && r <= p.r_max))
    throw std::out_of_range("acoustic_invert_range: result " +
                            std::to_string(r) + " m outside bracket");
  return r;
}

double optical_loss_factor(const OpticalParams& p, double r) {
  if (r < 0.0) throw std::invalid_argument("optical_loss_factor: negative r");
  return std::exp(-(p.s_lambda + p.a_lambda) * r);
}

double optical_received_power(const OpticalParams& p, double r) {
  require_positive(r);
  const double solid = 1.0 - std::cos(p.theta0);
  if (solid <= 0.0)
    throw std::invalid_argument("optical_received_power: zero divergence angle");
  return p.p_t * p.eta_m * p.eta_n * optical_loss_factor(p, r) * p.area_n *
         std::cos(p.theta) / (2.0 * kPi * r * r * solid);
}

double optical_photon_count(const OpticalParams& p, double p_r) {
  if (p_r < 0.0) throw std::invalid_argument("optical_photon_count: negative power");
  return p_r * p.eta_n * p.wavelength /
         (p.t_slot * p.data_rate * p.planck * p.c_water);
}

double optical_ber(const OpticalParams& p, double d_n) {
  if (d_n < 0.0) throw std::invalid_argument("optical_ber: negative photon count");
  const double base = p.dark_count + p.background;
  return 0.5 * std::erfc(std::sqrt(p.t_slot / 2.0) *
                         (std::sqrt(base + d_n) - std::sqrt(base)));
}

double optical_required_photons(const OpticalParams& p) {
  if (!(p.ber_target > 0.0 && p.ber_target < 0.5))
    throw std::invalid_argument("optical_required_photons: ber_target outside (0, 0.5)");
  const double base = p.dark_count + p.background;
  const double s = std::sqrt(base) +
                   std::sqrt(2.0 / p.t_slot) * erfc_inv(2.0 * p.ber_target);
  return s * s - base;
}

double optical_invert_power(const OpticalParams& p, double p_r) {
  if (!(p_r > 0.0))
    throw std::invalid_argument("optical_invert_power: power must be positive");
  // p_r = kappa e^{-l r} / r^2 inverts to r = (2/l) W0((l/2) sqrt(kappa/p_r)).
  const double l = p.s_lambda + p.a_lambda;
  const double solid = 1.0 - std::cos(p.theta0);
  if (solid <= 0.0)
    throw std::invalid_argument("optical_invert_power: zero divergence angle");
  const double kappa =
      p.p_t * p.eta_m * p.eta_n * p.area_n * std::cos(p.theta) / (2.0 * kPi * solid);
  const double r = 2.0 / l * lambert_w0(l / 2.0 * std::sqrt(kappa / p_r));
  if (!(r >= p.r_min && r <= p.r_max))
    throw std::out_of_range("optical_invert_power: result " + std::to_string(r) +
                            " m outside bracket");
  return r;
}

double optical_invert_range(const OpticalParams& p) {
  const double needed = optical_required_photons(p);
  // Power that delivers exactly the required photon count.
  const double p_r = needed * p.t_slot * p.data_rate * p.planck * p.c_water /
                     (p.eta_n * p.wavelength);
  return optical_invert_power(p, p_r);
}

double shadowed_power_sample(double true_power_db, const ShadowingModel& model,
                             std::mt19937_64& rng) {
  if (model.std_dev < 0.0 || model.mean_estimator_count < 1)
    throw std::invalid_argument("shadowed_power_sample: invalid model");
  if (model.std_dev == 0.0) return true_power_db;
  std::normal_distribution<double> noise(0.0, model.std_dev);
  double sum = 0.0;
  for (int i = 0; i < model.mean_estimator_count; ++i)
    sum += true_power_db + noise(rng);
  return sum / model.mean_estimator_count;
}

}  // namespace uwloc
