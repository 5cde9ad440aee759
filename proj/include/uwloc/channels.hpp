#pragma once

#include <random>

namespace uwloc {

// Magnetic-induction link between a transmit and a receive coil.
// Conductivity defaults to seawater; 0.01 S/m models clean water.
struct MiParams {
  double omega = 2.0 * 3.141592653589793 * 500.0;  // carrier angular frequency (rad/s)
  double mu = 4.0e-7 * 3.141592653589793;          // water permeability (H/m)
  double sigma = 4.0;                              // conductivity (S/m)
  double p_t = 1.0;                                // transmit power (W)
  double z_t = 100.0, z_r = 100.0;                 // coil turn counts
  double d_t = 0.1, d_r = 0.1;                     // coil diameters (m)
  double d0_t = 1.0, d0_r = 1.0;                   // unit-length loop impedance (ohm/m)
  double theta_mn = 1.5707963267948966;            // coil axis angle (rad)
  double r_min = 1e-3, r_max = 100.0;              // inversion bracket (m)
};

struct AcousticParams {
  double f = 10.0;        // carrier frequency (kHz)
  double p_t = 0.0;       // transmit power reference (dB); carried, not used by the loss model
  double r_min = 0.1, r_max = 20000.0;
};

struct OpticalParams {
  double s_lambda = 0.037;        // scattering coefficient (1/m)
  double a_lambda = 0.114;        // absorption coefficient (1/m)
  double eta_m = 0.9, eta_n = 0.9;  // transmitter / receiver efficiency
  double area_n = 0.01;           // receiver aperture area (m^2)
  double theta = 0.0;             // trajectory angle (rad)
  double theta0 = 0.5235987755982988;  // divergence angle (rad)
  double p_t = 0.1;               // transmit power (W)
  double t_slot = 1.0;            // photon counting interval T (s)
  double data_rate = 1e6;         // D_r (bit/s)
  double planck = 6.62607015e-34; // h (J*s)
  double c_water = 2.25e8;        // light speed in water (m/s)
  double wavelength = 532e-9;     // lambda (m)
  double dark_count = 10.0;       // dark photons per interval
  double background = 10.0;       // background photons per interval
  double ber_target = 1e-4;       // target bit error rate in (0, 0.5)
  double r_min = 1e-3, r_max = 200.0;
};

// Log-normal shadowing applied to a power/loss observable in dB; the receiver
// averages mean_estimator_count repeated samples.
struct ShadowingModel {
  double std_dev = 0.0;          // phi (dB)
  int mean_estimator_count = 1;  // N
};

// Conductive-medium attenuation factor, exp(-r / skin_depth), in (0, 1].
double mi_skin_loss(const MiParams& p, double r);

// Received power of an MI link at range r (W). Strictly decreasing in r.
double mi_received_power(const MiParams& p, double r);

// Range from observed MI power by bisection on the monotone forward model.
// Round-trips to 1e-9 relative power. Throws std::out_of_range when the power
// is not achievable inside [r_min, r_max].
double mi_invert_range(const MiParams& p, double observed_power);

// Seawater absorption coefficient (dB/km) as a function of frequency in kHz.
double thorp_absorption(double f_khz);

// One-way acoustic transmission loss in dB: spherical spreading plus
// frequency-dependent absorption.
double acoustic_path_loss(const AcousticParams& p, double r);

// Closed-form inverse of acoustic_path_loss via the Lambert W function.
// Round-trips to well under 1e-6 dB.
double acoustic_invert_range(const AcousticParams& p, double loss_db);

// exp(-l * r) with loss coefficient l = s_lambda + a_lambda.
double optical_loss_factor(const OpticalParams& p, double r);

// Received optical power (W) over a line-of-sight link at range r.
double optical_received_power(const OpticalParams& p, double r);

// Photon count at the receiver for a given received power.
double optical_photon_count(const OpticalParams& p, double p_r);

// Bit error rate for d_n signal photons on top of dark and background counts.
double optical_ber(const OpticalParams& p, double d_n);

// Signal photons required to hit ber_target; inverse of optical_ber.
double optical_required_photons(const OpticalParams& p);

// Range at which the link delivers exactly p_r watts; closed form via
// Lambert W. Throws std::out_of_range outside [r_min, r_max].
double optical_invert_power(const OpticalParams& p, double p_r);

// Maximum range at which the link still meets ber_target.
double optical_invert_range(const OpticalParams& p);

// Mean of N independent shadowed samples of a true dB value.
double shadowed_power_sample(double true_power_db, const ShadowingModel& model,
                             std::mt19937_64& rng);

}  // namespace uwloc
