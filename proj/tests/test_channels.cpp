#include "uwloc/channels.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"

using namespace uwloc;

namespace {
// MI parameters used by the frozen-value oracle; sigma is negligible so the
// skin factor is 1 to machine precision.
MiParams oracle_mi() {
  MiParams p;
  p.omega = 1000.0;
  p.sigma = 1e-30;
  p.p_t = 2.0;
  p.z_t = 10.0;
  p.z_r = 20.0;
  p.d_t = 0.2;
  p.d_r = 0.3;
  p.d0_t = 2.0;
  p.d0_r = 5.0;
  return p;
}
}  // namespace

TEST_CASE("mi forward model frozen value and scaling") {
  MiParams p = oracle_mi();
  // omega*mu*p_t*z_r*z_t*d_t^3*d_r^3 / (16*d0_t*d0_r*r^2) at r = 7.
  CHECK(mi_received_power(p, 7.0) ==
        doctest::Approx(1.3848653330110108e-8).epsilon(1e-12));

  SUBCASE("zero axis angle kills the coupling") {
    p.theta_mn = 0.0;
    CHECK(mi_received_power(p, 3.0) == 0.0);
  }
  SUBCASE("inverse-square law when the skin factor is 1") {
    CHECK(mi_received_power(p, 4.0) / mi_received_power(p, 8.0) ==
          doctest::Approx(4.0).epsilon(1e-12));
  }
  SUBCASE("seawater attenuates more than clean water") {
    MiParams sea, clean;
    sea.sigma = 4.0;
    clean.sigma = 0.01;
    CHECK(mi_received_power(sea, 10.0) < mi_received_power(clean, 10.0));
  }
  SUBCASE("skin loss frozen value at defaults") {
    MiParams d;
    CHECK(std::sqrt(2.0 / (d.omega * d.mu * d.sigma)) ==
          doctest::Approx(11.253953951963828).epsilon(1e-12));
    CHECK(mi_skin_loss(d, 10.0) ==
          doctest::Approx(0.4112407014427743).epsilon(1e-12));
    CHECK(mi_skin_loss(d, 10.0) > 0.0);
    CHECK(mi_skin_loss(d, 10.0) <= 1.0);
  }
  CHECK_THROWS_AS((void)mi_received_power(p, 0.0), std::invalid_argument);
}

TEST_CASE("mi inversion round-trips the forward model") {
  MiParams p;  // defaults: seawater, 500 Hz
  for (double r : {0.05, 1.0, 5.0, 15.0, 29.9}) {
    const double est = mi_invert_range(p, mi_received_power(p, r));
    CHECK(std::fabs(est - r) <= 1e-6 * r);
  }
  SUBCASE("randomized parameter/distance pairs") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ur(0.01, 90.0);
    std::uniform_real_distribution<double> us(0.01, 4.0);
    for (int i = 0; i < 100; ++i) {
      MiParams q;
      q.sigma = us(rng);
      q.p_t = 0.5 + us(rng);
      const double r = ur(rng);
      const double est = mi_invert_range(q, mi_received_power(q, r));
      CHECK(std::fabs(est - r) <= 1e-6 * r);
    }
  }
  SUBCASE("unachievable power rejected") {
    CHECK_THROWS_AS((void)mi_invert_range(p, 1e9), std::out_of_range);
    CHECK_THROWS_AS((void)mi_invert_range(p, 0.0), std::out_of_range);
  }
  SUBCASE("forward model strictly decreasing") {
    double prev = mi_received_power(p, 0.01);
    for (double r = 0.5; r <= 99.0; r += 0.5) {
      const double v = mi_received_power(p, r);
      CHECK(v < prev);
      prev = v;
    }
  }
}

TEST_CASE("thorp absorption") {
  CHECK(thorp_absorption(0.0) == 0.0);
  CHECK(thorp_absorption(10.0) ==
        doctest::Approx(1.1565299387081567).epsilon(1e-14));
  CHECK(thorp_absorption(1e7) == doctest::Approx(44.11).epsilon(1e-9));
  CHECK_THROWS_AS((void)thorp_absorption(-1.0), std::invalid_argument);
}

TEST_CASE("acoustic path loss") {
  AcousticParams p;  // f = 10 kHz
  CHECK(acoustic_path_loss(p, 1.0) ==
        doctest::Approx(1e-3 * thorp_absorption(10.0)).epsilon(1e-14));
  CHECK(acoustic_path_loss(p, 100.0) ==
        doctest::Approx(40.11565299387082).epsilon(1e-14));
  double prev = acoustic_path_loss(p, 0.1);
  for (double r = 1.0; r <= 10000.0; r *= 1.3) {
    const double v = acoustic_path_loss(p, r);
    CHECK(v > prev);
    prev = v;
  }
  CHECK_THROWS_AS((void)acoustic_path_loss(p, -2.0), std::invalid_argument);
}

TEST_CASE("acoustic inversion") {
  AcousticParams p;
  SUBCASE("round trip in distance") {
    for (double r : {0.5, 50.0, 303.0, 1000.0, 9000.0}) {
      const double est = acoustic_invert_range(p, acoustic_path_loss(p, r));
      CHECK(std::fabs(est - r) <= 1e-9 * r);
    }
  }
  SUBCASE("round trip in loss stays under 1e-6 dB") {
    for (double loss = 0.0; loss <= 100.0; loss += 2.5) {
      const double est = acoustic_invert_range(p, loss);
      CHECK(std::fabs(acoustic_path_loss(p, est) - loss) <= 1e-6);
    }
  }
  SUBCASE("frozen value") {
    CHECK(acoustic_invert_range(p, 60.0) ==
          doctest::Approx(888.4336406489612).epsilon(1e-12));
  }
  SUBCASE("monotone in loss") {
    double prev = acoustic_invert_range(p, 1.0);
    for (double loss = 5.0; loss <= 100.0; loss += 5.0) {
      const double v = acoustic_invert_range(p, loss);
      CHECK(v > prev);
      prev = v;
    }
  }
  SUBCASE("zero absorption reduces to pure spreading") {
    AcousticParams q;
    q.f = 0.0;
    CHECK(acoustic_invert_range(q, 40.0) == doctest::Approx(100.0).epsilon(1e-12));
  }
}

TEST_CASE("optical loss factor") {
  OpticalParams p;
  CHECK(optical_loss_factor(p, 0.0) == 1.0);
  p.s_lambda = 0.06;
  p.a_lambda = 0.04;  // l = 0.1
  CHECK(optical_loss_factor(p, 10.0) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(optical_loss_factor(p, 7.0) * optical_loss_factor(p, 5.0) ==
        doctest::Approx(optical_loss_factor(p, 12.0)).epsilon(1e-12));
}

TEST_CASE("optical received power") {
  OpticalParams p;  // defaults: l = 0.151, theta = 0, theta0 = pi/6
  CHECK(optical_received_power(p, 20.0) ==
        doctest::Approx(1.1739601823779459e-7).epsilon(1e-12));
  SUBCASE("dead transmitter") {
    p.eta_m = 0.0;
    CHECK(optical_received_power(p, 5.0) == 0.0);
  }
  SUBCASE("inverse-square law without attenuation") {
    p.s_lambda = p.a_lambda = 0.0;
    CHECK(optical_received_power(p, 3.0) / optical_received_power(p, 6.0) ==
          doctest::Approx(4.0).epsilon(1e-12));
  }
  SUBCASE("degenerate divergence rejected") {
    p.theta0 = 0.0;
    CHECK_THROWS_AS((void)optical_received_power(p, 5.0), std::invalid_argument);
  }
  SUBCASE("strictly decreasing") {
    OpticalParams q;
    double prev = optical_received_power(q, 0.1);
    for (double r = 0.5; r <= 150.0; r += 0.7) {
      const double v = optical_received_power(q, r);
      CHECK(v < prev);
      prev = v;
    }
  }
}

TEST_CASE("optical photon count") {
  OpticalParams p;
  CHECK(optical_photon_count(p, 0.0) == 0.0);
  CHECK(optical_photon_count(p, 2e-7) ==
        doctest::Approx(2.0 * optical_photon_count(p, 1e-7)).epsilon(1e-14));
  CHECK(optical_photon_count(p, optical_received_power(p, 20.0)) ==
        doctest::Approx(377023.9691923982).epsilon(1e-12));
}

TEST_CASE("optical ber and required photons are inverses") {
  OpticalParams p;  // dark 10, background 10, T = 1, target 1e-4
  CHECK(optical_ber(p, 0.0) == doctest::Approx(0.5).epsilon(1e-14));
  double prev = optical_ber(p, 0.0);
  for (double d = 5.0; d <= 200.0; d += 5.0) {
    const double v = optical_ber(p, d);
    CHECK(v < prev);
    prev = v;
  }
  const double needed = optical_required_photons(p);
  CHECK(needed == doctest::Approx(47.09497830277617).epsilon(1e-10));
  CHECK(std::fabs(optical_ber(p, needed) - p.ber_target) <= 1e-9);

  SUBCASE("no dark or background counts") {
    OpticalParams q;
    q.dark_count = 0.0;
    q.background = 0.0;
    q.t_slot = 2.0;
    q.ber_target = 0.05;
    CHECK(optical_required_photons(q) ==
          doctest::Approx(1.3527717270477078).epsilon(1e-10));
  }
  SUBCASE("chance-level target needs no photons") {
    OpticalParams q;
    q.ber_target = 0.4999999999;
    CHECK(optical_required_photons(q) ==
          doctest::Approx(0.0).epsilon(1e-4));
  }
  SUBCASE("invalid target rejected") {
    OpticalParams q;
    q.ber_target = 0.5;
    CHECK_THROWS_AS((void)optical_required_photons(q), std::invalid_argument);
  }
}

TEST_CASE("optical power inversion round-trips") {
  OpticalParams p;
  for (double r : {0.5, 2.0, 10.0, 35.0, 60.0}) {
    const double est = optical_invert_power(p, optical_received_power(p, r));
    CHECK(std::fabs(est - r) <= 1e-9 * r);
  }
  CHECK_THROWS_AS((void)optical_invert_power(p, 1e6), std::out_of_range);
}

TEST_CASE("optical feasible range matches a forward-chain bisection oracle") {
  OpticalParams p;
  const double r_hat = optical_invert_range(p);
  // BER of the full power -> photons -> ber chain at the returned range.
  auto chain_ber = [&](double r) {
    return optical_ber(p, optical_photon_count(p, optical_received_power(p, r)));
  };
  CHECK(std::fabs(chain_ber(r_hat) - p.ber_target) <= 1e-6);

  // Independent bisection on the monotone chain.
  double lo = 0.1, hi = 200.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (chain_ber(mid) < p.ber_target) lo = mid; else hi = mid;
  }
  CHECK(r_hat == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-6));

  SUBCASE("tighter target shrinks the range") {
    OpticalParams q;
    q.ber_target = 1e-6;
    CHECK(optical_invert_range(q) < r_hat);
  }
}

TEST_CASE("shadowed power sample") {
  ShadowingModel off{0.0, 3};
  std::mt19937_64 rng(99);
  CHECK(shadowed_power_sample(-42.5, off, rng) == -42.5);

  SUBCASE("deterministic under a fixed seed") {
    ShadowingModel m{0.5, 4};
    std::mt19937_64 a(123), b(123);
    CHECK(shadowed_power_sample(10.0, m, a) == shadowed_power_sample(10.0, m, b));
  }
  SUBCASE("sample variance approaches phi^2 / N") {
    ShadowingModel m{0.1, 4};
    std::mt19937_64 g(2024);
    const int trials = 100000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < trials; ++i) {
      const double v = shadowed_power_sample(0.0, m, g);
      sum += v;
      sum2 += v * v;
    }
    const double mean = sum / trials;
    const double var = sum2 / trials - mean * mean;
    const double expected = m.std_dev * m.std_dev / m.mean_estimator_count;
    CHECK(std::fabs(var - expected) <= 0.05 * expected);
    CHECK(std::fabs(mean) <= 5.0 * std::sqrt(expected / trials));
  }
}
