#pragma once

#include <Eigen/Core>

namespace uwloc {

struct EnergyParams {
  double e_bit = 1e-6;        // energy per transmitted bit (J)
  double e_fundamental = 0.0; // per-node circuitry energy (J)
  double wavelength = 1.0;    // carrier wavelength (m)
};

// Mean Euclidean position error over all rows: sum of row-wise norms divided
// by the node count (mean of norms, not a root of mean squares).
double rmse(const Eigen::Matrix<double, Eigen::Dynamic, 3>& true_pos,
            const Eigen::Matrix<double, Eigen::Dynamic, 3>& est_pos);

// Transmit energy of one node covering range r: e_bit * (4*pi*r/lambda)^2.
double node_tx_energy(const EnergyParams& p, double r);

// Total network energy: K*e_fundamental + K * sum of per-node transmit
// energies. The K multiplier on the transmit sum counts every node as a
// receiver of every transmission; see the README note on this convention.
double total_energy(const EnergyParams& p, const Eigen::VectorXd& ranges);

// Energy-error trade-off: e_bit * (4*pi/(lambda*sqrt(K)))^2 * sum(r^2) *
// sum(position errors). Algebraically equal to the transmit-energy sum times
// rmse; both paths are asserted equal in tests.
double energy_error_product(const EnergyParams& p, const Eigen::VectorXd& ranges,
                            const Eigen::Matrix<double, Eigen::Dynamic, 3>& true_pos,
                            const Eigen::Matrix<double, Eigen::Dynamic, 3>& est_pos);

}  // namespace uwloc
