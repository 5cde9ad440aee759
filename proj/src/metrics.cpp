#include "uwloc/metrics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace uwloc {

namespace {
constexpr double kPi = 3.141592653589793;
}

double rmse(const Eigen::Matrix<double, Eigen::Dynamic, 3>& true_pos,
            const Eigen::Matrix<double, Eigen::Dynamic, 3>& est_pos) {
  if (true_pos.rows() != est_pos.rows())
    throw std::invalid_argument("rmse: row counts differ (" +
                                std::to_string(true_pos.rows()) + " vs " +
                                std::to_string(est_pos.rows()) + ")");
  if (true_pos.rows() == 0) throw std::invalid_argument("rmse: empty input");
  return (true_pos - est_pos).rowwise().norm().sum() /
         static_cast<double>(true_pos.rows());
}

double node_tx_energy(const EnergyParams& p, double r) {
  if (r < 0.0) throw std::invalid_argument("node_tx_energy: negative range");
  const double a = 4.0 * kPi * r / p.wavelength;
  return p.e_bit * a * a;
}

double total_energy(const EnergyParams& p, const Eigen::VectorXd& ranges) {
  if (ranges.size() == 0) throw std::invalid_argument("total_energy: no nodes");
  const double k = static_cast<double>(ranges.size());
  double tx = 0.0;
  for (Eigen::Index i = 0; i < ranges.size(); ++i)
    tx += node_tx_energy(p, ranges[i]);
  return k * p.e_fundamental + k * tx;
}

double energy_error_product(const EnergyParams& p, const Eigen::VectorXd& ranges,
                            const Eigen::Matrix<double, Eigen::Dynamic, 3>& true_pos,
                            const Eigen::Matrix<double, Eigen::Dynamic, 3>& est_pos) {
  if (ranges.size() != true_pos.rows())
    throw std::invalid_argument("energy_error_product: range/node count mismatch");
  const double k = static_cast<double>(ranges.size());
  const double scale = 4.0 * kPi / (p.wavelength * std::sqrt(k));
  const double err_sum = (true_pos - est_pos).rowwise().norm().sum();
  return p.e_bit * scale * scale * ranges.squaredNorm() * err_sum;
}

}  // namespace uwloc
