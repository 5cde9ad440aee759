#include "uwloc/crlb.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <sstream>

namespace uwloc {

double beta_factor(double r, const NoiseLawParams& law) {
  if (r <= 0.0) throw std::domain_error("beta_factor: r must be positive");
  return 1.0 + 0.5 * law.delta * law.delta * law.epsilon *
                   std::pow(r, law.delta - 2.0);
}

double range_log_likelihood(double rho, const Eigen::Vector3d& m_pos,
                            const Eigen::Vector3d& n_pos,
                            const NoiseLawParams& law) {
  const double r_sq = (m_pos - n_pos).squaredNorm();
  if (r_sq <= 0.0)
    throw std::domain_error("range_log_likelihood: coincident positions");
  const double r = std::sqrt(r_sq);
  const double resid = rho - r;
  return -std::log(std::sqrt(2.0 * M_PI * law.epsilon)) -
         0.25 * law.delta * std::log(r_sq) -
         resid * resid / (2.0 * law.epsilon * std::pow(r_sq, 0.5 * law.delta));
}

FisherInfo build_fim(const Eigen::MatrixXd& positions,
                     const std::vector<FimEdge>& edges, CrossBlockMode mode) {
  const int k = static_cast<int>(positions.rows());
  FisherInfo fim;
  fim.k = k;
  fim.matrix.setZero(3 * k, 3 * k);
  for (const auto& e : edges) {
    if (e.m < 0 || e.m >= k || e.n < 0 || e.n >= k || e.m == e.n)
      throw std::out_of_range("build_fim: bad edge node ids");
    if (e.variance <= 0.0)
      throw std::domain_error("build_fim: non-positive edge variance");
    const Eigen::Vector3d d = positions.row(e.m) - positions.row(e.n);
    const double r_sq = d.squaredNorm();
    if (r_sq <= 0.0)
      throw std::domain_error("build_fim: coincident edge endpoints");
    const double g = e.beta / e.variance;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        const double prod = d(a) * d(b);
        double val = g * prod / r_sq;
        if (mode == CrossBlockMode::squared && a != b)
          val = g * prod * prod / r_sq;
        fim.matrix(a * k + e.m, b * k + e.m) += val;
        fim.matrix(a * k + e.n, b * k + e.n) += val;
        fim.matrix(a * k + e.m, b * k + e.n) -= val;
        fim.matrix(a * k + e.n, b * k + e.m) -= val;
      }
  }
  return fim;
}

FisherInfo build_fim(const Eigen::MatrixXd& positions,
                     const std::vector<std::pair<int, int>>& neighbor_pairs,
                     const NoiseLawParams& law, CrossBlockMode mode) {
  std::vector<FimEdge> edges;
  edges.reserve(neighbor_pairs.size());
  for (const auto& [m, n] : neighbor_pairs) {
    const double r = (positions.row(m) - positions.row(n)).norm();
    if (r <= 0.0)
      throw std::domain_error("build_fim: coincident edge endpoints");
    edges.push_back({m, n, law.psi_sq(r), beta_factor(r, law)});
  }
  return build_fim(positions, edges, mode);
}

CrlbReport h_crlb(const FisherInfo& fim, const std::vector<int>& unknown_ids) {
  const int k = fim.k;
  const int u = static_cast<int>(unknown_ids.size());
  if (u == 0) throw std::invalid_argument("h_crlb: no unknown nodes");
  for (int id : unknown_ids)
    if (id < 0 || id >= k) throw std::out_of_range("h_crlb: unknown id outside matrix");

  // Keep only unknown rows/columns, preserving the coordinate-major layout.
  Eigen::VectorXi keep(3 * u);
  for (int a = 0; a < 3; ++a)
    for (int i = 0; i < u; ++i) keep(a * u + i) = a * k + unknown_ids[i];
  Eigen::MatrixXd phi(3 * u, 3 * u);
  for (int i = 0; i < 3 * u; ++i)
    for (int j = 0; j < 3 * u; ++j) phi(i, j) = fim.matrix(keep(i), keep(j));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(phi);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("h_crlb: eigendecomposition failed");
  const auto& lambda = es.eigenvalues();
  const double lambda_max = lambda.maxCoeff();
  const double tol = 1e-12 * std::max(lambda_max, 0.0);
  if (lambda.minCoeff() <= tol) {
    // Identify which nodes the near-null eigenvectors live on.
    std::vector<int> null_nodes;
    for (int j = 0; j < lambda.size(); ++j) {
      if (lambda(j) > tol) continue;
      const auto& v = es.eigenvectors().col(j);
      for (int i = 0; i < u; ++i) {
        double mass = 0.0;
        for (int a = 0; a < 3; ++a) mass += v(a * u + i) * v(a * u + i);
        if (mass > 1e-6) null_nodes.push_back(unknown_ids[i]);
      }
    }
    std::sort(null_nodes.begin(), null_nodes.end());
    null_nodes.erase(std::unique(null_nodes.begin(), null_nodes.end()),
                     null_nodes.end());
    std::ostringstream msg;
    msg << "h_crlb: information matrix is singular; undetermined nodes:";
    for (int id : null_nodes) msg << ' ' << id;
    throw singular_fim_error(msg.str(), std::move(null_nodes));
  }

  // phi^-1 via the spectral form; diag entries feed the per-node bounds.
  const Eigen::MatrixXd scaled =
      es.eigenvectors() * lambda.cwiseInverse().asDiagonal() *
      es.eigenvectors().transpose();

  CrlbReport report;
  report.raw_trace = scaled.trace();
  report.h_crlb = std::sqrt(report.raw_trace / u);
  report.per_node_bound.setZero(k);
  for (int i = 0; i < u; ++i) {
    double s = 0.0;
    for (int a = 0; a < 3; ++a) s += scaled(a * u + i, a * u + i);
    report.per_node_bound(unknown_ids[i]) = std::sqrt(s);
  }
  return report;
}

}  // namespace uwloc
