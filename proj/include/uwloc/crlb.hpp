#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace uwloc {

// Distance-dependent ranging-noise law. Two distinct powers of r are in play:
// the likelihood variance grows as epsilon * r^delta, while the information
// weight uses psi^2 = epsilon * r^(delta-1) and the correction factor
// beta = 1 + (delta^2 epsilon / 2) r^(delta-2). They serve different
// expressions and are kept exactly as defined.
struct NoiseLawParams {
  double epsilon = 0.01;  // m^2 scale of the variance law
  double delta = 1.0;     // path exponent, >= 1

  double psi_sq(double r) const { return epsilon * std::pow(r, delta - 1.0); }
};

double beta_factor(double r, const NoiseLawParams& law);

// Log-density of a range measurement rho for the pair at (m_pos, n_pos):
// Gaussian around the true distance with variance epsilon * r^delta.
// Throws std::domain_error when the positions coincide.
double range_log_likelihood(double rho, const Eigen::Vector3d& m_pos,
                            const Eigen::Vector3d& n_pos,
                            const NoiseLawParams& law);

// Cross-coordinate blocks of the information matrix: `product` uses
// (dx*dy)/r^2 terms (the symmetric PSD form validated against a
// finite-difference Hessian); `squared` uses (dx^2*dy^2)/r^2 and exists only
// for side-by-side comparison, since it is not a valid information matrix.
enum class CrossBlockMode { product, squared };

// One measured pair: variance is the information weight psi^2 for the link
// and beta its distance-dependence correction.
struct FimEdge {
  int m;
  int n;
  double variance;
  double beta = 1.0;
};

// 3K x 3K, coordinate-major: row c*K + i is coordinate c of node i, giving
// the block layout [Pxx Pxy Pxz; Pyx Pyy Pyz; Pzx Pzy Pzz].
struct FisherInfo {
  int k = 0;
  Eigen::MatrixXd matrix;
};

FisherInfo build_fim(const Eigen::MatrixXd& positions,
                     const std::vector<FimEdge>& edges,
                     CrossBlockMode mode = CrossBlockMode::product);

// Law-driven form: every listed pair contributes with psi^2 and beta
// evaluated from its true distance.
FisherInfo build_fim(const Eigen::MatrixXd& positions,
                     const std::vector<std::pair<int, int>>& neighbor_pairs,
                     const NoiseLawParams& law,
                     CrossBlockMode mode = CrossBlockMode::product);

// Inversion failed: null_nodes lists the nodes with a significant component
// in the information null space (e.g. all neighbors collinear with the node).
struct singular_fim_error : std::runtime_error {
  singular_fim_error(const std::string& msg, std::vector<int> nodes)
      : std::runtime_error(msg), null_nodes(std::move(nodes)) {}
  std::vector<int> null_nodes;
};

struct CrlbReport {
  double h_crlb = 0.0;     // sqrt(raw_trace / #unknowns), RMSE-comparable (m)
  double raw_trace = 0.0;  // Tr of the inverted unknown-block matrix (m^2)
  Eigen::VectorXd per_node_bound;  // K entries, zero at known nodes (m)
};

// Marginalizes known nodes by deleting their rows/columns, inverts the
// remaining block, and reports the trace-based bound.
CrlbReport h_crlb(const FisherInfo& fim, const std::vector<int>& unknown_ids);

}  // namespace uwloc
