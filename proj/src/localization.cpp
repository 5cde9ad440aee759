#include "uwloc/localization.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

namespace uwloc {

Eigen::MatrixXd double_center(const CompletedDistanceMatrix& r) {
  const int k = r.k;
  const Eigen::MatrixXd a =
      Eigen::MatrixXd::Identity(k, k) - Eigen::MatrixXd::Constant(k, k, 1.0 / k);
  return -0.5 * a * r.squared * a;
}

RelativeMap classical_mds(const Eigen::MatrixXd& gamma, int dims) {
  const int k = static_cast<int>(gamma.rows());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gamma);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("classical_mds: eigendecomposition failed");

  RelativeMap map;
  map.coords.setZero(k, dims);
  map.eigenvalues.setZero(dims);
  const double lambda_max = std::max(es.eigenvalues().maxCoeff(), 0.0);
  for (int j = 0; j < dims; ++j) {
    const int src = k - 1 - j;  // Eigen sorts ascending
    if (src < 0) break;
    const double lambda = es.eigenvalues()(src);
    if (lambda < -1e-8 * lambda_max) map.non_euclidean = true;
    if (lambda <= 0.0) continue;  // clamp: coords column stays zero
    map.eigenvalues(j) = lambda;
    map.coords.col(j) = es.eigenvectors().col(src) * std::sqrt(lambda);
  }
  return map;
}

double kruskal_stress(const CompletedDistanceMatrix& r, const Eigen::MatrixXd& coords) {
  if (r.k != coords.rows())
    throw std::invalid_argument("kruskal_stress: shape mismatch");
  double num = 0.0, den = 0.0;
  for (int m = 0; m < r.k; ++m)
    for (int n = 0; n < r.k; ++n) {
      if (m == n) continue;
      const double rho = r.distance(m, n);
      const double d = (coords.row(m) - coords.row(n)).norm();
      num += (rho - d) * (rho - d);
      den += rho * rho;
    }
  if (den == 0.0) return 0.0;
  return std::sqrt(num) / den;
}

RelativeMap embed_completed(const CompletedDistanceMatrix& r, int dims) {
  RelativeMap map = classical_mds(double_center(r), dims);
  map.stress = kruskal_stress(r, map.coords);
  return map;
}

SimilarityTransform procrustes_fit(const Eigen::MatrixXd& truth,
                                   const Eigen::MatrixXd& est) {
  if (truth.rows() != est.rows() || truth.cols() != 3 || est.cols() != 3)
    throw std::invalid_argument("procrustes_fit: need matching Mx3 inputs");
  const auto m = truth.rows();
  if (m < 4) throw std::domain_error("procrustes_fit: need at least 4 points");

  const Eigen::RowVector3d c0 = truth.colwise().mean();
  const Eigen::RowVector3d b0 = est.colwise().mean();
  const Eigen::MatrixXd c = truth.rowwise() - c0;
  const Eigen::MatrixXd b = est.rowwise() - b0;

  // A unique similarity fit needs both point sets to span 3 dimensions.
  for (const auto* part : {&c, &b}) {
    Eigen::JacobiSVD<Eigen::MatrixXd> sv(*part);
    if (sv.singularValues()(2) <= 1e-9 * std::max(sv.singularValues()(0), 1e-300))
      throw std::domain_error(
          "procrustes_fit: degenerate geometry (coplanar or collinear points)");
  }

  const Eigen::Matrix3d h = c.transpose() * b;
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
  // Best orthogonal map over O(3). A negative determinant means the embedding
  // is mirrored relative to truth; keeping the reflection (equivalently:
  // flipping the embedding along the smallest singular direction and using the
  // proper rotation) is what aligns it.
  const Eigen::Matrix3d q = svd.matrixU() * svd.matrixV().transpose();
  const double trace_s = svd.singularValues().sum();
  const double b_norm2 = b.squaredNorm();
  const double scale = trace_s / b_norm2;

  SimilarityTransform t;
  t.scale = scale;
  t.rotation = q.transpose();
  t.translation = c0.transpose() - scale * q * b0.transpose();
  t.residual = std::max(c.squaredNorm() - 2.0 * scale * trace_s +
                            scale * scale * b_norm2,
                        0.0);
  return t;
}

Eigen::MatrixXd apply_transform(const Eigen::MatrixXd& coords,
                                const SimilarityTransform& t) {
  Eigen::MatrixXd out = t.scale * coords * t.rotation;  // row form of s*R^T*y
  out.rowwise() += t.translation.transpose();
  return out;
}

LocalizationResult localize_mds(const CompletedDistanceMatrix& r,
                                const std::vector<NodePose>& anchors) {
  RelativeMap map = embed_completed(r);
  Eigen::MatrixXd truth(static_cast<Eigen::Index>(anchors.size()), 3);
  Eigen::MatrixXd est(truth.rows(), 3);
  for (Eigen::Index i = 0; i < truth.rows(); ++i) {
    const auto& a = anchors[static_cast<size_t>(i)];
    if (a.id < 0 || a.id >= r.k)
      throw std::out_of_range("localize_mds: anchor id outside matrix");
    truth.row(i) = a.position.transpose();
    est.row(i) = map.coords.row(a.id);
  }
  LocalizationResult result;
  result.transform = procrustes_fit(truth, est);
  result.absolute = apply_transform(map.coords, result.transform);
  result.stress = map.stress;
  result.non_euclidean = map.non_euclidean;
  return result;
}

Eigen::MatrixXd wcl_baseline(const Graph& g, const std::vector<NodePose>& anchors,
                             const Eigen::Vector3d& fallback,
                             std::vector<int>* unplaced) {
  std::vector<DijkstraResult> from_anchor;
  from_anchor.reserve(anchors.size());
  for (const auto& a : anchors) {
    if (a.id < 0 || a.id >= g.k)
      throw std::out_of_range("wcl_baseline: anchor id outside graph");
    from_anchor.push_back(single_source_shortest_paths(g, a.id));
  }

  Eigen::MatrixXd out(g.k, 3);
  for (int v = 0; v < g.k; ++v) {
    double wsum = 0.0;
    Eigen::Vector3d acc = Eigen::Vector3d::Zero();
    for (size_t j = 0; j < anchors.size(); ++j) {
      const double d = from_anchor[j].dist(v);
      if (!std::isfinite(d)) continue;
      const double w = 1.0 / std::max(d, 1e-9);
      wsum += w;
      acc += w * anchors[j].position;
    }
    if (wsum == 0.0) {
      out.row(v) = fallback.transpose();
      if (unplaced) unplaced->push_back(v);
    } else {
      out.row(v) = (acc / wsum).transpose();
    }
  }
  for (const auto& a : anchors) out.row(a.id) = a.position.transpose();
  return out;
}

Eigen::MatrixXd wcl_baseline(const std::vector<RangeObservation>& observations,
                             int k, const std::vector<NodePose>& anchors,
                             const Eigen::Vector3d& fallback,
                             std::vector<int>* unplaced) {
  return wcl_baseline(build_graph(observations, k), anchors, fallback, unplaced);
}

}  // namespace uwloc
