#pragma once

#include <Eigen/Dense>
#include <limits>
#include <vector>

#include "uwloc/completion.hpp"
#include "uwloc/network.hpp"

namespace uwloc {

// Low-dimensional embedding of a completed distance matrix.
// coords are centered (column means zero); eigenvalues are the top `dims`
// spectrum values of the double-centered matrix, descending, clamped at 0.
struct RelativeMap {
  Eigen::MatrixXd coords;       // K x dims
  Eigen::VectorXd eigenvalues;  // dims entries
  double stress = 0.0;
  // Set when a retained eigenvalue was below -1e-8 * lambda_max, i.e. the
  // input was measurably non-Euclidean (expected with path-inflated entries).
  bool non_euclidean = false;
};

// Map from the relative frame into absolute coordinates:
//   y_abs = scale * rotation^T * y_rel + translation.
// rotation is orthogonal; its determinant may be -1 because a distance-only
// embedding carries no chirality, so the best alignment may be a reflection.
struct SimilarityTransform {
  double scale = 1.0;
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();
  double residual = 0.0;  // summed squared alignment error over the fit points
};

struct LocalizationResult {
  Eigen::MatrixXd absolute;  // K x 3
  SimilarityTransform transform;
  double stress = 0.0;
  bool non_euclidean = false;
  // Filled by callers that know the full ground truth.
  double rmse = std::numeric_limits<double>::quiet_NaN();
};

// Gamma = -1/2 * A * S * A with S the squared-distance matrix and
// A = I - (1/K) 11^T. For Euclidean input this is the centered Gram matrix.
Eigen::MatrixXd double_center(const CompletedDistanceMatrix& r);

// Spectral embedding: top `dims` eigenpairs of gamma, coords = u * sqrt(v).
// Negative retained eigenvalues clamp to zero (see RelativeMap::non_euclidean).
// stress is left 0; use embed_completed for a stress-annotated map.
RelativeMap classical_mds(const Eigen::MatrixXd& gamma, int dims = 3);

// sqrt(sum_{m != n} (rho_mn - r_mn)^2) / sum_{m != n} rho_mn^2 where rho are
// the completed distances and r the embedding distances. Both orderings of a
// pair are counted. Zero-size or single-node input gives 0.
double kruskal_stress(const CompletedDistanceMatrix& r, const Eigen::MatrixXd& coords);

// double_center + classical_mds + stress in one step.
RelativeMap embed_completed(const CompletedDistanceMatrix& r, int dims = 3);

// Least-squares similarity fit mapping `est` rows onto `truth` rows:
// minimizes sum_i |truth_i - s * R^T * est_i - t|^2 over scale, orthogonal R,
// translation. Needs >= 4 rows spanning 3 dimensions on both sides.
// Throws std::domain_error on (near-)coplanar input.
SimilarityTransform procrustes_fit(const Eigen::MatrixXd& truth,
                                   const Eigen::MatrixXd& est);

Eigen::MatrixXd apply_transform(const Eigen::MatrixXd& coords,
                                const SimilarityTransform& t);

// Full pipeline on a completed matrix: embed, align on the anchor rows
// (anchors[i].id indexes rows of r), return absolute estimates for all nodes.
LocalizationResult localize_mds(const CompletedDistanceMatrix& r,
                                const std::vector<NodePose>& anchors);

// Weighted centroid baseline. Every node's estimate is the anchor-position
// average weighted by 1/max(d_hat, 1e-9), with d_hat the shortest-path
// distance to that anchor. Anchor rows are set to their own positions.
// Nodes that reach no anchor get `fallback` and are appended to *unplaced.
Eigen::MatrixXd wcl_baseline(const Graph& g, const std::vector<NodePose>& anchors,
                             const Eigen::Vector3d& fallback,
                             std::vector<int>* unplaced = nullptr);
Eigen::MatrixXd wcl_baseline(const std::vector<RangeObservation>& observations,
                             int k, const std::vector<NodePose>& anchors,
                             const Eigen::Vector3d& fallback,
                             std::vector<int>* unplaced = nullptr);

}  // namespace uwloc
