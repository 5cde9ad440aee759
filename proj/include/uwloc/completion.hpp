#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "uwloc/network.hpp"

namespace uwloc {

struct Graph {
  struct Edge {
    int to;
    double w;  // fused measured range (m)
  };
  int k = 0;
  std::vector<std::vector<Edge>> adj;
};

// Thrown when the measurement graph does not connect all nodes; carries the
// connected components for diagnostics.
struct disconnected_error : std::runtime_error {
  std::vector<std::vector<int>> components;
  explicit disconnected_error(std::string msg, std::vector<std::vector<int>> comps)
      : std::runtime_error(std::move(msg)), components(std::move(comps)) {}
};

enum class Provenance : std::uint8_t { direct, shortest_path };

// Pairwise squared distances after completion. direct provenance means the
// single-hop measurement is itself the shortest path.
struct CompletedDistanceMatrix {
  int k = 0;
  Eigen::MatrixXd squared;  // rho^2 (m^2), symmetric, zero diagonal
  Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic> provenance;
  Eigen::MatrixXi hop_count;

  double distance(int m, int n) const { return std::sqrt(squared(m, n)); }
};

// Undirected graph from observations; duplicate pairs fuse into one edge by
// inverse-variance weighted mean.
Graph build_graph(const std::vector<RangeObservation>& observations, int k);

struct DijkstraResult {
  Eigen::VectorXd dist;   // infinity where unreachable
  Eigen::VectorXi hops;   // -1 where unreachable
};
DijkstraResult single_source_shortest_paths(const Graph& g, int source);

// Connected components in ascending node order.
std::vector<std::vector<int>> connected_components(const Graph& g);

// All-pairs shortest paths by repeated Dijkstra. Throws disconnected_error
// when any node is unreachable.
CompletedDistanceMatrix complete_matrix(const Graph& g);

// Debug dump: header plus K rows of squared distances.
void write_matrix_csv(const CompletedDistanceMatrix& m, std::ostream& out);

}  // namespace uwloc
