#include "uwloc/completion.hpp"

#include <limits>
#include <map>
#include <queue>
#include <sstream>

namespace uwloc {

Graph build_graph(const std::vector<RangeObservation>& observations, int k) {
  if (k < 0) throw std::invalid_argument("build_graph: negative node count");
  // Fuse duplicates: weighted mean with weights from the recorded variances.
  std::map<std::pair<int, int>, std::pair<double, double>> acc;  // (w*r sum, w sum)
  for (const auto& o : observations) {
    if (o.m < 0 || o.n < 0 || o.m >= k || o.n >= k)
      throw std::out_of_range("build_graph: observation references node " +
                              std::to_string(std::max(o.m, o.n)) + " outside [0, " +
                              std::to_string(k) + ")");
    auto key = std::minmax(o.m, o.n);
    auto& slot = acc[key];
    slot.first += o.weight * o.measured_range;
    slot.second += o.weight;
  }
  Graph g;
  g.k = k;
  g.adj.assign(k, {});
  for (const auto& [key, slot] : acc) {
    const double r = slot.first / slot.second;
    g.adj[key.first].push_back({key.second, r});
    g.adj[key.second].push_back({key.first, r});
  }
  return g;
}

DijkstraResult single_source_shortest_paths(const Graph& g, int source) {
  const double inf = std::numeric_limits<double>::infinity();
  DijkstraResult res{Eigen::VectorXd::Constant(g.k, inf),
                     Eigen::VectorXi::Constant(g.k, -1)};
  if (source < 0 || source >= g.k)
    throw std::out_of_range("dijkstra: source outside graph");
  res.dist[source] = 0.0;
  res.hops[source] = 0;
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  pq.push({0.0, source});
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d > res.dist[u]) continue;
    for (const auto& e : g.adj[u]) {
      const double nd = d + e.w;
      if (nd < res.dist[e.to]) {
        res.dist[e.to] = nd;
        res.hops[e.to] = res.hops[u] + 1;
        pq.push({nd, e.to});
      }
    }
  }
  return res;
}

std::vector<std::vector<int>> connected_components(const Graph& g) {
  std::vector<std::vector<int>> comps;
  std::vector<char> seen(g.k, 0);
  for (int start = 0; start < g.k; ++start) {
    if (seen[start]) continue;
    std::vector<int> comp, stack{start};
    seen[start] = 1;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      comp.push_back(u);
      for (const auto& e : g.adj[u])
        if (!seen[e.to]) {
          seen[e.to] = 1;
          stack.push_back(e.to);
        }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

namespace {
std::string describe_components(const std::vector<std::vector<int>>& comps) {
  std::ostringstream msg;
  msg << "graph disconnected: " << comps.size() << " components:";
  for (const auto& c : comps) {
    msg << " {";
    for (size_t i = 0; i < c.size() && i < 8; ++i) {
      if (i) msg << ",";
      msg << c[i];
    }
    if (c.size() > 8) msg << ",... " << c.size() << " nodes";
    msg << "}";
  }
  return msg.str();
}
}  // namespace

CompletedDistanceMatrix complete_matrix(const Graph& g) {
  auto comps = connected_components(g);
  if (comps.size() != 1) {
    std::string msg = describe_components(comps);
    throw disconnected_error(msg, std::move(comps));
  }

  CompletedDistanceMatrix m;
  m.k = g.k;
  m.squared.setZero(g.k, g.k);
  m.provenance.setConstant(g.k, g.k,
                           static_cast<std::uint8_t>(Provenance::direct));
  m.hop_count.setZero(g.k, g.k);
  for (int src = 0; src < g.k; ++src) {
    const auto sp = single_source_shortest_paths(g, src);
    for (int v = 0; v < g.k; ++v) {
      m.squared(src, v) = sp.dist[v] * sp.dist[v];
      m.hop_count(src, v) = sp.hops[v];
      m.provenance(src, v) = static_cast<std::uint8_t>(
          sp.hops[v] <= 1 ? Provenance::direct : Provenance::shortest_path);
    }
  }
  return m;
}

void write_matrix_csv(const CompletedDistanceMatrix& m, std::ostream& out) {
  out << "# squared distances, " << m.k << " nodes\n";
  for (int i = 0; i < m.k; ++i) {
    for (int j = 0; j < m.k; ++j) {
      if (j) out << ",";
      out << m.squared(i, j);
    }
    out << "\n";
  }
}

}  // namespace uwloc
