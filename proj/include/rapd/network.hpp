// rapd - randomized-activation primal-dual splitting
// Copyright 2026 rapd Contributors
// Licensed under Apache 2.0

#ifndef RAPD_NETWORK_HPP_
#define RAPD_NETWORK_HPP_

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "rapd/dense_matrix.hpp"
#include "rapd/vector_ops.hpp"

namespace rapd {

struct Arc {
  int id = 0;  // external 1-based id
  int tail = 0;
  int head = 0;
};

/// Per-arc data: base capacity, capacity spread, free-flow time, congestion
/// coefficient (0.15 * eta), and the expansion cap.
struct ArcParams {
  double c = 0.0;
  double kappa = 0.0;
  double eta = 0.0;
  double cong = 0.0;
  double M = 0.0;
};

struct OdPair {
  int origin = 0;
  int dest = 0;
  double demand_base = 0.0;
  double demand_spread = 0.0;
};

/// Directed network with enumerated simple routes per OD pair and the
/// arc-route incidence matrix. Route lists are ordered lexicographically by
/// arc-id sequence and flattened OD-major.
struct Network {
  std::vector<int> nodes;
  std::vector<Arc> arcs;
  std::vector<ArcParams> params;  // parallel to arcs
  std::vector<OdPair> od_pairs;
  // routes[od] = list of routes, each a sequence of arc indices (0-based into
  // `arcs`).
  std::vector<std::vector<std::vector<int>>> routes;
  DenseMatrix incidence;             // |A| x |R|
  std::vector<std::size_t> route_offset;  // first flat route index per OD

  std::size_t num_arcs() const { return arcs.size(); }
  std::size_t num_routes() const {
    std::size_t n = 0;
    for (const auto& r : routes) n += r.size();
    return n;
  }

  int arc_index(int arc_id) const {
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      if (arcs[i].id == arc_id) return static_cast<int>(i);
    }
    return -1;
  }
};

/// All simple directed paths from `origin` to `dest` with at most `max_len`
/// arcs, as arc-index sequences in lexicographic arc-id order. Unreachable
/// pairs yield an empty list.
inline std::vector<std::vector<int>> enumerate_routes(
    const std::vector<Arc>& arcs, int origin, int dest, std::size_t max_len) {
  // Outgoing arc indices per node, sorted by arc id for deterministic order.
  std::map<int, std::vector<int>> out;
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    out[arcs[i].tail].push_back(static_cast<int>(i));
  }
  for (auto& [node, list] : out) {
    std::sort(list.begin(), list.end(),
              [&](int a, int b) { return arcs[a].id < arcs[b].id; });
  }

  std::vector<std::vector<int>> found;
  std::vector<int> path;
  std::set<int> visited{origin};

  std::function<void(int)> dfs = [&](int node) {
    if (node == dest) {
      found.push_back(path);
      return;
    }
    if (path.size() >= max_len) return;
    auto it = out.find(node);
    if (it == out.end()) return;
    for (int ai : it->second) {
      const int next = arcs[ai].head;
      if (visited.count(next)) continue;
      visited.insert(next);
      path.push_back(ai);
      dfs(next);
      path.pop_back();
      visited.erase(next);
    }
  };
  dfs(origin);
  return found;
}

/// Fills `routes`, `route_offset`, and the incidence matrix from the arc list
/// and OD pairs. `max_len` of 0 defaults to the arc count.
inline void build_routes(Network& net, std::size_t max_len = 0) {
  if (max_len == 0) max_len = net.arcs.size();
  net.routes.clear();
  net.route_offset.clear();
  std::size_t offset = 0;
  for (const auto& od : net.od_pairs) {
    net.route_offset.push_back(offset);
    net.routes.push_back(
        enumerate_routes(net.arcs, od.origin, od.dest, max_len));
    offset += net.routes.back().size();
  }
  const std::size_t total = offset;
  net.incidence = DenseMatrix(net.arcs.size(), total);
  std::size_t col = 0;
  for (const auto& od_routes : net.routes) {
    for (const auto& route : od_routes) {
      for (int ai : route) {
        net.incidence.at(static_cast<std::size_t>(ai), col) = 1.0;
      }
      ++col;
    }
  }
}

/// Arcs that lie on no enumerated route (all-zero incidence rows).
inline std::vector<int> unused_arcs(const Network& net) {
  std::vector<int> result;
  for (std::size_t a = 0; a < net.num_arcs(); ++a) {
    bool used = false;
    for (std::size_t r = 0; r < net.incidence.cols && !used; ++r) {
      used = net.incidence.at(a, r) != 0.0;
    }
    if (!used) result.push_back(net.arcs[a].id);
  }
  return result;
}

/// The 13-node, 19-arc Nguyen-Dupuis network with origins {1,4},
/// destinations {2,3}, and the standard arc parameter table. Expansion caps
/// follow M_a = 200 * kappa_a; congestion coefficients are 0.15 * eta_a.
inline Network build_nguyen_dupuis() {
  Network net;
  net.nodes = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13};
  const int wiring[19][2] = {
      {1, 5},  {1, 12}, {4, 5},  {4, 9},  {5, 6},  {5, 9},  {6, 7},
      {6, 10}, {7, 8},  {7, 11}, {8, 2},  {9, 10}, {9, 13}, {10, 11},
      {11, 2}, {11, 3}, {12, 6}, {12, 8}, {13, 3}};
  const double table[19][3] = {
      // c, kappa, eta
      {1100, 15, 7},    {484, 6.6, 9},   {154, 2.1, 9},  {1100, 15, 12},
      {330, 4.5, 3},    {484, 6.6, 9},   {1100, 15, 5},  {220, 3, 13},
      {220, 3, 5},      {220, 6, 9},     {770, 10.5, 9}, {770, 10.5, 10},
      {770, 10.5, 9},   {770, 10.5, 6},  {440, 6, 9},    {385, 5.25, 8},
      {242, 3.3, 7},    {220, 6.6, 14},  {440, 10.5, 11}};
  for (int i = 0; i < 19; ++i) {
    net.arcs.push_back({i + 1, wiring[i][0], wiring[i][1]});
    ArcParams p;
    p.c = table[i][0];
    p.kappa = table[i][1];
    p.eta = table[i][2];
    p.cong = 0.15 * p.eta;
    p.M = 200.0 * p.kappa;
    net.params.push_back(p);
  }
  net.od_pairs = {{1, 2, 300.0, 120.0},
                  {1, 3, 700.0, 120.0},
                  {4, 2, 500.0, 120.0},
                  {4, 3, 350.0, 120.0}};
  build_routes(net);
  return net;
}

}  // namespace rapd

#endif  // RAPD_NETWORK_HPP_
