#pragma once

// Independent reference implementations used only by the tests. They favour
// obviousness over speed and share no code with the library.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "probe/graph.hpp"

namespace probe::oracle {

using Matrix = std::vector<std::vector<int>>;
inline constexpr int kInf = std::numeric_limits<int>::max() / 4;

inline Matrix adjacency(const Graph& g) {
  const std::size_t n = g.node_count();
  Matrix a(n, std::vector<int>(n, 0));
  for (const auto& [u, v] : g.edges()) a[u.index()][v.index()] = a[v.index()][u.index()] = 1;
  return a;
}

inline Matrix floyd_warshall(const Graph& g) {
  const auto a = adjacency(g);
  const std::size_t n = a.size();
  Matrix d(n, std::vector<int>(n, kInf));
  for (std::size_t i = 0; i < n; ++i) {
    d[i][i] = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (a[i][j]) d[i][j] = 1;
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    }
  }
  return d;
}

// Lists every shortest s-t path explicitly and counts interior visits.
inline std::vector<double> betweenness_by_paths(const Graph& g) {
  const std::size_t n = g.node_count();
  const auto a = adjacency(g);
  const auto d = floyd_warshall(g);
  std::vector<double> bc(n, 0.0);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = s + 1; t < n; ++t) {
      if (d[s][t] >= kInf) continue;
      std::vector<std::vector<std::size_t>> paths;
      std::vector<std::size_t> stack{s};
      auto walk = [&](auto&& self, std::size_t u) -> void {
        if (u == t) {
          paths.push_back(stack);
          return;
        }
        for (std::size_t w = 0; w < n; ++w) {
          if (a[u][w] && d[s][w] == d[s][u] + 1 && d[w][t] == d[u][t] - 1) {
            stack.push_back(w);
            self(self, w);
            stack.pop_back();
          }
        }
      };
      walk(walk, s);
      for (const auto& p : paths) {
        for (std::size_t k = 1; k + 1 < p.size(); ++k) bc[p[k]] += 1.0 / static_cast<double>(paths.size());
      }
    }
  }
  if (n > 2) {
    for (auto& b : bc) b *= 2.0 / (static_cast<double>(n - 1) * static_cast<double>(n - 2));
  }
  return bc;
}

// Stationary vector from a dense linear solve rather than iteration.
inline std::vector<double> pagerank_by_solve(const Graph& g, double alpha = 0.85) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  const auto a = adjacency(g);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    int deg = 0;
    for (Eigen::Index i = 0; i < n; ++i) deg += a[j][i];
    for (Eigen::Index i = 0; i < n; ++i) {
      m(i, j) = deg == 0 ? 1.0 / static_cast<double>(n) : a[j][i] / static_cast<double>(deg);
    }
  }
  const Eigen::MatrixXd lhs = Eigen::MatrixXd::Identity(n, n) - alpha * m;
  const Eigen::VectorXd rhs = Eigen::VectorXd::Constant(n, (1.0 - alpha) / static_cast<double>(n));
  const Eigen::VectorXd x = lhs.fullPivLu().solve(rhs);
  return {x.data(), x.data() + n};
}

inline std::vector<double> clustering_by_triples(const Graph& g) {
  const auto a = adjacency(g);
  const std::size_t n = a.size();
  std::vector<double> c(n, 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    int links = 0;
    int deg = 0;
    for (std::size_t u = 0; u < n; ++u) {
      deg += a[v][u];
      for (std::size_t w = u + 1; w < n; ++w) links += a[v][u] & a[v][w] & a[u][w];
    }
    if (deg >= 2) c[v] = 2.0 * links / (deg * (deg - 1.0));
  }
  return c;
}

inline Graph random_connected(std::size_t n, double p, std::mt19937_64& rng) {
  Graph g(n);
  for (std::size_t v = 1; v < n; ++v) {
    std::uniform_int_distribution<std::uint32_t> parent(0, static_cast<std::uint32_t>(v - 1));
    g.add_edge(NodeId(static_cast<std::uint32_t>(v)), NodeId(parent(rng)));
  }
  std::bernoulli_distribution coin(p);
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = u + 1; v < n; ++v) {
      if (coin(rng)) g.add_edge(NodeId(u), NodeId(v));
    }
  }
  return g;
}

}  // namespace probe::oracle
