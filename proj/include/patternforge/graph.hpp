#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace pf {

using Edge = std::pair<int, int>;

// Simple undirected graph on vertices 0..n-1.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);
  Graph(int n, const std::vector<Edge>& edges);

  int n() const { return n_; }
  std::size_t edge_count() const { return m_; }
  bool has_edge(int u, int v) const;
  // Throws DomainError on self-loops, out-of-range endpoints or duplicates.
  void add_edge(int u, int v);
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  // Sorted list of pairs (u, v) with u < v.
  std::vector<Edge> edges() const;

  bool operator==(const Graph& o) const;
  bool operator!=(const Graph& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  int n_ = 0;
  std::size_t m_ = 0;
  std::vector<std::vector<int>> adj_;
};

Graph complement(const Graph& g);
// Graph with vertex v renamed to perm[v].
Graph relabel(const Graph& g, const std::vector<int>& perm);
// Induced subgraph on the listed vertices, renumbered in list order.
Graph induced_subgraph(const Graph& g, const std::vector<int>& vertices);

// Dense adjacency bits for small graphs (n <= 64).
std::vector<std::uint64_t> adjacency_masks(const Graph& g);

Graph parse_graph6(const std::string& text);
std::string to_graph6(const Graph& g);
Graph parse_edge_list(const std::string& text);
std::string to_edge_list(const Graph& g);

// Erdos-Renyi G(n, p) from a seeded stream.
Graph random_graph(int n, double p, std::uint64_t seed);

}  // namespace pf
