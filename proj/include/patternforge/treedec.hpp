#pragma once

#include <string>
#include <vector>

#include "patternforge/graph.hpp"

namespace pf {

enum class TdKind { Start, Introduce, Forget, Join };

struct TdNode {
  TdKind kind = TdKind::Start;
  std::vector<int> bag;       // sorted
  int vertex = -1;            // Start/Introduce/Forget: the vertex involved
  std::vector<int> children;  // 0, 1 or 2 node ids
};

// Rooted nice tree decomposition; children always precede parents in `nodes`.
struct NiceTreeDecomposition {
  std::vector<TdNode> nodes;
  int root = -1;
  int width = -1;
};

constexpr int kTreewidthVertexLimit = 12;

// Exact treewidth via dynamic programming over vertex subsets. Optionally
// returns an optimal elimination order.
int exact_treewidth(const Graph& g, std::vector<int>* order = nullptr);

// Width of the decomposition induced by eliminating vertices in `order`.
int elimination_width(const Graph& g, const std::vector<int>& order);

// Reference value: minimum elimination width over all n! orders (n <= 9).
int brute_force_treewidth(const Graph& g);

// Nice decomposition of optimal width. The root bag is empty.
NiceTreeDecomposition nice_tree_decomposition(const Graph& g);

// Checks coverage, connectivity and node-shape rules; returns "" when valid.
std::string check_nice_decomposition(const Graph& g, const NiceTreeDecomposition& td);

}  // namespace pf
