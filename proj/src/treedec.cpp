#include "patternforge/treedec.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "patternforge/errors.hpp"

namespace pf {

namespace {

using Mask = unsigned;

int popcount(Mask m) { return __builtin_popcount(m); }

// Vertices outside `s` and != v reachable from v via paths inside s.
Mask q_set(const std::vector<std::uint64_t>& adj, Mask s, int v) {
  Mask seen = Mask{1} << v, frontier = seen, out = 0;
  while (frontier) {
    int u = __builtin_ctz(frontier);
    frontier &= frontier - 1;
    Mask nb = static_cast<Mask>(adj[u]) & ~seen;
    seen |= nb;
    out |= nb & ~s;
    frontier |= nb & s;
  }
  return out;
}

std::vector<std::vector<int>> filled_bags(const Graph& g, const std::vector<int>& order) {
  const int n = g.n();
  std::vector<std::set<int>> nb(n);
  for (auto [u, v] : g.edges()) {
    nb[u].insert(v);
    nb[v].insert(u);
  }
  std::vector<char> gone(n, 0);
  std::vector<std::vector<int>> bags(n);
  for (int v : order) {
    std::vector<int> later;
    for (int u : nb[v])
      if (!gone[u]) later.push_back(u);
    for (std::size_t i = 0; i < later.size(); ++i)
      for (std::size_t j = i + 1; j < later.size(); ++j) {
        nb[later[i]].insert(later[j]);
        nb[later[j]].insert(later[i]);
      }
    gone[v] = 1;
    later.push_back(v);
    std::sort(later.begin(), later.end());
    bags[v] = later;
  }
  return bags;
}

class NiceBuilder {
 public:
  explicit NiceBuilder(NiceTreeDecomposition& td) : td_(td) {}

  int add(TdKind kind, std::vector<int> bag, int vertex, std::vector<int> children) {
    TdNode node;
    node.kind = kind;
    node.bag = std::move(bag);
    node.vertex = vertex;
    node.children = std::move(children);
    td_.nodes.push_back(std::move(node));
    return static_cast<int>(td_.nodes.size()) - 1;
  }

  // Morph the bag of node `id` into `target` via forgets then introduces.
  int morph(int id, const std::vector<int>& target) {
    std::vector<int> cur = td_.nodes[id].bag;
    for (int v : std::vector<int>(cur)) {
      if (std::binary_search(target.begin(), target.end(), v)) continue;
      cur.erase(std::find(cur.begin(), cur.end(), v));
      id = add(TdKind::Forget, cur, v, {id});
    }
    for (int v : target) {
      if (std::binary_search(cur.begin(), cur.end(), v)) continue;
      cur.insert(std::lower_bound(cur.begin(), cur.end(), v), v);
      id = add(TdKind::Introduce, cur, v, {id});
    }
    return id;
  }

  int leaf(const std::vector<int>& bag) {
    int id = add(TdKind::Start, {bag.front()}, bag.front(), {});
    return morph(id, bag);
  }

  int join_all(std::vector<int> parts) {
    while (parts.size() > 1) {
      int a = parts[parts.size() - 2], b = parts.back();
      parts.pop_back();
      parts.back() = add(TdKind::Join, td_.nodes[a].bag, -1, {a, b});
    }
    return parts.front();
  }

 private:
  NiceTreeDecomposition& td_;
};

}  // namespace

int elimination_width(const Graph& g, const std::vector<int>& order) {
  if (static_cast<int>(order.size()) != g.n()) throw DomainError("elimination order size mismatch");
  int w = -1;
  for (const auto& b : filled_bags(g, order)) w = std::max(w, static_cast<int>(b.size()) - 1);
  return w;
}

int exact_treewidth(const Graph& g, std::vector<int>* order) {
  const int n = g.n();
  if (n > kTreewidthVertexLimit)
    throw CapabilityError("exact treewidth limited to " + std::to_string(kTreewidthVertexLimit) +
                          " vertices; supply an explicit decomposition instead");
  if (n == 0) {
    if (order) order->clear();
    return -1;
  }
  auto adj = adjacency_masks(g);
  const Mask full = (Mask{1} << n) - 1;
  std::vector<int> tw(std::size_t{1} << n, n + 1), last(std::size_t{1} << n, -1);
  tw[0] = -1;
  for (Mask s = 1; s <= full; ++s) {
    for (Mask rest = s; rest; rest &= rest - 1) {
      int v = __builtin_ctz(rest);
      Mask prev = s & ~(Mask{1} << v);
      int val = std::max(tw[prev], popcount(q_set(adj, prev, v)));
      if (val < tw[s]) {
        tw[s] = val;
        last[s] = v;
      }
    }
  }
  if (order) {
    order->assign(n, -1);
    Mask s = full;
    for (int i = n - 1; i >= 0; --i) {
      (*order)[i] = last[s];
      s &= ~(Mask{1} << last[s]);
    }
  }
  return tw[full];
}

int brute_force_treewidth(const Graph& g) {
  if (g.n() > 9) throw CapabilityError("brute-force treewidth limited to 9 vertices");
  std::vector<int> perm(g.n());
  std::iota(perm.begin(), perm.end(), 0);
  int best = g.n();
  do {
    best = std::min(best, elimination_width(g, perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return g.n() == 0 ? -1 : best;
}

NiceTreeDecomposition nice_tree_decomposition(const Graph& g) {
  std::vector<int> order;
  const int width = exact_treewidth(g, &order);
  const int n = g.n();
  NiceTreeDecomposition td;
  td.width = width;
  NiceBuilder nb(td);
  if (n == 0) {
    return td;
  }
  auto bags = filled_bags(g, order);
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[order[i]] = i;
  std::vector<int> parent(n, -1);
  std::vector<std::vector<int>> kids(n);
  for (int v = 0; v < n; ++v) {
    int best = -1;
    for (int u : bags[v])
      if (u != v && (best < 0 || pos[u] < pos[best])) best = u;
    parent[v] = best;
    if (best >= 0) kids[best].push_back(v);
  }
  // Process in elimination order so children are built first.
  std::vector<int> built(n, -1);
  std::vector<int> roots;
  for (int v : order) {
    int id;
    if (kids[v].empty()) {
      id = nb.leaf(bags[v]);
    } else {
      std::vector<int> parts;
      for (int c : kids[v]) parts.push_back(nb.morph(built[c], bags[v]));
      id = nb.join_all(parts);
    }
    built[v] = id;
    if (parent[v] < 0) roots.push_back(nb.morph(id, {}));
  }
  td.root = nb.join_all(roots);
  return td;
}

std::string check_nice_decomposition(const Graph& g, const NiceTreeDecomposition& td) {
  std::ostringstream err;
  const int n = g.n();
  const int count = static_cast<int>(td.nodes.size());
  if (n == 0) return "";
  if (td.root < 0 || td.root >= count) return "bad root";
  int width = -1;
  std::vector<int> parent(count, -1);
  for (int i = 0; i < count; ++i) {
    const auto& node = td.nodes[i];
    if (!std::is_sorted(node.bag.begin(), node.bag.end())) return "unsorted bag";
    width = std::max(width, static_cast<int>(node.bag.size()) - 1);
    for (int c : node.children) {
      if (c < 0 || c >= i) return "child does not precede parent";
      if (parent[c] >= 0) return "node with two parents";
      parent[c] = i;
    }
    auto child_bag = [&](int j) -> const std::vector<int>& { return td.nodes[node.children[j]].bag; };
    switch (node.kind) {
      case TdKind::Start:
        if (!node.children.empty() || node.bag.size() != 1 || node.bag[0] != node.vertex) return "bad start node";
        break;
      case TdKind::Introduce: {
        if (node.children.size() != 1) return "introduce arity";
        auto b = child_bag(0);
        if (std::binary_search(b.begin(), b.end(), node.vertex)) return "introduced vertex already present";
        b.insert(std::lower_bound(b.begin(), b.end(), node.vertex), node.vertex);
        if (b != node.bag) return "introduce bag mismatch";
        break;
      }
      case TdKind::Forget: {
        if (node.children.size() != 1) return "forget arity";
        auto b = node.bag;
        if (std::binary_search(b.begin(), b.end(), node.vertex)) return "forgotten vertex still present";
        b.insert(std::lower_bound(b.begin(), b.end(), node.vertex), node.vertex);
        if (b != child_bag(0)) return "forget bag mismatch";
        break;
      }
      case TdKind::Join:
        if (node.children.size() != 2) return "join arity";
        if (child_bag(0) != node.bag || child_bag(1) != node.bag) return "join bags differ";
        break;
    }
  }
  for (int i = 0; i < count; ++i)
    if (i != td.root && parent[i] < 0) return "disconnected node";
  if (width != td.width) return "declared width mismatch";
  // coverage
  for (int v = 0; v < n; ++v) {
    bool seen = false;
    for (const auto& node : td.nodes) seen |= std::binary_search(node.bag.begin(), node.bag.end(), v);
    if (!seen) return "vertex not covered";
  }
  for (auto [u, v] : g.edges()) {
    bool seen = false;
    for (const auto& node : td.nodes)
      seen |= std::binary_search(node.bag.begin(), node.bag.end(), u) &&
              std::binary_search(node.bag.begin(), node.bag.end(), v);
    if (!seen) return "edge not covered";
  }
  // connectivity: nodes containing v form a subtree, i.e. exactly one of them
  // has a parent not containing v (or is the root).
  for (int v = 0; v < n; ++v) {
    int tops = 0;
    for (int i = 0; i < count; ++i) {
      const auto& b = td.nodes[i].bag;
      if (!std::binary_search(b.begin(), b.end(), v)) continue;
      if (parent[i] < 0) {
        ++tops;
        continue;
      }
      const auto& pb = td.nodes[parent[i]].bag;
      if (!std::binary_search(pb.begin(), pb.end(), v)) ++tops;
    }
    if (tops != 1) {
      err << "bags of vertex " << v << " are not connected";
      return err.str();
    }
  }
  return "";
}

}  // namespace pf
