#include "patternforge/iso.hpp"

#include <algorithm>
#include <map>

#include "patternforge/errors.hpp"

namespace pf {

void for_each_edge_preserving_bijection(const Graph& h, const Graph& g,
                                        const std::function<bool(const std::vector<int>&)>& visit) {
  const int n = h.n();
  if (g.n() != n) throw DomainError("vertex count mismatch");
  if (h.edge_count() > g.edge_count()) return;
  std::vector<int> perm(n, -1);
  std::vector<char> used(n, 0);
  // earlier neighbours of each pattern vertex
  std::vector<std::vector<int>> back(n);
  for (auto [u, v] : h.edges()) back[v].push_back(u);
  bool stop = false;
  auto rec = [&](auto&& self, int i) -> void {
    if (stop) return;
    if (i == n) {
      if (!visit(perm)) stop = true;
      return;
    }
    for (int c = 0; c < n && !stop; ++c) {
      if (used[c] || g.degree(c) < h.degree(i)) continue;
      bool ok = true;
      for (int u : back[i])
        if (!g.has_edge(perm[u], c)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      used[c] = 1;
      perm[i] = c;
      self(self, i + 1);
      used[c] = 0;
    }
    perm[i] = -1;
  };
  rec(rec, 0);
}

std::vector<std::vector<int>> automorphisms(const Graph& g) {
  if (g.n() > kAutomorphismVertexLimit)
    throw CapabilityError("automorphism search limited to " + std::to_string(kAutomorphismVertexLimit) + " vertices");
  std::vector<std::vector<int>> out;
  for_each_edge_preserving_bijection(g, g, [&](const std::vector<int>& p) {
    out.push_back(p);
    return true;
  });
  return out;
}

std::uint64_t automorphism_count(const Graph& g) {
  if (g.n() > kAutomorphismVertexLimit)
    throw CapabilityError("automorphism search limited to " + std::to_string(kAutomorphismVertexLimit) + " vertices");
  std::uint64_t count = 0;
  for_each_edge_preserving_bijection(g, g, [&](const std::vector<int>&) {
    ++count;
    return true;
  });
  return count;
}

std::uint64_t copy_count(const Graph& h, const Graph& g) {
  if (h.n() != g.n()) throw DomainError("copy_count needs equal vertex counts");
  if (h.n() > kCopyCountVertexLimit)
    throw CapabilityError("copy_count limited to " + std::to_string(kCopyCountVertexLimit) + " vertices");
  std::uint64_t maps = 0;
  for_each_edge_preserving_bijection(h, g, [&](const std::vector<int>&) {
    ++maps;
    return true;
  });
  return maps / automorphism_count(h);
}

std::vector<Graph> proper_supergraphs(const Graph& h) {
  if (h.n() > kCopyCountVertexLimit)
    throw CapabilityError("proper_supergraphs limited to " + std::to_string(kCopyCountVertexLimit) + " vertices");
  std::vector<Edge> missing = complement(h).edges();
  if (missing.size() > 24) throw GuardError("too many non-edges to enumerate supergraphs");
  std::vector<Graph> out;
  const std::uint64_t total = std::uint64_t{1} << missing.size();
  out.reserve(total - 1);
  for (std::uint64_t s = 1; s < total; ++s) {
    Graph sup = h;
    for (std::size_t i = 0; i < missing.size(); ++i)
      if (s >> i & 1) sup.add_edge(missing[i].first, missing[i].second);
    out.push_back(std::move(sup));
  }
  return out;
}

namespace {

// Vertex invariant used to restrict canonical-form permutations.
std::vector<std::vector<int>> vertex_classes(const Graph& g) {
  std::map<std::pair<int, std::vector<int>>, std::vector<int>> buckets;
  for (int v = 0; v < g.n(); ++v) {
    std::vector<int> nd;
    for (int u : g.neighbors(v)) nd.push_back(g.degree(u));
    std::sort(nd.begin(), nd.end());
    buckets[{g.degree(v), nd}].push_back(v);
  }
  std::vector<std::vector<int>> out;
  for (auto& [key, vs] : buckets) out.push_back(vs);
  return out;
}

}  // namespace

std::string canonical_form(const Graph& g) {
  const int n = g.n();
  auto classes = vertex_classes(g);
  // order[pos] = original vertex placed at position pos
  std::vector<int> order;
  for (auto& c : classes) order.insert(order.end(), c.begin(), c.end());
  std::vector<std::pair<int, int>> ranges;
  int start = 0;
  for (auto& c : classes) {
    ranges.emplace_back(start, start + static_cast<int>(c.size()));
    start += static_cast<int>(c.size());
  }
  std::string best;
  bool have = false;
  auto encode = [&]() {
    std::string bits;
    bits.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int j = 1; j < n; ++j)
      for (int i = 0; i < j; ++i) bits.push_back(g.has_edge(order[i], order[j]) ? '1' : '0');
    return bits;
  };
  auto rec = [&](auto&& self, std::size_t r) -> void {
    if (r == ranges.size()) {
      std::string bits = encode();
      if (!have || bits < best) {
        best = bits;
        have = true;
      }
      return;
    }
    auto [lo, hi] = ranges[r];
    std::sort(order.begin() + lo, order.begin() + hi);
    do {
      self(self, r + 1);
    } while (std::next_permutation(order.begin() + lo, order.begin() + hi));
  };
  rec(rec, 0);
  // Prefix with class signature so differently-shaped classes never collide.
  std::string sig = std::to_string(n) + ":";
  for (auto& c : classes) sig += std::to_string(g.degree(c.front())) + "x" + std::to_string(c.size()) + ",";
  return sig + best;
}

bool isomorphic(const Graph& a, const Graph& b) {
  if (a.n() != b.n() || a.edge_count() != b.edge_count()) return false;
  return !find_isomorphism(a, b).empty() || a.n() == 0;
}

std::vector<int> find_isomorphism(const Graph& a, const Graph& b) {
  if (a.n() != b.n() || a.edge_count() != b.edge_count()) return {};
  std::vector<int> found;
  for_each_edge_preserving_bijection(a, b, [&](const std::vector<int>& p) {
    found = p;
    return false;
  });
  return found;
}

std::vector<Graph> isomorphism_classes(int n) {
  if (n > 6) throw CapabilityError("isomorphism class enumeration limited to 6 vertices");
  std::vector<Edge> all;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) all.emplace_back(i, j);
  std::map<std::pair<std::size_t, std::string>, Graph> reps;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << all.size()); ++s) {
    Graph g(n);
    for (std::size_t i = 0; i < all.size(); ++i)
      if (s >> i & 1) g.add_edge(all[i].first, all[i].second);
    auto key = std::make_pair(g.edge_count(), canonical_form(g));
    reps.emplace(key, g);
  }
  std::vector<Graph> out;
  for (auto& [k, g] : reps) out.push_back(g);
  return out;
}

}  // namespace pf
