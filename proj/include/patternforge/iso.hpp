#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "patternforge/graph.hpp"

namespace pf {

constexpr int kAutomorphismVertexLimit = 12;
constexpr int kCopyCountVertexLimit = 10;

// Calls visit(perm) for every bijection perm: V(h) -> V(g) with
// perm(E(h)) a subset of E(g). Requires h.n() == g.n(). Stops early if
// visit returns false.
void for_each_edge_preserving_bijection(const Graph& h, const Graph& g,
                                        const std::function<bool(const std::vector<int>&)>& visit);

std::vector<std::vector<int>> automorphisms(const Graph& g);
std::uint64_t automorphism_count(const Graph& g);

// Number of edge-set-distinct copies of h inside g on the same vertex set.
std::uint64_t copy_count(const Graph& h, const Graph& g);

// All supergraphs on the same labelled vertex set, excluding h itself.
std::vector<Graph> proper_supergraphs(const Graph& h);

// Isomorphism-invariant key (graph6 of a canonical relabelling).
std::string canonical_form(const Graph& g);
bool isomorphic(const Graph& a, const Graph& b);

// A permutation p with relabel(a, p) == b, or empty if none exists.
std::vector<int> find_isomorphism(const Graph& a, const Graph& b);

// Every graph on n vertices up to isomorphism (n <= 6), ordered by edge count
// then canonical form.
std::vector<Graph> isomorphism_classes(int n);

}  // namespace pf
