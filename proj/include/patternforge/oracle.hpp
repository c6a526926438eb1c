#pragma once

#include <string>
#include <vector>

#include "patternforge/graph.hpp"
#include "patternforge/poly.hpp"

namespace pf {

constexpr double kExpansionGuard = 1e8;

// Brute-force expansions over the host vertex set [n].
Poly expand_sub(const Graph& h, int n);
Poly expand_ind(const Graph& h, int n);
Poly expand_hom(const Graph& h, int n);

// Replaces x_{u,v} by 1 or 0 according to adjacency in g.
Poly substitute_host(const Poly& f, const Graph& g);

struct IndSubTerm {
  Graph graph;           // labelled supergraph (labelled form) or class representative
  BigInt coefficient;    // (-1)^{e(H')-e(H)} nsub(H, H')
  std::uint64_t nsub = 0;
  std::uint64_t multiplicity = 1;  // labelled supergraphs in the class
};

struct IndSubExpansion {
  // Every labelled supergraph H' of H (H itself first).
  std::vector<IndSubTerm> labelled;
  // Merged by isomorphism class, ordered by edge count.
  std::vector<IndSubTerm> classes;
};

IndSubExpansion indsub_coefficients(const Graph& h);

// Number of homomorphisms h -> g by enumeration.
BigInt brute_force_hom_count(const Graph& h, const Graph& g);

}  // namespace pf
