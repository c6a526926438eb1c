#pragma once

#include <memory>
#include <string>

#include "patternforge/graph.hpp"

namespace pf {

enum class Family { Path, Cycle, Clique, Independent, CliqueMinusEdge, CliqueMinusPath, H3k, Complement, Explicit };

// Identifies a catalog pattern. k is the vertex count of the pattern.
struct PatternId {
  Family family = Family::Explicit;
  int k = 0;
  std::shared_ptr<const PatternId> inner;  // Complement only
  Graph graph;                             // Explicit only

  static PatternId path(int k) { return {Family::Path, k, nullptr, {}}; }
  static PatternId cycle(int k) { return {Family::Cycle, k, nullptr, {}}; }
  static PatternId clique(int k) { return {Family::Clique, k, nullptr, {}}; }
  static PatternId independent(int k) { return {Family::Independent, k, nullptr, {}}; }
  static PatternId clique_minus_edge(int k) { return {Family::CliqueMinusEdge, k, nullptr, {}}; }
  static PatternId clique_minus_path(int k) { return {Family::CliqueMinusPath, k, nullptr, {}}; }
  static PatternId h3k(int vertices) { return {Family::H3k, vertices, nullptr, {}}; }
  static PatternId complement_of(const PatternId& p);
  static PatternId explicit_graph(const Graph& g);

  std::string name() const;
};

// Throws DomainError if the family/k combination is invalid.
void validate(const PatternId& id);

// Canonically labelled pattern graph (0-indexed). The labellings follow
// the fixed vertex numberings used by the constructions built on top of
// them (P5-bar, P6-bar, K5-P4 drawings; H_3k clique-plus-apex numbering).
Graph make_pattern(const PatternId& id);

// Pattern spec strings: P5, C7, K4, I3, H6, K4-e, Kk-e:6, K5-P4, Kk-P:5,
// co:<spec>, g6:<graph6>, file:<path> (graph6, or edge list for *.edges/*.txt).
PatternId parse_pattern_spec(const std::string& spec);

// Path 1-2-...-k complemented, i.e. the sequential labelling of the
// path complement (the endpoints are vertices 0 and k-1).
Graph path_complement_sequential(int k);
// K_k minus the path 2-3-...-k (0-indexed: vertex 0 is adjacent to all).
Graph clique_minus_path_sequential(int k);
// Complement of the cycle 1-2-...-k-1.
Graph cycle_complement_sequential(int k);

}  // namespace pf
