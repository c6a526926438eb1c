#pragma once

#include <string>
#include <vector>

#include "patternforge/evaluable.hpp"
#include "patternforge/patterns.hpp"

namespace pf {

// Variable naming for Hom-polynomial builders. Builders index host vertices
// by v in [n]; the naming decides which actual host vertex and variables
// pattern vertex a uses at v.
//
// plain:   host(a, v) = v, variables y_v, z_{a,v}, x_{u,v}.
// colored: the host is [n] x [colors] x [copies]; pattern vertex a may only
//          use vertices of colour color[a] in copy `copy`, encoded as
//          (v * colors + color[a]) * copies + copy, and its z-variable is
//          z_{color[a], host}.
struct Naming {
  int n = 0;
  bool colored = false;
  std::vector<int> color;
  int colors = 0;
  int copies = 1;
  int copy = 0;

  static Naming plain(int n);
  static Naming colored_by(int n, std::vector<int> color, int colors, int copies = 1, int copy = 0);

  int host(int a, int v) const { return colored ? (v * colors + color[a]) * copies + copy : v; }
  // Size of the host vertex range the variables live on.
  int host_size() const { return colored ? n * colors * copies : n; }
  Var y(int a, int v) const { return Var::y(host(a, v)); }
  Var z(int a, int v) const { return Var::z(colored ? color[a] : a, host(a, v)); }
  Var x(int a, int b, int u, int v) const { return Var::x(host(a, u), host(b, v)); }
  // Whether pattern vertices a, b may sit at u, v when adjacent.
  bool distinct(int a, int u, int b, int v) const { return host(a, u) != host(b, v); }
  void check(int k) const;
};

enum class BuildMethod { Treewidth, P5Bar, P6Bar, K5MinusP4, H6, KkMinusE };

std::string method_name(BuildMethod m);
BuildMethod parse_method(const std::string& s);

struct BuilderSpec {
  PatternId pattern;
  BuildMethod method = BuildMethod::Treewidth;
  int n = 0;
  bool colored = false;
};

// Labelled pattern graph whose Hom polynomial a specialized method computes.
Graph method_pattern(BuildMethod m, int k = 0);
// Picks the specialized method for a pattern when one exists.
BuildMethod default_method(const PatternId& p);

// Generic nice-tree-decomposition dynamic program, O(n^{tw+1}) gates.
CircuitDag build_treewidth(const Graph& h, const Naming& nm);
MatrixProgram build_p5bar(const Naming& nm);
MatrixProgram build_p6bar(const Naming& nm);
MatrixProgram build_k5_minus_p4(const Naming& nm);
MatrixProgram build_h6(const Naming& nm);
MatrixProgram build_kk_minus_e(int k, const Naming& nm);

// Dispatch. Colored builds use the identity colouring with k colours.
Evaluable build(const BuilderSpec& spec);
Evaluable build(BuildMethod m, const Graph& h, const Naming& nm);

}  // namespace pf
