#include "patternforge/builders.hpp"

#include <algorithm>
#include <functional>

#include "patternforge/treedec.hpp"

namespace pf {

Naming Naming::plain(int n) {
  Naming nm;
  nm.n = n;
  return nm;
}

Naming Naming::colored_by(int n, std::vector<int> color, int colors, int copies, int copy) {
  Naming nm;
  nm.n = n;
  nm.colored = true;
  nm.color = std::move(color);
  nm.colors = colors;
  nm.copies = copies;
  nm.copy = copy;
  return nm;
}

void Naming::check(int k) const {
  if (n < 1) throw DomainError("host size must be at least 1");
  if (!colored) return;
  if (static_cast<int>(color.size()) != k) throw DomainError("colouring does not cover the pattern");
  std::vector<char> used(colors, 0);
  for (int c : color) {
    if (c < 0 || c >= colors || used[c]) throw DomainError("colouring must be injective into the colour range");
    used[c] = 1;
  }
  if (copies < 1 || copy < 0 || copy >= copies) throw DomainError("copy index out of range");
}

std::string method_name(BuildMethod m) {
  switch (m) {
    case BuildMethod::Treewidth: return "treewidth";
    case BuildMethod::P5Bar: return "p5bar";
    case BuildMethod::P6Bar: return "p6bar";
    case BuildMethod::K5MinusP4: return "k5-p4";
    case BuildMethod::H6: return "h6";
    case BuildMethod::KkMinusE: return "kk-e";
  }
  return "?";
}

BuildMethod parse_method(const std::string& s) {
  for (auto m : {BuildMethod::Treewidth, BuildMethod::P5Bar, BuildMethod::P6Bar, BuildMethod::K5MinusP4, BuildMethod::H6,
                 BuildMethod::KkMinusE})
    if (method_name(m) == s) return m;
  throw DomainError("unknown builder method '" + s + "'");
}

Graph method_pattern(BuildMethod m, int k) {
  switch (m) {
    case BuildMethod::P5Bar: return make_pattern(PatternId::complement_of(PatternId::path(5)));
    case BuildMethod::P6Bar: return make_pattern(PatternId::complement_of(PatternId::path(6)));
    case BuildMethod::K5MinusP4: return make_pattern(PatternId::clique_minus_path(5));
    case BuildMethod::H6: return make_pattern(PatternId::h3k(6));
    case BuildMethod::KkMinusE:
      if (k < 4 || k > 8) throw DomainError("K_k - e builder needs 4 <= k <= 8");
      return make_pattern(PatternId::clique_minus_edge(k));
    case BuildMethod::Treewidth: break;
  }
  throw DomainError("treewidth builder has no fixed pattern");
}

BuildMethod default_method(const PatternId& p) {
  if (p.family == Family::Complement && p.inner && p.inner->family == Family::Path) {
    if (p.inner->k == 5) return BuildMethod::P5Bar;
    if (p.inner->k == 6) return BuildMethod::P6Bar;
  }
  if (p.family == Family::CliqueMinusPath && p.k == 5) return BuildMethod::K5MinusP4;
  if (p.family == Family::H3k && p.k == 6) return BuildMethod::H6;
  if (p.family == Family::CliqueMinusEdge && p.k >= 4 && p.k <= 8) return BuildMethod::KkMinusE;
  return BuildMethod::Treewidth;
}

// ---------------------------------------------------------------- treewidth

CircuitDag build_treewidth(const Graph& h, const Naming& nm) {
  nm.check(h.n());
  CircuitDag dag;
  if (h.n() == 0) {
    dag.set_output(dag.one());
    return dag;
  }
  const int n = nm.n;
  auto td = nice_tree_decomposition(h);
  std::vector<std::size_t> pw{1};
  for (int i = 0; i < td.width + 2; ++i) {
    if (pw.back() > (std::size_t{1} << 40) / static_cast<std::size_t>(n))
      throw CapabilityError("treewidth table too large for host size");
    pw.push_back(pw.back() * n);
  }
  // Table per node: gate id of I_p(phi), phi encoded with the i-th bag
  // vertex as digit i in base n.
  std::vector<std::vector<int>> table(td.nodes.size());
  std::vector<int> consumers(td.nodes.size(), 0);
  for (const auto& node : td.nodes)
    for (int c : node.children) ++consumers[c];
  auto pos = [](const std::vector<int>& bag, int a) {
    return static_cast<int>(std::lower_bound(bag.begin(), bag.end(), a) - bag.begin());
  };
  for (std::size_t id = 0; id < td.nodes.size(); ++id) {
    const TdNode& node = td.nodes[id];
    const auto& bag = node.bag;
    const std::size_t size = pw[bag.size()];
    std::vector<int> out(size);
    std::vector<int> digit(bag.size());
    auto decode = [&](std::size_t idx) {
      for (std::size_t i = 0; i < bag.size(); ++i) {
        digit[i] = static_cast<int>(idx % n);
        idx /= n;
      }
    };
    switch (node.kind) {
      case TdKind::Start:
        std::fill(out.begin(), out.end(), dag.one());
        break;
      case TdKind::Introduce: {
        const auto& child = td.nodes[node.children[0]];
        const auto& ct = table[node.children[0]];
        for (std::size_t idx = 0; idx < size; ++idx) {
          decode(idx);
          std::size_t cidx = 0;
          for (std::size_t i = 0; i < bag.size(); ++i)
            if (bag[i] != node.vertex) cidx += digit[i] * pw[pos(child.bag, bag[i])];
          out[idx] = ct[cidx];
        }
        break;
      }
      case TdKind::Join: {
        const auto& t1 = table[node.children[0]];
        const auto& t2 = table[node.children[1]];
        for (std::size_t idx = 0; idx < size; ++idx) out[idx] = dag.mul(t1[idx], t2[idx]);
        break;
      }
      case TdKind::Forget: {
        const int a = node.vertex;
        const auto& child = td.nodes[node.children[0]];
        const auto& ct = table[node.children[0]];
        const std::size_t apos = pw[pos(child.bag, a)];
        std::vector<int> zy(n);
        for (int v = 0; v < n; ++v) zy[v] = dag.mul(dag.input(nm.z(a, v)), dag.input(nm.y(a, v)));
        std::vector<std::pair<std::size_t, int>> nbrs;  // (position in this bag, vertex)
        for (std::size_t i = 0; i < bag.size(); ++i)
          if (h.has_edge(a, bag[i])) nbrs.push_back({i, bag[i]});
        for (std::size_t idx = 0; idx < size; ++idx) {
          decode(idx);
          std::size_t base = 0;
          for (std::size_t i = 0; i < bag.size(); ++i) base += digit[i] * pw[pos(child.bag, bag[i])];
          std::vector<int> terms;
          for (int v = 0; v < n; ++v) {
            int t = zy[v];
            bool ok = true;
            for (auto [i, b] : nbrs) {
              if (!nm.distinct(a, v, b, digit[i])) {
                ok = false;
                break;
              }
              t = dag.mul(t, dag.input(nm.x(a, b, v, digit[i])));
            }
            if (!ok) continue;
            terms.push_back(dag.mul(t, ct[base + v * apos]));
          }
          out[idx] = dag.sum(terms);
        }
        break;
      }
    }
    table[id] = std::move(out);
    for (int c : node.children)
      if (--consumers[c] == 0) std::vector<int>().swap(table[c]);
  }
  dag.set_output(table[td.root][0]);
  return dag;
}

// ---------------------------------------------------------- matrix programs

namespace {

// Helpers for assembling entries by pattern role.
struct ProgramBuilder {
  MatrixProgram prog;
  const Naming& nm;
  explicit ProgramBuilder(const Naming& naming) : nm(naming) {}

  int in(Var v) { return prog.input(v); }
  // z_a y_a at v
  void vertex(EntryProduct& e, int a, int v) {
    e.inputs.push_back(in(nm.z(a, v)));
    e.inputs.push_back(in(nm.y(a, v)));
  }
  void edge(EntryProduct& e, int a, int b, int u, int v) { e.inputs.push_back(in(nm.x(a, b, u, v))); }

  // n x n matrix of x variables for the pattern edge ab; entry (u, v).
  void edge_matrix(const std::string& name, int a, int b) {
    DefineMatrix m{name, nm.n, nm.n, false, {}, {}};
    for (int u = 0; u < nm.n; ++u)
      for (int v = 0; v < nm.n; ++v) {
        if (!nm.distinct(a, u, b, v)) continue;
        SparseEntry e{u, v, {}};
        edge(e.value, a, b, u, v);
        m.entries.push_back(std::move(e));
      }
    prog.define(std::move(m));
  }
  // Diagonal z_a y_a.
  void vertex_diagonal(const std::string& name, int a) {
    DefineMatrix m{name, nm.n, nm.n, true, {}, {}};
    for (int v = 0; v < nm.n; ++v) {
      SparseEntry e{v, v, {}};
      vertex(e.value, a, v);
      m.entries.push_back(std::move(e));
    }
    prog.define(std::move(m));
  }
  // Shares one adjacency matrix in plain mode, where all edge matrices agree.
  std::string shared_edge_matrix(const std::string& plain_name, int a, int b) {
    if (!nm.colored) {
      if (!plain_defined) {
        edge_matrix(plain_name, a, b);
        plain_defined = true;
      }
      return plain_name;
    }
    std::string name = plain_name + std::to_string(a + 1) + std::to_string(b + 1);
    edge_matrix(name, a, b);
    return name;
  }
  bool plain_defined = false;
};

int pair_index(int n, int i, int j) { return i * n + j; }

}  // namespace

// Vertices (0-indexed) 0..4 stand for the drawing's 1..5; edges
// 12 13 23 14 45 25. Output sum_{i,j} z1 z2 y y x12 (A B A)_{ij} (A C A D A)_{ij}.
MatrixProgram build_p5bar(const Naming& nm) {
  nm.check(5);
  ProgramBuilder pb(nm);
  const int n = nm.n;
  std::string a13 = pb.shared_edge_matrix("A", 0, 2);
  std::string a32 = pb.shared_edge_matrix("A", 2, 1);
  std::string a14 = pb.shared_edge_matrix("A", 0, 3);
  std::string a45 = pb.shared_edge_matrix("A", 3, 4);
  std::string a52 = pb.shared_edge_matrix("A", 4, 1);
  pb.vertex_diagonal("B", 2);
  pb.vertex_diagonal("C", 3);
  pb.vertex_diagonal("D", 4);
  auto& p = pb.prog;
  p.multiply("AB", a13, "B");
  p.multiply("ABA", "AB", a32);
  p.multiply("AC", a14, "C");
  p.multiply("ACA", "AC", a45);
  p.multiply("ACAD", "ACA", "D");
  p.multiply("ACADA", "ACAD", a52);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!nm.distinct(0, i, 1, j)) continue;
      OutputTerm t;
      pb.vertex(t.factor, 0, i);
      pb.vertex(t.factor, 1, j);
      pb.edge(t.factor, 0, 1, i, j);
      t.refs = {{"ABA", i, j}, {"ACADA", i, j}};
      p.add_output(std::move(t));
    }
  p.validate();
  return std::move(p);
}

// Drawing labels 1..6 are vertices 0..5; i, j, k, l, p, q sit at 2, 1, 6, 5,
// 3, 4. Placeholder families: 2 -> FG, 3 -> x_jp x_kp, 4 -> x_jq x_kq, 5 -> DE.
MatrixProgram build_p6bar(const Naming& nm) {
  nm.check(6);
  ProgramBuilder pb(nm);
  auto& p = pb.prog;
  const int n = nm.n, n2 = n * n;
  constexpr int V1 = 0, V2 = 1, V3 = 2, V4 = 3, V5 = 4, V6 = 5;
  // family 3: ((j,k), p) -> x_jp x_kp ; family 4: ((j,k), q) -> x_jq x_kq
  for (auto [fam, mid] : {std::pair{3, V3}, std::pair{4, V4}}) {
    std::vector<SparseEntry> table;
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int m = 0; m < n; ++m) {
          if (!nm.distinct(V1, j, mid, m) || !nm.distinct(V6, k, mid, m)) continue;
          SparseEntry e{pair_index(n, j, k), m, {}};
          pb.edge(e.value, V1, mid, j, m);
          pb.edge(e.value, V6, mid, k, m);
          table.push_back(std::move(e));
        }
    p.bind_table(fam, n2, n, std::move(table));
  }
  // D_{(j,k),p} = y_p z3p PH3, E_{p,l} = x_pl; F_{(j,k),q} = y_q z4q PH4, G_{q,i} = x_qi
  for (auto [dname, ename, mid, fam, last] :
       {std::tuple{"D", "E", V3, 3, V5}, std::tuple{"F", "G", V4, 4, V2}}) {
    DefineMatrix d{dname, n2, n, false, {}, {fam}};
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        if (!nm.distinct(V1, j, V6, k)) continue;
        for (int m = 0; m < n; ++m) {
          if (!nm.distinct(V1, j, mid, m) || !nm.distinct(V6, k, mid, m)) continue;
          SparseEntry e{pair_index(n, j, k), m, {}};
          pb.vertex(e.value, mid, m);
          e.value.holes.push_back({fam, pair_index(n, j, k), m});
          d.entries.push_back(std::move(e));
        }
      }
    p.define(std::move(d));
    pb.edge_matrix(ename, mid, last);
  }
  p.multiply("DE", "D", "E");
  p.bind(5, "DE");
  p.multiply("FG", "F", "G");
  p.bind(2, "FG");
  // A_{i,(j,k)} = z2i z1j z6k y y y PH2[(j,k),i] x_jk x_ki
  DefineMatrix a{"A", n, n2, false, {}, {2}};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        if (!nm.distinct(V1, j, V6, k) || !nm.distinct(V2, i, V6, k)) continue;
        SparseEntry e{i, pair_index(n, j, k), {}};
        pb.vertex(e.value, V2, i);
        pb.vertex(e.value, V1, j);
        pb.vertex(e.value, V6, k);
        e.value.holes.push_back({2, pair_index(n, j, k), i});
        pb.edge(e.value, V1, V6, j, k);
        pb.edge(e.value, V6, V2, k, i);
        a.entries.push_back(std::move(e));
      }
  p.define(std::move(a));
  // B_{(j,k),l} = z5l y_l PH5[(j,k),l] x_jl
  DefineMatrix b{"B", n2, n, false, {}, {5}};
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      if (!nm.distinct(V1, j, V6, k)) continue;
      for (int l = 0; l < n; ++l) {
        if (!nm.distinct(V1, j, V5, l)) continue;
        SparseEntry e{pair_index(n, j, k), l, {}};
        pb.vertex(e.value, V5, l);
        e.value.holes.push_back({5, pair_index(n, j, k), l});
        pb.edge(e.value, V1, V5, j, l);
        b.entries.push_back(std::move(e));
      }
    }
  p.define(std::move(b));
  pb.edge_matrix("C", V5, V2);
  p.multiply("AB", "A", "B");
  p.multiply("ABC", "AB", "C");
  for (int i = 0; i < n; ++i) p.add_output(OutputTerm{{}, {{"ABC", i, i}}});
  p.validate();
  return std::move(p);
}

// Drawing labels 1..5 are vertices 0..4; edges 12 13 23 14 34 25 35.
// A_{ij} = x13 (F C F)_{ij}, E_{ij} = x32 (F D F)_{ij}; output
// sum z1 z2 y y x12 (A B E)_{ij}. The direct factors x13 and x32 carry the
// edges 13 and 32, which the placeholder products alone do not.
MatrixProgram build_k5_minus_p4(const Naming& nm) {
  nm.check(5);
  ProgramBuilder pb(nm);
  auto& p = pb.prog;
  const int n = nm.n;
  constexpr int V1 = 0, V2 = 1, V3 = 2, V4 = 3, V5 = 4;
  std::string f14 = pb.shared_edge_matrix("F", V1, V4);
  std::string f43 = pb.shared_edge_matrix("F", V4, V3);
  std::string f35 = pb.shared_edge_matrix("F", V3, V5);
  std::string f52 = pb.shared_edge_matrix("F", V5, V2);
  pb.vertex_diagonal("B", V3);
  pb.vertex_diagonal("C", V4);
  pb.vertex_diagonal("D", V5);
  p.multiply("FC", f14, "C");
  p.multiply("FCF", "FC", f43);
  p.bind(1, "FCF");
  p.multiply("FD", f35, "D");
  p.multiply("FDF", "FD", f52);
  p.bind(2, "FDF");
  for (auto [name, a, b, fam] : {std::tuple{"A", V1, V3, 1}, std::tuple{"E", V3, V2, 2}}) {
    DefineMatrix m{name, n, n, false, {}, {fam}};
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) {
        if (!nm.distinct(a, u, b, v)) continue;
        SparseEntry e{u, v, {}};
        pb.edge(e.value, a, b, u, v);
        e.value.holes.push_back({fam, u, v});
        m.entries.push_back(std::move(e));
      }
    p.define(std::move(m));
  }
  p.multiply("AB", "A", "B");
  p.multiply("ABE", "AB", "E");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!nm.distinct(V1, i, V2, j)) continue;
      OutputTerm t;
      pb.vertex(t.factor, V1, i);
      pb.vertex(t.factor, V2, j);
      pb.edge(t.factor, V1, V2, i, j);
      t.refs = {{"ABE", i, j}};
      p.add_output(std::move(t));
    }
  p.validate();
  return std::move(p);
}

// H_6: clique on 1..5, vertex 6 adjacent to 1, 2, 3 (0-indexed 0..5).
// A: (v1,v2) x (v4,v5); B: (v4,v5) x v3; C: v3 x (v1,v2) carrying the
// placeholder for the triple (v1, v2, v3), bound to (D E)_{(v1,v2),v3}.
MatrixProgram build_h6(const Naming& nm) {
  nm.check(6);
  ProgramBuilder pb(nm);
  auto& p = pb.prog;
  const int n = nm.n, n2 = n * n;
  constexpr int V1 = 0, V2 = 1, V3 = 2, V4 = 3, V5 = 4, V6 = 5;
  auto all_distinct = [&](std::initializer_list<std::pair<int, int>> placed) {
    for (auto it = placed.begin(); it != placed.end(); ++it)
      for (auto jt = std::next(it); jt != placed.end(); ++jt)
        if (!nm.distinct(it->first, it->second, jt->first, jt->second)) return false;
    return true;
  };
  // D_{(v1,v2),v6} = z6 y6 x16 x26 ; E_{v6,v3} = x36
  DefineMatrix d{"D", n2, n, false, {}, {}};
  for (int v1 = 0; v1 < n; ++v1)
    for (int v2 = 0; v2 < n; ++v2)
      for (int v6 = 0; v6 < n; ++v6) {
        if (!all_distinct({{V1, v1}, {V2, v2}, {V6, v6}})) continue;
        SparseEntry e{pair_index(n, v1, v2), v6, {}};
        pb.vertex(e.value, V6, v6);
        pb.edge(e.value, V1, V6, v1, v6);
        pb.edge(e.value, V2, V6, v2, v6);
        d.entries.push_back(std::move(e));
      }
  p.define(std::move(d));
  pb.edge_matrix("E", V6, V3);
  p.multiply("DE", "D", "E");
  p.bind(1, "DE");
  DefineMatrix a{"A", n2, n2, false, {}, {}};
  for (int v1 = 0; v1 < n; ++v1)
    for (int v2 = 0; v2 < n; ++v2)
      for (int v4 = 0; v4 < n; ++v4)
        for (int v5 = 0; v5 < n; ++v5) {
          if (!all_distinct({{V1, v1}, {V2, v2}, {V4, v4}, {V5, v5}})) continue;
          SparseEntry e{pair_index(n, v1, v2), pair_index(n, v4, v5), {}};
          pb.vertex(e.value, V1, v1);
          pb.vertex(e.value, V2, v2);
          pb.vertex(e.value, V4, v4);
          pb.vertex(e.value, V5, v5);
          pb.edge(e.value, V1, V2, v1, v2);
          pb.edge(e.value, V1, V4, v1, v4);
          pb.edge(e.value, V1, V5, v1, v5);
          pb.edge(e.value, V2, V4, v2, v4);
          pb.edge(e.value, V2, V5, v2, v5);
          pb.edge(e.value, V4, V5, v4, v5);
          a.entries.push_back(std::move(e));
        }
  p.define(std::move(a));
  DefineMatrix b{"B", n2, n, false, {}, {}};
  for (int v4 = 0; v4 < n; ++v4)
    for (int v5 = 0; v5 < n; ++v5)
      for (int v3 = 0; v3 < n; ++v3) {
        if (!all_distinct({{V3, v3}, {V4, v4}, {V5, v5}})) continue;
        SparseEntry e{pair_index(n, v4, v5), v3, {}};
        pb.vertex(e.value, V3, v3);
        pb.edge(e.value, V3, V4, v3, v4);
        pb.edge(e.value, V3, V5, v3, v5);
        b.entries.push_back(std::move(e));
      }
  p.define(std::move(b));
  DefineMatrix c{"C", n, n2, false, {}, {1}};
  for (int v3 = 0; v3 < n; ++v3)
    for (int v1 = 0; v1 < n; ++v1)
      for (int v2 = 0; v2 < n; ++v2) {
        if (!all_distinct({{V1, v1}, {V2, v2}, {V3, v3}})) continue;
        SparseEntry e{v3, pair_index(n, v1, v2), {}};
        e.value.holes.push_back({1, pair_index(n, v1, v2), v3});
        pb.edge(e.value, V3, V1, v3, v1);
        pb.edge(e.value, V3, V2, v3, v2);
        c.entries.push_back(std::move(e));
      }
  p.define(std::move(c));
  p.multiply("AB", "A", "B");
  p.multiply("ABC", "AB", "C");
  for (int r = 0; r < n2; ++r) p.add_output(OutputTerm{{}, {{"ABC", r, r}}});
  p.validate();
  return std::move(p);
}

// K_k minus the edge {0, k-1}. The (k-2)-clique core 1..k-2 is split into
// S (first ceil half) and T (rest); rows of the products range over tuples
// for S, columns over tuples for T. P = L1 R1 sums over the apex 0 and
// Q = L2 R2 over the apex k-1:
//   L1[s, a] = core(s) z y(a) x(a, s),  R1[a, t] = x(a, t)
//   L2[s, b] = z y(b) x(b, s),          R2[b, t] = x(b, t)
// and the output is sum_{s,t} core(t) cross(s, t) P[s,t] Q[s,t].
MatrixProgram build_kk_minus_e(int k, const Naming& nm) {
  if (k < 4 || k > 8) throw DomainError("K_k - e builder needs 4 <= k <= 8");
  nm.check(k);
  ProgramBuilder pb(nm);
  auto& p = pb.prog;
  const int n = nm.n;
  const int core = k - 2;
  const int s_size = (core + 1) / 2, t_size = core / 2;
  std::vector<int> S, T;
  for (int i = 0; i < s_size; ++i) S.push_back(1 + i);
  for (int i = 0; i < t_size; ++i) T.push_back(1 + s_size + i);
  const int apex1 = 0, apex2 = k - 1;
  auto count = [&](int len) {
    long long c = 1;
    for (int i = 0; i < len; ++i) c *= n;
    if (c > (1LL << 28)) throw CapabilityError("K_k - e program too large for host size");
    return static_cast<int>(c);
  };
  const int ns = count(s_size), nt = count(t_size);
  auto decode = [&](int idx, int len) {
    std::vector<int> d(len);
    for (int i = len - 1; i >= 0; --i) {
      d[i] = idx % n;
      idx /= n;
    }
    return d;
  };
  auto clique_ok = [&](const std::vector<int>& verts, const std::vector<int>& at) {
    for (std::size_t i = 0; i < verts.size(); ++i)
      for (std::size_t j = i + 1; j < verts.size(); ++j)
        if (!nm.distinct(verts[i], at[i], verts[j], at[j])) return false;
    return true;
  };
  auto core_product = [&](EntryProduct& e, const std::vector<int>& verts, const std::vector<int>& at) {
    for (std::size_t i = 0; i < verts.size(); ++i) pb.vertex(e, verts[i], at[i]);
    for (std::size_t i = 0; i < verts.size(); ++i)
      for (std::size_t j = i + 1; j < verts.size(); ++j) pb.edge(e, verts[i], verts[j], at[i], at[j]);
  };
  auto apex_ok = [&](int apex, int v, const std::vector<int>& verts, const std::vector<int>& at) {
    for (std::size_t i = 0; i < verts.size(); ++i)
      if (!nm.distinct(apex, v, verts[i], at[i])) return false;
    return true;
  };
  for (auto [lname, rname, apex, with_core] :
       {std::tuple{"L1", "R1", apex1, true}, std::tuple{"L2", "R2", apex2, false}}) {
    DefineMatrix l{lname, ns, n, false, {}, {}};
    for (int s = 0; s < ns; ++s) {
      auto at = decode(s, s_size);
      if (!clique_ok(S, at)) continue;
      for (int v = 0; v < n; ++v) {
        if (!apex_ok(apex, v, S, at)) continue;
        SparseEntry e{s, v, {}};
        if (with_core) core_product(e.value, S, at);
        pb.vertex(e.value, apex, v);
        for (std::size_t i = 0; i < S.size(); ++i) pb.edge(e.value, apex, S[i], v, at[i]);
        l.entries.push_back(std::move(e));
      }
    }
    p.define(std::move(l));
    DefineMatrix r{rname, n, nt, false, {}, {}};
    for (int v = 0; v < n; ++v)
      for (int t = 0; t < nt; ++t) {
        auto at = decode(t, t_size);
        if (!clique_ok(T, at) || !apex_ok(apex, v, T, at)) continue;
        SparseEntry e{v, t, {}};
        for (std::size_t i = 0; i < T.size(); ++i) pb.edge(e.value, apex, T[i], v, at[i]);
        r.entries.push_back(std::move(e));
      }
    p.define(std::move(r));
  }
  p.multiply("P", "L1", "R1");
  p.multiply("Q", "L2", "R2");
  std::vector<int> all(S);
  all.insert(all.end(), T.begin(), T.end());
  for (int s = 0; s < ns; ++s) {
    auto as = decode(s, s_size);
    if (!clique_ok(S, as)) continue;
    for (int t = 0; t < nt; ++t) {
      auto at = decode(t, t_size);
      std::vector<int> both(as);
      both.insert(both.end(), at.begin(), at.end());
      if (!clique_ok(all, both)) continue;
      OutputTerm term;
      core_product(term.factor, T, at);
      for (std::size_t i = 0; i < S.size(); ++i)
        for (std::size_t j = 0; j < T.size(); ++j) pb.edge(term.factor, S[i], T[j], as[i], at[j]);
      term.refs = {{"P", s, t}, {"Q", s, t}};
      p.add_output(std::move(term));
    }
  }
  p.validate();
  return std::move(p);
}

// ------------------------------------------------------------------ dispatch

Evaluable build(BuildMethod m, const Graph& h, const Naming& nm) {
  switch (m) {
    case BuildMethod::Treewidth: return build_treewidth(h, nm);
    case BuildMethod::P5Bar: return build_p5bar(nm);
    case BuildMethod::P6Bar: return build_p6bar(nm);
    case BuildMethod::K5MinusP4: return build_k5_minus_p4(nm);
    case BuildMethod::H6: return build_h6(nm);
    case BuildMethod::KkMinusE: return build_kk_minus_e(h.n(), nm);
  }
  throw DomainError("unknown builder method");
}

Evaluable build(const BuilderSpec& spec) {
  validate(spec.pattern);
  Graph h = make_pattern(spec.pattern);
  if (spec.method != BuildMethod::Treewidth) {
    Graph expected = method_pattern(spec.method, h.n());
    if (!(expected == h))
      throw DomainError("method " + method_name(spec.method) + " does not compute pattern " + spec.pattern.name());
  }
  Naming nm = Naming::plain(spec.n);
  if (spec.colored) {
    std::vector<int> id(h.n());
    for (int i = 0; i < h.n(); ++i) id[i] = i;
    nm = Naming::colored_by(spec.n, id, h.n());
  }
  return build(spec.method, h, nm);
}

}  // namespace pf
