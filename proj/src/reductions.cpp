#include "patternforge/reductions.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

#include "patternforge/iso.hpp"
#include "patternforge/oracle.hpp"
#include "patternforge/patterns.hpp"

namespace pf {

std::string kind_name(PolyKind k) {
  switch (k) {
    case PolyKind::Hom: return "Hom";
    case PolyKind::Sub: return "Sub";
    case PolyKind::Ind: return "Ind";
  }
  return "?";
}

PolyFamily PolyFamily::scaled(const BigInt& c) const {
  PolyFamily out = *this;
  for (auto& t : out.terms) t.coef *= c;
  return out;
}

PolyFamily PolyFamily::operator+(const PolyFamily& o) const {
  PolyFamily out = *this;
  out.terms.insert(out.terms.end(), o.terms.begin(), o.terms.end());
  return out;
}

Poly PolyFamily::expand(int n) const {
  Poly out;
  for (const auto& t : terms) {
    Poly p;
    switch (t.kind) {
      case PolyKind::Hom: p = expand_hom(t.graph, n); break;
      case PolyKind::Sub: p = expand_sub(t.graph, n); break;
      case PolyKind::Ind: p = expand_ind(t.graph, n); break;
    }
    out += p.scaled(t.coef);
  }
  return out;
}

std::string PolyFamily::name() const {
  std::string out;
  for (const auto& t : terms) {
    if (!out.empty()) out += " + ";
    if (t.coef != 1) out += t.coef.str() + "*";
    out += kind_name(t.kind) + "[" + to_graph6(t.graph) + "]";
  }
  return out.empty() ? "0" : out;
}

// ---- domains -------------------------------------------------------------

int StructuredDomain::mult() const {
  switch (kind) {
    case Kind::Permuted: return perms;
    case Kind::Tripled: return 3;
    default: return 1;
  }
}

int StructuredDomain::size(int n) const {
  if (kind == Kind::Plain) return n;
  return n * k * mult() + extras;
}

StructuredDomain::Point StructuredDomain::decode(int w, int n) const {
  Point p;
  if (kind == Kind::Plain) {
    p.v = w;
    return p;
  }
  const int grid = n * k * mult();
  if (w >= grid) {
    const int i = w - grid;
    p.extra = true;
    p.v = n + i;
    p.color = k + i;
    return p;
  }
  p.index = w % mult();
  w /= mult();
  p.color = w % k;
  p.v = w / k;
  return p;
}

int StructuredDomain::encode(int v, int color, int index, int n) const {
  if (kind == Kind::Plain) return v;
  (void)n;
  return (v * k + color) * mult() + index;
}

int StructuredDomain::encode_extra(int i, int n) const { return n * k * mult() + i; }

std::string StructuredDomain::describe() const {
  std::string s;
  switch (kind) {
    case Kind::Plain: return "[n]";
    case Kind::Colored: s = "[n]x[" + std::to_string(k) + "]"; break;
    case Kind::Permuted: s = "[n]x[" + std::to_string(k) + "]xP(" + std::to_string(perms) + ")"; break;
    case Kind::Tripled: s = "[n]x[" + std::to_string(k) + "]x[3]"; break;
  }
  if (extras) s += "+" + std::to_string(extras);
  return s;
}

Poly SubstitutionFamily::image(Var v, int n) const {
  auto r = rule(v, n);
  if (!r) throw DomainError(name + ": variable " + v.str() + " outside the domain " + domain.describe());
  return *r;
}

// ---- rule construction helpers -------------------------------------------

namespace {

using Point = StructuredDomain::Point;

Poly pv(Var v) { return Poly::variable(v); }
Poly pc(long long c) { return Poly::constant(c); }
Poly squared(Var v) { return Poly::monomial(Monomial{mono_entry(v, 2)}); }
Poly edge_or_zero(int u, int v) { return u == v ? Poly() : pv(Var::x(u, v)); }
void orient(Point& a, Point& b) {
  if (a.color > b.color) std::swap(a, b);
}
// z_{a,(v,a)} -> t_a, z_{a,(v,b)} -> t_a^2
Poly colour_z(int a, const Point& p, Var aux) { return p.color == a ? pv(aux) : squared(aux); }

struct Rules {
  std::function<Poly(const Point&, int)> y;
  std::function<Poly(Point, Point, int)> x;
  std::function<Poly(int, const Point&, int)> z;  // empty: no z variables in the domain
  int pattern_k = 0;                               // z index range
};

SubstitutionRule wrap(StructuredDomain d, Rules r) {
  return [d, r](Var var, int n) -> std::optional<Poly> {
    const auto m = static_cast<std::uint64_t>(d.size(n));
    switch (var.kind()) {
      case VarKind::Y:
        if (var.first() >= m) return std::nullopt;
        return r.y(d.decode(static_cast<int>(var.first()), n), n);
      case VarKind::X:
        if (var.second() >= m) return std::nullopt;
        return r.x(d.decode(static_cast<int>(var.first()), n), d.decode(static_cast<int>(var.second()), n), n);
      case VarKind::Z:
        if (!r.z || var.first() >= static_cast<std::uint64_t>(r.pattern_k) || var.second() >= m) return std::nullopt;
        return r.z(static_cast<int>(var.first()), d.decode(static_cast<int>(var.second()), n), n);
      default: return std::nullopt;
    }
  };
}

std::function<std::vector<Var>(int)> aux_range(VarKind kind, int count) {
  return [kind, count](int) {
    std::vector<Var> out;
    for (int i = 0; i < count; ++i) out.push_back(kind == VarKind::U ? Var::u(i) : Var::w(i));
    return out;
  };
}

StructuredDomain colored(int k, int extras = 0) { return {StructuredDomain::Kind::Colored, k, 0, extras}; }

Poly y_plain(const Point& p, int) { return pv(Var::y(p.v)); }

std::string kparam(int k) { return "k=" + std::to_string(k); }

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

// Injective edge-preserving map h -> g, or empty.
std::vector<int> find_embedding(const Graph& h, const Graph& g) {
  std::vector<int> phi(h.n(), -1);
  std::vector<char> used(g.n(), 0);
  auto rec = [&](auto&& self, int i) -> bool {
    if (i == h.n()) return true;
    for (int c = 0; c < g.n(); ++c) {
      if (used[c]) continue;
      bool ok = true;
      for (int u : h.neighbors(i))
        if (u < i && !g.has_edge(phi[u], c)) ok = false;
      if (!ok) continue;
      phi[i] = c;
      used[c] = 1;
      if (self(self, i + 1)) return true;
      used[c] = 0;
    }
    return false;
  };
  if (!rec(rec, 0)) return {};
  return phi;
}

std::vector<int> inverse(const std::vector<int>& p) {
  std::vector<int> inv(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) inv[p[i]] = static_cast<int>(i);
  return inv;
}

// ---- individual families ---------------------------------------------------

SubstitutionFamily path_hom(int k) {
  require(k >= 4, "PathHom needs k >= 4");
  const Graph pbar = path_complement_sequential(k);
  SubstitutionFamily s;
  s.name = "PathHom";
  s.params = kparam(k);
  s.domain = colored(k);
  s.target = PolyFamily::hom(pbar);
  s.source = PolyFamily::sub(pbar);
  s.aux = aux_range(VarKind::W, k);
  Rules r;
  r.pattern_k = k;
  r.y = y_plain;
  r.z = [](int a, const Point& p, int) { return colour_z(a, p, Var::w(a)); };
  r.x = [pbar, k](Point a, Point b, int) {
    orient(a, b);
    if (a.color == b.color || !pbar.has_edge(a.color, b.color)) return Poly();
    if (a.color == 0 && b.color == k - 1 && a.v > b.v) return Poly();
    return edge_or_zero(a.v, b.v);
  };
  s.rule = wrap(s.domain, r);
  return s;
}

// which in {1, 2, 3}: the three cycle-lemma substitutions on K_k - P_{k-1}.
Poly cycle_edge(int which, int k, Point a, Point b) {
  orient(a, b);
  const int p = a.color, q = b.color;
  switch (which) {
    case 1:
      if (p == 0 && q == 2 && a.v > b.v) return Poly();
      if (p == 0 && (q == 1 || q == k - 1)) return pc(1);
      break;
    case 2:
      if (p == 0 && q == k - 1 && a.v > b.v) return Poly();
      if (p == 0 && q == 1) return pc(1);
      break;
    default:
      if (p == 1 && q == k - 1 && a.v > b.v) return Poly();
      break;
  }
  return edge_or_zero(a.v, b.v);
}

PolyFamily cycle_source(int which, int k) {
  switch (which) {
    case 1: return PolyFamily::sub(cycle_complement_sequential(k)).scaled(k);
    case 2: return PolyFamily::sub(path_complement_sequential(k));
    default: return PolyFamily::sub(clique_minus_path_sequential(k));
  }
}

SubstitutionFamily cycle_sigma(int which, int k) {
  require(k >= 5, "cycle substitutions need k >= 5");
  SubstitutionFamily s;
  s.name = "CycleSigma" + std::to_string(which);
  s.params = kparam(k);
  s.domain = colored(k);
  s.target = PolyFamily::hom(clique_minus_path_sequential(k));
  s.source = cycle_source(which, k);
  s.factor = which == 1 ? k : 1;
  s.aux = aux_range(VarKind::W, k);
  Rules r;
  r.pattern_k = k;
  r.y = y_plain;
  r.z = [](int a, const Point& p, int) { return colour_z(a, p, Var::w(a)); };
  r.x = [which, k](Point a, Point b, int) { return cycle_edge(which, k, a, b); };
  s.rule = wrap(s.domain, r);
  return s;
}

SubstitutionFamily cycle_combined(int k) {
  require(k >= 5, "cycle substitutions need k >= 5");
  SubstitutionFamily s;
  s.name = "CycleCombined";
  s.params = kparam(k);
  s.domain = {StructuredDomain::Kind::Tripled, k, 0, 0};
  s.target = PolyFamily::hom(clique_minus_path_sequential(k));
  s.source = cycle_source(1, k) + cycle_source(2, k) + cycle_source(3, k);
  s.aux = aux_range(VarKind::W, k);
  Rules r;
  r.pattern_k = k;
  r.y = y_plain;
  r.z = [](int a, const Point& p, int) { return colour_z(a, p, Var::w(a)); };
  r.x = [k](Point a, Point b, int) {
    if (a.index != b.index) return Poly();
    return cycle_edge(a.index + 1, k, a, b);
  };
  s.rule = wrap(s.domain, r);
  return s;
}

SubstitutionFamily h3k_sigma(int t) {
  require(t >= 1, "H3kSigma needs k >= 1");
  const int k = 3 * t;
  Graph h(k);
  for (int u = 0; u < k - 1; ++u)
    for (int v = u + 1; v < k - 1; ++v) h.add_edge(u, v);
  for (int u = 0; u < 2 * t - 1; ++u) h.add_edge(u, k - 1);
  SubstitutionFamily s;
  s.name = "H3kSigma";
  s.params = kparam(t);
  s.domain = colored(k);
  s.target = PolyFamily::hom(h);
  s.source = PolyFamily::sub(h);
  s.aux = aux_range(VarKind::W, k);
  Rules r;
  r.pattern_k = k;
  r.y = y_plain;
  r.z = [](int a, const Point& p, int) { return colour_z(a, p, Var::w(a)); };
  r.x = [t](Point a, Point b, int) {
    orient(a, b);
    const int p = a.color, q = b.color;
    const bool low = q < 2 * t - 1;
    const bool high = p >= 2 * t - 1 && q <= 3 * t - 2;
    if (p < q && (low || high) && a.v > b.v) return Poly();
    return edge_or_zero(a.v, b.v);
  };
  s.rule = wrap(s.domain, r);
  return s;
}

SubstitutionFamily plain_family(const std::string& name, const Graph& h, Rules r) {
  SubstitutionFamily s;
  s.name = name;
  s.params = "H=" + to_graph6(h);
  s.domain = {};
  r.pattern_k = h.n();
  s.rule = wrap(s.domain, r);
  return s;
}

SubstitutionFamily identity(const Graph& h, PolyKind kind) {
  Rules r;
  r.y = y_plain;
  r.x = [](Point a, Point b, int) { return edge_or_zero(a.v, b.v); };
  r.z = [](int a, const Point& p, int) { return pv(Var::z(a, p.v)); };
  auto s = plain_family("Identity", h, r);
  s.target = s.source = PolyFamily{{{1, kind, h}}};
  return s;
}

SubstitutionFamily ind_complement(const Graph& h) {
  Rules r;
  r.y = y_plain;
  r.x = [](Point a, Point b, int) { return pc(1) - edge_or_zero(a.v, b.v); };
  auto s = plain_family("IndComplement", h, r);
  s.source = PolyFamily::ind(h);
  s.target = PolyFamily::ind(complement(h));
  return s;
}

SubstitutionFamily aut_sub_hom(const Graph& h) {
  Rules r;
  r.y = y_plain;
  r.x = [](Point a, Point b, int) { return edge_or_zero(a.v, b.v); };
  r.z = [](int a, const Point&, int) { return pv(Var::u(a)); };
  auto s = plain_family("AutSubHom", h, r);
  s.factor = automorphism_count(h);
  s.source = PolyFamily::sub(h).scaled(s.factor);
  s.target = PolyFamily::hom(h);
  s.aux = aux_range(VarKind::U, h.n());
  return s;
}

SubstitutionFamily supergraph(const Graph& h, const Graph& h2) {
  const int k = h.n();
  require(h2.n() >= k, "Supergraph needs |V(H')| >= |V(H)|");
  auto emb = find_embedding(h, h2);
  require(!emb.empty(), "Supergraph: H is not a subgraph of H'");
  // labelling of H' with the embedded H on 0..k-1
  std::vector<int> perm(h2.n(), -1);
  for (int a = 0; a < k; ++a) perm[emb[a]] = a;
  int next = k;
  for (int v = 0; v < h2.n(); ++v)
    if (perm[v] < 0) perm[v] = next++;
  const Graph lab = relabel(h2, perm);
  const int extras = h2.n() - k;
  SubstitutionFamily s;
  s.name = "Supergraph";
  s.params = "H=" + to_graph6(h) + ",H'=" + to_graph6(h2);
  s.domain = colored(k, extras);
  s.factor = automorphism_count(h);
  s.source = PolyFamily::sub(h).scaled(s.factor);
  s.target = PolyFamily::sub(lab);
  s.aux = aux_range(VarKind::U, k + extras);
  Rules r;
  r.y = [](const Point& p, int) {
    if (p.extra) return pv(Var::u(p.color));
    return pv(Var::y(p.v)) * pv(Var::u(p.color));
  };
  r.x = [h, lab](Point a, Point b, int) {
    if (a.color == b.color) return Poly();
    if (!a.extra && !b.extra && h.has_edge(a.color, b.color)) return edge_or_zero(a.v, b.v);
    if (lab.has_edge(a.color, b.color)) return pc(1);
    return Poly();
  };
  s.rule = wrap(s.domain, r);
  return s;
}

SubstitutionFamily ind_harder(const Graph& h) {
  const int k = h.n();
  SubstitutionFamily s;
  s.name = "IndHarder";
  s.params = "H=" + to_graph6(h);
  s.domain = colored(k);
  s.factor = automorphism_count(h);
  s.source = PolyFamily::sub(h).scaled(s.factor);
  s.target = PolyFamily::ind(h);
  s.aux = aux_range(VarKind::U, k);
  Rules r;
  r.y = [](const Point& p, int) { return pv(Var::y(p.v)) * pv(Var::u(p.color)); };
  r.x = [h](Point a, Point b, int) {
    if (a.color != b.color && h.has_edge(a.color, b.color)) return edge_or_zero(a.v, b.v);
    return Poly();
  };
  s.rule = wrap(s.domain, r);
  return s;
}

// Rule 3 of the permutation constructions: vertices ordered against phi.
bool against_order(const std::vector<int>& inv, const Point& a, const Point& b) {
  return (inv[a.color] < inv[b.color] && a.v > b.v) || (inv[b.color] < inv[a.color] && b.v > a.v);
}

SubstitutionFamily ind_to_clique(const Graph& h) {
  const int k = h.n();
  SubstitutionFamily s;
  s.name = "IndToClique";
  s.params = "H=" + to_graph6(h);
  s.perms = labelling_permutations(h);
  s.domain = {StructuredDomain::Kind::Permuted, k, static_cast<int>(s.perms.size()), 0};
  Graph kk(k);
  for (int u = 0; u < k; ++u)
    for (int v = u + 1; v < k; ++v) kk.add_edge(u, v);
  s.source = PolyFamily::ind(h);
  s.target = PolyFamily::ind(kk);
  s.aux = aux_range(VarKind::U, k);
  std::vector<std::vector<int>> inv;
  for (const auto& p : s.perms) inv.push_back(inverse(p));
  Rules r;
  r.y = [](const Point& p, int) { return pv(Var::y(p.v)) * pv(Var::u(p.color)); };
  r.x = [h, inv](Point a, Point b, int) {
    if (a.index != b.index || a.color == b.color || a.v == b.v) return Poly();
    if (against_order(inv[a.index], a, b)) return Poly();
    if (h.has_edge(a.color, b.color)) return edge_or_zero(a.v, b.v);
    return pc(1) - edge_or_zero(a.v, b.v);
  };
  s.rule = wrap(s.domain, r);
  return s;
}

SubstitutionFamily clique_hard(const Graph& h, int k, PolyKind kind) {
  require(k >= 1 && k <= h.n(), "CliqueHard needs 1 <= k <= |V(H)|");
  std::vector<int> pick;
  std::vector<int> best;
  auto rec = [&](auto&& self, int start) -> bool {
    if (static_cast<int>(pick.size()) == k) {
      best = pick;
      return true;
    }
    for (int v = start; v < h.n(); ++v) {
      bool ok = true;
      for (int u : pick)
        if (!h.has_edge(u, v)) ok = false;
      if (!ok) continue;
      pick.push_back(v);
      if (self(self, v + 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  require(rec(rec, 0), "CliqueHard: pattern has no " + std::to_string(k) + "-clique");
  std::vector<int> perm(h.n(), -1);
  for (int i = 0; i < k; ++i) perm[best[i]] = i;
  int next = k;
  for (int v = 0; v < h.n(); ++v)
    if (perm[v] < 0) perm[v] = next++;
  const Graph lab = relabel(h, perm);
  const int extras = h.n() - k;
  Graph kk(k);
  for (int u = 0; u < k; ++u)
    for (int v = u + 1; v < k; ++v) kk.add_edge(u, v);
  SubstitutionFamily s;
  s.name = "CliqueHard";
  s.params = "H=" + to_graph6(h) + "," + kparam(k) + "," + kind_name(kind);
  s.domain = colored(k, extras);
  s.source = PolyFamily::ind(kk);
  s.target = PolyFamily{{{1, kind, lab}}};
  const int total = k + extras;
  if (kind == PolyKind::Hom) {
    s.aux = [total](int) {
      std::vector<Var> out;
      for (int i = 0; i < total; ++i) out.push_back(Var::u(i));
      for (int i = 0; i < total; ++i) out.push_back(Var::w(i));
      return out;
    };
  } else {
    s.aux = aux_range(VarKind::U, total);
  }
  Rules r;
  r.pattern_k = total;
  r.y = [](const Point& p, int) {
    if (p.extra) return pv(Var::u(p.color));
    return pv(Var::y(p.v)) * pv(Var::u(p.color));
  };
  r.x = [k, lab](Point a, Point b, int) {
    orient(a, b);
    if (a.color == b.color) return Poly();
    if (b.color < k) return a.v < b.v ? edge_or_zero(a.v, b.v) : Poly();
    if (lab.has_edge(a.color, b.color)) return pc(1);
    return Poly();
  };
  if (kind == PolyKind::Hom) r.z = [](int a, const Point& p, int) { return colour_z(a, p, Var::w(a)); };
  s.rule = wrap(s.domain, r);
  return s;
}

// One permutation per labelling of lab such that every labelling collects
// exactly two surviving monomials: a rep whose ranks of colours 0 and k-1
// are adjacent also feeds the labelling reached by swapping those colours.
std::vector<std::vector<int>> paired_representatives(const Graph& lab) {
  const int k = lab.n();
  if (k > 7) throw CapabilityError("permutation set enumeration is limited to 7 pattern vertices");
  const auto auts = automorphisms(lab);
  std::vector<std::vector<std::vector<int>>> classes;
  std::map<std::vector<int>, int> class_of;
  std::vector<int> pi(k);
  std::iota(pi.begin(), pi.end(), 0);
  do {
    if (class_of.count(inverse(pi))) continue;
    const auto pinv = inverse(pi);
    std::vector<std::vector<int>> members;
    for (const auto& alpha : auts) {
      std::vector<int> phi(k);
      for (int i = 0; i < k; ++i) phi[i] = alpha[pinv[i]];
      members.push_back(phi);
    }
    std::sort(members.begin(), members.end());
    for (const auto& m : members) class_of[m] = static_cast<int>(classes.size());
    classes.push_back(std::move(members));
  } while (std::next_permutation(pi.begin(), pi.end()));
  auto adjacent_ends = [k](const std::vector<int>& phi) {
    auto inv = inverse(phi);
    return std::abs(inv[0] - inv[k - 1]) == 1;
  };
  auto swapped = [k](std::vector<int> phi) {
    for (int& x : phi) x = x == 0 ? k - 1 : (x == k - 1 ? 0 : x);
    return phi;
  };
  const int c = static_cast<int>(classes.size());
  // candidates: P1 members first, then P2 members with their partner class
  struct Cand {
    int member;
    int partner;  // -1 for P1
  };
  std::vector<std::vector<Cand>> cands(c);
  for (int i = 0; i < c; ++i) {
    for (int j = 0; j < static_cast<int>(classes[i].size()); ++j)
      if (!adjacent_ends(classes[i][j])) cands[i].push_back({j, -1});
    for (int j = 0; j < static_cast<int>(classes[i].size()); ++j)
      if (adjacent_ends(classes[i][j])) cands[i].push_back({j, class_of.at(swapped(classes[i][j]))});
  }
  std::vector<int> count(c, 0), choice(c, -1);
  std::uint64_t steps = 0;
  std::function<bool(int)> search = [&](int i) -> bool {
    if (++steps > 2000000) throw CapabilityError("no paired permutation set found within the search budget");
    if (i == c) return std::all_of(count.begin(), count.end(), [](int x) { return x == 2; });
    // every class below i is final apart from partner increments
    for (int ci = 0; ci < static_cast<int>(cands[i].size()); ++ci) {
      const Cand& cd = cands[i][ci];
      count[i] += cd.partner < 0 ? 2 : 1;
      if (cd.partner >= 0) ++count[cd.partner];
      bool ok = count[i] <= 2 && (cd.partner < 0 || count[cd.partner] <= 2);
      if (ok && search(i + 1)) {
        choice[i] = ci;
        return true;
      }
      count[i] -= cd.partner < 0 ? 2 : 1;
      if (cd.partner >= 0) --count[cd.partner];
    }
    return false;
  };
  if (!search(0)) throw CapabilityError("no paired permutation set exists for this labelling");
  std::vector<std::vector<int>> out;
  for (int i = 0; i < c; ++i) out.push_back(classes[i][cands[i][choice[i]].member]);
  return out;
}

SubstitutionFamily kk_minus_e_universal(const Graph& h) {
  const int k = h.n();
  require(k > 2, "KkMinusEUniversal needs k > 2");
  require(h.edge_count() < static_cast<std::size_t>(k * (k - 1) / 2), "KkMinusEUniversal: H must not be complete");
  // labelling L with vertices 0 and k-1 non-adjacent
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  Graph lab;
  do {
    Graph cand = relabel(h, perm);
    if (!cand.has_edge(0, k - 1)) {
      lab = cand;
      break;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  Graph m(k);
  for (int u = 0; u < k; ++u)
    for (int v = u + 1; v < k; ++v)
      if (!(u == 0 && v == k - 1)) m.add_edge(u, v);
  SubstitutionFamily s;
  s.name = "KkMinusEUniversal";
  s.params = "H=" + to_graph6(h);
  s.perms = paired_representatives(lab);
  s.domain = {StructuredDomain::Kind::Permuted, k, static_cast<int>(s.perms.size()), 0};
  s.factor = 2;
  s.source = PolyFamily::sub(lab).scaled(2);
  s.target = PolyFamily::hom(m);
  s.aux = aux_range(VarKind::U, k);
  std::vector<std::vector<int>> inv;
  std::vector<char> in_p1;
  for (const auto& p : s.perms) {
    inv.push_back(inverse(p));
    // phi in P1: some rank lies strictly between the ranks of 1 and k
    in_p1.push_back(std::abs(inv.back()[0] - inv.back()[k - 1]) > 1);
  }
  Rules r;
  r.pattern_k = k;
  r.y = y_plain;
  r.x = [lab, m, inv](Point a, Point b, int) {
    if (a.index != b.index) return Poly();
    if (against_order(inv[a.index], a, b)) return Poly();
    if (a.color != b.color && lab.has_edge(a.color, b.color)) return edge_or_zero(a.v, b.v);
    if (a.color != b.color && m.has_edge(a.color, b.color)) return pc(1);
    return Poly();
  };
  r.z = [in_p1](int a, const Point& p, int) {
    if (a != p.color) return squared(Var::u(a));
    if (a == 0 && in_p1[p.index]) return pv(Var::u(0)).scaled(2);
    return pv(Var::u(a));
  };
  s.rule = wrap(s.domain, r);
  return s;
}

}  // namespace

std::vector<std::vector<int>> labelling_permutations(const Graph& h) {
  const int k = h.n();
  if (k > 7) throw CapabilityError("permutation set enumeration is limited to 7 pattern vertices");
  const auto auts = automorphisms(h);
  std::vector<int> pi(k);
  std::iota(pi.begin(), pi.end(), 0);
  std::set<std::vector<Edge>> seen;
  std::vector<std::vector<int>> out;
  do {
    Graph lab = relabel(h, pi);
    if (!seen.insert(lab.edges()).second) continue;
    // relabel(lab, phi) == h  iff  phi o pi is an automorphism of h
    const auto pinv = inverse(pi);
    std::vector<int> best;
    for (const auto& alpha : auts) {
      std::vector<int> phi(k);
      for (int i = 0; i < k; ++i) phi[i] = alpha[pinv[i]];
      if (best.empty() || phi < best) best = phi;
    }
    out.push_back(best);
  } while (std::next_permutation(pi.begin(), pi.end()));
  return out;
}

SubstitutionFamily with_unit_hom_rules(SubstitutionFamily s, const std::string& name) {
  auto inner = s.rule;
  s.rule = [inner](Var v, int n) -> std::optional<Poly> {
    auto img = inner(v, n);
    if (!img || !v.is_hom()) return img;
    BigInt c = 0;
    for (const auto& [m, coef] : img->terms())
      if (mono_multilinear(m)) c += coef;
    return Poly::constant(c);
  };
  s.name = name;
  s.aux = nullptr;
  // the leftover factor from a constant like 2*u_1 stays with the source
  s.structural_exempt = true;
  return s;
}

SubstitutionFamily compose(const SubstitutionFamily& first, const SubstitutionFamily& second, const PolyFamily& source,
                           std::uint64_t modulus) {
  SubstitutionFamily s = first;
  s.name = first.name + "+" + second.name;
  s.params = first.params + ";" + second.params;
  s.source = source;
  s.modulus = modulus;
  auto r1 = first.rule;
  auto r2 = second.rule;
  s.rule = [r1, r2](Var v, int n) -> std::optional<Poly> {
    auto img = r1(v, n);
    if (!img) return img;
    return img->substitute([&](Var w) { return r2(w, n); });
  };
  auto a1 = first.aux;
  auto a2 = second.aux;
  s.aux = [a1, a2](int n) {
    std::vector<Var> out;
    if (a1) out = a1(n);
    if (a2)
      for (Var v : a2(n)) out.push_back(v);
    return out;
  };
  s.structural_exempt = first.structural_exempt || second.structural_exempt;
  return s;
}

std::vector<std::string> substitution_names() {
  return {"Identity",    "PathHom",      "PathParity",        "CycleSigma1", "CycleSigma2", "CycleSigma3",
          "CycleCombined", "CycleParity", "H3kSigma",        "H3kParity",   "IndComplement", "AutSubHom",
          "Supergraph",  "IndHarder",    "IndToClique",       "CliqueHard",  "CliqueParity", "KkMinusEUniversal"};
}

SubstitutionFamily make_substitution(const std::string& name, const SubstitutionParams& p) {
  SubstitutionFamily s;
  if (name == "Identity") {
    s = identity(p.h, p.kind);
  } else if (name == "PathHom") {
    s = path_hom(p.k);
  } else if (name == "PathParity") {
    s = with_unit_hom_rules(path_hom(p.k), "PathParity");
  } else if (name == "CycleSigma1" || name == "CycleSigma2" || name == "CycleSigma3") {
    s = cycle_sigma(name.back() - '0', p.k);
  } else if (name == "CycleCombined") {
    s = cycle_combined(p.k);
  } else if (name == "CycleParity") {
    s = with_unit_hom_rules(cycle_combined(p.k), "CycleParity");
  } else if (name == "H3kSigma") {
    s = h3k_sigma(p.k);
  } else if (name == "H3kParity") {
    s = with_unit_hom_rules(h3k_sigma(p.k), "H3kParity");
  } else if (name == "IndComplement") {
    s = ind_complement(p.h);
  } else if (name == "AutSubHom") {
    s = aut_sub_hom(p.h);
  } else if (name == "Supergraph") {
    s = supergraph(p.h, p.h2);
  } else if (name == "IndHarder") {
    s = ind_harder(p.h);
  } else if (name == "IndToClique") {
    s = ind_to_clique(p.h);
  } else if (name == "CliqueHard") {
    s = clique_hard(p.h, p.k, p.kind);
  } else if (name == "CliqueParity") {
    Graph kk(p.k);
    for (int u = 0; u < p.k; ++u)
      for (int v = u + 1; v < p.k; ++v) kk.add_edge(u, v);
    s = with_unit_hom_rules(clique_hard(kk, p.k, PolyKind::Hom), "CliqueParity");
    // vertex images still carry u_p; drop them so only y-variables remain
    auto inner = s.rule;
    s.rule = [inner](Var v, int n) -> std::optional<Poly> {
      auto img = inner(v, n);
      if (!img || !v.is_vertex()) return img;
      return img->substitute([](Var w) -> std::optional<Poly> {
        if (w.kind() == VarKind::U) return Poly::constant(1);
        return std::nullopt;
      });
    };
  } else if (name == "KkMinusEUniversal") {
    s = kk_minus_e_universal(p.h);
  } else {
    throw DomainError("unknown substitution family '" + name + "'");
  }
  if (!s.structural_exempt) {
    auto bad = check_structure(s, 2);
    if (!bad.empty()) throw std::logic_error(s.name + ": " + bad.front());
  }
  return s;
}

// ---- structure, application ------------------------------------------------

namespace {

int max_hom_pattern(const PolyFamily& f) {
  int k = 0;
  for (const auto& t : f.terms)
    if (t.kind == PolyKind::Hom) k = std::max(k, t.graph.n());
  return k;
}

struct VarCensus {
  unsigned vertex = 0, edge = 0, other = 0;
};

VarCensus census(const Monomial& m) {
  VarCensus c;
  for (auto e : m) {
    Var v = mono_var(e);
    if (v.is_vertex())
      c.vertex += mono_exp(e);
    else if (v.is_edge())
      c.edge += mono_exp(e);
    else
      c.other += mono_exp(e);
  }
  return c;
}

}  // namespace

std::vector<std::string> check_structure(const SubstitutionFamily& s, int n) {
  std::vector<std::string> bad;
  const int m = s.domain.size(n);
  std::vector<int> sample;
  if (m <= 256) {
    for (int w = 0; w < m; ++w) sample.push_back(w);
  } else {
    for (int i = 0; i < 256; ++i) sample.push_back(static_cast<int>(static_cast<long long>(i) * (m - 1) / 255));
  }
  auto get = [&](Var v) -> std::optional<Poly> {
    auto r = s.rule(v, n);
    if (!r) bad.push_back("variable " + v.str() + " has no image");
    return r;
  };
  for (int w : sample) {
    auto img = get(Var::y(w));
    if (!img) continue;
    if (img->size() != 1 || census(img->terms().begin()->first).edge)
      bad.push_back("vertex image of " + Var::y(w).str() + " is not an edge-free monomial");
  }
  for (std::size_t i = 0; i < sample.size(); ++i)
    for (std::size_t j = i + 1; j < sample.size(); ++j) {
      Var x = Var::x(sample[i], sample[j]);
      auto img = get(x);
      if (!img) continue;
      for (const auto& [mono, c] : img->terms()) {
        auto cs = census(mono);
        if (cs.edge > 1 || cs.vertex) bad.push_back("edge image of " + x.str() + " has a bad term");
      }
    }
  const int kz = max_hom_pattern(s.target);
  for (int a = 0; a < kz; ++a)
    for (int w : sample) {
      Var z = Var::z(a, w);
      auto img = get(z);
      if (!img) continue;
      if (img->size() != 1 || census(img->terms().begin()->first).other == 0 ||
          census(img->terms().begin()->first).vertex || census(img->terms().begin()->first).edge)
        bad.push_back("image of " + z.str() + " is not a monomial in other variables");
    }
  return bad;
}

Poly apply(const SubstitutionFamily& s, const Poly& f, int n) {
  return f.substitute([&](Var v) -> std::optional<Poly> { return s.image(v, n); });
}

CircuitDag apply(const SubstitutionFamily& s, const CircuitDag& c, int n) {
  return substitute(c, [&](Var v) -> std::optional<Poly> { return s.image(v, n); });
}

// ---- substituted expansion -----------------------------------------------

namespace {

bool keep_term(const Monomial& m, bool multilinear_only) {
  for (auto e : m) {
    if (mono_exp(e) <= 1) continue;
    if (multilinear_only || !mono_var(e).is_edge()) return false;
  }
  return true;
}

Poly mul_filtered(const Poly& a, const Poly& b, bool multilinear_only) {
  Poly out;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      Monomial m = mono_mul(ma, mb);
      if (keep_term(m, multilinear_only)) out.add_term(m, ca * cb);
    }
  return out;
}

std::vector<int> bfs_order(const Graph& h) {
  std::vector<int> order;
  std::vector<char> seen(h.n(), 0);
  for (int s = 0; s < h.n(); ++s) {
    if (seen[s]) continue;
    seen[s] = 1;
    std::size_t head = order.size();
    order.push_back(s);
    while (head < order.size()) {
      int v = order[head++];
      for (int u : h.neighbors(v))
        if (!seen[u]) {
          seen[u] = 1;
          order.push_back(u);
        }
    }
  }
  return order;
}

class Expander {
 public:
  Expander(const SubstitutionFamily& s, int n, bool ml, double guard, std::uint64_t& visited)
      : s_(s), n_(n), ml_(ml), guard_(guard), visited_(visited) {}

  Poly run(const FamilyTerm& t, bool injective) {
    const Graph& h = t.graph;
    const int k = h.n();
    const int m = s_.domain.size(n_);
    order_ = bfs_order(h);
    std::vector<int> pos(k);
    for (int i = 0; i < k; ++i) pos[order_[i]] = i;
    edges_before_.assign(k, {});
    non_edges_before_.assign(k, {});
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < i; ++j) {
        if (h.has_edge(order_[i], order_[j]))
          edges_before_[i].push_back(j);
        else
          non_edges_before_[i].push_back(j);
      }
    kind_ = t.kind;
    injective_ = injective || t.kind != PolyKind::Hom;
    // complete and edgeless patterns: every ordering is an automorphism, so
    // only increasing placements are enumerated
    const std::size_t full = static_cast<std::size_t>(k) * (k - 1) / 2;
    increasing_ = t.kind != PolyKind::Hom && (h.edge_count() == full || h.edge_count() == 0);
    host_.assign(k, -1);
    used_.assign(m, 0);
    all_.resize(m);
    std::iota(all_.begin(), all_.end(), 0);
    m_ = m;
    acc_ = Poly();
    rec(0, Poly::constant(1));
    Poly out = acc_;
    if (t.kind != PolyKind::Hom && !increasing_) {
      const std::uint64_t aut = automorphism_count(h);
      Poly div;
      for (const auto& [mono, c] : out.terms()) {
        if (c % aut != 0) throw std::logic_error("orbit sum not divisible by aut");
        div.add_term(mono, c / aut);
      }
      out = div;
    }
    return out.scaled(t.coef);
  }

 private:
  const Poly& y_img(int w) {
    auto it = y_.find(w);
    if (it == y_.end()) it = y_.emplace(w, s_.image(Var::y(w), n_)).first;
    return it->second;
  }
  const Poly& z_img(int a, int w) {
    const std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(w);
    auto it = z_.find(key);
    if (it == z_.end()) it = z_.emplace(key, s_.image(Var::z(a, w), n_)).first;
    return it->second;
  }
  const Poly& x_img(int u, int v) {
    if (u > v) std::swap(u, v);
    const std::uint64_t key = (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
    auto it = x_.find(key);
    if (it == x_.end()) it = x_.emplace(key, s_.image(Var::x(u, v), n_)).first;
    return it->second;
  }
  const Poly& nx_img(int u, int v) {
    if (u > v) std::swap(u, v);
    const std::uint64_t key = (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
    auto it = nx_.find(key);
    if (it == nx_.end()) it = nx_.emplace(key, Poly::constant(1) - x_img(u, v)).first;
    return it->second;
  }

  const std::vector<int>& nonzero_partners(int u) {
    auto it = partners_.find(u);
    if (it == partners_.end()) {
      std::vector<int> out;
      for (int c = 0; c < m_; ++c)
        if (c != u && !x_img(u, c).is_zero()) out.push_back(c);
      it = partners_.emplace(u, std::move(out)).first;
    }
    return it->second;
  }

  void rec(int i, const Poly& partial) {
    const int k = static_cast<int>(order_.size());
    if (i == k) {
      acc_ += partial;
      return;
    }
    const int a = order_[i];
    // candidates: domain vertices whose edge image towards an earlier
    // neighbour is nonzero, or everything for the first vertex
    const std::vector<int>* cands = edges_before_[i].empty() ? &all_ : &nonzero_partners(host_[edges_before_[i].front()]);
    for (int c : *cands) {
      if (++visited_ > guard_) throw GuardError("reduction verification exceeded the enumeration guard");
      if (injective_ && used_[c]) continue;
      if (increasing_ && i > 0 && c < host_[i - 1]) continue;
      bool clash = false;
      for (int j : edges_before_[i])
        if (host_[j] == c) clash = true;
      if (clash) continue;
      Poly cur = mul_filtered(partial, y_img(c), ml_);
      if (!cur.is_zero() && kind_ == PolyKind::Hom) cur = mul_filtered(cur, z_img(a, c), ml_);
      for (int j : edges_before_[i]) {
        if (cur.is_zero()) break;
        cur = mul_filtered(cur, x_img(c, host_[j]), ml_);
      }
      if (kind_ == PolyKind::Ind)
        for (int j : non_edges_before_[i]) {
          if (cur.is_zero()) break;
          cur = mul_filtered(cur, nx_img(c, host_[j]), ml_);
        }
      if (cur.is_zero()) continue;
      host_[i] = c;
      used_[c] = 1;
      rec(i + 1, cur);
      used_[c] = 0;
      host_[i] = -1;
    }
  }

  const SubstitutionFamily& s_;
  int n_;
  bool ml_;
  double guard_;
  std::uint64_t& visited_;
  int m_ = 0;
  PolyKind kind_ = PolyKind::Sub;
  bool injective_ = true;
  std::vector<int> order_;
  std::vector<std::vector<int>> edges_before_, non_edges_before_;
  std::vector<int> host_;
  std::vector<char> used_;
  std::vector<int> all_;
  bool increasing_ = false;
  std::unordered_map<int, std::vector<int>> partners_;
  std::unordered_map<int, Poly> y_;
  std::unordered_map<std::uint64_t, Poly> z_, x_, nx_;
  Poly acc_;
};

}  // namespace

Poly substituted_expansion(const PolyFamily& g, const SubstitutionFamily& s, int n, bool multilinear_only,
                           bool injective_hom, double guard, std::uint64_t* visited) {
  std::uint64_t local = 0;
  std::uint64_t& count = visited ? *visited : local;
  Poly out;
  for (const auto& t : g.terms) {
    Expander e(s, n, multilinear_only, guard, count);
    out += e.run(t, injective_hom);
  }
  return out;
}

ReductionReport verify_reduction(const PolyFamily& f, const PolyFamily& g, const SubstitutionFamily& s, int n,
                                 const VerifyOptions& opt) {
  ReductionReport rep;
  rep.name = s.name + "(" + s.params + ")";
  rep.n = n;
  rep.m = s.domain.size(n);
  rep.factor = s.factor;
  rep.modulus = opt.modular ? opt.p : 0;
  rep.aux = s.aux_vars(n);
  Monomial aux;
  for (Var v : rep.aux) aux = mono_mul(aux, Monomial{mono_entry(v, 1)});
  if (!mono_multilinear(aux)) throw std::logic_error("auxiliary variables repeat");

  bool has_hom = false;
  for (const auto& t : g.terms) has_hom |= t.kind == PolyKind::Hom;
  Poly p1 = substituted_expansion(g, s, n, false, true, opt.guard, &rep.visited);
  Poly p2 = has_hom ? substituted_expansion(g, s, n, true, false, opt.guard, &rep.visited) : ml_part(p1);
  rep.terms = p2.size();

  rep.property1 = true;
  for (const auto& [m, c] : p1.sorted_terms())
    if (!mono_multilinear(m)) {
      rep.property1 = false;
      rep.counterexample = m;
      rep.got = c;
      rep.message = "edge variable of degree > 1 without a non-edge witness";
      break;
    }

  Poly want = ml_part(f.expand(n)) * Poly::monomial(aux);
  Poly diff = p2 - want;
  if (opt.modular) diff = diff.mod(opt.p);
  rep.property2 = diff.is_zero();
  if (!rep.property2 && rep.property1) {
    const Monomial m = diff.sorted_terms().front().first;
    rep.counterexample = m;
    rep.expected = want.coeff(m);
    rep.got = p2.coeff(m);
    rep.message = "ml(sigma(g)) differs from aux * ml(f)";
  }
  rep.pass = rep.property1 && rep.property2;
  return rep;
}

ReductionReport verify_reduction(const SubstitutionFamily& s, int n, const VerifyOptions& opt) {
  VerifyOptions o = opt;
  if (s.modulus) {
    o.modular = true;
    o.p = s.modulus;
  }
  return verify_reduction(s.source, s.target, s, n, o);
}

// ---- Hom extraction ---------------------------------------------------------

CircuitDag hom_extract(const SubstitutionFamily& s, const CircuitDag& g_circuit, const Graph& h, int n) {
  const int k = h.n();
  for (int v = 0; v < k; ++v)
    if (h.degree(v) == 0) throw DomainError("hom_extract: pattern has an isolated vertex");
  const int kn = k * n;
  // g(kappa): an incident edge per vertex, the one to its smallest neighbour
  std::vector<Edge> sel(k);
  for (int v = 0; v < k; ++v) {
    int u = *std::min_element(h.neighbors(v).begin(), h.neighbors(v).end());
    sel[v] = {std::min(u, v), std::max(u, v)};
  }
  CircuitDag c = apply(s, g_circuit, kn);
  // host vertex (i, kappa) of K_n^k is i*k + kappa
  auto gadget = [&](int i, int kappa, Edge e) -> Poly {
    if (sel[kappa] != e) return Poly::constant(1);
    return Poly::variable(Var::z(kappa, i)) * Poly::variable(Var::y(i));
  };
  c = substitute(c, [&](Var v) -> std::optional<Poly> {
    if (v.is_vertex()) {
      if (v.first() >= static_cast<std::uint64_t>(kn)) throw DomainError("hom_extract: vertex outside K_n^k");
      return Poly::variable(Var::a(v.first() % k));
    }
    if (v.is_edge()) {
      const int w1 = static_cast<int>(v.first()), w2 = static_cast<int>(v.second());
      if (w2 >= kn) throw DomainError("hom_extract: edge outside K_n^k");
      const int i = w1 / k, kappa = w1 % k, j = w2 / k, mu = w2 % k;
      if (i == j || kappa == mu || !h.has_edge(kappa, mu)) return Poly();
      const Edge e{std::min(kappa, mu), std::max(kappa, mu)};
      return gadget(i, kappa, e) * gadget(j, mu, e) * Poly::variable(Var::x(i, j));
    }
    if (v.is_hom()) throw DomainError("hom_extract: homomorphism variable survived the reduction");
    return Poly::variable(v);
  });
  std::vector<Var> strip = s.aux_vars(kn);
  for (int kappa = 0; kappa < k; ++kappa) strip.push_back(Var::a(kappa));
  for (Var t : strip) {
    c = differentiate(c, t);
    c = substitute(c, [&](Var v) -> std::optional<Poly> {
      if (v == t) return Poly();
      return Poly::variable(v);
    });
  }
  return compact(c);
}

}  // namespace pf
