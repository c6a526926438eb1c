#include "patternforge/oracle.hpp"

#include <cmath>
#include <map>

#include "patternforge/iso.hpp"

namespace pf {

namespace {

void guard(int k, int n) {
  if (n < 0) throw DomainError("negative host size");
  if (std::pow(static_cast<double>(n), k) > kExpansionGuard)
    throw GuardError("expansion guard exceeded: n^k = " + std::to_string(n) + "^" + std::to_string(k) + " > 1e8");
}

// Visits maps phi: V(h) -> [n]; injective or merely edge-respecting.
template <class Visit>
void for_each_map(const Graph& h, int n, bool injective, Visit&& visit) {
  const int k = h.n();
  std::vector<int> phi(k, -1);
  std::vector<char> used(n, 0);
  std::vector<std::vector<int>> back(k);
  for (auto [u, v] : h.edges()) back[v].push_back(u);
  auto rec = [&](auto&& self, int i) -> void {
    if (i == k) {
      visit(phi);
      return;
    }
    for (int c = 0; c < n; ++c) {
      if (injective && used[c]) continue;
      bool ok = true;
      for (int u : back[i])
        if (phi[u] == c) ok = false;
      if (!ok) continue;
      phi[i] = c;
      used[c] = 1;
      self(self, i + 1);
      used[c] = 0;
    }
  };
  rec(rec, 0);
}

Monomial image_monomial(const Graph& h, const std::vector<int>& phi, bool with_z) {
  Monomial m;
  for (int a = 0; a < h.n(); ++a) {
    m = mono_mul(m, Monomial{mono_entry(Var::y(phi[a]), 1)});
    if (with_z) m = mono_mul(m, Monomial{mono_entry(Var::z(a, phi[a]), 1)});
  }
  for (auto [u, v] : h.edges()) m = mono_mul(m, Monomial{mono_entry(Var::x(phi[u], phi[v]), 1)});
  return m;
}

Poly divide_exact(const Poly& p, std::uint64_t d) {
  Poly out;
  for (const auto& [m, c] : p.terms()) {
    if (c % d != 0) throw std::logic_error("non-divisible coefficient in orbit sum");
    out.add_term(m, c / d);
  }
  return out;
}

}  // namespace

Poly expand_hom(const Graph& h, int n) {
  guard(h.n(), n);
  Poly out;
  for_each_map(h, n, false, [&](const std::vector<int>& phi) { out.add_term(image_monomial(h, phi, true), 1); });
  return out;
}

Poly expand_sub(const Graph& h, int n) {
  guard(h.n(), n);
  Poly out;
  for_each_map(h, n, true, [&](const std::vector<int>& phi) { out.add_term(image_monomial(h, phi, false), 1); });
  return divide_exact(out, automorphism_count(h));
}

Poly expand_ind(const Graph& h, int n) {
  guard(h.n(), n);
  const auto non_edges = complement(h).edges();
  Poly out;
  for_each_map(h, n, true, [&](const std::vector<int>& phi) {
    Monomial base = image_monomial(h, phi, false);
    // prod over non-edges of (1 - x), expanded by subsets
    const std::size_t total = std::size_t{1} << non_edges.size();
    for (std::size_t s = 0; s < total; ++s) {
      Monomial m = base;
      int sign = 1;
      for (std::size_t i = 0; i < non_edges.size(); ++i)
        if (s >> i & 1) {
          m = mono_mul(m, Monomial{mono_entry(Var::x(phi[non_edges[i].first], phi[non_edges[i].second]), 1)});
          sign = -sign;
        }
      out.add_term(m, sign);
    }
  });
  return divide_exact(out, automorphism_count(h));
}

Poly substitute_host(const Poly& f, const Graph& g) {
  for (Var v : f.variables()) {
    if (v.is_edge() && v.second() >= static_cast<std::uint64_t>(g.n()))
      throw DomainError("edge variable " + v.str() + " outside host vertex range");
  }
  return f.substitute([&](Var v) -> std::optional<Poly> {
    if (!v.is_edge()) return std::nullopt;
    return Poly::constant(g.has_edge(static_cast<int>(v.first()), static_cast<int>(v.second())) ? 1 : 0);
  });
}

IndSubExpansion indsub_coefficients(const Graph& h) {
  IndSubExpansion out;
  std::vector<Graph> all{h};
  for (auto& g : proper_supergraphs(h)) all.push_back(std::move(g));
  for (const auto& g : all) {
    IndSubTerm t;
    t.graph = g;
    t.nsub = copy_count(h, g);
    t.coefficient = BigInt(t.nsub) * (((g.edge_count() - h.edge_count()) % 2) ? -1 : 1);
    out.labelled.push_back(t);
  }
  std::map<std::pair<std::size_t, std::string>, IndSubTerm> merged;
  for (const auto& t : out.labelled) {
    auto key = std::make_pair(t.graph.edge_count(), canonical_form(t.graph));
    auto it = merged.find(key);
    if (it == merged.end()) {
      IndSubTerm c = t;
      c.multiplicity = 1;
      merged.emplace(key, c);
    } else {
      ++it->second.multiplicity;
    }
  }
  for (auto& [k, t] : merged) out.classes.push_back(t);
  return out;
}

BigInt brute_force_hom_count(const Graph& h, const Graph& g) {
  guard(h.n(), g.n());
  BigInt count = 0;
  std::vector<std::vector<int>> back(h.n());
  for (auto [u, v] : h.edges()) back[v].push_back(u);
  std::vector<int> phi(h.n(), -1);
  auto rec = [&](auto&& self, int i) -> void {
    if (i == h.n()) {
      ++count;
      return;
    }
    for (int c = 0; c < g.n(); ++c) {
      bool ok = true;
      for (int u : back[i])
        if (!g.has_edge(phi[u], c)) ok = false;
      if (!ok) continue;
      phi[i] = c;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return count;
}

}  // namespace pf
