#include <gtest/gtest.h>

#include "patternforge/builders.hpp"
#include "patternforge/iso.hpp"
#include "patternforge/oracle.hpp"
#include "patternforge/patterns.hpp"
#include "patternforge/reductions.hpp"

using namespace pf;

namespace {

Graph pat(const char* spec) { return make_pattern(parse_pattern_spec(spec)); }

SubstitutionFamily fam(const std::string& name, SubstitutionParams p) { return make_substitution(name, p); }
SubstitutionParams with_k(int k) {
  SubstitutionParams p;
  p.k = k;
  return p;
}
SubstitutionParams with_h(const Graph& h) {
  SubstitutionParams p;
  p.h = h;
  return p;
}

Graph triangle_with_pendant() { return Graph(4, {{0, 1}, {0, 2}, {1, 2}, {0, 3}}); }

void expect_pass(const ReductionReport& r) {
  EXPECT_TRUE(r.property1) << r.name << " n=" << r.n << " " << r.message;
  EXPECT_TRUE(r.property2) << r.name << " n=" << r.n << " " << r.message
                           << (r.counterexample ? " at " + mono_str(*r.counterexample) : std::string())
                           << " expected " << r.expected << " got " << r.got;
  EXPECT_TRUE(r.pass);
}

Monomial aux_mono(const std::vector<Var>& vs) {
  Monomial m;
  for (Var v : vs) m = mono_mul(m, Monomial{mono_entry(v, 1)});
  return m;
}

}  // namespace

TEST(Substitution, PathHomRuleExamples) {
  auto s = fam("PathHom", with_k(5));
  const int n = 8;
  // z_{3,(7,3)} -> z_3 in one-based labels
  EXPECT_EQ(s.image(Var::z(2, s.domain.encode(6, 2, 0, n)), n), Poly::variable(Var::w(2)));
  // z_{3,(7,4)} -> z_3^2
  EXPECT_EQ(s.image(Var::z(2, s.domain.encode(6, 3, 0, n)), n), Poly::monomial(Monomial{mono_entry(Var::w(2), 2)}));
  // x_{(2,1),(1,5)}: colours 1 and k with u > v
  EXPECT_TRUE(s.image(Var::x(s.domain.encode(1, 0, 0, n), s.domain.encode(0, 4, 0, n)), n).is_zero());
  EXPECT_EQ(s.image(Var::x(s.domain.encode(0, 0, 0, n), s.domain.encode(1, 4, 0, n)), n),
            Poly::variable(Var::x(0, 1)));
  // consecutive colours are non-edges of the path complement
  EXPECT_TRUE(s.image(Var::x(s.domain.encode(0, 1, 0, n), s.domain.encode(1, 2, 0, n)), n).is_zero());
  EXPECT_EQ(s.image(Var::y(s.domain.encode(5, 3, 0, n)), n), Poly::variable(Var::y(5)));
}

TEST(Substitution, IndComplementFlipsEdges) {
  auto s = fam("IndComplement", with_h(pat("P3")));
  EXPECT_EQ(s.image(Var::x(0, 1), 3), Poly::constant(1) - Poly::variable(Var::x(0, 1)));
  EXPECT_EQ(s.image(Var::y(2), 3), Poly::variable(Var::y(2)));
}

TEST(Substitution, StructuralPropertiesHold) {
  std::vector<SubstitutionFamily> all = {
      fam("PathHom", with_k(5)),
      fam("CycleSigma1", with_k(5)),
      fam("CycleSigma2", with_k(5)),
      fam("CycleSigma3", with_k(5)),
      fam("CycleCombined", with_k(5)),
      fam("H3kSigma", with_k(2)),
      fam("IndComplement", with_h(pat("P4"))),
      fam("AutSubHom", with_h(pat("P4"))),
      fam("IndHarder", with_h(pat("P4"))),
      fam("IndToClique", with_h(pat("P4"))),
      fam("KkMinusEUniversal", with_h(pat("P4"))),
  };
  SubstitutionParams sp;
  sp.h = pat("K2");
  sp.h2 = pat("P3");
  all.push_back(fam("Supergraph", sp));
  for (PolyKind kind : {PolyKind::Ind, PolyKind::Sub, PolyKind::Hom}) {
    SubstitutionParams cp;
    cp.h = triangle_with_pendant();
    cp.k = 3;
    cp.kind = kind;
    all.push_back(fam("CliqueHard", cp));
  }
  for (const auto& s : all)
    for (int n : {1, 3}) EXPECT_TRUE(check_structure(s, n).empty()) << s.name;
  // parity variants map homomorphism variables to constants on purpose
  auto parity = fam("PathParity", with_k(5));
  EXPECT_TRUE(parity.structural_exempt);
  EXPECT_FALSE(check_structure(parity, 2).empty());
}

TEST(Substitution, Errors) {
  EXPECT_THROW(fam("NoSuchFamily", with_k(3)), DomainError);
  EXPECT_THROW(fam("IndToClique", with_h(pat("P8"))), CapabilityError);
  EXPECT_THROW(fam("KkMinusEUniversal", with_h(pat("K4"))), DomainError);
  SubstitutionParams sp;
  sp.h = pat("K3");
  sp.h2 = pat("P4");
  EXPECT_THROW(fam("Supergraph", sp), DomainError);
  SubstitutionParams cp;
  cp.h = pat("C4");
  cp.k = 3;
  EXPECT_THROW(fam("CliqueHard", cp), DomainError);
  // a host vertex outside [n]x[k]
  auto s = fam("PathHom", with_k(4));
  EXPECT_THROW(apply(s, Poly::variable(Var::y(100)), 2), DomainError);
  EXPECT_THROW(apply(s, Poly::variable(Var::u(0)), 2), DomainError);
}

TEST(Substitution, PermutationSetOfP3) {
  auto perms = labelling_permutations(pat("P3"));
  std::vector<std::vector<int>> want = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}};
  EXPECT_EQ(perms, want);
  for (const char* s : {"P4", "C4", "K4-e", "K3", "C5"}) {
    Graph h = pat(s);
    auto ps = labelling_permutations(h);
    std::uint64_t fact = 1;
    for (int i = 2; i <= h.n(); ++i) fact *= i;
    EXPECT_EQ(ps.size(), fact / automorphism_count(h)) << s;
    for (const auto& phi : ps) {
      // phi maps its labelling back onto h
      std::vector<int> inv(phi.size());
      for (std::size_t i = 0; i < phi.size(); ++i) inv[phi[i]] = static_cast<int>(i);
      EXPECT_EQ(relabel(relabel(h, inv), phi), h);
    }
  }
}

TEST(Apply, IdentityAndComplement) {
  SubstitutionParams ip;
  ip.h = pat("P3");
  ip.kind = PolyKind::Sub;
  auto id = fam("Identity", ip);
  EXPECT_EQ(apply(id, expand_sub(pat("P3"), 3), 3), expand_sub(pat("P3"), 3));
  auto comp = fam("IndComplement", with_h(pat("P3")));
  EXPECT_EQ(apply(comp, expand_ind(pat("P3"), 3), 3), expand_ind(complement(pat("P3")), 3));
  CircuitDag d;
  d.set_output(d.from_poly(expand_ind(pat("P3"), 3)));
  EXPECT_EQ(to_sparse_poly(apply(comp, d, 3)), expand_ind(complement(pat("P3")), 3));
}

TEST(Apply, AutSubHomOnP3) {
  auto s = fam("AutSubHom", with_h(pat("P3")));
  Poly got = ml_part(apply(s, expand_hom(pat("P3"), 3), 3));
  Poly want = ml_part(expand_sub(pat("P3"), 3)).scaled(2) * Poly::monomial(aux_mono(s.aux_vars(3)));
  EXPECT_EQ(got, want);
}

TEST(Verify, PathHom) {
  for (auto [k, n] : {std::pair{4, 4}, {4, 5}, {5, 5}}) {
    auto s = fam("PathHom", with_k(k));
    auto r = verify_reduction(s, n);
    expect_pass(r);
    EXPECT_EQ(r.factor, 1);
    EXPECT_EQ(r.aux.size(), static_cast<std::size_t>(k));
    EXPECT_GT(r.terms, 0u);
  }
}

TEST(Verify, PathParityKeepsSubgraphPart) { expect_pass(verify_reduction(fam("PathParity", with_k(5)), 5)); }

TEST(Verify, H3kSigma) { expect_pass(verify_reduction(fam("H3kSigma", with_k(2)), 6)); }

TEST(Verify, CycleSubstitutions) {
  for (const char* name : {"CycleSigma1", "CycleSigma2", "CycleSigma3", "CycleCombined"})
    expect_pass(verify_reduction(fam(name, with_k(5)), 5));
  // k * Sub is Sub mod 2 for odd k
  auto s1 = fam("CycleSigma1", with_k(5));
  VerifyOptions mod2;
  mod2.modular = true;
  expect_pass(verify_reduction(PolyFamily::sub(cycle_complement_sequential(5)), s1.target, s1, 5, mod2));
  EXPECT_FALSE(verify_reduction(PolyFamily::sub(cycle_complement_sequential(5)), s1.target, s1, 5).pass);
}

TEST(Verify, ComplementAutAndInducedFamilies) {
  for (const char* p : {"P3", "P4"}) {
    expect_pass(verify_reduction(fam("IndComplement", with_h(pat(p))), 4));
    expect_pass(verify_reduction(fam("AutSubHom", with_h(pat(p))), 4));
    expect_pass(verify_reduction(fam("IndHarder", with_h(pat(p))), 4));
  }
  auto r = verify_reduction(fam("IndToClique", with_h(pat("P3"))), 3);
  expect_pass(r);
  EXPECT_EQ(r.aux, (std::vector<Var>{Var::u(0), Var::u(1), Var::u(2)}));
  expect_pass(verify_reduction(fam("IndToClique", with_h(pat("P4"))), 4));
  expect_pass(verify_reduction(fam("IndToClique", with_h(pat("C4"))), 4));
}

TEST(Verify, SupergraphFactorIsExactlyAut) {
  for (auto [a, b] : {std::pair{"P3", "K3"}, {"P4", "C4"}, {"K2", "P3"}}) {
    SubstitutionParams sp;
    sp.h = pat(a);
    sp.h2 = pat(b);
    auto s = fam("Supergraph", sp);
    EXPECT_EQ(s.factor, automorphism_count(pat(a)));
    expect_pass(verify_reduction(s, 4));
    // the unscaled family is off by aut(H) = 2 for each of these
    EXPECT_FALSE(verify_reduction(PolyFamily::sub(pat(a)), s.target, s, 4).property2) << a;
  }
}

TEST(Verify, CliqueHardAllVariants) {
  for (PolyKind kind : {PolyKind::Ind, PolyKind::Sub, PolyKind::Hom}) {
    SubstitutionParams cp;
    cp.h = triangle_with_pendant();
    cp.k = 3;
    cp.kind = kind;
    auto r = verify_reduction(fam("CliqueHard", cp), 4);
    expect_pass(r);
  }
  SubstitutionParams kp;
  kp.h = pat("K4");
  kp.k = 4;
  kp.kind = PolyKind::Hom;
  expect_pass(verify_reduction(fam("CliqueHard", kp), 5));
  kp.k = 4;
  expect_pass(verify_reduction(fam("CliqueParity", kp), 5));
}

TEST(Verify, KkMinusEUniversalFactorTwo) {
  auto r = verify_reduction(fam("KkMinusEUniversal", with_h(pat("P4"))), 4);
  expect_pass(r);
  EXPECT_EQ(r.factor, 2);
  for (const char* s : {"C4", "K4-e", "I4", "co:P4"}) expect_pass(verify_reduction(fam("KkMinusEUniversal", with_h(pat(s))), 4));
}

TEST(Verify, TransitivityThroughComplement) {
  // Ind_{P4} <= Ind_{co:P4} = Sub_{co:P4} (mod 2) <= Hom_{co:P4}
  auto first = fam("PathHom", with_k(4));
  auto second = fam("IndComplement", with_h(pat("P4")));
  auto chain = compose(first, second, PolyFamily::ind(pat("P4")), 2);
  expect_pass(verify_reduction(chain, 4));
  VerifyOptions exact;
  auto r = verify_reduction(chain.source, chain.target, chain, 4, exact);
  EXPECT_TRUE(r.property1);
  EXPECT_FALSE(r.property2);
}

TEST(Verify, DetectsBrokenFamilies) {
  auto s = fam("PathHom", with_k(5));
  auto wrong = verify_reduction(s.source.scaled(2), s.target, s, 5);
  EXPECT_FALSE(wrong.pass);
  ASSERT_TRUE(wrong.counterexample.has_value());
  EXPECT_EQ(wrong.got * 2, wrong.expected);
  // every edge collapses onto x_{0,1}: squares with no non-edge witness
  SubstitutionFamily bad = fam("AutSubHom", with_h(pat("P3")));
  auto inner = bad.rule;
  bad.rule = [inner](Var v, int n) -> std::optional<Poly> {
    if (v.is_edge()) return Poly::variable(Var::x(0, 1));
    return inner(v, n);
  };
  auto r = verify_reduction(bad, 3);
  EXPECT_FALSE(r.property1);
  EXPECT_FALSE(r.pass);
}

TEST(Verify, GuardIsEnforced) {
  VerifyOptions tiny;
  tiny.guard = 100;
  EXPECT_THROW(verify_reduction(fam("PathHom", with_k(5)), 5, tiny), GuardError);
}

TEST(HomExtract, IdentityFixedPointOnK2) {
  SubstitutionParams ip;
  ip.h = pat("K2");
  ip.kind = PolyKind::Sub;
  auto id = fam("Identity", ip);
  CircuitDag g;
  g.set_output(g.from_poly(expand_sub(pat("K2"), 4)));
  EXPECT_EQ(to_sparse_poly(hom_extract(id, g, pat("K2"), 2)), expand_hom(pat("K2"), 2));
}

TEST(HomExtract, AutSubHomRecoversHomTimesAut) {
  for (const char* p : {"P3", "K3", "C4"}) {
    Graph h = pat(p);
    auto s = fam("AutSubHom", with_h(h));
    const int n = h.n() == 4 ? 2 : 3;
    CircuitDag g = build_treewidth(h, Naming::plain(h.n() * n));
    Poly got = to_sparse_poly(hom_extract(s, g, h, n));
    EXPECT_EQ(got, expand_hom(h, n).scaled(s.factor)) << p;
  }
}

TEST(HomExtract, FromPathComplementHom) {
  // Sub_{co:P4} <= Hom_{co:P4} through PathHom; the extracted circuit is Hom_{co:P4}
  auto s = fam("PathHom", with_k(4));
  Graph h = path_complement_sequential(4);
  const int n = 2;
  CircuitDag g = build_treewidth(h, Naming::plain(s.domain.size(4 * n)));
  EXPECT_EQ(to_sparse_poly(hom_extract(s, g, h, n)), expand_hom(h, n));
}

TEST(HomExtract, RejectsIsolatedVertices) {
  Graph h(3, {{0, 1}});
  SubstitutionParams ip;
  ip.h = h;
  ip.kind = PolyKind::Sub;
  auto id = fam("Identity", ip);
  CircuitDag g;
  g.set_output(g.one());
  EXPECT_THROW(hom_extract(id, g, h, 2), DomainError);
}

TEST(Verify, KkMinusEUniversalEveryNonCompletePattern) {
  for (int k : {3, 4, 5}) {
    for (const Graph& h : isomorphism_classes(k)) {
      if (h.edge_count() == static_cast<std::size_t>(k * (k - 1) / 2)) continue;
      auto r = verify_reduction(fam("KkMinusEUniversal", with_h(h)), k);
      EXPECT_TRUE(r.pass) << to_graph6(h) << " " << r.message;
    }
  }
}
