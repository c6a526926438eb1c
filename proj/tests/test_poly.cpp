#include <gtest/gtest.h>

#include "patternforge/iso.hpp"
#include "patternforge/oracle.hpp"
#include "patternforge/patterns.hpp"

using namespace pf;

namespace {

Graph pat(const char* spec) { return make_pattern(parse_pattern_spec(spec)); }

Poly erase_hom_vars(const Poly& f) {
  return f.substitute([](Var v) -> std::optional<Poly> {
    if (v.is_hom()) return Poly::constant(1);
    return std::nullopt;
  });
}

Poly sum_classes(const IndSubExpansion& e, int n) {
  Poly out;
  for (const auto& t : e.classes) out += expand_sub(t.graph, n).scaled(t.coefficient);
  return out;
}

}  // namespace

TEST(Text, FormatAndRoundTrip) {
  Poly p = Poly::monomial(mono_of({Var::y(3), Var::x(2, 1), Var::z(2, 5)}), 4) + Poly::constant(7) +
           Poly::monomial(mono_of({Var::y(1), Var::y(1), Var::u(2), Var::w(3), Var::a(1), Var::v(0)}), -2);
  std::string text = p.to_text();
  EXPECT_NE(text.find("4 * y3 x{1,2} z{2,5}"), std::string::npos) << text;
  EXPECT_NE(text.find("7 * 1"), std::string::npos);
  EXPECT_NE(text.find("y1^2"), std::string::npos);
  EXPECT_EQ(Poly::parse(text), p);
  EXPECT_EQ(Poly().to_text(), "0\n");
  EXPECT_TRUE(Poly::parse("0\n").is_zero());
  EXPECT_THROW(Poly::parse("3 y1"), ParseError);
  EXPECT_THROW(Poly::parse("3 * q1"), ParseError);
  EXPECT_THROW(Poly::parse("3 * x{1,1}"), DomainError);
}

TEST(ExpandSub, PaperExample) {
  Poly p3 = expand_sub(pat("P3"), 3);
  Poly y = Poly::monomial(mono_of({Var::y(0), Var::y(1), Var::y(2)}));
  Poly expected = y * (Poly::monomial(mono_of({Var::x(0, 1), Var::x(1, 2)})) +
                       Poly::monomial(mono_of({Var::x(0, 2), Var::x(1, 2)})) +
                       Poly::monomial(mono_of({Var::x(0, 1), Var::x(0, 2)})));
  EXPECT_EQ(p3, expected);
  EXPECT_EQ(expand_sub(pat("K3"), 3), y * Poly::monomial(mono_of({Var::x(0, 1), Var::x(0, 2), Var::x(1, 2)})));
  EXPECT_EQ(expand_sub(pat("P4"), 4).size(), 12u);
  for (const auto& [m, c] : expand_sub(pat("C5"), 6).terms()) EXPECT_EQ(c, 1);
}

TEST(ExpandInd, PaperExamples) {
  EXPECT_EQ(expand_ind(pat("P3"), 3), expand_sub(pat("P3"), 3) - expand_sub(pat("K3"), 3).scaled(3));
  for (int n = 3; n <= 5; ++n) EXPECT_EQ(expand_ind(pat("K4"), n), expand_sub(pat("K4"), n));
  // Ind_P4 = Sub_P4 - 4 Sub_C4 - 2 Sub_{K3+e} + 6 Sub_{K4-e} - 12 Sub_K4. The K4 sign is
  // (-1)^(6-3); on a K4 host 12 - 4*3 - 2*12 + 6*6 + c*1 must vanish, so c = -12.
  Graph k3e(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}});
  for (int n = 4; n <= 5; ++n) {
    Poly rhs = expand_sub(pat("P4"), n) - expand_sub(pat("C4"), n).scaled(4) - expand_sub(k3e, n).scaled(2) +
               expand_sub(pat("K4-e"), n).scaled(6) - expand_sub(pat("K4"), n).scaled(12);
    EXPECT_EQ(expand_ind(pat("P4"), n), rhs) << n;
  }
  EXPECT_TRUE(substitute_host(expand_ind(pat("P4"), 4), pat("K4")).is_zero());
}

TEST(ExpandHom, Counts) {
  EXPECT_EQ(expand_hom(pat("K2"), 5).size(), 20u);
  EXPECT_EQ(expand_hom(pat("P3"), 3).size(), 12u);
  EXPECT_EQ(expand_hom(pat("K3"), 3).size(), 6u);
  for (const auto& [m, c] : expand_hom(pat("C4"), 4).terms()) EXPECT_EQ(c, 1);
  EXPECT_THROW(expand_hom(pat("P6"), 30), GuardError);
}

TEST(MlPart, Examples) {
  Poly f = Poly::monomial(mono_of({Var::y(1), Var::y(1), Var::y(2)})) + Poly::monomial(mono_of({Var::y(1), Var::y(2)}));
  EXPECT_EQ(ml_part(f), Poly::monomial(mono_of({Var::y(1), Var::y(2)})));
  EXPECT_TRUE(ml_part(expand_hom(pat("P3"), 2)).is_zero());
  Poly erased = ml_part(erase_hom_vars(expand_hom(pat("P3"), 3)));
  EXPECT_EQ(erased, expand_sub(pat("P3"), 3).scaled(2));
}

TEST(SubstituteHost, Examples) {
  Poly y = Poly::monomial(mono_of({Var::y(0), Var::y(1), Var::y(2)}));
  EXPECT_EQ(substitute_host(expand_sub(pat("K3"), 3), pat("C3")), y);
  EXPECT_EQ(substitute_host(expand_sub(pat("P3"), 3), pat("K3")), y.scaled(3));
  EXPECT_TRUE(substitute_host(expand_ind(pat("P3"), 3), pat("K3")).is_zero());
  EXPECT_THROW(substitute_host(expand_sub(pat("K3"), 4), pat("K3")), DomainError);
}

TEST(SubstituteHost, CommutesWithMl) {
  Rng rng(3);
  for (int n = 3; n <= 5; ++n)
    for (const char* s : {"P3", "K3", "P4", "C4"}) {
      Graph h = pat(s);
      if (h.n() > n) continue;
      for (int rep = 0; rep < 3; ++rep) {
        Graph g = random_graph(n, 0.5, rng());
        for (const Poly& f : {expand_sub(h, n), expand_ind(h, n), expand_hom(h, n)})
          EXPECT_EQ(ml_part(substitute_host(f, g)), substitute_host(ml_part(f), g)) << s << " n=" << n;
      }
    }
}

TEST(ExpandInd, CoefficientsAreZeroOrOneOnHosts) {
  Rng rng(4);
  for (int k = 1; k <= 4; ++k)
    for (const Graph& h : isomorphism_classes(k))
      for (int n = k; n <= 5; ++n) {
        Poly f = expand_ind(h, n);
        Graph g = random_graph(n, 0.5, rng());
        for (const auto& [m, c] : substitute_host(f, g).terms()) EXPECT_TRUE(c == 0 || c == 1);
      }
}

TEST(ExpandInd, ComplementRemark) {
  for (const Graph& h : isomorphism_classes(4))
    for (int n = 4; n <= 5; ++n) {
      Poly flipped = expand_ind(h, n).substitute([](Var v) -> std::optional<Poly> {
        if (!v.is_edge()) return std::nullopt;
        return Poly::constant(1) - Poly::variable(v);
      });
      EXPECT_EQ(flipped, expand_ind(complement(h), n));
    }
}

TEST(IndSub, P4Coefficients) {
  auto e = indsub_coefficients(pat("P4"));
  ASSERT_EQ(e.classes.size(), 5u);
  std::map<std::string, BigInt> by_class;
  for (const auto& t : e.classes) by_class[canonical_form(t.graph)] = t.coefficient;
  Graph k3e(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}});
  EXPECT_EQ(by_class[canonical_form(pat("P4"))], 1);
  EXPECT_EQ(by_class[canonical_form(pat("C4"))], -4);
  EXPECT_EQ(by_class[canonical_form(k3e)], -2);
  EXPECT_EQ(by_class[canonical_form(pat("K4-e"))], 6);
  EXPECT_EQ(by_class[canonical_form(pat("K4"))], -12);
  EXPECT_EQ(e.labelled.front().graph, pat("P4"));
  EXPECT_EQ(e.labelled.front().coefficient, 1);
}

TEST(IndSub, CliqueAndP5Bar) {
  auto k = indsub_coefficients(pat("K5"));
  ASSERT_EQ(k.classes.size(), 1u);
  EXPECT_EQ(k.classes[0].coefficient, 1);
  auto p = indsub_coefficients(pat("co:P5"));
  for (std::size_t i = 1; i < p.labelled.size(); ++i) EXPECT_EQ(p.labelled[i].nsub % 2, 0u);
}

TEST(IndSub, IdentityForAllFourVertexClasses) {
  auto classes = isomorphism_classes(4);
  ASSERT_EQ(classes.size(), 11u);
  for (const Graph& h : classes) {
    auto e = indsub_coefficients(h);
    for (int n = 4; n <= 5; ++n) {
      EXPECT_EQ(expand_ind(h, n), sum_classes(e, n)) << h.to_string();
      // labelled form: aut(H) Ind_H = sum over labelled H' of sign * aut(H') Sub_H'
      Poly labelled;
      for (const auto& t : e.labelled) {
        BigInt sign = (t.graph.edge_count() - h.edge_count()) % 2 ? -1 : 1;
        labelled += expand_sub(t.graph, n).scaled(sign * automorphism_count(t.graph));
      }
      EXPECT_EQ(expand_ind(h, n).scaled(automorphism_count(h)), labelled) << h.to_string();
    }
  }
}

TEST(HomCount, BruteForce) {
  EXPECT_EQ(brute_force_hom_count(pat("K3"), pat("K4")), 24);
  EXPECT_EQ(brute_force_hom_count(pat("P3"), pat("K3")), 12);
  Graph g = random_graph(7, 0.5, 12);
  EXPECT_EQ(brute_force_hom_count(pat("K2"), g), 2 * g.edge_count());
}
