#include <gtest/gtest.h>

#include <cmath>

#include "patternforge/builders.hpp"
#include "patternforge/iso.hpp"
#include "patternforge/oracle.hpp"
#include "patternforge/patterns.hpp"
#include "patternforge/treedec.hpp"

#include <set>

using namespace pf;

namespace {

Graph pat(const char* spec) { return make_pattern(parse_pattern_spec(spec)); }

// Hom count into g from evaluating the circuit at y = z = 1, x = adjacency.
BigInt hom_count(const Evaluable& c, const Graph& g) {
  IntRing zz;
  return eval_with<IntRing>(c, zz, [&](Var v) -> BigInt {
    if (v.is_edge()) return g.has_edge(static_cast<int>(v.first()), static_cast<int>(v.second())) ? 1 : 0;
    return 1;
  });
}

double slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += std::log(xs[i]);
    my += std::log(ys[i]);
  }
  mx /= xs.size();
  my /= ys.size();
  double num = 0, den = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    num += (std::log(xs[i]) - mx) * (std::log(ys[i]) - my);
    den += (std::log(xs[i]) - mx) * (std::log(xs[i]) - mx);
  }
  return num / den;
}

double total_ops(const Evaluable& e) {
  auto r = op_count(e);
  return static_cast<double>(r.total.adds + r.total.muls);
}

struct Specialized {
  BuildMethod method;
  int k;
  int max_n;
};

const Specialized kSpecialized[] = {
    {BuildMethod::P5Bar, 5, 5}, {BuildMethod::P6Bar, 6, 5},    {BuildMethod::K5MinusP4, 5, 5},
    {BuildMethod::H6, 6, 4},    {BuildMethod::KkMinusE, 4, 5}, {BuildMethod::KkMinusE, 5, 5},
    {BuildMethod::KkMinusE, 6, 4},
};

}  // namespace

TEST(Treewidth, MatchesOracleExamples) {
  EXPECT_EQ(to_sparse_poly(build_treewidth(pat("K2"), Naming::plain(3))).size(), 6u);
  EXPECT_EQ(to_sparse_poly(build_treewidth(pat("K2"), Naming::plain(3))), expand_hom(pat("K2"), 3));
  EXPECT_EQ(to_sparse_poly(build_treewidth(pat("K3"), Naming::plain(3))).size(), 6u);
  EXPECT_EQ(to_sparse_poly(build_treewidth(pat("P3"), Naming::plain(3))), expand_hom(pat("P3"), 3));
  EXPECT_EQ(to_sparse_poly(build_treewidth(pat("co:P5"), Naming::plain(4))), expand_hom(pat("co:P5"), 4));
}

TEST(Treewidth, OracleLawForAllSmallPatterns) {
  for (int k = 1; k <= 4; ++k)
    for (const Graph& h : isomorphism_classes(k))
      for (int n = 1; n <= 4; ++n)
        EXPECT_EQ(to_sparse_poly(build_treewidth(h, Naming::plain(n))), expand_hom(h, n)) << h.to_string() << " n=" << n;
  for (const char* s : {"C5", "K5-P4", "co:P5", "P5", "K5", "co:C5"})
    for (int n = 1; n <= 4; ++n)
      EXPECT_EQ(to_sparse_poly(build_treewidth(pat(s), Naming::plain(n))), expand_hom(pat(s), n)) << s << " n=" << n;
}

TEST(Treewidth, EveryMonomialHasCoefficientOne) {
  for (const auto& [m, c] : to_sparse_poly(build_treewidth(pat("co:P6"), Naming::plain(4))).terms()) EXPECT_EQ(c, 1);
}

TEST(Treewidth, CountsHomomorphismsIntoRandomHosts) {
  Rng rng(11);
  for (const char* s : {"P4", "C5", "co:P5", "K4-e", "H6"}) {
    Graph h = pat(s);
    for (int rep = 0; rep < 3; ++rep) {
      Graph g = random_graph(7, 0.6, rng());
      EXPECT_EQ(hom_count(build_treewidth(h, Naming::plain(7)), g), brute_force_hom_count(h, g)) << s;
    }
  }
}

TEST(Treewidth, EmptyPatternIsOne) {
  EXPECT_EQ(to_sparse_poly(build_treewidth(Graph(0), Naming::plain(3))), Poly::constant(1));
}

TEST(Treewidth, OpCountSlopeTracksWidthPlusOne) {
  for (const char* s : {"co:P5", "K4-e"}) {
    Graph h = pat(s);
    int tw = exact_treewidth(h);
    std::vector<double> ns, ops;
    for (int n : {8, 16, 32, 64}) {
      ns.push_back(n);
      ops.push_back(total_ops(build_treewidth(h, Naming::plain(n))));
    }
    double sl = slope(ns, ops);
    EXPECT_NEAR(sl, tw + 1, 0.2) << s;
  }
}

TEST(Specialized, OracleLaw) {
  for (const auto& sp : kSpecialized) {
    Graph h = method_pattern(sp.method, sp.k);
    for (int n = 1; n <= sp.max_n; ++n) {
      Evaluable e = build(sp.method, h, Naming::plain(n));
      EXPECT_EQ(to_sparse_poly(e), expand_hom(h, n)) << method_name(sp.method) << " k=" << sp.k << " n=" << n;
    }
  }
}

TEST(Specialized, AllOnesCountsHomsIntoCliques) {
  EXPECT_EQ(hom_count(build_p5bar(Naming::plain(5)), pat("K5")), brute_force_hom_count(pat("co:P5"), pat("K5")));
  EXPECT_EQ(hom_count(build_p6bar(Naming::plain(6)), pat("K6")), brute_force_hom_count(pat("co:P6"), pat("K6")));
  EXPECT_EQ(hom_count(build_k5_minus_p4(Naming::plain(5)), pat("K5")), brute_force_hom_count(pat("K5-P4"), pat("K5")));
  EXPECT_EQ(hom_count(build_h6(Naming::plain(6)), pat("K6")), brute_force_hom_count(pat("H6"), pat("K6")));
  EXPECT_EQ(hom_count(build_kk_minus_e(4, Naming::plain(4)), pat("K4")), brute_force_hom_count(pat("K4-e"), pat("K4")));
}

TEST(Specialized, CountsHomomorphismsIntoRandomHosts) {
  Rng rng(12);
  for (const auto& sp : kSpecialized) {
    Graph h = method_pattern(sp.method, sp.k);
    int n = sp.method == BuildMethod::H6 ? 6 : 8;
    for (int rep = 0; rep < 2; ++rep) {
      Graph g = random_graph(n, 0.7, rng());
      EXPECT_EQ(hom_count(build(sp.method, h, Naming::plain(n)), g), brute_force_hom_count(h, g))
          << method_name(sp.method) << " k=" << sp.k;
    }
  }
}

TEST(Specialized, AgreesWithTreewidthBuilder) {
  for (int n = 1; n <= 5; ++n)
    EXPECT_EQ(to_sparse_poly(build_p5bar(Naming::plain(n))),
              to_sparse_poly(build_treewidth(pat("co:P5"), Naming::plain(n))));
}

TEST(Specialized, PlaceholderAudit) {
  auto count_consumers = [](const MatrixProgram& p, int fam) {
    int declared = 0, used = 0;
    for (const auto& st : p.statements())
      if (auto* d = std::get_if<DefineMatrix>(&st)) {
        bool uses = false;
        for (const auto& e : d->entries)
          for (const auto& h : e.value.holes) uses |= h.family == fam;
        used += uses;
        declared += std::count(d->consumes.begin(), d->consumes.end(), fam);
      }
    EXPECT_EQ(declared, used) << fam;
    return used;
  };
  MatrixProgram p6 = build_p6bar(Naming::plain(4));
  auto fams = p6.bound_families();
  ASSERT_EQ(fams.size(), 4u);
  for (int f : fams) EXPECT_EQ(count_consumers(p6, f), 1) << f;
  MatrixProgram k5 = build_k5_minus_p4(Naming::plain(4));
  ASSERT_EQ(k5.bound_families().size(), 2u);
  for (int f : k5.bound_families()) EXPECT_EQ(count_consumers(k5, f), 1);
  MatrixProgram h6 = build_h6(Naming::plain(4));
  ASSERT_EQ(h6.bound_families().size(), 1u);
  EXPECT_EQ(count_consumers(h6, h6.bound_families()[0]), 1);
}

TEST(Specialized, H6DistinctnessGuards) {
  // No entry of A places two clique vertices on the same host vertex.
  MatrixProgram p = build_h6(Naming::plain(4));
  for (const auto& st : p.statements())
    if (auto* d = std::get_if<DefineMatrix>(&st); d && d->name == "A")
      for (const auto& e : d->entries) {
        int v1 = e.row / 4, v2 = e.row % 4, v4 = e.col / 4, v5 = e.col % 4;
        std::set<int> s{v1, v2, v4, v5};
        EXPECT_EQ(s.size(), 4u);
      }
}

TEST(Specialized, OpCountScaling) {
  for (int n : {8, 16, 32}) {
    // three dense n x n products plus O(n^2) scaling and entry work
    const double cube = 3.0 * n * n * n, square = 10.0 * n * n;
    EXPECT_LE(op_count(build_p5bar(Naming::plain(n))).total.muls, cube + square);
    EXPECT_LE(op_count(build_k5_minus_p4(Naming::plain(n))).total.muls, cube + square);
  }
  for (int k : {4, 5}) {
    std::vector<double> ns, ops;
    for (int n : {8, 16, 32}) {
      ns.push_back(n);
      ops.push_back(total_ops(build_kk_minus_e(k, Naming::plain(n))));
    }
    EXPECT_LE(slope(ns, ops), k - 1 + 0.05) << k;
  }
}

TEST(Specialized, MethodPatternMismatchRejected) {
  BuilderSpec spec{PatternId::path(5), BuildMethod::P5Bar, 4, false};
  EXPECT_THROW(build(spec), DomainError);
  EXPECT_THROW(build_kk_minus_e(9, Naming::plain(3)), DomainError);
  BuilderSpec ok{PatternId::complement_of(PatternId::path(5)), BuildMethod::P5Bar, 4, false};
  EXPECT_EQ(to_sparse_poly(build(ok)), expand_hom(pat("co:P5"), 4));
  EXPECT_EQ(default_method(parse_pattern_spec("co:P6")), BuildMethod::P6Bar);
  EXPECT_EQ(default_method(parse_pattern_spec("C7")), BuildMethod::Treewidth);
}

// Colour-restricted build equals Hom over the structured host with every
// wrongly coloured z set to zero.
TEST(Colored, MatchesRestrictedOracle) {
  struct Case {
    BuildMethod m;
    const char* spec;
  };
  for (const auto& c : {Case{BuildMethod::Treewidth, "P4"}, Case{BuildMethod::P5Bar, "co:P5"},
                        Case{BuildMethod::K5MinusP4, "K5-P4"}, Case{BuildMethod::KkMinusE, "K4-e"}}) {
    Graph h = pat(c.spec);
    const int k = h.n();
    std::vector<int> color(k);
    for (int a = 0; a < k; ++a) color[a] = (a + 1) % k;  // a non-identity colouring
    // pattern relabelled so vertex color[a] plays a
    std::vector<int> perm(color);
    Graph hs = relabel(h, perm);
    for (int copies : {1, 2}) {
      const int n = copies == 1 ? 2 : 1;
      Naming nm = Naming::colored_by(n, color, k, copies, copies - 1);
      Poly got = to_sparse_poly(build(c.m, h, nm));
      Poly want = expand_hom(hs, nm.host_size()).substitute([&](Var v) -> std::optional<Poly> {
        if (!v.is_hom()) return std::nullopt;
        int w = static_cast<int>(v.second());
        int b = static_cast<int>(v.first());
        bool ok = (w / copies) % k == b && w % copies == copies - 1;
        return ok ? std::nullopt : std::optional<Poly>(Poly());
      });
      EXPECT_EQ(got, want) << c.spec << " copies=" << copies;
    }
  }
}
