#include <gtest/gtest.h>

#include <cmath>

#include "patternforge/detect.hpp"
#include "patternforge/iso.hpp"
#include "patternforge/oracle.hpp"

using namespace pf;

namespace {

Graph pat(const char* spec) { return make_pattern(parse_pattern_spec(spec)); }

DetectConfig cfg_with(int trials, std::uint64_t seed) {
  DetectConfig c;
  c.trials = trials;
  c.seed = seed;
  return c;
}

CircuitDag dag_of(const Poly& p) {
  CircuitDag d;
  d.set_output(d.from_poly(p));
  return d;
}

// Number of induced copies by direct isomorphism tests on every subset.
std::uint64_t induced_reference(const Graph& h, const Graph& g) {
  const int k = h.n(), n = g.n();
  std::uint64_t count = 0;
  std::vector<int> pick;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(pick.size()) == k) {
      if (isomorphic(induced_subgraph(g, pick), h)) ++count;
      return;
    }
    for (int w = start; w < n; ++w) {
      pick.push_back(w);
      self(self, w + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);
  return count;
}

int trials_for(int k) {
  double ratio = 1;
  for (int i = 1; i <= k; ++i) ratio *= static_cast<double>(k) / i;
  return 50 * static_cast<int>(std::ceil(ratio));
}

}  // namespace

TEST(Multilinear, TruncationKillsSquares) {
  auto cfg = cfg_with(20, 3);
  // y0 y1 + y2^2 with distinct random slots appears within a few trials
  Poly f = Poly::monomial(mono_of({Var::y(0), Var::y(1)})) + Poly::monomial(Monomial{mono_entry(Var::y(2), 2)});
  CircuitDag c = dag_of(f);
  std::vector<TemplateValue> t;
  for (Var v : c.inputs()) t.push_back({1, static_cast<int>(v.first())});
  EXPECT_TRUE(detect_multilinear(c, t, 2, cfg));
  CircuitDag sq = dag_of(Poly::monomial(Monomial{mono_entry(Var::y(0), 2)}));
  std::vector<TemplateValue> t1{{1, 0}};
  EXPECT_FALSE(detect_multilinear(sq, t1, 2, cfg));
  EXPECT_THROW(detect_multilinear(sq, t1, 17, cfg), DomainError);
}

TEST(Multilinear, TriangleSuccessRateMatchesSlotCounting) {
  // Hom_{K3,3} on K3: a trial succeeds iff the three vertices get distinct
  // slots, probability 3!/3^3 = 2/9 (the coefficient 6 is 0 mod 2, so work mod p)
  Graph k3 = pat("K3");
  Evaluable c = build_treewidth(k3, Naming::plain(3));
  auto values = plain_template(c, k3);
  DetectConfig cfg = cfg_with(1, 0);
  cfg.field = RingConfig::prime_field(2305843009213693951ULL);
  const int runs = 10000;
  int hits = 0;
  for (int s = 0; s < runs; ++s) {
    cfg.seed = 1000 + s;
    if (detect_multilinear(c, values, 3, cfg)) ++hits;
  }
  const double p = 2.0 / 9.0, mean = runs * p, sd = std::sqrt(runs * p * (1 - p));
  EXPECT_NEAR(hits, mean, 3 * sd);
  // over GF(2^64) the coefficient 3! vanishes
  cfg.field = RingConfig::gf2ext(64);
  cfg.trials = 50;
  EXPECT_FALSE(detect_multilinear(c, values, 3, cfg));
}

TEST(Multilinear, ReportCountsFirstHitAndIsDeterministic) {
  Graph h = pat("P5");
  auto cfg = cfg_with(64, 7);
  auto a = detect_induced(h, h, cfg);
  auto b = detect_induced(h, h, cfg);
  EXPECT_EQ(a.verdict, Verdict::Present);
  EXPECT_EQ(a.trials, b.trials);
  EXPECT_EQ(a.ring_ops.muls, b.ring_ops.muls);
  cfg.threads = 4;
  auto c = detect_induced(h, h, cfg);
  EXPECT_EQ(c.trials, a.trials);
  EXPECT_EQ(c.ring_ops.muls, a.ring_ops.muls);
  EXPECT_EQ(a.route, "path-complement");
  EXPECT_EQ(a.builder, "p5bar");
}

TEST(DetectInduced, Examples) {
  auto cfg = cfg_with(64, 7);
  EXPECT_EQ(detect_induced(pat("P5"), pat("P5"), cfg).verdict, Verdict::Present);
  EXPECT_EQ(detect_induced(pat("P5"), pat("C5"), cfg).verdict, Verdict::NotDetected);
  EXPECT_EQ(brute_force_induced(pat("P5"), pat("C5")), 0u);
  EXPECT_EQ(detect_induced(pat("H6"), pat("K6"), cfg).verdict, Verdict::NotDetected);
  EXPECT_EQ(brute_force_induced(pat("H6"), pat("K6")), 0u);
  EXPECT_EQ(detect_induced(pat("H6"), pat("H6"), cfg).verdict, Verdict::Present);
  EXPECT_EQ(detect_induced(pat("C5"), pat("C5"), cfg).verdict, Verdict::Present);
  EXPECT_EQ(detect_induced(pat("K4"), pat("K5"), cfg).verdict, Verdict::Present);
  EXPECT_EQ(detect_induced(pat("I3"), pat("C5"), cfg).verdict, Verdict::NotDetected);
  EXPECT_EQ(detect_induced(pat("I3"), pat("C6"), cfg).verdict, Verdict::Present);
  EXPECT_EQ(detect_induced(pat("K4-e"), pat("K4-e"), cfg).verdict, Verdict::Present);
  EXPECT_EQ(detect_induced(pat("K4-e"), pat("K5"), cfg).verdict, Verdict::NotDetected);
}

TEST(DetectInduced, OracleRouteIsCertain) {
  DetectConfig cfg = cfg_with(1, 1);
  cfg.route = Route::Oracle;
  auto r = detect_induced(pat("P5"), pat("C5"), cfg);
  EXPECT_EQ(r.verdict, Verdict::AbsentCertain);
  EXPECT_EQ(r.route, "oracle");
  EXPECT_EQ(detect_induced(pat("P4"), pat("P5"), cfg).verdict, Verdict::Present);
}

TEST(DetectInduced, RoutesAndCapabilities) {
  DetectConfig cfg = cfg_with(64, 11);
  cfg.route = Route::Treewidth;
  auto r = detect_induced(pat("P5"), pat("P6"), cfg);
  EXPECT_EQ(r.verdict, Verdict::Present);
  EXPECT_EQ(r.builder, "treewidth");
  cfg.route = Route::Specialized;
  EXPECT_THROW(detect_induced(pat("P4"), pat("P5"), cfg), CapabilityError);
  EXPECT_EQ(detect_induced(pat("C5"), pat("C5"), cfg).builder, "k5-p4 x3");
  // mod-2 routes refuse odd characteristic
  DetectConfig zp = cfg_with(300, 1);
  zp.field = RingConfig::prime_field(101);
  EXPECT_THROW(detect_induced(pat("P5"), pat("P5"), zp), CapabilityError);
  // exact routes accept it
  EXPECT_EQ(detect_induced(pat("K4-e"), pat("K4-e"), zp).verdict, Verdict::Present);
  EXPECT_EQ(induced_route_for(pat("P6")), "path-complement");
  EXPECT_EQ(induced_route_for(pat("C7")), "cycle-complement");
  EXPECT_EQ(induced_route_for(pat("H6")), "h6");
  EXPECT_EQ(induced_route_for(pat("I4")), "independent-complement");
  EXPECT_EQ(induced_route_for(pat("K4-e")), "ind-to-clique");
  EXPECT_EQ(induced_route_for(pat("C6")), "ind-to-clique");
  EXPECT_THROW(induced_route_for(pat("co:P8")), CapabilityError);
}

TEST(DetectInduced, AgreesWithOracleOnRandomHosts) {
  const std::vector<const char*> patterns = {"P4", "P5", "C5", "K4", "K4-e", "I4", "co:C5", "K5-P4"};
  for (const char* s : patterns) {
    Graph h = pat(s);
    const int k = h.n();
    for (int i = 0; i < 12; ++i) {
      Graph g = random_graph(7, 0.5, 500 + i);
      const bool present = induced_reference(h, g) > 0;
      auto r = detect_induced(h, g, cfg_with(present ? trials_for(k) : 8, 900 + i));
      if (present)
        EXPECT_EQ(r.verdict, Verdict::Present) << s << " host " << to_graph6(g);
      else
        EXPECT_EQ(r.verdict, Verdict::NotDetected) << s << " host " << to_graph6(g);
    }
  }
}

TEST(DetectSubgraph, Examples) {
  auto cfg = cfg_with(64, 5);
  EXPECT_EQ(detect_subgraph(pat("P4"), pat("C4"), cfg).verdict, Verdict::Present);
  EXPECT_EQ(detect_subgraph(pat("K3"), pat("C4"), cfg).verdict, Verdict::NotDetected);
  EXPECT_EQ(brute_force_subgraph(pat("K3"), pat("C4")), 0u);
  EXPECT_EQ(detect_subgraph(pat("P3"), pat("K3"), cfg).verdict, Verdict::Present);
  auto r = detect_subgraph(pat("C4"), pat("K4"), cfg);
  EXPECT_EQ(r.verdict, Verdict::Present);
  EXPECT_EQ(r.field, "Z_2305843009213693951");
  cfg.route = Route::Oracle;
  EXPECT_EQ(detect_subgraph(pat("K3"), pat("C4"), cfg).verdict, Verdict::AbsentCertain);
}

TEST(Parity, Examples) {
  auto a = parity_induced(pat("P4"), pat("P4"));
  EXPECT_EQ(a.brute, 1);
  EXPECT_EQ(a.identity, 1);
  auto b = parity_induced(pat("P4"), pat("C4"));
  EXPECT_EQ(b.brute, 0);
  EXPECT_TRUE(b.agree);
  Graph c7 = pat("C7");
  auto c = parity_induced(pat("P5"), c7);
  EXPECT_EQ(c.brute, static_cast<int>(induced_reference(pat("P5"), c7) % 2));
  EXPECT_TRUE(c.agree);
}

TEST(Parity, MethodsAgreeOnRandomHosts) {
  const std::vector<const char*> patterns = {"P4", "P5", "C5", "K3", "K4", "I3", "I4", "K4-e", "C4", "P3", "H6"};
  for (const char* s : patterns) {
    for (int i = 0; i < 6; ++i) {
      Graph g = random_graph(8, 0.5, 40 + i);
      auto r = parity_induced(pat(s), g);
      EXPECT_TRUE(r.agree) << s << " " << to_graph6(g) << " brute " << r.brute << " identity " << r.identity;
      EXPECT_EQ(r.brute, static_cast<int>(induced_reference(pat(s), g) % 2));
    }
  }
}

TEST(HomCount, Examples) {
  EXPECT_EQ(count_homomorphisms(pat("K3"), pat("K4")), 24);
  EXPECT_EQ(count_homomorphisms(pat("P3"), pat("K3")), 12);
  Graph g = random_graph(9, 0.4, 3);
  EXPECT_EQ(count_homomorphisms(pat("K2"), g), 2 * static_cast<long>(g.edge_count()));
  for (const char* s : {"P4", "C5", "co:P5", "co:P6", "K5-P4", "H6", "K4-e", "K5-e"}) {
    for (int n : {1, 4, 6}) {
      Graph host = random_graph(n, 0.6, 70 + n);
      EXPECT_EQ(count_homomorphisms(parse_pattern_spec(s), host), brute_force_hom_count(pat(s), host)) << s;
    }
  }
}

TEST(BruteForce, InducedCounts) {
  EXPECT_EQ(brute_force_induced(pat("K3"), pat("K4")), 4u);
  EXPECT_EQ(brute_force_induced(pat("P4"), pat("P4")), 1u);
  EXPECT_EQ(brute_force_induced(pat("P4"), pat("K4")), 0u);
  for (int i = 0; i < 5; ++i) {
    Graph g = random_graph(9, 0.5, i);
    for (const char* s : {"P4", "C5", "K4-e", "I3"})
      EXPECT_EQ(brute_force_induced(pat(s), g), induced_reference(pat(s), g)) << s;
  }
  std::uint64_t ops = 0;
  brute_force_induced(pat("P5"), random_graph(8, 0.5, 1), &ops);
  EXPECT_EQ(ops, 5u * 56 + 3u * 70 + 2u * 56 + 28);
  EXPECT_THROW(brute_force_induced(pat("P6"), Graph(200), nullptr), GuardError);
}

TEST(Lemmas, ParityLemmasHold) {
  for (int k = 4; k <= 6; ++k) EXPECT_TRUE(path_parity_lemma(k).pass) << k;
  EXPECT_TRUE(cycle_parity_lemma(5).pass);
  auto h = h3k_parity_lemma(2);
  EXPECT_TRUE(h.pass) << h.detail;
  EXPECT_NO_THROW(require_certified("path:5"));
  EXPECT_THROW(require_certified("nonsense"), DomainError);
}
