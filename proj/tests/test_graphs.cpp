#include <gtest/gtest.h>

#include <numeric>

#include "patternforge/errors.hpp"
#include "patternforge/graph.hpp"
#include "patternforge/iso.hpp"
#include "patternforge/patterns.hpp"
#include "patternforge/treedec.hpp"

using namespace pf;

namespace {

Graph one_indexed(int n, std::vector<Edge> edges) {
  Graph g(n);
  for (auto [u, v] : edges) g.add_edge(u - 1, v - 1);
  return g;
}

std::uint64_t factorial(int k) {
  std::uint64_t f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

TEST(Graph6, TriangleEmptyAndPath) {
  EXPECT_EQ(parse_graph6("Bw"), Graph(3, {{0, 1}, {0, 2}, {1, 2}}));
  EXPECT_EQ(parse_graph6("B?"), Graph(3));
  EXPECT_EQ(parse_graph6("Bg"), Graph(3, {{0, 1}, {1, 2}}));
}

TEST(Graph6, MatchesReferenceEncodings) {
  // Petersen graph and P70 encoded by an independent graph6 writer.
  Graph petersen(10, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9},
                      {5, 7}, {7, 9}, {9, 6}, {6, 8}, {8, 5}});
  EXPECT_EQ(to_graph6(petersen), "IheA@GUAo");
  EXPECT_EQ(parse_graph6("IheA@GUAo"), petersen);
  Graph p70(70);
  for (int i = 0; i + 1 < 70; ++i) p70.add_edge(i, i + 1);
  EXPECT_EQ(to_graph6(p70).substr(0, 10), "~?@EhCGGC@");
  EXPECT_EQ(parse_graph6(to_graph6(p70)), p70);
}

TEST(Graph6, RoundTripRandom) {
  for (int n : {0, 1, 2, 5, 13, 62, 63, 100}) {
    Graph g = random_graph(n, 0.4, 1000 + n);
    EXPECT_EQ(parse_graph6(to_graph6(g)), g) << n;
  }
}

TEST(Graph6, ErrorsCarryOffsets) {
  try {
    parse_graph6("Bw?");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 2);
  }
  try {
    parse_graph6("D");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 1);
  }
  EXPECT_THROW(parse_graph6("B\x01"), ParseError);
  EXPECT_THROW(parse_graph6(""), ParseError);
  EXPECT_THROW(parse_graph6("Bx"), ParseError);  // padding bits set
}

TEST(EdgeList, Examples) {
  EXPECT_EQ(parse_edge_list("n 2\n0 1"), Graph(2, {{0, 1}}));
  EXPECT_EQ(parse_edge_list("n 3\n0 1\n1 2"), Graph(3, {{0, 1}, {1, 2}}));
  try {
    parse_edge_list("n 3\n0 0");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 2);
    EXPECT_NE(std::string(e.what()).find("self-loop"), std::string::npos);
  }
  EXPECT_THROW(parse_edge_list("n 3\n0 3"), ParseError);
  EXPECT_THROW(parse_edge_list("n 3\n0 1\n1 0"), ParseError);
  EXPECT_THROW(parse_edge_list("0 1"), ParseError);
  Graph g = random_graph(9, 0.5, 3);
  EXPECT_EQ(parse_edge_list(to_edge_list(g)), g);
}

TEST(Patterns, H6Labelling) {
  Graph h6 = make_pattern(PatternId::h3k(6));
  EXPECT_EQ(h6.n(), 6);
  EXPECT_EQ(h6.edge_count(), 13u);
  for (int u = 0; u < 5; ++u)
    for (int v = u + 1; v < 5; ++v) EXPECT_TRUE(h6.has_edge(u, v));
  for (int u = 0; u < 5; ++u) EXPECT_EQ(h6.has_edge(u, 5), u < 3);
}

TEST(Patterns, FigureLabellings) {
  EXPECT_EQ(make_pattern(PatternId::complement_of(PatternId::path(5))),
            one_indexed(5, {{1, 2}, {1, 4}, {1, 3}, {2, 3}, {2, 5}, {4, 5}}));
  EXPECT_EQ(make_pattern(PatternId::clique_minus_path(5)),
            one_indexed(5, {{1, 2}, {1, 3}, {2, 3}, {1, 4}, {3, 4}, {2, 5}, {3, 5}}));
  EXPECT_EQ(make_pattern(PatternId::complement_of(PatternId::path(6))),
            one_indexed(6, {{1, 6}, {1, 5}, {1, 4}, {1, 3}, {2, 4}, {2, 5}, {2, 6}, {3, 5}, {3, 6}, {4, 6}}));
  Graph k4e = make_pattern(PatternId::clique_minus_edge(4));
  EXPECT_EQ(k4e.edge_count(), 5u);
  EXPECT_FALSE(k4e.has_edge(0, 3));
}

TEST(Patterns, FigureLabellingsAreIsomorphicToFamilies) {
  EXPECT_TRUE(isomorphic(make_pattern(PatternId::complement_of(PatternId::path(5))), path_complement_sequential(5)));
  EXPECT_TRUE(isomorphic(make_pattern(PatternId::clique_minus_path(5)), clique_minus_path_sequential(5)));
  Graph p4_plus_isolated(5, {{0, 1}, {1, 2}, {2, 3}});
  EXPECT_TRUE(isomorphic(complement(make_pattern(PatternId::clique_minus_path(5))), p4_plus_isolated));
}

TEST(Patterns, InvalidCombinations) {
  EXPECT_THROW(make_pattern(PatternId::cycle(2)), DomainError);
  EXPECT_THROW(make_pattern(PatternId::clique_minus_path(4)), DomainError);
  EXPECT_THROW(make_pattern(PatternId::h3k(9)), DomainError);
  EXPECT_THROW(make_pattern(PatternId::h3k(7)), DomainError);
  EXPECT_NO_THROW(make_pattern(PatternId::h3k(12)));
}

TEST(Patterns, SpecStrings) {
  EXPECT_EQ(parse_pattern_spec("P5").family, Family::Path);
  EXPECT_EQ(parse_pattern_spec("C7").k, 7);
  EXPECT_EQ(parse_pattern_spec("H6").family, Family::H3k);
  EXPECT_EQ(parse_pattern_spec("K4-e").family, Family::CliqueMinusEdge);
  EXPECT_EQ(parse_pattern_spec("Kk-e:6").k, 6);
  EXPECT_EQ(parse_pattern_spec("K5-P4").family, Family::CliqueMinusPath);
  EXPECT_EQ(parse_pattern_spec("co:P5").family, Family::Complement);
  EXPECT_EQ(make_pattern(parse_pattern_spec("g6:Bw")), make_pattern(PatternId::clique(3)));
  EXPECT_THROW(parse_pattern_spec("Q5"), DomainError);
  EXPECT_THROW(parse_pattern_spec("K5-P3"), DomainError);
  EXPECT_THROW(parse_pattern_spec("C2"), DomainError);
  for (const char* s : {"P5", "C7", "K4", "I3", "H6", "K4-e", "K5-P4", "co:P5"})
    EXPECT_EQ(parse_pattern_spec(s).name(), s);
}

TEST(Complement, Examples) {
  EXPECT_EQ(complement(make_pattern(PatternId::clique(3))), Graph(3));
  EXPECT_TRUE(isomorphic(complement(make_pattern(PatternId::cycle(5))), make_pattern(PatternId::cycle(5))));
  EXPECT_TRUE(isomorphic(complement(make_pattern(PatternId::path(4))), make_pattern(PatternId::path(4))));
}

TEST(Complement, Involution) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    Graph g = random_graph(1 + static_cast<int>(s % 11), 0.5, s);
    EXPECT_EQ(complement(complement(g)), g);
  }
}

TEST(TreeDecomposition, PaperWidths) {
  EXPECT_EQ(nice_tree_decomposition(make_pattern(PatternId::complement_of(PatternId::path(5)))).width, 2);
  EXPECT_EQ(nice_tree_decomposition(make_pattern(PatternId::clique_minus_path(5))).width, 2);
  EXPECT_EQ(nice_tree_decomposition(make_pattern(PatternId::clique_minus_edge(4))).width, 2);
  EXPECT_EQ(exact_treewidth(make_pattern(PatternId::path(6))), 1);
  EXPECT_EQ(exact_treewidth(make_pattern(PatternId::cycle(7))), 2);
  EXPECT_EQ(exact_treewidth(make_pattern(PatternId::clique(6))), 5);
  EXPECT_EQ(exact_treewidth(make_pattern(PatternId::h3k(6))), 4);
}

TEST(TreeDecomposition, FamilyWidthFormulas) {
  for (int k = 5; k <= 8; ++k) {
    EXPECT_EQ(exact_treewidth(path_complement_sequential(k)), k - 3) << k;
    EXPECT_EQ(exact_treewidth(clique_minus_path_sequential(k)), k - 3) << k;
    EXPECT_EQ(exact_treewidth(make_pattern(PatternId::clique_minus_edge(k))), k - 2) << k;
  }
}

TEST(TreeDecomposition, ExactMatchesExhaustiveAndIsNice) {
  for (std::uint64_t s = 0; s < 60; ++s) {
    int n = 1 + static_cast<int>(s % 8);
    Graph g = random_graph(n, 0.3 + 0.1 * static_cast<double>(s % 5), 77 + s);
    auto td = nice_tree_decomposition(g);
    EXPECT_EQ(td.width, brute_force_treewidth(g)) << g.to_string();
    EXPECT_EQ(check_nice_decomposition(g, td), "") << g.to_string();
    EXPECT_TRUE(td.nodes[td.root].bag.empty());
  }
}

TEST(TreeDecomposition, CatalogPatternsAreNice) {
  for (const char* s : {"P4", "P5", "P6", "C5", "C7", "K4", "K4-e", "K5-P4", "co:P5", "co:P6", "H6", "I3", "co:C7"}) {
    Graph g = make_pattern(parse_pattern_spec(s));
    auto td = nice_tree_decomposition(g);
    EXPECT_EQ(check_nice_decomposition(g, td), "") << s;
  }
}

TEST(TreeDecomposition, SizeLimit) {
  EXPECT_THROW(nice_tree_decomposition(Graph(13)), CapabilityError);
}

TEST(Automorphisms, Examples) {
  EXPECT_EQ(automorphism_count(make_pattern(PatternId::path(4))), 2u);
  EXPECT_EQ(automorphism_count(make_pattern(PatternId::complement_of(PatternId::cycle(5)))), 10u);
  EXPECT_EQ(automorphism_count(make_pattern(PatternId::clique(4))), 24u);
  EXPECT_EQ(automorphism_count(make_pattern(PatternId::complement_of(PatternId::path(5)))), 2u);
  EXPECT_EQ(automorphism_count(make_pattern(PatternId::cycle(7))), 14u);
}

TEST(CopyCount, Examples) {
  Graph p4 = make_pattern(PatternId::path(4));
  EXPECT_EQ(copy_count(p4, make_pattern(PatternId::cycle(4))), 4u);
  EXPECT_EQ(copy_count(p4, make_pattern(PatternId::clique(4))), 12u);
  EXPECT_EQ(copy_count(make_pattern(PatternId::h3k(6)), make_pattern(PatternId::clique(6))), 60u);
  EXPECT_THROW(copy_count(p4, Graph(5)), DomainError);
}

TEST(CopyCount, CliqueFormula) {
  for (int n = 1; n <= 6; ++n)
    for (std::uint64_t s = 0; s < 8; ++s) {
      Graph h = random_graph(n, 0.5, 500 + 10 * n + s);
      EXPECT_GE(copy_count(h, h), 1u);
      EXPECT_EQ(copy_count(h, make_pattern(PatternId::clique(n))) * automorphism_count(h), factorial(n));
    }
}

TEST(Supergraphs, Examples) {
  for (int k = 4; k <= 7; ++k)
    EXPECT_EQ(proper_supergraphs(path_complement_sequential(k)).size(), (1u << (k - 1)) - 1) << k;
  EXPECT_TRUE(proper_supergraphs(make_pattern(PatternId::clique(5))).empty());
  auto p3 = proper_supergraphs(make_pattern(PatternId::path(3)));
  ASSERT_EQ(p3.size(), 1u);
  EXPECT_EQ(p3[0], make_pattern(PatternId::clique(3)));
}

TEST(Isomorphism, ClassCounts) {
  // Numbers of graphs on n unlabelled vertices.
  const std::size_t expected[] = {1, 1, 2, 4, 11, 34, 156};
  for (int n = 0; n <= 6; ++n) EXPECT_EQ(isomorphism_classes(n).size(), expected[n]) << n;
}

TEST(Isomorphism, CanonicalFormIsInvariant) {
  for (std::uint64_t s = 0; s < 40; ++s) {
    int n = 2 + static_cast<int>(s % 8);
    Graph g = random_graph(n, 0.5, 900 + s);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::rotate(perm.begin(), perm.begin() + static_cast<long>(s % n), perm.end());
    std::swap(perm[0], perm[n - 1]);
    Graph h = relabel(g, perm);
    EXPECT_EQ(canonical_form(g), canonical_form(h));
    auto iso = find_isomorphism(g, h);
    ASSERT_FALSE(iso.empty());
    EXPECT_EQ(relabel(g, iso), h);
  }
}
