#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "patternforge/circuit.hpp"
#include "patternforge/graph.hpp"
#include "patternforge/poly.hpp"

namespace pf {

enum class PolyKind { Hom, Sub, Ind };

std::string kind_name(PolyKind k);

struct FamilyTerm {
  BigInt coef = 1;
  PolyKind kind = PolyKind::Sub;
  Graph graph;
};

// Integer combination of Hom/Sub/Ind families, e.g. k*Sub_A + Sub_B.
struct PolyFamily {
  std::vector<FamilyTerm> terms;

  static PolyFamily hom(const Graph& h) { return {{{1, PolyKind::Hom, h}}}; }
  static PolyFamily sub(const Graph& h) { return {{{1, PolyKind::Sub, h}}}; }
  static PolyFamily ind(const Graph& h) { return {{{1, PolyKind::Ind, h}}}; }
  PolyFamily scaled(const BigInt& c) const;
  PolyFamily operator+(const PolyFamily& o) const;
  // Brute-force expansion over [n].
  Poly expand(int n) const;
  std::string name() const;
};

// Host vertex sets of the form [n], [n]x[k], [n]x[k]xP or [n]x[k]x[3],
// optionally followed by `extras` singleton vertices (n+i, k+i).
// Encoding: ((v*k + color)*mult + index), extras after the grid.
struct StructuredDomain {
  enum class Kind { Plain, Colored, Permuted, Tripled };
  Kind kind = Kind::Plain;
  int k = 0;
  int perms = 0;
  int extras = 0;

  struct Point {
    int v = 0;
    int color = 0;
    int index = 0;
    bool extra = false;
  };

  int mult() const;
  int size(int n) const;
  Point decode(int w, int n) const;
  int encode(int v, int color, int index, int n) const;
  int encode_extra(int i, int n) const;
  std::string describe() const;
};

// Image of a variable under sigma_n, or nullopt when the variable lies
// outside the family's domain.
using SubstitutionRule = std::function<std::optional<Poly>(Var, int)>;

struct SubstitutionFamily {
  std::string name;
  std::string params;
  StructuredDomain domain;
  // Reduction f <= g realised by this family; source already carries the
  // multiplicity factor (e.g. aut(H) * Sub_H).
  PolyFamily source;
  PolyFamily target;
  BigInt factor = 1;
  // Coefficient modulus under which the reduction is claimed (0 = exact).
  std::uint64_t modulus = 0;
  std::function<std::vector<Var>(int)> aux;
  SubstitutionRule rule;
  // Permutation set for permutation-indexed domains; perms[i][j] = phi(j).
  std::vector<std::vector<int>> perms;
  // Families that intentionally map homomorphism variables to constants.
  bool structural_exempt = false;

  // Throws DomainError for variables outside the domain.
  Poly image(Var v, int n) const;
  std::vector<Var> aux_vars(int n) const { return aux ? aux(n) : std::vector<Var>{}; }
};

struct SubstitutionParams {
  Graph h;        // pattern (H); Identity uses it for both sides
  Graph h2;       // second pattern (Supergraph's H')
  int k = 0;      // size parameter
  PolyKind kind = PolyKind::Ind;  // Identity / CliqueHard variant
};

// Names: Identity, PathHom, PathParity, CycleSigma1, CycleSigma2,
// CycleSigma3, CycleCombined, CycleParity, H3kSigma, H3kParity,
// IndComplement, AutSubHom, Supergraph, IndHarder, IndToClique,
// CliqueHard, CliqueParity, KkMinusEUniversal.
SubstitutionFamily make_substitution(const std::string& name, const SubstitutionParams& params);
std::vector<std::string> substitution_names();

// Same family with every homomorphism-variable image replaced by its
// coefficient when the image is a multilinear monomial and by 0 otherwise.
SubstitutionFamily with_unit_hom_rules(SubstitutionFamily s, const std::string& name);

// first applied to g, then second applied to the result (second acts on
// the plain host [n]). Variables outside second's domain pass through.
SubstitutionFamily compose(const SubstitutionFamily& first, const SubstitutionFamily& second, const PolyFamily& source,
                           std::uint64_t modulus);

// Structural properties of the rule images at host size n: vertex
// variables map to monomials without edge variables; edge variables map
// to polynomials whose terms hold at most one edge and no vertex
// variable; other variables map to monomials with an other variable.
std::vector<std::string> check_structure(const SubstitutionFamily& s, int n);

Poly apply(const SubstitutionFamily& s, const Poly& f, int n);
CircuitDag apply(const SubstitutionFamily& s, const CircuitDag& c, int n);

struct VerifyOptions {
  bool modular = false;  // compare coefficients mod p
  std::uint64_t p = 2;
  double guard = 1e8;    // enumeration nodes
};

struct ReductionReport {
  std::string name;
  int n = 0;
  int m = 0;
  bool property1 = false;
  bool property2 = false;
  bool pass = false;
  BigInt factor = 1;
  std::uint64_t modulus = 0;
  std::vector<Var> aux;
  std::optional<Monomial> counterexample;
  BigInt expected = 0;  // coefficient of the counterexample in aux * ml(f)
  BigInt got = 0;       // and in ml(sigma(g))
  std::size_t terms = 0;
  std::uint64_t visited = 0;
  std::string message;
};

// Checks ml(sigma_m(g_m)) = aux * ml(f_n) (property 2) and that
// sigma_m(ml g_m) is a graph pattern polynomial (property 1).
ReductionReport verify_reduction(const PolyFamily& f, const PolyFamily& g, const SubstitutionFamily& s, int n,
                                 const VerifyOptions& opt = {});
// Uses the family's own source/target/modulus.
ReductionReport verify_reduction(const SubstitutionFamily& s, int n, const VerifyOptions& opt = {});

// sigma_m applied to g_m with the enumeration pruned to terms that can
// survive: multilinear_only keeps multilinear terms, otherwise terms whose
// non-edge variables are multilinear are kept. injective restricts Hom
// terms to injective maps.
Poly substituted_expansion(const PolyFamily& g, const SubstitutionFamily& s, int n, bool multilinear_only,
                           bool injective_hom, double guard = 1e8, std::uint64_t* visited = nullptr);

// Hom_{H,n} (times the reduction's factor) from a circuit computing g over
// the host sigma's domain at size k*n, where sigma realises Sub_H <= g.
CircuitDag hom_extract(const SubstitutionFamily& s, const CircuitDag& g_circuit, const Graph& h, int n);

// Distinct labellings of h, each with the lexicographically least
// permutation phi such that relabel(labelling, phi) == h.
std::vector<std::vector<int>> labelling_permutations(const Graph& h);

}  // namespace pf
