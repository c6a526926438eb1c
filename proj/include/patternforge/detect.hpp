#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "patternforge/builders.hpp"
#include "patternforge/evaluable.hpp"
#include "patternforge/graph.hpp"
#include "patternforge/patterns.hpp"
#include "patternforge/reductions.hpp"
#include "patternforge/rings.hpp"

namespace pf {

enum class Route { Auto, Treewidth, Specialized, Oracle };

std::string route_name(Route r);
Route parse_route(const std::string& s);

struct DetectConfig {
  int trials = 32;
  std::uint64_t seed = 1;
  RingConfig field = RingConfig::gf2ext(64);
  Route route = Route::Auto;
  // Prime used when a route needs odd characteristic and field is GF(2^w).
  std::uint64_t p = 2305843009213693951ULL;  // 2^61 - 1
  int threads = 1;
};

enum class Verdict { Present, NotDetected, AbsentCertain };

std::string verdict_name(Verdict v);

struct DetectionReport {
  Verdict verdict = Verdict::NotDetected;
  int trials = 0;  // trials evaluated up to and including the first hit
  std::uint64_t seed = 0;
  OpCounts ring_ops;  // truncated-ring operations
  OpCounts base_ops;  // field operations underneath
  double seconds = 0;
  std::string route;
  std::string field;
  std::string builder;
  bool oracle_fallback = false;
};

// Value of one circuit input: coef, or coef * a_w * y_slot(w) when vertex = w.
struct TemplateValue {
  BigInt coef = 0;
  int vertex = -1;
};

// Aligned with inputs_of(c). Vertex variables y_v map to host vertex v,
// edges to adjacency in host, every other variable to 1.
std::vector<TemplateValue> plain_template(const Evaluable& c, const Graph& host);
// Inputs live on s's domain at host size host.n(); each image is evaluated
// with edges from host and auxiliary variables at 1. Homomorphism variables
// outside the domain of s map to 1 when hom_one is set.
std::vector<TemplateValue> substitution_template(const Evaluable& c, const SubstitutionFamily& s, const Graph& host,
                                                 bool hom_one = false);

struct Block {
  Evaluable circuit;
  std::vector<TemplateValue> values;
};

// Randomized multilinear test: per trial every host vertex w gets a random
// coefficient a_w and slot j_w in [k]; the sum of the blocks is evaluated
// over field[y_1..y_k]/<y_i^2> and any nonzero trial means Present.
DetectionReport detect_multilinear_blocks(const std::vector<Block>& blocks, int k, const DetectConfig& cfg);
bool detect_multilinear(const Evaluable& c, const std::vector<TemplateValue>& values, int k, const DetectConfig& cfg);

DetectionReport detect_induced(const PatternId& pattern, const Graph& host, const DetectConfig& cfg);
DetectionReport detect_induced(const Graph& pattern, const Graph& host, const DetectConfig& cfg);
DetectionReport detect_subgraph(const PatternId& pattern, const Graph& host, const DetectConfig& cfg);
DetectionReport detect_subgraph(const Graph& pattern, const Graph& host, const DetectConfig& cfg);

struct ParityReport {
  int brute = 0;     // count mod 2
  int identity = 0;  // subset-evaluation identity over GF(2)
  bool agree = false;
  std::string route;
  std::uint64_t evaluations = 0;
};

// Parity of the number of induced copies, computed twice.
ParityReport parity_induced(const Graph& pattern, const Graph& host);
ParityReport parity_induced(const PatternId& pattern, const Graph& host);

BigInt count_homomorphisms(const PatternId& pattern, const Graph& host);
BigInt count_homomorphisms(const Graph& pattern, const Graph& host);

// Number of k-subsets S with host[S] isomorphic to pattern. ops counts
// adjacency lookups plus one comparison per k-subset.
std::uint64_t brute_force_induced(const Graph& pattern, const Graph& host, std::uint64_t* ops = nullptr,
                                  double guard = 1e8);
// Number of k-subsets S with host[S] containing a copy of pattern.
std::uint64_t brute_force_subgraph(const Graph& pattern, const Graph& host, double guard = 1e8);

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

// Parity lemmas backing the mod-2 routes.
CheckResult path_parity_lemma(int k);
CheckResult cycle_parity_lemma(int k);
CheckResult h3k_parity_lemma(int t);

// Fail-closed gate: runs (once per process) the lemma and reduction checks
// a route rests on and throws CapabilityError if any fails.
void require_certified(const std::string& key);

// Named induced routes by pattern shape, for reporting.
std::string induced_route_for(const Graph& pattern);

}  // namespace pf
