#include "patternforge/suites.hpp"

#include <chrono>
#include <cmath>
#include <set>

#include "patternforge/iso.hpp"
#include "patternforge/oracle.hpp"

namespace pf {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Graph pat(const std::string& spec) { return make_pattern(parse_pattern_spec(spec)); }

CheckResult timed(const std::string& name, const std::function<std::pair<bool, std::string>()>& body) {
  auto t0 = Clock::now();
  CheckResult c;
  c.name = name;
  try {
    auto [ok, detail] = body();
    c.pass = ok;
    c.detail = detail;
  } catch (const std::exception& e) {
    c.pass = false;
    c.detail = std::string("error: ") + e.what();
  }
  c.seconds = since(t0);
  return c;
}

struct ReductionCase {
  std::string family;
  SubstitutionParams params;
  int n;
  BigInt factor;  // expected multiplicity, 0 = not checked
};

SubstitutionParams with_k(int k) {
  SubstitutionParams p;
  p.k = k;
  return p;
}

SubstitutionParams with_h(const Graph& h, const Graph& h2 = Graph(), int k = 0, PolyKind kind = PolyKind::Ind) {
  SubstitutionParams p;
  p.h = h;
  p.h2 = h2;
  p.k = k;
  p.kind = kind;
  return p;
}

std::vector<ReductionCase> reduction_cases() {
  const Graph pendant(4, {{0, 1}, {0, 2}, {1, 2}, {0, 3}});
  std::vector<ReductionCase> cs;
  for (int k : {4, 5})
    for (int n : {4, 5}) cs.push_back({"PathHom", with_k(k), n, 1});
  cs.push_back({"H3kSigma", with_k(2), 6, 1});
  cs.push_back({"CycleCombined", with_k(5), 5, 0});
  for (const char* s : {"P3", "P4"}) {
    cs.push_back({"IndComplement", with_h(pat(s)), 4, 1});
    cs.push_back({"AutSubHom", with_h(pat(s)), 4, automorphism_count(pat(s))});
  }
  cs.push_back({"Supergraph", with_h(pat("P3"), pat("K3")), 4, automorphism_count(pat("P3"))});
  cs.push_back({"Supergraph", with_h(pat("P4"), pat("C4")), 4, automorphism_count(pat("P4"))});
  for (const char* s : {"P3", "P4"}) {
    cs.push_back({"IndHarder", with_h(pat(s)), 4, automorphism_count(pat(s))});
    cs.push_back({"IndToClique", with_h(pat(s)), 4, 1});
  }
  for (PolyKind kind : {PolyKind::Ind, PolyKind::Sub, PolyKind::Hom})
    cs.push_back({"CliqueHard", with_h(pendant, Graph(), 3, kind), 4, 1});
  cs.push_back({"KkMinusEUniversal", with_h(pat("P4")), 4, 2});
  return cs;
}

}  // namespace

bool SuiteResult::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return !checks.empty();
}

int completeness_trials(int k) {
  // ceil(k^k / k!) in exact integer arithmetic
  BigInt num = 1, den = 1;
  for (int i = 0; i < k; ++i) num *= k;
  for (int i = 2; i <= k; ++i) den *= i;
  BigInt q = (num + den - 1) / den;
  return 50 * static_cast<int>(q);
}

SuiteResult reduction_suite(std::optional<int> n) {
  auto t0 = Clock::now();
  SuiteResult r;
  r.suite = "reductions";
  std::set<std::string> seen;
  for (const auto& c : reduction_cases()) {
    const int size = n.value_or(c.n);
    const auto s = make_substitution(c.family, c.params);
    const std::string name = s.name + "(" + s.params + ") n=" + std::to_string(size);
    if (!seen.insert(name).second) continue;  // a fixed n collapses the size variants
    r.checks.push_back(timed(name, [&] {
      auto rep = verify_reduction(s, size);
      std::string detail = "terms=" + std::to_string(rep.terms) + " factor=" + rep.factor.str();
      bool ok = rep.pass;
      if (c.factor != 0 && rep.factor != c.factor) {
        ok = false;
        detail += " (expected factor " + c.factor.str() + ")";
      }
      if (!rep.pass) detail += " " + rep.message;
      return std::make_pair(ok, detail);
    }));
  }
  r.seconds = since(t0);
  return r;
}

SuiteResult parity_lemma_suite() {
  auto t0 = Clock::now();
  SuiteResult r;
  r.suite = "parity-lemmas";
  for (int k = 4; k <= 7; ++k) r.checks.push_back(path_parity_lemma(k));
  for (int k : {5, 7}) r.checks.push_back(cycle_parity_lemma(k));
  r.checks.push_back(h3k_parity_lemma(2));
  r.seconds = since(t0);
  return r;
}

SuiteResult builder_suite(int max_n) {
  auto t0 = Clock::now();
  SuiteResult r;
  r.suite = "builders";
  std::vector<std::string> specs;
  for (int k = 1; k <= 6; ++k) {
    specs.push_back("P" + std::to_string(k));
    specs.push_back("K" + std::to_string(k));
    specs.push_back("I" + std::to_string(k));
  }
  for (int k = 3; k <= 6; ++k) {
    specs.push_back("C" + std::to_string(k));
    specs.push_back("Kk-e:" + std::to_string(k));
    specs.push_back("Kk-P:" + std::to_string(k));
    specs.push_back("co:C" + std::to_string(k));
  }
  for (int k = 4; k <= 6; ++k) specs.push_back("co:P" + std::to_string(k));
  specs.push_back("H6");
  for (const auto& spec : specs) {
    PatternId id;
    try {
      id = parse_pattern_spec(spec);
      validate(id);
    } catch (const DomainError&) {
      continue;
    }
    const Graph h = make_pattern(id);
    r.checks.push_back(timed("treewidth " + id.name() + " n<=" + std::to_string(max_n), [&] {
      for (int n = 1; n <= max_n; ++n) {
        Evaluable c = build_treewidth(h, Naming::plain(n));
        if (to_sparse_poly(c, 1 << 20) != expand_hom(h, n))
          return std::make_pair(false, "differs at n=" + std::to_string(n));
      }
      return std::make_pair(true, std::string("exact"));
    }));
  }
  std::vector<std::pair<BuildMethod, int>> special = {{BuildMethod::P5Bar, 0},    {BuildMethod::P6Bar, 0},
                                                      {BuildMethod::K5MinusP4, 0}, {BuildMethod::H6, 0},
                                                      {BuildMethod::KkMinusE, 4},  {BuildMethod::KkMinusE, 5}};
  for (auto [m, k] : special) {
    const Graph h = method_pattern(m, k);
    const std::string name = method_name(m) + (k ? ":" + std::to_string(k) : std::string());
    r.checks.push_back(timed(name + " n<=" + std::to_string(max_n), [&] {
      for (int n = 1; n <= max_n; ++n) {
        Evaluable c = build(m, h, Naming::plain(n));
        if (to_sparse_poly(c, 1 << 20) != expand_hom(h, n))
          return std::make_pair(false, "differs at n=" + std::to_string(n));
      }
      return std::make_pair(true, std::string("exact"));
    }));
  }
  r.seconds = since(t0);
  return r;
}

SuiteResult detection_suite(std::uint64_t seed, int hosts, int n) {
  auto t0 = Clock::now();
  SuiteResult r;
  r.suite = "detection";
  for (const char* spec : {"P4", "P5", "C5", "K4", "K4-e", "I4"}) {
    const Graph h = pat(spec);
    const int k = h.n();
    r.checks.push_back(timed(std::string("induced ") + spec, [&] {
      int present = 0, found = 0, false_pos = 0;
      for (int i = 0; i < hosts; ++i) {
        Graph g = random_graph(n, 0.5, derive_seed(seed, static_cast<std::uint64_t>(i)));
        const bool truth = brute_force_induced(h, g) > 0;
        DetectConfig cfg;
        cfg.seed = derive_seed(seed ^ 0x5eed, static_cast<std::uint64_t>(i));
        cfg.trials = truth ? completeness_trials(k) : k;
        const bool hit = detect_induced(h, g, cfg).verdict == Verdict::Present;
        present += truth;
        found += truth && hit;
        false_pos += !truth && hit;
      }
      return std::make_pair(false_pos == 0 && found == present,
                            std::to_string(found) + "/" + std::to_string(present) + " present found, " +
                                std::to_string(false_pos) + " false positives");
    }));
  }
  r.seconds = since(t0);
  return r;
}

std::vector<std::string> suite_names() { return {"reductions", "parity-lemmas", "builders", "detection"}; }

SuiteResult run_suite(const std::string& name, std::optional<int> n, std::uint64_t seed) {
  if (name == "reductions") return reduction_suite(n);
  if (name == "parity-lemmas") return parity_lemma_suite();
  if (name == "builders") return builder_suite(n.value_or(5));
  if (name == "detection") return detection_suite(seed, 10, n.value_or(8));
  throw DomainError("unknown suite '" + name + "'");
}

double loglog_slope(const std::vector<int>& xs, const std::vector<double>& ys) {
  const std::size_t m = xs.size();
  if (m < 2 || ys.size() != m) throw DomainError("slope fit needs at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const double x = std::log(static_cast<double>(xs[i])), y = std::log(ys[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double d = m * sxx - sx * sx;
  if (d == 0) throw DomainError("slope fit needs distinct sizes");
  return (m * sxy - sx * sy) / d;
}

BenchResult bench(const std::string& subject, const std::vector<int>& grid, std::uint64_t seed) {
  BenchResult out;
  out.subject = subject;
  const auto colon = subject.find(':');
  const std::string head = subject.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : subject.substr(colon + 1);
  std::vector<double> ys;
  for (int n : grid) {
    if (n < 1) throw DomainError("bench sizes must be positive");
    auto t0 = Clock::now();
    BenchRow row;
    row.n = n;
    if (head == "oracle") {
      if (arg.empty()) throw DomainError("oracle bench needs a pattern");
      std::uint64_t ops = 0;
      brute_force_induced(pat(arg), random_graph(n, 0.5, derive_seed(seed, static_cast<std::uint64_t>(n))), &ops, 1e9);
      row.ops = ops;
    } else {
      Evaluable c;
      if (head == "treewidth") {
        if (arg.empty()) throw DomainError("treewidth bench needs a pattern");
        c = build_treewidth(pat(arg), Naming::plain(n));
      } else {
        const BuildMethod m = parse_method(head);
        const int k = arg.empty() ? 0 : std::stoi(arg);
        c = build(m, method_pattern(m, k), Naming::plain(n));
      }
      const auto rep = op_count(c);
      row.ops = rep.total.adds + rep.total.muls;
    }
    row.seconds = since(t0);
    ys.push_back(static_cast<double>(std::max<std::uint64_t>(row.ops, 1)));
    out.rows.push_back(row);
  }
  if (grid.size() >= 2) out.slope = loglog_slope(grid, ys);
  return out;
}

}  // namespace pf
