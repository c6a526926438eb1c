#include "patternforge/detect.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "patternforge/iso.hpp"
#include "patternforge/oracle.hpp"

namespace pf {

std::string route_name(Route r) {
  switch (r) {
    case Route::Auto: return "auto";
    case Route::Treewidth: return "treewidth";
    case Route::Specialized: return "specialized";
    case Route::Oracle: return "oracle";
  }
  return "?";
}

Route parse_route(const std::string& s) {
  if (s == "auto") return Route::Auto;
  if (s == "treewidth") return Route::Treewidth;
  if (s == "specialized") return Route::Specialized;
  if (s == "oracle") return Route::Oracle;
  throw DomainError("unknown route '" + s + "'");
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Present: return "Present";
    case Verdict::NotDetected: return "NotDetected";
    case Verdict::AbsentCertain: return "AbsentCertain";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Graph clique(int k) {
  Graph g(k);
  for (int u = 0; u < k; ++u)
    for (int v = u + 1; v < k; ++v) g.add_edge(u, v);
  return g;
}

Graph path(int k) { return make_pattern(PatternId::path(k)); }
Graph cycle(int k) { return make_pattern(PatternId::cycle(k)); }

TemplateValue image_value(const Poly& img, const Graph& host) {
  BigInt constant = 0;
  std::map<int, BigInt> linear;
  for (const auto& [m, c] : img.terms()) {
    int vertex = -1;
    bool alive = true;
    for (auto e : m) {
      Var v = mono_var(e);
      if (v.is_edge()) {
        const int a = static_cast<int>(v.first()), b = static_cast<int>(v.second());
        if (b >= host.n() || !host.has_edge(a, b)) alive = false;
      } else if (v.is_vertex()) {
        if (vertex >= 0 || mono_exp(e) != 1) throw DomainError("image is not linear in vertex variables");
        vertex = static_cast<int>(v.first());
        if (vertex >= host.n()) throw DomainError("image vertex outside the host");
      } else if (v.is_hom()) {
        throw DomainError("image keeps a homomorphism variable");
      }
      if (!alive) break;
    }
    if (!alive) continue;
    if (vertex < 0)
      constant += c;
    else
      linear[vertex] += c;
  }
  std::erase_if(linear, [](const auto& kv) { return kv.second == 0; });
  if (linear.empty()) return {constant, -1};
  if (linear.size() > 1 || constant != 0) throw DomainError("image mixes vertices and constants");
  return {linear.begin()->second, linear.begin()->first};
}

// -------------------------------------------------------------- evaluation

template <class Base>
DetectionReport run_trials(const std::vector<Block>& blocks, int k, const DetectConfig& cfg, const Base& base) {
  if (k < 1 || k > 16) throw DomainError("multilinear detection needs 1 <= k <= 16");
  if (cfg.trials < 1) throw DomainError("trials must be positive");
  auto t0 = Clock::now();
  int nv = 0;
  for (const auto& b : blocks)
    for (const auto& t : b.values) nv = std::max(nv, t.vertex + 1);
  const int trials = cfg.trials;
  std::vector<OpCounts> ring_ops(trials), base_ops(trials);
  std::atomic<int> first_hit{trials};

  auto trial = [&](int t) -> bool {
    TruncRing<Base> ring(base, k);
    Rng rng = make_stream(cfg.seed, static_cast<std::uint64_t>(t));
    std::vector<typename Base::Elem> coef(nv);
    std::vector<int> slot(nv);
    for (int w = 0; w < nv; ++w) {
      coef[w] = base.draw(rng);
      slot[w] = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(k)));
    }
    auto total = ring.zero();
    for (const auto& b : blocks) {
      std::vector<typename TruncRing<Base>::Elem> vals;
      vals.reserve(b.values.size());
      for (const auto& tv : b.values) {
        if (tv.coef == 0)
          vals.push_back(ring.zero());
        else if (tv.vertex < 0)
          vals.push_back(ring.from_big(tv.coef));
        else
          vals.push_back(ring.monomial(ring.base.mul(ring.base.from_big(tv.coef), coef[tv.vertex]), slot[tv.vertex]));
      }
      total = ring.add(total, eval(b.circuit, ring, vals));
    }
    ring_ops[t] = ring.ops;
    base_ops[t] = ring.base.ops;
    return !ring.is_zero(total);
  };

  auto worker = [&](int start, int stride) {
    for (int t = start; t < trials; t += stride) {
      if (t > first_hit.load()) return;
      if (trial(t)) {
        int cur = first_hit.load();
        while (t < cur && !first_hit.compare_exchange_weak(cur, t)) {
        }
        return;
      }
    }
  };
  const int threads = std::max(1, std::min(cfg.threads, trials));
  if (threads == 1) {
    worker(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker, i, threads);
    for (auto& th : pool) th.join();
  }

  DetectionReport r;
  r.seed = cfg.seed;
  const int hit = first_hit.load();
  r.verdict = hit < trials ? Verdict::Present : Verdict::NotDetected;
  r.trials = hit < trials ? hit + 1 : trials;
  for (int t = 0; t < r.trials; ++t) {
    r.ring_ops += ring_ops[t];
    r.base_ops += base_ops[t];
  }
  r.seconds = since(t0);
  return r;
}

// Field the detection runs over. Mod-2 routes need characteristic 2; exact
// routes accept any field.
RingConfig working_field(const DetectConfig& cfg, bool needs_char2, bool needs_large_char, std::uint64_t min_char) {
  const auto& f = cfg.field;
  if (f.kind != RingConfig::Kind::Gf2Ext && f.kind != RingConfig::Kind::PrimeField)
    throw DomainError("detection field must be GF(2^w) or Z_p");
  if (needs_char2) {
    if (f.characteristic() != 2) throw CapabilityError("this route counts modulo 2 and needs a characteristic-2 field");
    return f;
  }
  if (needs_large_char) {
    if (f.kind == RingConfig::Kind::PrimeField && f.p > min_char) return f;
    return RingConfig::prime_field(cfg.p);
  }
  return f;
}

// Folds the constant inputs of a DAG into its gates; vertex inputs become
// y_w for the host vertex w.
Block fold(const Block& b) {
  const auto* dag = std::get_if<CircuitDag>(&b.circuit);
  if (!dag) return b;
  const auto in = dag->inputs();
  std::unordered_map<std::uint64_t, Poly> image;
  for (std::size_t i = 0; i < in.size(); ++i) {
    const auto& tv = b.values[i];
    image[in[i].code()] = tv.vertex < 0 ? Poly::constant(tv.coef) : Poly::variable(Var::y(tv.vertex)).scaled(tv.coef);
  }
  CircuitDag folded = substitute(*dag, [&](Var v) -> std::optional<Poly> { return image.at(v.code()); });
  Block out{folded, {}};
  for (Var v : folded.inputs()) out.values.push_back({1, static_cast<int>(v.first())});
  return out;
}

DetectionReport run_blocks(const std::vector<Block>& raw, int k, const DetectConfig& cfg, const RingConfig& field) {
  std::vector<Block> blocks;
  for (const auto& b : raw) blocks.push_back(fold(b));
  DetectionReport r;
  if (field.kind == RingConfig::Kind::Gf2Ext)
    r = run_trials(blocks, k, cfg, Gf2Ext(field.w));
  else
    r = run_trials(blocks, k, cfg, ZpRing(field.p));
  r.field = field.name();
  return r;
}

// ------------------------------------------------------------- route plans

enum class Shape { Path, Cycle, H6, Clique, Independent, Generic };

Shape classify(const Graph& h) {
  const int k = h.n();
  const std::size_t full = static_cast<std::size_t>(k) * (k - 1) / 2;
  if (h.edge_count() == full) return Shape::Clique;
  if (h.edge_count() == 0) return Shape::Independent;
  if (k >= 4 && isomorphic(h, path(k))) return Shape::Path;
  if (k >= 5 && k % 2 == 1 && isomorphic(h, cycle(k))) return Shape::Cycle;
  if (k == 6 && isomorphic(h, make_pattern(PatternId::h3k(6)))) return Shape::H6;
  return Shape::Generic;
}

struct Plan {
  std::string route;
  std::string certificate;
  bool complement = false;
  bool mod2 = false;
  bool hom_one = false;
  SubstitutionFamily sigma;
  Graph target;  // labelled pattern of the Hom circuits, in sigma's colours
  BuildMethod method = BuildMethod::Treewidth;
  int copies = 1;
  int k = 0;
};

BuildMethod pick_method(Route route, std::optional<BuildMethod> special) {
  if (route == Route::Specialized) {
    if (!special) throw CapabilityError("no specialized builder for this pattern");
    return *special;
  }
  if (route == Route::Treewidth || !special) return BuildMethod::Treewidth;
  return *special;
}

Plan make_plan(const Graph& h, Route route, bool parity) {
  const int k = h.n();
  Plan p;
  p.k = k;
  SubstitutionParams sp;
  switch (classify(h)) {
    case Shape::Path: {
      sp.k = k;
      p.route = "path-complement";
      p.certificate = "path:" + std::to_string(k);
      p.complement = true;
      p.mod2 = true;
      p.sigma = make_substitution(parity ? "PathParity" : "PathHom", sp);
      p.target = path_complement_sequential(k);
      std::optional<BuildMethod> special;
      if (k == 5) special = BuildMethod::P5Bar;
      if (k == 6) special = BuildMethod::P6Bar;
      p.method = pick_method(route, special);
      break;
    }
    case Shape::Cycle: {
      sp.k = k;
      p.route = "cycle-complement";
      p.certificate = "cycle:" + std::to_string(k);
      p.complement = true;
      p.mod2 = true;
      p.sigma = make_substitution(parity ? "CycleParity" : "CycleCombined", sp);
      p.target = clique_minus_path_sequential(k);
      p.copies = 3;
      std::optional<BuildMethod> special;
      if (k == 5) special = BuildMethod::K5MinusP4;
      p.method = pick_method(route, special);
      break;
    }
    case Shape::H6: {
      sp.k = 2;
      p.route = "h6";
      p.certificate = "h6";
      p.mod2 = true;
      p.sigma = make_substitution(parity ? "H3kParity" : "H3kSigma", sp);
      p.target = p.sigma.target.terms.front().graph;
      p.method = pick_method(route, BuildMethod::H6);
      break;
    }
    case Shape::Clique:
    case Shape::Independent: {
      const bool ind = classify(h) == Shape::Independent;
      p.route = ind ? "independent-complement" : "clique";
      p.certificate = "clique:" + std::to_string(k);
      p.complement = ind;
      if (parity) {
        sp.k = k;
        p.sigma = make_substitution("CliqueParity", sp);
      } else {
        sp.h = clique(k);
        sp.k = k;
        sp.kind = PolyKind::Hom;
        p.sigma = make_substitution("CliqueHard", sp);
      }
      p.target = clique(k);
      p.method = pick_method(route, std::nullopt);
      break;
    }
    case Shape::Generic: {
      if (k > 7) throw CapabilityError("generic induced route is limited to 7 pattern vertices");
      sp.h = h;
      p.route = "ind-to-clique";
      p.certificate = "generic:" + to_graph6(h);
      p.hom_one = true;
      p.sigma = make_substitution("IndToClique", sp);
      p.target = clique(k);
      p.copies = static_cast<int>(p.sigma.perms.size());
      p.method = pick_method(route, std::nullopt);
      break;
    }
  }
  return p;
}

// Hom circuits for the plan's blocks at host size n, in sigma's colours.
std::vector<Evaluable> plan_circuits(const Plan& p, int n) {
  Graph built = p.method == BuildMethod::Treewidth ? p.target : method_pattern(p.method, p.k);
  auto colour = find_isomorphism(built, p.target);
  if (colour.empty()) throw std::logic_error("builder pattern does not match the route pattern");
  std::vector<Evaluable> out;
  for (int copy = 0; copy < p.copies; ++copy)
    out.push_back(build(p.method, built, Naming::colored_by(n, colour, p.k, p.copies, copy)));
  return out;
}

std::vector<Block> plan_blocks(const Plan& p, const Graph& host) {
  const Graph g = p.complement ? complement(host) : host;
  std::vector<Block> blocks;
  for (auto& c : plan_circuits(p, g.n())) {
    auto values = substitution_template(c, p.sigma, g, p.hom_one);
    blocks.push_back({std::move(c), std::move(values)});
  }
  return blocks;
}

std::string builder_label(const Plan& p) {
  return method_name(p.method) + (p.copies > 1 ? " x" + std::to_string(p.copies) : std::string());
}

// ----------------------------------------------------------- certification

CheckResult reduction_check(const SubstitutionFamily& s, int n) {
  auto t0 = Clock::now();
  CheckResult c;
  c.name = s.name + "(" + s.params + ") n=" + std::to_string(n);
  try {
    auto r = verify_reduction(s, n);
    c.pass = r.pass;
    c.detail = r.message;
  } catch (const std::exception& e) {
    c.pass = false;
    c.detail = e.what();
  }
  c.seconds = since(t0);
  return c;
}

std::vector<CheckResult> certificate_checks(const std::string& key) {
  std::vector<CheckResult> out;
  const auto colon = key.find(':');
  const std::string kind = key.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : key.substr(colon + 1);
  SubstitutionParams sp;
  if (kind == "path") {
    const int k = std::stoi(arg);
    sp.k = k;
    out.push_back(path_parity_lemma(k));
    const int n = k;
    out.push_back(reduction_check(make_substitution("PathHom", sp), n));
    out.push_back(reduction_check(make_substitution("PathParity", sp), n));
  } else if (kind == "cycle") {
    const int k = std::stoi(arg);
    sp.k = k;
    out.push_back(cycle_parity_lemma(k));
    const int n = k;
    out.push_back(reduction_check(make_substitution("CycleCombined", sp), n));
    out.push_back(reduction_check(make_substitution("CycleParity", sp), n));
  } else if (kind == "h6") {
    sp.k = 2;
    out.push_back(h3k_parity_lemma(2));
    out.push_back(reduction_check(make_substitution("H3kSigma", sp), 6));
    out.push_back(reduction_check(make_substitution("H3kParity", sp), 6));
  } else if (kind == "clique") {
    const int k = std::stoi(arg);
    sp.h = clique(k);
    sp.k = k;
    sp.kind = PolyKind::Hom;
    const int n = std::min(k + 1, 6);
    out.push_back(reduction_check(make_substitution("CliqueHard", sp), n));
    out.push_back(reduction_check(make_substitution("CliqueParity", sp), n));
  } else if (kind == "generic") {
    sp.h = parse_graph6(arg);
    out.push_back(reduction_check(make_substitution("IndToClique", sp), std::min(sp.h.n(), 6)));
  } else {
    throw DomainError("unknown certificate '" + key + "'");
  }
  return out;
}

std::uint64_t binom_parity_odd(int n, int r) {
  // C(n, r) is odd iff r's bits are a subset of n's (Lucas).
  if (r < 0 || r > n) return 0;
  return (static_cast<unsigned>(r) & ~static_cast<unsigned>(n)) == 0 ? 1 : 0;
}

double binom(int n, int r) {
  if (r < 0 || r > n) return 0;
  double c = 1;
  for (int i = 1; i <= r; ++i) c = c * (n - r + i) / i;
  return c;
}

// Pair index of positions i < j inside a k-subset.
inline int pair_index(int i, int j) { return j * (j - 1) / 2 + i; }

std::uint64_t pattern_mask(const Graph& h, const std::vector<int>& perm) {
  std::uint64_t m = 0;
  for (auto [a, b] : h.edges()) {
    int i = perm[a], j = perm[b];
    if (i > j) std::swap(i, j);
    m |= std::uint64_t{1} << pair_index(i, j);
  }
  return m;
}

std::vector<std::uint64_t> labelled_masks(const Graph& h) {
  const int k = h.n();
  if (k > 9) throw CapabilityError("brute force is limited to 9 pattern vertices");
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  std::unordered_set<std::uint64_t> seen;
  do {
    seen.insert(pattern_mask(h, perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::vector<std::uint64_t> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

// Visits every k-subset of host in lexicographic order with its edge mask.
template <class Leaf>
void for_each_subset(const Graph& host, int k, std::uint64_t& ops, Leaf&& leaf) {
  const int n = host.n();
  if (k == 0) {
    ++ops;
    leaf(0);
    return;
  }
  std::vector<int> pick(k);
  std::vector<std::uint64_t> mask(k + 1, 0);
  auto rec = [&](auto&& self, int d, int start) -> void {
    if (d == k) {
      ++ops;
      leaf(mask[d]);
      return;
    }
    for (int w = start; w < n; ++w) {
      std::uint64_t m = mask[d];
      for (int i = 0; i < d; ++i)
        if (host.has_edge(pick[i], w)) m |= std::uint64_t{1} << pair_index(i, d);
      ops += static_cast<std::uint64_t>(d);
      pick[d] = w;
      mask[d + 1] = m;
      self(self, d + 1, w + 1);
    }
  };
  rec(rec, 0, 0);
}

}  // namespace

// ----------------------------------------------------------------- templates

std::vector<TemplateValue> plain_template(const Evaluable& c, const Graph& host) {
  std::vector<TemplateValue> out;
  for (Var v : inputs_of(c)) {
    if (v.is_vertex()) {
      if (static_cast<int>(v.first()) >= host.n()) throw DomainError("vertex variable outside the host");
      out.push_back({1, static_cast<int>(v.first())});
    } else if (v.is_edge()) {
      const bool e = static_cast<int>(v.second()) < host.n() &&
                     host.has_edge(static_cast<int>(v.first()), static_cast<int>(v.second()));
      out.push_back({e ? 1 : 0, -1});
    } else {
      out.push_back({1, -1});
    }
  }
  return out;
}

std::vector<TemplateValue> substitution_template(const Evaluable& c, const SubstitutionFamily& s, const Graph& host,
                                                 bool hom_one) {
  const int n = host.n();
  std::vector<TemplateValue> out;
  for (Var v : inputs_of(c)) {
    auto img = s.rule(v, n);
    if (!img) {
      if (hom_one && v.is_hom() && static_cast<int>(v.second()) < s.domain.size(n)) {
        out.push_back({1, -1});
        continue;
      }
      throw DomainError("variable " + v.str() + " lies outside the domain of " + s.name);
    }
    out.push_back(image_value(*img, host));
  }
  return out;
}

// ----------------------------------------------------------------- detection

DetectionReport detect_multilinear_blocks(const std::vector<Block>& blocks, int k, const DetectConfig& cfg) {
  return run_blocks(blocks, k, cfg, working_field(cfg, false, false, 0));
}

bool detect_multilinear(const Evaluable& c, const std::vector<TemplateValue>& values, int k, const DetectConfig& cfg) {
  if (values.size() != inputs_of(c).size()) throw DomainError("template does not match circuit inputs");
  std::vector<Block> blocks{{c, values}};
  return detect_multilinear_blocks(blocks, k, cfg).verdict == Verdict::Present;
}

std::string induced_route_for(const Graph& pattern) { return make_plan(pattern, Route::Auto, false).route; }

DetectionReport detect_induced(const Graph& pattern, const Graph& host, const DetectConfig& cfg) {
  auto t0 = Clock::now();
  const int k = pattern.n();
  if (k < 1) throw DomainError("pattern needs at least one vertex");
  if (cfg.route == Route::Oracle || host.n() < k) {
    DetectionReport r;
    r.seed = cfg.seed;
    r.route = "oracle";
    r.field = "-";
    r.builder = "-";
    r.verdict = brute_force_induced(pattern, host) > 0 ? Verdict::Present : Verdict::AbsentCertain;
    r.seconds = since(t0);
    return r;
  }
  Plan p = make_plan(pattern, cfg.route, false);
  require_certified(p.certificate);
  const auto field = working_field(cfg, p.mod2, false, 0);
  auto blocks = plan_blocks(p, host);
  auto r = run_blocks(blocks, k, cfg, field);
  r.route = p.route;
  r.builder = builder_label(p);
  r.seconds = since(t0);
  return r;
}

DetectionReport detect_induced(const PatternId& pattern, const Graph& host, const DetectConfig& cfg) {
  return detect_induced(make_pattern(pattern), host, cfg);
}

DetectionReport detect_subgraph(const Graph& pattern, const Graph& host, const DetectConfig& cfg) {
  auto t0 = Clock::now();
  const int k = pattern.n();
  if (k < 1) throw DomainError("pattern needs at least one vertex");
  if (cfg.route == Route::Oracle || host.n() < k) {
    DetectionReport r;
    r.seed = cfg.seed;
    r.route = "oracle";
    r.field = "-";
    r.builder = "-";
    r.verdict = brute_force_subgraph(pattern, host) > 0 ? Verdict::Present : Verdict::AbsentCertain;
    r.seconds = since(t0);
    return r;
  }
  if (cfg.route == Route::Specialized) throw CapabilityError("subgraph detection uses the treewidth builder");
  // the y_S coefficient counts injective homomorphisms into host[S]: at
  // most k!, so any prime above k! keeps it nonzero
  double fact = 1;
  for (int i = 2; i <= k; ++i) fact *= i;
  const auto field = working_field(cfg, false, true, static_cast<std::uint64_t>(std::min(fact, 1e18)));
  Evaluable c = build_treewidth(pattern, Naming::plain(host.n()));
  std::vector<Block> blocks{{c, plain_template(c, host)}};
  auto r = run_blocks(blocks, k, cfg, field);
  r.route = "hom";
  r.builder = "treewidth";
  r.seconds = since(t0);
  return r;
}

DetectionReport detect_subgraph(const PatternId& pattern, const Graph& host, const DetectConfig& cfg) {
  return detect_subgraph(make_pattern(pattern), host, cfg);
}

// -------------------------------------------------------------------- parity

ParityReport parity_induced(const Graph& pattern, const Graph& host) {
  const int k = pattern.n();
  const int n = host.n();
  if (k < 1) throw DomainError("pattern needs at least one vertex");
  if (n > 64) throw GuardError("parity extraction is limited to hosts with 64 vertices");
  ParityReport rep;
  rep.brute = static_cast<int>(brute_force_induced(pattern, host) & 1);
  if (n < k) {
    rep.identity = 0;
    rep.route = "empty";
    rep.agree = rep.brute == 0;
    return rep;
  }
  double work = 0;
  for (int s = 1; s <= k; ++s) work += binom(n, s);
  if (work > 1e8) throw GuardError("parity extraction would need more than 1e8 evaluations");

  const Plan plan = make_plan(pattern, Route::Auto, true);
  require_certified(plan.certificate);
  rep.route = plan.route;

  // f(1_S) only sees host[S]; memoised per labelled induced subgraph
  static std::mutex mu;
  static std::map<std::string, int> memo;
  static std::map<std::string, std::vector<Evaluable>> circuits;
  const std::string tag = plan.sigma.name + "/" + plan.sigma.params + "/" + method_name(plan.method) +
                          (plan.complement ? "/co" : "");
  ZpRing gf2(2);
  auto value_on = [&](const Graph& sub) -> int {
    const std::string key = tag + "|" + to_graph6(sub);
    {
      std::lock_guard<std::mutex> lock(mu);
      auto it = memo.find(key);
      if (it != memo.end()) return it->second;
    }
    const std::string ckey = tag + "|" + std::to_string(sub.n());
    std::vector<Evaluable> cs;
    {
      std::lock_guard<std::mutex> lock(mu);
      auto it = circuits.find(ckey);
      if (it == circuits.end()) it = circuits.emplace(ckey, plan_circuits(plan, sub.n())).first;
      cs = it->second;
    }
    const Graph g = plan.complement ? complement(sub) : sub;
    std::uint64_t acc = 0;
    for (const auto& c : cs) {
      auto values = substitution_template(c, plan.sigma, g, plan.hom_one);
      std::vector<std::uint64_t> vals;
      vals.reserve(values.size());
      for (const auto& tv : values) vals.push_back(gf2.from_big(tv.coef));
      acc ^= eval(c, gf2, vals);
    }
    std::lock_guard<std::mutex> lock(mu);
    memo[key] = static_cast<int>(acc);
    return static_cast<int>(acc);
  };

  int bit = 0;
  std::vector<int> pick;
  auto rec = [&](auto&& self, int start) -> void {
    const int s = static_cast<int>(pick.size());
    if (s >= 1 && binom_parity_odd(n - s, k - s)) {
      ++rep.evaluations;
      bit ^= value_on(induced_subgraph(host, pick));
    }
    if (s == k) return;
    for (int w = start; w < n; ++w) {
      pick.push_back(w);
      self(self, w + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);
  rep.identity = bit;
  rep.agree = rep.identity == rep.brute;
  return rep;
}

ParityReport parity_induced(const PatternId& pattern, const Graph& host) {
  return parity_induced(make_pattern(pattern), host);
}

// -------------------------------------------------------------- hom counting

BigInt count_homomorphisms(const PatternId& pattern, const Graph& host) {
  const Graph h = make_pattern(pattern);
  if (host.n() == 0) return h.n() == 0 ? 1 : 0;
  BuilderSpec spec{pattern, default_method(pattern), host.n(), false};
  Evaluable c = build(spec);
  IntRing ring;
  std::vector<BigInt> vals;
  for (const auto& tv : plain_template(c, host)) vals.push_back(tv.coef);
  return eval(c, ring, vals);
}

BigInt count_homomorphisms(const Graph& pattern, const Graph& host) {
  if (host.n() == 0) return pattern.n() == 0 ? 1 : 0;
  Evaluable c = build_treewidth(pattern, Naming::plain(host.n()));
  IntRing ring;
  std::vector<BigInt> vals;
  for (const auto& tv : plain_template(c, host)) vals.push_back(tv.coef);
  return eval(c, ring, vals);
}

// --------------------------------------------------------------- brute force

std::uint64_t brute_force_induced(const Graph& pattern, const Graph& host, std::uint64_t* ops, double guard) {
  const int k = pattern.n();
  if (binom(host.n(), k) > guard) throw GuardError("brute-force induced count exceeds the guard");
  const auto masks = labelled_masks(pattern);
  std::uint64_t count = 0, local = 0;
  if (host.n() >= k)
    for_each_subset(host, k, local, [&](std::uint64_t m) {
      if (std::binary_search(masks.begin(), masks.end(), m)) ++count;
    });
  if (ops) *ops = local;
  return count;
}

std::uint64_t brute_force_subgraph(const Graph& pattern, const Graph& host, double guard) {
  const int k = pattern.n();
  if (binom(host.n(), k) > guard) throw GuardError("brute-force subgraph count exceeds the guard");
  const auto masks = labelled_masks(pattern);
  std::unordered_map<std::uint64_t, bool> seen;
  std::uint64_t count = 0, ops = 0;
  if (host.n() >= k)
    for_each_subset(host, k, ops, [&](std::uint64_t m) {
      auto it = seen.find(m);
      if (it == seen.end()) {
        bool any = std::any_of(masks.begin(), masks.end(), [m](std::uint64_t l) { return (l & m) == l; });
        it = seen.emplace(m, any).first;
      }
      if (it->second) ++count;
    });
  return count;
}

// -------------------------------------------------------------------- lemmas

CheckResult path_parity_lemma(int k) {
  auto t0 = Clock::now();
  CheckResult c;
  c.name = "path-ind-sub k=" + std::to_string(k);
  const Graph pbar = path_complement_sequential(k);
  const auto supers = proper_supergraphs(pbar);
  std::size_t odd = 0;
  for (const auto& s : supers)
    if (copy_count(pbar, s) % 2) ++odd;
  const std::size_t want = (std::size_t{1} << (k - 1)) - 1;
  c.pass = odd == 0 && supers.size() == want;
  c.detail = std::to_string(supers.size()) + " proper supergraphs, " + std::to_string(odd) + " with an odd count";
  c.seconds = since(t0);
  return c;
}

CheckResult cycle_parity_lemma(int k) {
  auto t0 = Clock::now();
  CheckResult c;
  c.name = "cycle-ind-sub k=" + std::to_string(k);
  const Graph cbar = complement(cycle(k));
  const Graph pbar = complement(path(k));
  const Graph kmp = make_pattern(PatternId::clique_minus_path(k));
  std::size_t bad = 0, special = 0;
  const auto supers = proper_supergraphs(cbar);
  for (const auto& s : supers) {
    const auto cnt = copy_count(cbar, s);
    if (isomorphic(s, pbar) || isomorphic(s, kmp)) {
      ++special;
      if (cnt != 1) ++bad;
    } else if (cnt % 2) {
      ++bad;
    }
  }
  c.pass = bad == 0 && special > 0;
  c.detail = std::to_string(supers.size()) + " proper supergraphs, " + std::to_string(special) +
             " of the two odd shapes, " + std::to_string(bad) + " violations";
  c.seconds = since(t0);
  return c;
}

CheckResult h3k_parity_lemma(int t) {
  auto t0 = Clock::now();
  CheckResult c;
  c.name = "h3k-ind-sub k=" + std::to_string(t);
  const Graph h = make_pattern(PatternId::h3k(3 * t));
  const int k = 3 * t;
  std::size_t odd = 0;
  const auto supers = proper_supergraphs(h);
  for (const auto& s : supers)
    if (copy_count(h, s) % 2) ++odd;
  c.pass = odd == 0;
  c.detail = std::to_string(supers.size()) + " proper supergraphs, " + std::to_string(odd) + " with an odd count";
  if (t == 2) {
    const Graph kme = make_pattern(PatternId::clique_minus_edge(k));
    const auto full = copy_count(h, clique(k));
    const auto minus = copy_count(h, kme);
    c.pass = c.pass && full == 60 && minus == 8;
    c.detail += "; nsub(H,K6)=" + std::to_string(full) + ", nsub(H,K6-e)=" + std::to_string(minus);
  }
  c.seconds = since(t0);
  return c;
}

void require_certified(const std::string& key) {
  static std::mutex mu;
  static std::map<std::string, std::pair<bool, std::string>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it == cache.end()) {
    bool ok = true;
    std::string why;
    for (const auto& c : certificate_checks(key))
      if (!c.pass) {
        ok = false;
        why = c.name + ": " + c.detail;
        break;
      }
    it = cache.emplace(key, std::make_pair(ok, why)).first;
  }
  if (!it->second.first) throw CapabilityError("route " + key + " is not certified (" + it->second.second + ")");
}

}  // namespace pf
