#include "patternforge/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <json.hpp>

#include "patternforge/detect.hpp"
#include "patternforge/oracle.hpp"
#include "patternforge/suites.hpp"

namespace pf {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
  std::string pattern;
  std::string host;
  std::string format = "auto";
  int trials = 32;
  std::uint64_t seed = 1;
  std::string field = "gf2-64";
  std::string route = "auto";
  int threads = 1;
  bool json = false;
  bool subgraph = false;
  bool no_oracle = false;
  int n = 0;
  std::string method;
  std::string emit = "summary";
  bool check = false;
  std::string suite;
  std::vector<std::string> subjects;
  std::vector<int> grid{8, 16, 32, 64};
  bool csv = false;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read host file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool ends_with(const std::string& s, const std::string& suf) {
  return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

// "g6:<text>" reads inline graph6; otherwise a path, with the format taken
// from --format or guessed from the extension.
Graph load_host(const std::string& src, const std::string& format) {
  if (src.rfind("g6:", 0) == 0) return parse_graph6(src.substr(3));
  const std::string text = slurp(src);
  bool edges = format == "edges";
  if (format == "auto") edges = ends_with(src, ".edges") || ends_with(src, ".txt");
  if (edges) return parse_edge_list(text);
  std::string line = text.substr(0, text.find_first_of("\r\n"));
  return parse_graph6(line);
}

Json ops_json(const OpCounts& o) { return Json{{"adds", o.adds}, {"muls", o.muls}}; }

Json check_json(const CheckResult& c) {
  return Json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}, {"seconds", c.seconds}};
}

DetectConfig detect_config(const Options& o) {
  DetectConfig cfg;
  if (o.trials < 1) throw DomainError("--trials must be positive");
  if (o.threads < 1) throw DomainError("--threads must be positive");
  cfg.trials = o.trials;
  cfg.seed = o.seed;
  cfg.field = parse_field(o.field);
  cfg.route = parse_route(o.route);
  cfg.threads = o.threads;
  return cfg;
}

int cmd_detect(const Options& o, std::ostream& out) {
  const PatternId id = parse_pattern_spec(o.pattern);
  validate(id);
  const Graph h = make_pattern(id);
  const Graph g = load_host(o.host, o.format);
  const DetectConfig cfg = detect_config(o);
  const DetectionReport r = o.subgraph ? detect_subgraph(h, g, cfg) : detect_induced(h, g, cfg);

  std::optional<std::uint64_t> truth;
  if (!o.no_oracle) {
    try {
      truth = o.subgraph ? brute_force_subgraph(h, g) : brute_force_induced(h, g);
    } catch (const GuardError&) {
    }
  }
  // one-sided error: only a Present verdict on an oracle-absent host is wrong
  const bool mismatch = truth && *truth == 0 && r.verdict == Verdict::Present;

  if (o.json) {
    Json j{{"schema", kSchema},
           {"command", "detect"},
           {"pattern", id.name()},
           {"mode", o.subgraph ? "subgraph" : "induced"},
           {"host", {{"n", g.n()}, {"m", g.edge_count()}}},
           {"verdict", verdict_name(r.verdict)},
           {"trials", r.trials},
           {"trials_requested", cfg.trials},
           {"seed", r.seed},
           {"field", r.field},
           {"route", r.route},
           {"builder", r.builder},
           {"oracle_fallback", r.oracle_fallback},
           {"ops", {{"ring", ops_json(r.ring_ops)}, {"base", ops_json(r.base_ops)}}}};
    if (truth)
      j["oracle"] = {{"count", *truth}, {"consistent", !mismatch}};
    else
      j["oracle"] = nullptr;
    j["seconds"] = r.seconds;
    out << j.dump(2) << "\n";
  } else {
    out << verdict_name(r.verdict) << "\n";
    out << "pattern " << id.name() << " (" << (o.subgraph ? "subgraph" : "induced") << "), host n=" << g.n()
        << " m=" << g.edge_count() << "\n";
    out << "trials " << r.trials << "/" << cfg.trials << ", seed " << r.seed << ", field " << r.field << ", route "
        << r.route << ", builder " << r.builder << "\n";
    out << "ring ops " << r.ring_ops.adds << " adds " << r.ring_ops.muls << " muls; base ops " << r.base_ops.adds
        << " adds " << r.base_ops.muls << " muls; " << std::fixed << std::setprecision(3) << r.seconds << " s\n";
    if (truth) out << "oracle count " << *truth << (mismatch ? " MISMATCH" : "") << "\n";
  }
  return mismatch ? 1 : 0;
}

int cmd_count_hom(const Options& o, std::ostream& out) {
  const PatternId id = parse_pattern_spec(o.pattern);
  validate(id);
  const Graph g = load_host(o.host, o.format);
  const BigInt c = count_homomorphisms(id, g);
  if (o.json)
    out << Json{{"schema", kSchema}, {"command", "count-hom"}, {"pattern", id.name()}, {"host", {{"n", g.n()}, {"m", g.edge_count()}}},
                {"count", c.str()}}
               .dump(2)
        << "\n";
  else
    out << c.str() << "\n";
  return 0;
}

int cmd_parity(const Options& o, std::ostream& out) {
  const PatternId id = parse_pattern_spec(o.pattern);
  validate(id);
  const Graph g = load_host(o.host, o.format);
  const ParityReport r = parity_induced(id, g);
  if (o.json)
    out << Json{{"schema", kSchema},
                {"command", "parity"},
                {"pattern", id.name()},
                {"host", {{"n", g.n()}, {"m", g.edge_count()}}},
                {"parity", r.brute},
                {"brute", r.brute},
                {"identity", r.identity},
                {"agree", r.agree},
                {"route", r.route},
                {"evaluations", r.evaluations}}
               .dump(2)
        << "\n";
  else
    out << r.brute << (r.agree ? "" : " (subset identity gave " + std::to_string(r.identity) + ")") << "\n";
  return r.agree ? 0 : 1;
}

int cmd_expand(const Options& o, std::ostream& out) {
  const PatternId id = parse_pattern_spec(o.pattern);
  validate(id);
  if (o.n < 1) throw DomainError("--n must be positive");
  const BuildMethod m = o.method.empty() ? default_method(id) : parse_method(o.method);
  const Evaluable c = build(BuilderSpec{id, m, o.n, false});
  const OpReport ops = op_count(c);

  std::optional<bool> exact;
  if (o.check) exact = to_sparse_poly(c, 1 << 20) == expand_hom(make_pattern(id), o.n);

  if (o.json) {
    Json stages = Json::array();
    for (const auto& s : ops.stages) stages.push_back({{"stage", s.stage}, {"ops", ops_json(s.ops)}});
    Json j{{"schema", kSchema},   {"command", "expand"},         {"pattern", id.name()},
           {"method", method_name(m)}, {"n", o.n},               {"inputs", inputs_of(c).size()},
           {"ops", {{"total", ops_json(ops.total)}, {"stages", stages}}}};
    j["verified"] = exact ? Json(*exact) : Json(nullptr);
    if (o.emit == "program") j["program"] = to_text(c);
    if (o.emit == "poly") j["poly"] = to_sparse_poly(c, 1 << 20).to_text();
    out << j.dump(2) << "\n";
  } else if (o.emit == "program") {
    out << to_text(c);
  } else if (o.emit == "poly") {
    out << to_sparse_poly(c, 1 << 20).to_text() << "\n";
  } else {
    out << method_name(m) << " " << id.name() << " n=" << o.n << ": " << inputs_of(c).size() << " inputs, "
        << ops.total.adds << " adds, " << ops.total.muls << " muls\n";
    for (const auto& s : ops.stages) out << "  " << s.stage << ": " << s.ops.adds << " adds, " << s.ops.muls << " muls\n";
    if (exact) out << (*exact ? "matches" : "DIFFERS FROM") << " the brute-force Hom expansion\n";
  }
  return exact && !*exact ? 1 : 0;
}

int cmd_verify(const Options& o, std::ostream& out) {
  std::optional<int> n;
  if (o.n > 0) n = o.n;
  const SuiteResult r = run_suite(o.suite, n, o.seed);
  if (o.json) {
    Json checks = Json::array();
    for (const auto& c : r.checks) checks.push_back(check_json(c));
    out << Json{{"schema", kSchema}, {"command", "verify"}, {"suite", r.suite}, {"seed", o.seed},
                {"pass", r.pass()},  {"checks", checks},    {"seconds", r.seconds}}
               .dump(2)
        << "\n";
  } else {
    for (const auto& c : r.checks) out << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
    out << r.suite << ": " << (r.pass() ? "pass" : "FAIL") << " (" << r.checks.size() << " checks)\n";
  }
  return r.pass() ? 0 : 1;
}

int cmd_bench(const Options& o, std::ostream& out) {
  std::vector<BenchResult> results;
  for (const auto& s : o.subjects) results.push_back(bench(s, o.grid, o.seed));
  if (o.json) {
    Json arr = Json::array();
    for (const auto& b : results) {
      Json rows = Json::array();
      for (const auto& r : b.rows) rows.push_back({{"n", r.n}, {"ops", r.ops}, {"seconds", r.seconds}});
      arr.push_back({{"subject", b.subject}, {"rows", rows}, {"slope", b.slope}});
    }
    out << Json{{"schema", kSchema}, {"command", "bench"}, {"seed", o.seed}, {"benches", arr}}.dump(2) << "\n";
  } else if (o.csv) {
    out << "subject,n,ops,seconds\n";
    for (const auto& b : results)
      for (const auto& r : b.rows) out << b.subject << "," << r.n << "," << r.ops << "," << r.seconds << "\n";
  } else {
    for (const auto& b : results) {
      out << b.subject << "\n";
      for (const auto& r : b.rows) out << "  n=" << r.n << " ops=" << r.ops << " " << r.seconds << " s\n";
      if (b.rows.size() >= 2) out << "  slope " << std::fixed << std::setprecision(3) << b.slope << "\n";
      out.unsetf(std::ios::floatfield);
    }
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Algebraic induced-subgraph detection and verification"};
  app.name("patternforge");
  app.require_subcommand(1);

  auto add_pattern = [&](CLI::App* s) {
    s->add_option("--pattern", o.pattern, "pattern spec: P5, C7, H6, K4-e, Kk-e:6, co:P5, g6:<graph6>, file:<path>")
        ->required();
  };
  auto add_host = [&](CLI::App* s) {
    s->add_option("--host", o.host, "host graph file, or g6:<graph6> inline")->required();
    s->add_option("--format", o.format, "host file format")->check(CLI::IsMember({"auto", "graph6", "edges"}));
  };
  auto add_seed = [&](CLI::App* s) { return s->add_option("--seed", o.seed, "random seed (overrides PATTERNFORGE_SEED)"); };
  auto add_json = [&](CLI::App* s) { s->add_flag("--json", o.json, "emit JSON"); };

  std::vector<CLI::Option*> seed_opts;

  auto* detect = app.add_subcommand("detect", "randomized detection of a pattern in a host");
  add_pattern(detect);
  add_host(detect);
  detect->add_option("--trials", o.trials, "trial budget");
  seed_opts.push_back(add_seed(detect));
  detect->add_option("--field", o.field, "gf2-64, gf2-32, gf2-16, gf2-8 or zp:P");
  detect->add_option("--route", o.route, "detection route")
      ->check(CLI::IsMember({"auto", "treewidth", "specialized", "oracle"}));
  detect->add_option("--threads", o.threads, "worker threads for trials");
  detect->add_flag("--subgraph", o.subgraph, "non-induced detection");
  detect->add_flag("--no-oracle", o.no_oracle, "skip the brute-force cross-check");
  add_json(detect);

  auto* count = app.add_subcommand("count-hom", "exact number of homomorphisms");
  add_pattern(count);
  add_host(count);
  add_json(count);

  auto* parity = app.add_subcommand("parity", "parity of the number of induced copies");
  add_pattern(parity);
  add_host(parity);
  add_json(parity);

  auto* expand = app.add_subcommand("expand", "build a Hom circuit and report its size");
  add_pattern(expand);
  expand->add_option("--n", o.n, "host size")->required();
  expand->add_option("--method", o.method, "treewidth, p5bar, p6bar, k5-p4, h6 or kk-e");
  expand->add_option("--emit", o.emit, "what to print")->check(CLI::IsMember({"summary", "program", "poly"}));
  expand->add_flag("--check", o.check, "compare with the brute-force Hom expansion");
  add_json(expand);

  auto* verify = app.add_subcommand("verify", "run a named verification suite");
  verify->add_option("--suite", o.suite, "suite name")->required()->check(CLI::IsMember(suite_names()));
  verify->add_option("--n", o.n, "host size override");
  seed_opts.push_back(add_seed(verify));
  add_json(verify);

  auto* benchc = app.add_subcommand("bench", "op counts and log-log slope over a size grid");
  benchc->add_option("--subject", o.subjects, "treewidth:<pattern>, p5bar, p6bar, k5-p4, h6, kk-e:<k>, oracle:<pattern>")
      ->required();
  benchc->add_option("--grid", o.grid, "host sizes")->delimiter(',');
  seed_opts.push_back(add_seed(benchc));
  benchc->add_flag("--csv", o.csv, "CSV table");
  add_json(benchc);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    bool seed_given = false;
    for (auto* opt : seed_opts) seed_given = seed_given || opt->count() > 0;
    if (!seed_given) {
      if (const char* env = std::getenv("PATTERNFORGE_SEED")) {
        try {
          std::size_t used = 0;
          o.seed = std::stoull(env, &used);
          if (used != std::string(env).size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
          throw DomainError(std::string("PATTERNFORGE_SEED is not an unsigned integer: ") + env);
        }
      }
    }
    if (detect->parsed()) return cmd_detect(o, out);
    if (count->parsed()) return cmd_count_hom(o, out);
    if (parity->parsed()) return cmd_parity(o, out);
    if (expand->parsed()) return cmd_expand(o, out);
    if (verify->parsed()) return cmd_verify(o, out);
    return cmd_bench(o, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace pf
