#include "patternforge/patterns.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "patternforge/errors.hpp"

namespace pf {

PatternId PatternId::complement_of(const PatternId& p) {
  PatternId id;
  id.family = Family::Complement;
  id.k = p.k;
  id.inner = std::make_shared<const PatternId>(p);
  return id;
}

PatternId PatternId::explicit_graph(const Graph& g) {
  PatternId id;
  id.family = Family::Explicit;
  id.k = g.n();
  id.graph = g;
  return id;
}

std::string PatternId::name() const {
  auto s = std::to_string(k);
  switch (family) {
    case Family::Path: return "P" + s;
    case Family::Cycle: return "C" + s;
    case Family::Clique: return "K" + s;
    case Family::Independent: return "I" + s;
    case Family::CliqueMinusEdge: return "K" + s + "-e";
    case Family::CliqueMinusPath: return "K" + s + "-P" + std::to_string(k - 1);
    case Family::H3k: return "H" + s;
    case Family::Complement: return "co:" + inner->name();
    case Family::Explicit: return "g6:" + to_graph6(graph);
  }
  return "?";
}

static bool is_pow2(int x) { return x > 0 && (x & (x - 1)) == 0; }

void validate(const PatternId& id) {
  switch (id.family) {
    case Family::Path:
    case Family::Clique:
    case Family::Independent:
      if (id.k < 1) throw DomainError(id.name() + ": k must be >= 1");
      break;
    case Family::Cycle:
      if (id.k < 3) throw DomainError("cycle needs k >= 3");
      break;
    case Family::CliqueMinusEdge:
      if (id.k < 2) throw DomainError("K_k-e needs k >= 2");
      break;
    case Family::CliqueMinusPath:
      if (id.k < 5) throw DomainError("K_k-P_{k-1} needs k >= 5");
      break;
    case Family::H3k:
      if (id.k % 3 != 0 || id.k / 3 < 2 || !is_pow2(id.k / 3))
        throw DomainError("H_3k needs 3k vertices with k a power of two >= 2");
      break;
    case Family::Complement:
      if (!id.inner) throw DomainError("complement without inner pattern");
      validate(*id.inner);
      break;
    case Family::Explicit:
      if (id.graph.n() != id.k) throw DomainError("explicit pattern size mismatch");
      break;
  }
}

static Graph from_one_indexed(int k, std::initializer_list<Edge> edges) {
  Graph g(k);
  for (auto [u, v] : edges) g.add_edge(u - 1, v - 1);
  return g;
}

Graph path_complement_sequential(int k) { return complement(make_pattern(PatternId::path(k))); }

Graph clique_minus_path_sequential(int k) {
  Graph g(k);
  for (int u = 0; u < k; ++u)
    for (int v = u + 1; v < k; ++v)
      if (!(u >= 1 && v == u + 1)) g.add_edge(u, v);
  return g;
}

Graph cycle_complement_sequential(int k) { return complement(make_pattern(PatternId::cycle(k))); }

Graph make_pattern(const PatternId& id) {
  validate(id);
  const int k = id.k;
  Graph g(k);
  switch (id.family) {
    case Family::Path:
      for (int i = 0; i + 1 < k; ++i) g.add_edge(i, i + 1);
      return g;
    case Family::Cycle:
      for (int i = 0; i < k; ++i) g.add_edge(i, (i + 1) % k);
      return g;
    case Family::Clique:
      for (int u = 0; u < k; ++u)
        for (int v = u + 1; v < k; ++v) g.add_edge(u, v);
      return g;
    case Family::Independent:
      return g;
    case Family::CliqueMinusEdge:
      for (int u = 0; u < k; ++u)
        for (int v = u + 1; v < k; ++v)
          if (!(u == 0 && v == k - 1)) g.add_edge(u, v);
      return g;
    case Family::CliqueMinusPath:
      if (k == 5) return from_one_indexed(5, {{1, 2}, {1, 3}, {2, 3}, {1, 4}, {3, 4}, {2, 5}, {3, 5}});
      return clique_minus_path_sequential(k);
    case Family::H3k: {
      const int t = k / 3;
      for (int u = 0; u < k - 1; ++u)
        for (int v = u + 1; v < k - 1; ++v) g.add_edge(u, v);
      for (int u = 0; u < 2 * t - 1; ++u) g.add_edge(u, k - 1);
      return g;
    }
    case Family::Complement:
      if (id.inner->family == Family::Path && k == 5)
        return from_one_indexed(5, {{1, 2}, {1, 4}, {1, 3}, {2, 3}, {2, 5}, {4, 5}});
      if (id.inner->family == Family::Path && k == 6)
        return from_one_indexed(
            6, {{1, 6}, {1, 5}, {1, 4}, {1, 3}, {2, 4}, {2, 5}, {2, 6}, {3, 5}, {3, 6}, {4, 6}});
      return complement(make_pattern(*id.inner));
    case Family::Explicit:
      return id.graph;
  }
  return g;
}

static std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

static bool ends_with(const std::string& s, const std::string& suf) {
  return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

PatternId parse_pattern_spec(const std::string& spec) {
  auto bad = [&]() -> DomainError { return DomainError("unrecognised pattern spec: '" + spec + "'"); };
  auto number = [&](const std::string& s) {
    if (s.empty() || s.size() > 4) throw bad();
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) throw bad();
    return std::stoi(s);
  };
  PatternId id;
  if (spec.rfind("co:", 0) == 0) {
    id = PatternId::complement_of(parse_pattern_spec(spec.substr(3)));
  } else if (spec.rfind("g6:", 0) == 0) {
    id = PatternId::explicit_graph(parse_graph6(spec.substr(3)));
  } else if (spec.rfind("file:", 0) == 0) {
    std::string path = spec.substr(5);
    std::string text = read_file(path);
    if (ends_with(path, ".edges") || ends_with(path, ".txt"))
      id = PatternId::explicit_graph(parse_edge_list(text));
    else
      id = PatternId::explicit_graph(parse_graph6(text));
  } else if (spec.rfind("Kk-e:", 0) == 0) {
    id = PatternId::clique_minus_edge(number(spec.substr(5)));
  } else if (spec.rfind("Kk-P:", 0) == 0) {
    id = PatternId::clique_minus_path(number(spec.substr(5)));
  } else if (spec.size() >= 2) {
    char f = spec[0];
    std::string rest = spec.substr(1);
    if (f == 'K') {
      auto dash = rest.find('-');
      if (dash == std::string::npos) {
        id = PatternId::clique(number(rest));
      } else {
        int k = number(rest.substr(0, dash));
        std::string tail = rest.substr(dash + 1);
        if (tail == "e")
          id = PatternId::clique_minus_edge(k);
        else if (tail == "P" + std::to_string(k - 1))
          id = PatternId::clique_minus_path(k);
        else
          throw bad();
      }
    } else if (f == 'P') {
      id = PatternId::path(number(rest));
    } else if (f == 'C') {
      id = PatternId::cycle(number(rest));
    } else if (f == 'I') {
      id = PatternId::independent(number(rest));
    } else if (f == 'H') {
      id = PatternId::h3k(number(rest));
    } else {
      throw bad();
    }
  } else {
    throw bad();
  }
  validate(id);
  return id;
}

}  // namespace pf
