#include "patternforge/graph.hpp"

#include <algorithm>
#include <sstream>

#include "patternforge/errors.hpp"
#include "patternforge/rng.hpp"

namespace pf {

Graph::Graph(int n) : n_(n), adj_(n < 0 ? 0 : n) {
  if (n < 0) throw DomainError("negative vertex count");
}

Graph::Graph(int n, const std::vector<Edge>& edges) : Graph(n) {
  for (auto [u, v] : edges) add_edge(u, v);
}

bool Graph::has_edge(int u, int v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_ || u == v) return false;
  const auto& a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
  int other = adj_[u].size() <= adj_[v].size() ? v : u;
  return std::binary_search(a.begin(), a.end(), other);
}

void Graph::add_edge(int u, int v) {
  if (u == v) throw DomainError("self-loop on vertex " + std::to_string(u));
  if (u < 0 || v < 0 || u >= n_ || v >= n_)
    throw DomainError("edge endpoint out of range: " + std::to_string(u) + " " + std::to_string(v));
  if (has_edge(u, v)) throw DomainError("duplicate edge " + std::to_string(u) + " " + std::to_string(v));
  adj_[u].insert(std::lower_bound(adj_[u].begin(), adj_[u].end(), v), v);
  adj_[v].insert(std::lower_bound(adj_[v].begin(), adj_[v].end(), u), u);
  ++m_;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(m_);
  for (int u = 0; u < n_; ++u)
    for (int v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

bool Graph::operator==(const Graph& o) const { return n_ == o.n_ && adj_ == o.adj_; }

std::string Graph::to_string() const {
  std::ostringstream os;
  os << "n=" << n_ << " {";
  bool first = true;
  for (auto [u, v] : edges()) {
    os << (first ? "" : ",") << u << "-" << v;
    first = false;
  }
  os << "}";
  return os.str();
}

Graph complement(const Graph& g) {
  Graph h(g.n());
  for (int u = 0; u < g.n(); ++u)
    for (int v = u + 1; v < g.n(); ++v)
      if (!g.has_edge(u, v)) h.add_edge(u, v);
  return h;
}

Graph relabel(const Graph& g, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != g.n()) throw DomainError("relabel: permutation size mismatch");
  Graph h(g.n());
  for (auto [u, v] : g.edges()) h.add_edge(perm[u], perm[v]);
  return h;
}

Graph induced_subgraph(const Graph& g, const std::vector<int>& vertices) {
  Graph h(static_cast<int>(vertices.size()));
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j)
      if (g.has_edge(vertices[i], vertices[j])) h.add_edge(static_cast<int>(i), static_cast<int>(j));
  return h;
}

std::vector<std::uint64_t> adjacency_masks(const Graph& g) {
  if (g.n() > 64) throw CapabilityError("adjacency masks need n <= 64");
  std::vector<std::uint64_t> m(g.n(), 0);
  for (auto [u, v] : g.edges()) {
    m[u] |= std::uint64_t{1} << v;
    m[v] |= std::uint64_t{1} << u;
  }
  return m;
}

namespace {

// graph6 size header; returns n and advances pos.
long read_g6_size(const std::string& s, std::size_t& pos) {
  auto byte = [&](std::size_t i) -> int {
    if (i >= s.size()) throw ParseError("graph6: truncated header", static_cast<long>(i));
    int c = static_cast<unsigned char>(s[i]);
    if (c < 63 || c > 126) throw ParseError("graph6: non-printable or invalid character", static_cast<long>(i));
    return c - 63;
  };
  if (pos >= s.size()) throw ParseError("graph6: empty input", 0);
  if (s[pos] != '~') return byte(pos++);
  if (pos + 1 < s.size() && s[pos + 1] == '~') {
    long n = 0;
    for (int i = 0; i < 6; ++i) n = (n << 6) | byte(pos + 2 + i);
    pos += 8;
    return n;
  }
  long n = 0;
  for (int i = 0; i < 3; ++i) n = (n << 6) | byte(pos + 1 + i);
  pos += 4;
  return n;
}

}  // namespace

Graph parse_graph6(const std::string& raw) {
  std::string s = raw;
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
  std::size_t pos = 0;
  if (s.rfind(">>graph6<<", 0) == 0) pos = 10;
  long n = read_g6_size(s, pos);
  if (n > 200000) throw CapabilityError("graph6: vertex count too large");
  const std::size_t bits = static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1 < 0 ? 0 : n - 1) / 2;
  const std::size_t chars = (bits + 5) / 6;
  if (s.size() - pos < chars) throw ParseError("graph6: payload too short", static_cast<long>(s.size()));
  if (s.size() - pos > chars) throw ParseError("graph6: trailing garbage", static_cast<long>(pos + chars));
  Graph g(static_cast<int>(n));
  std::size_t bit = 0;
  for (long j = 1; j < n; ++j) {
    for (long i = 0; i < j; ++i, ++bit) {
      std::size_t at = pos + bit / 6;
      int c = static_cast<unsigned char>(s[at]);
      if (c < 63 || c > 126) throw ParseError("graph6: non-printable or invalid character", static_cast<long>(at));
      if (((c - 63) >> (5 - bit % 6)) & 1) g.add_edge(static_cast<int>(i), static_cast<int>(j));
    }
  }
  // padding bits must be zero
  for (std::size_t at = pos; at < pos + chars; ++at) {
    int c = static_cast<unsigned char>(s[at]);
    if (c < 63 || c > 126) throw ParseError("graph6: non-printable or invalid character", static_cast<long>(at));
  }
  if (bits % 6 != 0) {
    int c = static_cast<unsigned char>(s[pos + chars - 1]) - 63;
    if (c & ((1 << (6 - bits % 6)) - 1)) throw ParseError("graph6: nonzero padding bits", static_cast<long>(pos + chars - 1));
  }
  return g;
}

std::string to_graph6(const Graph& g) {
  std::string out;
  long n = g.n();
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else if (n <= 258047) {
    out.push_back('~');
    for (int i = 2; i >= 0; --i) out.push_back(static_cast<char>(((n >> (6 * i)) & 63) + 63));
  } else {
    out += "~~";
    for (int i = 5; i >= 0; --i) out.push_back(static_cast<char>(((n >> (6 * i)) & 63) + 63));
  }
  int acc = 0, used = 0;
  for (long j = 1; j < n; ++j)
    for (long i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.has_edge(static_cast<int>(i), static_cast<int>(j)) ? 1 : 0);
      if (++used == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = used = 0;
      }
    }
  if (used) out.push_back(static_cast<char>((acc << (6 - used)) + 63));
  return out;
}

Graph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  long lineno = 0;
  int n = -1;
  Graph g;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (n < 0) {
      long count;
      std::string extra;
      if (first != "n" || !(ls >> count) || (ls >> extra)) throw ParseError("edge list: expected header 'n <count>'", lineno);
      if (count < 0 || count > 10000000) throw ParseError("edge list: bad vertex count", lineno);
      n = static_cast<int>(count);
      g = Graph(n);
      continue;
    }
    long u, v;
    std::string extra;
    std::istringstream ps(line);
    if (!(ps >> u >> v) || (ps >> extra)) throw ParseError("edge list: expected 'u v'", lineno);
    if (u == v) throw ParseError("edge list: self-loop", lineno);
    if (u < 0 || v < 0 || u >= n || v >= n) throw ParseError("edge list: endpoint out of range", lineno);
    if (g.has_edge(static_cast<int>(u), static_cast<int>(v))) throw ParseError("edge list: duplicate edge", lineno);
    g.add_edge(static_cast<int>(u), static_cast<int>(v));
  }
  if (n < 0) throw ParseError("edge list: missing header", lineno);
  return g;
}

std::string to_edge_list(const Graph& g) {
  std::ostringstream os;
  os << "n " << g.n() << "\n";
  for (auto [u, v] : g.edges()) os << u << " " << v << "\n";
  return os.str();
}

Graph random_graph(int n, double p, std::uint64_t seed) {
  Rng rng(derive_seed(seed, 0x6e7021ULL));
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (uniform_unit(rng) < p) g.add_edge(u, v);
  return g;
}

}  // namespace pf
