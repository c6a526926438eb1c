#include "patternforge/poly.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace pf {

Var Var::make(VarKind k, std::uint64_t a, std::uint64_t b) {
  if (a >= kIndexLimit || b >= kIndexLimit) throw DomainError("variable index exceeds 2^26");
  Var r;
  r.code_ = (static_cast<std::uint64_t>(k) << 52) | (a << 26) | b;
  return r;
}

Var Var::x(std::uint64_t u, std::uint64_t v) {
  if (u == v) throw DomainError("edge variable needs distinct endpoints");
  return u < v ? make(VarKind::X, u, v) : make(VarKind::X, v, u);
}

std::string Var::str() const {
  auto a = std::to_string(first()), b = std::to_string(second());
  switch (kind()) {
    case VarKind::Y: return "y" + a;
    case VarKind::X: return "x{" + a + "," + b + "}";
    case VarKind::Z: return "z{" + a + "," + b + "}";
    case VarKind::U: return "u" + a;
    case VarKind::V: return "v" + a;
    case VarKind::W: return "z" + a;
    case VarKind::A: return "a" + a;
  }
  return "?";
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && (a[i] >> 8) < (b[j] >> 8))) {
      out.push_back(a[i++]);
    } else if (i == a.size() || (b[j] >> 8) < (a[i] >> 8)) {
      out.push_back(b[j++]);
    } else {
      unsigned e = mono_exp(a[i]) + mono_exp(b[j]);
      if (e > 255) throw DomainError("monomial exponent overflow");
      out.push_back(((a[i] >> 8) << 8) | e);
      ++i;
      ++j;
    }
  }
  return out;
}

Monomial mono_of(std::initializer_list<Var> vars) {
  Monomial m;
  for (Var v : vars) m = mono_mul(m, Monomial{mono_entry(v, 1)});
  return m;
}

unsigned mono_degree(const Monomial& m) {
  unsigned d = 0;
  for (auto e : m) d += mono_exp(e);
  return d;
}

bool mono_multilinear(const Monomial& m) {
  for (auto e : m)
    if (mono_exp(e) > 1) return false;
  return true;
}

std::string mono_str(const Monomial& m) {
  if (m.empty()) return "1";
  std::string out;
  for (auto e : m) {
    if (!out.empty()) out += ' ';
    out += mono_var(e).str();
    if (mono_exp(e) > 1) out += "^" + std::to_string(mono_exp(e));
  }
  return out;
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ m.size();
  for (auto e : m) {
    h ^= e + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 0xff51afd7ed558ccdULL;
  }
  return static_cast<std::size_t>(h ^ (h >> 33));
}

Poly Poly::constant(const BigInt& c) {
  Poly p;
  p.add_term({}, c);
  return p;
}

Poly Poly::variable(Var v) { return monomial(Monomial{mono_entry(v, 1)}); }

Poly Poly::monomial(const Monomial& m, const BigInt& c) {
  Poly p;
  p.add_term(m, c);
  return p;
}

BigInt Poly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? BigInt(0) : it->second;
}

void Poly::add_term(const Monomial& m, const BigInt& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

unsigned Poly::degree() const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, mono_degree(m));
  return d;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  r += o;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly Poly::operator-(const Poly& o) const {
  Poly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  Poly r;
  if (terms_.empty() || o.terms_.empty()) return r;
  r.terms_.reserve(terms_.size() * o.terms_.size());
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) r.add_term(mono_mul(ma, mb), ca * cb);
  return r;
}

Poly Poly::scaled(const BigInt& c) const {
  Poly r;
  if (c.is_zero()) return r;
  for (const auto& [m, v] : terms_) r.terms_.emplace(m, v * c);
  return r;
}

std::vector<std::pair<Monomial, BigInt>> Poly::sorted_terms() const {
  std::vector<std::pair<Monomial, BigInt>> out(terms_.begin(), terms_.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

std::string Poly::to_text() const {
  if (terms_.empty()) return "0\n";
  std::string out;
  for (const auto& [m, c] : sorted_terms()) out += c.str() + " * " + mono_str(m) + "\n";
  return out;
}

namespace {

std::uint64_t parse_index(const std::string& s, std::size_t& pos, const std::string& line, long lineno) {
  std::size_t start = pos;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
  if (start == pos) throw ParseError("polynomial: expected index in '" + line + "'", lineno);
  return std::stoull(s.substr(start, pos - start));
}

Var parse_var(const std::string& tok, const std::string& line, long lineno, unsigned& exp) {
  std::size_t pos = 1;
  auto pair = [&](auto make) {
    if (pos >= tok.size() || tok[pos] != '{') throw ParseError("polynomial: bad token '" + tok + "'", lineno);
    ++pos;
    auto a = parse_index(tok, pos, line, lineno);
    if (pos >= tok.size() || tok[pos] != ',') throw ParseError("polynomial: bad token '" + tok + "'", lineno);
    ++pos;
    auto b = parse_index(tok, pos, line, lineno);
    if (pos >= tok.size() || tok[pos] != '}') throw ParseError("polynomial: bad token '" + tok + "'", lineno);
    ++pos;
    return make(a, b);
  };
  if (tok.empty()) throw ParseError("polynomial: empty token", lineno);
  Var v;
  switch (tok[0]) {
    case 'y': v = Var::y(parse_index(tok, pos, line, lineno)); break;
    case 'u': v = Var::u(parse_index(tok, pos, line, lineno)); break;
    case 'v': v = Var::v(parse_index(tok, pos, line, lineno)); break;
    case 'a': v = Var::a(parse_index(tok, pos, line, lineno)); break;
    case 'x': v = pair([](auto a, auto b) { return Var::x(a, b); }); break;
    case 'z':
      if (tok.size() > 1 && tok[1] == '{')
        v = pair([](auto a, auto b) { return Var::z(a, b); });
      else
        v = Var::w(parse_index(tok, pos, line, lineno));
      break;
    default: throw ParseError("polynomial: unknown variable '" + tok + "'", lineno);
  }
  exp = 1;
  if (pos < tok.size()) {
    if (tok[pos] != '^') throw ParseError("polynomial: bad token '" + tok + "'", lineno);
    ++pos;
    exp = static_cast<unsigned>(parse_index(tok, pos, line, lineno));
    if (exp == 0 || exp > 255) throw ParseError("polynomial: bad exponent in '" + tok + "'", lineno);
  }
  if (pos != tok.size()) throw ParseError("polynomial: bad token '" + tok + "'", lineno);
  return v;
}

}  // namespace

Var parse_var(const std::string& token, long position) {
  unsigned e = 1;
  Var v = parse_var(token, token, position, e);
  if (e != 1) throw ParseError("variable token carries an exponent: '" + token + "'", position);
  return v;
}

Poly Poly::parse(const std::string& text) {
  Poly p;
  std::istringstream in(text);
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string coef;
    if (!(ls >> coef)) continue;
    if (coef == "0") {
      std::string rest;
      if (ls >> rest) throw ParseError("polynomial: zero coefficient term", lineno);
      continue;
    }
    BigInt c;
    try {
      c = BigInt(coef);
    } catch (...) {
      throw ParseError("polynomial: bad coefficient '" + coef + "'", lineno);
    }
    std::string star;
    if (!(ls >> star) || star != "*") throw ParseError("polynomial: expected '*'", lineno);
    Monomial m;
    std::string tok;
    bool any = false;
    while (ls >> tok) {
      any = true;
      if (tok == "1") continue;
      unsigned e;
      Var v = parse_var(tok, line, lineno, e);
      m = mono_mul(m, Monomial{mono_entry(v, e)});
    }
    if (!any) throw ParseError("polynomial: missing monomial", lineno);
    p.add_term(m, c);
  }
  return p;
}

Poly Poly::mod(std::uint64_t p) const {
  Poly r;
  for (const auto& [m, c] : terms_) {
    BigInt v = c % p;
    if (v < 0) v += p;
    r.add_term(m, v);
  }
  return r;
}

Poly Poly::substitute(const std::function<std::optional<Poly>(Var)>& image) const {
  std::map<std::uint64_t, std::optional<Poly>> cache;
  auto get = [&](Var v) -> const std::optional<Poly>& {
    auto it = cache.find(v.code());
    if (it == cache.end()) it = cache.emplace(v.code(), image(v)).first;
    return it->second;
  };
  Poly out;
  for (const auto& [m, c] : terms_) {
    Poly term = Poly::constant(c);
    Monomial kept;
    for (auto e : m) {
      Var v = mono_var(e);
      const auto& img = get(v);
      if (!img) {
        kept.push_back(e);
        continue;
      }
      for (unsigned i = 0; i < mono_exp(e) && !term.is_zero(); ++i) term = term * *img;
      if (term.is_zero()) break;
    }
    if (term.is_zero()) continue;
    if (!kept.empty()) term = term * Poly::monomial(kept);
    out += term;
  }
  return out;
}

std::vector<Var> Poly::variables() const {
  std::vector<std::uint64_t> codes;
  for (const auto& [m, c] : terms_)
    for (auto e : m) codes.push_back(e >> 8);
  std::sort(codes.begin(), codes.end());
  codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
  std::vector<Var> out;
  for (auto c : codes) out.push_back(Var::from_code(c));
  return out;
}

Poly ml_part(const Poly& f) {
  Poly r;
  for (const auto& [m, c] : f.terms())
    if (mono_multilinear(m)) r.add_term(m, c);
  return r;
}

}  // namespace pf
