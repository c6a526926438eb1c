#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "patternforge/rings.hpp"

namespace pf {

enum class VarKind : std::uint8_t {
  Y = 0,  // vertex variable y_v
  X = 1,  // edge variable x_{u,v}, u < v
  Z = 2,  // homomorphism variable z_{a,v}
  U = 3,  // auxiliary u_i
  V = 4,  // auxiliary v_i
  W = 5,  // auxiliary z_a left behind by colour-restricting substitutions
  A = 6,  // book-keeping variable a_i of the Hom-extraction construction
};

class Var;
// Parses a single variable token such as y3, x{1,2}, z{2,5}, z3.
Var parse_var(const std::string& token, long position = 0);

// Packed variable: kind (4 bits) | first index (26 bits) | second index (26 bits).
class Var {
 public:
  static constexpr std::uint64_t kIndexLimit = std::uint64_t{1} << 26;

  constexpr Var() = default;
  static Var y(std::uint64_t v) { return make(VarKind::Y, v, 0); }
  static Var x(std::uint64_t u, std::uint64_t v);
  static Var z(std::uint64_t a, std::uint64_t v) { return make(VarKind::Z, a, v); }
  static Var u(std::uint64_t i) { return make(VarKind::U, i, 0); }
  static Var v(std::uint64_t i) { return make(VarKind::V, i, 0); }
  static Var w(std::uint64_t i) { return make(VarKind::W, i, 0); }
  static Var a(std::uint64_t i) { return make(VarKind::A, i, 0); }
  static Var from_code(std::uint64_t code) {
    Var r;
    r.code_ = code;
    return r;
  }

  VarKind kind() const { return static_cast<VarKind>(code_ >> 52); }
  std::uint64_t first() const { return (code_ >> 26) & (kIndexLimit - 1); }
  std::uint64_t second() const { return code_ & (kIndexLimit - 1); }
  std::uint64_t code() const { return code_; }
  bool is_vertex() const { return kind() == VarKind::Y; }
  bool is_edge() const { return kind() == VarKind::X; }
  bool is_hom() const { return kind() == VarKind::Z; }
  // Variables that are neither vertex, edge nor homomorphism variables.
  bool is_other() const { return !is_vertex() && !is_edge() && !is_hom(); }
  std::string str() const;

  auto operator<=>(const Var&) const = default;

 private:
  static Var make(VarKind k, std::uint64_t a, std::uint64_t b);
  std::uint64_t code_ = 0;
};

// Sorted list of (var code << 8 | exponent).
using Monomial = std::vector<std::uint64_t>;

inline Var mono_var(std::uint64_t entry) { return Var::from_code(entry >> 8); }
inline unsigned mono_exp(std::uint64_t entry) { return static_cast<unsigned>(entry & 0xff); }
inline std::uint64_t mono_entry(Var v, unsigned e) { return (v.code() << 8) | e; }

Monomial mono_mul(const Monomial& a, const Monomial& b);
Monomial mono_of(std::initializer_list<Var> vars);
unsigned mono_degree(const Monomial& m);
bool mono_multilinear(const Monomial& m);
std::string mono_str(const Monomial& m);

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

// Sparse polynomial with arbitrary-precision integer coefficients.
class Poly {
 public:
  using Terms = std::unordered_map<Monomial, BigInt, MonomialHash>;

  Poly() = default;
  static Poly constant(const BigInt& c);
  static Poly variable(Var v);
  static Poly monomial(const Monomial& m, const BigInt& c = 1);

  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  // Coefficient of m (0 when absent).
  BigInt coeff(const Monomial& m) const;
  void add_term(const Monomial& m, const BigInt& c);
  unsigned degree() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly scaled(const BigInt& c) const;
  Poly& operator+=(const Poly& o);
  bool operator==(const Poly& o) const { return terms_ == o.terms_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  // Monomials in canonical order.
  std::vector<std::pair<Monomial, BigInt>> sorted_terms() const;
  // One term per line: `coef * y3 x{1,2} z{2,5}`; constant term `c * 1`; zero is `0`.
  std::string to_text() const;
  static Poly parse(const std::string& text);

  // Coefficients reduced into [0, p).
  Poly mod(std::uint64_t p) const;
  // Replaces each variable by image(v) (nullopt keeps it) and re-expands.
  Poly substitute(const std::function<std::optional<Poly>(Var)>& image) const;
  // Evaluates over a ring with the given variable assignment.
  template <class Ring>
  typename Ring::Elem eval(const Ring& ring, const std::function<typename Ring::Elem(Var)>& value) const {
    auto acc = ring.zero();
    for (const auto& [m, c] : terms_) {
      auto t = ring.from_big(c);
      for (auto e : m) {
        auto val = value(mono_var(e));
        for (unsigned i = 0; i < mono_exp(e); ++i) t = ring.mul(t, val);
      }
      acc = ring.add(acc, t);
    }
    return acc;
  }
  std::vector<Var> variables() const;

 private:
  Terms terms_;
};

Poly ml_part(const Poly& f);

class PolyRing {
 public:
  using Elem = Poly;
  Elem zero() const { return {}; }
  Elem one() const { return Poly::constant(1); }
  Elem from_int(long long v) const { return Poly::constant(v); }
  Elem from_big(const BigInt& v) const { return Poly::constant(v); }
  Elem add(const Elem& a, const Elem& b) const {
    ++ops.adds;
    return a + b;
  }
  Elem sub(const Elem& a, const Elem& b) const {
    ++ops.adds;
    return a - b;
  }
  Elem mul(const Elem& a, const Elem& b) const {
    ++ops.muls;
    return a * b;
  }
  bool is_zero(const Elem& a) const { return a.is_zero(); }
  bool equal(const Elem& a, const Elem& b) const { return a == b; }
  std::string str(const Elem& a) const { return a.to_text(); }
  std::string name() const { return "Z[vars]"; }
  mutable OpCounts ops;
};

}  // namespace pf
