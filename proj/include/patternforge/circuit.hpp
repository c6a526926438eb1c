#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "patternforge/poly.hpp"

namespace pf {

enum class GateKind : std::uint8_t { Input, Const, Add, Mul };

struct Gate {
  GateKind kind = GateKind::Const;
  std::uint32_t a = 0;        // Add/Mul operands
  std::uint32_t b = 0;
  std::uint64_t payload = 0;  // Input: var code; Const: index into constant table
};

// Arithmetic circuit in topological order. Construction folds constants and
// shares identical inputs and constants.
class CircuitDag {
 public:
  int input(Var v);
  int constant(const BigInt& c);
  int zero() { return constant(0); }
  int one() { return constant(1); }
  int add(int a, int b);
  int mul(int a, int b);
  int sub(int a, int b);
  int sum(const std::vector<int>& xs);
  int product(const std::vector<int>& xs);
  // Circuit for a small polynomial (used for substitution images).
  int from_poly(const Poly& p);
  void set_output(int g);

  int output() const { return output_; }
  const std::vector<Gate>& gates() const { return gates_; }
  const BigInt& constant_value(const Gate& g) const { return consts_[g.payload]; }
  bool is_const(int g, long long v) const;
  // Distinct input variables, ordered by first appearance.
  std::vector<Var> inputs() const;
  std::size_t add_count() const;
  std::size_t mul_count() const;
  // Number of wires: two per binary gate.
  std::size_t size() const { return 2 * (add_count() + mul_count()); }

  // Evaluates with values aligned to inputs(). Intermediate values are
  // released once their last consumer has run.
  template <class Ring>
  typename Ring::Elem eval(const Ring& ring, const std::vector<typename Ring::Elem>& values) const;
  template <class Ring>
  typename Ring::Elem eval_fn(const Ring& ring, const std::function<typename Ring::Elem(Var)>& value) const {
    std::vector<typename Ring::Elem> vals;
    for (Var v : inputs()) vals.push_back(value(v));
    return eval(ring, vals);
  }

  std::string to_text() const;
  static CircuitDag parse(const std::string& text);

 private:
  int push(Gate g);
  std::vector<Gate> gates_;
  std::vector<BigInt> consts_;
  std::unordered_map<std::uint64_t, int> input_ids_;
  std::unordered_map<std::string, int> const_ids_;
  std::vector<Var> input_order_;
  int output_ = -1;
};

// Copy without gates unreachable from the output. Inputs that become dead
// are dropped as well.
CircuitDag compact(const CircuitDag& c);
// Replaces every input variable by its polynomial image; a nullopt image is
// an error. Images should be small polynomials.
CircuitDag substitute(const CircuitDag& c, const std::function<std::optional<Poly>(Var)>& image);
// Forward-mode derivative with respect to v.
CircuitDag differentiate(const CircuitDag& c, Var v);

template <class Ring>
typename Ring::Elem CircuitDag::eval(const Ring& ring, const std::vector<typename Ring::Elem>& values) const {
  using Elem = typename Ring::Elem;
  if (output_ < 0) throw DomainError("circuit has no output");
  if (values.size() != input_order_.size()) throw DomainError("assignment size does not match circuit inputs");
  const std::size_t n = gates_.size();
  std::vector<std::uint32_t> uses(n, 0);
  ++uses[output_];
  for (std::size_t i = n; i-- > 0;) {
    const Gate& g = gates_[i];
    if (uses[i] && (g.kind == GateKind::Add || g.kind == GateKind::Mul)) {
      ++uses[g.a];
      ++uses[g.b];
    }
  }
  std::unordered_map<std::uint64_t, std::size_t> slot;
  for (std::size_t i = 0; i < input_order_.size(); ++i) slot.emplace(input_order_[i].code(), i);
  std::vector<std::optional<Elem>> val(n);
  auto release = [&](std::uint32_t i) {
    if (--uses[i] == 0) val[i].reset();
  };
  for (std::size_t i = 0; i < n; ++i) {
    const Gate& g = gates_[i];
    if (uses[i] == 0) continue;
    switch (g.kind) {
      case GateKind::Input: val[i] = values[slot.at(g.payload)]; break;
      case GateKind::Const: val[i] = ring.from_big(consts_[g.payload]); break;
      case GateKind::Add:
        val[i] = ring.add(*val[g.a], *val[g.b]);
        release(g.a);
        release(g.b);
        break;
      case GateKind::Mul:
        val[i] = ring.mul(*val[g.a], *val[g.b]);
        release(g.a);
        release(g.b);
        break;
    }
  }
  return *val[output_];
}

}  // namespace pf
