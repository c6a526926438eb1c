#pragma once

#include <variant>

#include "patternforge/circuit.hpp"
#include "patternforge/program.hpp"

namespace pf {

using Evaluable = std::variant<CircuitDag, MatrixProgram>;

std::vector<Var> inputs_of(const Evaluable& c);

template <class Ring>
typename Ring::Elem eval(const Evaluable& c, const Ring& ring, const std::vector<typename Ring::Elem>& values) {
  return std::visit([&](const auto& e) { return e.eval(ring, values); }, c);
}

// Looks up every input through value; an unassigned input is an error the
// callback reports by throwing.
template <class Ring>
typename Ring::Elem eval_with(const Evaluable& c, const Ring& ring,
                              const std::function<typename Ring::Elem(Var)>& value) {
  std::vector<typename Ring::Elem> vals;
  for (Var v : inputs_of(c)) vals.push_back(value(v));
  return eval(c, ring, vals);
}

// Exact polynomial computed by c. Throws GuardError when the circuit has
// more than guard_inputs inputs.
Poly to_sparse_poly(const Evaluable& c, std::size_t guard_inputs = 4096);

// Adds/muls; per stage for matrix programs, a single stage for DAGs.
OpReport op_count(const Evaluable& c);

std::string to_text(const Evaluable& c);
// Dispatches on the leading "program" header.
Evaluable parse_evaluable(const std::string& text);

}  // namespace pf
