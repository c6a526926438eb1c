#include "patternforge/evaluable.hpp"

#include <sstream>

namespace pf {

std::vector<Var> inputs_of(const Evaluable& c) {
  return std::visit([](const auto& e) { return std::vector<Var>(e.inputs()); }, c);
}

Poly to_sparse_poly(const Evaluable& c, std::size_t guard_inputs) {
  auto in = inputs_of(c);
  if (in.size() > guard_inputs)
    throw GuardError("symbolic expansion guard: circuit has " + std::to_string(in.size()) + " inputs");
  PolyRing ring;
  std::vector<Poly> vals;
  vals.reserve(in.size());
  for (Var v : in) vals.push_back(Poly::variable(v));
  return eval(c, ring, vals);
}

OpReport op_count(const Evaluable& c) {
  if (auto* p = std::get_if<MatrixProgram>(&c)) return p->op_count();
  const auto& d = std::get<CircuitDag>(c);
  OpReport r;
  r.total.adds = d.add_count();
  r.total.muls = d.mul_count();
  r.stages.push_back({"dag", r.total});
  return r;
}

std::string to_text(const Evaluable& c) {
  return std::visit([](const auto& e) { return e.to_text(); }, c);
}

Evaluable parse_evaluable(const std::string& text) {
  std::istringstream in(text);
  std::string first;
  in >> first;
  if (first == "program") return MatrixProgram::parse(text);
  return CircuitDag::parse(text);
}

}  // namespace pf
