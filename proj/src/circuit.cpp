#include "patternforge/circuit.hpp"

#include <sstream>
#include <unordered_set>

namespace pf {

int CircuitDag::push(Gate g) {
  if (gates_.size() >= 0xffffffffu) throw CapabilityError("circuit too large");
  gates_.push_back(g);
  return static_cast<int>(gates_.size() - 1);
}

int CircuitDag::input(Var v) {
  auto it = input_ids_.find(v.code());
  if (it != input_ids_.end()) return it->second;
  int id = push(Gate{GateKind::Input, 0, 0, v.code()});
  input_ids_.emplace(v.code(), id);
  input_order_.push_back(v);
  return id;
}

int CircuitDag::constant(const BigInt& c) {
  std::string key = c.str();
  auto it = const_ids_.find(key);
  if (it != const_ids_.end()) return it->second;
  consts_.push_back(c);
  int id = push(Gate{GateKind::Const, 0, 0, consts_.size() - 1});
  const_ids_.emplace(std::move(key), id);
  return id;
}

bool CircuitDag::is_const(int g, long long v) const {
  const Gate& gate = gates_.at(g);
  return gate.kind == GateKind::Const && consts_[gate.payload] == v;
}

int CircuitDag::add(int a, int b) {
  const Gate& ga = gates_.at(a);
  const Gate& gb = gates_.at(b);
  if (ga.kind == GateKind::Const && gb.kind == GateKind::Const)
    return constant(consts_[ga.payload] + consts_[gb.payload]);
  if (is_const(a, 0)) return b;
  if (is_const(b, 0)) return a;
  return push(Gate{GateKind::Add, static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b), 0});
}

int CircuitDag::mul(int a, int b) {
  const Gate& ga = gates_.at(a);
  const Gate& gb = gates_.at(b);
  if (ga.kind == GateKind::Const && gb.kind == GateKind::Const)
    return constant(consts_[ga.payload] * consts_[gb.payload]);
  if (is_const(a, 0) || is_const(b, 0)) return zero();
  if (is_const(a, 1)) return b;
  if (is_const(b, 1)) return a;
  return push(Gate{GateKind::Mul, static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b), 0});
}

int CircuitDag::sub(int a, int b) { return add(a, mul(constant(-1), b)); }

int CircuitDag::sum(const std::vector<int>& xs) {
  if (xs.empty()) return zero();
  int acc = xs[0];
  for (std::size_t i = 1; i < xs.size(); ++i) acc = add(acc, xs[i]);
  return acc;
}

int CircuitDag::product(const std::vector<int>& xs) {
  if (xs.empty()) return one();
  int acc = xs[0];
  for (std::size_t i = 1; i < xs.size(); ++i) acc = mul(acc, xs[i]);
  return acc;
}

int CircuitDag::from_poly(const Poly& p) {
  std::vector<int> terms;
  for (const auto& [m, c] : p.sorted_terms()) {
    std::vector<int> factors{constant(c)};
    for (auto e : m)
      for (unsigned i = 0; i < mono_exp(e); ++i) factors.push_back(input(mono_var(e)));
    terms.push_back(product(factors));
  }
  return sum(terms);
}

void CircuitDag::set_output(int g) {
  if (g < 0 || static_cast<std::size_t>(g) >= gates_.size()) throw DomainError("output gate out of range");
  output_ = g;
}

std::vector<Var> CircuitDag::inputs() const { return input_order_; }

std::size_t CircuitDag::add_count() const {
  std::size_t c = 0;
  for (const auto& g : gates_) c += g.kind == GateKind::Add;
  return c;
}

std::size_t CircuitDag::mul_count() const {
  std::size_t c = 0;
  for (const auto& g : gates_) c += g.kind == GateKind::Mul;
  return c;
}

std::string CircuitDag::to_text() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < gates_.size(); ++i) {
    const Gate& g = gates_[i];
    os << 'g' << i << " = ";
    switch (g.kind) {
      case GateKind::Input: os << "in " << Var::from_code(g.payload).str(); break;
      case GateKind::Const: os << "const " << consts_[g.payload]; break;
      case GateKind::Add: os << "add g" << g.a << " g" << g.b; break;
      case GateKind::Mul: os << "mul g" << g.a << " g" << g.b; break;
    }
    os << '\n';
  }
  if (output_ >= 0) os << "out g" << output_ << '\n';
  return os.str();
}

namespace {

std::size_t gate_ref(const std::string& tok, long lineno) {
  if (tok.size() < 2 || tok[0] != 'g') throw ParseError("circuit: expected gate reference, got '" + tok + "'", lineno);
  for (std::size_t i = 1; i < tok.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(tok[i])))
      throw ParseError("circuit: bad gate reference '" + tok + "'", lineno);
  return std::stoull(tok.substr(1));
}

}  // namespace

// Gates are re-created through the folding constructors, so ids in the
// text are remapped; a text produced by to_text round-trips exactly.
CircuitDag CircuitDag::parse(const std::string& text) {
  CircuitDag c;
  std::vector<int> ids;
  std::istringstream in(text);
  std::string line;
  long lineno = 0;
  bool have_out = false;
  auto ref = [&](const std::string& tok) {
    std::size_t r = gate_ref(tok, lineno);
    if (r >= ids.size()) throw ParseError("circuit: forward or unknown gate reference '" + tok + "'", lineno);
    return ids[r];
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty() || tok[0][0] == '#') continue;
    if (tok[0] == "out") {
      if (tok.size() != 2) throw ParseError("circuit: malformed out line", lineno);
      c.set_output(ref(tok[1]));
      have_out = true;
      continue;
    }
    if (tok.size() < 3 || tok[1] != "=") throw ParseError("circuit: malformed gate line", lineno);
    if (gate_ref(tok[0], lineno) != ids.size()) throw ParseError("circuit: gates must be numbered consecutively", lineno);
    const std::string& op = tok[2];
    int id;
    if (op == "in" && tok.size() == 4) {
      id = c.input(parse_var(tok[3], lineno));
    } else if (op == "const" && tok.size() == 4) {
      try {
        id = c.constant(BigInt(tok[3]));
      } catch (const std::exception&) {
        throw ParseError("circuit: bad constant '" + tok[3] + "'", lineno);
      }
    } else if ((op == "add" || op == "mul") && tok.size() == 5) {
      int a = ref(tok[3]), b = ref(tok[4]);
      id = op == "add" ? c.add(a, b) : c.mul(a, b);
    } else {
      throw ParseError("circuit: unknown gate '" + line + "'", lineno);
    }
    ids.push_back(id);
  }
  if (!have_out) throw ParseError("circuit: missing out line", lineno);
  return c;
}

CircuitDag compact(const CircuitDag& c) {
  const auto& gates = c.gates();
  if (c.output() < 0) return CircuitDag();
  std::vector<char> live(gates.size(), 0);
  live[c.output()] = 1;
  for (std::size_t i = gates.size(); i-- > 0;)
    if (live[i] && (gates[i].kind == GateKind::Add || gates[i].kind == GateKind::Mul)) live[gates[i].a] = live[gates[i].b] = 1;
  CircuitDag out;
  std::vector<int> map(gates.size(), -1);
  for (std::size_t i = 0; i < gates.size(); ++i) {
    if (!live[i]) continue;
    const Gate& g = gates[i];
    switch (g.kind) {
      case GateKind::Input: map[i] = out.input(Var::from_code(g.payload)); break;
      case GateKind::Const: map[i] = out.constant(c.constant_value(g)); break;
      case GateKind::Add: map[i] = out.add(map[g.a], map[g.b]); break;
      case GateKind::Mul: map[i] = out.mul(map[g.a], map[g.b]); break;
    }
  }
  out.set_output(map[c.output()]);
  return out;
}

CircuitDag substitute(const CircuitDag& c, const std::function<std::optional<Poly>(Var)>& image) {
  CircuitDag out;
  const auto& gates = c.gates();
  std::vector<int> map(gates.size(), -1);
  std::unordered_map<std::uint64_t, int> images;
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const Gate& g = gates[i];
    switch (g.kind) {
      case GateKind::Input: {
        auto it = images.find(g.payload);
        if (it == images.end()) {
          Var v = Var::from_code(g.payload);
          auto img = image(v);
          if (!img) throw DomainError("substitution leaves variable " + v.str() + " unmapped");
          it = images.emplace(g.payload, out.from_poly(*img)).first;
        }
        map[i] = it->second;
        break;
      }
      case GateKind::Const: map[i] = out.constant(c.constant_value(g)); break;
      case GateKind::Add: map[i] = out.add(map[g.a], map[g.b]); break;
      case GateKind::Mul: map[i] = out.mul(map[g.a], map[g.b]); break;
    }
  }
  if (c.output() >= 0) out.set_output(map[c.output()]);
  return compact(out);
}

CircuitDag differentiate(const CircuitDag& c, Var v) {
  CircuitDag out;
  const auto& gates = c.gates();
  std::vector<int> val(gates.size()), der(gates.size());
  const int zero = out.zero();
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const Gate& g = gates[i];
    switch (g.kind) {
      case GateKind::Input:
        val[i] = out.input(Var::from_code(g.payload));
        der[i] = g.payload == v.code() ? out.one() : zero;
        break;
      case GateKind::Const:
        val[i] = out.constant(c.constant_value(g));
        der[i] = zero;
        break;
      case GateKind::Add:
        val[i] = out.add(val[g.a], val[g.b]);
        der[i] = out.add(der[g.a], der[g.b]);
        break;
      case GateKind::Mul:
        val[i] = out.mul(val[g.a], val[g.b]);
        der[i] = out.add(out.mul(der[g.a], val[g.b]), out.mul(val[g.a], der[g.b]));
        break;
    }
  }
  if (c.output() >= 0) out.set_output(der[c.output()]);
  return compact(out);
}

}  // namespace pf
