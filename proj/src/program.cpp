#include "patternforge/program.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace pf {

int MatrixProgram::input(Var v) {
  auto it = input_ids_.find(v.code());
  if (it != input_ids_.end()) return it->second;
  int id = static_cast<int>(inputs_.size());
  inputs_.push_back(v);
  input_ids_.emplace(v.code(), id);
  return id;
}

void MatrixProgram::define(DefineMatrix m) { stmts_.emplace_back(std::move(m)); }

void MatrixProgram::multiply(const std::string& target, const std::string& left, const std::string& right) {
  stmts_.emplace_back(MatMul{target, left, right});
}

void MatrixProgram::bind(int family, const std::string& source) {
  if (source.empty()) throw DomainError("binding needs a source matrix name");
  EntrySubstitute s;
  s.family = family;
  s.source = source;
  stmts_.emplace_back(std::move(s));
}

void MatrixProgram::bind_table(int family, int rows, int cols, std::vector<SparseEntry> table) {
  EntrySubstitute s;
  s.family = family;
  s.rows = rows;
  s.cols = cols;
  s.table = std::move(table);
  stmts_.emplace_back(std::move(s));
}

void MatrixProgram::add_output(OutputTerm t) { output_.push_back(std::move(t)); }

std::vector<int> MatrixProgram::bound_families() const {
  std::vector<int> out;
  for (const auto& st : stmts_)
    if (auto* s = std::get_if<EntrySubstitute>(&st)) out.push_back(s->family);
  return out;
}

std::map<std::string, MatrixProgram::Shape> MatrixProgram::shapes() const {
  std::map<std::string, Shape> out;
  for (const auto& st : stmts_) {
    if (auto* d = std::get_if<DefineMatrix>(&st)) {
      out[d->name] = {d->rows, d->cols, d->diagonal};
    } else if (auto* m = std::get_if<MatMul>(&st)) {
      auto a = out.find(m->left), b = out.find(m->right);
      if (a == out.end() || b == out.end()) throw DomainError("product of unknown matrix in " + m->target);
      out[m->target] = {a->second.rows, b->second.cols, a->second.diagonal && b->second.diagonal};
    }
  }
  return out;
}

void MatrixProgram::validate() const {
  std::map<std::string, Shape> shape;
  std::map<int, Shape> bound;
  std::map<int, int> consumers;
  auto fail = [](const std::string& msg) { throw DomainError("matrix program: " + msg); };
  auto check_product = [&](const EntryProduct& e, const std::string& where, const std::vector<int>* declared) {
    for (int i : e.inputs)
      if (i < 0 || static_cast<std::size_t>(i) >= inputs_.size()) fail("input index out of range in " + where);
    for (const auto& h : e.holes) {
      auto it = bound.find(h.family);
      if (it == bound.end()) fail("placeholder family " + std::to_string(h.family) + " used before binding in " + where);
      if (h.row < 0 || h.row >= it->second.rows || h.col < 0 || h.col >= it->second.cols)
        fail("placeholder index out of range in " + where);
      if (!declared || std::find(declared->begin(), declared->end(), h.family) == declared->end())
        fail("placeholder family " + std::to_string(h.family) + " not declared by " + where);
    }
  };
  auto check_entries = [&](int rows, int cols, bool diagonal, const std::vector<SparseEntry>& es, const std::string& where,
                           const std::vector<int>* declared) {
    if (rows <= 0 || cols <= 0) fail("empty dimensions for " + where);
    if (diagonal && rows != cols) fail("diagonal matrix " + where + " is not square");
    for (const auto& e : es) {
      if (e.row < 0 || e.row >= rows || e.col < 0 || e.col >= cols) fail("entry out of range in " + where);
      if (diagonal && e.row != e.col) fail("off-diagonal entry in diagonal matrix " + where);
      check_product(e.value, where, declared);
    }
  };
  for (const auto& st : stmts_) {
    if (auto* d = std::get_if<DefineMatrix>(&st)) {
      if (shape.count(d->name)) fail("matrix " + d->name + " defined twice");
      for (int f : d->consumes) {
        if (!bound.count(f)) fail("placeholder family " + std::to_string(f) + " used before binding in " + d->name);
        ++consumers[f];
      }
      check_entries(d->rows, d->cols, d->diagonal, d->entries, d->name, &d->consumes);
      shape[d->name] = {d->rows, d->cols, d->diagonal};
    } else if (auto* m = std::get_if<MatMul>(&st)) {
      if (shape.count(m->target)) fail("matrix " + m->target + " defined twice");
      auto a = shape.find(m->left), b = shape.find(m->right);
      if (a == shape.end() || b == shape.end()) fail("product " + m->target + " uses an unknown matrix");
      if (a->second.cols != b->second.rows) fail("dimension mismatch in product " + m->target);
      shape[m->target] = {a->second.rows, b->second.cols, a->second.diagonal && b->second.diagonal};
    } else {
      const auto& s = std::get<EntrySubstitute>(st);
      if (bound.count(s.family)) fail("placeholder family " + std::to_string(s.family) + " bound twice");
      if (s.source.empty()) {
        check_entries(s.rows, s.cols, false, s.table, "table " + std::to_string(s.family), nullptr);
        bound[s.family] = {s.rows, s.cols, false};
      } else {
        auto it = shape.find(s.source);
        if (it == shape.end()) fail("binding to unknown matrix " + s.source);
        bound[s.family] = it->second;
      }
    }
  }
  for (const auto& t : output_) {
    check_product(t.factor, "output", nullptr);
    for (const auto& r : t.refs) {
      auto it = shape.find(r.name);
      if (it == shape.end()) fail("output refers to unknown matrix " + r.name);
      if (r.row < 0 || r.row >= it->second.rows || r.col < 0 || r.col >= it->second.cols)
        fail("output index out of range for " + r.name);
    }
  }
  for (const auto& [f, s] : bound)
    if (consumers[f] != 1) fail("placeholder family " + std::to_string(f) + " must be consumed by exactly one matrix");
}

namespace {

std::uint64_t factor_muls(const EntryProduct& e) {
  std::uint64_t f = e.inputs.size() + e.holes.size() + (e.coef != 1 ? 1 : 0);
  return f > 0 ? f - 1 : 0;
}

OpCounts entry_counts(const std::vector<SparseEntry>& es) {
  OpCounts c;
  std::set<std::pair<int, int>> seen;
  for (const auto& e : es) {
    c.muls += factor_muls(e.value);
    if (!seen.insert({e.row, e.col}).second) ++c.adds;
  }
  return c;
}

}  // namespace

OpReport MatrixProgram::op_count() const {
  OpReport rep;
  std::map<std::string, Shape> shape;
  auto stage = [&](const std::string& name, OpCounts c) {
    rep.stages.push_back({name, c});
    rep.total += c;
  };
  for (const auto& st : stmts_) {
    if (auto* d = std::get_if<DefineMatrix>(&st)) {
      shape[d->name] = {d->rows, d->cols, d->diagonal};
      stage("define " + d->name, entry_counts(d->entries));
    } else if (auto* m = std::get_if<MatMul>(&st)) {
      const Shape a = shape.at(m->left), b = shape.at(m->right);
      OpCounts c;
      const std::uint64_t r = a.rows, k = a.cols, q = b.cols;
      if (a.diagonal && b.diagonal) {
        c.muls = r;
      } else if (a.diagonal || b.diagonal) {
        c.muls = r * q;
      } else {
        c.muls = r * k * q;
        c.adds = r * (k - 1) * q;
      }
      shape[m->target] = {a.rows, b.cols, a.diagonal && b.diagonal};
      stage("mul " + m->target, c);
    } else {
      const auto& s = std::get<EntrySubstitute>(st);
      stage("subst " + std::to_string(s.family), s.source.empty() ? entry_counts(s.table) : OpCounts{});
    }
  }
  OpCounts out;
  for (const auto& t : output_) out.muls += factor_muls(t.factor) + t.refs.size();
  if (!output_.empty()) out.adds = output_.size() - 1;
  stage("output", out);
  return rep;
}

namespace {

void write_product(std::ostream& os, const EntryProduct& e, const std::vector<Var>& inputs) {
  os << e.coef;
  for (int i : e.inputs) os << ' ' << inputs.at(i).str();
  for (const auto& h : e.holes) os << " ph:" << h.family << ':' << h.row << ':' << h.col;
}

void write_entries(std::ostream& os, const std::vector<SparseEntry>& es, const std::vector<Var>& inputs) {
  for (const auto& e : es) {
    os << "e " << e.row << ' ' << e.col << ' ';
    write_product(os, e.value, inputs);
    os << '\n';
  }
  os << "end\n";
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

int parse_int(const std::string& s, long lineno) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("matrix program: expected integer, got '" + s + "'", lineno);
  }
}

}  // namespace

std::string MatrixProgram::to_text() const {
  std::ostringstream os;
  os << "program\n";
  for (Var v : inputs_) os << "input " << v.str() << '\n';
  for (const auto& st : stmts_) {
    if (auto* d = std::get_if<DefineMatrix>(&st)) {
      os << "matrix " << d->name << ' ' << d->rows << ' ' << d->cols << ' ' << (d->diagonal ? "diag" : "dense");
      if (!d->consumes.empty()) {
        os << " uses";
        for (int f : d->consumes) os << ' ' << f;
      }
      os << '\n';
      write_entries(os, d->entries, inputs_);
    } else if (auto* m = std::get_if<MatMul>(&st)) {
      os << "mul " << m->target << ' ' << m->left << ' ' << m->right << '\n';
    } else {
      const auto& s = std::get<EntrySubstitute>(st);
      if (s.source.empty()) {
        os << "table " << s.family << ' ' << s.rows << ' ' << s.cols << '\n';
        write_entries(os, s.table, inputs_);
      } else {
        os << "bind " << s.family << ' ' << s.source << '\n';
      }
    }
  }
  os << "output\n";
  for (const auto& t : output_) {
    os << "t ";
    write_product(os, t.factor, inputs_);
    for (const auto& r : t.refs) os << " ref:" << r.name << ':' << r.row << ':' << r.col;
    os << '\n';
  }
  os << "end\n";
  return os.str();
}

MatrixProgram MatrixProgram::parse(const std::string& text) {
  MatrixProgram p;
  std::istringstream in(text);
  std::string line;
  long lineno = 0;
  enum class Block { None, Matrix, Table, Output, Done } block = Block::None;
  bool started = false;
  std::vector<SparseEntry>* entries = nullptr;
  DefineMatrix pending_matrix;
  EntrySubstitute pending_table;

  // coef, then var tokens, ph:f:r:c, ref:M:r:c
  auto parse_product = [&](const std::vector<std::string>& tok, std::size_t from, EntryProduct& e,
                           std::vector<MatrixRef>* refs) {
    if (from >= tok.size()) throw ParseError("matrix program: missing coefficient", lineno);
    try {
      e.coef = BigInt(tok[from]);
    } catch (const std::exception&) {
      throw ParseError("matrix program: bad coefficient '" + tok[from] + "'", lineno);
    }
    for (std::size_t i = from + 1; i < tok.size(); ++i) {
      const std::string& t = tok[i];
      if (t.rfind("ph:", 0) == 0) {
        auto parts = split(t, ':');
        if (parts.size() != 4) throw ParseError("matrix program: bad placeholder '" + t + "'", lineno);
        e.holes.push_back({parse_int(parts[1], lineno), parse_int(parts[2], lineno), parse_int(parts[3], lineno)});
      } else if (t.rfind("ref:", 0) == 0) {
        auto parts = split(t, ':');
        if (!refs || parts.size() != 4) throw ParseError("matrix program: bad reference '" + t + "'", lineno);
        refs->push_back({parts[1], parse_int(parts[2], lineno), parse_int(parts[3], lineno)});
      } else {
        Var v = parse_var(t, lineno);
        auto it = p.input_ids_.find(v.code());
        if (it == p.input_ids_.end()) throw ParseError("matrix program: undeclared input '" + t + "'", lineno);
        e.inputs.push_back(it->second);
      }
    }
  };

  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty() || tok[0][0] == '#') continue;
    if (!started) {
      if (tok[0] != "program") throw ParseError("matrix program: expected 'program' header", lineno);
      started = true;
      continue;
    }
    if (block == Block::Done) throw ParseError("matrix program: text after final 'end'", lineno);
    if (block == Block::Matrix || block == Block::Table) {
      if (tok[0] == "end") {
        if (block == Block::Matrix) p.define(std::move(pending_matrix));
        else p.stmts_.emplace_back(std::move(pending_table));
        pending_matrix = {};
        pending_table = {};
        block = Block::None;
        continue;
      }
      if (tok[0] != "e" || tok.size() < 4) throw ParseError("matrix program: expected entry line", lineno);
      SparseEntry e;
      e.row = parse_int(tok[1], lineno);
      e.col = parse_int(tok[2], lineno);
      parse_product(tok, 3, e.value, nullptr);
      entries->push_back(std::move(e));
      continue;
    }
    if (block == Block::Output) {
      if (tok[0] == "end") {
        block = Block::Done;
        continue;
      }
      if (tok[0] != "t") throw ParseError("matrix program: expected output term", lineno);
      OutputTerm t;
      parse_product(tok, 1, t.factor, &t.refs);
      p.add_output(std::move(t));
      continue;
    }
    const std::string& op = tok[0];
    if (op == "input" && tok.size() == 2) {
      p.input(parse_var(tok[1], lineno));
    } else if (op == "matrix" && (tok.size() == 5 || (tok.size() > 6 && tok[5] == "uses"))) {
      for (std::size_t i = 6; i < tok.size(); ++i) pending_matrix.consumes.push_back(parse_int(tok[i], lineno));
      pending_matrix.name = tok[1];
      pending_matrix.rows = parse_int(tok[2], lineno);
      pending_matrix.cols = parse_int(tok[3], lineno);
      if (tok[4] != "diag" && tok[4] != "dense") throw ParseError("matrix program: expected diag or dense", lineno);
      pending_matrix.diagonal = tok[4] == "diag";
      entries = &pending_matrix.entries;
      block = Block::Matrix;
    } else if (op == "table" && tok.size() == 4) {
      pending_table.family = parse_int(tok[1], lineno);
      pending_table.rows = parse_int(tok[2], lineno);
      pending_table.cols = parse_int(tok[3], lineno);
      entries = &pending_table.table;
      block = Block::Table;
    } else if (op == "bind" && tok.size() == 3) {
      p.bind(parse_int(tok[1], lineno), tok[2]);
    } else if (op == "mul" && tok.size() == 4) {
      p.multiply(tok[1], tok[2], tok[3]);
    } else if (op == "output" && tok.size() == 1) {
      block = Block::Output;
    } else {
      throw ParseError("matrix program: unknown statement '" + line + "'", lineno);
    }
  }
  if (block != Block::Done) throw ParseError("matrix program: unterminated program", lineno);
  p.validate();
  return p;
}

}  // namespace pf
