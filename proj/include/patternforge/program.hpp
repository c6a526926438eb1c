#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "patternforge/poly.hpp"

namespace pf {

// Reference to entry (row, col) of whatever a placeholder family is bound to.
struct HoleRef {
  int family = 0;
  int row = 0;
  int col = 0;
  bool operator==(const HoleRef&) const = default;
};

// coef * product of inputs * product of bound placeholder entries.
struct EntryProduct {
  BigInt coef = 1;
  std::vector<int> inputs;  // indices into MatrixProgram::inputs()
  std::vector<HoleRef> holes;
  bool operator==(const EntryProduct&) const = default;
};

struct SparseEntry {
  int row = 0;
  int col = 0;
  EntryProduct value;
  bool operator==(const SparseEntry&) const = default;
};

// Matrix given entrywise; absent entries are zero. Diagonal matrices only
// carry entries with row == col and multiply by scaling. `consumes` lists
// the placeholder families the entry rule draws on (entries may still be
// empty for tiny hosts).
struct DefineMatrix {
  std::string name;
  int rows = 0;
  int cols = 0;
  bool diagonal = false;
  std::vector<SparseEntry> entries;
  std::vector<int> consumes;
  bool operator==(const DefineMatrix&) const = default;
};

struct MatMul {
  std::string target;
  std::string left;
  std::string right;
  bool operator==(const MatMul&) const = default;
};

// Binds a placeholder family either to a previously computed matrix or to
// an explicit table of entries (source empty).
struct EntrySubstitute {
  int family = 0;
  std::string source;
  int rows = 0;
  int cols = 0;
  std::vector<SparseEntry> table;
  bool operator==(const EntrySubstitute&) const = default;
};

struct MatrixRef {
  std::string name;
  int row = 0;
  int col = 0;
  bool operator==(const MatrixRef&) const = default;
};

// One summand of the final accumulation.
struct OutputTerm {
  EntryProduct factor;
  std::vector<MatrixRef> refs;
  bool operator==(const OutputTerm&) const = default;
};

using Statement = std::variant<DefineMatrix, MatMul, EntrySubstitute>;

struct StageCount {
  std::string stage;
  OpCounts ops;
};

struct OpReport {
  OpCounts total;
  std::vector<StageCount> stages;
};

// Staged matrix computation. Statements run in order and may only refer to
// matrices and placeholder bindings introduced before them.
class MatrixProgram {
 public:
  int input(Var v);
  void define(DefineMatrix m);
  void multiply(const std::string& target, const std::string& left, const std::string& right);
  void bind(int family, const std::string& source);
  void bind_table(int family, int rows, int cols, std::vector<SparseEntry> table);
  void add_output(OutputTerm t);

  const std::vector<Var>& inputs() const { return inputs_; }
  const std::vector<Statement>& statements() const { return stmts_; }
  const std::vector<OutputTerm>& output() const { return output_; }
  // Families bound by EntrySubstitute, in binding order.
  std::vector<int> bound_families() const;

  // Throws DomainError on dimension mismatches, unknown names, unbound or
  // doubly bound families, families not consumed by exactly one matrix,
  // placeholders outside the declared families, or out-of-range indices.
  void validate() const;
  OpReport op_count() const;

  std::string to_text() const;
  static MatrixProgram parse(const std::string& text);
  bool operator==(const MatrixProgram&) const = default;

  template <class Ring>
  typename Ring::Elem eval(const Ring& ring, const std::vector<typename Ring::Elem>& values) const;

  struct Shape {
    int rows = 0;
    int cols = 0;
    bool diagonal = false;
  };
  // Shapes of all named matrices after the statements run.
  std::map<std::string, Shape> shapes() const;

 private:
  std::vector<Var> inputs_;
  std::unordered_map<std::uint64_t, int> input_ids_;
  std::vector<Statement> stmts_;
  std::vector<OutputTerm> output_;
};

template <class Ring>
typename Ring::Elem MatrixProgram::eval(const Ring& ring, const std::vector<typename Ring::Elem>& values) const {
  using Elem = typename Ring::Elem;
  struct Mat {
    int rows = 0, cols = 0;
    bool diagonal = false;
    std::vector<Elem> data;
    std::vector<char> nz;
    std::size_t at(int r, int c) const { return diagonal ? static_cast<std::size_t>(r) : static_cast<std::size_t>(r) * cols + c; }
  };
  if (values.size() != inputs_.size()) throw DomainError("assignment size does not match program inputs");
  std::map<std::string, Mat> mats;
  std::map<int, Mat> holes;  // family -> bound values
  auto lookup = [](const Mat& m, int r, int c) -> std::optional<Elem> {
    if (m.diagonal && r != c) return std::nullopt;
    std::size_t i = m.at(r, c);
    if (!m.nz[i]) return std::nullopt;
    return m.data[i];
  };
  // nullopt means zero
  auto product = [&](const EntryProduct& e) -> std::optional<Elem> {
    if (e.coef == 0) return std::nullopt;
    std::optional<Elem> acc;
    if (e.coef != 1) acc = ring.from_big(e.coef);
    auto times = [&](const Elem& v) { acc = acc ? ring.mul(*acc, v) : v; };
    for (int i : e.inputs) times(values[i]);
    for (const auto& h : e.holes) {
      auto v = lookup(holes.at(h.family), h.row, h.col);
      if (!v) return std::nullopt;
      times(*v);
    }
    if (!acc) return ring.one();
    return acc;
  };
  auto fill = [&](int rows, int cols, bool diagonal, const std::vector<SparseEntry>& entries) {
    Mat m;
    m.rows = rows;
    m.cols = cols;
    m.diagonal = diagonal;
    std::size_t sz = diagonal ? static_cast<std::size_t>(rows) : static_cast<std::size_t>(rows) * cols;
    m.data.assign(sz, ring.zero());
    m.nz.assign(sz, 0);
    for (const auto& e : entries) {
      auto v = product(e.value);
      if (!v) continue;
      std::size_t i = m.at(e.row, e.col);
      if (m.nz[i]) {
        m.data[i] = ring.add(m.data[i], *v);
      } else {
        m.data[i] = std::move(*v);
        m.nz[i] = 1;
      }
    }
    return m;
  };
  for (const auto& st : stmts_) {
    if (auto* d = std::get_if<DefineMatrix>(&st)) {
      mats[d->name] = fill(d->rows, d->cols, d->diagonal, d->entries);
    } else if (auto* s = std::get_if<EntrySubstitute>(&st)) {
      holes[s->family] = s->source.empty() ? fill(s->rows, s->cols, false, s->table) : mats.at(s->source);
    } else {
      const auto& mm = std::get<MatMul>(st);
      const Mat& a = mats.at(mm.left);
      const Mat& b = mats.at(mm.right);
      Mat c;
      c.rows = a.rows;
      c.cols = b.cols;
      c.diagonal = a.diagonal && b.diagonal;
      std::size_t sz = c.diagonal ? static_cast<std::size_t>(c.rows) : static_cast<std::size_t>(c.rows) * c.cols;
      c.data.assign(sz, ring.zero());
      c.nz.assign(sz, 0);
      auto accumulate = [&](std::size_t i, Elem v) {
        if (c.nz[i]) {
          c.data[i] = ring.add(c.data[i], v);
        } else {
          c.data[i] = std::move(v);
          c.nz[i] = 1;
        }
      };
      if (c.diagonal) {
        for (int r = 0; r < c.rows; ++r)
          if (a.nz[r] && b.nz[r]) accumulate(r, ring.mul(a.data[r], b.data[r]));
      } else if (a.diagonal) {
        for (int r = 0; r < c.rows; ++r)
          if (a.nz[r])
            for (int col = 0; col < c.cols; ++col) {
              std::size_t j = b.at(r, col);
              if (b.nz[j]) accumulate(c.at(r, col), ring.mul(a.data[r], b.data[j]));
            }
      } else if (b.diagonal) {
        for (int r = 0; r < c.rows; ++r)
          for (int col = 0; col < c.cols; ++col) {
            std::size_t i = a.at(r, col);
            if (a.nz[i] && b.nz[col]) accumulate(c.at(r, col), ring.mul(a.data[i], b.data[col]));
          }
      } else {
        for (int r = 0; r < a.rows; ++r)
          for (int t = 0; t < a.cols; ++t) {
            std::size_t i = a.at(r, t);
            if (!a.nz[i]) continue;
            for (int col = 0; col < b.cols; ++col) {
              std::size_t j = b.at(t, col);
              if (b.nz[j]) accumulate(c.at(r, col), ring.mul(a.data[i], b.data[j]));
            }
          }
      }
      mats[mm.target] = std::move(c);
    }
  }
  std::optional<Elem> total;
  for (const auto& t : output_) {
    auto v = product(t.factor);
    if (!v) continue;
    bool zero = false;
    for (const auto& r : t.refs) {
      auto e = lookup(mats.at(r.name), r.row, r.col);
      if (!e) {
        zero = true;
        break;
      }
      v = ring.mul(*v, *e);
    }
    if (zero) continue;
    total = total ? ring.add(*total, *v) : *v;
  }
  return total ? *total : ring.zero();
}

}  // namespace pf
