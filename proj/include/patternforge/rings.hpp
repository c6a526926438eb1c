#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "patternforge/errors.hpp"
#include "patternforge/rng.hpp"

namespace pf {

using BigInt = boost::multiprecision::cpp_int;

struct OpCounts {
  std::uint64_t adds = 0;
  std::uint64_t muls = 0;
  OpCounts& operator+=(const OpCounts& o) {
    adds += o.adds;
    muls += o.muls;
    return *this;
  }
};

// Every ring below exposes: Elem, zero(), one(), from_int(long long),
// from_big(BigInt), add, sub, mul, is_zero, equal, str. Counters are
// mutable per-object accumulators; use one ring object per evaluation.

class IntRing {
 public:
  using Elem = BigInt;
  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(long long v) const { return Elem(v); }
  Elem from_big(const BigInt& v) const { return v; }
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
  std::string str(const Elem& a) const { return a.str(); }
  std::string name() const { return "Z"; }
  mutable OpCounts ops;
};

bool is_prime_u64(std::uint64_t p);

class ZpRing {
 public:
  using Elem = std::uint64_t;
  explicit ZpRing(std::uint64_t p);
  std::uint64_t modulus() const { return p_; }
  Elem zero() const { return 0; }
  Elem one() const { return 1 % p_; }
  Elem from_int(long long v) const;
  Elem from_big(const BigInt& v) const;
  Elem add(Elem a, Elem b) const {
    ++ops.adds;
    Elem s = a + b;
    return (s >= p_ || s < a) ? s - p_ : s;
  }
  Elem sub(Elem a, Elem b) const {
    ++ops.adds;
    return a >= b ? a - b : a + (p_ - b);
  }
  Elem mul(Elem a, Elem b) const {
    ++ops.muls;
    return static_cast<Elem>((static_cast<unsigned __int128>(a) * b) % p_);
  }
  Elem inv(Elem a) const;
  bool is_zero(Elem a) const { return a == 0; }
  bool equal(Elem a, Elem b) const { return a == b; }
  std::string str(Elem a) const { return std::to_string(a); }
  std::string name() const { return "Z_" + std::to_string(p_); }
  // Uniform over all of Z_p.
  Elem draw(Rng& rng) const { return uniform_below(rng, p_); }
  mutable OpCounts ops;

 private:
  std::uint64_t p_;
};

// Carry-less multiply of two 64-bit polynomials over GF(2).
unsigned __int128 clmul64(std::uint64_t a, std::uint64_t b);
bool clmul_hardware_available();

class Gf2Ext {
 public:
  using Elem = std::uint64_t;
  // w in {8, 16, 32, 64}.
  explicit Gf2Ext(int w = 64);
  int width() const { return w_; }
  // Low-order part of the modulus, i.e. modulus = x^w + reduction_poly().
  std::uint64_t reduction_poly() const { return r_; }
  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(long long v) const { return static_cast<Elem>(v & 1); }
  Elem from_big(const BigInt& v) const { return bit_test(v, 0) ? 1 : 0; }
  Elem add(Elem a, Elem b) const {
    ++ops.adds;
    return a ^ b;
  }
  Elem sub(Elem a, Elem b) const {
    ++ops.adds;
    return a ^ b;
  }
  Elem mul(Elem a, Elem b) const {
    ++ops.muls;
    return reduce(clmul64(a, b));
  }
  Elem inv(Elem a) const;
  bool is_zero(Elem a) const { return a == 0; }
  bool equal(Elem a, Elem b) const { return a == b; }
  std::string str(Elem a) const;
  std::string name() const { return "GF(2^" + std::to_string(w_) + ")"; }
  // Uniform over the nonzero elements.
  Elem draw(Rng& rng) const { return 1 + uniform_below(rng, mask_); }
  Elem reduce(unsigned __int128 v) const;
  mutable OpCounts ops;

 private:
  int w_;
  std::uint64_t r_;
  std::uint64_t mask_;
};

enum class TruncSchedule { Naive, Sparse };

// Base[y_1..y_k]/<y_i^2>, dense 2^k coefficient storage indexed by subset masks.
template <class Base>
class TruncRing {
 public:
  using BaseElem = typename Base::Elem;
  using Elem = std::vector<BaseElem>;

  TruncRing(Base base, int k, TruncSchedule schedule = TruncSchedule::Sparse)
      : base(std::move(base)), k_(k), size_(std::size_t{1} << k), schedule_(schedule) {
    if (k < 0 || k > 16) throw DomainError("truncation slot count must be in [0, 16]");
  }
  int slots() const { return k_; }
  std::size_t size() const { return size_; }
  TruncSchedule schedule() const { return schedule_; }

  Elem zero() const { return Elem(size_, base.zero()); }
  Elem scalar(const BaseElem& c) const {
    Elem e = zero();
    e[0] = c;
    return e;
  }
  Elem one() const { return scalar(base.one()); }
  Elem from_int(long long v) const { return scalar(base.from_int(v)); }
  Elem from_big(const BigInt& v) const { return scalar(base.from_big(v)); }
  // c * y_slot
  Elem monomial(const BaseElem& c, int slot) const {
    Elem e = zero();
    e[std::size_t{1} << slot] = c;
    return e;
  }

  Elem add(const Elem& a, const Elem& b) const {
    check(a, b);
    ++ops.adds;
    Elem out(size_);
    for (std::size_t i = 0; i < size_; ++i) out[i] = base.add(a[i], b[i]);
    return out;
  }
  Elem sub(const Elem& a, const Elem& b) const {
    check(a, b);
    ++ops.adds;
    Elem out(size_);
    for (std::size_t i = 0; i < size_; ++i) out[i] = base.sub(a[i], b[i]);
    return out;
  }
  Elem mul(const Elem& a, const Elem& b) const {
    check(a, b);
    ++ops.muls;
    return schedule_ == TruncSchedule::Naive ? mul_naive(a, b) : mul_sparse(a, b);
  }
  bool is_zero(const Elem& a) const {
    for (const auto& c : a)
      if (!base.is_zero(c)) return false;
    return true;
  }
  bool equal(const Elem& a, const Elem& b) const {
    for (std::size_t i = 0; i < size_; ++i)
      if (!base.equal(a[i], b[i])) return false;
    return true;
  }
  // Coefficient of y_1...y_k.
  const BaseElem& top(const Elem& a) const { return a[size_ - 1]; }
  std::string str(const Elem& a) const {
    std::string out;
    for (std::size_t s = 0; s < size_; ++s) {
      if (base.is_zero(a[s])) continue;
      if (!out.empty()) out += " + ";
      out += base.str(a[s]);
      for (int i = 0; i < k_; ++i)
        if (s >> i & 1) out += "*y" + std::to_string(i + 1);
    }
    return out.empty() ? "0" : out;
  }
  std::string name() const { return base.name() + "[y1..y" + std::to_string(k_) + "]/<y^2>"; }

  Base base;
  mutable OpCounts ops;

 private:
  void check(const Elem& a, const Elem& b) const {
    if (a.size() != size_ || b.size() != size_) throw DomainError("truncation ring configuration mismatch");
  }
  // Every (T, S subset of T) pair: exactly 3^k base multiplications.
  Elem mul_naive(const Elem& a, const Elem& b) const {
    Elem out(size_, base.zero());
    for (std::size_t t = 0; t < size_; ++t) {
      std::size_t s = t;
      while (true) {
        out[t] = base.add(out[t], base.mul(a[s], b[t ^ s]));
        if (s == 0) break;
        s = (s - 1) & t;
      }
    }
    return out;
  }
  // Skips zero coefficients; counts only the products actually formed.
  Elem mul_sparse(const Elem& a, const Elem& b) const {
    std::vector<std::size_t> sa, sb;
    for (std::size_t i = 0; i < size_; ++i) {
      if (!base.is_zero(a[i])) sa.push_back(i);
      if (!base.is_zero(b[i])) sb.push_back(i);
    }
    Elem out(size_, base.zero());
    for (std::size_t i : sa)
      for (std::size_t j : sb)
        if ((i & j) == 0) out[i | j] = base.add(out[i | j], base.mul(a[i], b[j]));
    return out;
  }

  int k_;
  std::size_t size_;
  TruncSchedule schedule_;
};

// Runtime ring description.
struct RingConfig {
  enum class Kind { Integers, PrimeField, Gf2Ext, TruncatedMultilinear, PolynomialRing };
  Kind kind = Kind::Integers;
  std::uint64_t p = 0;
  int w = 64;
  int k = 0;
  std::shared_ptr<const RingConfig> base;

  static RingConfig integers() { return {}; }
  static RingConfig prime_field(std::uint64_t p);
  static RingConfig gf2ext(int w = 64);
  static RingConfig truncated(const RingConfig& base, int k);
  static RingConfig polynomial();
  std::string name() const;
  bool is_field() const { return kind == Kind::PrimeField || kind == Kind::Gf2Ext; }
  // Characteristic; 0 for integers/polynomials.
  std::uint64_t characteristic() const;
};

// Parses "gf2-64", "gf2-32", "gf2-16", "gf2-8", "zp:P".
RingConfig parse_field(const std::string& text);

}  // namespace pf
