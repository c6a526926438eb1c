#include "patternforge/rings.hpp"

#include <cstdio>
#include <immintrin.h>

namespace pf {

bool is_prime_u64(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (p == q) return true;
    if (p % q == 0) return false;
  }
  auto mulmod = [&](std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
  };
  auto powmod = [&](std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    for (; e; e >>= 1, a = mulmod(a, a))
      if (e & 1) r = mulmod(r, a);
    return r;
  };
  std::uint64_t d = p - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic Miller-Rabin bases for 64-bit inputs.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d);
    if (x == 1 || x == p - 1) continue;
    bool witness = true;
    for (int i = 1; i < s && witness; ++i) {
      x = mulmod(x, x);
      if (x == p - 1) witness = false;
    }
    if (witness) return false;
  }
  return true;
}

ZpRing::ZpRing(std::uint64_t p) : p_(p) {
  if (p >= (std::uint64_t{1} << 62)) throw DomainError("prime modulus must be below 2^62");
  if (!is_prime_u64(p)) throw DomainError("modulus " + std::to_string(p) + " is not prime");
}

ZpRing::Elem ZpRing::from_int(long long v) const {
  long long m = static_cast<long long>(p_);
  long long r = v % m;
  return static_cast<Elem>(r < 0 ? r + m : r);
}

ZpRing::Elem ZpRing::from_big(const BigInt& v) const {
  BigInt r = v % p_;
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

ZpRing::Elem ZpRing::inv(Elem a) const {
  if (a % p_ == 0) throw DomainError("division by zero in " + name());
  Elem r = 1, base = a, e = p_ - 2;
  for (; e; e >>= 1, base = static_cast<Elem>((static_cast<unsigned __int128>(base) * base) % p_))
    if (e & 1) r = static_cast<Elem>((static_cast<unsigned __int128>(r) * base) % p_);
  return r;
}

namespace {

unsigned __int128 clmul_portable(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 acc = 0, aa = a;
  while (b) {
    if (b & 1) acc ^= aa;
    aa <<= 1;
    b >>= 1;
  }
  return acc;
}

__attribute__((target("pclmul,sse2"))) unsigned __int128 clmul_hw(std::uint64_t a, std::uint64_t b) {
  __m128i x = _mm_set_epi64x(0, static_cast<long long>(a));
  __m128i y = _mm_set_epi64x(0, static_cast<long long>(b));
  __m128i r = _mm_clmulepi64_si128(x, y, 0x00);
  std::uint64_t lo = static_cast<std::uint64_t>(_mm_cvtsi128_si64(r));
  std::uint64_t hi = static_cast<std::uint64_t>(_mm_cvtsi128_si64(_mm_unpackhi_epi64(r, r)));
  return (static_cast<unsigned __int128>(hi) << 64) | lo;
}

bool detect_clmul() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("pclmul");
}

}  // namespace

bool clmul_hardware_available() {
  static const bool has = detect_clmul();
  return has;
}

unsigned __int128 clmul64(std::uint64_t a, std::uint64_t b) {
  static const bool has = clmul_hardware_available();
  return has ? clmul_hw(a, b) : clmul_portable(a, b);
}

Gf2Ext::Gf2Ext(int w) : w_(w) {
  switch (w) {
    case 8: r_ = 0x1B; break;   // x^8 + x^4 + x^3 + x + 1
    case 16: r_ = 0x2B; break;  // x^16 + x^5 + x^3 + x + 1
    case 32: r_ = 0x8D; break;  // x^32 + x^7 + x^3 + x^2 + 1
    case 64: r_ = 0x1B; break;  // x^64 + x^4 + x^3 + x + 1
    default: throw DomainError("GF(2^w) needs w in {8,16,32,64}");
  }
  mask_ = w == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << w) - 1;
}

Gf2Ext::Elem Gf2Ext::reduce(unsigned __int128 v) const {
  const unsigned __int128 m = mask_;
  while (v >> w_) {
    std::uint64_t high = static_cast<std::uint64_t>(v >> w_);
    v = (v & m) ^ clmul64(high, r_);
  }
  return static_cast<Elem>(v);
}

Gf2Ext::Elem Gf2Ext::inv(Elem a) const {
  if (a == 0) throw DomainError("division by zero in " + name());
  // a^(2^w - 2)
  Elem r = 1, base = a;
  for (int i = 1; i < w_; ++i) {
    base = reduce(clmul64(base, base));
    r = reduce(clmul64(r, base));
  }
  return r;
}

std::string Gf2Ext::str(Elem a) const {
  char buf[24];
  std::snprintf(buf, sizeof buf, "0x%llx", static_cast<unsigned long long>(a));
  return buf;
}

RingConfig RingConfig::prime_field(std::uint64_t p) {
  ZpRing check(p);
  RingConfig c;
  c.kind = Kind::PrimeField;
  c.p = p;
  return c;
}

RingConfig RingConfig::gf2ext(int w) {
  Gf2Ext check(w);
  RingConfig c;
  c.kind = Kind::Gf2Ext;
  c.w = w;
  return c;
}

RingConfig RingConfig::truncated(const RingConfig& base, int k) {
  if (k < 0 || k > 16) throw DomainError("truncation slot count must be in [0, 16]");
  if (base.kind == Kind::TruncatedMultilinear) throw DomainError("nested truncation rings are not supported");
  RingConfig c;
  c.kind = Kind::TruncatedMultilinear;
  c.k = k;
  c.base = std::make_shared<const RingConfig>(base);
  return c;
}

RingConfig RingConfig::polynomial() {
  RingConfig c;
  c.kind = Kind::PolynomialRing;
  return c;
}

std::string RingConfig::name() const {
  switch (kind) {
    case Kind::Integers: return "Z";
    case Kind::PrimeField: return "Z_" + std::to_string(p);
    case Kind::Gf2Ext: return "GF(2^" + std::to_string(w) + ")";
    case Kind::TruncatedMultilinear: return base->name() + "[y1..y" + std::to_string(k) + "]/<y^2>";
    case Kind::PolynomialRing: return "Z[vars]";
  }
  return "?";
}

std::uint64_t RingConfig::characteristic() const {
  switch (kind) {
    case Kind::PrimeField: return p;
    case Kind::Gf2Ext: return 2;
    case Kind::TruncatedMultilinear: return base->characteristic();
    default: return 0;
  }
}

RingConfig parse_field(const std::string& text) {
  if (text.rfind("gf2-", 0) == 0) {
    int w = 0;
    try {
      w = std::stoi(text.substr(4));
    } catch (...) {
      throw DomainError("bad field: " + text);
    }
    return RingConfig::gf2ext(w);
  }
  if (text.rfind("zp:", 0) == 0) {
    std::uint64_t p = 0;
    try {
      p = std::stoull(text.substr(3));
    } catch (...) {
      throw DomainError("bad field: " + text);
    }
    return RingConfig::prime_field(p);
  }
  throw DomainError("unknown field '" + text + "' (expected gf2-64, gf2-32, gf2-16, gf2-8 or zp:P)");
}

}  // namespace pf
