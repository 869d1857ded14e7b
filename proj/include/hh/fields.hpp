#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace hh {

/**
 * Runtime description of the coefficient field: GF(2), GF(p) for an odd-ish
 * prime p < 2^16, or the rationals.  Parsed from the --coeff tokens
 * "gf2" | "gfp:<p>" | "q"; to_string() round-trips.
 */
struct FieldSpec {
  enum class Kind { gf2, gfp, rational };

  Kind kind = Kind::gf2;
  std::uint32_t p = 2;

  static FieldSpec gf2() { return {Kind::gf2, 2}; }
  static FieldSpec gfp(std::uint32_t p) {
    if (p < 2 || p >= 65536 || !is_prime(p))
      throw std::invalid_argument("gfp modulus must be a prime below 2^16, got " +
                                  std::to_string(p));
    return {Kind::gfp, p};
  }
  static FieldSpec rational() { return {Kind::rational, 0}; }

  static FieldSpec parse(std::string_view token) {
    if (token == "gf2") return gf2();
    if (token == "q") return rational();
    if (token.rfind("gfp:", 0) == 0) {
      std::uint32_t p = 0;
      for (char c : token.substr(4)) {
        if (c < '0' || c > '9' || p > 6553600)
          throw std::invalid_argument("bad gfp modulus in coefficient token: " + std::string(token));
        p = p * 10 + static_cast<std::uint32_t>(c - '0');
      }
      return gfp(p);
    }
    throw std::invalid_argument("unknown coefficient token \"" + std::string(token) +
                                "\" (expected gf2, gfp:<p> or q)");
  }

  std::string to_string() const {
    switch (kind) {
      case Kind::gf2: return "gf2";
      case Kind::gfp: return "gfp:" + std::to_string(p);
      case Kind::rational: return "q";
    }
    return "?";
  }

  /// Filename-safe variant used in cache entry names.
  std::string file_token() const {
    return kind == Kind::gfp ? "gfp" + std::to_string(p) : to_string();
  }

  friend bool operator==(const FieldSpec& a, const FieldSpec& b) {
    return a.kind == b.kind && (a.kind != Kind::gfp || a.p == b.p);
  }

  static bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }
};

/// GF(2) scalar ops on 0/1 ints; the packed matrix bypasses most of them.
struct Gf2 {
  using Value = int;
  Value zero() const { return 0; }
  Value one() const { return 1; }
  bool is_zero(Value v) const { return v == 0; }
  Value add(Value a, Value b) const { return a ^ b; }
  Value sub(Value a, Value b) const { return a ^ b; }
  Value neg(Value a) const { return a; }
  Value mul(Value a, Value b) const { return a & b; }
  Value inv(Value a) const {
    if (a == 0) throw std::domain_error("division by zero in GF(2)");
    return 1;
  }
  Value from_int(long long x) const { return static_cast<Value>(x & 1); }
  std::string to_string(Value v) const { return v ? "1" : "0"; }
};

/// Prime field GF(p), p < 2^16; values live in [0, p).
struct Gfp {
  using Value = std::uint32_t;

  explicit Gfp(std::uint32_t prime) : p(prime) {}
  std::uint32_t p;

  Value zero() const { return 0; }
  Value one() const { return 1 % p; }
  bool is_zero(Value v) const { return v == 0; }
  Value add(Value a, Value b) const {
    Value s = a + b;
    return s >= p ? s - p : s;
  }
  Value sub(Value a, Value b) const { return a >= b ? a - b : a + p - b; }
  Value neg(Value a) const { return a == 0 ? 0 : p - a; }
  Value mul(Value a, Value b) const {
    return static_cast<Value>(std::uint64_t{a} * b % p);
  }
  Value inv(Value a) const {
    if (a == 0) throw std::domain_error("division by zero in GF(" + std::to_string(p) + ")");
    // Fermat: a^(p-2); p is prime by FieldSpec validation.
    Value result = one(), base = a;
    for (std::uint32_t e = p - 2; e; e >>= 1) {
      if (e & 1) result = mul(result, base);
      base = mul(base, base);
    }
    return result;
  }
  Value from_int(long long x) const {
    long long r = x % static_cast<long long>(p);
    if (r < 0) r += p;
    return static_cast<Value>(r);
  }
  std::string to_string(Value v) const { return std::to_string(v); }
};

inline FieldSpec spec_of(const Gf2&) { return FieldSpec::gf2(); }
inline FieldSpec spec_of(const Gfp& f) { return FieldSpec::gfp(f.p); }

/// Exact rationals; normalization is handled by the number type.
struct Rational {
  using Value = boost::multiprecision::cpp_rational;
  Value zero() const { return 0; }
  Value one() const { return 1; }
  bool is_zero(const Value& v) const { return v == 0; }
  Value add(const Value& a, const Value& b) const { return a + b; }
  Value sub(const Value& a, const Value& b) const { return a - b; }
  Value neg(const Value& a) const { return -a; }
  Value mul(const Value& a, const Value& b) const { return a * b; }
  Value inv(const Value& a) const {
    if (a == 0) throw std::domain_error("division by zero in Q");
    return Value(1) / a;
  }
  Value from_int(long long x) const { return Value(x); }
  std::string to_string(const Value& v) const { return v.str(); }
};

inline FieldSpec spec_of(const Rational&) { return FieldSpec::rational(); }

}  // namespace hh
