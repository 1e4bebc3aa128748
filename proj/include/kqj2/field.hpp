#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "kqj2/errors.hpp"

namespace kqj2 {

/// The rationals. Values are GMP rationals, always kept canonical (lowest
/// terms, positive denominator) so that equality is structural.
struct RationalField {
  using value_type = mpq_class;

  value_type zero() const { return value_type(0); }
  value_type one() const { return value_type(1); }
  value_type from_int(long long v) const { return value_type(static_cast<long>(v)); }

  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type inv(const value_type& a) const {
    if (sgn(a) == 0) throw DomainError(ErrorCode::Singular, "inverse of zero");
    return 1 / a;
  }
  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  bool is_one(const value_type& a) const { return a == 1; }

  std::uint32_t characteristic() const { return 0; }
  std::string name() const { return "Q"; }

  std::string format(const value_type& a) const { return a.get_str(); }

  /// Accepts `n` or `n/d` with an optional leading minus sign.
  value_type parse(std::string_view text) const {
    value_type out;
    if (text.empty() || out.set_str(std::string(text), 10) != 0) {
      throw DomainError(ErrorCode::InvalidArgument, "bad rational literal '" + std::string(text) + "'");
    }
    if (sgn(out.get_den()) == 0) {
      throw DomainError(ErrorCode::InvalidArgument, "zero denominator in '" + std::string(text) + "'");
    }
    out.canonicalize();
    return out;
  }

  /// Small integers in [-spread, spread], occasionally divided by 2 or 3.
  template <class Rng>
  value_type random(Rng& rng, int spread = 3) const {
    std::uniform_int_distribution<int> num(-spread, spread);
    std::uniform_int_distribution<int> den(1, 6);
    int d = den(rng);
    value_type out(num(rng), d <= 4 ? 1 : d - 3);
    out.canonicalize();
    return out;
  }

  bool operator==(const RationalField&) const = default;
};

namespace detail {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace detail

/// Integers modulo a prime p < 2^31. Elements are stored reduced in [0, p).
class PrimeField {
 public:
  using value_type = std::uint32_t;

  explicit PrimeField(std::uint32_t p) : p_(p) {
    if (p >= (1u << 31) || !detail::is_prime(p)) {
      throw DomainError(ErrorCode::NotPrime, std::to_string(p) + " is not a prime below 2^31");
    }
  }

  std::uint32_t modulus() const { return p_; }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(long long v) const {
    long long r = v % static_cast<long long>(p_);
    return static_cast<value_type>(r < 0 ? r + p_ : r);
  }

  value_type add(value_type a, value_type b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + p_ - b; }
  value_type mul(value_type a, value_type b) const {
    return static_cast<value_type>(static_cast<std::uint64_t>(a) * b % p_);
  }
  value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
  value_type inv(value_type a) const {
    if (a == 0) throw DomainError(ErrorCode::Singular, "inverse of zero");
    // Fermat: a^(p-2).
    std::uint64_t result = 1, base = a, e = p_ - 2;
    while (e > 0) {
      if (e & 1) result = result * base % p_;
      base = base * base % p_;
      e >>= 1;
    }
    return static_cast<value_type>(result);
  }
  bool is_zero(value_type a) const { return a == 0; }
  bool is_one(value_type a) const { return a == 1; }

  std::uint32_t characteristic() const { return p_; }
  std::string name() const { return "F" + std::to_string(p_); }

  std::string format(value_type a) const { return std::to_string(a); }

  /// Accepts any rational literal whose denominator is invertible mod p.
  value_type parse(std::string_view text) const {
    mpq_class q = RationalField{}.parse(text);
    mpz_class num = q.get_num() % p_;
    mpz_class den = q.get_den() % p_;
    if (den == 0) {
      throw DomainError(ErrorCode::InvalidArgument,
                        "denominator of '" + std::string(text) + "' vanishes mod " + std::to_string(p_));
    }
    if (num < 0) num += p_;
    return mul(static_cast<value_type>(num.get_ui()), inv(static_cast<value_type>(den.get_ui())));
  }

  template <class Rng>
  value_type random(Rng& rng, int = 0) const {
    std::uniform_int_distribution<std::uint32_t> dist(0, p_ - 1);
    return dist(rng);
  }

  bool operator==(const PrimeField&) const = default;

 private:
  std::uint32_t p_;
};

/// Runtime selection of the ground field; modulus 0 means the rationals.
struct FieldSpec {
  std::uint32_t modulus = 0;

  static FieldSpec rationals() { return {}; }
  static FieldSpec prime(std::uint32_t p) {
    PrimeField check(p);
    return {p};
  }

  bool is_rational() const { return modulus == 0; }
  std::string name() const { return modulus == 0 ? "Q" : "F" + std::to_string(modulus); }

  /// Parses "Q", "F5", "F 5" or "Fp" style names.
  static FieldSpec parse(std::string_view text) {
    std::string t;
    for (char c : text) {
      if (c != ' ') t.push_back(c);
    }
    if (t == "Q" || t == "QQ") return rationals();
    if (t.size() >= 2 && (t[0] == 'F' || t[0] == 'f')) {
      std::string digits = t.substr(1);
      if (!digits.empty() && digits.find_first_not_of("0123456789") == std::string::npos && digits.size() < 11) {
        std::uint64_t p = std::stoull(digits);
        if (p < (1ull << 31)) return prime(static_cast<std::uint32_t>(p));
        throw DomainError(ErrorCode::NotPrime, digits + " is not a prime below 2^31");
      }
    }
    throw DomainError(ErrorCode::InvalidArgument, "unknown field '" + std::string(text) + "'");
  }

  bool operator==(const FieldSpec&) const = default;
};

inline FieldSpec spec_of(const RationalField&) { return FieldSpec::rationals(); }
inline FieldSpec spec_of(const PrimeField& f) { return FieldSpec{f.modulus()}; }

/// Calls `fn` with a concrete field object for `spec`.
template <class Fn>
decltype(auto) visit_field(const FieldSpec& spec, Fn&& fn) {
  if (spec.is_rational()) return fn(RationalField{});
  return fn(PrimeField(spec.modulus));
}

}  // namespace kqj2
