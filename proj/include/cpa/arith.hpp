#pragma once

// Exact integer helpers shared by every module: prime powers, modular
// inverses, valuations, and the error types raised by bounded enumerations.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace cpa {

using u128 = unsigned __int128;

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d <= n / d; d += 2)
    if (n % d == 0) return false;
  return true;
}

// base^e, throwing when the result leaves 64 bits.
inline std::uint64_t checked_pow(std::uint64_t base, std::uint32_t e) {
  u128 r = 1;
  for (std::uint32_t i = 0; i < e; ++i) {
    r *= base;
    if (r > UINT64_MAX) throw std::overflow_error("checked_pow: result exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(r);
}

inline std::string u128_to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return s;
}

// p-adic valuation of a nonzero x; returns `cap` for x == 0.
inline std::uint32_t valuation(std::uint64_t x, std::uint64_t p, std::uint32_t cap) {
  if (x == 0) return cap;
  std::uint32_t v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

// Inverse of a unit a modulo m (gcd(a, m) = 1).
inline std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(m), new_r = static_cast<std::int64_t>(a % m);
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) throw std::domain_error("inverse_mod: argument is not a unit");
  if (t < 0) t += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(t);
}

/// An exact order or count of the form prime^exponent.
///
/// Every order in this library is a power of the working prime, so counts are
/// carried as exponents and only materialized as integers on request.
struct PrimePower {
  std::uint64_t prime = 2;
  std::uint32_t exponent = 0;

  /// Exact value; throws std::overflow_error above 128 bits.
  u128 value() const {
    u128 r = 1;
    for (std::uint32_t i = 0; i < exponent; ++i) {
      if (r > static_cast<u128>(-1) / prime) throw std::overflow_error("PrimePower exceeds 128 bits");
      r *= prime;
    }
    return r;
  }

  bool fits_u64() const {
    u128 r = 1;
    for (std::uint32_t i = 0; i < exponent; ++i) {
      r *= prime;
      if (r > UINT64_MAX) return false;
    }
    return true;
  }

  std::uint64_t to_u64() const {
    if (!fits_u64()) throw std::overflow_error("PrimePower exceeds 64 bits: " + to_string());
    return static_cast<std::uint64_t>(value());
  }

  // "3^12 = 531441", or just "3^48" when the integer does not fit 64 bits.
  std::string to_string() const {
    std::string s = std::to_string(prime) + "^" + std::to_string(exponent);
    if (fits_u64()) s += " = " + u128_to_string(value());
    return s;
  }

  bool at_most(std::uint64_t bound) const { return fits_u64() && to_u64() <= bound; }

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

inline PrimePower operator*(PrimePower a, PrimePower b) {
  if (a.prime != b.prime && a.exponent != 0 && b.exponent != 0)
    throw std::invalid_argument("PrimePower product of different primes");
  if (a.exponent == 0) a.prime = b.prime;
  return PrimePower{a.prime, a.exponent + b.exponent};
}

// Exponent k with n == p^k, if n is a power of p.
inline std::optional<std::uint32_t> exact_log(std::uint64_t p, std::uint64_t n) {
  if (n == 0) return std::nullopt;
  std::uint32_t k = 0;
  while (n % p == 0) {
    n /= p;
    ++k;
  }
  if (n != 1) return std::nullopt;
  return k;
}

/// Raised when an enumeration would exceed its caller-supplied budget.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what_op, PrimePower required, std::uint64_t budget)
      : std::runtime_error(what_op + ": budget exceeded, requires " + required.to_string() +
                           " but budget is " + std::to_string(budget)),
        required_(required),
        budget_(budget) {}

  const PrimePower& required() const { return required_; }
  std::uint64_t budget() const { return budget_; }

 private:
  PrimePower required_;
  std::uint64_t budget_;
};

/// Raised by operations that need a full element store above the element cap.
class CapExceeded : public BudgetExceeded {
 public:
  CapExceeded(const std::string& what_op, PrimePower required, std::uint64_t cap)
      : BudgetExceeded(what_op + " (element cap)", required, cap) {}
};

/// Raised when an operation's stated precondition does not hold for its input.
class PreconditionFailed : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace cpa
