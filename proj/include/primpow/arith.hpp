#pragma once

/**
 * @file arith.hpp
 * @brief Exact 64-bit integer arithmetic functions.
 *
 * Factorization (trial division by primes below 10^6, then Pollard rho with a
 * deterministic Miller-Rabin test), the Moebius and Euler functions, radicals,
 * square-free divisor enumeration and the Robin bound on the number of
 * distinct prime factors.
 *
 * Every function is pure. Divisor lists are returned in strictly increasing
 * order.
 */

#include <cstdint>
#include <optional>
#include <vector>

namespace primpow::arith {

using u64 = std::uint64_t;

/// Largest accepted input, 2^63 - 1.
inline constexpr u64 kMaxInput = (u64{1} << 63) - 1;

struct PrimeFactor {
  u64 prime = 0;
  unsigned exponent = 0;

  friend bool operator==(const PrimeFactor&, const PrimeFactor&) = default;
};

/// n = prod prime^exponent, primes strictly increasing.
struct Factorization {
  u64 n = 1;
  std::vector<PrimeFactor> factors;

  /// Number of distinct prime factors.
  [[nodiscard]] unsigned omega() const { return static_cast<unsigned>(factors.size()); }
  [[nodiscard]] std::vector<u64> primes() const;
  /// Multiplies the factors back together.
  [[nodiscard]] u64 reconstruct() const;

  friend bool operator==(const Factorization&, const Factorization&) = default;
};

/// A prime power p^n with n >= 1.
struct PrimePower {
  u64 prime = 0;
  unsigned exponent = 0;
};

/// Deterministic for every 64-bit input.
[[nodiscard]] bool is_prime(u64 n);

/// Throws DomainError unless 1 <= n <= 2^63 - 1.
[[nodiscard]] Factorization factorize(u64 n);

[[nodiscard]] int mobius(u64 n);
[[nodiscard]] int mobius(const Factorization& f);

[[nodiscard]] u64 euler_phi(u64 n);
[[nodiscard]] u64 euler_phi(const Factorization& f);

[[nodiscard]] u64 radical(u64 n);
[[nodiscard]] u64 radical(const Factorization& f);

/// Number of square-free divisors, 2^omega(n).
[[nodiscard]] u64 big_w(u64 n);
[[nodiscard]] u64 big_w(const Factorization& f);

[[nodiscard]] std::vector<u64> squarefree_divisors(u64 n);
[[nodiscard]] std::vector<u64> squarefree_divisors(const Factorization& f);

/// All positive divisors, increasing.
[[nodiscard]] std::vector<u64> divisors(u64 n);
[[nodiscard]] std::vector<u64> divisors(const Factorization& f);

/// The first s primes, 1 <= s <= 64.
[[nodiscard]] std::vector<u64> first_primes(unsigned s);

/// omega(n) <= 1.38402 log n / log log n, evaluated in binary64. Requires n >= 3.
[[nodiscard]] bool robin_holds(u64 n);

/// Returns (p, e) when n = p^e with e >= 1.
[[nodiscard]] std::optional<PrimePower> as_prime_power(u64 n);

[[nodiscard]] u64 gcd(u64 a, u64 b);

/// (a * b) mod m without overflow.
[[nodiscard]] u64 mul_mod(u64 a, u64 b, u64 m);
[[nodiscard]] u64 pow_mod(u64 base, u64 exp, u64 m);

}  // namespace primpow::arith
