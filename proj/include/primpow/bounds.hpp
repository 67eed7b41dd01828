#pragma once

// Explicit field-size thresholds guaranteeing a primitive g with f(g) a k-th
// power, sieve parameters, and the primorial table used to prune the
// remaining cases for k = 2.

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "primpow/ffield.hpp"

namespace primpow::bounds {

/// max(e^(e^3), (2k)^6).
[[nodiscard]] double theorem_a_threshold(u64 k);

/// q - 2 k W(q-1) sqrt(q) > 0. Requires k >= 2, k | q-1, q >= 5.
[[nodiscard]] bool theorem_a_certificate(const Field& field, u64 k);

/// phi(q-1)/(k(q-1)) * (q - 2 k W(q-1) sqrt(q)), the lower bound on N(q-1, k).
[[nodiscard]] double theorem_a_lower_bound(const Field& field, u64 k);

/// 4 k^2 w_t^2 (2 + (s-1)/delta)^2. Throws DomainError for delta <= 0.
[[nodiscard]] double theorem_b_bound(u64 k, u64 w_t, u64 s, double delta);

/// "q > bound", evaluated as q >= floor(bound) + 1.
[[nodiscard]] bool exceeds(u64 q, double bound);

/// 1 - sum of 1/P_i over the s largest of the first omega primes.
[[nodiscard]] double worst_case_delta(unsigned omega, unsigned s);

/// Product of the first omega primes, 1 <= omega <= 15.
[[nodiscard]] u64 primorial(unsigned omega);

struct SieveProfile {
  u64 t = 1;
  std::vector<u64> sieve_primes;  // primes dividing q-1 but not t
  u64 s = 0;
  double delta = 1.0;
  u64 w_t = 1;

  [[nodiscard]] bool usable() const { return s >= 1 && delta > 0.0; }
};

/// Throws DomainError unless t | q-1 and Rad(t) < Rad(q-1).
[[nodiscard]] SieveProfile sieve_profile_for(const Field& field, u64 t);
[[nodiscard]] SieveProfile sieve_profile_for(u64 q_minus_1, u64 t);

struct Table1Cell {
  unsigned s = 0;
  std::optional<double> computed;   // absent when the sieve is inapplicable (delta <= 0)
  std::optional<u64> published;     // absent where the published table is blank
  bool closed = false;              // primorial(omega) > computed bound
  bool match = false;               // |computed - published| < 1
};

struct Table1Row {
  unsigned omega = 0;
  u64 primorial = 0;
  u64 published_primorial = 0;
  std::array<std::optional<Table1Cell>, 3> cells;  // s = 1, 2, 3; empty when s > omega
};

/// Rows omega = 1..9.
[[nodiscard]] std::vector<Table1Row> table1_report(u64 k);

/// Published values (omega, s) -> bound, 0 where blank; index [omega-1][s-1].
[[nodiscard]] const std::array<std::array<u64, 3>, 9>& published_table1();
[[nodiscard]] const std::array<u64, 9>& published_primorials();

}  // namespace primpow::bounds
