#pragma once

// Brute-force reference computations for the unit tests. These use only
// field addition/multiplication and plain enumeration, never the library's
// exponent-based predicates or character tables.

#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "primpow/ffield.hpp"

namespace oracle {

using primpow::Field;
using primpow::FieldElement;
using primpow::QuadraticPoly;
using u64 = std::uint64_t;

inline std::vector<u64> divisors(u64 n) {
  std::vector<u64> out;
  for (u64 d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline bool squarefree(u64 n) {
  for (u64 d = 2; d * d <= n; ++d)
    if (n % (d * d) == 0) return false;
  return true;
}

inline int mobius(u64 n) {
  if (!squarefree(n)) return 0;
  int sign = 1;
  for (u64 d = 2; d <= n; ++d)
    if (n % d == 0 && is_prime(d)) sign = -sign;
  return sign;
}

inline u64 phi(u64 n) {
  u64 c = 0;
  for (u64 i = 1; i <= n; ++i)
    if (std::gcd(i, n) == 1) ++c;
  return c;
}

inline u64 order(const Field& f, FieldElement x) {
  FieldElement y = x;
  u64 o = 1;
  while (y != f.one()) {
    y = f.mul(y, x);
    ++o;
  }
  return o;
}

inline std::set<std::uint32_t> kth_powers(const Field& f, u64 k) {
  std::set<std::uint32_t> out;
  for (u64 i = 1; i < f.order(); ++i) {
    FieldElement y = f.one();
    for (u64 j = 0; j < k; ++j) y = f.mul(y, f.at(i));
    out.insert(y.value);
  }
  return out;
}

// x = y^d with d | t, d > 1 has no solution, and x != 0.
inline bool t_free(const Field& f, FieldElement x, u64 t) {
  if (x.is_zero()) return false;
  for (u64 d : divisors(t)) {
    if (d == 1) continue;
    if (kth_powers(f, d).contains(x.value)) return false;
  }
  return true;
}

inline FieldElement eval(const Field& f, const QuadraticPoly& p, FieldElement x) {
  return f.add(f.add(f.mul(p.a, f.mul(x, x)), f.mul(p.b, x)), p.c);
}

// |{x : x t-free, f(x) a nonzero k-th power}|.
inline u64 count(const Field& f, u64 t, u64 k, const QuadraticPoly& p) {
  const auto powers = kth_powers(f, k);
  u64 n = 0;
  for (u64 i = 1; i < f.order(); ++i) {
    const FieldElement x = f.at(i);
    if (t_free(f, x, t) && powers.contains(eval(f, p, x).value)) ++n;
  }
  return n;
}

}  // namespace oracle
