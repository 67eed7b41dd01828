#include "primpow/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "primpow/errors.hpp"

namespace primpow::arith {

namespace {

constexpr u64 kTrialLimit = 1'000'000;

const std::vector<u64>& small_primes() {
  static const std::vector<u64> primes = [] {
    std::vector<bool> composite(kTrialLimit + 1, false);
    std::vector<u64> out;
    for (u64 i = 2; i <= kTrialLimit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (u64 j = i * i; j <= kTrialLimit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

bool miller_rabin_round(u64 n, u64 d, unsigned r, u64 a) {
  u64 x = pow_mod(a % n, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned i = 1; i < r; ++i) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

// Brent's variant; n odd composite with no factor below kTrialLimit.
u64 pollard_rho(u64 n) {
  for (u64 c = 1;; ++c) {
    auto step = [&](u64 v) { return (mul_mod(v, v, n) + c) % n; };
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    u64 r = 1;
    constexpr u64 kBatch = 128;
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = step(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min(kBatch, r - k); ++i) {
          y = step(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = gcd(q, n);
        k += kBatch;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = step(ys);
        g = gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split_large(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  const u64 d = pollard_rho(n);
  split_large(d, out);
  split_large(n / d, out);
}

}  // namespace

u64 gcd(u64 a, u64 b) { return std::gcd(a, b); }

u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

u64 pow_mod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  unsigned r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  // These twelve bases are sufficient for n < 3.3e24.
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (!miller_rabin_round(n, d, r, a)) return false;
  }
  return true;
}

std::vector<u64> Factorization::primes() const {
  std::vector<u64> out;
  out.reserve(factors.size());
  for (const auto& f : factors) out.push_back(f.prime);
  return out;
}

u64 Factorization::reconstruct() const {
  u64 m = 1;
  for (const auto& f : factors)
    for (unsigned i = 0; i < f.exponent; ++i) m *= f.prime;
  return m;
}

Factorization factorize(u64 n) {
  if (n < 1 || n > kMaxInput)
    throw DomainError("factorize: n must lie in [1, 2^63-1], got " + std::to_string(n));
  Factorization result{n, {}};
  u64 rest = n;
  for (u64 p : small_primes()) {
    if (p * p > rest) break;
    if (rest % p != 0) continue;
    unsigned e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    result.factors.push_back({p, e});
  }
  if (rest == 1) return result;

  std::vector<u64> large;
  split_large(rest, large);
  std::sort(large.begin(), large.end());
  for (u64 p : large) {
    if (!result.factors.empty() && result.factors.back().prime == p)
      ++result.factors.back().exponent;
    else
      result.factors.push_back({p, 1});
  }
  return result;
}

int mobius(const Factorization& f) {
  for (const auto& pf : f.factors)
    if (pf.exponent > 1) return 0;
  return f.omega() % 2 == 0 ? 1 : -1;
}
int mobius(u64 n) { return mobius(factorize(n)); }

u64 euler_phi(const Factorization& f) {
  u64 phi = 1;
  for (const auto& pf : f.factors) {
    phi *= pf.prime - 1;
    for (unsigned i = 1; i < pf.exponent; ++i) phi *= pf.prime;
  }
  return phi;
}
u64 euler_phi(u64 n) { return euler_phi(factorize(n)); }

u64 radical(const Factorization& f) {
  u64 r = 1;
  for (const auto& pf : f.factors) r *= pf.prime;
  return r;
}
u64 radical(u64 n) { return radical(factorize(n)); }

u64 big_w(const Factorization& f) { return u64{1} << f.omega(); }
u64 big_w(u64 n) { return big_w(factorize(n)); }

std::vector<u64> squarefree_divisors(const Factorization& f) {
  std::vector<u64> out{1};
  for (const auto& pf : f.factors) {
    const std::size_t size = out.size();
    for (std::size_t i = 0; i < size; ++i) out.push_back(out[i] * pf.prime);
  }
  std::sort(out.begin(), out.end());
  return out;
}
std::vector<u64> squarefree_divisors(u64 n) { return squarefree_divisors(factorize(n)); }

std::vector<u64> divisors(const Factorization& f) {
  std::vector<u64> out{1};
  for (const auto& pf : f.factors) {
    const std::size_t size = out.size();
    u64 power = 1;
    for (unsigned e = 1; e <= pf.exponent; ++e) {
      power *= pf.prime;
      for (std::size_t i = 0; i < size; ++i) out.push_back(out[i] * power);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}
std::vector<u64> divisors(u64 n) { return divisors(factorize(n)); }

std::vector<u64> first_primes(unsigned s) {
  if (s < 1 || s > 64)
    throw DomainError("first_primes: s must lie in [1, 64], got " + std::to_string(s));
  const auto& primes = small_primes();
  return {primes.begin(), primes.begin() + s};
}

bool robin_holds(u64 n) {
  if (n < 3) throw DomainError("robin_holds: requires n >= 3, got " + std::to_string(n));
  const double ln = std::log(static_cast<double>(n));
  return static_cast<double>(factorize(n).omega()) <= 1.38402 * ln / std::log(ln);
}

std::optional<PrimePower> as_prime_power(u64 n) {
  if (n < 2) return std::nullopt;
  const Factorization f = factorize(n);
  if (f.omega() != 1) return std::nullopt;
  return PrimePower{f.factors[0].prime, f.factors[0].exponent};
}

}  // namespace primpow::arith
