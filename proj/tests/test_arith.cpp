#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "primpow/arith.hpp"
#include "primpow/errors.hpp"

using namespace primpow;
using namespace primpow::arith;

TEST_CASE("factorize small and primorial inputs") {
  CHECK(factorize(1).factors.empty());
  CHECK(factorize(12).factors == std::vector<PrimeFactor>{{2, 2}, {3, 1}});
  const auto f = factorize(6469693230ull);
  CHECK(f.primes() == std::vector<u64>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
  for (const auto& pf : f.factors) CHECK(pf.exponent == 1);
}

TEST_CASE("factorize rejects out-of-range input") {
  CHECK_THROWS_AS((void)factorize(0), DomainError);
  CHECK_THROWS_AS((void)factorize(kMaxInput + 1), DomainError);
  CHECK_NOTHROW((void)factorize(kMaxInput));
}

TEST_CASE("factorize needs Pollard rho for large semiprimes") {
  const u64 n = 1000000007ull * 998244353ull;
  CHECK(factorize(n).factors == std::vector<PrimeFactor>{{998244353, 1}, {1000000007, 1}});
  const u64 cube = 1000003ull * 1000003ull * 1000033ull;
  CHECK(factorize(cube).factors == std::vector<PrimeFactor>{{1000003, 2}, {1000033, 1}});
}

TEST_CASE("factorize reconstructs random 63-bit inputs") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<u64> dist(1, kMaxInput);
  for (int i = 0; i < 200; ++i) {
    const u64 n = dist(rng);
    const auto f = factorize(n);
    CHECK(f.reconstruct() == n);
    for (std::size_t j = 0; j < f.factors.size(); ++j) {
      CHECK(is_prime(f.factors[j].prime));
      if (j) CHECK(f.factors[j - 1].prime < f.factors[j].prime);
    }
  }
}

TEST_CASE("is_prime matches trial division") {
  for (u64 n = 0; n < 20000; ++n) CHECK(is_prime(n) == oracle::is_prime(n));
  CHECK(is_prime(18446744073709551557ull));           // largest 64-bit prime
  CHECK_FALSE(is_prime(3215031751ull));               // strong pseudoprime to bases 2,3,5,7
  CHECK_FALSE(is_prime(3825123056546413051ull));      // strong pseudoprime to the first nine primes
}

TEST_CASE("mobius, phi, radical, W") {
  CHECK(mobius(1) == 1);
  CHECK(mobius(4) == 0);
  CHECK(mobius(6) == 1);
  CHECK(euler_phi(1) == 1);
  CHECK(euler_phi(12) == 4);
  CHECK(euler_phi(8) == 4);
  CHECK(radical(1) == 1);
  CHECK(radical(12) == 6);
  CHECK(radical(8) == 2);
  CHECK(big_w(1) == 1);
  CHECK(big_w(12) == 4);
  CHECK(big_w(30) == 8);
}

TEST_CASE("square-free divisors") {
  CHECK(squarefree_divisors(1) == std::vector<u64>{1});
  CHECK(squarefree_divisors(12) == std::vector<u64>{1, 2, 3, 6});
  CHECK(squarefree_divisors(9) == std::vector<u64>{1, 3});
}

TEST_CASE("arithmetic functions agree with brute force up to 2000") {
  for (u64 n = 1; n <= 2000; ++n) {
    CAPTURE(n);
    CHECK(mobius(n) == oracle::mobius(n));
    CHECK(euler_phi(n) == oracle::phi(n));
    const auto all = oracle::divisors(n);
    CHECK(divisors(n) == all);
    std::vector<u64> sq;
    for (u64 d : all)
      if (oracle::squarefree(d)) sq.push_back(d);
    CHECK(squarefree_divisors(n) == sq);
    CHECK(big_w(n) == sq.size());
    u64 rad = 1;
    for (u64 d : all)
      if (oracle::is_prime(d)) rad *= d;
    CHECK(radical(n) == rad);
  }
}

TEST_CASE("divisor-sum identities up to 10^5") {
  for (u64 n = 1; n <= 100000; ++n) {
    const auto f = factorize(n);
    long long mu_sum = 0;
    u64 phi_sum = 0;
    for (u64 d : divisors(f)) {
      mu_sum += mobius(d);
      phi_sum += euler_phi(d);
    }
    REQUIRE(mu_sum == (n == 1 ? 1 : 0));
    REQUIRE(phi_sum == n);
    REQUIRE(squarefree_divisors(f).size() == (u64{1} << f.omega()));
  }
}

TEST_CASE("first primes") {
  CHECK(first_primes(1) == std::vector<u64>{2});
  CHECK(first_primes(4) == std::vector<u64>{2, 3, 5, 7});
  u64 product = 1;
  for (u64 p : first_primes(10)) product *= p;
  CHECK(product == 6469693230ull);
  CHECK(first_primes(64).back() == 311);
  CHECK_THROWS_AS((void)first_primes(0), DomainError);
  CHECK_THROWS_AS((void)first_primes(65), DomainError);
}

TEST_CASE("Robin bound") {
  CHECK(robin_holds(3));
  CHECK(robin_holds(6));
  CHECK(robin_holds(30030));
  CHECK_THROWS_AS((void)robin_holds(2), DomainError);
}

TEST_CASE("prime power recognition") {
  CHECK_FALSE(as_prime_power(1));
  CHECK(as_prime_power(2)->prime == 2);
  CHECK(as_prime_power(169)->exponent == 2);
  CHECK(as_prime_power(1u << 20)->exponent == 20);
  CHECK_FALSE(as_prime_power(12));
}
