#include "primpow/bounds.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "primpow/errors.hpp"

namespace primpow::bounds {

namespace {

constexpr std::array<std::array<u64, 3>, 9> kPublished{{
    {32, 0, 0},
    {128, 128, 0},
    {512, 265, 0},
    {2048, 901, 523},
    {0, 3384, 498},
    {0, 13114, 0},
    {0, 51725, 0},
    {0, 204828, 0},
    {0, 814305, 0},
}};

constexpr std::array<u64, 9> kPublishedPrimorials{2, 6, 30, 210, 2310, 30030, 510510, 9699690, 223092870};

}  // namespace

const std::array<std::array<u64, 3>, 9>& published_table1() { return kPublished; }
const std::array<u64, 9>& published_primorials() { return kPublishedPrimorials; }

double theorem_a_threshold(u64 k) {
  if (k < 2) throw DomainError("theorem_a_threshold requires k >= 2");
  const double ee3 = std::exp(std::exp(3.0));
  return std::max(ee3, std::pow(2.0 * static_cast<double>(k), 6.0));
}

namespace {

void check_certificate_inputs(const Field& field, u64 k) {
  const u64 q = field.order();
  if (k < 2 || (q - 1) % k != 0) throw DomainError("k must be >= 2 and divide q-1");
  if (q < 5) throw DomainError("certificate requires q >= 5");
}

double certificate_margin(const Field& field, u64 k) {
  const double q = static_cast<double>(field.order());
  const double w = static_cast<double>(arith::big_w(field.group_order_factors()));
  return q - 2.0 * static_cast<double>(k) * w * std::sqrt(q);
}

}  // namespace

bool theorem_a_certificate(const Field& field, u64 k) {
  check_certificate_inputs(field, k);
  return certificate_margin(field, k) > 0.0;
}

double theorem_a_lower_bound(const Field& field, u64 k) {
  check_certificate_inputs(field, k);
  const auto& qm1 = field.group_order_factors();
  return static_cast<double>(arith::euler_phi(qm1)) / (static_cast<double>(k) * static_cast<double>(qm1.n)) *
         certificate_margin(field, k);
}

double theorem_b_bound(u64 k, u64 w_t, u64 s, double delta) {
  if (k < 2 || w_t < 1 || s < 1) throw DomainError("theorem_b_bound requires k >= 2, w_t >= 1, s >= 1");
  if (!(delta > 0.0)) throw DomainError("sieve inapplicable: delta = " + std::to_string(delta) + " <= 0");
  const double kk = static_cast<double>(k);
  const double w = static_cast<double>(w_t);
  const double inner = 2.0 + (static_cast<double>(s) - 1.0) / delta;
  return 4.0 * kk * kk * w * w * inner * inner;
}

bool exceeds(u64 q, double bound) {
  if (bound < 0.0) return true;
  const double floor_plus_one = std::floor(bound) + 1.0;
  if (floor_plus_one >= 18446744073709551616.0) return false;
  return q >= static_cast<u64>(floor_plus_one);
}

double worst_case_delta(unsigned omega, unsigned s) {
  if (s < 1 || s > omega || omega > 64) throw DomainError("worst_case_delta requires 1 <= s <= omega <= 64");
  const auto primes = arith::first_primes(omega);
  double delta = 1.0;
  for (unsigned i = omega - s; i < omega; ++i) delta -= 1.0 / static_cast<double>(primes[i]);
  if (!(delta > 0.0))
    throw DomainError("worst-case delta for omega = " + std::to_string(omega) + ", s = " + std::to_string(s) +
                      " is not positive");
  return delta;
}

u64 primorial(unsigned omega) {
  if (omega < 1 || omega > 15) throw DomainError("primorial requires 1 <= omega <= 15");
  u64 out = 1;
  for (u64 p : arith::first_primes(omega)) out *= p;
  return out;
}

SieveProfile sieve_profile_for(u64 q_minus_1, u64 t) {
  if (t == 0 || q_minus_1 % t != 0) throw DomainError("t must divide q-1");
  const arith::Factorization qf = arith::factorize(q_minus_1);
  const arith::Factorization tf = arith::factorize(t);
  if (arith::radical(tf) >= arith::radical(qf)) throw DomainError("sieve requires Rad(t) < Rad(q-1)");
  SieveProfile profile;
  profile.t = t;
  for (u64 p : qf.primes())
    if (t % p != 0) profile.sieve_primes.push_back(p);
  profile.s = profile.sieve_primes.size();
  for (u64 p : profile.sieve_primes) profile.delta -= 1.0 / static_cast<double>(p);
  profile.w_t = arith::big_w(tf);
  return profile;
}

SieveProfile sieve_profile_for(const Field& field, u64 t) { return sieve_profile_for(field.order() - 1, t); }

std::vector<Table1Row> table1_report(u64 k) {
  std::vector<Table1Row> rows;
  for (unsigned omega = 1; omega <= 9; ++omega) {
    Table1Row row;
    row.omega = omega;
    row.primorial = primorial(omega);
    row.published_primorial = kPublishedPrimorials[omega - 1];
    for (unsigned s = 1; s <= 3 && s <= omega; ++s) {
      Table1Cell cell;
      cell.s = s;
      if (const u64 v = kPublished[omega - 1][s - 1]; v != 0) cell.published = v;
      try {
        const double delta = worst_case_delta(omega, s);
        cell.computed = theorem_b_bound(k, u64{1} << (omega - s), s, delta);
        cell.closed = static_cast<double>(row.primorial) > *cell.computed;
      } catch (const DomainError&) {
        cell.computed.reset();
      }
      cell.match = cell.computed && cell.published &&
                   std::abs(*cell.computed - static_cast<double>(*cell.published)) < 1.0;
      row.cells[s - 1] = cell;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace primpow::bounds
