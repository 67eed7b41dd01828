#include "primpow/charsum.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "primpow/errors.hpp"

namespace primpow::charsum {

u64 Character::order() const { return group_order / arith::gcd(group_order, exponent % group_order); }

Character Character::power(u64 i) const {
  return {static_cast<u64>((static_cast<unsigned __int128>(exponent) * i) % group_order), group_order};
}

CharacterGroup::CharacterGroup(const Field& field) : field_(&field), order_(field.order()) {
  if (order_ > kMaxTableOrder)
    throw ResourceError("character tables need q <= 2^20, got q = " + std::to_string(order_));
  const u64 m = order_ - 1;
  dlog_.assign(order_, 0);
  FieldElement power = field.one();
  for (u64 j = 0; j < m; ++j) {
    dlog_[power.value] = static_cast<std::uint32_t>(j);
    power = field.mul(power, field.generator());
  }
  roots_.resize(m);
  for (u64 j = 0; j < m; ++j) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(m);
    roots_[j] = {std::cos(angle), std::sin(angle)};
  }
}

u64 CharacterGroup::dlog(FieldElement x) const {
  field_->check(x);
  if (x.is_zero()) throw DomainError("discrete log of zero");
  return dlog_[x.value];
}

Character CharacterGroup::chi_k(u64 k) const {
  if (k == 0 || group_order() % k != 0)
    throw DomainError("k = " + std::to_string(k) + " does not divide q-1 = " + std::to_string(group_order()));
  return {group_order() / k, group_order()};
}

std::vector<Character> CharacterGroup::characters_of_order(u64 d) const {
  const u64 m = group_order();
  if (d == 0 || m % d != 0)
    throw DomainError("d = " + std::to_string(d) + " does not divide q-1 = " + std::to_string(m));
  std::vector<Character> out;
  for (u64 r = 1; r <= d; ++r) {
    if (arith::gcd(r, d) != 1) continue;
    out.push_back({(m / d * r) % m, m});
  }
  return out;
}

Complex CharacterGroup::eval(const Character& chi, FieldElement x) const {
  field_->check(x);
  if (x.is_zero()) return {0.0, 0.0};
  const u64 m = group_order();
  return roots_[arith::mul_mod(dlog_[x.value], chi.exponent % m, m)];
}

Complex s_sum(const CharacterGroup& group, const Character& chi, u64 i, u64 k, const QuadraticPoly& f) {
  const Field& field = group.field();
  const Character chi_ki = group.chi_k(k).power(i);
  Complex sum{0.0, 0.0};
  for (u64 x = 0; x < field.order(); ++x) {
    const FieldElement e = field.at(x);
    sum += group.eval(chi, e) * group.eval(chi_ki, eval_quadratic(field, f, e));
  }
  return sum;
}

namespace {

// dlog(x), dlog(f(x)) for every x with x != 0 and f(x) != 0; all other x
// contribute zero to every S_i(chi).
struct LogPairs {
  std::vector<u64> x;
  std::vector<u64> fx;
};

LogPairs log_pairs(const CharacterGroup& group, const QuadraticPoly& f) {
  const Field& field = group.field();
  LogPairs out;
  for (u64 i = 1; i < field.order(); ++i) {
    const FieldElement v = eval_quadratic(field, f, field.at(i));
    if (v.is_zero()) continue;
    out.x.push_back(group.dlog_table()[i]);
    out.fx.push_back(group.dlog_table()[v.value]);
  }
  return out;
}

Complex s_sum_fast(const CharacterGroup& group, const LogPairs& logs, u64 chi_exponent, u64 fx_exponent) {
  const u64 m = group.group_order();
  Complex sum{0.0, 0.0};
  for (std::size_t j = 0; j < logs.x.size(); ++j)
    sum += group.root_of_unity((chi_exponent * logs.x[j] + fx_exponent * logs.fx[j]) % m);
  return sum;
}

void check_divides(u64 d, u64 m, const char* what) {
  if (d == 0 || m % d != 0)
    throw DomainError(std::string(what) + " = " + std::to_string(d) + " does not divide q-1 = " + std::to_string(m));
}

}  // namespace

u64 n_via_characters(const CharacterGroup& group, const counting::CountQuery& query) {
  const Field& field = group.field();
  if (field.order() > kMaxCharacterSumOrder)
    throw ResourceError("character expansion needs q <= 2^16, got q = " + std::to_string(field.order()));
  counting::validate(field, query);
  const u64 m = group.group_order();
  const LogPairs logs = log_pairs(group, query.f);

  const arith::Factorization tf = arith::factorize(query.t);
  Complex total{0.0, 0.0};
  for (u64 i = 0; i < query.k; ++i) {
    const u64 fx_exponent = m / query.k * i % m;
    for (u64 d : arith::squarefree_divisors(tf)) {
      const arith::Factorization df = arith::factorize(d);
      Complex inner{0.0, 0.0};
      for (const Character& chi : group.characters_of_order(d)) inner += s_sum_fast(group, logs, chi.exponent, fx_exponent);
      total += inner * (static_cast<double>(arith::mobius(df)) / static_cast<double>(arith::euler_phi(df)));
    }
  }
  total *= static_cast<double>(arith::euler_phi(tf)) / static_cast<double>(query.k * query.t);

  const double rounded = std::round(total.real());
  const double tolerance = 1e-6 * static_cast<double>(field.order());
  if (std::abs(total.imag()) > tolerance || std::abs(total.real() - rounded) > tolerance || rounded < -0.5)
    throw NumericError("character expansion of N(" + std::to_string(query.t) + "," + std::to_string(query.k) +
                       ") over F_" + std::to_string(field.order()) + " is not integral: " +
                       std::to_string(total.real()) + " + " + std::to_string(total.imag()) + "i");
  return static_cast<u64>(rounded);
}

Complex sieve_difference_via_characters(const CharacterGroup& group, u64 p, u64 t, u64 k, const QuadraticPoly& f) {
  const u64 m = group.group_order();
  check_divides(t, m, "t");
  check_divides(k, m, "k");
  if (!arith::is_prime(p) || m % p != 0 || t % p == 0)
    throw DomainError("p must be a prime dividing q-1 but not t");
  const LogPairs logs = log_pairs(group, f);
  Complex total{0.0, 0.0};
  for (u64 i = 0; i < k; ++i) {
    const u64 fx_exponent = m / k * i % m;
    for (u64 d : arith::squarefree_divisors(t)) {
      const arith::Factorization pdf = arith::factorize(p * d);
      Complex inner{0.0, 0.0};
      for (const Character& chi : group.characters_of_order(p * d))
        inner += s_sum_fast(group, logs, chi.exponent, fx_exponent);
      total += inner * (static_cast<double>(arith::mobius(pdf)) / static_cast<double>(arith::euler_phi(pdf)));
    }
  }
  const u64 pt = p * t;
  return total * (static_cast<double>(arith::euler_phi(pt)) / static_cast<double>(k * pt));
}

Complex t_free_indicator(const CharacterGroup& group, u64 t, FieldElement x) {
  check_divides(t, group.group_order(), "t");
  const arith::Factorization tf = arith::factorize(t);
  Complex total{0.0, 0.0};
  for (u64 d : arith::squarefree_divisors(tf)) {
    const arith::Factorization df = arith::factorize(d);
    Complex inner{0.0, 0.0};
    for (const Character& chi : group.characters_of_order(d)) inner += group.eval(chi, x);
    total += inner * (static_cast<double>(arith::mobius(df)) / static_cast<double>(arith::euler_phi(df)));
  }
  return total * (static_cast<double>(arith::euler_phi(tf)) / static_cast<double>(t));
}

Complex kth_power_indicator(const CharacterGroup& group, u64 k, FieldElement x) {
  const Character chi = group.chi_k(k);
  Complex total{0.0, 0.0};
  for (u64 i = 0; i < k; ++i) total += group.eval(chi.power(i), x);
  return total / static_cast<double>(k);
}

namespace {

WeilCheck weil_sum(const CharacterGroup& group, const Character& chi, std::span<const FieldElement> monic,
                   FieldElement a, unsigned distinct_roots) {
  const Field& field = group.field();
  Complex sum{0.0, 0.0};
  for (u64 i = 0; i < field.order(); ++i) {
    const FieldElement x = field.at(i);
    FieldElement value = field.zero();
    for (std::size_t j = monic.size(); j-- > 0;) value = field.add(field.mul(value, x), monic[j]);
    sum += group.eval(chi, field.mul(a, value));
  }
  WeilCheck out;
  out.lhs = std::abs(sum);
  out.rhs = (static_cast<double>(distinct_roots) - 1.0) * std::sqrt(static_cast<double>(field.order()));
  out.ok = out.lhs <= out.rhs + 1e-9;
  return out;
}

void check_weil_inputs(const CharacterGroup& group, const Character& chi, std::span<const FieldElement> monic) {
  if (chi.is_trivial()) throw DomainError("Weil bound requires a nontrivial character");
  if (monic.size() < 2 || monic.back() != group.field().one())
    throw DomainError("Weil check requires a monic polynomial of degree >= 1");
  for (FieldElement c : monic) group.field().check(c);
}

}  // namespace

WeilCheck weil_check(const CharacterGroup& group, const Character& chi, std::span<const FieldElement> monic,
                     FieldElement a) {
  check_weil_inputs(group, chi, monic);
  if (monic.size() > 3) throw DomainError("Weil check derives r only for degree <= 2; pass distinct_roots explicitly");
  unsigned roots = 1;
  if (monic.size() == 3) {
    const bool repeated = discriminant(group.field(), monic[2], monic[1], monic[0]).is_zero();
    // A repeated-root quadratic is a square, hence an m-th power exactly when m = 2.
    if (repeated && chi.order() == 2) throw DomainError("f is a square; Weil bound does not apply to the quadratic character");
    roots = repeated ? 1 : 2;
  }
  return weil_sum(group, chi, monic, a, roots);
}

WeilCheck weil_check(const CharacterGroup& group, const Character& chi, std::span<const FieldElement> monic,
                     FieldElement a, unsigned distinct_roots) {
  check_weil_inputs(group, chi, monic);
  return weil_sum(group, chi, monic, a, distinct_roots);
}

}  // namespace primpow::charsum
