#include "primpow/ffield.hpp"

#include <array>
#include <charconv>
#include <string>

#include "primpow/errors.hpp"

namespace primpow {

namespace {

// Dense polynomials over F_p, low-to-high, no trailing zeros.
using Poly = std::vector<u64>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_rem(Poly a, const Poly& m, u64 p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const u64 lead_inv = arith::pow_mod(m.back(), p - 2, p);
  while (a.size() > dm) {
    const u64 c = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) a[shift + i] = (a[shift + i] + (p - c) * m[i]) % p;
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, u64 p) {
  if (a.empty() || b.empty()) return {};
  Poly prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  return poly_rem(std::move(prod), m, p);
}

Poly poly_powmod(Poly base, u64 e, const Poly& m, u64 p) {
  Poly result{1};
  base = poly_rem(std::move(base), m, p);
  while (e > 0) {
    if (e & 1) result = poly_mulmod(result, base, m, p);
    base = poly_mulmod(base, base, m, p);
    e >>= 1;
  }
  return poly_rem(std::move(result), m, p);
}

Poly poly_gcd(Poly a, Poly b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Poly poly_sub(Poly a, const Poly& b, u64 p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

u64 checked_order(u64 p, unsigned n) {
  if (n < 1 || n > kMaxDegree) throw DomainError("field degree must lie in [1, 31]");
  if (!arith::is_prime(p)) throw DomainError("field characteristic " + std::to_string(p) + " is not prime");
  u64 q = 1;
  for (unsigned i = 0; i < n; ++i) {
    if (q > kMaxFieldOrder / p)
      throw DomainError("field order " + std::to_string(p) + "^" + std::to_string(n) + " exceeds 2^31");
    q *= p;
  }
  return q;
}

}  // namespace

bool is_irreducible(u64 p, std::span<const std::uint32_t> monic) {
  if (monic.size() < 2 || monic.back() != 1) throw DomainError("is_irreducible: modulus must be monic of degree >= 1");
  const unsigned n = static_cast<unsigned>(monic.size() - 1);
  if (n == 1) return true;
  Poly m(monic.begin(), monic.end());
  for (auto& c : m) c %= p;
  if (m[0] == 0) return false;

  const Poly x{0, 1};
  // x^(p^i) mod m for i = 0..n.
  std::vector<Poly> frob{poly_rem(x, m, p)};
  for (unsigned i = 1; i <= n; ++i) frob.push_back(poly_powmod(frob.back(), p, m, p));
  if (poly_sub(frob[n], x, p) != Poly{}) return false;

  for (const auto& r : arith::factorize(n).factors) {
    const Poly g = poly_gcd(m, poly_sub(frob[n / r.prime], x, p), p);
    if (g.size() != 1) return false;
  }
  return true;
}

Field::Field(u64 p, unsigned n, std::vector<std::uint32_t> modulus)
    : p_(p), n_(n), q_(checked_order(p, n)), modulus_(std::move(modulus)), qm1_(arith::factorize(q_ - 1)) {
  place_.resize(n_);
  u64 v = 1;
  for (unsigned i = 0; i < n_; ++i, v *= p_) place_[i] = v;
  if (q_ == 2) {
    generator_ = one();
    return;
  }
  for (u64 i = 1; i < q_; ++i) {
    if (is_primitive(at(i))) {
      generator_ = at(i);
      break;
    }
  }
}

Field Field::build(u64 p, unsigned n) {
  const u64 q = checked_order(p, n);
  (void)q;
  if (n == 1) return Field(p, 1, {});
  // Candidates c_0..c_{n-1}, with c_0 varying slowest. Every candidate with
  // c_0 = 0 is divisible by T, so the search starts at c_0 = 1.
  std::vector<std::uint32_t> candidate(n + 1, 0);
  candidate[0] = 1;
  candidate[n] = 1;
  for (;;) {
    if (is_irreducible(p, candidate)) return Field(p, n, candidate);
    int i = static_cast<int>(n) - 1;
    while (i >= 0 && candidate[i] == p - 1) candidate[i--] = 0;
    if (i < 0) break;
    ++candidate[i];
  }
  throw DomainError("no irreducible polynomial found");  // unreachable for valid p, n
}

Field Field::with_modulus(u64 p, std::vector<std::uint32_t> modulus) {
  if (!arith::is_prime(p)) throw DomainError("field characteristic " + std::to_string(p) + " is not prime");
  if (modulus.empty() || (modulus.size() == 2 && modulus[0] == 0 && modulus[1] == 1)) {
    checked_order(p, 1);
    return Field(p, 1, {});
  }
  for (auto c : modulus)
    if (c >= p) throw DomainError("modulus coefficient out of range [0, p-1]");
  if (modulus.size() < 2 || modulus.back() != 1) throw DomainError("modulus must be monic of degree >= 1");
  const auto n = static_cast<unsigned>(modulus.size() - 1);
  checked_order(p, n);
  if (!is_irreducible(p, modulus)) throw DomainError("modulus is not irreducible over F_" + std::to_string(p));
  if (n == 1) return Field(p, 1, {});
  return Field(p, n, std::move(modulus));
}

Field Field::parse(std::string_view description) {
  auto fail = [&]() -> Field { throw UsageError("malformed field description '" + std::string(description) + "'"); };
  const auto caret = description.find('^');
  const auto colon = description.find(':');
  if (caret == std::string_view::npos || colon == std::string_view::npos || colon < caret) return fail();
  auto number = [&](std::string_view s) {
    u64 v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) fail();
    return v;
  };
  const u64 p = number(description.substr(0, caret));
  const u64 n = number(description.substr(caret + 1, colon - caret - 1));
  std::vector<std::uint32_t> modulus;
  std::string_view rest = description.substr(colon + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    modulus.push_back(static_cast<std::uint32_t>(number(rest.substr(0, comma))));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  if (n == 1 && !modulus.empty()) return fail();
  if (n > 1 && modulus.size() != n + 1) return fail();
  return with_modulus(p, std::move(modulus));
}

std::string Field::description() const {
  std::string out = std::to_string(p_) + "^" + std::to_string(n_) + ":";
  for (std::size_t i = 0; i < modulus_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(modulus_[i]);
  }
  return out;
}

void Field::check(FieldElement x) const {
  if (!contains(x))
    throw UsageError("element " + std::to_string(x.value) + " does not belong to F_" + std::to_string(q_));
}

void Field::check_divides(u64 d, const char* what) const {
  if (d == 0 || (q_ - 1) % d != 0)
    throw DomainError(std::string(what) + " = " + std::to_string(d) + " does not divide q-1 = " +
                      std::to_string(q_ - 1));
}

FieldElement Field::at(u64 index) const {
  if (index >= q_) throw UsageError("element index " + std::to_string(index) + " out of range for F_" + std::to_string(q_));
  return {static_cast<std::uint32_t>(index)};
}

FieldElement Field::from_integer(std::int64_t v) const {
  const auto sp = static_cast<std::int64_t>(p_);
  return {static_cast<std::uint32_t>(((v % sp) + sp) % sp)};
}

FieldElement Field::from_coeffs(std::span<const std::int64_t> coeffs) const {
  if (coeffs.size() > n_)
    throw UsageError("too many coefficients (" + std::to_string(coeffs.size()) + ") for degree " + std::to_string(n_));
  u64 v = 0;
  const auto sp = static_cast<std::int64_t>(p_);
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    v += static_cast<u64>(((coeffs[i] % sp) + sp) % sp) * place_[i];
  return {static_cast<std::uint32_t>(v)};
}

std::vector<std::uint32_t> Field::coeffs(FieldElement x) const {
  check(x);
  std::vector<std::uint32_t> out(n_);
  u64 v = x.value;
  for (unsigned i = 0; i < n_; ++i, v /= p_) out[i] = static_cast<std::uint32_t>(v % p_);
  return out;
}

void Field::unpack(FieldElement x, std::uint64_t* digits) const {
  u64 v = x.value;
  for (unsigned i = 0; i < n_; ++i, v /= p_) digits[i] = v % p_;
}

FieldElement Field::pack(const std::uint64_t* digits) const {
  u64 v = 0;
  for (unsigned i = 0; i < n_; ++i) v += digits[i] * place_[i];
  return {static_cast<std::uint32_t>(v)};
}

FieldElement Field::add(FieldElement x, FieldElement y) const {
  check(x);
  check(y);
  if (n_ == 1) return {static_cast<std::uint32_t>((u64{x.value} + y.value) % p_)};
  std::array<u64, kMaxDegree> a{}, b{};
  unpack(x, a.data());
  unpack(y, b.data());
  for (unsigned i = 0; i < n_; ++i) a[i] = (a[i] + b[i]) % p_;
  return pack(a.data());
}

FieldElement Field::neg(FieldElement x) const {
  check(x);
  if (n_ == 1) return {static_cast<std::uint32_t>((p_ - x.value) % p_)};
  std::array<u64, kMaxDegree> a{};
  unpack(x, a.data());
  for (unsigned i = 0; i < n_; ++i) a[i] = (p_ - a[i]) % p_;
  return pack(a.data());
}

FieldElement Field::sub(FieldElement x, FieldElement y) const { return add(x, neg(y)); }

FieldElement Field::mul(FieldElement x, FieldElement y) const {
  check(x);
  check(y);
  if (n_ == 1) return {static_cast<std::uint32_t>((u64{x.value} * y.value) % p_)};
  std::array<u64, kMaxDegree> a{}, b{};
  std::array<u64, 2 * kMaxDegree> prod{};
  unpack(x, a.data());
  unpack(y, b.data());
  // p < 2^16 whenever n >= 2, so n * (p-1)^2 fits comfortably.
  for (unsigned i = 0; i < n_; ++i) {
    if (a[i] == 0) continue;
    for (unsigned j = 0; j < n_; ++j) prod[i + j] += a[i] * b[j];
  }
  for (unsigned d = 0; d + 1 < 2 * n_; ++d) prod[d] %= p_;
  for (unsigned d = 2 * n_ - 2; d >= n_; --d) {
    const u64 c = prod[d] % p_;
    if (c == 0) continue;
    const u64 minus_c = p_ - c;
    for (unsigned i = 0; i < n_; ++i) prod[d - n_ + i] = (prod[d - n_ + i] + minus_c * modulus_[i]) % p_;
  }
  return pack(prod.data());
}

FieldElement Field::pow(FieldElement x, u64 e) const {
  check(x);
  if (n_ == 1) return {static_cast<std::uint32_t>(arith::pow_mod(x.value, e, p_) % p_)};
  FieldElement result = one();
  while (e > 0) {
    if (e & 1) result = mul(result, x);
    x = mul(x, x);
    e >>= 1;
  }
  return result;
}

FieldElement Field::inv(FieldElement x) const {
  check(x);
  if (x.is_zero()) throw DomainError("inverse of zero");
  return pow(x, q_ - 2);
}

u64 Field::element_order(FieldElement x) const {
  check(x);
  if (x.is_zero()) throw DomainError("order of zero is undefined");
  u64 order = q_ - 1;
  for (const auto& pf : qm1_.factors) {
    while (order % pf.prime == 0 && pow(x, order / pf.prime) == one()) order /= pf.prime;
  }
  return order;
}

bool Field::is_primitive(FieldElement x) const {
  check(x);
  if (x.is_zero()) return false;
  for (const auto& pf : qm1_.factors)
    if (pow(x, (q_ - 1) / pf.prime) == one()) return false;
  return true;
}

bool Field::is_kth_power(FieldElement x, u64 k) const {
  check_divides(k, "k");
  check(x);
  if (x.is_zero()) return false;
  return pow(x, (q_ - 1) / k) == one();
}

bool Field::is_t_free(FieldElement x, const arith::Factorization& t) const {
  check_divides(t.n, "t");
  check(x);
  if (x.is_zero()) return false;
  for (const auto& pf : t.factors)
    if (pow(x, (q_ - 1) / pf.prime) == one()) return false;
  return true;
}

bool Field::is_t_free(FieldElement x, u64 t) const {
  check_divides(t, "t");
  return is_t_free(x, arith::factorize(t));
}

FieldElement discriminant(const Field& field, FieldElement a, FieldElement b, FieldElement c) {
  const FieldElement four_ac = field.mul(field.from_integer(4), field.mul(a, c));
  return field.sub(field.mul(b, b), four_ac);
}

QuadraticPoly QuadraticPoly::make(const Field& field, FieldElement a, FieldElement b, FieldElement c) {
  field.check(a);
  field.check(b);
  field.check(c);
  if (a.is_zero()) throw DomainError("quadratic leading coefficient must be nonzero");
  if (discriminant(field, a, b, c).is_zero()) throw DomainError("quadratic discriminant b^2-4ac vanishes");
  return {a, b, c};
}

}  // namespace primpow
