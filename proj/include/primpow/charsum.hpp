#pragma once

/**
 * @file charsum.hpp
 * @brief Multiplicative characters of F_q and the sums built from them.
 *
 * A character is stored as an exponent e in [0, q-2]: chi(g0^j) = zeta^(j e)
 * with g0 the field's canonical generator and zeta = exp(2 pi i / (q-1)).
 * chi(0) = 0 for every chi, including the trivial one. Evaluation goes
 * through a CharacterGroup, which owns the discrete-log table and the table
 * of (q-1)-th roots of unity.
 */

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "primpow/counting.hpp"
#include "primpow/ffield.hpp"

namespace primpow::charsum {

using Complex = std::complex<double>;

inline constexpr u64 kMaxTableOrder = u64{1} << 20;
/// Largest q accepted by n_via_characters.
inline constexpr u64 kMaxCharacterSumOrder = u64{1} << 16;

struct Character {
  u64 exponent = 0;
  u64 group_order = 1;  // q - 1

  /// (q-1) / gcd(q-1, exponent).
  [[nodiscard]] u64 order() const;
  [[nodiscard]] bool is_trivial() const { return exponent % group_order == 0; }
  /// chi^i.
  [[nodiscard]] Character power(u64 i) const;

  friend bool operator==(const Character&, const Character&) = default;
};

class CharacterGroup {
 public:
  /// Throws ResourceError when q exceeds kMaxTableOrder.
  explicit CharacterGroup(const Field& field);

  [[nodiscard]] const Field& field() const { return *field_; }
  [[nodiscard]] u64 group_order() const { return order_ - 1; }

  /// j with g0^j = x; x must be nonzero.
  [[nodiscard]] u64 dlog(FieldElement x) const;
  /// dlog for every packed element; entry 0 is unused.
  [[nodiscard]] const std::vector<std::uint32_t>& dlog_table() const { return dlog_; }
  /// zeta^j.
  [[nodiscard]] Complex root_of_unity(u64 j) const { return roots_[j % roots_.size()]; }

  [[nodiscard]] Character trivial() const { return {0, group_order()}; }
  /// The canonical character of order k, exponent (q-1)/k.
  [[nodiscard]] Character chi_k(u64 k) const;
  /// The phi(d) characters of exact order d, exponents (q-1)/d * r for r
  /// coprime to d, ascending r. Throws DomainError unless d | q-1.
  [[nodiscard]] std::vector<Character> characters_of_order(u64 d) const;

  [[nodiscard]] Complex eval(const Character& chi, FieldElement x) const;

 private:
  const Field* field_;
  u64 order_;
  std::vector<std::uint32_t> dlog_;
  std::vector<Complex> roots_;
};

/// S_i(chi) = sum over x of chi(x) chi_k^i(f(x)).
[[nodiscard]] Complex s_sum(const CharacterGroup& group, const Character& chi, u64 i, u64 k,
                            const QuadraticPoly& f);

/// N(t, k) from the character expansion over square-free d | t and i < k.
/// Throws NumericError when the result is not an integer to within 1e-6 q,
/// and ResourceError when q > kMaxCharacterSumOrder.
[[nodiscard]] u64 n_via_characters(const CharacterGroup& group, const counting::CountQuery& query);

/// The right-hand side of N(pt, k) - (1 - 1/p) N(t, k) written as a sum over
/// characters of order p d, d | t square-free. Requires p prime, p | q-1, p not dividing t.
[[nodiscard]] Complex sieve_difference_via_characters(const CharacterGroup& group, u64 p, u64 t, u64 k,
                                                      const QuadraticPoly& f);

/// The t-free indicator expanded in characters, evaluated at x.
[[nodiscard]] Complex t_free_indicator(const CharacterGroup& group, u64 t, FieldElement x);
/// The k-th power indicator (1/k) sum_i chi_k^i(x).
[[nodiscard]] Complex kth_power_indicator(const CharacterGroup& group, u64 k, FieldElement x);

struct WeilCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool ok = false;
};

/// |sum_x chi(a f(x))| against (r-1) sqrt(q) for a monic f of degree 1 or 2
/// (coefficients low-to-high). r is derived from the discriminant. Throws
/// DomainError for trivial chi, unsupported degree, a non-monic f, or an f that
/// is an m-th power (m = order of chi).
[[nodiscard]] WeilCheck weil_check(const CharacterGroup& group, const Character& chi,
                                   std::span<const FieldElement> monic, FieldElement a);

/// Any-degree variant. The caller asserts that f is not an m-th power and
/// supplies r, the number of distinct roots in the algebraic closure.
[[nodiscard]] WeilCheck weil_check(const CharacterGroup& group, const Character& chi,
                                   std::span<const FieldElement> monic, FieldElement a, unsigned distinct_roots);

}  // namespace primpow::charsum
