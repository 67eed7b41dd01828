#pragma once

/**
 * @file ffield.hpp
 * @brief Finite fields F_{p^n} = F_p[T]/(m(T)) with q = p^n <= 2^31.
 *
 * An element is stored as its coefficient vector (c_0, ..., c_{n-1}) packed
 * into one base-p integer c_0 + c_1 p + ... + c_{n-1} p^{n-1}. The packing is
 * canonical, so equality is structural, and ascending packed values give the
 * canonical enumeration order of the field.
 *
 * A Field is immutable after construction and may be shared across threads.
 */

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "primpow/arith.hpp"

namespace primpow {

using u64 = std::uint64_t;

struct FieldElement {
  std::uint32_t value = 0;

  [[nodiscard]] bool is_zero() const { return value == 0; }
  friend auto operator<=>(const FieldElement&, const FieldElement&) = default;
};

inline constexpr u64 kMaxFieldOrder = u64{1} << 31;
inline constexpr unsigned kMaxDegree = 31;

/// True when the monic polynomial (coefficients low-to-high, leading 1 included)
/// is irreducible over F_p. Uses Rabin's test.
[[nodiscard]] bool is_irreducible(u64 p, std::span<const std::uint32_t> monic);

class Field {
 public:
  /// F_{p^n} with the smallest monic irreducible modulus, comparing candidate
  /// coefficient lists lexicographically from the constant term upward.
  static Field build(u64 p, unsigned n);

  /// F_{p^n} with a caller-chosen monic modulus (low-to-high, leading 1 included;
  /// an empty list or {0, 1} selects the prime field).
  static Field with_modulus(u64 p, std::vector<std::uint32_t> modulus);

  /// Parses the "p^n:c0,c1,...,cn" form produced by description().
  static Field parse(std::string_view description);

  [[nodiscard]] u64 characteristic() const { return p_; }
  [[nodiscard]] unsigned degree() const { return n_; }
  [[nodiscard]] u64 order() const { return q_; }
  /// Monic modulus, low-to-high; empty for prime fields.
  [[nodiscard]] const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  [[nodiscard]] const arith::Factorization& group_order_factors() const { return qm1_; }
  /// "p^n:modulus-coeffs-low-to-high", e.g. "3^2:1,0,1".
  [[nodiscard]] std::string description() const;

  [[nodiscard]] FieldElement zero() const { return {0}; }
  [[nodiscard]] FieldElement one() const { return {1}; }
  /// Element with the given packed index, 0 <= index < q.
  [[nodiscard]] FieldElement at(u64 index) const;
  /// Image of an integer under Z -> F_p -> F_q.
  [[nodiscard]] FieldElement from_integer(std::int64_t v) const;
  /// Element from up to n coefficients (low-to-high), each reduced mod p.
  [[nodiscard]] FieldElement from_coeffs(std::span<const std::int64_t> coeffs) const;
  [[nodiscard]] std::vector<std::uint32_t> coeffs(FieldElement x) const;
  [[nodiscard]] bool contains(FieldElement x) const { return x.value < q_; }

  [[nodiscard]] FieldElement add(FieldElement x, FieldElement y) const;
  [[nodiscard]] FieldElement sub(FieldElement x, FieldElement y) const;
  [[nodiscard]] FieldElement neg(FieldElement x) const;
  [[nodiscard]] FieldElement mul(FieldElement x, FieldElement y) const;
  /// Throws DomainError for x = 0.
  [[nodiscard]] FieldElement inv(FieldElement x) const;
  /// pow(0, 0) is 1.
  [[nodiscard]] FieldElement pow(FieldElement x, u64 e) const;

  /// Exact multiplicative order; throws DomainError for x = 0.
  [[nodiscard]] u64 element_order(FieldElement x) const;
  [[nodiscard]] bool is_primitive(FieldElement x) const;
  /// x != 0 and x^((q-1)/k) = 1. Throws DomainError unless k | q-1.
  [[nodiscard]] bool is_kth_power(FieldElement x, u64 k) const;
  /// x != 0 and x is not an r-th power for any prime r | t. Throws DomainError unless t | q-1.
  [[nodiscard]] bool is_t_free(FieldElement x, u64 t) const;
  [[nodiscard]] bool is_t_free(FieldElement x, const arith::Factorization& t) const;

  /// The canonical generator: the smallest primitive element in enumeration order.
  [[nodiscard]] FieldElement generator() const { return generator_; }

  /// Throws UsageError when x is not an element of this field.
  void check(FieldElement x) const;

  friend bool operator==(const Field& a, const Field& b) {
    return a.p_ == b.p_ && a.n_ == b.n_ && a.modulus_ == b.modulus_;
  }

 private:
  Field(u64 p, unsigned n, std::vector<std::uint32_t> modulus);

  void unpack(FieldElement x, std::uint64_t* digits) const;
  [[nodiscard]] FieldElement pack(const std::uint64_t* digits) const;
  void check_divides(u64 d, const char* what) const;

  u64 p_;
  unsigned n_;
  u64 q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<u64> place_;  // p^i
  arith::Factorization qm1_;
  FieldElement generator_{};
};

/// f(x) = a x^2 + b x + c with a != 0 and b^2 - 4ac != 0 (computed in the field).
struct QuadraticPoly {
  FieldElement a, b, c;

  /// Validating constructor; throws DomainError when a = 0 or the discriminant vanishes.
  static QuadraticPoly make(const Field& field, FieldElement a, FieldElement b, FieldElement c);

  friend bool operator==(const QuadraticPoly&, const QuadraticPoly&) = default;
};

[[nodiscard]] FieldElement discriminant(const Field& field, FieldElement a, FieldElement b,
                                        FieldElement c);

/// (a x + b) x + c.
[[nodiscard]] inline FieldElement eval_quadratic(const Field& field, const QuadraticPoly& f,
                                                 FieldElement x) {
  return field.add(field.mul(field.add(field.mul(f.a, x), f.b), x), f.c);
}

}  // namespace primpow
