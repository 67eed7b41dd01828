#pragma once

/**
 * @file counting.hpp
 * @brief Exact counts N(t, k), witness search and the exceptional-field scan.
 *
 * N(t, k) is the number of x in F_q that are t-free with f(x) a nonzero k-th
 * power. A witness is a primitive g with f(g) a k-th power. Since f and
 * lambda^k f have the same witnesses, the scan only lets the leading
 * coefficient range over coset representatives of F_q^x / F_q^{xk}.
 */

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "primpow/ffield.hpp"

namespace primpow::counting {

struct CountQuery {
  u64 t = 1;
  u64 k = 2;
  QuadraticPoly f;
};

/// Throws DomainError unless t | q-1, k | q-1, k >= 2 and f is admissible.
void validate(const Field& field, const CountQuery& query);

/// mask[x] = is_t_free(x, t) for every packed x.
[[nodiscard]] std::vector<char> t_free_mask(const Field& field, u64 t);
/// mask[x] = is_kth_power(x, k) for every packed x.
[[nodiscard]] std::vector<char> kth_power_mask(const Field& field, u64 k);

/// N(t, k) by enumerating every element of the field.
[[nodiscard]] u64 count_n(const Field& field, const CountQuery& query);
/// Same count against precomputed masks.
[[nodiscard]] u64 count_n(const Field& field, const QuadraticPoly& f, std::span<const char> t_free,
                          std::span<const char> kth_power);

/// Primitive elements in canonical order.
[[nodiscard]] std::vector<FieldElement> primitive_elements(const Field& field);

/// Reusable witness search for one (field, k): the primitive elements and the
/// k-th power mask are materialized once.
class WitnessFinder {
 public:
  WitnessFinder(const Field& field, u64 k);

  /// First primitive g (ascending) with f(g) a k-th power.
  [[nodiscard]] std::optional<FieldElement> find(const QuadraticPoly& f) const;

  [[nodiscard]] const std::vector<FieldElement>& primitives() const { return primitives_; }

 private:
  const Field* field_;
  std::vector<FieldElement> primitives_;
  std::vector<FieldElement> primitive_squares_;
  std::vector<char> kth_power_;
};

[[nodiscard]] std::optional<FieldElement> find_witness(const Field& field, u64 k, const QuadraticPoly& f);

/// {g0^0, ..., g0^(k-1)} for the canonical generator g0.
[[nodiscard]] std::vector<FieldElement> coset_representatives(const Field& field, u64 k);

/// Calls visit(f) for every admissible f = a x^2 + b x + c with a from
/// `leading`, b and c over the whole field; order is (a index, b, c).
template <typename Visitor>
void for_each_quadratic(const Field& field, std::span<const FieldElement> leading, Visitor&& visit) {
  const FieldElement four = field.from_integer(4);
  for (FieldElement a : leading) {
    const FieldElement four_a = field.mul(four, a);
    for (u64 bi = 0; bi < field.order(); ++bi) {
      const FieldElement b = field.at(bi);
      const FieldElement b2 = field.mul(b, b);
      for (u64 ci = 0; ci < field.order(); ++ci) {
        const FieldElement c = field.at(ci);
        if (b2 == field.mul(four_a, c)) continue;
        visit(QuadraticPoly{a, b, c});
      }
    }
  }
}

/// for_each_quadratic over the coset representatives for k.
template <typename Visitor>
void enumerate_quadratics(const Field& field, u64 k, Visitor&& visit) {
  const auto reps = coset_representatives(field, k);
  for_each_quadratic(field, reps, std::forward<Visitor>(visit));
}

[[nodiscard]] std::vector<QuadraticPoly> enumerate_quadratics(const Field& field, u64 k);

/// Uniformly random admissible quadratic.
[[nodiscard]] QuadraticPoly random_quadratic(const Field& field, std::mt19937_64& rng);

enum class LeadingCoefficients { CosetRepresentatives, All };

inline constexpr u64 kDefaultScanCap = u64{1} << 20;

struct ScanOptions {
  std::size_t witnessless_cap = 10;
  unsigned workers = 1;
  u64 q_cap = kDefaultScanCap;
  LeadingCoefficients leading = LeadingCoefficients::CosetRepresentatives;
};

struct ScanRow {
  u64 q = 0;
  u64 p = 0;
  unsigned n = 0;
  std::string field;
  bool exceptional = false;
  u64 witnessless_count = 0;
  /// First witnessless polynomials in enumeration order, up to the cap.
  std::vector<QuadraticPoly> witnessless_sample;
  double millis = 0.0;
};

struct ScanReport {
  u64 k = 2;
  u64 q_lo = 0;
  u64 q_hi = 0;
  std::vector<ScanRow> rows;  // every scanned q, ascending

  [[nodiscard]] std::vector<u64> exceptional() const;
};

/// Checks one field exhaustively.
[[nodiscard]] ScanRow scan_field(const Field& field, u64 k, const ScanOptions& options);

/// Scans every prime power q in [q_lo, q_hi] with k | q-1. `on_row` (if set)
/// receives rows in ascending q as soon as they are ready.
ScanReport scan_exceptional(u64 k, u64 q_lo, u64 q_hi, const ScanOptions& options = {},
                            const std::function<void(const ScanRow&)>& on_row = {});

/// The prime powers q in [lo, hi] with k | q-1.
[[nodiscard]] std::vector<u64> scan_targets(u64 k, u64 lo, u64 hi);

}  // namespace primpow::counting
