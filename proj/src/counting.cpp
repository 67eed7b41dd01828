#include "primpow/counting.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

#include "primpow/errors.hpp"

namespace primpow::counting {

void validate(const Field& field, const CountQuery& query) {
  const u64 qm1 = field.order() - 1;
  if (query.t == 0 || qm1 % query.t != 0)
    throw DomainError("t = " + std::to_string(query.t) + " does not divide q-1 = " + std::to_string(qm1));
  if (query.k < 2 || qm1 % query.k != 0)
    throw DomainError("k = " + std::to_string(query.k) + " must be >= 2 and divide q-1 = " + std::to_string(qm1));
  (void)QuadraticPoly::make(field, query.f.a, query.f.b, query.f.c);
}

std::vector<char> t_free_mask(const Field& field, u64 t) {
  const arith::Factorization tf = arith::factorize(t);
  std::vector<char> mask(field.order(), 0);
  for (u64 i = 1; i < field.order(); ++i) mask[i] = field.is_t_free(field.at(i), tf) ? 1 : 0;
  return mask;
}

std::vector<char> kth_power_mask(const Field& field, u64 k) {
  std::vector<char> mask(field.order(), 0);
  for (u64 i = 0; i < field.order(); ++i) mask[i] = field.is_kth_power(field.at(i), k) ? 1 : 0;
  return mask;
}

u64 count_n(const Field& field, const QuadraticPoly& f, std::span<const char> t_free,
            std::span<const char> kth_power) {
  u64 count = 0;
  for (u64 i = 1; i < field.order(); ++i) {
    if (!t_free[i]) continue;
    if (kth_power[eval_quadratic(field, f, field.at(i)).value]) ++count;
  }
  return count;
}

u64 count_n(const Field& field, const CountQuery& query) {
  validate(field, query);
  return count_n(field, query.f, t_free_mask(field, query.t), kth_power_mask(field, query.k));
}

std::vector<FieldElement> primitive_elements(const Field& field) {
  std::vector<FieldElement> out;
  out.reserve(arith::euler_phi(field.group_order_factors()));
  for (u64 i = 1; i < field.order(); ++i)
    if (field.is_primitive(field.at(i))) out.push_back(field.at(i));
  return out;
}

WitnessFinder::WitnessFinder(const Field& field, u64 k)
    : field_(&field), primitives_(primitive_elements(field)), kth_power_(kth_power_mask(field, k)) {
  primitive_squares_.reserve(primitives_.size());
  for (FieldElement g : primitives_) primitive_squares_.push_back(field.mul(g, g));
}

std::optional<FieldElement> WitnessFinder::find(const QuadraticPoly& f) const {
  const Field& field = *field_;
  for (std::size_t i = 0; i < primitives_.size(); ++i) {
    const FieldElement value =
        field.add(field.add(field.mul(f.a, primitive_squares_[i]), field.mul(f.b, primitives_[i])), f.c);
    if (kth_power_[value.value]) return primitives_[i];
  }
  return std::nullopt;
}

std::optional<FieldElement> find_witness(const Field& field, u64 k, const QuadraticPoly& f) {
  validate(field, {field.order() - 1, k, f});
  for (u64 i = 1; i < field.order(); ++i) {
    const FieldElement g = field.at(i);
    if (field.is_primitive(g) && field.is_kth_power(eval_quadratic(field, f, g), k)) return g;
  }
  return std::nullopt;
}

std::vector<FieldElement> coset_representatives(const Field& field, u64 k) {
  if (k == 0 || (field.order() - 1) % k != 0)
    throw DomainError("k = " + std::to_string(k) + " does not divide q-1 = " + std::to_string(field.order() - 1));
  std::vector<FieldElement> reps;
  reps.reserve(k);
  FieldElement power = field.one();
  for (u64 i = 0; i < k; ++i) {
    reps.push_back(power);
    power = field.mul(power, field.generator());
  }
  return reps;
}

std::vector<QuadraticPoly> enumerate_quadratics(const Field& field, u64 k) {
  std::vector<QuadraticPoly> out;
  enumerate_quadratics(field, k, [&](const QuadraticPoly& f) { out.push_back(f); });
  return out;
}

QuadraticPoly random_quadratic(const Field& field, std::mt19937_64& rng) {
  std::uniform_int_distribution<u64> any(0, field.order() - 1);
  std::uniform_int_distribution<u64> nonzero(1, field.order() - 1);
  for (;;) {
    const FieldElement a = field.at(nonzero(rng));
    const FieldElement b = field.at(any(rng));
    const FieldElement c = field.at(any(rng));
    if (!discriminant(field, a, b, c).is_zero()) return {a, b, c};
  }
}

std::vector<u64> ScanReport::exceptional() const {
  std::vector<u64> out;
  for (const auto& row : rows)
    if (row.exceptional) out.push_back(row.q);
  return out;
}

std::vector<u64> scan_targets(u64 k, u64 lo, u64 hi) {
  std::vector<u64> out;
  for (u64 q = std::max<u64>(lo, 2); q <= hi; ++q) {
    if ((q - 1) % k != 0) continue;
    if (arith::as_prime_power(q)) out.push_back(q);
  }
  return out;
}

ScanRow scan_field(const Field& field, u64 k, const ScanOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  ScanRow row;
  row.q = field.order();
  row.p = field.characteristic();
  row.n = field.degree();
  row.field = field.description();

  const WitnessFinder finder(field, k);
  auto visit = [&](const QuadraticPoly& f) {
    if (finder.find(f)) return;
    ++row.witnessless_count;
    if (row.witnessless_sample.size() < options.witnessless_cap) row.witnessless_sample.push_back(f);
  };
  if (options.leading == LeadingCoefficients::All) {
    std::vector<FieldElement> all;
    for (u64 i = 1; i < field.order(); ++i) all.push_back(field.at(i));
    for_each_quadratic(field, all, visit);
  } else {
    enumerate_quadratics(field, k, visit);
  }
  row.exceptional = row.witnessless_count > 0;
  row.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return row;
}

ScanReport scan_exceptional(u64 k, u64 q_lo, u64 q_hi, const ScanOptions& options,
                            const std::function<void(const ScanRow&)>& on_row) {
  if (k < 2) throw DomainError("scan requires k >= 2");
  if (q_lo < 3 || q_lo > q_hi) throw DomainError("scan range must satisfy 3 <= from <= to");
  if (q_hi > options.q_cap)
    throw ResourceError("scan upper limit " + std::to_string(q_hi) + " exceeds the q cap " +
                        std::to_string(options.q_cap) + " (override with PRIMPOW_QCAP)");

  const std::vector<u64> targets = scan_targets(k, q_lo, q_hi);
  ScanReport report{k, q_lo, q_hi, std::vector<ScanRow>(targets.size())};

  std::mutex mutex;
  std::vector<char> ready(targets.size(), 0);
  std::size_t flushed = 0;
  std::atomic<std::size_t> next{0};

  auto work = [&] {
    for (std::size_t i = next++; i < targets.size(); i = next++) {
      const auto pp = *arith::as_prime_power(targets[i]);
      const Field field = Field::build(pp.prime, pp.exponent);
      ScanRow row = scan_field(field, k, options);
      std::lock_guard lock(mutex);
      report.rows[i] = std::move(row);
      ready[i] = 1;
      while (flushed < targets.size() && ready[flushed]) {
        if (on_row) on_row(report.rows[flushed]);
        ++flushed;
      }
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(options.workers, static_cast<unsigned>(targets.size())));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  return report;
}

}  // namespace primpow::counting
