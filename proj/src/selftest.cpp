#include "primpow/selftest.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <memory>
#include <random>
#include <set>

#include "primpow/arith.hpp"
#include "primpow/bounds.hpp"
#include "primpow/charsum.hpp"
#include "primpow/counting.hpp"
#include "primpow/errors.hpp"
#include "primpow/ffield.hpp"

namespace primpow::selftest {

namespace {

using counting::CountQuery;

struct Grid {
  u64 arith_limit;
  u64 robin_limit;
  u64 w_limit;
  u64 primitive_count_limit;
  u64 kth_count_limit;
  u64 orthogonality_limit;
  u64 indicator_limit;
  u64 oracle_limit;
  unsigned oracle_samples;
  u64 sieve_limit;
  unsigned sieve_samples;
  unsigned weil_samples;
  u64 weil_limit;
  u64 certificate_limit;
  u64 theorem_b_limit;
  u64 scaling_limit;
  u64 all_leading_limit;
  u64 k2_scan_limit;
};

constexpr Grid kQuick{10'000, 10'000, 10'000, 60, 60, 60, 60, 60, 5, 60, 3, 100, 60, 1024, 256, 60, 30, 60};
constexpr Grid kFull{1'000'000, 1'000'000, 1'000'000, 1000, 500, 200, 100, 199, 25, 200, 10, 1000, 499,
                     1u << 14, 1u << 12, 100, 50, 529};

constexpr std::uint64_t kSeed = 0x5eed'2024'0001ull;

std::vector<u64> prime_powers(u64 lo, u64 hi) {
  std::vector<u64> out;
  for (u64 q = std::max<u64>(lo, 2); q <= hi; ++q)
    if (arith::as_prime_power(q)) out.push_back(q);
  return out;
}

Field field_of(u64 q) {
  const auto pp = *arith::as_prime_power(q);
  return Field::build(pp.prime, pp.exponent);
}

std::string poly_arg(const Field& field, const QuadraticPoly& f) {
  std::string out;
  for (FieldElement e : {f.a, f.b, f.c}) {
    if (!out.empty()) out += ';';
    const auto cs = field.coeffs(e);
    for (std::size_t i = 0; i < cs.size(); ++i) out += (i ? "," : "") + std::to_string(cs[i]);
  }
  return out;
}

std::string field_args(const Field& field) {
  return "-p " + std::to_string(field.characteristic()) + " -n " + std::to_string(field.degree());
}

std::string count_repro(const Field& field, u64 t, u64 k, const QuadraticPoly& f) {
  return "primpow count " + field_args(field) + " -t " + std::to_string(t) + " -k " + std::to_string(k) + " -f '" +
         poly_arg(field, f) + "' --method both";
}

std::vector<QuadraticPoly> sample_quadratics(const Field& field, unsigned count, u64 salt = 0) {
  std::mt19937_64 rng(kSeed ^ (field.order() * 0x9e3779b97f4a7c15ull) ^ salt);
  std::vector<QuadraticPoly> out;
  for (unsigned i = 0; i < count; ++i) out.push_back(counting::random_quadratic(field, rng));
  return out;
}

struct Context {
  const Grid& grid;
  const Options& options;
  std::string level_name;
};

// Each check fills `r` and returns at the first violation.
using CheckFn = void (*)(const Context&, CheckResult&);

void fail(CheckResult& r, std::string what, std::string repro) {
  r.passed = false;
  r.failure = std::move(what);
  r.repro = std::move(repro);
}

std::string self_repro(const Context& ctx, const std::string& name) {
  return "primpow selftest --level " + ctx.level_name + " --only " + name;
}

void check_arith(const Context& ctx, CheckResult& r) {
  const u64 limit = ctx.grid.arith_limit;
  std::vector<int> mu(limit + 1);
  std::vector<u64> phi(limit + 1);
  for (u64 n = 1; n <= limit; ++n) {
    const auto f = arith::factorize(n);
    if (f.reconstruct() != n) return fail(r, "factorize(" + std::to_string(n) + ") does not reconstruct", self_repro(ctx, r.name));
    mu[n] = arith::mobius(f);
    phi[n] = arith::euler_phi(f);
    const auto sq = arith::squarefree_divisors(f);
    if (sq.size() != arith::big_w(f) || arith::big_w(f) != (u64{1} << f.omega()))
      return fail(r, "W(" + std::to_string(n) + ") disagrees with the square-free divisor count", self_repro(ctx, r.name));
  }
  for (u64 n = 1; n <= limit; ++n) {
    long long mu_sum = 0;
    u64 phi_sum = 0;
    for (u64 d : arith::divisors(n)) {
      mu_sum += mu[d];
      phi_sum += phi[d];
    }
    ++r.cases;
    if (mu_sum != (n == 1 ? 1 : 0)) return fail(r, "sum of mu(d) over d | " + std::to_string(n) + " is " + std::to_string(mu_sum), self_repro(ctx, r.name));
    if (phi_sum != n) return fail(r, "sum of phi(d) over d | " + std::to_string(n) + " is " + std::to_string(phi_sum), self_repro(ctx, r.name));
  }
}

void check_robin(const Context& ctx, CheckResult& r) {
  for (u64 n = 3; n <= ctx.grid.robin_limit; ++n, ++r.cases)
    if (!arith::robin_holds(n)) return fail(r, "Robin bound fails at n = " + std::to_string(n), self_repro(ctx, r.name));
}

void check_w_estimate(const Context& ctx, CheckResult& r) {
  for (u64 q : prime_powers(17, ctx.grid.w_limit)) {
    ++r.cases;
    const double lq = std::log(static_cast<double>(q));
    const double bound = std::pow(static_cast<double>(q), 0.96 / std::log(lq));
    if (static_cast<double>(arith::big_w(q - 1)) > bound)
      return fail(r, "W(q-1) exceeds q^(0.96/log log q) at q = " + std::to_string(q), self_repro(ctx, r.name));
  }
}

void check_field_counts(const Context& ctx, CheckResult& r) {
  for (u64 q : prime_powers(2, ctx.grid.primitive_count_limit)) {
    const Field field = field_of(q);
    u64 primitive = 0;
    for (u64 i = 1; i < q; ++i) {
      const FieldElement x = field.at(i);
      const u64 ord = field.element_order(x);
      if ((q - 1) % ord != 0) return fail(r, "order of " + std::to_string(i) + " in " + field.description() + " does not divide q-1", self_repro(ctx, r.name));
      const bool prim = field.is_primitive(x);
      if (prim != (ord == q - 1) || prim != field.is_t_free(x, q - 1))
        return fail(r, "primitive / order / (q-1)-free disagree at " + std::to_string(i) + " in " + field.description(), self_repro(ctx, r.name));
      primitive += prim ? 1 : 0;
      ++r.cases;
    }
    if (primitive != arith::euler_phi(q - 1))
      return fail(r, "primitive count " + std::to_string(primitive) + " != phi(q-1) in " + field.description(), self_repro(ctx, r.name));
    if (q > ctx.grid.kth_count_limit) continue;
    for (u64 k : arith::divisors(q - 1)) {
      u64 count = 0;
      for (u64 i = 0; i < q; ++i) count += field.is_kth_power(field.at(i), k) ? 1 : 0;
      if (count != (q - 1) / k)
        return fail(r, std::to_string(k) + "-th power count " + std::to_string(count) + " in " + field.description(), self_repro(ctx, r.name));
    }
  }
}

void check_orthogonality(const Context& ctx, CheckResult& r) {
  bool fault_pending = ctx.options.inject_fault;
  for (u64 q : prime_powers(3, ctx.grid.orthogonality_limit)) {
    const Field field = field_of(q);
    const charsum::CharacterGroup group(field);
    for (u64 d : arith::divisors(q - 1)) {
      if (d == 1) continue;
      for (charsum::Character chi : group.characters_of_order(d)) {
        if (fault_pending) {
          chi.exponent = 0;
          fault_pending = false;
        }
        charsum::Complex sum{0.0, 0.0};
        for (u64 i = 1; i < q; ++i) sum += group.eval(chi, field.at(i));
        ++r.cases;
        if (std::abs(sum) > 1e-9 * static_cast<double>(q))
          return fail(r, "orthogonality violated in " + field.description() + " for the character of order " + std::to_string(d) +
                             ": |sum| = " + std::to_string(std::abs(sum)),
                      self_repro(ctx, r.name) + (ctx.options.inject_fault ? " --inject-fault" : ""));
      }
    }
  }
}

void check_indicators(const Context& ctx, CheckResult& r) {
  for (u64 q : prime_powers(2, ctx.grid.indicator_limit)) {
    const Field field = field_of(q);
    const charsum::CharacterGroup group(field);
    for (u64 d : arith::divisors(q - 1)) {
      for (u64 i = 0; i < q; ++i) {
        const FieldElement x = field.at(i);
        const auto t_free = charsum::t_free_indicator(group, d, x);
        const auto kth = charsum::kth_power_indicator(group, d, x);
        const double t_expected = field.is_t_free(x, d) ? 1.0 : 0.0;
        const double k_expected = field.is_kth_power(x, d) ? 1.0 : 0.0;
        r.cases += 2;
        if (std::abs(t_free.real() - t_expected) > 1e-9 || std::abs(t_free.imag()) > 1e-9)
          return fail(r, "t-free indicator wrong at x = " + std::to_string(i) + ", t = " + std::to_string(d) + " in " + field.description(), self_repro(ctx, r.name));
        if (std::abs(kth.real() - k_expected) > 1e-9 || std::abs(kth.imag()) > 1e-9)
          return fail(r, "k-th power indicator wrong at x = " + std::to_string(i) + ", k = " + std::to_string(d) + " in " + field.description(), self_repro(ctx, r.name));
      }
    }
  }
}

std::vector<u64> oracle_ks(u64 q) {
  std::vector<u64> ks;
  if ((q - 1) % 2 == 0) ks.push_back(2);
  for (u64 p : arith::factorize(q - 1).primes())
    if (p % 2 == 1) {
      ks.push_back(p);
      break;
    }
  return ks;
}

void check_oracle(const Context& ctx, CheckResult& r) {
  for (u64 q : prime_powers(3, ctx.grid.oracle_limit)) {
    const Field field = field_of(q);
    const charsum::CharacterGroup group(field);
    const auto samples = sample_quadratics(field, ctx.grid.oracle_samples);
    for (u64 t : arith::divisors(q - 1)) {
      const auto t_mask = counting::t_free_mask(field, t);
      for (u64 k : oracle_ks(q)) {
        const auto k_mask = counting::kth_power_mask(field, k);
        for (const auto& f : samples) {
          ++r.cases;
          const u64 direct = counting::count_n(field, f, t_mask, k_mask);
          u64 via = 0;
          try {
            via = charsum::n_via_characters(group, {t, k, f});
          } catch (const NumericError& e) {
            return fail(r, e.what(), count_repro(field, t, k, f));
          }
          if (direct != via)
            return fail(r, "direct count " + std::to_string(direct) + " != character count " + std::to_string(via),
                        count_repro(field, t, k, f));
        }
      }
    }
  }
}

void check_sieve(const Context& ctx, CheckResult& r) {
  for (u64 q : prime_powers(5, ctx.grid.sieve_limit)) {
    const Field field = field_of(q);
    const double sq = std::sqrt(static_cast<double>(q));
    std::map<u64, std::vector<char>> t_masks;
    for (u64 d : arith::divisors(q - 1)) t_masks[d] = counting::t_free_mask(field, d);
    const u64 rad = arith::radical(q - 1);
    for (u64 k : arith::divisors(q - 1)) {
      if (k < 2) continue;
      const auto k_mask = counting::kth_power_mask(field, k);
      for (u64 t : arith::divisors(q - 1)) {
        if (arith::radical(t) >= rad) continue;
        const auto profile = bounds::sieve_profile_for(field, t);
        const auto samples = sample_quadratics(field, ctx.grid.sieve_samples, t * 1000003 + k);
        for (const auto& f : samples) {
          ++r.cases;
          auto n_of = [&](u64 d) { return static_cast<long long>(counting::count_n(field, f, t_masks.at(d), k_mask)); };
          const long long n_full = n_of(q - 1);
          const long long n_t = n_of(t);
          long long sum = 0;
          for (u64 p : profile.sieve_primes) {
            const long long n_pt = n_of(p * t);
            sum += n_pt;
            const double lhs = std::abs(static_cast<double>(n_pt) - (1.0 - 1.0 / static_cast<double>(p)) * static_cast<double>(n_t));
            const double rhs = static_cast<double>(arith::euler_phi(p * t)) / static_cast<double>(p * t) * 2.0 *
                               static_cast<double>(profile.w_t) * sq;
            if (lhs > rhs + 1e-9)
              return fail(r, "difference bound fails for p = " + std::to_string(p) + ", t = " + std::to_string(t), count_repro(field, p * t, k, f));
          }
          if (n_full < sum - static_cast<long long>(profile.s - 1) * n_t)
            return fail(r, "sieve inequality fails for t = " + std::to_string(t), count_repro(field, q - 1, k, f));
          const double lower = static_cast<double>(arith::euler_phi(t)) / static_cast<double>(k * t) *
                               (static_cast<double>(q) - 2.0 * static_cast<double>(k * profile.w_t) * sq);
          if (static_cast<double>(n_t) < std::nextafter(lower, -INFINITY))
            return fail(r, "N(t,k) lower bound fails for t = " + std::to_string(t), count_repro(field, t, k, f));
        }
      }
    }
  }
}

void check_weil(const Context& ctx, CheckResult& r) {
  const auto qs = prime_powers(3, ctx.grid.weil_limit);
  std::mt19937_64 rng(kSeed);
  std::map<u64, std::pair<std::unique_ptr<Field>, std::unique_ptr<charsum::CharacterGroup>>> cache;
  for (unsigned s = 0; s < ctx.grid.weil_samples; ++s) {
    const u64 q = qs[std::uniform_int_distribution<std::size_t>(0, qs.size() - 1)(rng)];
    auto& entry = cache[q];
    if (!entry.first) {
      entry.first = std::make_unique<Field>(field_of(q));
      entry.second = std::make_unique<charsum::CharacterGroup>(*entry.first);
    }
    const Field& field = *entry.first;
    std::uniform_int_distribution<u64> any(0, q - 1), nonzero(1, q - 1), exponent(1, q - 2);
    const charsum::Character chi{exponent(rng), q - 1};
    FieldElement b, c;
    do {
      b = field.at(any(rng));
      c = field.at(any(rng));
    } while (discriminant(field, field.one(), b, c).is_zero());
    const FieldElement a = field.at(nonzero(rng));
    const std::vector<FieldElement> monic{c, b, field.one()};
    const auto check = charsum::weil_check(*entry.second, chi, monic, a);
    ++r.cases;
    if (!check.ok)
      return fail(r, "Weil bound violated in " + field.description() + ": " + std::to_string(check.lhs) + " > " + std::to_string(check.rhs),
                  self_repro(ctx, r.name));
  }
}

void check_certificate(const Context& ctx, CheckResult& r) {
  for (u64 q : prime_powers(5, ctx.grid.certificate_limit)) {
    std::unique_ptr<Field> field;
    std::vector<char> primitive_mask;
    for (u64 k : arith::divisors(q - 1)) {
      if (k < 2) continue;
      const double margin = static_cast<double>(q) - 2.0 * static_cast<double>(k * arith::big_w(q - 1)) * std::sqrt(static_cast<double>(q));
      if (margin <= 0.0) continue;
      if (!field) {
        field = std::make_unique<Field>(field_of(q));
        primitive_mask = counting::t_free_mask(*field, q - 1);
      }
      if (!bounds::theorem_a_certificate(*field, k)) return fail(r, "certificate disagrees with its definition", self_repro(ctx, r.name));
      const auto k_mask = counting::kth_power_mask(*field, k);
      const double lower = bounds::theorem_a_lower_bound(*field, k);
      for (const auto& f : sample_quadratics(*field, 25, k)) {
        ++r.cases;
        const u64 n = counting::count_n(*field, f, primitive_mask, k_mask);
        if (n < 1 || lower > static_cast<double>(n) + 1e-9)
          return fail(r, "certified field has N(q-1,k) = " + std::to_string(n) + " below the bound " + std::to_string(lower),
                      count_repro(*field, q - 1, k, f));
      }
    }
  }
}

void check_theorem_b(const Context& ctx, CheckResult& r) {
  for (u64 q : prime_powers(5, ctx.grid.theorem_b_limit)) {
    const Field field = field_of(q);
    const double sq = std::sqrt(static_cast<double>(q));
    const auto primitive_mask = counting::t_free_mask(field, q - 1);
    const u64 rad = arith::radical(q - 1);
    std::vector<bounds::SieveProfile> profiles;
    for (u64 t : arith::divisors(q - 1))
      if (arith::radical(t) < rad) profiles.push_back(bounds::sieve_profile_for(field, t));
    for (u64 k : arith::divisors(q - 1)) {
      if (k < 2) continue;
      const auto k_mask = counting::kth_power_mask(field, k);
      for (const auto& f : sample_quadratics(field, 10, k)) {
        const u64 n = counting::count_n(field, f, primitive_mask, k_mask);
        for (const auto& profile : profiles) {
          if (!profile.usable()) continue;
          ++r.cases;
          const double bound = bounds::theorem_b_bound(k, profile.w_t, profile.s, profile.delta);
          if (bounds::exceeds(q, bound) && n < 1)
            return fail(r, "q exceeds the sieve bound but N(q-1,k) = 0", count_repro(field, q - 1, k, f));
          const double t = static_cast<double>(profile.t);
          const double lhs = static_cast<double>(k) * t / (profile.delta * static_cast<double>(arith::euler_phi(profile.t))) *
                             static_cast<double>(n);
          const double rhs = sq * (sq - 2.0 * static_cast<double>(k * profile.w_t) *
                                            (2.0 + (static_cast<double>(profile.s) - 1.0) / profile.delta));
          if (lhs < rhs - 1e-9 * std::abs(rhs))
            return fail(r, "lower-bound chain fails for t = " + std::to_string(profile.t), count_repro(field, q - 1, k, f));
        }
      }
    }
  }
}

std::vector<FieldElement> witness_set(const Field& field, const QuadraticPoly& f, const std::vector<char>& primitive,
                                      const std::vector<char>& kth) {
  std::vector<FieldElement> out;
  for (u64 i = 1; i < field.order(); ++i)
    if (primitive[i] && kth[eval_quadratic(field, f, field.at(i)).value]) out.push_back(field.at(i));
  return out;
}

void check_scaling(const Context& ctx, CheckResult& r) {
  for (u64 q : prime_powers(3, ctx.grid.scaling_limit)) {
    const Field field = field_of(q);
    const auto primitive = counting::t_free_mask(field, q - 1);
    std::mt19937_64 rng(kSeed + q);
    std::uniform_int_distribution<u64> nonzero(1, q - 1);
    for (u64 k : arith::divisors(q - 1)) {
      if (k < 2) continue;
      const auto kth = counting::kth_power_mask(field, k);
      for (const auto& f : sample_quadratics(field, 5, k)) {
        const auto base = witness_set(field, f, primitive, kth);
        for (int j = 0; j < 3; ++j) {
          const FieldElement scale = field.pow(field.at(nonzero(rng)), k);
          const QuadraticPoly g{field.mul(scale, f.a), field.mul(scale, f.b), field.mul(scale, f.c)};
          ++r.cases;
          if (witness_set(field, g, primitive, kth) != base)
            return fail(r, "scaling by a k-th power changed the witness set in " + field.description(), self_repro(ctx, r.name));
        }
      }
    }
  }
  for (u64 q : prime_powers(3, ctx.grid.all_leading_limit)) {
    const Field field = field_of(q);
    for (u64 k : arith::divisors(q - 1)) {
      if (k < 2) continue;
      counting::ScanOptions coset, all;
      all.leading = counting::LeadingCoefficients::All;
      const auto a = counting::scan_field(field, k, coset);
      const auto b = counting::scan_field(field, k, all);
      ++r.cases;
      if (a.exceptional != b.exceptional || b.witnessless_count != a.witnessless_count * ((q - 1) / k))
        return fail(r, "coset-reduced scan disagrees with the all-leading-coefficient scan at q = " + std::to_string(q) + ", k = " + std::to_string(k),
                    "primpow scan -k " + std::to_string(k) + " --from " + std::to_string(q) + " --to " + std::to_string(q));
    }
  }
}

// Every q outside the reference exclusion list must have a witness for every f.
// Members of the list need not be exceptional.
void check_k2_scan(const Context& ctx, CheckResult& r) {
  const std::set<u64> reference{3, 5, 7, 9, 11, 13, 19, 25, 27, 31, 81, 121, 125, 169};
  const u64 hi = ctx.grid.k2_scan_limit;
  const auto report = counting::scan_exceptional(2, 3, hi);
  r.cases = report.rows.size();
  for (u64 q : report.exceptional())
    if (!reference.contains(q))
      return fail(r, "q = " + std::to_string(q) + " has a witnessless quadratic for k = 2",
                  "primpow scan -k 2 --from " + std::to_string(q) + " --to " + std::to_string(q));
}

const std::vector<std::pair<std::string, CheckFn>>& registry() {
  static const std::vector<std::pair<std::string, CheckFn>> checks{
      {"arith-identities", check_arith},
      {"robin", check_robin},
      {"w-estimate", check_w_estimate},
      {"field-counts", check_field_counts},
      {"orthogonality", check_orthogonality},
      {"indicators", check_indicators},
      {"oracle-equivalence", check_oracle},
      {"sieve-inequalities", check_sieve},
      {"weil-fuzz", check_weil},
      {"certificate", check_certificate},
      {"theorem-b", check_theorem_b},
      {"scaling", check_scaling},
      {"k2-scan", check_k2_scan},
  };
  return checks;
}

}  // namespace

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

std::vector<CheckResult> run(const Options& options, const std::function<void(const CheckResult&)>& on_result) {
  const Context ctx{options.level == Level::Full ? kFull : kQuick, options,
                    options.level == Level::Full ? "full" : "quick"};
  std::vector<CheckResult> results;
  for (const auto& [name, fn] : registry()) {
    if (!options.only.empty() && options.only != name) continue;
    CheckResult r;
    r.name = name;
    const auto start = std::chrono::steady_clock::now();
    try {
      fn(ctx, r);
    } catch (const std::exception& e) {
      fail(r, std::string("unexpected exception: ") + e.what(), self_repro(ctx, name));
    }
    r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (on_result) on_result(r);
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace primpow::selftest
