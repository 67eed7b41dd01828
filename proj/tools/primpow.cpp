// primpow: command-line front end.
//
// Exit codes: 0 success, 1 usage or domain error, 3 internal consistency
// failure, 4 no witness found.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "primpow/arith.hpp"
#include "primpow/bounds.hpp"
#include "primpow/charsum.hpp"
#include "primpow/counting.hpp"
#include "primpow/errors.hpp"
#include "primpow/ffield.hpp"
#include "primpow/report.hpp"
#include "primpow/selftest.hpp"

namespace {

using namespace primpow;
using report::Json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInconsistent = 3;
constexpr int kExitNoWitness = 4;

enum class Format { Text, Json, Csv };

struct FieldArgs {
  u64 p = 0;
  unsigned n = 1;
  std::string modulus;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::int64_t parse_int(const std::string& s) {
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw UsageError("not an integer: '" + s + "'");
  }
  if (used != s.size()) throw UsageError("not an integer: '" + s + "'");
  return v;
}

Field make_field(const FieldArgs& args) {
  if (args.modulus.empty()) return Field::build(args.p, args.n);
  std::vector<std::uint32_t> modulus;
  for (const auto& c : split(args.modulus, ',')) {
    const auto v = parse_int(c);
    if (v < 0) throw UsageError("modulus coefficients must be nonnegative");
    modulus.push_back(static_cast<std::uint32_t>(v));
  }
  Field field = Field::with_modulus(args.p, std::move(modulus));
  if (field.degree() != args.n) throw UsageError("modulus degree does not match -n");
  return field;
}

// "a,b,c" (integers) or "a0,a1;b0,b1;c0,c1" (coefficient lists, low-to-high).
QuadraticPoly parse_quadratic(const Field& field, const std::string& text) {
  std::vector<FieldElement> coeffs;
  if (text.find(';') != std::string::npos) {
    const auto parts = split(text, ';');
    if (parts.size() != 3) throw UsageError("-f expects three ';'-separated coefficient lists");
    for (const auto& part : parts) {
      std::vector<std::int64_t> cs;
      for (const auto& c : split(part, ',')) cs.push_back(parse_int(c));
      coeffs.push_back(field.from_coeffs(cs));
    }
  } else {
    const auto parts = split(text, ',');
    if (parts.size() != 3) throw UsageError("-f expects three comma-separated coefficients a,b,c");
    for (const auto& part : parts) coeffs.push_back(field.from_integer(parse_int(part)));
  }
  return QuadraticPoly::make(field, coeffs[0], coeffs[1], coeffs[2]);
}

Json poly_json(const Field& field, const QuadraticPoly& f) {
  Json out;
  out["a"] = report::element_json(field, f.a);
  out["b"] = report::element_json(field, f.b);
  out["c"] = report::element_json(field, f.c);
  return out;
}

std::string element_text(const Field& field, FieldElement x) {
  const auto cs = field.coeffs(x);
  if (cs.size() == 1) return std::to_string(cs[0]);
  std::string out = "[";
  for (std::size_t i = 0; i < cs.size(); ++i) out += (i ? "," : "") + std::to_string(cs[i]);
  return out + "]";
}

std::optional<FieldElement> kth_root(const Field& field, FieldElement v, u64 k) {
  if (field.order() > counting::kDefaultScanCap) return std::nullopt;
  for (u64 i = 1; i < field.order(); ++i)
    if (field.pow(field.at(i), k) == v) return field.at(i);
  return std::nullopt;
}

double elapsed_ms(std::chrono::steady_clock::time_point start, bool timing) {
  if (!timing) return 0.0;
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

Json field_params(const Field& field) {
  Json out;
  out["p"] = field.characteristic();
  out["n"] = field.degree();
  out["q"] = field.order();
  out["field"] = field.description();
  return out;
}

int cmd_verify(const FieldArgs& fa, u64 k, const std::string& f_text, Format format, bool timing) {
  const auto start = std::chrono::steady_clock::now();
  const Field field = make_field(fa);
  const QuadraticPoly f = parse_quadratic(field, f_text);
  const auto witness = counting::find_witness(field, k, f);

  Json params = field_params(field);
  params["k"] = k;
  params["f"] = poly_json(field, f);
  Json results;
  results["witness_found"] = witness.has_value();
  std::optional<FieldElement> value, root;
  if (witness) {
    value = eval_quadratic(field, f, *witness);
    root = kth_root(field, *value, k);
    results["g"] = report::element_json(field, *witness);
    results["f_g"] = report::element_json(field, *value);
    results["kth_power"] = field.is_kth_power(*value, k);
    results["kth_root"] = root ? report::element_json(field, *root) : Json(nullptr);
  }
  if (format == Format::Json) {
    std::cout << report::envelope("verify", params, results, elapsed_ms(start, timing)).dump(2) << '\n';
  } else if (witness) {
    std::cout << "field " << field.description() << ": witness g = " << element_text(field, *witness)
              << ", f(g) = " << element_text(field, *value) << " is a k-th power for k = " << k;
    if (root) std::cout << " (" << element_text(field, *root) << "^" << k << " = f(g))";
    std::cout << '\n';
  } else {
    std::cout << "field " << field.description() << ": no witness\n";
  }
  return witness ? kExitOk : kExitNoWitness;
}

int cmd_count(const FieldArgs& fa, u64 t, u64 k, const std::string& f_text, const std::string& method, Format format,
              bool timing) {
  const auto start = std::chrono::steady_clock::now();
  const Field field = make_field(fa);
  const QuadraticPoly f = parse_quadratic(field, f_text);
  const counting::CountQuery query{t, k, f};
  counting::validate(field, query);

  std::optional<u64> direct, character;
  if (method == "direct" || method == "both") direct = counting::count_n(field, query);
  if (method == "character" || method == "both") {
    const charsum::CharacterGroup group(field);
    character = charsum::n_via_characters(group, query);
  }
  const bool mismatch = direct && character && *direct != *character;

  Json params = field_params(field);
  params["t"] = t;
  params["k"] = k;
  params["f"] = poly_json(field, f);
  params["method"] = method;
  Json results;
  if (direct) results["direct"] = *direct;
  if (character) results["character"] = *character;
  if (direct && character) results["match"] = !mismatch;

  if (format == Format::Json) {
    std::cout << report::envelope("count", params, results, elapsed_ms(start, timing)).dump(2) << '\n';
  } else if (format == Format::Csv) {
    std::cout << "method,count\n";
    if (direct) std::cout << "direct," << *direct << '\n';
    if (character) std::cout << "character," << *character << '\n';
  } else {
    if (direct) std::cout << "N(" << t << "," << k << ") direct = " << *direct << '\n';
    if (character) std::cout << "N(" << t << "," << k << ") character = " << *character << '\n';
    if (mismatch) std::cout << "MISMATCH between direct and character counts\n";
  }
  return mismatch ? kExitInconsistent : kExitOk;
}

u64 scan_q_cap() {
  if (const char* env = std::getenv("PRIMPOW_QCAP"); env && *env) {
    const auto v = parse_int(env);
    if (v < 3) throw UsageError("PRIMPOW_QCAP must be >= 3");
    return static_cast<u64>(v);
  }
  return counting::kDefaultScanCap;
}

int cmd_scan(u64 k, u64 lo, u64 hi, Format format, unsigned workers, std::size_t cap, bool all_leading, bool timing) {
  const auto start = std::chrono::steady_clock::now();
  counting::ScanOptions options;
  options.witnessless_cap = cap;
  options.workers = workers;
  options.q_cap = scan_q_cap();
  if (all_leading) options.leading = counting::LeadingCoefficients::All;

  if (format == Format::Csv) std::cout << report::scan_csv_header() << '\n';
  auto on_row = [&](const counting::ScanRow& row) {
    counting::ScanRow shown = row;
    if (!timing) shown.millis = 0.0;
    if (format == Format::Csv) std::cout << report::scan_csv_row(shown) << '\n' << std::flush;
    if (format == Format::Text) std::cout << report::scan_text_row(shown) << '\n' << std::flush;
  };
  counting::ScanReport result = counting::scan_exceptional(k, lo, hi, options, on_row);
  if (!timing)
    for (auto& row : result.rows) row.millis = 0.0;

  if (format == Format::Json) {
    Json params;
    params["k"] = k;
    params["from"] = lo;
    params["to"] = hi;
    params["witnessless_cap"] = cap;
    params["leading"] = all_leading ? "all" : "coset-representatives";
    std::cout << report::envelope("scan", params, report::scan_results_json(result), elapsed_ms(start, timing)).dump(2)
              << '\n';
  } else if (format == Format::Text) {
    std::cout << "fields scanned: " << result.rows.size() << "\nexceptional q: {";
    const auto ex = result.exceptional();
    for (std::size_t i = 0; i < ex.size(); ++i) std::cout << (i ? "," : "") << ex[i];
    std::cout << "}\n";
  }
  return kExitOk;
}

struct BoundsArgs {
  bool table1 = false;
  bool theorem_a = false;
  bool theorem_b = false;
  u64 k = 2;
  std::optional<u64> wt, s, q, t;
  std::optional<double> delta;
};

int cmd_bounds(const BoundsArgs& args, Format format, bool timing) {
  const auto start = std::chrono::steady_clock::now();
  if (int(args.table1) + int(args.theorem_a) + int(args.theorem_b) != 1)
    throw UsageError("choose exactly one of --table1, --theorem-a, --theorem-b");
  Json params;
  params["k"] = args.k;
  Json results;
  std::string mode;

  if (args.table1) {
    mode = "table1";
    const auto rows = bounds::table1_report(args.k);
    if (format == Format::Csv) {
      std::cout << report::table1_csv(rows);
      return kExitOk;
    }
    if (format == Format::Text) {
      std::cout << report::table1_text(rows);
      return kExitOk;
    }
    results = report::table1_json(rows);
  } else if (args.theorem_a) {
    mode = "theorem-a";
    const double threshold = bounds::theorem_a_threshold(args.k);
    if (format == Format::Text || format == Format::Csv) {
      std::cout << report::format_significant(threshold, 6) << '\n';
      return kExitOk;
    }
    results["threshold"] = threshold;
    results["threshold_6sig"] = report::format_significant(threshold, 6);
  } else {
    mode = "theorem-b";
    u64 wt = 0, s = 0;
    double delta = 0.0;
    if (args.q) {
      if (!args.t) throw UsageError("--q requires -t");
      const auto profile = bounds::sieve_profile_for(*args.q - 1, *args.t);
      wt = profile.w_t;
      s = profile.s;
      delta = profile.delta;
      params["q"] = *args.q;
      params["t"] = *args.t;
      results["sieve_primes"] = profile.sieve_primes;
    } else {
      if (!args.wt || !args.s || !args.delta) throw UsageError("--theorem-b needs --wt, --s and --delta (or --q and -t)");
      wt = *args.wt;
      s = *args.s;
      delta = *args.delta;
    }
    params["wt"] = wt;
    params["s"] = s;
    params["delta"] = delta;
    const double bound = bounds::theorem_b_bound(args.k, wt, s, delta);
    if (format == Format::Text || format == Format::Csv) {
      std::cout << report::format_significant(bound, 10) << '\n';
      return kExitOk;
    }
    results["bound"] = bound;
  }
  params["mode"] = mode;
  std::cout << report::envelope("bounds", params, results, elapsed_ms(start, timing)).dump(2) << '\n';
  return kExitOk;
}

int cmd_selftest(const std::string& level, const std::string& only, bool inject_fault) {
  selftest::Options options;
  options.level = level == "full" ? selftest::Level::Full : selftest::Level::Quick;
  options.only = only;
  options.inject_fault = inject_fault;
  if (!only.empty()) {
    const auto& names = selftest::check_names();
    if (std::find(names.begin(), names.end(), only) == names.end()) throw UsageError("unknown check '" + only + "'");
  }
  bool ok = true;
  selftest::run(options, [&](const selftest::CheckResult& r) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.cases << " cases, "
              << report::format_significant(r.millis / 1000.0, 3) << " s)\n";
    if (!r.passed) {
      ok = false;
      std::cout << "  " << r.failure << "\n  reproduce: " << r.repro << '\n';
    }
    std::cout << std::flush;
  });
  return ok ? kExitOk : kExitInconsistent;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Primitive elements whose quadratic image is a k-th power: verification, counting, scans and bounds"};
  app.require_subcommand(1);

  const std::map<std::string, Format> formats{{"text", Format::Text}, {"json", Format::Json}, {"csv", Format::Csv}};
  Format format = Format::Text;
  bool no_timing = false;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    sub->add_flag("--no-timing", no_timing, "Report all timings as 0 (byte-stable output)");
  };

  FieldArgs fa;
  u64 k = 2, t = 1;
  std::string f_text;
  auto add_field = [&](CLI::App* sub) {
    sub->add_option("-p", fa.p, "Field characteristic")->required();
    sub->add_option("-n", fa.n, "Extension degree")->capture_default_str();
    sub->add_option("--modulus", fa.modulus, "Monic modulus, coefficients low-to-high (e.g. 1,0,1 for T^2+1)");
    sub->add_option("-f", f_text,
                    "Quadratic a,b,c as integers, or as ';'-separated coefficient lists for extension fields "
                    "(e.g. '1,0;0,1;2,0')")
        ->required();
  };

  auto* verify = app.add_subcommand("verify", "Find a primitive g with f(g) a k-th power");
  add_field(verify);
  verify->add_option("-k", k, "Power k (k >= 2, k | q-1)")->required();
  add_common(verify);

  std::string method = "direct";
  auto* count = app.add_subcommand("count", "Count t-free x with f(x) a k-th power");
  add_field(count);
  count->add_option("-t", t, "t | q-1")->required();
  count->add_option("-k", k, "Power k (k >= 2, k | q-1)")->required();
  count->add_option("--method", method, "direct | character | both")
      ->check(CLI::IsMember({"direct", "character", "both"}))
      ->capture_default_str();
  add_common(count);

  u64 from = 3, to = 3;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  std::size_t cap = 10;
  bool all_leading = false;
  auto* scan = app.add_subcommand("scan", "Find every prime power q in a range with a witnessless quadratic");
  scan->add_option("-k", k, "Power k (k >= 2)")->required();
  scan->add_option("--from", from, "Smallest q")->required();
  scan->add_option("--to", to, "Largest q (cap 2^20, override with PRIMPOW_QCAP)")->required();
  scan->add_option("--workers", workers, "Parallel workers")->capture_default_str();
  scan->add_option("--cap", cap, "Witnessless polynomials listed per field")->capture_default_str();
  scan->add_flag("--all-leading", all_leading, "Let the leading coefficient range over all of F_q^x");
  add_common(scan);

  BoundsArgs bargs;
  auto* bnd = app.add_subcommand("bounds", "Explicit thresholds and the primorial/bound table");
  bnd->add_flag("--table1", bargs.table1, "Primorial/bound table, computed vs published");
  bnd->add_flag("--theorem-a", bargs.theorem_a, "max(e^(e^3), (2k)^6)");
  bnd->add_flag("--theorem-b", bargs.theorem_b, "4k^2 W(t)^2 (2 + (s-1)/delta)^2");
  bnd->add_option("-k", bargs.k, "Power k")->capture_default_str();
  bnd->add_option("--wt", bargs.wt, "W(t)");
  bnd->add_option("--s", bargs.s, "Number of sieving primes");
  bnd->add_option("--delta", bargs.delta, "1 - sum 1/p_i");
  bnd->add_option("--q", bargs.q, "Derive W(t), s, delta from q and t");
  bnd->add_option("-t", bargs.t, "t | q-1 with Rad(t) < Rad(q-1)");
  add_common(bnd);

  std::string level = "quick", only;
  bool inject_fault = false;
  auto* self = app.add_subcommand("selftest", "Run the invariant suites");
  self->add_option("--level", level, "quick | full")->check(CLI::IsMember({"quick", "full"}))->capture_default_str();
  self->add_option("--only", only, "Run a single named check");
  self->add_flag("--inject-fault", inject_fault, "Corrupt one character inside the orthogonality check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const bool timing = !no_timing;
  try {
    if (*verify) return cmd_verify(fa, k, f_text, format, timing);
    if (*count) return cmd_count(fa, t, k, f_text, method, format, timing);
    if (*scan) return cmd_scan(k, from, to, format, workers, cap, all_leading, timing);
    if (*bnd) return cmd_bounds(bargs, format, timing);
    if (*self) return cmd_selftest(level, only, inject_fault);
  } catch (const NumericError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInconsistent;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
