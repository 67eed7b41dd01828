#pragma once

// Invariant suites behind `primpow selftest`. Each check walks a grid of small
// fields and stops at the first violation, reporting a command line that
// reproduces it.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace primpow::selftest {

enum class Level { Quick, Full };

struct Options {
  Level level = Level::Quick;
  /// Replace one nontrivial character exponent by 0 inside the orthogonality check.
  bool inject_fault = false;
  /// Run only the named check when non-empty.
  std::string only;
};

struct CheckResult {
  std::string name;
  bool passed = true;
  std::uint64_t cases = 0;
  std::string failure;
  std::string repro;
  double millis = 0.0;
};

[[nodiscard]] const std::vector<std::string>& check_names();

std::vector<CheckResult> run(const Options& options,
                             const std::function<void(const CheckResult&)>& on_result = {});

}  // namespace primpow::selftest
