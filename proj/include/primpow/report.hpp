#pragma once

// Machine-readable output: the JSON envelope
//   {"command", "params", "results", "timing_ms", "version"}
// and the fixed CSV layouts for scans and the primorial/bound table.

#include <string>
#include <vector>

#include "json.hpp"
#include "primpow/bounds.hpp"
#include "primpow/counting.hpp"

namespace primpow::report {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "1.0.0";

/// Coefficients (low-to-high) of the packed element `value` of F_{p^n}.
[[nodiscard]] std::vector<std::uint32_t> element_coeffs(u64 p, unsigned n, std::uint32_t value);
[[nodiscard]] Json element_json(const Field& field, FieldElement x);

[[nodiscard]] Json envelope(const std::string& command, Json params, Json results, double timing_ms);

[[nodiscard]] Json scan_row_json(const counting::ScanRow& row);
[[nodiscard]] Json scan_results_json(const counting::ScanReport& report);

/// "q,exceptional,witnessless_count,millis"
[[nodiscard]] std::string scan_csv_header();
[[nodiscard]] std::string scan_csv_row(const counting::ScanRow& row);
[[nodiscard]] std::string scan_text_row(const counting::ScanRow& row);

[[nodiscard]] Json table1_json(const std::vector<bounds::Table1Row>& rows);
[[nodiscard]] std::string table1_csv(const std::vector<bounds::Table1Row>& rows);
[[nodiscard]] std::string table1_text(const std::vector<bounds::Table1Row>& rows);

/// Shortest round-trip decimal form of a double.
[[nodiscard]] std::string format_double(double v);
/// %.6g rendering.
[[nodiscard]] std::string format_significant(double v, int digits = 6);

}  // namespace primpow::report
