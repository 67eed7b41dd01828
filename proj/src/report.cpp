#include "primpow/report.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

namespace primpow::report {

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return {buf, ptr};
}

std::string format_significant(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::vector<std::uint32_t> element_coeffs(u64 p, unsigned n, std::uint32_t value) {
  std::vector<std::uint32_t> out(n);
  u64 v = value;
  for (unsigned i = 0; i < n; ++i, v /= p) out[i] = static_cast<std::uint32_t>(v % p);
  return out;
}

Json element_json(const Field& field, FieldElement x) { return Json(field.coeffs(x)); }

Json envelope(const std::string& command, Json params, Json results, double timing_ms) {
  Json out;
  out["command"] = command;
  out["params"] = std::move(params);
  out["results"] = std::move(results);
  out["timing_ms"] = timing_ms;
  out["version"] = kVersion;
  return out;
}

Json scan_row_json(const counting::ScanRow& row) {
  Json sample = Json::array();
  for (const auto& f : row.witnessless_sample) {
    Json poly;
    poly["a"] = element_coeffs(row.p, row.n, f.a.value);
    poly["b"] = element_coeffs(row.p, row.n, f.b.value);
    poly["c"] = element_coeffs(row.p, row.n, f.c.value);
    sample.push_back(std::move(poly));
  }
  Json out;
  out["q"] = row.q;
  out["p"] = row.p;
  out["n"] = row.n;
  out["field"] = row.field;
  out["exceptional"] = row.exceptional;
  out["witnessless_count"] = row.witnessless_count;
  out["witnessless_sample"] = std::move(sample);
  out["millis"] = row.millis;
  return out;
}

Json scan_results_json(const counting::ScanReport& report) {
  Json rows = Json::array();
  for (const auto& row : report.rows) rows.push_back(scan_row_json(row));
  Json out;
  out["k"] = report.k;
  out["q_range"] = {report.q_lo, report.q_hi};
  out["fields_scanned"] = report.rows.size();
  out["exceptional"] = report.exceptional();
  out["rows"] = std::move(rows);
  return out;
}

std::string scan_csv_header() { return "q,exceptional,witnessless_count,millis"; }

std::string scan_csv_row(const counting::ScanRow& row) {
  std::ostringstream out;
  out << row.q << ',' << (row.exceptional ? 1 : 0) << ',' << row.witnessless_count << ',' << format_double(row.millis);
  return out.str();
}

std::string scan_text_row(const counting::ScanRow& row) {
  std::ostringstream out;
  out << "q=" << row.q << " (" << row.field << ") " << (row.exceptional ? "EXCEPTIONAL" : "ok");
  if (row.exceptional) out << " witnessless=" << row.witnessless_count;
  out << " [" << format_double(row.millis) << " ms]";
  return out.str();
}

namespace {

std::string flag(const bounds::Table1Cell& cell) {
  if (!cell.published) return cell.computed ? "published-absent" : "";
  if (!cell.computed) return "computed-absent";
  return cell.match ? "match" : "mismatch";
}

}  // namespace

Json table1_json(const std::vector<bounds::Table1Row>& rows) {
  Json out = Json::array();
  for (const auto& row : rows) {
    Json r;
    r["omega"] = row.omega;
    r["primorial"] = row.primorial;
    r["primorial_published"] = row.published_primorial;
    r["primorial_match"] = row.primorial == row.published_primorial;
    Json cells = Json::array();
    for (const auto& cell : row.cells) {
      if (!cell) continue;
      Json c;
      c["s"] = cell->s;
      c["computed"] = cell->computed ? Json(*cell->computed) : Json(nullptr);
      c["published"] = cell->published ? Json(*cell->published) : Json(nullptr);
      c["closed"] = cell->closed;
      c["flag"] = flag(*cell);
      cells.push_back(std::move(c));
    }
    r["cells"] = std::move(cells);
    out.push_back(std::move(r));
  }
  return out;
}

std::string table1_csv(const std::vector<bounds::Table1Row>& rows) {
  std::ostringstream out;
  out << "omega,primorial,s1,s2,s3,s1_published,s2_published,s3_published,s1_flag,s2_flag,s3_flag,"
         "s1_closed,s2_closed,s3_closed\n";
  for (const auto& row : rows) {
    out << row.omega << ',' << row.primorial;
    for (const auto& cell : row.cells) {
      out << ',';
      if (cell && cell->computed) out << format_double(*cell->computed);
    }
    for (const auto& cell : row.cells) {
      out << ',';
      if (cell && cell->published) out << *cell->published;
    }
    for (const auto& cell : row.cells) out << ',' << (cell ? flag(*cell) : "");
    for (const auto& cell : row.cells) {
      out << ',';
      if (cell && cell->computed) out << (cell->closed ? 1 : 0);
    }
    out << '\n';
  }
  return out.str();
}

std::string table1_text(const std::vector<bounds::Table1Row>& rows) {
  std::ostringstream out;
  out << "omega  primorial   s=1 (computed/published)   s=2 (computed/published)   s=3 (computed/published)\n";
  for (const auto& row : rows) {
    out << row.omega << "  " << row.primorial;
    for (const auto& cell : row.cells) {
      out << "  |  ";
      if (!cell) {
        out << "-";
        continue;
      }
      out << (cell->computed ? format_significant(*cell->computed, 8) : std::string("n/a")) << " / "
          << (cell->published ? std::to_string(*cell->published) : std::string("blank"));
      const auto f = flag(*cell);
      if (!f.empty()) out << " [" << f << (cell->closed ? ", closed" : "") << "]";
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace primpow::report
