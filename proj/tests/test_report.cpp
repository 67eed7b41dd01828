#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "primpow/report.hpp"

using namespace primpow;
using namespace primpow::report;

TEST_CASE("element coefficients are low degree first") {
  CHECK(element_coeffs(3, 2, 7) == std::vector<std::uint32_t>{1, 2});
  CHECK(element_coeffs(13, 1, 12) == std::vector<std::uint32_t>{12});
  const Field f = Field::build(2, 4);
  CHECK(element_json(f, f.at(11)) == Json::parse("[1,1,0,1]"));
}

TEST_CASE("envelope key order") {
  const Json e = envelope("count", {{"p", 13}}, {{"n", 0}}, 1.5);
  std::vector<std::string> keys;
  for (const auto& [k, v] : e.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"command", "params", "results", "timing_ms", "version"});
  CHECK(e["version"] == kVersion);
  CHECK(e.dump() == R"({"command":"count","params":{"p":13},"results":{"n":0},"timing_ms":1.5,"version":"1.0.0"})");
}

TEST_CASE("scan JSON schema") {
  const auto report = counting::scan_exceptional(2, 9, 13);
  const Json j = scan_results_json(report);
  CHECK(j["k"] == 2);
  CHECK(j["q_range"] == Json::parse("[9,13]"));
  CHECK(j["fields_scanned"] == 3);
  CHECK(j["exceptional"] == Json::parse("[9,11,13]"));
  const Json& row = j["rows"][0];
  std::vector<std::string> keys;
  for (const auto& [k, v] : row.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"q", "p", "n", "field", "exceptional", "witnessless_count", "witnessless_sample", "millis"});
  CHECK(row["field"] == "3^2:1,0,1");
  CHECK(row["witnessless_count"] == 8);
  CHECK(row["witnessless_sample"].size() == 8);
  CHECK(row["witnessless_sample"][0]["a"].size() == 2);
}

TEST_CASE("scan CSV and text rows") {
  counting::ScanRow row;
  row.q = 25;
  row.field = "5^2:2,0,1";
  row.exceptional = true;
  row.witnessless_count = 6;
  row.millis = 0.5;
  CHECK(scan_csv_header() == "q,exceptional,witnessless_count,millis");
  CHECK(scan_csv_row(row) == "25,1,6,0.5");
  CHECK(scan_text_row(row) == "q=25 (5^2:2,0,1) EXCEPTIONAL witnessless=6 [0.5 ms]");
  row.exceptional = false;
  row.witnessless_count = 0;
  row.millis = 0.0;
  CHECK(scan_text_row(row) == "q=25 (5^2:2,0,1) ok [0 ms]");
}

TEST_CASE("table 1 renderings") {
  const auto rows = bounds::table1_report(2);
  const Json j = table1_json(rows);
  REQUIRE(j.size() == 9);
  CHECK(j[0]["primorial"] == 2);
  CHECK(j[0]["primorial_match"] == true);
  CHECK(j[0]["cells"].size() == 1);
  CHECK(j[0]["cells"][0]["flag"] == "mismatch");
  CHECK(j[2]["cells"][2]["flag"] == "");
  CHECK(j[2]["cells"][2]["computed"].is_null());
  CHECK(j[8]["primorial"] == 223092870);

  const std::string csv = table1_csv(rows);
  CHECK(csv.rfind("omega,primorial,s1,s2,s3,", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 10);
  CHECK(csv.find("\n1,2,64,,,32,,,mismatch,,,0,,\n") != std::string::npos);

  const std::string text = table1_text(rows);
  CHECK(text.find("64 / 32 [mismatch]") != std::string::npos);
  CHECK(text.find("blank") != std::string::npos);
}

TEST_CASE("number formatting") {
  CHECK(format_double(64.0) == "64");
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_significant(528491311.4867, 6) == "5.28491e+08");
  CHECK(format_significant(64.0) == "64");
}
