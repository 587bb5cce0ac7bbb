#include <doctest.h>

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "bures/bures_metric.hpp"
#include "bures/error.hpp"
#include "bures/report.hpp"
#include "bures/validation.hpp"
#include "test_support.hpp"

using namespace bures;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

}  // namespace

TEST_CASE("format_double round-trips") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) {
    CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
  }
}

TEST_CASE("ab scan has one row per grid node and matches the closed form") {
  const int n = 5;
  const auto lines = split(ab_scan_csv(n), '\n');
  REQUIRE(lines.size() == static_cast<std::size_t>(n * n + 1));
  CHECK(lines[0] == "zeta1,zeta2,A,B");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto cells = split(lines[i], ',');
    REQUIRE(cells.size() == 4);
    const double z1 = std::stod(cells[0]), z2 = std::stod(cells[1]);
    const Spectrum s = spectrum_from_spherical(z1, z2);
    const SubexpressionsAB ab = closed_form_ab(s);
    CHECK(std::stod(cells[2]) == doctest::Approx(ab.a));
    CHECK(std::stod(cells[3]) == doctest::Approx(ab.b));
  }
  CHECK_THROWS_AS(ab_scan_csv(1), Error);
}

TEST_CASE("table csv layout") {
  QuadratureSpec spec;
  spec.samples = 8;
  const std::string csv = table_csv(invariant_table(spec));
  const auto lines = split(csv, '\n');
  REQUIRE(lines.size() == 5);
  CHECK(lines[0].rfind("field,ff2,f2f2,trf2,f3f3_23,f4f4_12,stderr_ff2", 0) == 0);
  CHECK(lines[1].rfind("bures,", 0) == 0);
  CHECK(lines[4].rfind("diff,", 0) == 0);
  CHECK(split(lines[2], ',').size() == 11);
}

TEST_CASE("write_file reports unwritable paths") {
  try {
    write_file("/nonexistent-dir/x.csv", "x");
    FAIL("expected io_error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::io_error);
    CHECK(std::string(e.what()).find("/nonexistent-dir/x.csv") != std::string::npos);
  }
}

TEST_CASE("spherical coordinates invert the spectrum map") {
  const auto z = spherical_from_spectrum(0.6, 0.3);
  const Spectrum s = spectrum_from_spherical(z[0], z[1]);
  CHECK(s.lambda1 == doctest::Approx(0.6));
  CHECK(s.lambda2 == doctest::Approx(0.3));
}

TEST_CASE("validation of the volume element passes and reports one line per check") {
  ValidationOptions opts;
  opts.criteria = {2};
  std::vector<CheckResult> seen;
  const ValidationSummary sum = run_validation(opts, [&](const CheckResult& r) { seen.push_back(r); });
  REQUIRE(!seen.empty());
  CHECK(sum.failed == 0);
  for (const auto& r : seen) {
    CHECK(r.criterion == 2);
    CHECK(format_check(r).rfind("PASS " + r.id, 0) == 0);
  }
}
