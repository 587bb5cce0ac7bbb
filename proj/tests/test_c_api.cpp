#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string>

#include "bures/bures.h"

namespace {

struct Ctx {
  bures_context* p = nullptr;
  Ctx() { REQUIRE(bures_context_create(&p) == BURES_OK); }
  ~Ctx() { bures_context_destroy(p); }
};

}  // namespace

TEST_CASE("point report through the C interface") {
  Ctx ctx;
  const double x[8] = {0.7, 1.1, 0.4, 0.9, 0.6, 0.5, 0.62, 0.33};
  bures_point_report r;
  REQUIRE(bures_point(ctx.p, x, &r) == BURES_OK);
  CHECK(r.spectrum[0] + r.spectrum[1] + r.spectrum[2] == doctest::Approx(1.0));
  CHECK(r.spectrum[0] == doctest::Approx(std::cos(0.62) * std::cos(0.62)));
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) CHECK(r.g[i * 8 + j] == r.g[j * 8 + i]);
  CHECK(r.scalar == doctest::Approx(r.scalar_closed_form).epsilon(1e-9));
  // invariants rows: bures, asd, sd; column 0 is (F,F)
  CHECK(r.invariants[0][0] == doctest::Approx(r.invariants[1][0] + r.invariants[2][0]).epsilon(1e-12));
}

TEST_CASE("errors map to status codes with a message") {
  Ctx ctx;
  const double bad[8] = {0.7, 1.1, 0.4, 0.9, 0.6, 0.5, 0.62, 3.0};
  bures_point_report r;
  CHECK(bures_point(ctx.p, bad, &r) == BURES_OUT_OF_DOMAIN);
  CHECK(std::string(bures_last_error(ctx.p)).find("zeta2") != std::string::npos);
  CHECK(std::strcmp(bures_status_name(BURES_OUT_OF_DOMAIN), "OutOfDomain") == 0);

  const double nan[8] = {NAN, 1.1, 0.4, 0.9, 0.6, 0.5, 0.62, 0.3};
  CHECK(bures_point(ctx.p, nan, &r) == BURES_NON_FINITE_INPUT);

  const double degenerate[8] = {0, 0, 0, 0, 0, 0, 0.7853981633974483, 0};
  CHECK(bures_point(ctx.p, degenerate, &r) == BURES_DEGENERATE_SPECTRUM);

  CHECK(bures_point(ctx.p, nullptr, &r) == BURES_INVALID_ARGUMENT);
  CHECK(bures_point(nullptr, bad, &r) == BURES_INVALID_ARGUMENT);
  CHECK(bures_set_calibration(ctx.p, -1.0) == BURES_INVALID_ARGUMENT);
  CHECK(bures_write_ab_scan(ctx.p, 3, "/nonexistent-dir/ab.csv") == BURES_IO_ERROR);
}

TEST_CASE("table text and actions are deterministic") {
  Ctx ctx;
  char* a = nullptr;
  char* b = nullptr;
  REQUIRE(bures_table_csv(ctx.p, BURES_MONTE_CARLO, 16, 2, 3, &a) == BURES_OK);
  REQUIRE(bures_set_threads(ctx.p, 1) == BURES_OK);
  REQUIRE(bures_table_csv(ctx.p, BURES_MONTE_CARLO, 16, 2, 3, &b) == BURES_OK);
  CHECK(std::string(a) == std::string(b));
  bures_free_string(a);
  bures_free_string(b);

  bures_estimate e[3];
  REQUIRE(bures_actions(ctx.p, 16, 3, e) == BURES_OK);
  CHECK(e[0].value == doctest::Approx(e[1].value + e[2].value).epsilon(1e-12));
  CHECK(e[0].n_evaluated == 16);
}

TEST_CASE("validation callback sees every check") {
  Ctx ctx;
  bures_validate_options o;
  bures_validate_options_init(&o);
  const int crit[1] = {2};
  o.criteria = crit;
  o.n_criteria = 1;
  int count = 0, failed = -1;
  REQUIRE(bures_validate(
              ctx.p, &o,
              [](const bures_check* c, void* user) {
                CHECK(c->criterion == 2);
                CHECK(std::strncmp(c->line, "PASS", 4) == 0);
                ++*static_cast<int*>(user);
              },
              &count, &failed) == BURES_OK);
  CHECK(count > 0);
  CHECK(failed == 0);
}
