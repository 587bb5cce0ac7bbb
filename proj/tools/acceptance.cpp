#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "bures/bures.h"

namespace {

// Wall-clock limits per criterion in seconds, 0 = none.
constexpr double kLimit[12] = {0, 10, 10, 0, 120, 0, 0, 0, 0, 0, 1800, 0};

struct Tally {
  int pass = 0;
  int fail = 0;
  int info = 0;
};

}  // namespace

int main(int argc, char** argv) {
  bures_validate_options opts;
  bures_validate_options_init(&opts);
  if (argc > 1) opts.seed = std::strtoull(argv[1], nullptr, 10);

  bures_context* ctx = nullptr;
  if (bures_context_create(&ctx) != BURES_OK) return 2;

  int failed_criteria = 0;
  for (int k = 1; k <= 11; ++k) {
    opts.criteria = &k;
    opts.n_criteria = 1;
    Tally t;
    int failed = 0;
    const auto start = std::chrono::steady_clock::now();
    const bures_status s = bures_validate(
        ctx, &opts,
        [](const bures_check* c, void* user) {
          auto* tally = static_cast<Tally*>(user);
          if (c->status == BURES_CHECK_PASS) ++tally->pass;
          if (c->status == BURES_CHECK_FAIL) ++tally->fail;
          if (c->status == BURES_CHECK_INFO) ++tally->info;
          std::printf("  %s\n", c->line);
          std::fflush(stdout);
        },
        &t, &failed);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::string verdict;
    if (s != BURES_OK) {
      verdict = std::string("FAIL (") + bures_status_name(s) + ": " + bures_last_error(ctx) + ")";
    } else if (t.fail > 0) {
      verdict = "FAIL";
    } else if (kLimit[k] > 0 && secs > kLimit[k]) {
      verdict = "FAIL (runtime)";
    } else if (t.pass == 0) {
      verdict = "INFO";
    } else {
      verdict = "PASS";
    }
    if (verdict.rfind("FAIL", 0) == 0) ++failed_criteria;

    char limit[32] = "none";
    if (kLimit[k] > 0) std::snprintf(limit, sizeof limit, "%.0f s", kLimit[k]);
    std::printf("%s criterion %d  checks pass=%d fail=%d info=%d  runtime=%.2f s  limit=%s\n",
                verdict.c_str(), k, t.pass, t.fail, t.info, secs, limit);
    std::fflush(stdout);
  }
  bures_context_destroy(ctx);
  std::printf("%d of 11 criteria failing\n", failed_criteria);
  return failed_criteria == 0 ? 0 : 1;
}
