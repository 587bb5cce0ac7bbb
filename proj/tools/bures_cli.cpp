#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bures/bures.h"

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitCheck = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;

const char* const kCoordNames[8] = {"alpha", "tau", "a", "beta", "b", "theta", "zeta1", "zeta2"};
const char* const kInvariantNames[6] = {"ff", "ff2", "f2f2", "trf2", "f3f3_23", "f4f4_12"};
const char* const kRowNames[3] = {"bures", "asd", "sd"};

int exit_code(bures_status s) {
  switch (s) {
    case BURES_OK: return kExitOk;
    case BURES_OUT_OF_DOMAIN:
    case BURES_NON_FINITE_INPUT:
    case BURES_DEGENERATE_SPECTRUM:
    case BURES_SINGULAR_METRIC:
    case BURES_RETRY_EXHAUSTED: return kExitDomain;
    case BURES_INVALID_ARGUMENT: return kExitUsage;
    default: return kExitCheck;
  }
}

int fail(bures_context* ctx, bures_status s) {
  std::fprintf(stderr, "error: %s: %s\n", bures_status_name(s), bures_last_error(ctx));
  return exit_code(s);
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ordered_json matrix_json(const double* m) {
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < 8; ++i) rows.push_back(std::vector<double>(m + i * 8, m + i * 8 + 8));
  return rows;
}

ordered_json estimate_json(const bures_estimate& e) {
  return {{"value", e.value}, {"stderr", e.std_error}, {"n_evaluated", e.n_evaluated},
          {"n_rejected", e.n_rejected}};
}

struct Options {
  unsigned threads = 0;
  double calibration = 0.5;
  double threshold = 1e-8;

  std::uint64_t seed = 12345;
  std::uint64_t samples = 1000;
  int nodes = 2;
  std::string method = "mc";
  std::string out;
  std::string format = "json";
  int grid = 64;
  std::vector<double> coords;
  std::vector<int> criteria;
  std::uint64_t validate_samples = 20000;
  int validate_nodes = 4;
};

int run_validate(bures_context* ctx, const Options& o) {
  bures_validate_options vo;
  bures_validate_options_init(&vo);
  vo.seed = o.seed;
  vo.mc_samples = o.validate_samples;
  vo.lattice_nodes = o.validate_nodes;
  vo.criteria = o.criteria.empty() ? nullptr : o.criteria.data();
  vo.n_criteria = o.criteria.size();
  int failed = 0;
  const bures_status s = bures_validate(
      ctx, &vo,
      [](const bures_check* c, void*) {
        std::printf("%s\n", c->line);
        std::fflush(stdout);
      },
      nullptr, &failed);
  if (s != BURES_OK) return fail(ctx, s);
  std::printf("%s: %d failing check(s)\n", failed == 0 ? "OK" : "FAILED", failed);
  return failed == 0 ? kExitOk : kExitCheck;
}

int run_point(bures_context* ctx, const Options& o) {
  bures_point_report r;
  const bures_status s = bures_point(ctx, o.coords.data(), &r);
  if (s != BURES_OK) return fail(ctx, s);

  ordered_json doc;
  ordered_json coords;
  for (int i = 0; i < 8; ++i) coords[kCoordNames[i]] = o.coords[static_cast<std::size_t>(i)];
  doc["coords"] = coords;
  doc["spectrum"] = {r.spectrum[0], r.spectrum[1], r.spectrum[2]};
  doc["g"] = matrix_json(r.g);
  doc["g_inv"] = matrix_json(r.g_inv);
  doc["sqrt_det"] = r.sqrt_det;
  doc["scalar_curvature"] = r.scalar;
  doc["scalar_curvature_closed_form"] = r.scalar_closed_form;
  doc["codazzi_residual"] = r.codazzi;
  ordered_json inv;
  for (int k = 0; k < 3; ++k) {
    ordered_json row;
    for (int c = 0; c < 6; ++c) row[kInvariantNames[c]] = r.invariants[k][c];
    inv[kRowNames[k]] = row;
  }
  doc["invariants"] = inv;
  ordered_json sv;
  int n = 0;
  for (int a = 1; a <= 8; ++a)
    for (int b = a + 1; b <= 8; ++b, ++n)
      sv[std::to_string(a) + std::to_string(b)] = std::vector<double>(r.singular_values[n], r.singular_values[n] + 8);
  doc["singular_values"] = sv;
  std::cout << doc.dump(2) << "\n";
  return kExitOk;
}

int run_table(bures_context* ctx, const Options& o) {
  const bures_method m = o.method == "lattice" ? BURES_LATTICE : BURES_MONTE_CARLO;
  const bures_status s = bures_write_table(ctx, m, o.samples, o.nodes, o.seed, o.out.c_str());
  if (s != BURES_OK) return fail(ctx, s);
  std::fprintf(stderr, "wrote %s\n", o.out.c_str());
  return kExitOk;
}

int run_action(bures_context* ctx, const Options& o) {
  bures_estimate e[3];
  const bures_status s = bures_actions(ctx, o.samples, o.seed, e);
  if (s != BURES_OK) return fail(ctx, s);
  const char* names[3] = {"F", "F+", "F-"};
  if (o.format == "csv") {
    std::printf("field,norm2,stderr,n_evaluated,n_rejected\n");
    for (int i = 0; i < 3; ++i) {
      std::printf("%s,%s,%s,%llu,%llu\n", names[i], num(e[i].value).c_str(), num(e[i].std_error).c_str(),
                  static_cast<unsigned long long>(e[i].n_evaluated),
                  static_cast<unsigned long long>(e[i].n_rejected));
    }
    return kExitOk;
  }
  ordered_json doc;
  doc["samples"] = o.samples;
  doc["seed"] = o.seed;
  for (int i = 0; i < 3; ++i) doc[names[i]] = estimate_json(e[i]);
  std::cout << doc.dump(2) << "\n";
  return kExitOk;
}

int run_codazzi(bures_context* ctx, const Options& o) {
  bures_codazzi_summary c;
  const bures_status s = bures_codazzi_survey(ctx, o.samples, o.seed, &c);
  if (s != BURES_OK) return fail(ctx, s);
  if (o.format == "csv") {
    std::printf("n,min,mean,max\n%llu,%s,%s,%s\n", static_cast<unsigned long long>(c.n),
                num(c.min).c_str(), num(c.mean).c_str(), num(c.max).c_str());
    return kExitOk;
  }
  ordered_json doc{{"samples", o.samples}, {"seed", o.seed}, {"n", c.n},
                   {"min", c.min},         {"mean", c.mean}, {"max", c.max}};
  std::cout << doc.dump(2) << "\n";
  return kExitOk;
}

int run_ab_scan(bures_context* ctx, const Options& o) {
  const bures_status s = bures_write_ab_scan(ctx, o.grid, o.out.c_str());
  if (s != BURES_OK) return fail(ctx, s);
  std::fprintf(stderr, "wrote %s\n", o.out.c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Bures-metric geometry of 3x3 density matrices"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  app.add_option("--threads", o.threads, "Worker threads, 0 = all cores")->check(CLI::NonNegativeNumber);
  app.add_option("--calibration", o.calibration, "Metric calibration constant c")->check(CLI::PositiveNumber);
  app.add_option("--threshold", o.threshold, "Degeneracy guard on eigenvalues and gaps")->check(CLI::PositiveNumber);

  auto* validate = app.add_subcommand("validate", "Run the acceptance checks, one line per check");
  validate->add_option("--seed", o.seed, "Seed for sampled check points");
  validate->add_option("--samples", o.validate_samples, "Monte-Carlo samples for quadrature checks")
      ->check(CLI::Range(2, 100000000));
  validate->add_option("--nodes", o.validate_nodes, "Lattice nodes per dimension for quadrature checks")
      ->check(CLI::Range(2, 64));
  validate->add_option("--criteria", o.criteria, "Subset of criteria (1-11) to run")
      ->check(CLI::Range(1, 11))
      ->delimiter(',');

  auto* point = app.add_subcommand("point", "Evaluate geometry at one point, JSON to stdout");
  point->add_option("coords", o.coords, "alpha tau a beta b theta zeta1 zeta2")->expected(8)->required();

  auto* table = app.add_subcommand("table", "Integrate the invariant table to CSV");
  table->add_option("--method", o.method, "mc or lattice")->check(CLI::IsMember({"mc", "lattice"}));
  auto* samples_opt = table->add_option("--samples", o.samples, "Monte-Carlo samples")->check(CLI::Range(1, 1000000000));
  auto* nodes_opt = table->add_option("--nodes", o.nodes, "Lattice nodes per dimension")->check(CLI::Range(2, 64));
  samples_opt->excludes(nodes_opt);
  table->add_option("--seed", o.seed, "Monte-Carlo seed");
  table->add_option("--out", o.out, "Output CSV path")->required();

  auto* action = app.add_subcommand("action", "Yang-Mills norms |F|^2, |F+|^2, |F-|^2");
  action->add_option("--samples", o.samples, "Monte-Carlo samples")->check(CLI::Range(1, 1000000000));
  action->add_option("--seed", o.seed, "Monte-Carlo seed");
  action->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  auto* codazzi = app.add_subcommand("codazzi", "Codazzi residual statistics over sampled points");
  codazzi->add_option("--samples", o.samples, "Sample points")->check(CLI::Range(1, 1000000000));
  codazzi->add_option("--seed", o.seed, "Sampling seed");
  codazzi->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  auto* ab = app.add_subcommand("ab-scan", "Subexpressions A and B over the spectral box to CSV");
  ab->add_option("--grid", o.grid, "Grid points per spectral angle")->check(CLI::Range(2, 100000));
  ab->add_option("--out", o.out, "Output CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }
  if (*table && o.method == "lattice" && samples_opt->count() > 0) {
    std::fprintf(stderr, "error: --samples applies to --method mc only\n");
    return kExitUsage;
  }
  if (*table && o.method == "mc" && nodes_opt->count() > 0) {
    std::fprintf(stderr, "error: --nodes applies to --method lattice only\n");
    return kExitUsage;
  }

  bures_context* ctx = nullptr;
  if (bures_context_create(&ctx) != BURES_OK) return kExitCheck;
  int rc = kExitOk;
  bures_status s = bures_set_threads(ctx, o.threads);
  if (s == BURES_OK) s = bures_set_calibration(ctx, o.calibration);
  if (s == BURES_OK) s = bures_set_degeneracy_threshold(ctx, o.threshold);
  if (s != BURES_OK) {
    rc = fail(ctx, s);
  } else if (*validate) {
    rc = run_validate(ctx, o);
  } else if (*point) {
    rc = run_point(ctx, o);
  } else if (*table) {
    rc = run_table(ctx, o);
  } else if (*action) {
    rc = run_action(ctx, o);
  } else if (*codazzi) {
    rc = run_codazzi(ctx, o);
  } else if (*ab) {
    rc = run_ab_scan(ctx, o);
  }
  bures_context_destroy(ctx);
  return rc;
}
