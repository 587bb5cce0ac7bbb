#include "bures/bures.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include <Eigen/SVD>

#include "bures/bures_metric.hpp"
#include "bures/curvature.hpp"
#include "bures/error.hpp"
#include "bures/quadrature.hpp"
#include "bures/report.hpp"
#include "bures/spin7.hpp"
#include "bures/validation.hpp"

struct bures_context {
  bures::GeometryOptions geometry;
  unsigned threads = 0;
  std::string last_error;
};

namespace {

bures_status to_status(bures::ErrorCode code) {
  switch (code) {
    case bures::ErrorCode::out_of_domain: return BURES_OUT_OF_DOMAIN;
    case bures::ErrorCode::non_finite_input: return BURES_NON_FINITE_INPUT;
    case bures::ErrorCode::degenerate_spectrum: return BURES_DEGENERATE_SPECTRUM;
    case bures::ErrorCode::singular_metric: return BURES_SINGULAR_METRIC;
    case bures::ErrorCode::retry_exhausted: return BURES_RETRY_EXHAUSTED;
    case bures::ErrorCode::degree_overflow: return BURES_DEGREE_OVERFLOW;
    case bures::ErrorCode::degree_mismatch: return BURES_DEGREE_MISMATCH;
    case bures::ErrorCode::invalid_argument: return BURES_INVALID_ARGUMENT;
    case bures::ErrorCode::io_error: return BURES_IO_ERROR;
  }
  return BURES_INTERNAL_ERROR;
}

template <typename Fn>
bures_status guarded(bures_context* ctx, Fn&& fn) {
  if (ctx == nullptr) return BURES_INVALID_ARGUMENT;
  ctx->last_error.clear();
  try {
    fn();
    return BURES_OK;
  } catch (const bures::Error& e) {
    ctx->last_error = e.what();
    return to_status(e.code());
  } catch (const std::exception& e) {
    ctx->last_error = e.what();
  } catch (...) {
    ctx->last_error = "unknown exception";
  }
  return BURES_INTERNAL_ERROR;
}

void require(bool ok, const char* what) {
  if (!ok) throw bures::Error(bures::ErrorCode::invalid_argument, what);
}

bures::QuadratureSpec make_spec(const bures_context* ctx, bures_method method, uint64_t samples,
                                int nodes, uint64_t seed) {
  require(method == BURES_MONTE_CARLO || method == BURES_LATTICE, "unknown quadrature method");
  bures::QuadratureSpec s;
  s.method = method == BURES_LATTICE ? bures::Method::lattice : bures::Method::monte_carlo;
  s.samples = samples;
  s.nodes_per_dim = nodes;
  s.seed = seed;
  s.geometry = ctx->geometry;
  s.threads = ctx->threads;
  bures::validate(s);
  return s;
}

void copy_estimate(const bures::Estimate& e, bures_estimate& out) {
  out.value = e.value;
  out.std_error = e.std_error;
  out.n_evaluated = e.n_evaluated;
  out.n_rejected = e.n_rejected;
}

}  // namespace

extern "C" {

bures_status bures_context_create(bures_context** out) {
  if (out == nullptr) return BURES_INVALID_ARGUMENT;
  *out = new (std::nothrow) bures_context();
  return *out ? BURES_OK : BURES_INTERNAL_ERROR;
}

void bures_context_destroy(bures_context* ctx) { delete ctx; }

const char* bures_last_error(const bures_context* ctx) {
  return ctx ? ctx->last_error.c_str() : "null context";
}

const char* bures_status_name(bures_status status) {
  switch (status) {
    case BURES_OK: return "Ok";
    case BURES_OUT_OF_DOMAIN: return "OutOfDomain";
    case BURES_NON_FINITE_INPUT: return "NonFiniteInput";
    case BURES_DEGENERATE_SPECTRUM: return "DegenerateSpectrum";
    case BURES_SINGULAR_METRIC: return "SingularMetric";
    case BURES_RETRY_EXHAUSTED: return "RetryExhausted";
    case BURES_DEGREE_OVERFLOW: return "DegreeOverflow";
    case BURES_DEGREE_MISMATCH: return "DegreeMismatch";
    case BURES_INVALID_ARGUMENT: return "InvalidArgument";
    case BURES_IO_ERROR: return "IoError";
    case BURES_INTERNAL_ERROR: return "InternalError";
  }
  return "Unknown";
}

bures_status bures_set_threads(bures_context* ctx, unsigned threads) {
  return guarded(ctx, [&] { ctx->threads = threads; });
}

bures_status bures_set_calibration(bures_context* ctx, double c) {
  return guarded(ctx, [&] {
    require(c > 0.0 && std::isfinite(c), "calibration must be positive and finite");
    ctx->geometry.calibration = c;
  });
}

bures_status bures_set_degeneracy_threshold(bures_context* ctx, double threshold) {
  return guarded(ctx, [&] {
    require(threshold > 0.0 && std::isfinite(threshold), "threshold must be positive and finite");
    ctx->geometry.degeneracy_threshold = threshold;
  });
}

bures_status bures_point(bures_context* ctx, const double coords[8], bures_point_report* out) {
  return guarded(ctx, [&] {
    require(coords != nullptr && out != nullptr, "null argument");
    bures::ParameterPoint p;
    for (int i = 0; i < bures::kDim; ++i) p[static_cast<std::size_t>(i)] = coords[i];
    bures::check_finite(p);
    const auto& geo = ctx->geometry;
    const bures::MetricAtPoint m = bures::metric(p, geo);
    const bures::RiemannAtPoint r = bures::riemann(p, geo);
    const bures::FieldInvariants fi = bures::field_invariants(p, geo);
    const bures::CurvatureTwoForm f = bures::frame_curvature(p, geo);

    bures_point_report rep{};
    rep.spectrum[0] = m.spectrum.lambda1;
    rep.spectrum[1] = m.spectrum.lambda2;
    rep.spectrum[2] = m.spectrum.lambda3;
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) {
        rep.g[i * 8 + j] = m.g(i, j);
        rep.g_inv[i * 8 + j] = m.g_inv(i, j);
      }
    rep.sqrt_det = m.sqrt_det;
    rep.scalar = r.scalar;
    rep.scalar_closed_form = bures::scalar_curvature_closed_form(m.spectrum);
    rep.codazzi = bures::codazzi_residual(p, geo);
    const bures::Field rows[3] = {bures::kFieldBures, bures::kFieldAsd, bures::kFieldSd};
    for (int k = 0; k < 3; ++k) {
      const auto v = bures::row_values(fi.rows[static_cast<std::size_t>(rows[k])]);
      for (int c = 0; c < bures::kInvariants; ++c) rep.invariants[k][c] = v[static_cast<std::size_t>(c)];
    }
    for (int n = 0; n < bures::kPairs; ++n) {
      const bures::Vec8 sv = Eigen::JacobiSVD<bures::Mat8>(f.f[static_cast<std::size_t>(n)]).singularValues();
      for (int i = 0; i < 8; ++i) rep.singular_values[n][i] = sv(i);
    }
    *out = rep;
  });
}

bures_status bures_table_csv(bures_context* ctx, bures_method method, uint64_t samples,
                             int nodes_per_dim, uint64_t seed, char** csv) {
  return guarded(ctx, [&] {
    require(csv != nullptr, "null output pointer");
    const std::string text =
        bures::table_csv(bures::invariant_table(make_spec(ctx, method, samples, nodes_per_dim, seed)));
    char* buf = static_cast<char*>(std::malloc(text.size() + 1));
    if (buf == nullptr) throw std::bad_alloc();
    std::memcpy(buf, text.c_str(), text.size() + 1);
    *csv = buf;
  });
}

bures_status bures_write_table(bures_context* ctx, bures_method method, uint64_t samples,
                               int nodes_per_dim, uint64_t seed, const char* path) {
  return guarded(ctx, [&] {
    require(path != nullptr, "null path");
    const auto spec = make_spec(ctx, method, samples, nodes_per_dim, seed);
    bures::write_file(path, bures::table_csv(bures::invariant_table(spec)));
  });
}

void bures_free_string(char* s) { std::free(s); }

bures_status bures_actions(bures_context* ctx, uint64_t samples, uint64_t seed, bures_estimate out[3]) {
  return guarded(ctx, [&] {
    require(out != nullptr, "null output pointer");
    const auto a = bures::ym_actions(make_spec(ctx, BURES_MONTE_CARLO, samples, 2, seed));
    copy_estimate(a.full, out[0]);
    copy_estimate(a.plus, out[1]);
    copy_estimate(a.minus, out[2]);
  });
}

bures_status bures_codazzi_survey(bures_context* ctx, uint64_t samples, uint64_t seed,
                                  bures_codazzi_summary* out) {
  return guarded(ctx, [&] {
    require(out != nullptr, "null output pointer");
    const auto s = bures::codazzi_survey(make_spec(ctx, BURES_MONTE_CARLO, samples, 2, seed));
    *out = {s.n, s.min, s.mean, s.max};
  });
}

bures_status bures_write_ab_scan(bures_context* ctx, int grid_n, const char* path) {
  return guarded(ctx, [&] {
    require(path != nullptr, "null path");
    bures::write_file(path, bures::ab_scan_csv(grid_n));
  });
}

void bures_validate_options_init(bures_validate_options* opts) {
  if (opts == nullptr) return;
  const bures::ValidationOptions d;
  opts->seed = d.seed;
  opts->mc_samples = d.mc_samples;
  opts->lattice_nodes = d.lattice_nodes;
  opts->criteria = nullptr;
  opts->n_criteria = 0;
}

bures_status bures_validate(bures_context* ctx, const bures_validate_options* opts,
                            bures_check_callback callback, void* user, int* failed) {
  return guarded(ctx, [&] {
    bures::ValidationOptions v;
    v.geometry = ctx->geometry;
    v.threads = ctx->threads;
    if (opts != nullptr) {
      require(opts->mc_samples >= 2, "mc_samples must be >= 2");
      require(opts->lattice_nodes >= 2, "lattice_nodes must be >= 2");
      v.seed = opts->seed;
      v.mc_samples = opts->mc_samples;
      v.lattice_nodes = opts->lattice_nodes;
      for (std::size_t i = 0; i < opts->n_criteria; ++i) v.criteria.insert(opts->criteria[i]);
    }
    const auto summary = bures::run_validation(v, [&](const bures::CheckResult& r) {
      if (callback == nullptr) return;
      const std::string line = bures::format_check(r);
      bures_check c;
      c.criterion = r.criterion;
      c.id = r.id.c_str();
      c.name = r.name.c_str();
      c.measured = r.measured;
      c.relation = r.relation.c_str();
      c.bound = r.bound;
      c.status = r.status == bures::CheckStatus::pass   ? BURES_CHECK_PASS
                 : r.status == bures::CheckStatus::fail ? BURES_CHECK_FAIL
                                                        : BURES_CHECK_INFO;
      c.line = line.c_str();
      callback(&c, user);
    });
    if (failed != nullptr) *failed = summary.failed;
  });
}

}  // extern "C"
