#include "bures/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "bures/bures_metric.hpp"
#include "bures/curvature.hpp"
#include "bures/error.hpp"
#include "bures/spin7.hpp"

namespace bures {
namespace {

constexpr double kPi = std::numbers::pi;

// Active coordinates in sampling order.
constexpr std::array<int, 6> kActive = {kTau, kBeta, kB, kTheta, kZeta1, kZeta2};

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs body(i) for i in [0, n) on a pool of threads.  Each index is handled by
// exactly one call; results must be written by index.
template <typename Body>
void parallel_for(std::uint64_t n, unsigned threads, Body&& body) {
  const unsigned t = static_cast<unsigned>(std::min<std::uint64_t>(resolve_threads(threads), std::max<std::uint64_t>(n, 1)));
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  constexpr std::uint64_t kChunk = 16;

  auto worker = [&]() {
    for (;;) {
      const std::uint64_t start = next.fetch_add(kChunk);
      if (start >= n) return;
      const std::uint64_t stop = std::min(n, start + kChunk);
      try {
        for (std::uint64_t i = start; i < stop; ++i) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(n);
        return;
      }
    }
  };

  if (t <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(t);
    for (unsigned k = 0; k < t; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
}

bool is_rejection(const Error& e) {
  return e.code() == ErrorCode::degenerate_spectrum || e.code() == ErrorCode::singular_metric;
}

}  // namespace

void validate(const QuadratureSpec& spec) {
  if (spec.method == Method::monte_carlo && spec.samples < 1) {
    throw Error(ErrorCode::invalid_argument, "monte-carlo sample count must be >= 1");
  }
  if (spec.method == Method::lattice && spec.nodes_per_dim < 2) {
    throw Error(ErrorCode::invalid_argument, "lattice nodes per dimension must be >= 2");
  }
  if (!(spec.geometry.degeneracy_threshold > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "degeneracy threshold must be > 0");
  }
  if (spec.max_attempts < 1) throw Error(ErrorCode::invalid_argument, "max_attempts must be >= 1");
}

double box_volume() { return std::pow(kPi, 7) / 32.0 * kZeta1Max; }

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double counter_uniform(std::uint64_t seed, std::uint64_t index, std::uint32_t attempt,
                       std::uint32_t slot) {
  const std::uint64_t key = mix64(mix64(seed) ^ index);
  const std::uint64_t bits = mix64(key ^ ((static_cast<std::uint64_t>(attempt) << 32) | slot));
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

ParameterPoint sample_point(std::uint64_t seed, std::uint64_t index, std::uint32_t attempt) {
  const auto& box = domain_box();
  ParameterPoint p;
  p[kAlpha] = kFixedAlpha;
  p[kA] = kFixedA;
  for (std::uint32_t j = 0; j < kActive.size(); ++j) {
    const auto c = static_cast<std::size_t>(kActive[j]);
    p[c] = box.lower[c] + (box.upper[c] - box.lower[c]) * counter_uniform(seed, index, attempt, j);
  }
  return p;
}

ParameterPoint lattice_point(int k, std::uint64_t node) {
  const auto& box = domain_box();
  ParameterPoint p;
  p[kAlpha] = kFixedAlpha;
  p[kA] = kFixedA;
  for (int j = static_cast<int>(kActive.size()) - 1; j >= 0; --j) {
    const auto c = static_cast<std::size_t>(kActive[static_cast<std::size_t>(j)]);
    const auto digit = static_cast<double>(node % static_cast<std::uint64_t>(k));
    node /= static_cast<std::uint64_t>(k);
    p[c] = box.lower[c] + (box.upper[c] - box.lower[c]) * (digit + 0.5) / k;
  }
  return p;
}

std::uint64_t planned_points(const QuadratureSpec& spec) {
  if (spec.method == Method::monte_carlo) return spec.samples;
  std::uint64_t n = 1;
  for (int j = 0; j < 6; ++j) n *= static_cast<std::uint64_t>(spec.nodes_per_dim);
  return n;
}

double pairwise_sum(std::span<const double> v) {
  constexpr std::size_t kBlock = 8;
  if (v.size() <= kBlock) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

std::vector<Estimate> integrate(const QuadratureSpec& spec, std::size_t n_outputs,
                                const Integrand& integrand) {
  validate(spec);
  const std::uint64_t n = planned_points(spec);
  std::vector<double> values(n * n_outputs, 0.0);
  std::vector<unsigned char> ok(n, 0);
  const bool mc = spec.method == Method::monte_carlo;
  const int attempts = mc ? spec.max_attempts : 1;

  parallel_for(n, spec.threads, [&](std::uint64_t i) {
    std::span<double> out(values.data() + i * n_outputs, n_outputs);
    for (int attempt = 0; attempt < attempts; ++attempt) {
      const ParameterPoint p = mc ? sample_point(spec.seed, i, static_cast<std::uint32_t>(attempt))
                                  : lattice_point(spec.nodes_per_dim, i);
      try {
        integrand(p, out);
        ok[i] = 1;
        return;
      } catch (const Error& e) {
        if (!is_rejection(e)) throw;
        std::fill(out.begin(), out.end(), 0.0);
      }
    }
  });

  std::uint64_t evaluated = 0;
  for (unsigned char f : ok) evaluated += f;
  const std::uint64_t rejected = n - evaluated;
  if (evaluated == 0 ||
      static_cast<double>(rejected) > spec.max_rejected_fraction * static_cast<double>(n)) {
    throw Error(ErrorCode::retry_exhausted,
                std::to_string(rejected) + " of " + std::to_string(n) +
                    " points rejected by the degeneracy guard");
  }

  const double volume = box_volume();
  std::vector<Estimate> est(n_outputs);
  std::vector<double> column;
  column.reserve(n);
  for (std::size_t o = 0; o < n_outputs; ++o) {
    column.clear();
    for (std::uint64_t i = 0; i < n; ++i) {
      if (mc && !ok[i]) continue;
      column.push_back(values[i * n_outputs + o]);
    }
    Estimate& e = est[o];
    e.n_evaluated = evaluated;
    e.n_rejected = rejected;
    const double mean = pairwise_sum(column) / static_cast<double>(mc ? evaluated : n);
    e.value = volume * mean;
    if (mc && evaluated > 1) {
      for (double& x : column) x = (x - mean) * (x - mean);
      const double var = pairwise_sum(column) / static_cast<double>(evaluated - 1);
      e.std_error = volume * std::sqrt(var / static_cast<double>(evaluated));
    }
  }
  return est;
}

std::array<double, kInvariants> row_values(const InvariantRow& r) {
  return {r.ff, r.ff2, r.f2f2, r.trf2, r.f3f3_23, r.f4f4_12};
}

FieldInvariants field_invariants(const ParameterPoint& p, const GeometryOptions& opts) {
  const MetricAtPoint m = metric(p, opts);
  const CurvatureTwoForm f = frame_curvature(p, opts);
  const DualParts parts = decompose(f);

  FieldInvariants out;
  out.sqrt_det = m.sqrt_det;
  out.rows[kFieldBures] = invariant_row(f);
  out.rows[kFieldAsd] = invariant_row(parts.minus);
  out.rows[kFieldSd] = invariant_row(parts.plus);
  out.rows[kFieldDiff] = invariant_row(parts.plus - parts.minus);
  return out;
}

InvariantTable invariant_table(const QuadratureSpec& spec) {
  constexpr std::size_t kOutputs = 4 * kInvariants;
  const GeometryOptions geo = spec.geometry;
  const auto est = integrate(spec, kOutputs, [geo](const ParameterPoint& p, std::span<double> out) {
    const FieldInvariants fi = field_invariants(p, geo);
    for (int f = 0; f < 4; ++f) {
      const auto vals = row_values(fi.rows[static_cast<std::size_t>(f)]);
      for (int k = 0; k < kInvariants; ++k) {
        out[static_cast<std::size_t>(f * kInvariants + k)] = fi.sqrt_det * vals[static_cast<std::size_t>(k)];
      }
    }
  });
  InvariantTable t;
  t.method = spec.method;
  for (int f = 0; f < 4; ++f)
    for (int k = 0; k < kInvariants; ++k)
      t.rows[static_cast<std::size_t>(f)][static_cast<std::size_t>(k)] =
          est[static_cast<std::size_t>(f * kInvariants + k)];
  return t;
}

YangMillsActions ym_actions(const InvariantTable& t) {
  return {t.rows[kFieldBures][kFF], t.rows[kFieldSd][kFF], t.rows[kFieldAsd][kFF]};
}

YangMillsActions ym_actions(const QuadratureSpec& spec) {
  const GeometryOptions geo = spec.geometry;
  const auto est = integrate(spec, 3, [geo](const ParameterPoint& p, std::span<double> out) {
    const MetricAtPoint m = metric(p, geo);
    const CurvatureTwoForm f = frame_curvature(p, geo);
    const DualParts parts = decompose(f);
    auto norm2 = [](const CurvatureTwoForm& x) {
      double s = 0.0;
      for (const auto& c : x.f) s += c.squaredNorm();
      return s;
    };
    out[0] = m.sqrt_det * norm2(f);
    out[1] = m.sqrt_det * norm2(parts.plus);
    out[2] = m.sqrt_det * norm2(parts.minus);
  });
  return {est[0], est[1], est[2]};
}

CodazziSurvey codazzi_survey(const QuadratureSpec& spec) {
  validate(spec);
  const std::uint64_t n = spec.samples;
  std::vector<double> res(n, 0.0);
  std::vector<unsigned char> ok(n, 0);
  parallel_for(n, spec.threads, [&](std::uint64_t i) {
    for (int attempt = 0; attempt < spec.max_attempts; ++attempt) {
      try {
        res[i] = codazzi_residual(sample_point(spec.seed, i, static_cast<std::uint32_t>(attempt)),
                                  spec.geometry);
        ok[i] = 1;
        return;
      } catch (const Error& e) {
        if (!is_rejection(e)) throw;
      }
    }
  });
  std::vector<double> vals;
  for (std::uint64_t i = 0; i < n; ++i)
    if (ok[i]) vals.push_back(res[i]);
  if (vals.empty()) throw Error(ErrorCode::retry_exhausted, "no admissible sample points");
  CodazziSurvey s;
  s.n = vals.size();
  s.min = *std::min_element(vals.begin(), vals.end());
  s.max = *std::max_element(vals.begin(), vals.end());
  s.mean = pairwise_sum(vals) / static_cast<double>(vals.size());
  return s;
}

}  // namespace bures
