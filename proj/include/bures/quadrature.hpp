#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <numbers>
#include <span>
#include <string_view>
#include <vector>

#include "bures/invariants.hpp"
#include "bures/state_space.hpp"
#include "bures/types.hpp"

namespace bures {

enum class Method { monte_carlo, lattice };

struct QuadratureSpec {
  Method method = Method::monte_carlo;
  std::uint64_t samples = 1000;  // monte_carlo
  int nodes_per_dim = 2;         // lattice: k^6 nodes
  std::uint64_t seed = 0;
  GeometryOptions geometry;
  // Draws per sample index before the index counts as rejected.
  int max_attempts = 16;
  // RetryExhausted once the rejected fraction exceeds this.
  double max_rejected_fraction = 1e-3;
  // 0 = hardware concurrency.  Results do not depend on it.
  unsigned threads = 0;
};

void validate(const QuadratureSpec& spec);

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;  // monte_carlo only
  std::uint64_t n_evaluated = 0;
  std::uint64_t n_rejected = 0;
};

// Full eight-dimensional coordinate box volume, pi^7/32 * arccos(3^{-1/2}).
double box_volume();

// Fixed values of the two Killing directions; integrands do not depend on them.
inline constexpr double kFixedAlpha = std::numbers::pi / 2;
inline constexpr double kFixedA = std::numbers::pi / 2;

// 64-bit finalizer of SplitMix64.
std::uint64_t mix64(std::uint64_t z);

// Uniform draw in [0,1) keyed by (seed, index, attempt, slot).  Stateless:
// the value depends on nothing else.
double counter_uniform(std::uint64_t seed, std::uint64_t index, std::uint32_t attempt,
                       std::uint32_t slot);

// Uniform point in the six active coordinates (tau, beta, b, theta, zeta1, zeta2).
ParameterPoint sample_point(std::uint64_t seed, std::uint64_t index, std::uint32_t attempt = 0);

// Midpoint node of the k^6 lattice, node in [0, k^6), last coordinate fastest.
ParameterPoint lattice_point(int nodes_per_dim, std::uint64_t node);

std::uint64_t planned_points(const QuadratureSpec& spec);

// Writes the integrand values at a point into out.  Errors with code
// degenerate_spectrum or singular_metric count as rejections.
using Integrand = std::function<void(const ParameterPoint&, std::span<double>)>;

// monte_carlo: V * mean over samples; lattice: V * sum / k^6 (rejected nodes
// contribute zero).  Per-index results are reduced by pairwise summation in
// index order, so the output is independent of the thread schedule.
std::vector<Estimate> integrate(const QuadratureSpec& spec, std::size_t n_outputs,
                                const Integrand& integrand);

// Pairwise (cascade) sum in the given order.
double pairwise_sum(std::span<const double> values);

enum Field : int { kFieldBures = 0, kFieldAsd, kFieldSd, kFieldDiff };
inline constexpr std::array<std::string_view, 4> kFieldNames = {"bures", "asd", "sd", "diff"};

enum Invariant : int { kFF = 0, kFF2, kF2F2, kTrF2, kF3F3, kF4F4 };
inline constexpr int kInvariants = 6;
inline constexpr std::array<std::string_view, kInvariants> kInvariantNames = {
    "ff", "ff2", "f2f2", "trf2", "f3f3_23", "f4f4_12"};

// Pointwise invariants of F, F- (asd), F+ (sd) and F+ - F- (diff), each
// multiplied by sqrt(det g).
struct FieldInvariants {
  double sqrt_det = 0.0;
  std::array<InvariantRow, 4> rows;
};
FieldInvariants field_invariants(const ParameterPoint& p, const GeometryOptions& opts = {});

std::array<double, kInvariants> row_values(const InvariantRow& row);

struct InvariantTable {
  Method method = Method::monte_carlo;
  // [field][invariant]
  std::array<std::array<Estimate, kInvariants>, 4> rows;
};

InvariantTable invariant_table(const QuadratureSpec& spec);

struct YangMillsActions {
  Estimate full;   // ||F||^2
  Estimate plus;   // ||F+||^2
  Estimate minus;  // ||F-||^2
};

// ||F||^2 = integral of (F,F) dvol, coupling factor 1.
YangMillsActions ym_actions(const QuadratureSpec& spec);
YangMillsActions ym_actions(const InvariantTable& table);

struct CodazziSurvey {
  std::uint64_t n = 0;
  double min = 0.0;
  double mean = 0.0;
  double max = 0.0;
};

// Codazzi residual at the monte_carlo sample points (no volume weight).
CodazziSurvey codazzi_survey(const QuadratureSpec& spec);

}  // namespace bures
