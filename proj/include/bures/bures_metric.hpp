#pragma once

#include "bures/state_space.hpp"
#include "bures/types.hpp"

namespace bures {

struct MetricAtPoint {
  Mat8 g;
  Mat8 g_inv;
  double sqrt_det = 0.0;
  Spectrum spectrum;
};

// Condition number above which metric() reports SingularMetric.
inline constexpr double kMaxConditionNumber = 1e12;

// Spectral (Huebner) form of the Bures metric,
//   g_xy = c * sum_{k,l} Re[W_x(k,l) W_y(l,k)] / (lambda_k + lambda_l),
// with W_x the eigenbasis components of d rho / dx.  Only the degeneracy guard
// is applied; used directly by finite-difference stencils.
Mat8 metric_tensor(const ParameterPoint& p, const GeometryOptions& opts = {});

// Full evaluation: domain check, guard, blockwise (6 + 2) inverse and sqrt(det g).
MetricAtPoint metric(const ParameterPoint& p, const GeometryOptions& opts = {});

struct SubexpressionsAB {
  double a = 0.0;
  double b = 0.0;
};

// The two recurring subexpressions of the metric entries, symmetric in
// lambda_1 <-> lambda_2.
SubexpressionsAB closed_form_ab(const Spectrum& s);
SubexpressionsAB closed_form_ab(double lambda1, double lambda2);

struct ClosedFormEntries {
  double g_theta_theta = 0.0;
  double ginv_beta_beta = 0.0;
  double ginv_alpha_alpha = 0.0;
};

// Closed forms for g_{theta theta}, g^{beta beta} and g^{alpha alpha}, exactly
// as published.
ClosedFormEntries closed_form_entries(const ParameterPoint& p,
                                      const GeometryOptions& opts = {});

double volume_element(const ParameterPoint& p, const GeometryOptions& opts = {});

// Published product formula for sqrt|g| in (lambda_1, lambda_2) coordinates,
// multiplied by |d(lambda_1, lambda_2)/d(zeta_1, zeta_2)|.
double closed_form_volume(const ParameterPoint& p, const GeometryOptions& opts = {});

// Bures metric of a two-level state in Bloch coordinates (r, theta_s, phi_s),
// built with the same spectral formula as the three-level metric.
Eigen::Matrix3d bloch_metric(double r, double theta_s, double phi_s,
                             const GeometryOptions& opts = {});

}  // namespace bures
