#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <string>

#include "bures/types.hpp"

namespace bures {

enum class CheckStatus { pass, fail, info };

struct CheckResult {
  int criterion = 0;
  std::string id;    // e.g. "4b"
  std::string name;  // short description
  double measured = 0.0;
  std::string relation;  // "<", ">", "~" (info)
  double bound = 0.0;
  CheckStatus status = CheckStatus::info;
};

struct ValidationOptions {
  GeometryOptions geometry;
  std::uint64_t seed = 12345;
  unsigned threads = 0;
  std::uint64_t mc_samples = 20000;
  int lattice_nodes = 4;
  // Empty = all criteria 1..11.
  std::set<int> criteria;
};

struct ValidationSummary {
  int passed = 0;
  int failed = 0;
  int info = 0;
};

using CheckSink = std::function<void(const CheckResult&)>;

ValidationSummary run_validation(const ValidationOptions& opts, const CheckSink& sink);

// One stable ASCII line: "PASS 4b  name  measured=... bound=<..."
std::string format_check(const CheckResult& r);

// Spectral coordinates for a (lambda1 >= lambda2 >= lambda3) spectrum.
std::array<double, 2> spherical_from_spectrum(double lambda1, double lambda2);

}  // namespace bures
