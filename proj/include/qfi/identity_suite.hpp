#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qfi {

/// One random (H, O, T) instance evaluated along the independent QFI routes.
struct IdentityCase {
  std::string label;
  int dim = 0;
  double temperature = 0.0;
  double double_sum = 0.0;  // qfi_thermal
  double spectrum = 0.0;    // qfi_from_spectrum(lehmann_chi)
  double fdt = 0.0;         // qfi_from_structure_factor(lehmann_structure_factor)
  std::optional<double> sum_rule;  // (2/T) sum w omega, T > 0 only
  double deviation = 0.0;          // max relative disagreement of the three routes
  bool sum_rule_holds = true;
};

struct IdentitySuiteOptions {
  int instances = 200;
  std::vector<int> dims{2, 4, 8, 16, 32, 64};
  double t_min = 1e-3;  // temperatures log-uniform in [t_min, t_max]
  double t_max = 1e2;
  std::uint64_t seed = 0;
  /// Adds dim = 1, T = 0, T = inf and degenerate-spectrum instances.
  bool edge_cases = true;
};

struct IdentityReport {
  std::vector<IdentityCase> cases;
  double max_deviation = 0.0;
  bool sum_rule_holds = true;

  bool passed(double tolerance = 1e-10) const { return max_deviation <= tolerance && sum_rule_holds; }
};

/// Random complex Hermitian H and O with Gaussian entries (mt19937_64(seed)).
IdentityReport run_identity_suite(const IdentitySuiteOptions& options = {});

/// |a - b| / max(|a|, |b|), 0 when both vanish.
double relative_deviation(double a, double b);

}  // namespace qfi
