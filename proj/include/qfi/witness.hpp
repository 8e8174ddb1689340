#pragma once

#include <optional>

namespace qfi {

/// Entanglement depth certified by a QFI value.
struct WitnessReport {
  int sites = 1;
  double fisher = 0.0;  // total F_Q
  double width = 1.0;   // per-site h_max - h_min of the generator
  int depth = 1;        // 1 <= depth <= sites
  /// bound(depth - 1), the threshold that F_Q exceeded; empty when depth = 1.
  std::optional<double> bound_at_depth;

  double density() const noexcept { return fisher / sites; }
};

/// Largest F_Q reachable by m-producible states of `sites` spins:
/// width^2 (floor(N/m) m^2 + (N - floor(N/m) m)^2).
double separability_bound(int sites, int m, double width = 1.0);

/// depth = 1 + max{m : F_Q > separability_bound(N, m, width)}, m = 1..N.
/// Throws DomainError for F_Q < 0, N < 1 or width <= 0.
WitnessReport entanglement_depth(double fisher, int sites, double width = 1.0);

/// f_Q > m (strict): (m+1)-partite entanglement when m divides N.
bool depth_for_divisor(double density, int m);

}  // namespace qfi
