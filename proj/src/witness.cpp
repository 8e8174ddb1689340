#include "qfi/witness.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qfi/errors.hpp"

namespace qfi {

double separability_bound(int sites, int m, double width) {
  if (sites < 1) throw DomainError("witness needs N >= 1");
  if (m < 1 || m > sites) throw DomainError("block size must lie in [1, N], got " + std::to_string(m));
  if (!(width > 0.0) || !std::isfinite(width)) throw DomainError("spectral width must be positive");
  const double blocks = sites / m;
  const double rest = sites - (sites / m) * m;
  return width * width * (blocks * m * m + rest * rest);
}

WitnessReport entanglement_depth(double fisher, int sites, double width) {
  if (std::isnan(fisher) || fisher < 0.0) throw DomainError("F_Q must be >= 0");
  if (sites < 1) throw DomainError("witness needs N >= 1");
  if (!(width > 0.0) || !std::isfinite(width)) throw DomainError("spectral width must be positive");
  WitnessReport report{sites, fisher, width, 1, std::nullopt};
  // bound(m) is not monotone in m for non-divisors, so scan every m.
  for (int m = 1; m <= sites; ++m) {
    const double bound = separability_bound(sites, m, width);
    if (fisher > bound) report.depth = std::max(report.depth, std::min(m + 1, sites));
  }
  if (report.depth > 1) report.bound_at_depth = separability_bound(sites, report.depth - 1, width);
  return report;
}

bool depth_for_divisor(double density, int m) { return density > m; }

}  // namespace qfi
