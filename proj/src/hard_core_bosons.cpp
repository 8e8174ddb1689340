#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "qfi/errors.hpp"
#include "qfi/models.hpp"
#include "qfi/spectral.hpp"
#include "qfi/thermal_ensemble.hpp"

namespace qfi {
namespace {

void check_temperature(double temperature) {
  if (std::isnan(temperature) || temperature < 0.0) {
    throw DomainError("temperature must be >= 0, got " + std::to_string(temperature));
  }
}

// Single-particle band width 4J sets the scale for "zero energy".
double tolerance(const HardCoreBosonSpec& spec) { return degeneracy_tolerance(4.0 * spec.hopping); }

// f(0) = 1/2 at T = 0; |eps| <= tol counts as zero.
double fermi(double energy, double temperature, double tol) {
  if (temperature == 0.0) {
    if (std::abs(energy) <= tol) return 0.5;
    return energy < 0.0 ? 1.0 : 0.0;
  }
  if (std::isinf(temperature)) return 0.5;
  return 0.5 * (1.0 - std::tanh(energy / (2.0 * temperature)));
}

struct ModePair {
  double lo;  // occupation of the lower level
  double hi;
  double omega;
};

// Pairs (k, k + pi): the staggered density moves one fermion between them.
std::vector<ModePair> mode_pairs(const HardCoreBosonSpec& spec, double temperature) {
  const std::vector<double> k = hcb_momenta(spec);
  const double tol = tolerance(spec);
  const std::size_t half = k.size() / 2;
  std::vector<ModePair> out;
  out.reserve(half);
  for (std::size_t j = 0; j < half; ++j) {
    double a = hcb_dispersion(spec, k[j]);
    double b = hcb_dispersion(spec, k[j + half]);
    if (a > b) std::swap(a, b);
    double omega = b - a;
    if (omega <= tol) omega = 0.0;
    out.push_back({fermi(a, temperature, tol), fermi(b, temperature, tol), omega});
  }
  return out;
}

}  // namespace

void validate(const HardCoreBosonSpec& spec) {
  if (spec.sites < 2 || spec.sites % 2 != 0) {
    throw ValidationError("hard-core bosons need an even number of sites >= 2, got " + std::to_string(spec.sites));
  }
  if (!(spec.hopping > 0.0) || !std::isfinite(spec.hopping)) throw ValidationError("hopping must be positive");
  if (!std::isfinite(spec.mu)) throw ValidationError("chemical potential must be finite");
}

std::vector<double> hcb_momenta(const HardCoreBosonSpec& spec) {
  validate(spec);
  const double offset = spec.grid == MomentumGrid::antiperiodic ? 0.5 : 0.0;
  std::vector<double> k(spec.sites);
  for (int j = 0; j < spec.sites; ++j) k[j] = 2.0 * std::numbers::pi * (j + offset) / spec.sites;
  return k;
}

double hcb_dispersion(const HardCoreBosonSpec& spec, double k) { return -2.0 * (spec.mu + spec.hopping * std::cos(k)); }

double hcb_filling(const HardCoreBosonSpec& spec, double temperature) {
  check_temperature(temperature);
  const double tol = tolerance(spec);
  double n = 0.0;
  for (double k : hcb_momenta(spec)) n += fermi(hcb_dispersion(spec, k), temperature, tol);
  return n / spec.sites;
}

double hcb_qfi(const HardCoreBosonSpec& spec, double temperature) {
  check_temperature(temperature);
  double sum = 0.0;
  for (const auto& m : mode_pairs(spec, temperature)) {
    const double t = tanh_weight(m.omega, temperature);
    // Both orderings k <-> k + pi: f_lo (1 - f_hi) + f_hi (1 - f_lo).
    sum += t * t * (m.lo * (1.0 - m.hi) + m.hi * (1.0 - m.lo));
  }
  return 4.0 * sum / spec.sites;
}

double hcb_qfi_zero_temperature(const HardCoreBosonSpec& spec) {
  validate(spec);
  const double x = spec.mu / spec.hopping;
  double n = 0.0;
  if (x >= 1.0) {
    n = 1.0;
  } else if (x > -1.0) {
    n = 1.0 - std::acos(x) / std::numbers::pi;
  }
  return spec.mu <= 0.0 ? 4.0 * n : 4.0 * (1.0 - n);
}

DeltaSpectrum hcb_structure_factor(const HardCoreBosonSpec& spec, double temperature) {
  check_temperature(temperature);
  const double tol = tolerance(spec);
  std::vector<ModePair> pairs = mode_pairs(spec, temperature);
  std::sort(pairs.begin(), pairs.end(), [](const ModePair& a, const ModePair& b) { return a.omega < b.omega; });

  double elastic = 0.0;
  std::vector<SpectralPeak> peaks;
  double moment = 0.0;
  for (const auto& m : pairs) {
    const double s = m.lo * (1.0 - m.hi) + m.hi * (1.0 - m.lo);
    if (m.omega == 0.0) {
      elastic += s;
      continue;
    }
    if (s == 0.0) continue;
    if (!peaks.empty() && m.omega - peaks.back().omega <= tol) {
      moment += s * m.omega;
      peaks.back().weight += s;
      peaks.back().omega = moment / peaks.back().weight;
      continue;
    }
    peaks.push_back({m.omega, s});
    moment = s * m.omega;
  }
  return DeltaSpectrum(std::move(peaks), elastic, temperature, SpectrumKind::structure_factor);
}

}  // namespace qfi
