#include "qfi/delta_spectrum.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "qfi/errors.hpp"

namespace qfi {

std::string_view to_string(SpectrumKind kind) {
  switch (kind) {
    case SpectrumKind::susceptibility:
      return "susceptibility";
    case SpectrumKind::structure_factor:
      return "structure_factor";
  }
  return "unknown";
}

DeltaSpectrum::DeltaSpectrum(std::vector<SpectralPeak> peaks, double elastic_weight, double temperature,
                             SpectrumKind kind)
    : peaks_(std::move(peaks)), elastic_weight_(elastic_weight), temperature_(temperature), kind_(kind) {
  if (std::isnan(temperature_) || temperature_ < 0.0) throw DomainError("DeltaSpectrum: temperature must be >= 0");
  if (!std::isfinite(elastic_weight_) || elastic_weight_ < 0.0) {
    throw ValidationError("DeltaSpectrum: elastic weight must be finite and >= 0");
  }
  double previous = 0.0;
  for (const auto& p : peaks_) {
    if (!std::isfinite(p.omega) || !std::isfinite(p.weight)) throw ValidationError("DeltaSpectrum: non-finite peak");
    if (!(p.omega > previous)) {
      throw ValidationError("DeltaSpectrum: peak frequencies must be positive and strictly ascending (omega = " +
                            std::to_string(p.omega) + ")");
    }
    previous = p.omega;
  }
}

double DeltaSpectrum::total_weight() const {
  double s = 0.0;
  for (const auto& p : peaks_) s += p.weight;
  return s;
}

double DeltaSpectrum::first_moment() const {
  double s = 0.0;
  for (const auto& p : peaks_) s += p.weight * p.omega;
  return s;
}

}  // namespace qfi
