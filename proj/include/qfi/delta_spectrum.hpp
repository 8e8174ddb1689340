#pragma once

#include <string_view>
#include <vector>

namespace qfi {

enum class SpectrumKind { susceptibility, structure_factor };

std::string_view to_string(SpectrumKind kind);

struct SpectralPeak {
  double omega = 0.0;
  double weight = 0.0;
};

/// Exact spectrum as a list of delta peaks at positive frequencies.
///
/// kind = susceptibility:   chi''(w) = pi * sum_k w_k [delta(w - w_k) - delta(w + w_k)]
/// kind = structure_factor: S(w)     = pi * sum_k s_k [delta(w - w_k) + delta(w + w_k)]
///                                     + 2 pi s_0 delta(w)
/// with S the symmetrised correlator, so that chi'' = tanh(w / 2T) S.
class DeltaSpectrum {
 public:
  DeltaSpectrum(std::vector<SpectralPeak> peaks, double elastic_weight, double temperature, SpectrumKind kind);

  const std::vector<SpectralPeak>& peaks() const noexcept { return peaks_; }
  double elastic_weight() const noexcept { return elastic_weight_; }
  double temperature() const noexcept { return temperature_; }
  SpectrumKind kind() const noexcept { return kind_; }
  bool empty() const noexcept { return peaks_.empty(); }

  /// sum_k w_k
  double total_weight() const;
  /// sum_k w_k * omega_k
  double first_moment() const;

 private:
  std::vector<SpectralPeak> peaks_;
  double elastic_weight_;
  double temperature_;
  SpectrumKind kind_;
};

}  // namespace qfi
