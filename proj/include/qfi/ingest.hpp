#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qfi/delta_spectrum.hpp"

namespace qfi {

/// Tabulated spectrum on omega >= 0 with its measurement metadata.
///
/// kind = susceptibility:   values are chi''(omega)
/// kind = structure_factor: values are the symmetrised S(omega)
/// normalised so that F_Q = (4/pi) int_0^inf tanh(w/2T) chi''(w) dw
///                        = (4/pi) int_0^inf tanh^2(w/2T) S(w) dw.
struct SampledSpectrum {
  std::vector<double> omega;  // strictly ascending, >= 0
  std::vector<double> values;
  SpectrumKind kind = SpectrumKind::susceptibility;
  double t_min = 0.0;
  double t_max = 0.0;
  std::optional<double> sigma;      // Gaussian resolution width, if known
  std::optional<double> omega_max;  // cutoff of the measured window

  /// Throws ValidationError on a broken invariant.
  void validate() const;
  bool has_negative_values() const;
};

/// Metadata supplied outside the file; set fields override `#key=value` lines.
struct SpectrumMetadata {
  std::optional<double> t_min;
  std::optional<double> t_max;
  std::optional<double> sigma;
  std::optional<double> omega_max;
};

/// Reads CSV with header `omega,chi2` (or `omega,s` for a structure factor).
/// Lines `#key=value` set T (both bounds), T_min, T_max, sigma, omega_max.
/// Errors carry the 1-based line number (ParseError).
SampledSpectrum parse_spectrum(std::istream& in, const SpectrumMetadata& overrides = {});
SampledSpectrum parse_spectrum_file(const std::filesystem::path& path, const SpectrumMetadata& overrides = {});

struct QfiEstimate {
  double value = 0.0;      // negative samples clamped to zero
  double raw_value = 0.0;  // without clamping
  double weighting_temperature = 0.0;
  std::vector<std::string> flags;

  bool has_flag(const std::string& flag) const;
};

/// Trapezoidal (4/pi) int_0^omega_max of tanh(w/2T_w) chi'' (or tanh^2 S),
/// the last partial interval interpolated linearly.
///
/// With the data fixed both weights decrease in T_w, so T_w = T_max gives a
/// lower bound for every true T in [T_min, T_max]. An explicit
/// `weighting_temperature` replaces T_max and adds the flag
/// "weighting_override" since the guarantee is then the caller's.
/// Flags: cutoff_limited, broadened, temperature_uncertain, negative_clamped.
QfiEstimate qfi_lower_bound(const SampledSpectrum& spectrum,
                            std::optional<double> weighting_temperature = std::nullopt);

/// Renders an exact spectrum on `grid` (ascending, >= 0, covering every peak):
/// sigma > 0 replaces pi w_k delta(w - w_k) by pi w_k [G(w - w_k) -+ G(w + w_k)]
/// (odd for chi'', even for S) with a unit-mass Gaussian G of width sigma;
/// sigma = 0 splits pi w_k between the two neighbouring grid points so that
/// the trapezoid rule integrates it exactly. The elastic term of a structure
/// factor is rendered only for sigma > 0; it carries no QFI weight.
SampledSpectrum broaden(const DeltaSpectrum& exact, double sigma, const std::vector<double>& grid);

/// n evenly spaced points on [0, omega_max].
std::vector<double> uniform_grid(double omega_max, int points);

}  // namespace qfi
