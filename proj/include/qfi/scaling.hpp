#pragma once

#include <limits>
#include <string_view>
#include <utility>
#include <vector>

namespace qfi {

struct PowerLawFit {
  double exponent = 0.0;
  double prefactor = 0.0;
  double standard_error = 0.0;  // of the exponent
};

/// Least-squares line through (log x, log y): y = prefactor * x^exponent.
/// Needs >= 3 points; nonpositive data throws DomainError.
PowerLawFit fit_power_law(const std::vector<std::pair<double, double>>& points);

/// Three-point central differences on a possibly nonuniform grid, one-sided
/// second-order stencils at the ends. x strictly ascending, >= 3 points.
std::vector<double> central_derivative(const std::vector<double>& x, const std::vector<double>& y);

struct DerivativePeak {
  double position = 0.0;
  double height = 0.0;  // signed derivative at the extremum of |dy/dx|
  bool flat = false;    // constant derivative: position is the window midpoint
};

/// Extremum of |dy/dx| refined by a parabola through the largest sample and
/// its neighbours. >= 5 points, x strictly ascending (else ValidationError).
DerivativePeak derivative_peak(const std::vector<double>& x, const std::vector<double>& y);

/// f_Q^(1/d), a lower-bound multipartite entanglement length.
double entanglement_length(double density, int dimension);

// ---------------------------------------------------------------------------
// Data collapse.

struct ScalingRow {
  double size = 0.0;         // N or L
  double temperature = 0.0;  // T
  double field = 0.0;        // distance from criticality h~
  double value = 0.0;        // f_Q or a derivative of it
};

/// Rows with unique (size, temperature, field) keys and finite entries.
/// Values must be >= 0 up to rounding (1e-12 of the largest magnitude), which
/// admits derivative data that vanishes at the edge of a window.
class ScalingDataset {
 public:
  explicit ScalingDataset(std::vector<ScalingRow> rows);
  const std::vector<ScalingRow>& rows() const noexcept { return rows_; }

 private:
  std::vector<ScalingRow> rows_;
};

/// Which variable labels the curves, and the scaling form tested:
///   size:        value = N^a   phi(T N^b)          exponents (a, b) = (Delta_Q, z)
///   temperature: value = T^-a  phi(h~ T^-c)        exponents (a, c) = (Delta_Q/z, 1/(z nu))
///   field:       value = h~^-a phi(T h~^-b)        exponents (a, b)
enum class CollapseAxis { size, temperature, field };

std::string_view to_string(CollapseAxis axis);

struct CollapseOptions {
  /// Restricts the common support in the scaling variable.
  double window_lo = -std::numeric_limits<double>::infinity();
  double window_hi = std::numeric_limits<double>::infinity();
  int samples = 200;
};

struct CollapseResult {
  CollapseAxis axis = CollapseAxis::size;
  std::vector<double> exponents;
  /// mean over the support of the between-curve variance / mean of the squared
  /// mean curve; 0 for a perfect collapse.
  double residual = 0.0;
  /// sqrt(mean variance) / max |mean curve|: spread relative to the amplitude.
  double relative_spread = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
  int curves = 0;
  int iterations = 0;
};

/// Rescales each curve by `exponents`, interpolates linearly onto the common
/// support (log-spaced when it is positive) and measures the spread.
/// Throws ValidationError for < 2 curves, CollapseError without overlap.
CollapseResult collapse_quality(const ScalingDataset& data, CollapseAxis axis, const std::vector<double>& exponents,
                                const CollapseOptions& options = {});

/// Minimises the residual over both exponents with a Nelder-Mead simplex
/// started at `guess`. Deterministic, independent of row order.
CollapseResult collapse(const ScalingDataset& data, CollapseAxis axis, const std::vector<double>& guess,
                        const CollapseOptions& options = {});

}  // namespace qfi
