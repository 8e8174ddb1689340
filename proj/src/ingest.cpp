#include "qfi/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <string_view>

#include "qfi/errors.hpp"
#include "qfi/spectral.hpp"

namespace qfi {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::optional<double> to_double(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || end != s.data() + s.size()) return std::nullopt;
  return v;
}

std::string without_spaces(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c != ' ' && c != '\t' && c != '\r') out.push_back(c);
  }
  return out;
}

double spectral_weight(SpectrumKind kind, double omega, double temperature) {
  const double t = tanh_weight(omega, temperature);
  return kind == SpectrumKind::susceptibility ? t : t * t;
}

double gaussian(double x, double sigma) {
  return std::exp(-0.5 * (x / sigma) * (x / sigma)) / (sigma * std::sqrt(2.0 * std::numbers::pi));
}

}  // namespace

void SampledSpectrum::validate() const {
  if (omega.empty()) throw ValidationError("spectrum has no samples");
  if (omega.size() != values.size()) throw ValidationError("spectrum omega and values differ in length");
  for (std::size_t i = 0; i < omega.size(); ++i) {
    if (!std::isfinite(omega[i]) || !std::isfinite(values[i])) throw ValidationError("spectrum samples must be finite");
    if (omega[i] < 0.0) throw ValidationError("spectrum frequencies must be >= 0");
    if (i > 0 && !(omega[i] > omega[i - 1])) throw ValidationError("spectrum frequencies must be strictly ascending");
  }
  if (!std::isfinite(t_min) || !std::isfinite(t_max) || t_min < 0.0 || t_min > t_max) {
    throw ValidationError("temperature interval must satisfy 0 <= T_min <= T_max < inf");
  }
  if (sigma && (!std::isfinite(*sigma) || *sigma < 0.0)) throw ValidationError("sigma must be >= 0");
  if (omega_max && (std::isnan(*omega_max) || *omega_max < 0.0)) throw ValidationError("omega_max must be >= 0");
}

bool SampledSpectrum::has_negative_values() const {
  return std::any_of(values.begin(), values.end(), [](double v) { return v < 0.0; });
}

SampledSpectrum parse_spectrum(std::istream& in, const SpectrumMetadata& overrides) {
  SampledSpectrum out;
  SpectrumMetadata meta;
  std::optional<std::size_t> header_line;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string_view text = trim(line);
    if (text.empty()) continue;
    if (text.front() == '#') {
      const std::string_view body = trim(text.substr(1));
      const auto eq = body.find('=');
      if (eq == std::string_view::npos) continue;  // free-form comment
      const std::string key(trim(body.substr(0, eq)));
      const auto value = to_double(body.substr(eq + 1));
      if (!value) throw ParseError(number, "metadata value for '" + key + "' is not a number");
      if (key == "T") {
        meta.t_min = meta.t_max = *value;
      } else if (key == "T_min") {
        meta.t_min = *value;
      } else if (key == "T_max") {
        meta.t_max = *value;
      } else if (key == "sigma") {
        meta.sigma = *value;
      } else if (key == "omega_max") {
        meta.omega_max = *value;
      } else {
        throw ParseError(number, "unknown metadata key '" + key + "'");
      }
      continue;
    }
    if (!header_line) {
      const std::string header = without_spaces(text);
      if (header == "omega,chi2") {
        out.kind = SpectrumKind::susceptibility;
      } else if (header == "omega,s") {
        out.kind = SpectrumKind::structure_factor;
      } else {
        throw ParseError(number, "expected header 'omega,chi2' or 'omega,s'");
      }
      header_line = number;
      continue;
    }
    const auto comma = text.find(',');
    if (comma == std::string_view::npos || text.find(',', comma + 1) != std::string_view::npos) {
      throw ParseError(number, "expected two comma-separated columns");
    }
    const auto omega = to_double(text.substr(0, comma));
    const auto value = to_double(text.substr(comma + 1));
    if (!omega || !value) throw ParseError(number, "non-numeric value");
    if (!std::isfinite(*omega) || !std::isfinite(*value)) throw ParseError(number, "non-finite value");
    if (*omega < 0.0) throw ParseError(number, "negative frequency");
    if (!out.omega.empty() && !(*omega > out.omega.back())) {
      throw ParseError(number, "frequencies must be strictly ascending");
    }
    out.omega.push_back(*omega);
    out.values.push_back(*value);
  }
  if (!header_line) throw ParseError(number, "missing header 'omega,chi2'");
  if (out.omega.empty()) throw ParseError(number, "no data rows");

  if (overrides.t_min) meta.t_min = overrides.t_min;
  if (overrides.t_max) meta.t_max = overrides.t_max;
  if (overrides.sigma) meta.sigma = overrides.sigma;
  if (overrides.omega_max) meta.omega_max = overrides.omega_max;
  if (!meta.t_min || !meta.t_max) throw ParseError(*header_line, "missing temperature metadata (T_min, T_max)");
  out.t_min = *meta.t_min;
  out.t_max = *meta.t_max;
  out.sigma = meta.sigma;
  out.omega_max = meta.omega_max;
  try {
    out.validate();
  } catch (const ValidationError& e) {
    throw ParseError(*header_line, e.what());
  }
  return out;
}

SampledSpectrum parse_spectrum_file(const std::filesystem::path& path, const SpectrumMetadata& overrides) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open spectrum file " + path.string());
  return parse_spectrum(in, overrides);
}

bool QfiEstimate::has_flag(const std::string& flag) const {
  return std::find(flags.begin(), flags.end(), flag) != flags.end();
}

QfiEstimate qfi_lower_bound(const SampledSpectrum& spectrum, std::optional<double> weighting_temperature) {
  spectrum.validate();
  if (weighting_temperature && (std::isnan(*weighting_temperature) || *weighting_temperature < 0.0)) {
    throw DomainError("weighting temperature must be >= 0");
  }
  const double t = weighting_temperature.value_or(spectrum.t_max);
  const double cutoff = spectrum.omega_max.value_or(std::numeric_limits<double>::infinity());

  const auto& w = spectrum.omega;
  const std::size_t n = w.size();
  std::vector<double> clamped(n), raw(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double k = spectral_weight(spectrum.kind, w[i], t);
    raw[i] = k * spectrum.values[i];
    clamped[i] = k * std::max(0.0, spectrum.values[i]);
  }
  auto integrate = [&](const std::vector<double>& g) {
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < n && w[i] < cutoff; ++i) {
      const double right = std::min(w[i + 1], cutoff);
      const double g_right = g[i] + (g[i + 1] - g[i]) * (right - w[i]) / (w[i + 1] - w[i]);
      sum += 0.5 * (right - w[i]) * (g[i] + g_right);
    }
    return 4.0 / std::numbers::pi * sum;
  };

  QfiEstimate est;
  est.value = integrate(clamped);
  est.raw_value = integrate(raw);
  est.weighting_temperature = t;
  if (spectrum.omega_max && *spectrum.omega_max < w.back()) est.flags.emplace_back("cutoff_limited");
  if (spectrum.sigma && *spectrum.sigma > 0.0) est.flags.emplace_back("broadened");
  if (spectrum.t_min < spectrum.t_max) est.flags.emplace_back("temperature_uncertain");
  if (spectrum.has_negative_values()) est.flags.emplace_back("negative_clamped");
  if (weighting_temperature) est.flags.emplace_back("weighting_override");
  return est;
}

SampledSpectrum broaden(const DeltaSpectrum& exact, double sigma, const std::vector<double>& grid) {
  if (!std::isfinite(sigma) || sigma < 0.0) throw ValidationError("sigma must be >= 0");
  if (!std::isfinite(exact.temperature())) throw ValidationError("broaden needs a finite temperature");
  if (grid.size() < 2) throw ValidationError("grid needs at least 2 points");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i]) || grid[i] < 0.0) throw ValidationError("grid points must be finite and >= 0");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw ValidationError("grid must be strictly ascending");
  }
  for (const auto& p : exact.peaks()) {
    if (p.omega < grid.front() || p.omega > grid.back()) {
      throw ValidationError("grid [" + std::to_string(grid.front()) + ", " + std::to_string(grid.back()) +
                            "] does not cover the peak at omega = " + std::to_string(p.omega));
    }
  }

  const std::size_t n = grid.size();
  SampledSpectrum out;
  out.omega = grid;
  out.values.assign(n, 0.0);
  out.kind = exact.kind();
  out.t_min = out.t_max = exact.temperature();
  out.sigma = sigma;
  out.omega_max = grid.back();
  const double mirror = exact.kind() == SpectrumKind::susceptibility ? -1.0 : 1.0;
  const double pi = std::numbers::pi;

  if (sigma > 0.0) {
    for (std::size_t i = 0; i < n; ++i) {
      double v = 0.0;
      for (const auto& p : exact.peaks()) {
        v += p.weight * (gaussian(grid[i] - p.omega, sigma) + mirror * gaussian(grid[i] + p.omega, sigma));
      }
      if (exact.kind() == SpectrumKind::structure_factor) v += 2.0 * exact.elastic_weight() * gaussian(grid[i], sigma);
      out.values[i] = pi * v;
    }
    return out;
  }

  // Trapezoid quadrature weight of each node.
  std::vector<double> h(n);
  h.front() = 0.5 * (grid[1] - grid[0]);
  h.back() = 0.5 * (grid[n - 1] - grid[n - 2]);
  for (std::size_t i = 1; i + 1 < n; ++i) h[i] = 0.5 * (grid[i + 1] - grid[i - 1]);
  for (const auto& p : exact.peaks()) {
    auto it = std::upper_bound(grid.begin(), grid.end(), p.omega);
    std::size_t i = static_cast<std::size_t>(it - grid.begin());
    i = std::clamp<std::size_t>(i, 1, n - 1) - 1;
    const double t = (p.omega - grid[i]) / (grid[i + 1] - grid[i]);
    out.values[i] += (1.0 - t) * pi * p.weight / h[i];
    out.values[i + 1] += t * pi * p.weight / h[i + 1];
  }
  return out;
}

std::vector<double> uniform_grid(double omega_max, int points) {
  if (points < 2) throw ValidationError("grid needs at least 2 points");
  if (!(omega_max > 0.0) || !std::isfinite(omega_max)) throw ValidationError("omega_max must be positive");
  std::vector<double> g(points);
  for (int i = 0; i < points; ++i) g[i] = omega_max * i / (points - 1);
  g.back() = omega_max;
  return g;
}

}  // namespace qfi
