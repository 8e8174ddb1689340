#include "qfi/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "qfi/errors.hpp"

namespace qfi {
namespace {

using Populations = std::vector<Eigen::VectorXd>;

// Visits every unordered pair of distinct eigenstates that the generator
// couples: f(e_a, e_b, p_a, p_b, |O_ab|^2).
template <class F>
void for_each_pair(const SpectralResolution& r, const Populations& p, F&& f) {
  for (const auto& b : r.blocks()) {
    const Eigen::VectorXd& ea = r.energies(b.row_sector);
    const Eigen::VectorXd& eb = r.energies(b.col_sector);
    const Eigen::VectorXd& pa = p[b.row_sector];
    const Eigen::VectorXd& pb = p[b.col_sector];
    const bool same = b.row_sector == b.col_sector;
    for (Eigen::Index j = 0; j < eb.size(); ++j) {
      const Eigen::Index rows = same ? j : ea.size();
      for (Eigen::Index i = 0; i < rows; ++i) f(ea[i], eb[j], pa[i], pb[j], b.weights(i, j));
    }
  }
}

void check_positive_temperature(double temperature, const char* what) {
  if (std::isnan(temperature) || temperature < 0.0) throw DomainError(std::string(what) + ": temperature must be >= 0");
  if (temperature == 0.0) throw DomainError(std::string(what) + ": undefined at T = 0");
}

struct Transition {
  double omega;
  double chi;        // (p_lo - p_hi) |O|^2
  double structure;  // (p_lo + p_hi) |O|^2
};

// Weights written as p_lo (1 -/+ exp(-omega/T)) so that chi / structure equals
// tanh(omega / 2T) to rounding, even when p_lo and p_hi nearly cancel.
std::vector<Transition> transitions(const SpectralResolution& r, double temperature) {
  const Populations p = r.populations(temperature);
  const double tol = r.degeneracy_tolerance();
  const double floor = 1e-24 * std::max(1.0, r.max_weight());
  std::vector<Transition> out;
  for_each_pair(r, p, [&](double ea, double eb, double pa, double pb, double w) {
    if (w <= floor) return;
    const double omega = std::abs(eb - ea);
    if (omega <= tol) return;
    const double p_lo = ea < eb ? pa : pb;
    if (p_lo == 0.0) return;
    const double x = std::isinf(temperature) ? 0.0 : omega / temperature;
    out.push_back({omega, -p_lo * std::expm1(-x) * w, p_lo * (1.0 + std::exp(-x)) * w});
  });
  std::sort(out.begin(), out.end(), [](const Transition& a, const Transition& b) { return a.omega < b.omega; });
  return out;
}

// Merges frequencies within `tol` of the first member of each cluster; the
// merged frequency is the structure-weighted mean.
std::vector<Transition> merge(const std::vector<Transition>& sorted, double tol) {
  std::vector<Transition> merged;
  std::size_t i = 0;
  while (i < sorted.size()) {
    const double start = sorted[i].omega;
    double chi = 0.0, structure = 0.0, moment = 0.0, plain = 0.0, last = start;
    std::size_t count = 0;
    for (; i < sorted.size() && sorted[i].omega - start <= tol; ++i, ++count) {
      chi += sorted[i].chi;
      structure += sorted[i].structure;
      moment += sorted[i].structure * (sorted[i].omega - start);
      plain += sorted[i].omega - start;
      last = sorted[i].omega;
    }
    // Offsets from `start` keep the mean inside the cluster even for
    // subnormal weights.
    const double offset = structure > 0.0 ? moment / structure : plain / static_cast<double>(count);
    merged.push_back({std::clamp(start + offset, start, last), chi, structure});
  }
  return merged;
}

double elastic_weight(const SpectralResolution& r, const Populations& p) {
  const double tol = r.degeneracy_tolerance();
  double diagonal = 0.0;
  double mean = 0.0;
  for (Eigen::Index s = 0; s < r.sector_count(); ++s) {
    const Eigen::VectorXd& d = r.diagonal(s);
    diagonal += (p[s].array() * d.array().square()).sum();
    mean += p[s].dot(d);
  }
  double degenerate = 0.0;
  for_each_pair(r, p, [&](double ea, double eb, double pa, double pb, double w) {
    if (std::abs(eb - ea) <= tol) degenerate += (pa + pb) * w;
  });
  return std::max(0.0, diagonal + degenerate - mean * mean);
}

void check_matching_temperature(const DeltaSpectrum& spectrum, double temperature) {
  if (std::isnan(temperature) || temperature < 0.0) throw DomainError("temperature must be >= 0");
  const double t0 = spectrum.temperature();
  if (std::isinf(t0) && std::isinf(temperature)) return;
  if (std::abs(t0 - temperature) > 1e-12 * std::max(1.0, temperature)) {
    throw ValidationError("spectrum built at T = " + std::to_string(t0) + " evaluated at T = " +
                          std::to_string(temperature));
  }
}

}  // namespace

double tanh_weight(double omega, double temperature) {
  if (temperature == 0.0) return omega > 0.0 ? 1.0 : (omega < 0.0 ? -1.0 : 0.0);
  if (std::isinf(temperature)) return 0.0;
  return std::tanh(omega / (2.0 * temperature));
}

double qfi_thermal(const SpectralResolution& resolution, double temperature) {
  const Populations p = resolution.populations(temperature);
  double sum = 0.0;
  for_each_pair(resolution, p, [&](double, double, double pa, double pb, double w) {
    const double total = pa + pb;
    if (total > 0.0) sum += (pa - pb) * (pa - pb) / total * w;
  });
  // Each unordered pair stands for the two ordered terms of the double sum.
  return 4.0 * sum;
}

double qfi_thermal(const ThermalEnsemble& ensemble, const HermitianOperator& generator) {
  return qfi_thermal(resolve(ensemble, generator), ensemble.temperature());
}

double qfi_pure(const Eigen::VectorXcd& state, const HermitianOperator& generator) {
  if (state.size() != generator.dim()) throw ValidationError("qfi_pure: dimension mismatch");
  if (std::abs(state.norm() - 1.0) > 1e-10) throw ValidationError("qfi_pure: state is not normalised");
  const Eigen::VectorXcd applied = generator.matrix() * state;
  const double mean = state.dot(applied).real();
  return 4.0 * (applied - mean * state).squaredNorm();
}

double expectation(const SpectralResolution& resolution, double temperature) {
  const Populations p = resolution.populations(temperature);
  double mean = 0.0;
  for (Eigen::Index s = 0; s < resolution.sector_count(); ++s) mean += p[s].dot(resolution.diagonal(s));
  return mean;
}

DeltaSpectrum lehmann_chi(const SpectralResolution& resolution, double temperature) {
  const auto merged = merge(transitions(resolution, temperature), resolution.degeneracy_tolerance());
  std::vector<SpectralPeak> peaks;
  for (const auto& t : merged) {
    if (t.chi != 0.0) peaks.push_back({t.omega, t.chi});
  }
  return DeltaSpectrum(std::move(peaks), 0.0, temperature, SpectrumKind::susceptibility);
}

DeltaSpectrum lehmann_chi(const ThermalEnsemble& ensemble, const HermitianOperator& generator) {
  return lehmann_chi(resolve(ensemble, generator), ensemble.temperature());
}

DeltaSpectrum lehmann_structure_factor(const SpectralResolution& resolution, double temperature) {
  const auto merged = merge(transitions(resolution, temperature), resolution.degeneracy_tolerance());
  std::vector<SpectralPeak> peaks;
  for (const auto& t : merged) {
    if (t.structure != 0.0) peaks.push_back({t.omega, t.structure});
  }
  const double elastic = elastic_weight(resolution, resolution.populations(temperature));
  return DeltaSpectrum(std::move(peaks), elastic, temperature, SpectrumKind::structure_factor);
}

DeltaSpectrum lehmann_structure_factor(const ThermalEnsemble& ensemble, const HermitianOperator& generator) {
  return lehmann_structure_factor(resolve(ensemble, generator), ensemble.temperature());
}

DeltaSpectrum susceptibility_from_structure_factor(const DeltaSpectrum& structure_factor) {
  if (structure_factor.kind() != SpectrumKind::structure_factor) {
    throw ValidationError("susceptibility_from_structure_factor: expected a structure factor");
  }
  const double t = structure_factor.temperature();
  std::vector<SpectralPeak> peaks;
  peaks.reserve(structure_factor.peaks().size());
  for (const auto& p : structure_factor.peaks()) peaks.push_back({p.omega, tanh_weight(p.omega, t) * p.weight});
  return DeltaSpectrum(std::move(peaks), 0.0, t, SpectrumKind::susceptibility);
}

double qfi_from_spectrum(const DeltaSpectrum& susceptibility, double temperature) {
  if (susceptibility.kind() != SpectrumKind::susceptibility) {
    throw ValidationError("qfi_from_spectrum: expected a susceptibility spectrum");
  }
  check_matching_temperature(susceptibility, temperature);
  double sum = 0.0;
  for (const auto& p : susceptibility.peaks()) sum += tanh_weight(p.omega, temperature) * p.weight;
  return 4.0 * sum;
}

double qfi_from_structure_factor(const DeltaSpectrum& structure_factor, double temperature) {
  if (structure_factor.kind() != SpectrumKind::structure_factor) {
    throw ValidationError("qfi_from_structure_factor: expected a structure factor");
  }
  check_matching_temperature(structure_factor, temperature);
  double sum = 0.0;
  for (const auto& p : structure_factor.peaks()) {
    const double t = tanh_weight(p.omega, temperature);
    sum += t * t * p.weight;
  }
  return 4.0 * sum;
}

double sum_rule_bound(const DeltaSpectrum& susceptibility, double temperature) {
  check_positive_temperature(temperature, "sum_rule_bound");
  if (susceptibility.kind() != SpectrumKind::susceptibility) {
    throw ValidationError("sum_rule_bound: expected a susceptibility spectrum");
  }
  check_matching_temperature(susceptibility, temperature);
  if (std::isinf(temperature)) return 0.0;
  return 2.0 / temperature * susceptibility.first_moment();
}

double static_kubo_susceptibility(const DeltaSpectrum& susceptibility) {
  double sum = 0.0;
  for (const auto& p : susceptibility.peaks()) sum += p.weight / p.omega;
  return 2.0 * sum;
}

SusceptibilityDecomposition isothermal_decomposition(const SpectralResolution& resolution, double temperature) {
  check_positive_temperature(temperature, "isothermal_decomposition");
  const Populations p = resolution.populations(temperature);
  const double tol = resolution.degeneracy_tolerance();
  const double x_scale = std::isinf(temperature) ? 0.0 : 1.0 / temperature;
  double vanvleck = 0.0;
  for_each_pair(resolution, p, [&](double ea, double eb, double pa, double pb, double w) {
    const double omega = std::abs(eb - ea);
    if (omega <= tol) return;
    const double p_lo = ea < eb ? pa : pb;
    vanvleck += -p_lo * std::expm1(-omega * x_scale) * w / omega;
  });
  SusceptibilityDecomposition d;
  d.classical_fisher = elastic_weight(resolution, p);
  d.chi_elastic = d.classical_fisher / temperature;
  d.chi_vanvleck = 2.0 * vanvleck;
  d.chi_isothermal = d.chi_elastic + d.chi_vanvleck;
  return d;
}

SusceptibilityDecomposition isothermal_decomposition(const ThermalEnsemble& ensemble,
                                                     const HermitianOperator& generator) {
  return isothermal_decomposition(resolve(ensemble, generator), ensemble.temperature());
}

}  // namespace qfi
