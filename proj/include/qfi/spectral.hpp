#pragma once

#include <Eigen/Dense>

#include "qfi/delta_spectrum.hpp"
#include "qfi/hermitian_operator.hpp"
#include "qfi/spectral_resolution.hpp"
#include "qfi/thermal_ensemble.hpp"

namespace qfi {

/// Static susceptibility split into population (Curie) and inter-level parts.
struct SusceptibilityDecomposition {
  double chi_elastic = 0.0;
  double chi_vanvleck = 0.0;
  double chi_isothermal = 0.0;  // chi_elastic + chi_vanvleck, i.e. -d<O>/dh for H + h O
  double classical_fisher = 0.0;
};

/// tanh(omega / 2T), with the limits 1 at T = 0 and 0 at T = +inf.
double tanh_weight(double omega, double temperature);

/// Thermal QFI as the double sum over eigenstate pairs:
/// F_Q = 2 sum_{l,l'} (p_l - p_l')^2 / (p_l + p_l') |<l|O|l'>|^2, pairs with p_l + p_l' = 0 skipped.
double qfi_thermal(const SpectralResolution& resolution, double temperature);
double qfi_thermal(const ThermalEnsemble& ensemble, const HermitianOperator& generator);

/// Pure-state QFI, 4 Var(O). Throws ValidationError if | |psi| - 1 | > 1e-10.
double qfi_pure(const Eigen::VectorXcd& state, const HermitianOperator& generator);

/// Thermal expectation value <O>.
double expectation(const SpectralResolution& resolution, double temperature);

/// Lehmann representation of chi''. One peak per transition frequency
/// E_l' - E_l > 0 with weight sum (p_l - p_l') |O_ll'|^2 >= 0; frequencies
/// closer than the degeneracy tolerance are merged, zero-weight peaks dropped.
DeltaSpectrum lehmann_chi(const SpectralResolution& resolution, double temperature);
DeltaSpectrum lehmann_chi(const ThermalEnsemble& ensemble, const HermitianOperator& generator);

/// Lehmann representation of the symmetrised structure factor: peak weights
/// (p_l + p_l') |O_ll'|^2 and the connected elastic weight at omega = 0.
DeltaSpectrum lehmann_structure_factor(const SpectralResolution& resolution, double temperature);
DeltaSpectrum lehmann_structure_factor(const ThermalEnsemble& ensemble, const HermitianOperator& generator);

/// Fluctuation-dissipation relation chi''(w) = tanh(w / 2T) S(w), peak by peak.
DeltaSpectrum susceptibility_from_structure_factor(const DeltaSpectrum& structure_factor);

/// F_Q = (4/pi) int_0^inf tanh(w / 2T) chi''(w) dw = 4 sum_k tanh(w_k / 2T) w_k.
/// Throws ValidationError if `temperature` differs from the spectrum's.
double qfi_from_spectrum(const DeltaSpectrum& susceptibility, double temperature);

/// F_Q = 4 sum_k tanh^2(w_k / 2T) s_k.
double qfi_from_structure_factor(const DeltaSpectrum& structure_factor, double temperature);

/// Upper bound (2/T) sum_k w_k omega_k >= F_Q from tanh(x) <= x. T > 0.
double sum_rule_bound(const DeltaSpectrum& susceptibility, double temperature);

/// Zero-frequency limit of the Kramers-Kronig real part, 2 sum_k w_k / omega_k.
double static_kubo_susceptibility(const DeltaSpectrum& susceptibility);

/// chi_el = (sum_{E_l = E_l'} p_l |O_ll'|^2 - <O>^2) / T,
/// chi_vV = sum_{E_l != E_l'} |O_ll'|^2 (p_l - p_l') / (E_l' - E_l),
/// classical_fisher = T chi_el. T > 0.
SusceptibilityDecomposition isothermal_decomposition(const SpectralResolution& resolution, double temperature);
SusceptibilityDecomposition isothermal_decomposition(const ThermalEnsemble& ensemble,
                                                     const HermitianOperator& generator);

}  // namespace qfi
