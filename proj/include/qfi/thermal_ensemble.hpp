#pragma once

#include <memory>

#include <Eigen/Dense>

#include "qfi/hermitian_operator.hpp"

namespace qfi {

/// Levels closer than this are treated as degenerate: 1e-10 * max(1, width).
double degeneracy_tolerance(double spectral_width);

/// Boltzmann weights p ~ exp(-(E - E_min) / T), normalised to one.
///
/// T = 0 spreads the weight uniformly over the ground manifold (levels within
/// `tolerance` of the minimum); T = +inf gives the uniform distribution.
/// Throws DomainError for T < 0 or NaN.
Eigen::VectorXd boltzmann_weights(const Eigen::VectorXd& energies, double temperature, double tolerance);

/// Eigen-decomposed thermal state rho = sum_l p_l |l><l|.
///
/// Energies are ascending and every eigenvector has its first non-negligible
/// component real and positive. Copies share the eigensystem.
class ThermalEnsemble {
 public:
  double temperature() const noexcept { return temperature_; }
  Eigen::Index dim() const noexcept { return system_->energies.size(); }
  const Eigen::VectorXd& energies() const noexcept { return system_->energies; }
  const Eigen::MatrixXcd& eigenvectors() const noexcept { return system_->vectors; }
  const Eigen::VectorXd& probabilities() const noexcept { return probabilities_; }
  double degeneracy_tolerance() const noexcept { return system_->tolerance; }

  /// Same eigensystem re-weighted at another temperature.
  ThermalEnsemble at_temperature(double temperature) const;

  /// Lowest eigenvector.
  Eigen::VectorXcd ground_state() const { return system_->vectors.col(0); }

 private:
  struct Eigensystem {
    Eigen::VectorXd energies;
    Eigen::MatrixXcd vectors;
    double tolerance = 0.0;
  };

  ThermalEnsemble(std::shared_ptr<const Eigensystem> system, double temperature);

  std::shared_ptr<const Eigensystem> system_;
  Eigen::VectorXd probabilities_;
  double temperature_ = 0.0;

  friend ThermalEnsemble diagonalize(const HermitianOperator& hamiltonian, double temperature);
};

/// Full dense eigendecomposition of H and thermal weights at T.
ThermalEnsemble diagonalize(const HermitianOperator& hamiltonian, double temperature);

}  // namespace qfi
