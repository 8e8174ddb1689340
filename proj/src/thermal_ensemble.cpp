#include "qfi/thermal_ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <utility>

#include "qfi/eigensolver.hpp"
#include "qfi/errors.hpp"

namespace qfi {
namespace {

void check_temperature(double temperature) {
  if (std::isnan(temperature) || temperature < 0.0) {
    throw DomainError("temperature must be >= 0, got " + std::to_string(temperature));
  }
}

// First component above this magnitude is made real positive.
constexpr double kPhaseThreshold = 1e-12;

void fix_phases(Eigen::MatrixXcd& vectors) {
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    for (Eigen::Index r = 0; r < vectors.rows(); ++r) {
      const std::complex<double> z = vectors(r, c);
      if (std::abs(z) > kPhaseThreshold) {
        vectors.col(c) *= std::conj(z) / std::abs(z);
        vectors(r, c) = std::abs(z);
        break;
      }
    }
  }
}

}  // namespace

double degeneracy_tolerance(double spectral_width) { return 1e-10 * std::max(1.0, spectral_width); }

Eigen::VectorXd boltzmann_weights(const Eigen::VectorXd& energies, double temperature, double tolerance) {
  check_temperature(temperature);
  const Eigen::Index n = energies.size();
  if (n == 0) return {};
  const double ground = energies.minCoeff();
  Eigen::VectorXd p(n);
  if (std::isinf(temperature)) {
    p.setConstant(1.0);
  } else if (temperature == 0.0) {
    for (Eigen::Index i = 0; i < n; ++i) p[i] = energies[i] - ground <= tolerance ? 1.0 : 0.0;
  } else {
    for (Eigen::Index i = 0; i < n; ++i) p[i] = std::exp(-(energies[i] - ground) / temperature);
  }
  p /= p.sum();
  return p;
}

ThermalEnsemble::ThermalEnsemble(std::shared_ptr<const Eigensystem> system, double temperature)
    : system_(std::move(system)), temperature_(temperature) {
  probabilities_ = boltzmann_weights(system_->energies, temperature_, system_->tolerance);
}

ThermalEnsemble ThermalEnsemble::at_temperature(double temperature) const {
  check_temperature(temperature);
  return ThermalEnsemble(system_, temperature);
}

ThermalEnsemble diagonalize(const HermitianOperator& hamiltonian, double temperature) {
  check_temperature(temperature);
  auto system = std::make_shared<ThermalEnsemble::Eigensystem>();
  if (hamiltonian.is_real()) {
    auto real = eigh(Eigen::MatrixXd(hamiltonian.matrix().real()));
    system->energies = std::move(real.values);
    system->vectors = real.vectors.cast<std::complex<double>>();
  } else {
    auto complex = eigh(hamiltonian.matrix());
    system->energies = std::move(complex.values);
    system->vectors = std::move(complex.vectors);
  }
  fix_phases(system->vectors);
  const auto& e = system->energies;
  system->tolerance = degeneracy_tolerance(e[e.size() - 1] - e[0]);
  return ThermalEnsemble(std::move(system), temperature);
}

}  // namespace qfi
