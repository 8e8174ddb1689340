#pragma once

#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "qfi/hermitian_operator.hpp"
#include "qfi/thermal_ensemble.hpp"

namespace qfi {

/// Squared generator matrix elements |<a_i|O|b_j>|^2 between the eigenstates
/// of sector `row_sector` (rows) and sector `col_sector` (columns).
struct TransitionBlock {
  Eigen::Index row_sector = 0;
  Eigen::Index col_sector = 0;
  Eigen::MatrixXd weights;
};

/// Temperature-independent Lehmann data of a pair (H, O): the energy levels,
/// grouped into symmetry sectors, and the generator's matrix elements between
/// eigenstates. Every spectral formula in this library is a double sum over
/// this table, so a model only has to be diagonalised once per parameter point.
///
/// Blocks are stored with row_sector <= col_sector; a block with distinct
/// sectors also stands for its transpose. Missing blocks are zero.
class SpectralResolution {
 public:
  SpectralResolution(std::vector<Eigen::VectorXd> energies, std::vector<Eigen::VectorXd> diagonal,
                     std::vector<TransitionBlock> blocks);

  Eigen::Index sector_count() const noexcept { return static_cast<Eigen::Index>(energies_.size()); }
  const Eigen::VectorXd& energies(Eigen::Index sector) const { return energies_.at(sector); }
  /// Signed diagonal elements <l|O|l>.
  const Eigen::VectorXd& diagonal(Eigen::Index sector) const { return diagonal_.at(sector); }
  const std::vector<TransitionBlock>& blocks() const noexcept { return blocks_; }

  Eigen::Index dimension() const noexcept { return dimension_; }
  double ground_energy() const noexcept { return ground_; }
  double spectral_width() const noexcept { return width_; }
  double degeneracy_tolerance() const noexcept { return tolerance_; }
  /// Largest squared matrix element.
  double max_weight() const noexcept { return max_weight_; }

  /// Boltzmann weights per sector, normalised over all sectors together.
  std::vector<Eigen::VectorXd> populations(double temperature) const;

 private:
  std::vector<Eigen::VectorXd> energies_;
  std::vector<Eigen::VectorXd> diagonal_;
  std::vector<TransitionBlock> blocks_;
  Eigen::Index dimension_ = 0;
  double ground_ = 0.0;
  double width_ = 0.0;
  double tolerance_ = 0.0;
  double max_weight_ = 0.0;
};

/// Generator matrix elements <row sector basis | O | col sector basis>.
struct GeneratorBlock {
  Eigen::Index row_sector = 0;
  Eigen::Index col_sector = 0;
  Eigen::SparseMatrix<double> elements;
};

/// Real symmetric H already split into symmetry sectors, with O given as
/// couplings between sector bases (row_sector <= col_sector).
struct SectorProblem {
  std::vector<Eigen::MatrixXd> hamiltonians;
  std::vector<GeneratorBlock> generator;
};

/// Lehmann table of a dense pair in the ensemble's eigenbasis.
SpectralResolution resolve(const ThermalEnsemble& ensemble, const HermitianOperator& generator);

/// Diagonalises every sector and transforms the generator blocks.
SpectralResolution resolve(SectorProblem problem);

}  // namespace qfi
