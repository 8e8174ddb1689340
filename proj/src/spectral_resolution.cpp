#include "qfi/spectral_resolution.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <string>
#include <utility>

#include "qfi/eigensolver.hpp"
#include "qfi/errors.hpp"

namespace qfi {

SpectralResolution::SpectralResolution(std::vector<Eigen::VectorXd> energies, std::vector<Eigen::VectorXd> diagonal,
                                       std::vector<TransitionBlock> blocks)
    : energies_(std::move(energies)), diagonal_(std::move(diagonal)), blocks_(std::move(blocks)) {
  if (energies_.empty()) throw ValidationError("SpectralResolution: no sectors");
  if (diagonal_.size() != energies_.size()) throw ValidationError("SpectralResolution: diagonal/sector count mismatch");

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t s = 0; s < energies_.size(); ++s) {
    const auto& e = energies_[s];
    if (e.size() == 0) throw ValidationError("SpectralResolution: empty sector " + std::to_string(s));
    if (diagonal_[s].size() != e.size()) throw ValidationError("SpectralResolution: diagonal size mismatch");
    for (Eigen::Index i = 1; i < e.size(); ++i) {
      if (e[i] < e[i - 1]) throw ValidationError("SpectralResolution: energies not ascending");
    }
    dimension_ += e.size();
    lo = std::min(lo, e[0]);
    hi = std::max(hi, e[e.size() - 1]);
  }
  ground_ = lo;
  width_ = hi - lo;
  tolerance_ = qfi::degeneracy_tolerance(width_);

  std::set<std::pair<Eigen::Index, Eigen::Index>> seen;
  for (const auto& b : blocks_) {
    if (b.row_sector > b.col_sector || b.col_sector >= sector_count() || b.row_sector < 0) {
      throw ValidationError("SpectralResolution: block sectors out of order or range");
    }
    if (!seen.emplace(b.row_sector, b.col_sector).second) {
      throw ValidationError("SpectralResolution: duplicate block");
    }
    if (b.weights.rows() != energies_[b.row_sector].size() || b.weights.cols() != energies_[b.col_sector].size()) {
      throw ValidationError("SpectralResolution: block shape mismatch");
    }
    if (b.weights.size() > 0) max_weight_ = std::max(max_weight_, b.weights.maxCoeff());
  }
}

std::vector<Eigen::VectorXd> SpectralResolution::populations(double temperature) const {
  Eigen::VectorXd all(dimension_);
  Eigen::Index offset = 0;
  for (const auto& e : energies_) {
    all.segment(offset, e.size()) = e;
    offset += e.size();
  }
  const Eigen::VectorXd p = boltzmann_weights(all, temperature, tolerance_);
  std::vector<Eigen::VectorXd> out;
  out.reserve(energies_.size());
  offset = 0;
  for (const auto& e : energies_) {
    out.emplace_back(p.segment(offset, e.size()));
    offset += e.size();
  }
  return out;
}

SpectralResolution resolve(const ThermalEnsemble& ensemble, const HermitianOperator& generator) {
  if (generator.dim() != ensemble.dim()) {
    throw ValidationError("dimension mismatch: ensemble " + std::to_string(ensemble.dim()) + " vs generator " +
                          std::to_string(generator.dim()));
  }
  const Eigen::MatrixXcd& v = ensemble.eigenvectors();
  const Eigen::MatrixXcd elements = v.adjoint() * generator.matrix() * v;
  std::vector<TransitionBlock> blocks;
  blocks.push_back({0, 0, elements.cwiseAbs2()});
  return SpectralResolution({ensemble.energies()}, {elements.diagonal().real()}, std::move(blocks));
}

SpectralResolution resolve(SectorProblem problem) {
  const auto sectors = static_cast<Eigen::Index>(problem.hamiltonians.size());
  std::vector<Eigen::VectorXd> energies;
  std::vector<Eigen::MatrixXd> vectors;
  energies.reserve(sectors);
  vectors.reserve(sectors);
  for (auto& h : problem.hamiltonians) {
    auto sys = eigh(std::move(h));
    energies.push_back(std::move(sys.values));
    vectors.push_back(std::move(sys.vectors));
  }
  problem.hamiltonians.clear();

  std::vector<Eigen::VectorXd> diagonal;
  for (const auto& e : energies) diagonal.emplace_back(Eigen::VectorXd::Zero(e.size()));

  std::vector<TransitionBlock> blocks;
  for (const auto& g : problem.generator) {
    if (g.row_sector < 0 || g.col_sector >= sectors || g.row_sector > g.col_sector) {
      throw ValidationError("SectorProblem: generator block sectors out of order or range");
    }
    const auto& vr = vectors[g.row_sector];
    const auto& vc = vectors[g.col_sector];
    if (g.elements.rows() != vr.rows() || g.elements.cols() != vc.rows()) {
      throw ValidationError("SectorProblem: generator block shape mismatch");
    }
    const Eigen::MatrixXd applied = g.elements * vc;
    Eigen::MatrixXd elements(vr.cols(), vc.cols());
    elements.noalias() = vr.transpose() * applied;
    if (g.row_sector == g.col_sector) diagonal[g.row_sector] = elements.diagonal();
    elements = elements.cwiseAbs2();
    blocks.push_back({g.row_sector, g.col_sector, std::move(elements)});
  }
  return SpectralResolution(std::move(energies), std::move(diagonal), std::move(blocks));
}

}  // namespace qfi
