#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/SparseCore>

#include "qfi/errors.hpp"
#include "qfi/models.hpp"

namespace qfi {
namespace {

// theta endpoints are commonly passed rounded (1.5708 for pi/2).
constexpr double kThetaSlack = 1e-4;

std::uint32_t reflect(std::uint32_t state, int sites) {
  std::uint32_t out = 0;
  for (int l = 0; l < sites; ++l) {
    if (state >> l & 1u) out |= 1u << (sites - 1 - l);
  }
  return out;
}

double field_energy(std::uint32_t state, int sites, double field) {
  const int down = std::popcount(state);
  return field * static_cast<double>(sites - 2 * down);
}

// Parity x reflection adapted basis. Sector index = 2 * parity + (reflection odd).
struct ChainBasis {
  int sites = 0;
  std::array<std::vector<std::uint32_t>, 4> reps;
  // index[sector % 2][rep] -> position in the sector, -1 if absent
  std::array<std::vector<std::int32_t>, 2> index;

  explicit ChainBasis(int n) : sites(n) {
    const std::uint32_t dim = 1u << n;
    index[0].assign(dim, -1);
    index[1].assign(dim, -1);
    for (std::uint32_t s = 0; s < dim; ++s) {
      const std::uint32_t r = reflect(s, n);
      if (r < s) continue;
      const int parity = std::popcount(s) & 1;
      index[0][s] = static_cast<std::int32_t>(reps[2 * parity].size());
      reps[2 * parity].push_back(s);
      if (r != s) {
        index[1][s] = static_cast<std::int32_t>(reps[2 * parity + 1].size());
        reps[2 * parity + 1].push_back(s);
      }
    }
  }

  // Coefficient of z-state `state` in the basis vector of its orbit for the
  // given reflection sign, or 0 if the orbit is absent from that sector.
  std::pair<std::int32_t, double> locate(std::uint32_t state, int odd) const {
    const std::uint32_t r = reflect(state, sites);
    const std::uint32_t rep = std::min(state, r);
    const std::int32_t i = index[odd][rep];
    if (i < 0) return {-1, 0.0};
    if (r == state) return {i, 1.0};
    const double c = std::numbers::sqrt2 / 2.0;
    return {i, (state == rep || odd == 0) ? c : -c};
  }

  // z-components of a basis vector: (state, coefficient).
  std::vector<std::pair<std::uint32_t, double>> components(int sector, std::size_t i) const {
    const std::uint32_t s = reps[sector][i];
    const std::uint32_t r = reflect(s, sites);
    if (r == s) return {{s, 1.0}};
    const double c = std::numbers::sqrt2 / 2.0;
    return {{s, c}, {r, (sector % 2 == 0) ? c : -c}};
  }
};

}  // namespace

void validate(const IsingChainSpec& spec) {
  if (spec.sites < 2) throw ValidationError("Ising chain needs at least 2 sites");
  if (spec.sites > kMaxChainSites) {
    throw ResourceError("Ising chain ED limited to N <= " + std::to_string(kMaxChainSites) + ", got " +
                        std::to_string(spec.sites));
  }
  if (!(spec.theta >= -kThetaSlack && spec.theta <= std::numbers::pi / 2 + kThetaSlack)) {
    throw ValidationError("theta must lie in [0, pi/2], got " + std::to_string(spec.theta));
  }
}

std::pair<HermitianOperator, HermitianOperator> build_ising_chain(const IsingChainSpec& spec) {
  validate(spec);
  if (spec.sites > kMaxDenseChainSites) {
    throw ResourceError("dense Ising chain limited to N <= " + std::to_string(kMaxDenseChainSites) +
                        "; use ising_chain_sectors");
  }
  const int n = spec.sites;
  const std::uint32_t dim = 1u << n;
  const double coupling = -std::cos(spec.theta);
  const double field = std::sin(spec.theta);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  Eigen::MatrixXd o = Eigen::MatrixXd::Zero(dim, dim);
  for (std::uint32_t s = 0; s < dim; ++s) {
    h(s, s) = field_energy(s, n, field);
    for (int l = 0; l + 1 < n; ++l) h(s ^ (3u << l), s) += coupling;
    for (int l = 0; l < n; ++l) o(s ^ (1u << l), s) += 0.5;
  }
  return {HermitianOperator::from_real(h, "ising-chain H"), HermitianOperator::from_real(o, "sum sx / 2")};
}

SectorProblem ising_chain_sectors(const IsingChainSpec& spec) {
  validate(spec);
  const int n = spec.sites;
  const double coupling = -std::cos(spec.theta);
  const double field = std::sin(spec.theta);
  const ChainBasis basis(n);

  std::array<Eigen::MatrixXd, 4> hamiltonians;
  for (int sector = 0; sector < 4; ++sector) {
    const auto size = static_cast<Eigen::Index>(basis.reps[sector].size());
    const int odd = sector % 2;
    auto& h = hamiltonians[sector];
    h = Eigen::MatrixXd::Zero(size, size);
    for (Eigen::Index b = 0; b < size; ++b) {
      for (const auto& [state, amp] : basis.components(sector, b)) {
        const auto [a0, c0] = basis.locate(state, odd);
        h(a0, b) += c0 * amp * field_energy(state, n, field);
        for (int l = 0; l + 1 < n; ++l) {
          const auto [a, c] = basis.locate(state ^ (3u << l), odd);
          if (a >= 0) h(a, b) += c * amp * coupling;
        }
      }
    }
  }

  // <parity 0, odd | O | parity 1, odd>
  std::array<Eigen::SparseMatrix<double>, 2> generator;
  for (int odd = 0; odd < 2; ++odd) {
    const int rows = static_cast<int>(basis.reps[odd].size());
    const int cols = static_cast<int>(basis.reps[2 + odd].size());
    std::vector<Eigen::Triplet<double>> triplets;
    for (int b = 0; b < cols; ++b) {
      for (const auto& [state, amp] : basis.components(2 + odd, b)) {
        for (int l = 0; l < n; ++l) {
          const auto [a, c] = basis.locate(state ^ (1u << l), odd);
          if (a >= 0) triplets.emplace_back(a, b, 0.5 * c * amp);
        }
      }
    }
    generator[odd].resize(rows, cols);
    generator[odd].setFromTriplets(triplets.begin(), triplets.end());
  }

  // Drop empty sectors (N = 2 has no reflection-odd even-parity states).
  SectorProblem problem;
  std::array<Eigen::Index, 4> remap{-1, -1, -1, -1};
  for (int sector = 0; sector < 4; ++sector) {
    if (hamiltonians[sector].rows() == 0) continue;
    remap[sector] = static_cast<Eigen::Index>(problem.hamiltonians.size());
    problem.hamiltonians.push_back(std::move(hamiltonians[sector]));
  }
  for (int odd = 0; odd < 2; ++odd) {
    if (remap[odd] < 0 || remap[2 + odd] < 0) continue;
    problem.generator.push_back({remap[odd], remap[2 + odd], std::move(generator[odd])});
  }
  return problem;
}

SpectralResolution ising_chain_resolution(const IsingChainSpec& spec) { return resolve(ising_chain_sectors(spec)); }

}  // namespace qfi
