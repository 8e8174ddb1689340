#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/SparseCore>

#include "qfi/errors.hpp"
#include "qfi/models.hpp"

namespace qfi {
namespace {

constexpr double kThetaSlack = 1e-4;

// <k+1| S^x |k> in the Dicke basis, m = k - S.
Eigen::VectorXd ladder(int sites) {
  const double s = 0.5 * sites;
  Eigen::VectorXd a(sites);
  for (int k = 0; k < sites; ++k) {
    const double m = k - s;
    a[k] = 0.5 * std::sqrt(s * (s + 1.0) - m * (m + 1.0));
  }
  return a;
}

// Dense Dicke-block Hamiltonian (pentadiagonal).
Eigen::MatrixXd dicke_hamiltonian(const InfiniteRangeSpec& spec) {
  const int n = spec.sites;
  const double s = 0.5 * n;
  const double coupling = -std::cos(spec.theta) / n;
  const double field = std::sin(spec.theta);
  const Eigen::VectorXd a = ladder(n);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n + 1, n + 1);
  for (int k = 0; k <= n; ++k) {
    const double below = k > 0 ? a[k - 1] * a[k - 1] : 0.0;
    const double above = k < n ? a[k] * a[k] : 0.0;
    h(k, k) = coupling * (below + above - 0.25 * n) + field * (k - s);
    if (k + 2 <= n) {
      h(k + 2, k) = coupling * a[k + 1] * a[k];
      h(k, k + 2) = h(k + 2, k);
    }
  }
  return h;
}

}  // namespace

void validate(const InfiniteRangeSpec& spec) {
  if (spec.sites < 2) throw ValidationError("infinite-range model needs at least 2 sites");
  if (spec.sites > kMaxInfiniteRangeSites) {
    throw ResourceError("infinite-range model limited to N <= " + std::to_string(kMaxInfiniteRangeSites));
  }
  if (!(spec.theta >= -kThetaSlack && spec.theta <= std::numbers::pi / 2 + kThetaSlack)) {
    throw ValidationError("theta must lie in [0, pi/2], got " + std::to_string(spec.theta));
  }
}

std::pair<HermitianOperator, HermitianOperator> build_infinite_range(const InfiniteRangeSpec& spec) {
  validate(spec);
  const int n = spec.sites;
  const Eigen::VectorXd a = ladder(n);
  Eigen::MatrixXd sx = Eigen::MatrixXd::Zero(n + 1, n + 1);
  for (int k = 0; k < n; ++k) sx(k + 1, k) = sx(k, k + 1) = a[k];
  return {HermitianOperator::from_real(dicke_hamiltonian(spec), "infinite-range H"),
          HermitianOperator::from_real(sx, "S^x")};
}

SectorProblem infinite_range_sectors(const InfiniteRangeSpec& spec) {
  validate(spec);
  const int n = spec.sites;
  const Eigen::MatrixXd h = dicke_hamiltonian(spec);
  const Eigen::VectorXd a = ladder(n);
  const int even = n / 2 + 1;  // k = 0, 2, ..., count of even k in [0, n]
  const int odd = (n + 1) / 2;

  SectorProblem problem;
  for (int parity = 0; parity < 2; ++parity) {
    const int size = parity == 0 ? even : odd;
    Eigen::MatrixXd block(size, size);
    for (int j = 0; j < size; ++j) {
      for (int i = 0; i < size; ++i) block(i, j) = h(2 * i + parity, 2 * j + parity);
    }
    problem.hamiltonians.push_back(std::move(block));
  }

  // <2i| S^x |2j+1> is nonzero for 2i = 2j or 2i = 2j + 2.
  std::vector<Eigen::Triplet<double>> triplets;
  for (int j = 0; j < odd; ++j) {
    const int k = 2 * j + 1;
    triplets.emplace_back(j, j, a[k - 1]);
    if (k + 1 <= n) triplets.emplace_back(j + 1, j, a[k]);
  }
  Eigen::SparseMatrix<double> sx(even, odd);
  sx.setFromTriplets(triplets.begin(), triplets.end());
  problem.generator.push_back({0, 1, std::move(sx)});
  return problem;
}

SpectralResolution infinite_range_resolution(const InfiniteRangeSpec& spec) {
  return resolve(infinite_range_sectors(spec));
}

double critical_temperature(double theta) {
  if (!(theta > 0.0 && theta < std::numbers::pi / 4)) {
    throw DomainError("thermal transition only for 0 < theta < pi/4, got " + std::to_string(theta));
  }
  // log[(1 + t)/(1 - t)] = 2 atanh(t)
  return std::sin(theta) / (2.0 * std::atanh(std::tan(theta)));
}

}  // namespace qfi
