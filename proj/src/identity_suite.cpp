#include "qfi/identity_suite.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "qfi/errors.hpp"
#include "qfi/spectral.hpp"

namespace qfi {
namespace {

Eigen::MatrixXcd random_hermitian(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXcd a(dim, dim);
  for (int j = 0; j < dim; ++j) {
    for (int i = 0; i < dim; ++i) a(i, j) = {normal(rng), normal(rng)};
  }
  return 0.5 * (a + a.adjoint());
}

// U diag(levels) U^dagger with repeated integer levels.
Eigen::MatrixXcd degenerate_hermitian(int dim, std::mt19937_64& rng) {
  const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(random_hermitian(dim, rng));
  const Eigen::MatrixXcd u = qr.householderQ();
  Eigen::VectorXd levels(dim);
  for (int i = 0; i < dim; ++i) levels[i] = i / 2;
  return u * levels.asDiagonal() * u.adjoint();
}

IdentityCase evaluate(std::string label, const Eigen::MatrixXcd& h, const Eigen::MatrixXcd& o, double temperature) {
  const HermitianOperator hamiltonian(h, "H");
  const HermitianOperator generator(o, "O");
  const ThermalEnsemble ensemble = diagonalize(hamiltonian, temperature);
  const SpectralResolution r = resolve(ensemble, generator);

  IdentityCase c;
  c.label = std::move(label);
  c.dim = static_cast<int>(h.rows());
  c.temperature = temperature;
  c.double_sum = qfi_thermal(r, temperature);
  const DeltaSpectrum chi = lehmann_chi(r, temperature);
  c.spectrum = qfi_from_spectrum(chi, temperature);
  c.fdt = qfi_from_structure_factor(lehmann_structure_factor(r, temperature), temperature);
  c.deviation = std::max({relative_deviation(c.double_sum, c.spectrum), relative_deviation(c.double_sum, c.fdt),
                          relative_deviation(c.spectrum, c.fdt)});
  if (temperature > 0.0) {
    c.sum_rule = sum_rule_bound(chi, temperature);
    c.sum_rule_holds = *c.sum_rule >= c.double_sum * (1.0 - 1e-12);
  }
  return c;
}

}  // namespace

double relative_deviation(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

IdentityReport run_identity_suite(const IdentitySuiteOptions& options) {
  if (options.instances < 0) throw ValidationError("instance count must be >= 0");
  if (options.dims.empty()) throw ValidationError("identity suite needs at least one dimension");
  for (int d : options.dims) {
    if (d < 1) throw ValidationError("dimensions must be >= 1");
  }
  if (!(options.t_min > 0.0) || !(options.t_max >= options.t_min) || !std::isfinite(options.t_max)) {
    throw ValidationError("temperature range must satisfy 0 < t_min <= t_max < inf");
  }

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> log_t(std::log(options.t_min), std::log(options.t_max));
  IdentityReport report;
  for (int i = 0; i < options.instances; ++i) {
    const int dim = options.dims[static_cast<std::size_t>(i) % options.dims.size()];
    const Eigen::MatrixXcd h = random_hermitian(dim, rng);
    const Eigen::MatrixXcd o = random_hermitian(dim, rng);
    report.cases.push_back(evaluate("random", h, o, std::exp(log_t(rng))));
  }
  if (options.edge_cases) {
    const double inf = std::numeric_limits<double>::infinity();
    std::normal_distribution<double> normal;
    for (double t : {0.0, 1.0, inf}) {
      report.cases.push_back(evaluate("dim-1", Eigen::MatrixXcd::Constant(1, 1, normal(rng)),
                                      Eigen::MatrixXcd::Constant(1, 1, normal(rng)), t));
    }
    for (int dim : {2, 8, 32}) {
      report.cases.push_back(evaluate("zero-T", random_hermitian(dim, rng), random_hermitian(dim, rng), 0.0));
      report.cases.push_back(evaluate("infinite-T", random_hermitian(dim, rng), random_hermitian(dim, rng), inf));
      for (double t : {0.0, 0.5}) {
        report.cases.push_back(evaluate("degenerate", degenerate_hermitian(dim, rng), random_hermitian(dim, rng), t));
      }
    }
  }
  for (const auto& c : report.cases) {
    report.max_deviation = std::max(report.max_deviation, c.deviation);
    report.sum_rule_holds = report.sum_rule_holds && c.sum_rule_holds;
  }
  return report;
}

}  // namespace qfi
