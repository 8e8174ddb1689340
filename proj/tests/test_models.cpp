#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "qfi/errors.hpp"
#include "qfi/models.hpp"
#include "qfi/spectral.hpp"

using namespace qfi;

TEST_CASE("dense Ising chain equals the Kronecker-product construction") {
  for (int n : {2, 3, 5}) {
    for (double theta : {0.0, 0.4, std::numbers::pi / 2}) {
      const auto [h, o] = build_ising_chain({n, theta});
      const auto [h_ref, o_ref] = oracle::ising_chain(n, theta);
      CHECK((h.matrix() - h_ref).norm() < 1e-14);
      CHECK((o.matrix() - o_ref).norm() < 1e-14);
    }
  }
}

TEST_CASE("sector-resolved Ising chain reproduces dense ED") {
  for (int n : {2, 3, 4, 7, 10}) {
    for (double theta : {0.2, std::numbers::pi / 4, 1.3}) {
      const auto [h, o] = build_ising_chain({n, theta});
      const SpectralResolution sectors = ising_chain_resolution({n, theta});
      CHECK(sectors.dimension() == (Eigen::Index{1} << n));
      for (double t : {0.0, 0.05, 0.8, 5.0}) {
        const SpectralResolution dense = resolve(diagonalize(h, t), o);
        CHECK(qfi_thermal(sectors, t) == doctest::Approx(qfi_thermal(dense, t)).epsilon(1e-10));
        if (t > 0.0) {
          const auto a = isothermal_decomposition(sectors, t);
          const auto b = isothermal_decomposition(dense, t);
          CHECK(a.chi_isothermal == doctest::Approx(b.chi_isothermal).epsilon(1e-9));
        }
      }
    }
  }
}

TEST_CASE("theta = 0 chain: ground doublet carries no QFI") {
  const SpectralResolution r = ising_chain_resolution({8, 0.0});
  CHECK(qfi_thermal(r, 1e-3) == doctest::Approx(0.0).epsilon(1e-12).scale(1.0));
  CHECK(qfi_thermal(r, 0.0) == doctest::Approx(0.0).epsilon(1e-12).scale(1.0));
}

TEST_CASE("theta = pi/2 chain is a product of spins in a field") {
  // Paramagnet: each spin contributes tanh^2(1/T) / 4 * 4 = tanh^2(1/T).
  for (double t : {0.3, 1.0, 3.0}) {
    const double fq = qfi_thermal(ising_chain_resolution({6, std::numbers::pi / 2}), t) / 6;
    CHECK(fq == doctest::Approx(std::pow(std::tanh(1.0 / t), 2)).epsilon(1e-12));
  }
}

TEST_CASE("Ising chain validation and resource limits") {
  CHECK_THROWS_AS(validate(IsingChainSpec{1, 0.3}), ValidationError);
  CHECK_THROWS_AS(validate(IsingChainSpec{15, 0.3}), ResourceError);
  CHECK_THROWS_AS(validate(IsingChainSpec{4, -0.1}), ValidationError);
  CHECK_THROWS_AS(validate(IsingChainSpec{4, 1.6}), ValidationError);
  CHECK_NOTHROW(validate(IsingChainSpec{4, 1.5708}));
  CHECK_THROWS_AS(build_ising_chain({13, 0.3}), ResourceError);
}

TEST_CASE("Dicke block equals full ED restricted to the symmetric sector") {
  for (int n : {2, 4, 6}) {
    for (double theta : {0.3, std::numbers::pi / 4, 1.2}) {
      const auto full = oracle::infinite_range_full(n, theta);
      const oracle::Matrix q = oracle::symmetric_subspace(full.s2, n);
      REQUIRE(q.cols() == n + 1);
      const oracle::Matrix h = q.adjoint() * full.h * q;
      const oracle::Matrix o = q.adjoint() * full.sx * q;
      const SpectralResolution block = infinite_range_resolution({n, theta});
      const auto [hd, od] = build_infinite_range({n, theta});
      for (double t : {0.05, 0.5, 2.0}) {
        const double expected = oracle::qfi_double_sum(h, o, t);
        CHECK(qfi_thermal(block, t) == doctest::Approx(expected).epsilon(1e-10));
        CHECK(qfi_thermal(diagonalize(hd, t), od) == doctest::Approx(expected).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("infinite-range parity sectors reproduce the dense block") {
  for (int n : {2, 3, 9, 40}) {
    const auto [h, o] = build_infinite_range({n, 0.5});
    const SpectralResolution sectors = infinite_range_resolution({n, 0.5});
    for (double t : {0.01, 0.3, 3.0}) {
      CHECK(qfi_thermal(sectors, t) == doctest::Approx(qfi_thermal(diagonalize(h, t), o)).epsilon(1e-10));
    }
  }
}

TEST_CASE("critical temperature closed form") {
  CHECK(critical_temperature(std::numbers::pi / 8) == doctest::Approx(0.4342).epsilon(1e-4));
  const double theta = std::numbers::pi / 8;
  const double literal = std::sin(theta) / std::log((1 + std::tan(theta)) / (1 - std::tan(theta)));
  CHECK(critical_temperature(theta) == doctest::Approx(literal).epsilon(1e-14));
  CHECK(critical_temperature(1e-7) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK_THROWS_AS(critical_temperature(0.0), DomainError);
  CHECK_THROWS_AS(critical_temperature(std::numbers::pi / 4), DomainError);
  CHECK_THROWS_AS(critical_temperature(1.0), DomainError);
}

TEST_CASE("hard-core boson QFI equals many-body ED of the fermion ring") {
  for (int n : {4, 6, 8}) {
    for (double mu : {-0.7, 0.0, 0.35, 1.4}) {
      const auto [h, o] = oracle::free_fermion_ring(n, 1.0, mu);
      for (double t : {0.1, 0.6, 2.0}) {
        const double expected = oracle::qfi_double_sum(h, o, t) / n;
        CHECK(hcb_qfi({n, 1.0, mu}, t) == doctest::Approx(expected).epsilon(1e-10));
        const DeltaSpectrum s = hcb_structure_factor({n, 1.0, mu}, t);
        CHECK(qfi_from_structure_factor(s, t) / n == doctest::Approx(expected).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("hard-core boson structure factor matches the Lehmann one from ED") {
  const int n = 6;
  const double mu = 0.3, t = 0.5;
  const auto [h, o] = oracle::free_fermion_ring(n, 1.0, mu);
  const DeltaSpectrum ed = lehmann_structure_factor(diagonalize(HermitianOperator(h), t), HermitianOperator(o));
  const DeltaSpectrum fermions = hcb_structure_factor({n, 1.0, mu}, t);
  REQUIRE(ed.peaks().size() == fermions.peaks().size());
  for (std::size_t k = 0; k < ed.peaks().size(); ++k) {
    CHECK(fermions.peaks()[k].omega == doctest::Approx(ed.peaks()[k].omega).epsilon(1e-10));
    CHECK(fermions.peaks()[k].weight == doctest::Approx(ed.peaks()[k].weight).epsilon(1e-10));
  }
  CHECK(fermions.elastic_weight() == doctest::Approx(ed.elastic_weight()).epsilon(1e-10).scale(1e-12));
}

TEST_CASE("hard-core bosons at low temperature approach the ground-state formula") {
  CHECK(hcb_qfi({1000, 1.0, 0.0}, 1e-4) == doctest::Approx(2.0).epsilon(1e-3));
  for (double mu : {-1.5, -0.6, 0.0, 0.45, 0.9, 1.2}) {
    CHECK(hcb_qfi({2000, 1.0, mu}, 1e-5) ==
          doctest::Approx(hcb_qfi_zero_temperature({2000, 1.0, mu})).epsilon(2e-3).scale(1.0));
  }
  CHECK(hcb_qfi_zero_temperature({10, 1.0, 0.0}) == doctest::Approx(2.0));
  CHECK(hcb_qfi_zero_temperature({10, 1.0, -2.0}) == 0.0);
  CHECK(hcb_qfi_zero_temperature({10, 1.0, 2.0}) == 0.0);
  CHECK(hcb_filling({1000, 1.0, 0.0}, 1e-4) == doctest::Approx(0.5));
}

TEST_CASE("hard-core boson periodic grid is selectable and differs at low T") {
  HardCoreBosonSpec periodic{1000, 1.0, 0.0, MomentumGrid::periodic};
  CHECK(hcb_momenta(periodic)[0] == 0.0);
  CHECK(hcb_qfi(periodic, 1e-4) < 1.999);
}

TEST_CASE("hard-core boson validation") {
  CHECK_THROWS_AS(validate(HardCoreBosonSpec{7, 1.0, 0.0}), ValidationError);
  CHECK_THROWS_AS(validate(HardCoreBosonSpec{8, 0.0, 0.0}), ValidationError);
  CHECK_THROWS_AS(hcb_qfi({8, 1.0, 0.0}, -1.0), DomainError);
  CHECK(hcb_qfi({8, 1.0, 0.3}, std::numeric_limits<double>::infinity()) == 0.0);
}

TEST_CASE("grid is parameter-major and independent of the job count") {
  GridRequest request;
  request.model = ModelKind::ising_chain;
  request.sites = 6;
  request.parameters = linspace(0.1, 1.4, 7);
  request.temperatures = linspace(0.05, 2.0, 5);
  request.jobs = 1;
  const auto serial = qfi_grid(request);
  request.jobs = 4;
  const auto parallel = qfi_grid(request);
  REQUIRE(serial.size() == 35);
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].parameter == request.parameters[i / 5]);
    CHECK(serial[i].temperature == request.temperatures[i % 5]);
    CHECK(serial[i].fq == parallel[i].fq);
  }
  CHECK(serial[12].fq == doctest::Approx(qfi_thermal(ising_chain_resolution({6, request.parameters[2]}),
                                                     request.temperatures[2]) / 6));
}

TEST_CASE("grid validates its request") {
  GridRequest request;
  request.sites = 6;
  request.temperatures = {1.0};
  CHECK_THROWS_AS(qfi_grid(request), ValidationError);
  request.parameters = {0.2};
  request.temperatures = {-1.0};
  CHECK_THROWS_AS(qfi_grid(request), DomainError);
  request.temperatures = {1.0};
  request.sites = 20;
  CHECK_THROWS_AS(qfi_grid(request), ResourceError);
  request.model = ModelKind::hard_core_bosons;
  request.sites = 7;
  CHECK_THROWS_AS(qfi_grid(request), ValidationError);
}

TEST_CASE("linspace") {
  CHECK(linspace(0.0, 1.0, 1) == std::vector<double>{0.0});
  const auto v = linspace(0.02, 2.0, 33);
  CHECK(v.size() == 33);
  CHECK(v.front() == 0.02);
  CHECK(v.back() == 2.0);
  CHECK_THROWS_AS(linspace(0.0, 1.0, 0), ValidationError);
}
