#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "qfi/errors.hpp"
#include "qfi/scaling.hpp"

using namespace qfi;

namespace {

std::vector<double> grid(double lo, double hi, int n) {
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = lo + (hi - lo) * i / (n - 1);
  return x;
}

// f = N^a phi(T N^b) with phi(x) = exp(-x), sampled so every curve hits the
// same scaled abscissae.
ScalingDataset aligned_size_data(double a, double b) {
  std::vector<ScalingRow> rows;
  for (double n : {8.0, 16.0, 32.0, 64.0, 128.0}) {
    for (double x : grid(0.1, 4.0, 25)) {
      const double t = x * std::pow(n, -b);
      rows.push_back({n, t, 0.0, std::pow(n, a) * std::exp(-x)});
    }
  }
  return ScalingDataset(rows);
}

}  // namespace

TEST_CASE("power-law fit examples") {
  const PowerLawFit exact = fit_power_law({{1, 2}, {2, 4}, {4, 8}});
  CHECK(exact.exponent == doctest::Approx(1.0));
  CHECK(exact.prefactor == doctest::Approx(2.0));
  CHECK(exact.standard_error < 1e-12);
  CHECK(fit_power_law({{1, 1}, {4, 2}, {16, 4}}).exponent == doctest::Approx(0.5));
}

TEST_CASE("property: power-law exponent is invariant under x -> c x") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> noise(-0.05, 0.05);
  std::vector<std::pair<double, double>> points;
  for (double x : {1.0, 2.0, 3.5, 7.0, 11.0}) points.emplace_back(x, 3.0 * std::pow(x, 0.8) * std::exp(noise(rng)));
  const PowerLawFit base = fit_power_law(points);
  CHECK(base.standard_error > 0.0);
  for (double c : {0.1, 3.0, 1e4}) {
    auto scaled = points;
    for (auto& p : scaled) p.first *= c;
    const PowerLawFit f = fit_power_law(scaled);
    CHECK(f.exponent == doctest::Approx(base.exponent).epsilon(1e-12));
    CHECK(f.prefactor != doctest::Approx(base.prefactor));
  }
}

TEST_CASE("power-law fit preconditions") {
  CHECK_THROWS_AS(fit_power_law({{1, 1}, {2, 2}}), ValidationError);
  CHECK_THROWS_AS(fit_power_law({{1, 1}, {2, -2}, {3, 3}}), DomainError);
  CHECK_THROWS_AS(fit_power_law({{0, 1}, {2, 2}, {3, 3}}), DomainError);
}

TEST_CASE("derivative peak of tanh((x - 1) / 0.1)") {
  const auto x = grid(0.0, 2.0, 401);
  std::vector<double> y;
  for (double v : x) y.push_back(std::tanh((v - 1.0) / 0.1));
  const DerivativePeak p = derivative_peak(x, y);
  CHECK_FALSE(p.flat);
  CHECK(std::abs(p.position - 1.0) <= 0.005);
  CHECK(p.height == doctest::Approx(10.0).epsilon(1e-3));
}

TEST_CASE("property: derivative peak converges at second order") {
  // Peak of d/dx tanh((x - c)/w) at an off-grid centre.
  const double c = 0.4321, w = 0.2;
  auto error = [&](int n) {
    const auto x = grid(-1.0, 2.0, n);
    std::vector<double> y;
    for (double v : x) y.push_back(std::tanh((v - c) / w));
    const DerivativePeak p = derivative_peak(x, y);
    return std::abs(p.height - 1.0 / w);
  };
  const double coarse = error(201);
  const double fine = error(401);
  CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("linear curve gives a flagged flat peak") {
  const auto x = grid(2.0, 6.0, 9);
  std::vector<double> y;
  for (double v : x) y.push_back(3.0 * v - 1.0);
  const DerivativePeak p = derivative_peak(x, y);
  CHECK(p.flat);
  CHECK(p.position == doctest::Approx(4.0));
  CHECK(p.height == doctest::Approx(3.0));
}

TEST_CASE("central derivative is exact for quadratics on nonuniform grids") {
  const std::vector<double> x{0.0, 0.1, 0.35, 0.4, 1.0, 1.7};
  std::vector<double> y;
  for (double v : x) y.push_back(2.0 * v * v - v + 3.0);
  const auto d = central_derivative(x, y);
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(d[i] == doctest::Approx(4.0 * x[i] - 1.0).epsilon(1e-12));
}

TEST_CASE("derivative preconditions") {
  CHECK_THROWS_AS(derivative_peak({0, 1, 2, 3}, {0, 1, 2, 3}), ValidationError);
  CHECK_THROWS_AS(derivative_peak({0, 1, 3, 2, 4}, {0, 1, 2, 3, 4}), ValidationError);
  CHECK_THROWS_AS(central_derivative({0, 1, 2}, {0, 1}), ValidationError);
}

TEST_CASE("entanglement length") {
  CHECK(entanglement_length(16.0, 1) == 16.0);
  CHECK(entanglement_length(16.0, 2) == doctest::Approx(4.0));
  CHECK_THROWS_AS(entanglement_length(-1.0, 1), DomainError);
  CHECK_THROWS_AS(entanglement_length(1.0, 0), DomainError);
}

TEST_CASE("collapse residual vanishes on exact scaling data") {
  const CollapseResult r = collapse_quality(aligned_size_data(0.75, 1.0), CollapseAxis::size, {0.75, 1.0});
  CHECK(r.residual <= 1e-12);
  CHECK(r.curves == 5);
  const CollapseResult off = collapse_quality(aligned_size_data(0.75, 1.0), CollapseAxis::size, {0.6, 1.0});
  CHECK(off.residual > 1e-3);
}

TEST_CASE("collapse recovers the exponents of synthetic data") {
  // f = N^0.75 exp(-T N) on a common temperature grid.
  std::vector<ScalingRow> rows;
  for (double n : {8.0, 16.0, 32.0, 64.0, 128.0}) {
    for (double t : grid(0.001, 0.3, 120)) rows.push_back({n, t, 0.0, std::pow(n, 0.75) * std::exp(-t * n)});
  }
  const ScalingDataset data(rows);
  const CollapseResult r = collapse(data, CollapseAxis::size, {0.5, 0.8});
  CHECK(r.exponents[0] == doctest::Approx(0.75).epsilon(0.01 / 0.75));
  CHECK(r.exponents[1] == doctest::Approx(1.0).epsilon(0.01));
  CHECK(r.residual < 1e-4);

  std::vector<ScalingRow> shuffled = rows;
  std::shuffle(shuffled.begin(), shuffled.end(), std::mt19937_64(8));
  const CollapseResult again = collapse(ScalingDataset(shuffled), CollapseAxis::size, {0.5, 0.8});
  CHECK(again.exponents == r.exponents);
  CHECK(again.residual == r.residual);
}

TEST_CASE("temperature and field axes") {
  // value = T^-a phi(h T^-c) with phi(u) = 1 / (1 + u^2)
  std::vector<ScalingRow> rows;
  for (double t : {0.01, 0.02, 0.05, 0.1}) {
    for (double u : grid(-3.0, 3.0, 61)) {
      const double h = u * t;
      rows.push_back({100.0, t, h, std::pow(t, -0.5) / (1.0 + u * u)});
    }
  }
  const ScalingDataset data(rows);
  CHECK(collapse_quality(data, CollapseAxis::temperature, {0.5, 1.0}).residual <= 1e-12);
  CHECK(collapse_quality(data, CollapseAxis::temperature, {0.5, 1.0}).relative_spread <= 1e-6);

  // value = h^-a phi(T h^-b), h > 0
  std::vector<ScalingRow> field_rows;
  for (double h : {0.1, 0.2, 0.4}) {
    for (double x : grid(0.5, 5.0, 30)) field_rows.push_back({50.0, x * h * h, h, std::pow(h, -1.0) * std::exp(-x)});
  }
  CHECK(collapse_quality(ScalingDataset(field_rows), CollapseAxis::field, {1.0, 2.0}).residual <= 1e-12);
}

TEST_CASE("collapse preconditions and diagnostics") {
  std::vector<ScalingRow> single;
  for (double t : grid(0.1, 1.0, 10)) single.push_back({8.0, t, 0.0, std::exp(-t)});
  CHECK_THROWS_AS(collapse(ScalingDataset(single), CollapseAxis::size, {0.5, 1.0}), ValidationError);

  std::vector<ScalingRow> apart;
  for (double t : grid(0.1, 0.2, 10)) apart.push_back({1.0, t, 0.0, 1.0});
  for (double t : grid(5.0, 6.0, 10)) apart.push_back({2.0, t, 0.0, 1.0});
  try {
    collapse_quality(ScalingDataset(apart), CollapseAxis::size, {0.0, 0.0});
    FAIL("expected CollapseError");
  } catch (const CollapseError& e) {
    CHECK(e.window_lo() > e.window_hi());
    CHECK(std::string(e.what()).find("do not overlap") != std::string::npos);
  }

  CHECK_THROWS_AS(ScalingDataset({{8, 0.1, 0, 1.0}, {8, 0.1, 0, 2.0}}), ValidationError);
  CHECK_THROWS_AS(ScalingDataset({{8, 0.1, 0, -1.0}, {8, 0.2, 0, 2.0}}), ValidationError);
  CHECK_NOTHROW(ScalingDataset({{8, 0.1, 0, -1e-30}, {8, 0.2, 0, 2.0}}));
  CHECK_THROWS_AS(ScalingDataset({}), ValidationError);
}
