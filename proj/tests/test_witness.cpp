#include <doctest.h>

#include <random>

#include "qfi/errors.hpp"
#include "qfi/witness.hpp"

using namespace qfi;

namespace {

// Largest F_Q of m-producible states, enumerated block by block.
double enumerated_bound(int n, int m) {
  double bound = 0.0;
  int left = n;
  while (left > 0) {
    const int block = std::min(m, left);
    bound += static_cast<double>(block) * block;
    left -= block;
  }
  return bound;
}

}  // namespace

TEST_CASE("witness examples") {
  const WitnessReport ghz = entanglement_depth(16.0, 4);
  CHECK(ghz.depth == 4);
  REQUIRE(ghz.bound_at_depth.has_value());
  CHECK(*ghz.bound_at_depth == 10.0);

  const WitnessReport six = entanglement_depth(10.0, 6);
  CHECK(six.depth == 2);
  CHECK(*six.bound_at_depth == 6.0);

  for (int n : {1, 5, 12, 100}) {
    const WitnessReport shot = entanglement_depth(n, n);
    CHECK(shot.depth == 1);
    CHECK_FALSE(shot.bound_at_depth.has_value());
  }
}

TEST_CASE("divisor rule") {
  CHECK(depth_for_divisor(1.2, 1));
  CHECK_FALSE(depth_for_divisor(2.0, 2));
  // f_Q = 2 certifies bipartite entanglement only.
  CHECK(depth_for_divisor(2.0, 1));
  CHECK(entanglement_depth(2.0 * 1000, 1000).depth == 2);
}

TEST_CASE("bounds agree with block enumeration for N <= 12") {
  for (int n = 1; n <= 12; ++n) {
    for (int m = 1; m <= n; ++m) CHECK(separability_bound(n, m) == enumerated_bound(n, m));
  }
}

TEST_CASE("width enters squared") {
  CHECK(separability_bound(6, 2, 2.0) == 4.0 * separability_bound(6, 2));
  CHECK(entanglement_depth(10.0, 6, 1.0).depth == entanglement_depth(40.0, 6, 2.0).depth);
}

TEST_CASE("property: report invariants, monotonicity and divisor consistency") {
  std::mt19937_64 rng(17);
  for (int n = 1; n <= 24; ++n) {
    std::uniform_real_distribution<double> fisher(0.0, 1.1 * n * n);
    int previous_depth = 1;
    double previous_f = 0.0;
    std::vector<double> values;
    for (int k = 0; k < 50; ++k) values.push_back(fisher(rng));
    std::sort(values.begin(), values.end());
    for (double f : values) {
      const WitnessReport r = entanglement_depth(f, n);
      CHECK(r.depth >= 1);
      CHECK(r.depth <= n);
      if (r.depth > 1) CHECK(f > separability_bound(n, r.depth - 1));
      if (r.depth < n) CHECK(f <= separability_bound(n, r.depth));
      CHECK(r.depth >= previous_depth);
      CHECK(f >= previous_f);
      previous_depth = r.depth;
      previous_f = f;
      for (int m = 1; m < n; ++m) {
        if (n % m == 0) CHECK((r.depth >= m + 1) == depth_for_divisor(f / n, m));
      }
    }
  }
}

TEST_CASE("separable inputs never certify entanglement") {
  for (int n = 1; n <= 50; ++n) {
    for (double f : {0.0, 0.5 * n, static_cast<double>(n)}) CHECK(entanglement_depth(f, n).depth == 1);
  }
}

TEST_CASE("witness domain errors") {
  CHECK_THROWS_AS(entanglement_depth(-1.0, 4), DomainError);
  CHECK_THROWS_AS(entanglement_depth(1.0, 0), DomainError);
  CHECK_THROWS_AS(entanglement_depth(1.0, 4, 0.0), DomainError);
  CHECK_THROWS_AS(entanglement_depth(1.0, 4, -1.0), DomainError);
  CHECK_THROWS_AS(separability_bound(4, 5), DomainError);
}
