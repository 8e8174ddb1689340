#pragma once

#include <utility>
#include <vector>

#include "qfi/delta_spectrum.hpp"
#include "qfi/hermitian_operator.hpp"
#include "qfi/spectral_resolution.hpp"

namespace qfi {

// ---------------------------------------------------------------------------
// Nearest-neighbour transverse-field Ising chain, energies in units of J:
//   H = -cos(theta) sum_{l=1}^{N-1} sx_l sx_{l+1} + sin(theta) sum_l sz_l,
//   O = sum_l sx_l / 2.
// Open boundaries; quantum critical at theta = pi/4.

enum class Boundary { open };

struct IsingChainSpec {
  int sites = 2;
  double theta = 0.0;
  Boundary boundary = Boundary::open;
};

inline constexpr int kMaxChainSites = 14;
/// Largest chain handed out as dense complex 2^N x 2^N matrices.
inline constexpr int kMaxDenseChainSites = 12;

void validate(const IsingChainSpec& spec);

/// Dense (H, O) in the computational sz basis (bit l set = spin l down).
/// Throws ResourceError above kMaxDenseChainSites.
std::pair<HermitianOperator, HermitianOperator> build_ising_chain(const IsingChainSpec& spec);

/// Same pair split by spin-flip parity prod_l sz_l and site reflection
/// l -> N + 1 - l. O flips parity and conserves reflection, so four real
/// sectors of ~2^N / 4 states are coupled by two generator blocks.
SectorProblem ising_chain_sectors(const IsingChainSpec& spec);

/// resolve(ising_chain_sectors(spec)); valid up to kMaxChainSites.
SpectralResolution ising_chain_resolution(const IsingChainSpec& spec);

// ---------------------------------------------------------------------------
// Infinite-range Ising model in the maximal-spin (Dicke) sector S = N/2:
//   H = -(cos(theta) / N) ((S^x)^2 - N/4) + sin(theta) S^z,   O = S^x,
// i.e. -(cos(theta)/N) sum_{l != j} s^x_l s^x_j + sin(theta) sum_l s^z_l with
// spin-1/2 operators s = sigma/2. Quantum critical point at theta = pi/4;
// thermal transition at critical_temperature(theta) for theta < pi/4.

struct InfiniteRangeSpec {
  int sites = 2;
  double theta = 0.0;
};

inline constexpr int kMaxInfiniteRangeSites = 4000;

void validate(const InfiniteRangeSpec& spec);

/// Dense (N+1)-dim (H, O) in the basis |S, m>, m = -S..S (index m + S).
std::pair<HermitianOperator, HermitianOperator> build_infinite_range(const InfiniteRangeSpec& spec);

/// Dicke block split by the parity of m + S; O couples the two halves.
SectorProblem infinite_range_sectors(const InfiniteRangeSpec& spec);

SpectralResolution infinite_range_resolution(const InfiniteRangeSpec& spec);

/// T_c / J = sin(theta) / log[(1 + tan theta) / (1 - tan theta)], 0 < theta < pi/4.
double critical_temperature(double theta);

// ---------------------------------------------------------------------------
// Hard-core bosons on a periodic chain, mapped to free fermions with
// eps_k = -2 (mu + J cos k). Generator: staggered density sum_l (-1)^l n_l.

enum class MomentumGrid {
  antiperiodic,  // k_j = 2 pi (j + 1/2) / N
  periodic,      // k_j = 2 pi j / N
};

struct HardCoreBosonSpec {
  int sites = 2;
  double hopping = 1.0;
  double mu = 0.0;
  MomentumGrid grid = MomentumGrid::antiperiodic;
};

void validate(const HardCoreBosonSpec& spec);

std::vector<double> hcb_momenta(const HardCoreBosonSpec& spec);
double hcb_dispersion(const HardCoreBosonSpec& spec, double k);
/// Mean density (1/N) sum_k f(eps_k).
double hcb_filling(const HardCoreBosonSpec& spec, double temperature);

/// f_Q = (4/N) sum_k tanh^2((eps_k - eps_{k+pi}) / 2T) f(eps_{k+pi}) [1 - f(eps_k)].
double hcb_qfi(const HardCoreBosonSpec& spec, double temperature);

/// Thermodynamic-limit ground state: 4n (mu <= 0), 4(1 - n) (mu > 0) with
/// n = 1 - acos(mu/J)/pi inside the band, 0 below it, 1 above it.
double hcb_qfi_zero_temperature(const HardCoreBosonSpec& spec);

/// Symmetrised S(q = pi, omega) as delta peaks at omega = |eps_k - eps_{k+pi}|
/// with weights f_lo (1 - f_hi) + f_hi (1 - f_lo); total weight, not per site.
DeltaSpectrum hcb_structure_factor(const HardCoreBosonSpec& spec, double temperature);

// ---------------------------------------------------------------------------
// (parameter, T, f_Q) sweeps.

enum class ModelKind { ising_chain, infinite_range, hard_core_bosons };

struct GridRequest {
  ModelKind model = ModelKind::ising_chain;
  int sites = 8;
  std::vector<double> parameters;    // theta, or mu for hard-core bosons
  std::vector<double> temperatures;
  double hopping = 1.0;
  unsigned jobs = 1;
};

struct GridRow {
  double parameter = 0.0;
  double temperature = 0.0;
  double fq = 0.0;
};

/// Rows ordered parameter-major, temperature-minor, independent of `jobs`.
std::vector<GridRow> qfi_grid(const GridRequest& request);

/// count points from start to stop inclusive; count = 1 gives {start}.
std::vector<double> linspace(double start, double stop, int count);

}  // namespace qfi
