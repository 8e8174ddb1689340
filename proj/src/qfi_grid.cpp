#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>
#include <vector>

#include "qfi/errors.hpp"
#include "qfi/models.hpp"
#include "qfi/spectral.hpp"

namespace qfi {
namespace {

// f_Q at every temperature for one parameter value; one diagonalisation.
std::vector<double> sweep(const GridRequest& request, double parameter) {
  std::vector<double> fq;
  fq.reserve(request.temperatures.size());
  const double n = request.sites;
  switch (request.model) {
    case ModelKind::ising_chain: {
      const SpectralResolution r = ising_chain_resolution({request.sites, parameter});
      for (double t : request.temperatures) fq.push_back(qfi_thermal(r, t) / n);
      break;
    }
    case ModelKind::infinite_range: {
      const SpectralResolution r = infinite_range_resolution({request.sites, parameter});
      for (double t : request.temperatures) fq.push_back(qfi_thermal(r, t) / n);
      break;
    }
    case ModelKind::hard_core_bosons: {
      const HardCoreBosonSpec spec{request.sites, request.hopping, parameter};
      for (double t : request.temperatures) fq.push_back(hcb_qfi(spec, t));
      break;
    }
  }
  return fq;
}

void validate(const GridRequest& request) {
  if (request.parameters.empty()) throw ValidationError("grid needs at least one parameter value");
  if (request.temperatures.empty()) throw ValidationError("grid needs at least one temperature");
  for (double t : request.temperatures) {
    if (std::isnan(t) || t < 0.0) throw DomainError("grid temperatures must be >= 0");
  }
  for (double p : request.parameters) {
    if (!std::isfinite(p)) throw ValidationError("grid parameters must be finite");
  }
  // Fail on the model spec before spawning workers.
  const double p = request.parameters.front();
  switch (request.model) {
    case ModelKind::ising_chain:
      qfi::validate(IsingChainSpec{request.sites, p});
      break;
    case ModelKind::infinite_range:
      qfi::validate(InfiniteRangeSpec{request.sites, p});
      break;
    case ModelKind::hard_core_bosons:
      qfi::validate(HardCoreBosonSpec{request.sites, request.hopping, p});
      break;
  }
}

}  // namespace

std::vector<GridRow> qfi_grid(const GridRequest& request) {
  validate(request);
  const std::size_t count = request.parameters.size();
  std::vector<std::vector<double>> results(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        results[i] = sweep(request, request.parameters[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t jobs = std::clamp<std::size_t>(request.jobs, 1, count);
  {
    std::vector<std::jthread> pool;
    for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::vector<GridRow> rows;
  rows.reserve(count * request.temperatures.size());
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = 0; j < request.temperatures.size(); ++j) {
      rows.push_back({request.parameters[i], request.temperatures[j], results[i][j]});
    }
  }
  return rows;
}

std::vector<double> linspace(double start, double stop, int count) {
  if (count < 1) throw ValidationError("linspace needs count >= 1");
  if (!std::isfinite(start) || !std::isfinite(stop)) throw ValidationError("linspace bounds must be finite");
  if (count == 1) return {start};
  std::vector<double> out(count);
  const double step = (stop - start) / (count - 1);
  for (int i = 0; i < count; ++i) out[i] = start + i * step;
  out.back() = stop;
  return out;
}

}  // namespace qfi
