#include "qfi/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <tuple>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include "qfi/errors.hpp"

namespace qfi {
namespace {

void check_grid(const std::vector<double>& x, const std::vector<double>& y, std::size_t minimum, const char* what) {
  if (x.size() != y.size()) throw ValidationError(std::string(what) + ": x and y differ in length");
  if (x.size() < minimum) {
    throw ValidationError(std::string(what) + ": needs at least " + std::to_string(minimum) + " points");
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(y[i])) throw ValidationError(std::string(what) + ": non-finite data");
    if (i > 0 && !(x[i] > x[i - 1])) throw ValidationError(std::string(what) + ": x must be strictly ascending");
  }
}

// One rescaled curve, sorted by u (= x or log x).
struct Curve {
  std::vector<double> u;
  std::vector<double> y;

  double at(double point) const {
    auto it = std::upper_bound(u.begin(), u.end(), point);
    if (it == u.begin()) return y.front();
    if (it == u.end()) return y.back();
    const std::size_t i = static_cast<std::size_t>(it - u.begin());
    const double t = (point - u[i - 1]) / (u[i] - u[i - 1]);
    return y[i - 1] + t * (y[i] - y[i - 1]);
  }
};

double group_key(const ScalingRow& r, CollapseAxis axis) {
  switch (axis) {
    case CollapseAxis::size: return r.size;
    case CollapseAxis::temperature: return r.temperature;
    case CollapseAxis::field: return r.field;
  }
  return 0.0;
}

// (scaling variable, scaled value) for one row.
std::pair<double, double> rescale(const ScalingRow& r, CollapseAxis axis, double a, double b) {
  switch (axis) {
    case CollapseAxis::size: return {r.temperature * std::pow(r.size, b), r.value * std::pow(r.size, -a)};
    case CollapseAxis::temperature:
      return {r.field * std::pow(r.temperature, -b), r.value * std::pow(r.temperature, a)};
    case CollapseAxis::field: return {r.temperature * std::pow(r.field, -b), r.value * std::pow(r.field, a)};
  }
  return {0.0, 0.0};
}

// Rows grouped by curve label, each group sorted: independent of input order.
std::vector<std::vector<ScalingRow>> group(const ScalingDataset& data, CollapseAxis axis) {
  std::map<double, std::vector<ScalingRow>> groups;
  for (const auto& r : data.rows()) {
    const double key = group_key(r, axis);
    if (!(key > 0.0)) {
      throw ValidationError("collapse along " + std::string(to_string(axis)) + " needs positive curve labels");
    }
    groups[key].push_back(r);
  }
  if (groups.size() < 2) {
    throw ValidationError("collapse needs at least 2 distinct " + std::string(to_string(axis)) + " values");
  }
  std::vector<std::vector<ScalingRow>> out;
  for (auto& [key, rows] : groups) {
    std::sort(rows.begin(), rows.end(), [](const ScalingRow& l, const ScalingRow& r) {
      return std::tie(l.size, l.temperature, l.field) < std::tie(r.size, r.temperature, r.field);
    });
    out.push_back(std::move(rows));
  }
  return out;
}

CollapseResult evaluate(const std::vector<std::vector<ScalingRow>>& groups, CollapseAxis axis,
                        const std::vector<double>& exponents, const CollapseOptions& options) {
  if (exponents.size() != 2) throw ValidationError("collapse takes exactly two exponents");
  for (double e : exponents) {
    if (!std::isfinite(e)) throw ValidationError("collapse exponents must be finite");
  }
  if (options.samples < 2) throw ValidationError("collapse needs at least 2 samples");

  std::vector<std::vector<std::pair<double, double>>> points(groups.size());
  bool positive = true;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (const auto& r : groups[g]) {
      const auto p = rescale(r, axis, exponents[0], exponents[1]);
      if (!std::isfinite(p.first) || !std::isfinite(p.second)) {
        throw ValidationError("rescaled data is not finite; check the scaling variables are positive");
      }
      positive = positive && p.first > 0.0;
      points[g].push_back(p);
    }
  }
  const bool logarithmic = positive && !(options.window_hi <= 0.0);

  std::vector<Curve> curves;
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (auto& pts : points) {
    std::sort(pts.begin(), pts.end());
    Curve c;
    for (const auto& [x, y] : pts) {
      const double u = logarithmic ? std::log(x) : x;
      if (!c.u.empty() && !(u > c.u.back())) {
        throw ValidationError("a curve repeats a value of the scaling variable");
      }
      c.u.push_back(u);
      c.y.push_back(y);
    }
    if (c.u.size() < 2) throw ValidationError("every curve needs at least 2 points");
    lo = std::max(lo, c.u.front());
    hi = std::min(hi, c.u.back());
    curves.push_back(std::move(c));
  }
  if (logarithmic) {
    if (options.window_lo > 0.0) lo = std::max(lo, std::log(options.window_lo));
    hi = std::min(hi, std::log(options.window_hi));
  } else {
    lo = std::max(lo, options.window_lo);
    hi = std::min(hi, options.window_hi);
  }
  const double x_lo = logarithmic ? std::exp(lo) : lo;
  const double x_hi = logarithmic ? std::exp(hi) : hi;
  if (!(hi > lo)) {
    std::ostringstream msg;
    msg << "rescaled curves do not overlap: common window [" << x_lo << ", " << x_hi << "]";
    throw CollapseError(msg.str(), x_lo, x_hi);
  }

  double variance = 0.0;
  double square = 0.0;
  double amplitude = 0.0;
  const double count = static_cast<double>(curves.size());
  for (int s = 0; s < options.samples; ++s) {
    const double u = lo + (hi - lo) * s / (options.samples - 1);
    double sum = 0.0;
    double sum_sq = 0.0;
    for (const auto& c : curves) {
      const double y = c.at(u);
      sum += y;
      sum_sq += y * y;
    }
    const double mean = sum / count;
    variance += std::max(0.0, sum_sq / count - mean * mean);
    square += mean * mean;
    amplitude = std::max(amplitude, std::abs(mean));
  }
  variance /= options.samples;
  square /= options.samples;

  CollapseResult result;
  result.axis = axis;
  result.exponents = exponents;
  result.residual = square > 0.0 ? variance / square : variance;
  result.relative_spread = amplitude > 0.0 ? std::sqrt(variance) / amplitude : std::sqrt(variance);
  result.window_lo = x_lo;
  result.window_hi = x_hi;
  result.curves = static_cast<int>(curves.size());
  return result;
}

struct Objective {
  const std::vector<std::vector<ScalingRow>>* groups;
  CollapseAxis axis;
  const CollapseOptions* options;
};

// Penalty for exponents that pull the curves apart entirely.
constexpr double kNoOverlap = 1e6;

double objective(const gsl_vector* v, void* params) {
  const auto* o = static_cast<const Objective*>(params);
  try {
    return evaluate(*o->groups, o->axis, {gsl_vector_get(v, 0), gsl_vector_get(v, 1)}, *o->options).residual;
  } catch (const CollapseError&) {
    return kNoOverlap;
  } catch (const ValidationError&) {
    return kNoOverlap;
  }
}

struct MinimizerDeleter {
  void operator()(gsl_multimin_fminimizer* m) const { gsl_multimin_fminimizer_free(m); }
};
struct VectorDeleter {
  void operator()(gsl_vector* v) const { gsl_vector_free(v); }
};

}  // namespace

PowerLawFit fit_power_law(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw ValidationError("power-law fit needs at least 3 points");
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : points) {
    if (!(x > 0.0) || !(y > 0.0) || !std::isfinite(x) || !std::isfinite(y)) {
      throw DomainError("power-law fit needs positive finite data");
    }
    mx += std::log(x);
    my += std::log(y);
  }
  const double n = static_cast<double>(points.size());
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : points) {
    sxx += (std::log(x) - mx) * (std::log(x) - mx);
    sxy += (std::log(x) - mx) * (std::log(y) - my);
  }
  if (!(sxx > 0.0)) throw ValidationError("power-law fit needs at least two distinct x values");
  PowerLawFit fit;
  fit.exponent = sxy / sxx;
  const double intercept = my - fit.exponent * mx;
  fit.prefactor = std::exp(intercept);
  double ssr = 0.0;
  for (const auto& [x, y] : points) {
    const double r = std::log(y) - intercept - fit.exponent * std::log(x);
    ssr += r * r;
  }
  fit.standard_error = std::sqrt(ssr / (n - 2.0) / sxx);
  return fit;
}

std::vector<double> central_derivative(const std::vector<double>& x, const std::vector<double>& y) {
  check_grid(x, y, 3, "central_derivative");
  const std::size_t n = x.size();
  std::vector<double> d(n);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double hm = x[i] - x[i - 1];
    const double hp = x[i + 1] - x[i];
    d[i] = (hm * hm * y[i + 1] - hp * hp * y[i - 1] + (hp * hp - hm * hm) * y[i]) / (hm * hp * (hm + hp));
  }
  {
    const double h1 = x[1] - x[0];
    const double h2 = x[2] - x[1];
    d[0] = -(2.0 * h1 + h2) / (h1 * (h1 + h2)) * y[0] + (h1 + h2) / (h1 * h2) * y[1] - h1 / (h2 * (h1 + h2)) * y[2];
  }
  {
    const double h1 = x[n - 1] - x[n - 2];
    const double h2 = x[n - 2] - x[n - 3];
    d[n - 1] = (2.0 * h1 + h2) / (h1 * (h1 + h2)) * y[n - 1] - (h1 + h2) / (h1 * h2) * y[n - 2] +
               h1 / (h2 * (h1 + h2)) * y[n - 3];
  }
  return d;
}

DerivativePeak derivative_peak(const std::vector<double>& x, const std::vector<double>& y) {
  check_grid(x, y, 5, "derivative_peak");
  const std::vector<double> d = central_derivative(x, y);
  std::size_t i = 0;
  double lo = std::abs(d[0]);
  double hi = lo;
  for (std::size_t k = 1; k < d.size(); ++k) {
    const double a = std::abs(d[k]);
    lo = std::min(lo, a);
    if (a > hi) {
      hi = a;
      i = k;
    }
  }
  if (hi - lo <= 1e-10 * hi || hi == 0.0) {
    double mean = 0.0;
    for (double v : d) mean += v;
    return {0.5 * (x.front() + x.back()), mean / static_cast<double>(d.size()), true};
  }
  const double sign = d[i] < 0.0 ? -1.0 : 1.0;
  if (i == 0 || i + 1 == d.size()) return {x[i], d[i], false};

  const double x0 = x[i - 1], x1 = x[i], x2 = x[i + 1];
  const double y0 = std::abs(d[i - 1]), y1 = std::abs(d[i]), y2 = std::abs(d[i + 1]);
  const double denom = (x0 - x1) * (x0 - x2) * (x1 - x2);
  const double a = (x2 * (y1 - y0) + x1 * (y0 - y2) + x0 * (y2 - y1)) / denom;
  const double b = (x2 * x2 * (y0 - y1) + x1 * x1 * (y2 - y0) + x0 * x0 * (y1 - y2)) / denom;
  const double c = (x1 * x2 * (x1 - x2) * y0 + x2 * x0 * (x2 - x0) * y1 + x0 * x1 * (x0 - x1) * y2) / denom;
  if (!(a < 0.0)) return {x1, d[i], false};
  const double vertex = std::clamp(-b / (2.0 * a), x0, x2);
  return {vertex, sign * (c + vertex * (b + a * vertex)), false};
}

double entanglement_length(double density, int dimension) {
  if (std::isnan(density) || density < 0.0) throw DomainError("f_Q must be >= 0");
  if (dimension < 1) throw DomainError("dimension must be >= 1");
  return std::pow(density, 1.0 / dimension);
}

ScalingDataset::ScalingDataset(std::vector<ScalingRow> rows) : rows_(std::move(rows)) {
  if (rows_.empty()) throw ValidationError("scaling dataset is empty");
  double largest = 0.0;
  for (const auto& r : rows_) {
    if (!std::isfinite(r.size) || !std::isfinite(r.temperature) || !std::isfinite(r.field) ||
        !std::isfinite(r.value)) {
      throw ValidationError("scaling dataset entries must be finite");
    }
    largest = std::max(largest, std::abs(r.value));
  }
  for (const auto& r : rows_) {
    if (r.value < -1e-12 * largest) throw ValidationError("scaling dataset values must be >= 0");
  }
  std::vector<std::tuple<double, double, double>> keys;
  keys.reserve(rows_.size());
  for (const auto& r : rows_) keys.emplace_back(r.size, r.temperature, r.field);
  std::sort(keys.begin(), keys.end());
  if (std::adjacent_find(keys.begin(), keys.end()) != keys.end()) {
    throw ValidationError("scaling dataset has duplicate (N, T, h) keys");
  }
}

std::string_view to_string(CollapseAxis axis) {
  switch (axis) {
    case CollapseAxis::size: return "size";
    case CollapseAxis::temperature: return "temperature";
    case CollapseAxis::field: return "field";
  }
  return "unknown";
}

CollapseResult collapse_quality(const ScalingDataset& data, CollapseAxis axis, const std::vector<double>& exponents,
                                const CollapseOptions& options) {
  return evaluate(group(data, axis), axis, exponents, options);
}

CollapseResult collapse(const ScalingDataset& data, CollapseAxis axis, const std::vector<double>& guess,
                        const CollapseOptions& options) {
  const auto groups = group(data, axis);
  // Surfaces bad input (and no overlap at the guess) before optimising.
  evaluate(groups, axis, guess, options);

  // GSL aborts on errors by default; failures here are reported via status codes.
  static std::once_flag handler;
  std::call_once(handler, [] { gsl_set_error_handler_off(); });

  Objective params{&groups, axis, &options};
  gsl_multimin_function f{&objective, 2, &params};
  std::unique_ptr<gsl_vector, VectorDeleter> start(gsl_vector_alloc(2));
  std::unique_ptr<gsl_vector, VectorDeleter> step(gsl_vector_alloc(2));
  for (std::size_t k = 0; k < 2; ++k) {
    gsl_vector_set(start.get(), k, guess[k]);
    gsl_vector_set(step.get(), k, 0.05);
  }
  std::unique_ptr<gsl_multimin_fminimizer, MinimizerDeleter> minimizer(
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 2));
  gsl_multimin_fminimizer_set(minimizer.get(), &f, start.get(), step.get());

  int iterations = 0;
  for (; iterations < 5000; ++iterations) {
    if (gsl_multimin_fminimizer_iterate(minimizer.get()) != GSL_SUCCESS) break;
    if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(minimizer.get()), 1e-9) == GSL_SUCCESS) break;
  }
  const gsl_vector* best = gsl_multimin_fminimizer_x(minimizer.get());
  CollapseResult result = evaluate(groups, axis, {gsl_vector_get(best, 0), gsl_vector_get(best, 1)}, options);
  result.iterations = iterations + 1;
  return result;
}

}  // namespace qfi
