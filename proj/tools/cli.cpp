#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include "qfi/errors.hpp"
#include "qfi/identity_suite.hpp"
#include "qfi/ingest.hpp"
#include "qfi/models.hpp"
#include "qfi/scaling.hpp"
#include "qfi/witness.hpp"

#ifndef QFI_SCOPE_VERSION
#define QFI_SCOPE_VERSION "unknown"
#endif

namespace qfi::cli {
namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

std::optional<double> to_double(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || end != s.data() + s.size()) return std::nullopt;
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, sep)) parts.push_back(part);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

// Numeric CSV with a header row; blank and '#' lines skipped.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::optional<std::size_t> find(std::initializer_list<std::string_view> names) const {
    for (auto name : names) {
      auto it = std::find(columns.begin(), columns.end(), name);
      if (it != columns.end()) return static_cast<std::size_t>(it - columns.begin());
    }
    return std::nullopt;
  }
};

Table read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  Table table;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos || line.front() == '#') continue;
    auto fields = split(line, ',');
    if (table.columns.empty()) {
      for (auto& f : fields) {
        f.erase(std::remove_if(f.begin(), f.end(), [](char c) { return c == ' ' || c == '\t'; }), f.end());
      }
      table.columns = std::move(fields);
      continue;
    }
    if (fields.size() != table.columns.size()) {
      throw ParseError(number, "expected " + std::to_string(table.columns.size()) + " columns");
    }
    std::vector<double> row;
    for (const auto& f : fields) {
      const auto v = to_double(f);
      if (!v || !std::isfinite(*v)) throw ParseError(number, "non-numeric or non-finite value '" + f + "'");
      row.push_back(*v);
    }
    table.rows.push_back(std::move(row));
  }
  if (table.columns.empty()) throw ParseError(number, "missing header row");
  if (table.rows.empty()) throw ParseError(number, "no data rows");
  return table;
}

json number_or_null(std::optional<double> v) { return v ? json(*v) : json(nullptr); }

// Writes `content` to `path` with a manifest alongside, or to `out`.
void emit(const std::string& content, const std::string& path, const std::vector<std::string>& args,
          const json& parameters, Clock::time_point start, std::ostream& out) {
  if (path.empty()) {
    out << content;
    return;
  }
  {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw ValidationError("cannot write " + path);
    file << content;
  }
  json manifest;
  manifest["command_line"] = args;
  manifest["parameters"] = parameters;
  manifest["code_version"] = QFI_SCOPE_VERSION;
  manifest["wall_time_seconds"] = std::chrono::duration<double>(Clock::now() - start).count();
  manifest["outputs"] = json::array({{{"path", path}, {"sha256", sha256_hex(content)}}});
  std::ofstream file(path + ".manifest.json", std::ios::binary);
  if (!file) throw ValidationError("cannot write " + path + ".manifest.json");
  file << manifest.dump(2) << '\n';
}

ModelKind model_kind(const std::string& name) {
  if (name == "ising-chain") return ModelKind::ising_chain;
  if (name == "infinite-range") return ModelKind::infinite_range;
  if (name == "hcb") return ModelKind::hard_core_bosons;
  throw ValidationError("unknown model '" + name + "' (ising-chain, infinite-range, hcb)");
}

CollapseAxis collapse_axis(const std::string& name) {
  if (name == "size") return CollapseAxis::size;
  if (name == "temperature") return CollapseAxis::temperature;
  if (name == "field") return CollapseAxis::field;
  throw ValidationError("unknown collapse axis '" + name + "' (size, temperature, field)");
}

json estimate_json(const QfiEstimate& e, const SampledSpectrum& s) {
  json j;
  j["value"] = e.value;
  j["raw_value"] = e.raw_value;
  j["weighting_temperature"] = e.weighting_temperature;
  j["flags"] = e.flags;
  j["kind"] = std::string(to_string(s.kind));
  j["samples"] = s.omega.size();
  j["t_min"] = s.t_min;
  j["t_max"] = s.t_max;
  return j;
}

json fit_json(const PowerLawFit& f) {
  return {{"exponent", f.exponent}, {"prefactor", f.prefactor}, {"standard_error", f.standard_error}};
}

// Options shared by the spectrum-reading commands.
struct SpectrumFlags {
  std::string path;
  std::optional<double> t_min, t_max, sigma, omega_max, weighting_temperature;

  void add(CLI::App* app, bool required) {
    auto* o = app->add_option("--spectrum", path, "CSV with header omega,chi2 (or omega,s)")->check(CLI::ExistingFile);
    if (required) o->required();
    app->add_option("--tmin", t_min, "lower end of the temperature interval");
    app->add_option("--tmax", t_max, "upper end of the temperature interval");
    app->add_option("--sigma", sigma, "Gaussian resolution width of the data");
    app->add_option("--omega-max", omega_max, "frequency cutoff");
    app->add_option("--weighting-temperature", weighting_temperature,
                    "tanh temperature replacing T_max (voids the lower-bound guarantee)");
  }

  std::pair<SampledSpectrum, QfiEstimate> evaluate() const {
    SpectrumMetadata meta{t_min, t_max, sigma, omega_max};
    SampledSpectrum s = parse_spectrum_file(path, meta);
    return {s, qfi_lower_bound(s, weighting_temperature)};
  }

  json parameters() const {
    return {{"spectrum", path},         {"tmin", number_or_null(t_min)},
            {"tmax", number_or_null(t_max)}, {"sigma", number_or_null(sigma)},
            {"omega_max", number_or_null(omega_max)}, {"weighting_temperature", number_or_null(weighting_temperature)}};
  }
};

}  // namespace

std::vector<double> parse_range(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() == 1) {
    const auto v = to_double(parts[0]);
    if (!v || !std::isfinite(*v)) throw ValidationError("not a number: '" + text + "'");
    return {*v};
  }
  if (parts.size() != 3) throw ValidationError("range must be start:stop:count, got '" + text + "'");
  const auto start = to_double(parts[0]);
  const auto stop = to_double(parts[1]);
  const auto count = to_double(parts[2]);
  if (!start || !stop || !count) throw ValidationError("range must be start:stop:count, got '" + text + "'");
  if (*count < 1.0 || *count != std::floor(*count)) {
    throw ValidationError("range count must be a positive integer, got '" + parts[2] + "'");
  }
  return linspace(*start, *stop, static_cast<int>(*count));
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < length; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", value);
  return buf;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  CLI::App app{"Quantum Fisher information of thermal many-body states", args.empty() ? "qfi-scope" : args[0]};
  app.require_subcommand(1);
  app.set_version_flag("--version", QFI_SCOPE_VERSION);

  std::string out_path;

  // grid
  auto* grid = app.add_subcommand("grid", "f_Q over (theta or mu, T) for a model");
  std::string model;
  int sites = 0;
  std::string theta_range, mu_range, temp_range;
  double hopping = 1.0;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  grid->add_option("--model", model, "ising-chain, infinite-range or hcb")->required();
  grid->add_option("--n", sites, "number of sites")->required();
  grid->add_option("--theta", theta_range, "theta range start:stop:count (spin models)");
  grid->add_option("--mu", mu_range, "chemical potential range (hcb)");
  grid->add_option("--temp", temp_range, "temperature range start:stop:count")->required();
  grid->add_option("--hopping", hopping, "hcb hopping J");
  auto* jobs_option =
      grid->add_option("--jobs", jobs, "worker threads (default $QFI_SCOPE_JOBS)")->check(CLI::PositiveNumber);
  grid->add_option("--out", out_path, "CSV output file (manifest written alongside)");

  // verify
  auto* verify = app.add_subcommand("verify", "randomised check of the QFI identities");
  IdentitySuiteOptions suite;
  verify->add_option("--instances", suite.instances, "random instances")->check(CLI::NonNegativeNumber);
  verify->add_option("--dims", suite.dims, "Hilbert-space dimensions, cycled")->delimiter(',');
  verify->add_option("--tmin", suite.t_min, "lowest temperature");
  verify->add_option("--tmax", suite.t_max, "highest temperature");
  verify->add_option("--seed", suite.seed, "RNG seed");
  verify->add_flag("!--no-edge-cases", suite.edge_cases, "skip dim = 1, T = 0, T = inf and degenerate instances");
  verify->add_option("--out", out_path, "JSON report file");
  double tolerance = 1e-10;
  verify->add_option("--tolerance", tolerance, "maximum relative deviation");

  // witness
  auto* witness = app.add_subcommand("witness", "entanglement depth certified by F_Q");
  std::optional<double> fq;
  bool density = false;
  int witness_sites = 0;
  double width = 1.0;
  SpectrumFlags witness_spectrum;
  witness->add_option("--fq", fq, "total F_Q (f_Q with --density)");
  witness->add_flag("--density", density, "--fq and spectra are per site");
  witness->add_option("--n", witness_sites, "number of sites")->required();
  witness->add_option("--width", width, "per-site spectral width h_max - h_min of the generator");
  witness_spectrum.add(witness, false);
  witness->add_option("--out", out_path, "JSON output file");

  // ingest
  auto* ingest = app.add_subcommand("ingest", "QFI lower bound from a sampled spectrum");
  SpectrumFlags ingest_spectrum;
  ingest_spectrum.add(ingest, true);
  ingest->add_option("--out", out_path, "JSON output file");

  // collapse
  auto* collapse_cmd = app.add_subcommand("collapse", "fit scaling exponents by data collapse");
  std::string data_path, axis_name = "size", window;
  std::vector<double> guess{0.5, 0.5};
  bool fixed = false;
  int samples = 200;
  collapse_cmd->add_option("--data", data_path, "CSV with columns among N,T,h and fq")->required()->check(
      CLI::ExistingFile);
  collapse_cmd->add_option("--axis", axis_name, "size, temperature or field");
  collapse_cmd->add_option("--guess", guess, "starting exponents a,b")->delimiter(',')->expected(2);
  collapse_cmd->add_flag("--fixed", fixed, "evaluate the guess without optimising");
  collapse_cmd->add_option("--window", window, "scaling-variable window lo:hi");
  collapse_cmd->add_option("--samples", samples, "support samples")->check(CLI::Range(2, 100000));
  collapse_cmd->add_option("--out", out_path, "JSON output file");

  // derivative
  auto* derivative = app.add_subcommand("derivative", "peaks of d f_Q / d parameter, per temperature");
  std::string derivative_path;
  std::optional<double> critical;
  derivative->add_option("--data", derivative_path, "grid CSV (parameter,T,fq) or two-column x,y")
      ->required()
      ->check(CLI::ExistingFile);
  derivative->add_option("--critical", critical, "critical parameter; fits |position - critical| ~ T^b");
  derivative->add_option("--out", out_path, "JSON output file");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  if (argv.empty()) argv.push_back("qfi-scope");
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    if (*grid) {
      GridRequest request;
      request.model = model_kind(model);
      request.sites = sites;
      request.hopping = hopping;
      if (!*jobs_option) {
        // CLI11 skips unparsable environment values; an invalid setting is a usage error here.
        if (const char* env = std::getenv("QFI_SCOPE_JOBS")) {
          unsigned value = 0;
          const std::string_view text(env);
          const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
          if (ec != std::errc() || end != text.data() + text.size() || value == 0) {
            throw ValidationError("QFI_SCOPE_JOBS must be a positive integer");
          }
          jobs = value;
        }
      }
      request.jobs = jobs;
      const bool hcb = request.model == ModelKind::hard_core_bosons;
      const std::string& range = hcb ? mu_range : theta_range;
      if (range.empty()) throw ValidationError(hcb ? "hcb needs --mu" : "spin models need --theta");
      request.parameters = parse_range(range);
      request.temperatures = parse_range(temp_range);
      const auto rows = qfi_grid(request);
      std::string csv = hcb ? "mu,T,fq\n" : "theta,T,fq\n";
      for (const auto& r : rows) {
        csv += format_number(r.parameter) + ',' + format_number(r.temperature) + ',' + format_number(r.fq) + '\n';
      }
      const json params{{"model", model}, {"n", sites},        {"theta", theta_range},
                        {"mu", mu_range}, {"temp", temp_range}, {"hopping", hopping}};
      emit(csv, out_path, args, params, start, out);
      return kSuccess;
    }

    if (*verify) {
      const IdentityReport report = run_identity_suite(suite);
      json j;
      j["instances"] = suite.instances;
      j["seed"] = suite.seed;
      j["dims"] = suite.dims;
      j["t_min"] = suite.t_min;
      j["t_max"] = suite.t_max;
      j["tolerance"] = tolerance;
      j["max_deviation"] = report.max_deviation;
      j["sum_rule_holds"] = report.sum_rule_holds;
      j["passed"] = report.passed(tolerance);
      json cases = json::array();
      for (const auto& c : report.cases) {
        cases.push_back({{"label", c.label},
                         {"dim", c.dim},
                         {"temperature", std::isinf(c.temperature) ? json("inf") : json(c.temperature)},
                         {"qfi_double_sum", c.double_sum},
                         {"qfi_spectrum", c.spectrum},
                         {"qfi_fdt", c.fdt},
                         {"sum_rule_bound", number_or_null(c.sum_rule)},
                         {"deviation", c.deviation}});
      }
      j["cases"] = std::move(cases);
      const json params{{"instances", suite.instances}, {"dims", suite.dims},   {"seed", suite.seed},
                        {"tmin", suite.t_min},          {"tmax", suite.t_max}, {"edge_cases", suite.edge_cases}};
      emit(j.dump(2) + '\n', out_path, args, params, start, out);
      if (!report.passed(tolerance)) {
        err << "identity check failed: max deviation " << report.max_deviation
            << (report.sum_rule_holds ? "" : ", sum rule violated") << '\n';
        return kCheckFailed;
      }
      return kSuccess;
    }

    if (*witness) {
      if (fq.has_value() == !witness_spectrum.path.empty()) {
        throw ValidationError("witness needs exactly one of --fq and --spectrum");
      }
      json j;
      double total = 0.0;
      if (fq) {
        if (std::isnan(*fq) || *fq < 0.0) throw DomainError("--fq must be >= 0");
        total = density ? *fq * witness_sites : *fq;
      } else {
        const auto [spectrum, estimate] = witness_spectrum.evaluate();
        total = density ? estimate.value * witness_sites : estimate.value;
        j["estimate"] = estimate_json(estimate, spectrum);
      }
      const WitnessReport report = entanglement_depth(total, witness_sites, width);
      json r;
      r["N"] = report.sites;
      r["F_Q"] = report.fisher;
      r["f_Q"] = report.density();
      r["spectrum_width"] = report.width;
      r["depth"] = report.depth;
      r["bound_at_depth"] = number_or_null(report.bound_at_depth);
      r["entangled"] = report.depth > 1;
      if (j.contains("estimate")) r["estimate"] = j["estimate"];
      json params = witness_spectrum.parameters();
      params["fq"] = number_or_null(fq);
      params["density"] = density;
      params["n"] = witness_sites;
      params["width"] = width;
      emit(r.dump(2) + '\n', out_path, args, params, start, out);
      return kSuccess;
    }

    if (*ingest) {
      const auto [spectrum, estimate] = ingest_spectrum.evaluate();
      emit(estimate_json(estimate, spectrum).dump(2) + '\n', out_path, args, ingest_spectrum.parameters(), start, out);
      return kSuccess;
    }

    if (*collapse_cmd) {
      const Table table = read_table(data_path);
      const auto size_col = table.find({"N", "L", "size"});
      const auto t_col = table.find({"T", "temperature"});
      const auto h_col = table.find({"h", "field"});
      const auto v_col = table.find({"fq", "value"});
      if (!v_col) throw ValidationError("collapse data needs an fq column");
      std::vector<ScalingRow> rows;
      for (const auto& r : table.rows) {
        rows.push_back({size_col ? r[*size_col] : 0.0, t_col ? r[*t_col] : 0.0, h_col ? r[*h_col] : 0.0, r[*v_col]});
      }
      CollapseOptions options;
      options.samples = samples;
      if (!window.empty()) {
        const auto parts = split(window, ':');
        const auto lo = parts.size() == 2 ? to_double(parts[0]) : std::nullopt;
        const auto hi = parts.size() == 2 ? to_double(parts[1]) : std::nullopt;
        if (!lo || !hi) throw ValidationError("--window must be lo:hi");
        options.window_lo = *lo;
        options.window_hi = *hi;
      }
      const ScalingDataset data{std::move(rows)};
      const CollapseAxis axis = collapse_axis(axis_name);
      const CollapseResult result =
          fixed ? collapse_quality(data, axis, guess, options) : collapse(data, axis, guess, options);
      json j;
      j["axis"] = std::string(to_string(result.axis));
      j["exponents"] = result.exponents;
      j["residual"] = result.residual;
      j["relative_spread"] = result.relative_spread;
      j["fit_window"] = {result.window_lo, result.window_hi};
      j["curves"] = result.curves;
      j["optimized"] = !fixed;
      j["iterations"] = result.iterations;
      const json params{{"data", data_path}, {"axis", axis_name}, {"guess", guess},
                        {"fixed", fixed},    {"window", window},   {"samples", samples}};
      emit(j.dump(2) + '\n', out_path, args, params, start, out);
      return kSuccess;
    }

    if (*derivative) {
      const Table table = read_table(derivative_path);
      if (table.columns.size() != 2 && table.columns.size() != 3) {
        throw ValidationError("derivative data needs 2 columns (x,y) or 3 (parameter,T,fq)");
      }
      // Curves keyed by temperature; a two-column file is a single curve.
      std::map<double, std::pair<std::vector<double>, std::vector<double>>> curves;
      const bool per_temperature = table.columns.size() == 3;
      for (const auto& r : table.rows) {
        auto& c = curves[per_temperature ? r[1] : 0.0];
        c.first.push_back(r[0]);
        c.second.push_back(per_temperature ? r[2] : r[1]);
      }
      json peaks = json::array();
      std::vector<std::pair<double, double>> heights, positions;
      for (auto& [t, c] : curves) {
        std::vector<std::size_t> order(c.first.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](auto a, auto b) { return c.first[a] < c.first[b]; });
        std::vector<double> x, y;
        for (auto i : order) {
          x.push_back(c.first[i]);
          y.push_back(c.second[i]);
        }
        const DerivativePeak p = derivative_peak(x, y);
        json entry;
        if (per_temperature) entry["T"] = t;
        entry["position"] = p.position;
        entry["height"] = p.height;
        entry["flat"] = p.flat;
        peaks.push_back(std::move(entry));
        if (per_temperature && !p.flat && t > 0.0) {
          heights.emplace_back(t, std::abs(p.height));
          if (critical) positions.emplace_back(t, std::abs(p.position - *critical));
        }
      }
      json j;
      j["peaks"] = std::move(peaks);
      if (heights.size() >= 3) j["height_fit"] = fit_json(fit_power_law(heights));
      if (positions.size() >= 3) j["position_fit"] = fit_json(fit_power_law(positions));
      const json params{{"data", derivative_path}, {"critical", number_or_null(critical)}};
      emit(j.dump(2) + '\n', out_path, args, params, start, out);
      return kSuccess;
    }
  } catch (const CollapseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kCheckFailed;
  }
  return kUsage;
}

}  // namespace qfi::cli
