#include "skr/sweep.hpp"

#include "skr/errors.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <sstream>
#include <thread>

namespace skr {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

void require(std::vector<std::string>& out, const std::optional<double>& field, const char* key,
             bool supplied_by_grid) {
  if (!supplied_by_grid && !field) out.push_back(std::string("missing required key '") + key + "'");
}

void positive(std::vector<std::string>& out, const std::optional<double>& field, const char* key) {
  if (field && !(*field > 0.0 && std::isfinite(*field))) {
    out.push_back(std::string(key) + " must be positive (got " + fmt(*field) + ")");
  }
}

void unused(std::vector<std::string>& out, const std::optional<double>& field, const char* key,
            const char* why) {
  if (field) out.push_back(std::string("key '") + key + "' " + why);
}

ExclusionZoneGeometry exclusion_geometry(const FixedParams& f) {
  return ExclusionZoneGeometry{*f.r_a_m, *f.r_b_m, *f.r_ex_m, *f.distance_km * 1e3};
}

BeamGeometry beam_geometry(const FixedParams& f) {
  return BeamGeometry{*f.w0_m, *f.r_a_m, *f.r_b_m, *f.r_e_m, *f.r_ex_m, *f.distance_km * 1e3,
                      f.eve_offset_m};
}

bool geometry_complete(const FixedParams& f) {
  const bool common = f.r_a_m && f.r_b_m && f.r_ex_m && f.distance_km;
  if (f.geometry == GeometryKind::exclusion_zone) return common;
  return common && f.r_e_m && f.w0_m;
}

std::vector<std::string> geometry_problems(const FixedParams& f) {
  if (f.geometry == GeometryKind::exclusion_zone) return exclusion_geometry(f).problems();
  return beam_geometry(f).problems();
}

std::string short_number(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

std::string_view to_string(GeometryKind g) {
  return g == GeometryKind::beam ? "beam" : "exclusion_zone";
}

std::optional<GeometryKind> parse_geometry_kind(std::string_view s) {
  if (s == "exclusion_zone") return GeometryKind::exclusion_zone;
  if (s == "beam") return GeometryKind::beam;
  return std::nullopt;
}

std::string_view to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::mu:
      return "mu";
    case SweepVariable::distance:
      return "distance";
    case SweepVariable::frequency:
      return "frequency";
    case SweepVariable::exclusion_radius:
      return "exclusion_radius";
  }
  return "?";
}

std::optional<SweepVariable> parse_sweep_variable(std::string_view s) {
  if (s == "mu") return SweepVariable::mu;
  if (s == "distance") return SweepVariable::distance;
  if (s == "frequency") return SweepVariable::frequency;
  if (s == "exclusion_radius") return SweepVariable::exclusion_radius;
  return std::nullopt;
}

std::string_view unit_of(SweepVariable v) {
  switch (v) {
    case SweepVariable::mu:
      return "photons/mode";
    case SweepVariable::distance:
      return "km";
    case SweepVariable::frequency:
      return "Hz";
    case SweepVariable::exclusion_radius:
      return "m";
  }
  return "";
}

FixedParams with_variable(const FixedParams& fixed, SweepVariable variable, double value) {
  FixedParams f = fixed;
  switch (variable) {
    case SweepVariable::mu:
      f.mu = value;
      break;
    case SweepVariable::distance:
      f.distance_km = value;
      break;
    case SweepVariable::frequency:
      f.frequency_hz = value;
      f.wavelength_nm.reset();
      break;
    case SweepVariable::exclusion_radius:
      f.r_ex_m = value;
      break;
  }
  return f;
}

std::vector<std::string> point_problems(const FixedParams& f, std::optional<SweepVariable> variable) {
  std::vector<std::string> out;
  const auto by_grid = [&](SweepVariable v) { return variable && *variable == v; };

  require(out, f.r_a_m, "r_a_m", false);
  require(out, f.r_b_m, "r_b_m", false);
  require(out, f.r_ex_m, "r_ex_m", by_grid(SweepVariable::exclusion_radius));
  require(out, f.distance_km, "L_km", by_grid(SweepVariable::distance));
  if (f.geometry == GeometryKind::beam) {
    require(out, f.w0_m, "w0_m", false);
    require(out, f.r_e_m, "r_e_m", false);
  } else {
    unused(out, f.w0_m, "w0_m", "is only used by geometry=beam");
    unused(out, f.r_e_m, "r_e_m", "is only used by geometry=beam");
    unused(out, f.eve_offset_m, "eve_offset_m", "is only used by geometry=beam");
  }

  if (by_grid(SweepVariable::frequency)) {
    unused(out, f.wavelength_nm, "lambda_nm", "conflicts with variable=frequency");
    unused(out, f.frequency_hz, "frequency_hz", "conflicts with variable=frequency");
  } else if (f.wavelength_nm && f.frequency_hz) {
    out.emplace_back("give exactly one of 'lambda_nm' and 'frequency_hz', not both");
  } else if (!f.wavelength_nm && !f.frequency_hz) {
    out.emplace_back("missing required key 'lambda_nm' (or 'frequency_hz')");
  }

  positive(out, f.r_a_m, "r_a_m");
  positive(out, f.r_b_m, "r_b_m");
  positive(out, f.r_ex_m, "r_ex_m");
  positive(out, f.r_e_m, "r_e_m");
  positive(out, f.w0_m, "w0_m");
  positive(out, f.eve_offset_m, "eve_offset_m");
  positive(out, f.wavelength_nm, "lambda_nm");
  positive(out, f.frequency_hz, "frequency_hz");
  if (f.distance_km) {
    const bool ok = f.geometry == GeometryKind::beam ? *f.distance_km >= 0.0 : *f.distance_km > 0.0;
    if (!ok || !std::isfinite(*f.distance_km)) {
      out.push_back("L_km out of range (got " + fmt(*f.distance_km) + ")");
    }
  }
  if (!(f.temperature_k > 0.0 && std::isfinite(f.temperature_k))) {
    out.push_back("temperature_k must be positive (got " + fmt(f.temperature_k) + ")");
  }
  if (!(f.beta > 0.0 && f.beta <= 1.0)) {
    out.push_back("beta must lie in (0, 1] (got " + fmt(f.beta) + ")");
  }
  if (f.mu && !(*f.mu >= 0.0 && std::isfinite(*f.mu))) {
    out.push_back("mu must be >= 0 (got " + fmt(*f.mu) + ")");
  }

  if (out.empty() && geometry_complete(f)) {
    for (auto& p : geometry_problems(f)) out.push_back(std::move(p));
  }
  return out;
}

OperatingPoint resolve_point(const FixedParams& f) {
  if (auto problems = point_problems(f); !problems.empty()) {
    std::string msg = "resolve_point:";
    for (const auto& p : problems) msg += " " + p + ";";
    throw DomainError(msg);
  }
  OperatingPoint out;
  out.mu = f.mu;
  const double wavelength =
      f.wavelength_nm ? *f.wavelength_nm * 1e-9 : wavelength_from_frequency(*f.frequency_hz);
  out.frequency_hz = f.frequency_hz ? *f.frequency_hz : frequency_from_wavelength(wavelength);

  if (f.geometry == GeometryKind::exclusion_zone) {
    out.channel = farfield_channel(exclusion_geometry(f), angular_frequency(out.frequency_hz));
  } else {
    out.channel = beam_channel(beam_geometry(f), wavelength);
  }
  if (f.unrestricted_eve) out.channel.kappa = 1.0;
  out.channel.n_e = blackbody_ne(out.frequency_hz, f.temperature_k);
  return out;
}

std::vector<std::string> validate(const SweepSpec& spec) {
  std::vector<std::string> out = point_problems(spec.fixed, spec.variable);

  if (spec.grid.size() < 2) out.emplace_back("grid needs at least 2 values");
  bool grid_ok = true;
  for (std::size_t i = 0; i < spec.grid.size(); ++i) {
    const double v = spec.grid[i];
    const bool in_range = spec.variable == SweepVariable::mu ? v >= 0.0
                          : spec.variable == SweepVariable::distance &&
                                  spec.fixed.geometry == GeometryKind::beam
                              ? v >= 0.0
                              : v > 0.0;
    if (!std::isfinite(v) || !in_range) {
      out.push_back("grid value " + fmt(v) + " out of range for variable " +
                    std::string(to_string(spec.variable)));
      grid_ok = false;
    }
    if (i > 0 && !(v > spec.grid[i - 1])) {
      out.push_back("grid must be strictly increasing (" + fmt(spec.grid[i - 1]) + " then " +
                    fmt(v) + ")");
      grid_ok = false;
    }
  }

  if (spec.optimize_mu && spec.variable == SweepVariable::mu) {
    out.emplace_back("optimize_mu cannot be combined with variable=mu");
  }
  if (!spec.optimize_mu && spec.variable != SweepVariable::mu && !spec.fixed.mu) {
    out.emplace_back("missing required key 'mu' (or set optimize_mu=true)");
  }
  if (spec.schemes.empty()) out.emplace_back("schemes must name at least one curve");
  const auto& s = spec.scan;
  if (!(s.mu_min > 0.0 && s.mu_max > s.mu_min && std::isfinite(s.mu_max)) ||
      s.points_per_decade < 1 || !(s.rel_tol > 0.0)) {
    out.emplace_back("invalid mu scan range (need 0 < mu_min < mu_max, points_per_decade >= 1)");
  }

  const bool geometric = spec.variable == SweepVariable::distance ||
                         spec.variable == SweepVariable::exclusion_radius;
  if (out.empty() && grid_ok && geometric) {
    for (double v : spec.grid) {
      for (const auto& p : point_problems(with_variable(spec.fixed, spec.variable, v))) {
        out.push_back("at " + std::string(to_string(spec.variable)) + "=" + fmt(v) + ": " + p);
      }
    }
  }
  return out;
}

Scheme optimization_target(const std::vector<Scheme>& schemes) {
  const bool direct = std::find(schemes.begin(), schemes.end(), Scheme::direct) != schemes.end();
  const bool reverse = std::find(schemes.begin(), schemes.end(), Scheme::reverse) != schemes.end();
  const bool best = std::find(schemes.begin(), schemes.end(), Scheme::best) != schemes.end();
  if (direct && !reverse && !best) return Scheme::direct;
  if (reverse && !direct && !best) return Scheme::reverse;
  return Scheme::best;
}

ResultRow evaluate_point(const FixedParams& fixed, bool optimize, Scheme target,
                         const MuScan& scan, double var) {
  ResultRow row;
  row.var = var;
  try {
    const OperatingPoint point = resolve_point(fixed);
    row.channel = point.channel;
    RateParams params{point.mu.value_or(0.0), fixed.beta, point.channel, fixed.eve_noise_model};
    if (optimize) {
      const OptimumReport opt = optimize_mu(params, target, scan);
      if (opt.unbounded) {
        const auto limits = asymptotic_rates(point.channel);
        row.rates.lb_direct = limits.direct;
        row.rates.lb_reverse = limits.reverse;
        row.rates.lb_best = std::max({0.0, limits.direct, limits.reverse});
        row.rates.ub = reported_upper_bound(point.channel);
        row.rates.diverged = row.rates.ub && std::isinf(*row.rates.ub);
        row.mu_used = opt.mu_star;
        row.unbounded = true;
        return row;
      }
      params.mu = opt.mu_star;
    }
    row.rates = rate_point(params);
    row.mu_used = params.mu;
  } catch (const FarFieldViolation& e) {
    row.error = "far_field(eta=" + short_number(e.ratio()) + ")";
  } catch (const DegenerateChannel&) {
    row.error = "degenerate_channel";
  } catch (const NumericalError& e) {
    row.error = "quadrature(estimate=" + short_number(e.estimate()) + ")";
  } catch (const ConditioningError&) {
    row.error = "conditioning";
  } catch (const DomainError&) {
    row.error = "domain";
  }
  return row;
}

bool ResultTable::has_errors() const {
  return std::any_of(rows.begin(), rows.end(), [](const ResultRow& r) { return r.error.has_value(); });
}

ResultTable run_sweep(const SweepSpec& spec, unsigned threads) {
  if (auto problems = validate(spec); !problems.empty()) throw ConfigError(std::move(problems));

  ResultTable table;
  table.variable = spec.variable;
  table.rows.resize(spec.grid.size());
  const Scheme target = optimization_target(spec.schemes);

  auto work = [&](std::size_t i) {
    const double v = spec.grid[i];
    table.rows[i] =
        evaluate_point(with_variable(spec.fixed, spec.variable, v), spec.optimize_mu, target,
                       spec.scan, v);
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(spec.grid.size()));
  if (threads <= 1) {
    for (std::size_t i = 0; i < spec.grid.size(); ++i) work(i);
    return table;
  }

  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < spec.grid.size(); i = next++) work(i);
      });
    }
  }
  return table;
}

unsigned threads_from_env() {
  const char* raw = std::getenv("SKR_THREADS");
  if (raw == nullptr) return 0;
  unsigned value = 0;
  const char* end = raw + std::strlen(raw);
  auto [ptr, ec] = std::from_chars(raw, end, value);
  if (ec != std::errc() || ptr != end) return 0;
  return value;
}

}  // namespace skr
