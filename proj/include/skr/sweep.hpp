#pragma once

// Declarative 1-D parameter sweeps over the rate engine.
//
// Parameters are held in configuration units (L in km, wavelength in nm,
// lengths in m, frequency in Hz) so that a spec survives a text round trip
// bit-for-bit; they are converted to SI only when a point is resolved.

#include "skr/channel.hpp"
#include "skr/optimize.hpp"
#include "skr/rates.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace skr {

enum class GeometryKind { exclusion_zone, beam };
enum class SweepVariable { mu, distance, frequency, exclusion_radius };

std::string_view to_string(GeometryKind g);
std::optional<GeometryKind> parse_geometry_kind(std::string_view s);
std::string_view to_string(SweepVariable v);
std::optional<SweepVariable> parse_sweep_variable(std::string_view s);
// Unit of the sweep variable as written in the `var` column.
std::string_view unit_of(SweepVariable v);

struct FixedParams {
  GeometryKind geometry = GeometryKind::exclusion_zone;
  std::optional<double> r_a_m;
  std::optional<double> r_b_m;
  std::optional<double> r_ex_m;
  std::optional<double> r_e_m;
  std::optional<double> w0_m;
  std::optional<double> eve_offset_m;
  std::optional<double> distance_km;
  std::optional<double> wavelength_nm;
  std::optional<double> frequency_hz;
  double temperature_k = 3.0;
  double beta = 1.0;
  std::optional<double> mu;
  EveNoiseModel eve_noise_model = EveNoiseModel::consistent;
  // Forces kappa = 1: Eve collects all light Bob misses.
  bool unrestricted_eve = false;

  bool operator==(const FixedParams&) const = default;
};

struct SweepSpec {
  SweepVariable variable = SweepVariable::mu;
  std::vector<double> grid;
  FixedParams fixed;
  bool optimize_mu = false;
  std::vector<Scheme> schemes{Scheme::direct, Scheme::reverse, Scheme::best, Scheme::upper};
  MuScan scan;
  std::string label;

  bool operator==(const SweepSpec&) const = default;
};

// A fully resolved operating point.
struct OperatingPoint {
  ChannelPoint channel;
  double frequency_hz = 0.0;
  std::optional<double> mu;
};

// Copy of `fixed` with the sweep variable set to `value`.
FixedParams with_variable(const FixedParams& fixed, SweepVariable variable, double value);

// Problems that prevent `fixed` from describing a point (missing fields,
// ranges, geometry invariants). `variable`, when given, is treated as
// supplied by the grid.
std::vector<std::string> point_problems(const FixedParams& fixed,
                                        std::optional<SweepVariable> variable = std::nullopt);

// Channel + noise at one point. Throws FarFieldViolation, DegenerateChannel,
// NumericalError or DomainError.
OperatingPoint resolve_point(const FixedParams& fixed);

// Every violation in the spec; empty when it can be run.
std::vector<std::string> validate(const SweepSpec& spec);

// Target of mu optimization: a single requested lower-bound scheme, else best.
Scheme optimization_target(const std::vector<Scheme>& schemes);

struct ResultRow {
  double var = 0.0;
  ChannelPoint channel;
  RateResult rates;
  double mu_used = 0.0;  // +inf for an unbounded optimum
  bool unbounded = false;
  std::optional<std::string> error;  // short code, e.g. "far_field(eta=1.2)"
};

struct ResultTable {
  SweepVariable variable = SweepVariable::mu;
  std::vector<ResultRow> rows;
  std::vector<std::string> comments;  // emitted as leading "# " lines

  bool has_errors() const;
};

// Evaluates one point: rates at fixed.mu, or at the optimal mu.
ResultRow evaluate_point(const FixedParams& fixed, bool optimize, Scheme target,
                         const MuScan& scan, double var);

// Rows come back in grid order whatever the thread count. threads == 0 picks
// the hardware concurrency. Throws ConfigError for an invalid spec.
ResultTable run_sweep(const SweepSpec& spec, unsigned threads = 0);

// SKR_THREADS, 0 or unset meaning automatic.
unsigned threads_from_env();

}  // namespace skr
