#pragma once

// Flat key=value run configuration. One key per line, '#' starts a comment,
// blank lines are ignored. Recognized keys:
//
//   mode              rate | sweep | optimize | figure            (required)
//   geometry          exclusion_zone | beam     (required unless figure)
//   r_a_m r_b_m r_ex_m                aperture / zone radii, m
//   r_e_m w0_m eve_offset_m           beam geometry only, m
//   L_km                              transmission distance, km
//   lambda_nm | frequency_hz          carrier, exactly one
//   temperature_k                     default 3
//   beta                              default 1
//   mu                                input photons per mode (mode=rate)
//   eve_noise_model   consistent | printed    default consistent
//   unrestricted_eve  true | false            force kappa = 1
//   variable          mu | distance | frequency | exclusion_radius  (sweep)
//   grid              v1,v2,...   or grid_start, grid_stop, grid_points,
//                     grid_spacing (linear | log)
//   optimize_mu       true | false  (sweep)
//   schemes           subset of direct,reverse,best,upper  (sweep)
//   scheme            direct | reverse | best    (optimize, default best)
//   mu_min mu_max mu_points_per_decade mu_rel_tol    optimizer scan
//   output_path, figure, label

#include "skr/sweep.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace skr {

enum class Mode { rate, sweep, optimize, figure };

std::string_view to_string(Mode m);

struct RunConfig {
  Mode mode = Mode::rate;
  FixedParams fixed;
  std::optional<SweepVariable> variable;
  std::vector<double> grid;
  bool optimize_mu = false;
  std::vector<Scheme> schemes{Scheme::direct, Scheme::reverse, Scheme::best, Scheme::upper};
  Scheme scheme = Scheme::best;
  MuScan scan;
  std::optional<std::string> output_path;
  std::optional<std::string> figure;
  std::string label;
};

// Throws ConfigError listing every problem (unknown, duplicate, malformed or
// missing keys, and violated invariants).
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

// Sweep view of a mode=sweep config.
SweepSpec to_sweep_spec(const RunConfig& config);

// Config text (mode=sweep) that parses back to an identical spec.
std::string serialize(const SweepSpec& spec);

// Shortest decimal text that reads back to exactly v.
std::string exact_number(double v);

}  // namespace skr
