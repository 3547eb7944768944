#pragma once

// Geometry -> channel triple (eta, kappa, n_e) for the two eavesdropper
// scenarios: an unlimited Eve kept outside an exclusion zone (far-field
// model), and a finite Eve aperture in Bob's plane under a Gaussian beam.
// Lengths are meters, frequencies Hz.

#include "skr/quadrature.hpp"

#include <optional>
#include <string>
#include <vector>

namespace skr {

inline constexpr double kSpeedOfLight = 3e8;          // m/s
inline constexpr double kPlanck = 6.626e-34;          // J s
inline constexpr double kBoltzmann = 1.38064852e-23;  // J/K

double frequency_from_wavelength(double wavelength);
double wavelength_from_frequency(double frequency);
double angular_frequency(double frequency);

struct ExclusionZoneGeometry {
  double r_a = 0.0;
  double r_b = 0.0;
  double r_ex = 0.0;
  double distance = 0.0;

  // Empty when the invariants hold: radii and distance > 0, r_ex >= r_b.
  std::vector<std::string> problems() const;
};

struct BeamGeometry {
  double w0 = 0.0;
  double r_a = 0.0;
  double r_b = 0.0;
  double r_e = 0.0;
  double r_ex = 0.0;
  double distance = 0.0;
  // Bob-to-Eve centre distance; unset means tangential to the zone.
  std::optional<double> eve_offset;

  double eve_center_offset() const { return eve_offset.value_or(r_ex + r_e); }

  // Empty when: w0 and radii > 0, distance >= 0, r_ex >= r_b,
  // eve_center_offset() >= r_ex + r_e.
  std::vector<std::string> problems() const;
};

struct ChannelPoint {
  double eta = 0.0;    // Alice -> Bob transmissivity
  double kappa = 0.0;  // fraction of the light Bob misses that Eve collects
  double n_e = 0.0;    // thermal photons per mode
};

// Bose-Einstein occupation 1 / (exp(hf/kT) - 1); 0 once hf/kT > 700.
double blackbody_ne(double frequency, double temperature);

// Far-field exclusion-zone channel; n_e is left at 0. Throws
// FarFieldViolation when (omega/omega0)^2 >= 1 for Bob or the zone.
ChannelPoint farfield_channel(const ExclusionZoneGeometry& geom, double omega);

// Gaussian beam radius W(L) = w0 sqrt(1 + (L/z0)^2), z0 = pi w0^2 / lambda.
double beam_waist_at(double w0, double distance, double wavelength);

// Fraction of the beam power landing on Bob's centred disc.
double p_bob_fraction(const BeamGeometry& geom, double wavelength,
                      const QuadratureOptions& options = {});

// Fraction of the beam power landing on Eve's disc at eve_center_offset().
double p_eve_fraction(const BeamGeometry& geom, double wavelength,
                      const QuadratureOptions& options = {});

// eta = P_Bob / P_total, kappa = P_Eve / ((1 - eta) P_total); n_e left at 0.
ChannelPoint beam_channel(const BeamGeometry& geom, double wavelength,
                          const QuadratureOptions& options = {});

}  // namespace skr
