#include "skr/channel.hpp"

#include "skr/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace skr {

namespace {

constexpr double kPi = std::numbers::pi;

std::string describe(const std::vector<std::string>& problems) {
  std::string msg;
  for (const auto& p : problems) msg += (msg.empty() ? "" : "; ") + p;
  return msg;
}

void require_valid(const std::vector<std::string>& problems, const char* what) {
  if (!problems.empty()) throw DomainError(std::string(what) + ": " + describe(problems));
}

void require_positive(std::vector<std::string>& out, const char* name, double v) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    std::ostringstream os;
    os << name << " must be positive and finite (got " << v << ")";
    out.push_back(os.str());
  }
}

// (erf(a + b) - erf(a - b)) / 2 for b >= 0, computed through erfc when both
// arguments sit in the upper tail so the difference does not cancel to zero.
// Narrow windows use the Hermite expansion
//   e^{-a^2} sum_k H_2k(a) b^(2k+1) / ((2k+1) (2k)!) * 2/sqrt(pi),
// which keeps full relative accuracy as b -> 0 (Eve's disc edges, tiny discs).
double half_erf_window(double a, double b) {
  if (b <= 1e-2 && std::abs(a) * b <= 0.05) {
    double h_prev = 1.0;       // H_0
    double h = 2.0 * a;        // H_1
    double sum = b;            // k = 0 term
    double power = b;          // b^(2k+1)
    double factorial = 1.0;    // (2k)!
    for (int k = 1; k <= 12; ++k) {
      // Advance the recurrence H_{n+1} = 2a H_n - 2n H_{n-1} twice.
      const int n = 2 * k - 1;
      const double h_even = 2.0 * a * h - 2.0 * n * h_prev;
      const double h_odd = 2.0 * a * h_even - 2.0 * (n + 1) * h;
      power *= b * b;
      factorial *= static_cast<double>((2 * k - 1) * (2 * k));
      const double term = h_even * power / ((2 * k + 1) * factorial);
      sum += term;
      h_prev = h_even;
      h = h_odd;
      if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
    }
    return 2.0 / std::sqrt(kPi) * std::exp(-a * a) * sum;
  }
  if (a - b >= 0.0) return 0.5 * (std::erfc(a - b) - std::erfc(a + b));
  if (a + b <= 0.0) return 0.5 * (std::erfc(-a - b) - std::erfc(-a + b));
  return 0.5 * (std::erf(a + b) - std::erf(a - b));
}

}  // namespace

double frequency_from_wavelength(double wavelength) {
  if (!(wavelength > 0.0)) throw DomainError("wavelength must be positive");
  return kSpeedOfLight / wavelength;
}

double wavelength_from_frequency(double frequency) {
  if (!(frequency > 0.0)) throw DomainError("frequency must be positive");
  return kSpeedOfLight / frequency;
}

double angular_frequency(double frequency) { return 2.0 * kPi * frequency; }

std::vector<std::string> ExclusionZoneGeometry::problems() const {
  std::vector<std::string> out;
  require_positive(out, "r_a", r_a);
  require_positive(out, "r_b", r_b);
  require_positive(out, "r_ex", r_ex);
  require_positive(out, "distance", distance);
  if (r_ex < r_b) out.emplace_back("exclusion zone must contain Bob's aperture (r_ex >= r_b)");
  return out;
}

std::vector<std::string> BeamGeometry::problems() const {
  std::vector<std::string> out;
  require_positive(out, "w0", w0);
  require_positive(out, "r_a", r_a);
  require_positive(out, "r_b", r_b);
  require_positive(out, "r_e", r_e);
  require_positive(out, "r_ex", r_ex);
  if (!(distance >= 0.0) || !std::isfinite(distance)) {
    out.emplace_back("distance must be >= 0");
  }
  if (r_ex < r_b) out.emplace_back("exclusion zone must contain Bob's aperture (r_ex >= r_b)");
  const double offset = eve_center_offset();
  const double min_offset = r_ex + r_e;
  if (!(offset >= min_offset * (1.0 - 1e-12))) {
    out.emplace_back("Eve's aperture intrudes into the exclusion zone (eve_offset < r_ex + r_e)");
  }
  return out;
}

double blackbody_ne(double frequency, double temperature) {
  if (!(frequency > 0.0)) throw DomainError("blackbody_ne: frequency must be positive");
  if (!(temperature > 0.0)) throw DomainError("blackbody_ne: temperature must be positive");
  const double x = kPlanck * frequency / (kBoltzmann * temperature);
  if (x > 700.0) return 0.0;
  return 1.0 / std::expm1(x);
}

ChannelPoint farfield_channel(const ExclusionZoneGeometry& geom, double omega) {
  require_valid(geom.problems(), "farfield_channel");
  if (!(omega > 0.0)) throw DomainError("farfield_channel: omega must be positive");

  const double area_a = kPi * geom.r_a * geom.r_a;
  const double area_b = kPi * geom.r_b * geom.r_b;
  const double area_ex = kPi * geom.r_ex * geom.r_ex;
  const double omega0 = 2.0 * kPi * kSpeedOfLight * geom.distance / std::sqrt(area_a * area_b);
  const double omega0_ex = 2.0 * kPi * kSpeedOfLight * geom.distance / std::sqrt(area_a * area_ex);

  const double eta = (omega / omega0) * (omega / omega0);
  const double eta_zone = (omega / omega0_ex) * (omega / omega0_ex);
  if (eta >= 1.0) {
    throw FarFieldViolation("farfield_channel: omega >= omega0 (eta = " + std::to_string(eta) + ")",
                            eta);
  }
  if (eta_zone > 1.0) {
    throw FarFieldViolation(
        "farfield_channel: omega > omega0Ex (eta_AEx = " + std::to_string(eta_zone) + ")",
        eta_zone);
  }
  // Eve holds everything outside the zone: (1 - eta) kappa = 1 - eta_AEx.
  const double kappa = (1.0 - eta_zone) / (1.0 - eta);
  return ChannelPoint{eta, std::clamp(kappa, 0.0, 1.0), 0.0};
}

double beam_waist_at(double w0, double distance, double wavelength) {
  if (!(w0 > 0.0)) throw DomainError("beam_waist_at: w0 must be positive");
  if (!(wavelength > 0.0)) throw DomainError("beam_waist_at: wavelength must be positive");
  if (!(distance >= 0.0)) throw DomainError("beam_waist_at: distance must be >= 0");
  const double z0 = kPi * w0 * w0 / wavelength;
  const double ratio = distance / z0;
  return w0 * std::sqrt(1.0 + ratio * ratio);
}

double p_bob_fraction(const BeamGeometry& geom, double wavelength,
                      const QuadratureOptions& options) {
  require_valid(geom.problems(), "p_bob_fraction");
  const double w = beam_waist_at(geom.w0, geom.distance, wavelength);
  const double r_b = geom.r_b;
  const double norm = std::sqrt(2.0 / kPi) / w;
  // Row y of the disc: Gaussian profile in y times the erf of the chord.
  auto integrand = [=](double y) {
    const double half_chord = std::sqrt(std::max(r_b * r_b - y * y, 0.0));
    return norm * std::exp(-2.0 * y * y / (w * w)) *
           std::erf(std::numbers::sqrt2 * half_chord / w);
  };
  const auto r = integrate_gk15(integrand, -r_b, r_b, options);
  return std::clamp(r.value, 0.0, 1.0);
}

double p_eve_fraction(const BeamGeometry& geom, double wavelength,
                      const QuadratureOptions& options) {
  require_valid(geom.problems(), "p_eve_fraction");
  const double w = beam_waist_at(geom.w0, geom.distance, wavelength);
  const double r_e = geom.r_e;
  const double offset = geom.eve_center_offset();
  const double norm = std::sqrt(2.0 / kPi) / w;
  const double a = std::numbers::sqrt2 * offset / w;
  // Column x of Eve's disc spans y in [offset - B, offset + B].
  auto integrand = [=](double x) {
    const double half_chord = std::sqrt(std::max(r_e * r_e - x * x, 0.0));
    const double b = std::numbers::sqrt2 * half_chord / w;
    return norm * std::exp(-2.0 * x * x / (w * w)) * half_erf_window(a, b);
  };
  const auto r = integrate_gk15(integrand, -r_e, r_e, options);
  return std::clamp(r.value, 0.0, 1.0);
}

ChannelPoint beam_channel(const BeamGeometry& geom, double wavelength,
                          const QuadratureOptions& options) {
  const double eta = p_bob_fraction(geom, wavelength, options);
  const double missed = 1.0 - eta;
  if (missed < 1e-15) {
    throw DegenerateChannel("beam_channel: Bob collects the whole beam; kappa undefined");
  }
  const double eve = p_eve_fraction(geom, wavelength, options);
  return ChannelPoint{eta, std::clamp(eve / missed, 0.0, 1.0), 0.0};
}

}  // namespace skr
