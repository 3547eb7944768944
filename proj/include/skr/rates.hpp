#pragma once

#include "skr/channel.hpp"
#include "skr/gaussian.hpp"

#include <optional>
#include <string_view>

namespace skr {

enum class Reconciliation { direct, reverse };

// How S(E|a) is evaluated in the direct bound when n_e > 0.
//   consistent: heterodyne-conditioned entropy of Eve's mode in the explicit
//               wiretap state.
//   printed:    the closed-form term g(n_e (1 - eta kappa)).
// Both agree exactly at n_e = 0.
enum class EveNoiseModel { consistent, printed };

std::string_view to_string(EveNoiseModel m);
std::optional<EveNoiseModel> parse_eve_noise_model(std::string_view s);

struct RateParams {
  double mu = 0.0;
  double beta = 1.0;
  ChannelPoint channel;
  EveNoiseModel eve_noise_model = EveNoiseModel::consistent;
};

struct RateResult {
  double lb_direct = 0.0;   // raw, may be negative
  double lb_reverse = 0.0;  // raw, may be negative
  double lb_best = 0.0;     // max(0, lb_direct, lb_reverse)
  std::optional<double> ub;
  bool diverged = false;    // ub is +inf
};

// Mode layout of wiretap_state().
struct WiretapModes {
  static constexpr std::size_t alice = 0;
  static constexpr std::size_t bob = 1;
  static constexpr std::size_t eve = 2;
  static constexpr std::size_t residual = 3;
  static constexpr std::size_t purifier = 4;
};

// Pure 5-mode state: TMSV(mu) between Alice's kept mode and the signal; the
// signal meets a thermal(n_e) mode (purified by `purifier`) at transmissivity
// eta; the lost port meets vacuum at transmissivity kappa, the transmitted
// part going to Eve and the rest to `residual`.
GaussianState wiretap_state(double mu, const ChannelPoint& channel);

double lb_direct(const RateParams& params);
double lb_reverse(const RateParams& params);

struct AsymptoticRates {
  double direct = 0.0;  // log2(eta / (kappa (1 - eta))), unclamped
  double reverse = 0.0;
};

// mu -> inf, n_e -> 0, beta = 1 limits of both bounds. n_e is ignored.
// kappa = 0 yields +inf. Throws DomainError unless 0 < eta < 1.
AsymptoticRates asymptotic_rates(const ChannelPoint& channel);

// As above, with the direct limit clamped at 0.
double lb_asymptotic(const ChannelPoint& channel, Reconciliation scheme);

// Pure-loss surrogate -log2(kappa (1 - eta)); +inf when kappa (1 - eta) == 0.
// Throws DomainError when kappa (1 - eta) >= 1.
double upper_bound(const ChannelPoint& channel);

// Thermal photon number below which the surrogate upper bound is reported.
inline constexpr double kUpperBoundNoiseCutoff = 1e-12;

// upper_bound() when n_e <= kUpperBoundNoiseCutoff and kappa (1 - eta) < 1,
// otherwise empty: the surrogate is a pure-loss expression.
std::optional<double> reported_upper_bound(const ChannelPoint& channel);

RateResult rate_point(const RateParams& params);

}  // namespace skr
