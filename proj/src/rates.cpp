#include "skr/rates.hpp"

#include "skr/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace skr {

namespace {

void validate(const RateParams& p) {
  if (!(p.mu >= 0.0) || !std::isfinite(p.mu)) {
    throw DomainError("rate: mu must be finite and >= 0");
  }
  if (!(p.beta > 0.0 && p.beta <= 1.0)) {
    throw DomainError("rate: beta must lie in (0, 1]");
  }
  const auto& c = p.channel;
  if (!(c.eta >= 0.0 && c.eta <= 1.0)) throw DomainError("rate: eta must lie in [0, 1]");
  if (!(c.kappa >= 0.0 && c.kappa <= 1.0)) throw DomainError("rate: kappa must lie in [0, 1]");
  if (!(c.n_e >= 0.0) || !std::isfinite(c.n_e)) throw DomainError("rate: n_e must be >= 0");
}

// Eve's entropy terms, shared between the two schemes.
struct EveEntropies {
  double unconditioned = 0.0;   // S(E)
  double given_alice = 0.0;     // S(E|a)
  double given_bob = 0.0;       // S(E|y)
};

EveEntropies eve_entropies(const RateParams& p, bool need_alice, bool need_bob) {
  const GaussianState state = wiretap_state(p.mu, p.channel);
  EveEntropies out;
  out.unconditioned = von_neumann_entropy(partial_state(state, {WiretapModes::eve}));
  if (need_alice) {
    if (p.eve_noise_model == EveNoiseModel::printed) {
      out.given_alice = g_entropy(p.channel.n_e * (1.0 - p.channel.eta * p.channel.kappa));
    } else {
      const auto joint = partial_state(state, {WiretapModes::alice, WiretapModes::eve});
      out.given_alice = von_neumann_entropy(heterodyne_condition(joint, 0));
    }
  }
  if (need_bob) {
    const auto joint = partial_state(state, {WiretapModes::bob, WiretapModes::eve});
    out.given_bob = von_neumann_entropy(heterodyne_condition(joint, 0));
  }
  return out;
}

// beta * I(a:B) for heterodyne on Alice's side.
double direct_mutual_information(const RateParams& p) {
  const auto& c = p.channel;
  const double noise = c.n_e * (1.0 - c.eta);
  return p.beta * (g_entropy(noise + c.eta * p.mu) - g_entropy(noise));
}

// beta * I(A:y): conditional photon number of Alice's mode after Bob's
// heterodyne, mu - eta mu (1 + mu) / (1 + n_e - n_e eta + eta mu).
double reverse_mutual_information(const RateParams& p) {
  const auto& c = p.channel;
  const double mu = p.mu;
  const double conditional =
      mu - c.eta * mu * (1.0 + mu) / (1.0 + c.n_e - c.n_e * c.eta + c.eta * mu);
  return p.beta * (g_entropy(mu) - g_entropy(std::max(conditional, 0.0)));
}

}  // namespace

std::string_view to_string(EveNoiseModel m) {
  return m == EveNoiseModel::printed ? "printed" : "consistent";
}

std::optional<EveNoiseModel> parse_eve_noise_model(std::string_view s) {
  if (s == "consistent") return EveNoiseModel::consistent;
  if (s == "printed") return EveNoiseModel::printed;
  return std::nullopt;
}

GaussianState wiretap_state(double mu, const ChannelPoint& channel) {
  RateParams check{mu, 1.0, channel, EveNoiseModel::consistent};
  validate(check);

  // Working order: A, S (signal), T (thermal), F (purifier of T), V (vacuum).
  GaussianState state = direct_sum(direct_sum(tmsv_state(mu), tmsv_state(channel.n_e)),
                                   vacuum_state(1));
  state = beamsplitter(state, 1, 2, channel.eta);    // S -> Bob, T -> lost light
  state = beamsplitter(state, 2, 4, channel.kappa);  // lost -> Eve, V -> residual
  constexpr std::array<std::size_t, 5> order = {0, 1, 2, 4, 3};
  return partial_state(state, order);
}

double lb_direct(const RateParams& params) {
  validate(params);
  const auto eve = eve_entropies(params, true, false);
  return direct_mutual_information(params) - (eve.unconditioned - eve.given_alice);
}

double lb_reverse(const RateParams& params) {
  validate(params);
  const auto eve = eve_entropies(params, false, true);
  return reverse_mutual_information(params) - (eve.unconditioned - eve.given_bob);
}

AsymptoticRates asymptotic_rates(const ChannelPoint& channel) {
  const double eta = channel.eta;
  const double kappa = channel.kappa;
  if (!(eta > 0.0 && eta < 1.0)) {
    throw DomainError("lb_asymptotic: eta must lie strictly inside (0, 1)");
  }
  if (!(kappa >= 0.0 && kappa <= 1.0)) {
    throw DomainError("lb_asymptotic: kappa must lie in [0, 1]");
  }
  const double eve_share = kappa * (1.0 - eta);
  if (eve_share == 0.0) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    return {inf, inf};
  }
  const double loss_ratio = (1.0 - eta) / eta;
  AsymptoticRates r;
  r.direct = std::log2(eta / eve_share);
  r.reverse = -std::log2(eve_share) - (g_entropy(loss_ratio) - g_entropy(kappa * loss_ratio));
  return r;
}

double lb_asymptotic(const ChannelPoint& channel, Reconciliation scheme) {
  const auto r = asymptotic_rates(channel);
  return scheme == Reconciliation::direct ? std::max(r.direct, 0.0) : r.reverse;
}

double upper_bound(const ChannelPoint& channel) {
  const double eve_share = channel.kappa * (1.0 - channel.eta);
  if (!(eve_share >= 0.0)) throw DomainError("upper_bound: kappa (1 - eta) must be >= 0");
  if (eve_share >= 1.0) throw DomainError("upper_bound: kappa (1 - eta) must be < 1");
  if (eve_share == 0.0) return std::numeric_limits<double>::infinity();
  return -std::log2(eve_share);
}

std::optional<double> reported_upper_bound(const ChannelPoint& channel) {
  const double eve_share = channel.kappa * (1.0 - channel.eta);
  if (channel.n_e > kUpperBoundNoiseCutoff || !(eve_share < 1.0)) return std::nullopt;
  return upper_bound(channel);
}

RateResult rate_point(const RateParams& params) {
  validate(params);
  const auto eve = eve_entropies(params, true, true);
  RateResult r;
  r.lb_direct = direct_mutual_information(params) - (eve.unconditioned - eve.given_alice);
  r.lb_reverse = reverse_mutual_information(params) - (eve.unconditioned - eve.given_bob);
  r.lb_best = std::max({0.0, r.lb_direct, r.lb_reverse});

  r.ub = reported_upper_bound(params.channel);
  r.diverged = r.ub && std::isinf(*r.ub);
  return r;
}

}  // namespace skr
