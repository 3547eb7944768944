#include "skr/optimize.hpp"

#include "skr/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace skr {

namespace {

// Below this the mu -> inf limit of the noiseless bounds is used as-is.
constexpr double kNoiselessCutoff = 1e-12;
constexpr double kEdgeSlack = 1e-9;

double asymptotic_scheme_rate(const ChannelPoint& channel, Scheme scheme) {
  const auto r = asymptotic_rates(channel);
  switch (scheme) {
    case Scheme::direct:
      return r.direct;
    case Scheme::reverse:
      return r.reverse;
    default:
      return std::max({0.0, r.direct, r.reverse});
  }
}

bool may_be_unbounded(const RateParams& params) {
  const auto& c = params.channel;
  return params.beta >= 1.0 - 1e-12 && c.n_e <= kNoiselessCutoff && c.eta > 0.0 && c.eta < 1.0;
}

}  // namespace

std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::direct:
      return "direct";
    case Scheme::reverse:
      return "reverse";
    case Scheme::best:
      return "best";
    case Scheme::upper:
      return "upper";
  }
  return "?";
}

std::optional<Scheme> parse_scheme(std::string_view s) {
  if (s == "direct") return Scheme::direct;
  if (s == "reverse") return Scheme::reverse;
  if (s == "best") return Scheme::best;
  if (s == "upper") return Scheme::upper;
  return std::nullopt;
}

double scheme_rate(const RateParams& params, Scheme scheme) {
  switch (scheme) {
    case Scheme::direct:
      return lb_direct(params);
    case Scheme::reverse:
      return lb_reverse(params);
    case Scheme::best:
      return rate_point(params).lb_best;
    case Scheme::upper:
      break;
  }
  throw DomainError("optimize_mu: the upper bound does not depend on mu");
}

OptimumReport optimize_mu(const RateParams& params, Scheme scheme, const MuScan& scan) {
  if (scheme == Scheme::upper) {
    throw DomainError("optimize_mu: the upper bound does not depend on mu");
  }
  if (!(scan.mu_min > 0.0 && scan.mu_max > scan.mu_min) || scan.points_per_decade < 1 ||
      !(scan.rel_tol > 0.0)) {
    throw DomainError("optimize_mu: invalid scan range");
  }

  auto rate_at = [&](double mu) {
    RateParams p = params;
    p.mu = mu;
    return scheme_rate(p, scheme);
  };

  const double log_lo = std::log10(scan.mu_min);
  const double log_hi = std::log10(scan.mu_max);
  const auto intervals = static_cast<std::size_t>(
      std::max(1.0, std::ceil((log_hi - log_lo) * scan.points_per_decade - 1e-9)));
  std::vector<double> mus(intervals + 1);
  std::vector<double> rates(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i) {
    const double t = log_lo + (log_hi - log_lo) * static_cast<double>(i) /
                                  static_cast<double>(intervals);
    mus[i] = i == intervals ? scan.mu_max : std::pow(10.0, t);
    rates[i] = rate_at(mus[i]);
  }

  const std::size_t last = intervals;
  const auto best_it = std::max_element(rates.begin(), rates.end());
  const auto k = static_cast<std::size_t>(best_it - rates.begin());
  const double best_scanned = *best_it;

  if (k == last && may_be_unbounded(params)) {
    const std::size_t decade_back =
        last >= static_cast<std::size_t>(scan.points_per_decade)
            ? last - static_cast<std::size_t>(scan.points_per_decade)
            : 0;
    const bool strict_edge =
        std::all_of(rates.begin(), rates.end() - 1, [&](double r) { return r < rates[last]; });
    const bool rising = rates[last] > rates[decade_back];
    if (strict_edge && rising) {
      const double limit = asymptotic_scheme_rate(params.channel, scheme);
      if (!std::isnan(limit) && limit > rates[last] - kEdgeSlack) {
        return {std::numeric_limits<double>::infinity(), limit, true};
      }
    }
  }

  if (!(best_scanned > 0.0)) return {0.0, 0.0, false};

  // Golden-section maximization on log(mu) inside the bracketing cells.
  double a = std::log(mus[k == 0 ? 0 : k - 1]);
  double b = std::log(mus[std::min(k + 1, last)]);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  const double stop = std::log1p(scan.rel_tol);
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = rate_at(std::exp(c));
  double fd = rate_at(std::exp(d));
  while (b - a > stop) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = rate_at(std::exp(c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = rate_at(std::exp(d));
    }
  }
  const double mu_refined = std::exp(0.5 * (a + b));
  const double refined = rate_at(mu_refined);

  // No unimodality guarantee: fall back to the scan when refinement loses.
  if (refined >= best_scanned) return {mu_refined, refined, false};
  return {mus[k], best_scanned, false};
}

}  // namespace skr
