#pragma once

#include "skr/rates.hpp"

#include <optional>
#include <string_view>

namespace skr {

// Curves a sweep can report. `best` is max(0, direct, reverse); `upper` is
// the surrogate upper bound.
enum class Scheme { direct, reverse, best, upper };

std::string_view to_string(Scheme s);
std::optional<Scheme> parse_scheme(std::string_view s);

// Logarithmic scan range and golden-section stopping rule for optimize_mu.
struct MuScan {
  double mu_min = 1e-4;
  double mu_max = 1e7;
  int points_per_decade = 10;
  double rel_tol = 1e-6;

  bool operator==(const MuScan&) const = default;
};

struct OptimumReport {
  double mu_star = 0.0;       // +inf when unbounded
  double rate_at_star = 0.0;  // lb_asymptotic when unbounded
  bool unbounded = false;
};

// Rate of one lower-bound scheme at params.mu. `upper` is rejected.
double scheme_rate(const RateParams& params, Scheme scheme);

// Maximizes the scheme's rate over mu. params.mu is ignored.
//
// A coarse log scan brackets the maximum, golden-section search on log(mu)
// refines it, and the refined point is kept only if it beats the best scanned
// point. The optimum is declared unbounded when the scan's top edge is its
// strict maximum, the last decade has positive slope, beta == 1, n_e is
// negligible and the mu -> inf limit is not below the edge value.
OptimumReport optimize_mu(const RateParams& params, Scheme scheme, const MuScan& scan = {});

}  // namespace skr
