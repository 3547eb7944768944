#pragma once

#include <functional>

namespace skr {

struct QuadratureOptions {
  double abs_tol = 1e-10;
  // Also required, so that integrals far out in a Gaussian tail (values well
  // below abs_tol) still come back with full relative accuracy.
  double rel_tol = 1e-10;
  int max_depth = 60;
  int max_intervals = 4000;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
};

// Globally adaptive 7/15-point Gauss-Kronrod integration of f over [a, b].
// The interval with the largest |K15 - G7| is bisected until the summed error
// estimate is <= abs_tol and <= rel_tol * |value|. Throws NumericalError
// (carrying the achieved estimate) when an interval would exceed max_depth
// bisections or max_intervals is reached first.
QuadratureResult integrate_gk15(const std::function<double(double)>& f, double a, double b,
                                const QuadratureOptions& options = {});

}  // namespace skr
