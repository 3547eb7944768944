#include "skr/quadrature.hpp"

#include "skr/errors.hpp"

#include <array>
#include <cmath>
#include <queue>
#include <vector>

namespace skr {

namespace {

// Kronrod nodes on [0, 1]; odd indices (1, 3, 5) are the Gauss-7 nodes
// together with the centre.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  int depth;
};

struct ByError {
  bool operator()(const Segment& x, const Segment& y) const { return x.error < y.error; }
};

Segment evaluate(const std::function<double(double)>& f, double a, double b, int depth) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(centre);
  double kronrod = kKronrodWeights[7] * fc;
  double gauss = kGaussWeights[3] * fc;
  for (std::size_t i = 0; i < 7; ++i) {
    const double dx = half * kNodes[i];
    const double sum = f(centre - dx) + f(centre + dx);
    kronrod += kKronrodWeights[i] * sum;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * sum;
  }
  kronrod *= half;
  gauss *= half;
  return Segment{a, b, kronrod, std::abs(kronrod - gauss), depth};
}

}  // namespace

QuadratureResult integrate_gk15(const std::function<double(double)>& f, double a, double b,
                                const QuadratureOptions& options) {
  if (a == b) return {};
  if (a > b) {
    auto r = integrate_gk15(f, b, a, options);
    r.value = -r.value;
    return r;
  }

  std::priority_queue<Segment, std::vector<Segment>, ByError> queue;
  Segment first = evaluate(f, a, b, 0);
  double total = first.value;
  double error = first.error;
  queue.push(first);

  auto converged = [&] {
    return error <= options.abs_tol && error <= options.rel_tol * std::abs(total);
  };

  while (!converged()) {
    if (static_cast<int>(queue.size()) >= options.max_intervals) {
      throw NumericalError("integrate_gk15: interval limit reached", total, error);
    }
    Segment worst = queue.top();
    if (worst.depth >= options.max_depth) {
      throw NumericalError("integrate_gk15: depth limit reached", total, error);
    }
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Segment left = evaluate(f, worst.a, mid, worst.depth + 1);
    Segment right = evaluate(f, mid, worst.b, worst.depth + 1);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
  }

  // Re-sum to shed the drift of the running updates.
  QuadratureResult result;
  result.intervals = static_cast<int>(queue.size());
  while (!queue.empty()) {
    result.value += queue.top().value;
    result.error += queue.top().error;
    queue.pop();
  }
  return result;
}

}  // namespace skr
