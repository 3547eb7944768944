#pragma once

// Gaussian-state primitives in shot-noise units: vacuum quadrature variance
// is 1 and a thermal mode with n photons has variance 2n+1. Quadratures are
// ordered x1, p1, x2, p2, ...

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <vector>

namespace skr {

class GaussianState {
 public:
  // Throws DomainError if cov is not square of even size or not symmetric
  // within 1e-12 relative tolerance. The matrix is symmetrized on entry.
  explicit GaussianState(Eigen::MatrixXd cov);
  // For states derived from a larger parent: roundoff in cov is relative to
  // `scale` (the parent's largest entry), which widens the physicality
  // tolerance accordingly.
  GaussianState(Eigen::MatrixXd cov, double scale);

  std::size_t n_modes() const noexcept { return static_cast<std::size_t>(cov_.rows() / 2); }
  const Eigen::MatrixXd& cov() const noexcept { return cov_; }
  // Always zero; every quantity used here is covariance-determined.
  const Eigen::VectorXd& mean() const noexcept { return mean_; }

  // Mean photon number of one mode, (V_xx + V_pp - 2) / 4.
  double mean_photon_number(std::size_t mode) const;

  // True if every symplectic eigenvalue is >= 1 within tolerance.
  bool is_physical() const;

  // Largest magnitude the covariance was computed from.
  double scale() const noexcept { return scale_; }

 private:
  Eigen::MatrixXd cov_;
  Eigen::VectorXd mean_;
  double scale_ = 0.0;
};

struct SymplecticSpectrum {
  std::vector<double> eigenvalues;  // descending, each >= 1
};

// Bosonic thermal entropy g(x) = (x+1)log2(x+1) - x log2(x), in bits.
double g_entropy(double x);

GaussianState vacuum_state(std::size_t n_modes);
GaussianState thermal_state(double n);
GaussianState tmsv_state(double mu);

// Block-diagonal composition a (+) b; a's modes come first.
GaussianState direct_sum(const GaussianState& a, const GaussianState& b);

// Mixes modes a and b at transmissivity tau; a carries the transmitted port of
// its own input, b the reflected one.
GaussianState beamsplitter(const GaussianState& state, std::size_t mode_a, std::size_t mode_b,
                           double tau);

// Sub-covariance on the kept modes, in the order given.
GaussianState partial_state(const GaussianState& state, std::span<const std::size_t> keep);
GaussianState partial_state(const GaussianState& state, std::initializer_list<std::size_t> keep);

SymplecticSpectrum symplectic_eigenvalues(const GaussianState& state);

double von_neumann_entropy(const GaussianState& state);

// Covariance of the unmeasured modes after heterodyning `measured`:
// sigma_A - sigma_AB (sigma_B + I)^-1 sigma_BA.
GaussianState heterodyne_condition(const GaussianState& state, std::size_t measured);

}  // namespace skr
