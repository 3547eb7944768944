#include "skr/gaussian.hpp"

#include "skr/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace skr {

namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kPhysicalTol = 1e-9;

// nu^2 of a state with entries ~s is fixed only to ~eps s^2 once those entries
// are rounded (TMSV(1e6) stores nu = 1 +- 4e-4), so the slack grows
// quadratically with the scale.
double physical_tolerance(const GaussianState& state) {
  const double s = state.scale();
  return kPhysicalTol + 4.0 * std::numeric_limits<double>::epsilon() * s * s;
}

Eigen::MatrixXd symplectic_form(std::size_t n_modes) {
  const auto dim = static_cast<Eigen::Index>(2 * n_modes);
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index k = 0; k < dim; k += 2) {
    omega(k, k + 1) = 1.0;
    omega(k + 1, k) = -1.0;
  }
  return omega;
}

void check_mode(const GaussianState& state, std::size_t mode, const char* what) {
  if (mode >= state.n_modes()) {
    throw DomainError(std::string(what) + ": mode index " + std::to_string(mode) +
                      " out of range for " + std::to_string(state.n_modes()) + "-mode state");
  }
}

std::vector<double> raw_spectrum(const Eigen::MatrixXd& cov) {
  const std::size_t n = static_cast<std::size_t>(cov.rows() / 2);
  const Eigen::MatrixXd m = symplectic_form(n) * cov;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw DomainError("symplectic_eigenvalues: eigen-solve failed");
  }
  std::vector<double> magnitudes;
  magnitudes.reserve(2 * n);
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    magnitudes.push_back(std::abs(solver.eigenvalues()[i].imag()));
  }
  std::sort(magnitudes.begin(), magnitudes.end(), std::greater<>());
  // Eigenvalues come in +-i*nu pairs.
  std::vector<double> nu(n);
  for (std::size_t k = 0; k < n; ++k) {
    nu[k] = 0.5 * (magnitudes[2 * k] + magnitudes[2 * k + 1]);
  }
  return nu;
}

}  // namespace

GaussianState::GaussianState(Eigen::MatrixXd cov) : cov_(std::move(cov)) {
  if (cov_.rows() == 0 || cov_.rows() != cov_.cols() || cov_.rows() % 2 != 0) {
    throw DomainError("GaussianState: covariance must be a non-empty 2n x 2n matrix");
  }
  if (!cov_.allFinite()) {
    throw DomainError("GaussianState: covariance has non-finite entries");
  }
  const double scale = std::max(1.0, cov_.cwiseAbs().maxCoeff());
  const double asym = (cov_ - cov_.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTol * scale) {
    throw DomainError("GaussianState: covariance not symmetric (max asymmetry " +
                      std::to_string(asym) + ")");
  }
  cov_ = 0.5 * (cov_ + cov_.transpose()).eval();
  mean_ = Eigen::VectorXd::Zero(cov_.rows());
  scale_ = cov_.cwiseAbs().maxCoeff();
}

GaussianState::GaussianState(Eigen::MatrixXd cov, double scale) : GaussianState(std::move(cov)) {
  scale_ = std::max(scale_, scale);
}

double GaussianState::mean_photon_number(std::size_t mode) const {
  check_mode(*this, mode, "mean_photon_number");
  const auto i = static_cast<Eigen::Index>(2 * mode);
  return (cov_(i, i) + cov_(i + 1, i + 1) - 2.0) / 4.0;
}

bool GaussianState::is_physical() const {
  const double tol = physical_tolerance(*this);
  const auto nu = raw_spectrum(cov_);
  return std::all_of(nu.begin(), nu.end(), [tol](double v) { return v >= 1.0 - tol; });
}

double g_entropy(double x) {
  if (std::isnan(x) || x < -1e-12) {
    throw DomainError("g_entropy: argument " + std::to_string(x) + " is negative");
  }
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return x;
  // log2(x+1) + x log2(1 + 1/x); avoids cancellation between two large terms.
  return std::log2(x + 1.0) + x * std::log1p(1.0 / x) / std::numbers::ln2;
}

GaussianState vacuum_state(std::size_t n_modes) {
  if (n_modes == 0) throw DomainError("vacuum_state: need at least one mode");
  const auto dim = static_cast<Eigen::Index>(2 * n_modes);
  return GaussianState(Eigen::MatrixXd::Identity(dim, dim));
}

GaussianState thermal_state(double n) {
  if (!(n >= 0.0)) throw DomainError("thermal_state: photon number must be >= 0");
  return GaussianState((2.0 * n + 1.0) * Eigen::MatrixXd::Identity(2, 2));
}

GaussianState tmsv_state(double mu) {
  if (!(mu >= 0.0)) throw DomainError("tmsv_state: mean photon number must be >= 0");
  const double v = 2.0 * mu + 1.0;
  const double c = 2.0 * std::sqrt(mu * (mu + 1.0));
  Eigen::MatrixXd cov = v * Eigen::MatrixXd::Identity(4, 4);
  cov(0, 2) = cov(2, 0) = c;
  cov(1, 3) = cov(3, 1) = -c;
  return GaussianState(std::move(cov));
}

GaussianState direct_sum(const GaussianState& a, const GaussianState& b) {
  const auto na = a.cov().rows();
  const auto nb = b.cov().rows();
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(na + nb, na + nb);
  cov.topLeftCorner(na, na) = a.cov();
  cov.bottomRightCorner(nb, nb) = b.cov();
  return GaussianState(std::move(cov));
}

GaussianState beamsplitter(const GaussianState& state, std::size_t mode_a, std::size_t mode_b,
                           double tau) {
  if (!(tau >= 0.0 && tau <= 1.0)) {
    throw DomainError("beamsplitter: transmissivity " + std::to_string(tau) + " outside [0,1]");
  }
  check_mode(state, mode_a, "beamsplitter");
  check_mode(state, mode_b, "beamsplitter");
  if (mode_a == mode_b) throw DomainError("beamsplitter: modes must be distinct");

  const auto dim = state.cov().rows();
  const double t = std::sqrt(tau);
  const double r = std::sqrt(1.0 - tau);
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(dim, dim);
  const auto ia = static_cast<Eigen::Index>(2 * mode_a);
  const auto ib = static_cast<Eigen::Index>(2 * mode_b);
  for (Eigen::Index q = 0; q < 2; ++q) {
    s(ia + q, ia + q) = t;
    s(ia + q, ib + q) = r;
    s(ib + q, ia + q) = -r;
    s(ib + q, ib + q) = t;
  }
  return GaussianState(s * state.cov() * s.transpose(), state.scale());
}

GaussianState partial_state(const GaussianState& state, std::span<const std::size_t> keep) {
  if (keep.empty()) throw DomainError("partial_state: keep set is empty");
  std::vector<Eigen::Index> idx;
  idx.reserve(2 * keep.size());
  for (std::size_t mode : keep) {
    check_mode(state, mode, "partial_state");
    idx.push_back(static_cast<Eigen::Index>(2 * mode));
    idx.push_back(static_cast<Eigen::Index>(2 * mode + 1));
  }
  const auto dim = static_cast<Eigen::Index>(idx.size());
  Eigen::MatrixXd cov(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      cov(i, j) = state.cov()(idx[i], idx[j]);
    }
  }
  return GaussianState(std::move(cov), state.scale());
}

GaussianState partial_state(const GaussianState& state, std::initializer_list<std::size_t> keep) {
  return partial_state(state, std::span<const std::size_t>(keep.begin(), keep.size()));
}

SymplecticSpectrum symplectic_eigenvalues(const GaussianState& state) {
  const double tol = physical_tolerance(state);
  auto nu = raw_spectrum(state.cov());
  for (double& v : nu) {
    if (v < 1.0 - tol) {
      throw DomainError("symplectic_eigenvalues: state is unphysical (nu = " + std::to_string(v) +
                        " < 1)");
    }
    v = std::max(v, 1.0);
  }
  return SymplecticSpectrum{std::move(nu)};
}

double von_neumann_entropy(const GaussianState& state) {
  double s = 0.0;
  for (double nu : symplectic_eigenvalues(state).eigenvalues) {
    s += g_entropy((nu - 1.0) / 2.0);
  }
  return s;
}

GaussianState heterodyne_condition(const GaussianState& state, std::size_t measured) {
  if (state.n_modes() < 2) {
    throw DomainError("heterodyne_condition: need at least two modes");
  }
  check_mode(state, measured, "heterodyne_condition");

  std::vector<Eigen::Index> rest;
  for (std::size_t m = 0; m < state.n_modes(); ++m) {
    if (m == measured) continue;
    rest.push_back(static_cast<Eigen::Index>(2 * m));
    rest.push_back(static_cast<Eigen::Index>(2 * m + 1));
  }
  const auto na = static_cast<Eigen::Index>(rest.size());
  const auto ib = static_cast<Eigen::Index>(2 * measured);
  const Eigen::MatrixXd& cov = state.cov();

  Eigen::MatrixXd sigma_a(na, na);
  Eigen::MatrixXd sigma_ab(na, 2);
  for (Eigen::Index i = 0; i < na; ++i) {
    for (Eigen::Index j = 0; j < na; ++j) sigma_a(i, j) = cov(rest[i], rest[j]);
    sigma_ab(i, 0) = cov(rest[i], ib);
    sigma_ab(i, 1) = cov(rest[i], ib + 1);
  }
  const Eigen::Matrix2d shifted =
      cov.block<2, 2>(ib, ib) + Eigen::Matrix2d::Identity();
  const double det = shifted.determinant();
  if (!(std::abs(det) >= 1e-300)) {
    throw ConditioningError("heterodyne_condition: singular measured block");
  }
  Eigen::MatrixXd conditioned = sigma_a - sigma_ab * shifted.inverse() * sigma_ab.transpose();
  conditioned = 0.5 * (conditioned + conditioned.transpose()).eval();
  return GaussianState(std::move(conditioned), state.scale());
}

}  // namespace skr
