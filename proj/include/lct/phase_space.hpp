#pragma once

// Wigner-type phase-space distributions on (x, xi) grids: the standard
// Wigner and cross-Wigner functions, the theta-Wigner distribution of a pair
// of symplectic matrices, marginals, moments, symplectic Radon line
// integrals and linear perturbations.

#include <optional>

#include "lct/signal.hpp"
#include "lct/symplectic.hpp"
#include "lct/transform.hpp"

namespace lct {

/// Identifies the symplectic form a distribution is attached to. An empty
/// omega means the standard form.
struct FormTag {
  Eigen::MatrixXd omega;

  bool standard() const { return omega.size() == 0; }
  static FormTag nonstandard(Eigen::MatrixXd om) { return {std::move(om)}; }
};

/// values(i, k) is the value at (x.at(i), xi.at(k)).
struct PhaseSpaceDistribution {
  Grid1D x;
  Grid1D xi;
  Eigen::MatrixXd values;
  FormTag form;

  double at(Index i, Index k) const { return values(i, k); }
  /// Bilinear interpolation; zero outside the table.
  double interpolate(double xv, double xiv) const;
  double max_abs() const { return values.cwiseAbs().maxCoeff(); }
};

struct ComplexDistribution {
  Grid1D x;
  Grid1D xi;
  Eigen::MatrixXcd values;
};

/// Real function sampled on a uniform grid (marginals, Radon projections).
struct Profile {
  Grid1D grid;
  Eigen::VectorXd values;
};

struct WignerOptions {
  /// Table refinement r: x spacing dx / r and xi spacing 1 / (r N dx). The xi
  /// range stays [-1/(2 dx), 1/(2 dx)).
  int refine = 1;
  /// Relative bound on the imaginary residual of the auto-Wigner transform.
  double realness_tol = 1e-8;
};

/// W f(x, xi) = int f(x + y/2) conj(f(x - y/2)) exp(-2 pi i xi y) dy.
/// Half-sample values come from band-limited interpolation. Throws
/// ImaginaryResidual when the transform is not real to `realness_tol`.
PhaseSpaceDistribution wigner(const SampledSignal& f, const WignerOptions& opt = {});

/// W(f, g). Throws GridMismatch.
ComplexDistribution cross_wigner(const SampledSignal& f, const SampledSignal& g, const WignerOptions& opt = {});

/// Relative L2 residual between W(L_S f) and W f o S^{-1}, both on the grid of
/// W f (the transform is evaluated on f's own grid).
double metaplectic_covariance_check(const SampledSignal& f, const Free& s, const WignerOptions& opt = {});

struct WThetaOptions {
  WignerOptions wigner;
  std::optional<Grid1D> x_grid;   // defaults to the W_sigma grid
  std::optional<Grid1D> xi_grid;
};

/// W_theta f(z) = |det D|^{-1} W f(D^{-1} z), D the coupling matrix of
/// (S1, S2). Throws SingularCoupling.
PhaseSpaceDistribution wtheta(const SampledSignal& f, const Symplectic& s1, const Symplectic& s2,
                              const WThetaOptions& opt = {});
/// Same, reusing a precomputed standard Wigner table.
PhaseSpaceDistribution wtheta(const PhaseSpaceDistribution& w_sigma, const Symplectic& s1, const Symplectic& s2,
                              const WThetaOptions& opt = {});

enum class Axis { X, Xi };

/// Axis::X integrates over xi and returns a function of x; Axis::Xi
/// integrates over x. Trapezoid rule.
Profile marginal(const PhaseSpaceDistribution& w, Axis keep);

/// int int x^p xi^q W dx dxi, p + q <= 4. Throws MomentOrderTooHigh.
double moment(const PhaseSpaceDistribution& w, int p, int q);

/// Line data for x = a x' + b xi' in the 1D case.
struct RadonLineSpec {
  double a;
  double b;
};

/// R(s) = int int delta(s - a x' - b xi') W f(x', xi') dx' dxi' on the grid
/// `offsets`, by exact line parameterization with linear interpolation.
/// Throws DegenerateLine when a = b = 0.
Profile radon_marginal(const PhaseSpaceDistribution& w_sigma, const RadonLineSpec& line, const Grid1D& offsets);
Profile radon_marginal(const SampledSignal& f, const RadonLineSpec& line, const Grid1D& offsets,
                       const WignerOptions& opt = {});

/// B_A f(x, xi) = int f(A11 x - A22 y) conj(f(A11 x + A22 y)) exp(-2 pi i xi y) dy,
/// on the grid x_j / A11 and xi spacing 2|A22| / (N dx). Direct quadrature path.
PhaseSpaceDistribution linear_perturbation(const SampledSignal& f, double a11, double a22);
/// Same grid, via (2|A22|)^{-1} W f(A11 x, -xi / (2 A22)).
PhaseSpaceDistribution linear_perturbation_via_wigner(const SampledSignal& f, double a11, double a22);

struct CohenProbe {
  double r_sigma;  // max |W_theta(T(z0) f) - W_theta f(. - z0)|
  double r_d;      // max |W_theta(T(z0) f) - W_theta f(. - D z0)|
  double max_w;    // max |W_theta f|
  bool resampled;  // the translation was not grid-aligned
};

/// Both residuals on the W_sigma grid of f.
CohenProbe cohen_translation_probe(const SampledSignal& f, const Symplectic& s1, const Symplectic& s2,
                                   const Eigen::Vector2d& z0, const WignerOptions& opt = {});

/// L1 distance int |p - q| on p's grid; q is linearly interpolated.
double l1_distance(const Profile& p, const Profile& q);

/// |g|^2 as a profile.
Profile intensity(const SampledSignal& g);

}  // namespace lct
