#pragma once

// Spreads, covariance matrices and numerical checks of the uncertainty
// principles attached to linear canonical transforms: Heisenberg, the
// Robertson-Schroedinger matrix inequality, Hardy (1D and nD) and
// Paley-Wiener.

#include <optional>
#include <vector>

#include "lct/phase_space.hpp"
#include "lct/signal.hpp"
#include "lct/symplectic.hpp"
#include "lct/transform.hpp"

namespace lct {

struct SpreadReport {
  Eigen::VectorXd mean;  // <xi> = int xi |g|^2 / ||f||^2
  double spread;         // int |xi - <xi>|^2 |g|^2
  double norm_sq;        // ||f||^2
};

/// Position spread of f itself. Throws HeavyTails when |f|^2 at the window
/// edge exceeds 1e-10 of its peak.
SpreadReport spread(const SampledSignal& f);
/// Spread of g = L_S f on its native grid (g = f when S is the identity).
SpreadReport spread(const SampledSignal& f, const Symplectic& s, const LctOptions& opt = {});
SpreadReport spread(const SignalND& f);
SpreadReport spread(const SignalND& f, const Symplectic& s, const LctOptions& opt = {});

/// Applies S to f: identity, free LCT on the native grid, or the dilation path.
SampledSignal apply_symplectic(const SampledSignal& f, const Symplectic& s, const LctOptions& opt = {});

struct InequalityReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // lhs - rhs

  /// slack >= -tol * rhs
  bool holds(double tol) const { return slack >= -tol * rhs; }
};

/// 1D: int (x - a)^2 |S1 f|^2 * int (xi - b)^2 |S2 f|^2 against
/// ||f||^4 / (16 pi^2) |(S1 J S2^T)_11|^2. The centers default to the means.
InequalityReport heisenberg_check(const SampledSignal& f, const Symplectic& s1, const Symplectic& s2,
                                  std::optional<double> a = {}, std::optional<double> b = {},
                                  const LctOptions& opt = {});

struct HeisenbergNDReport : InequalityReport {
  /// Trace-form comparison, only when S1 is the identity:
  /// Tr[B^{-1} Cov_xi B^{-T}] * || |x| f ||^2 against n^2 ||f||^4 / (16 pi^2).
  std::optional<InequalityReport> trace_form;
};

/// Delta_{S1} x * Delta_{S2} xi against ||f||^2 / (4 pi) sum_j |(S1 J S2^T)_jj|
/// for separable signals and matrices with diagonal blocks.
HeisenbergNDReport heisenberg_nd(const SignalND& f, const Symplectic& s1, const Symplectic& s2,
                                 const LctOptions& opt = {});

struct CovarianceOptions {
  /// Normalize and re-center (by a Heisenberg-Weyl shift) instead of throwing.
  bool auto_fix = true;
  double norm_tol = 1e-6;
  double mean_tol = 1e-6;
  WignerOptions wigner;
  /// Refinement of the W_theta table used for the moment cross-check.
  int wtheta_refine = 4;
};

/// Sigma_ab = int z_a z_b W f(z) dz for normalized, centered f.
/// Throws NotNormalized or MeanNotCentered when auto_fix is off, and
/// HeavyTails when either marginal has not decayed at the window edge.
Eigen::Matrix2d covariance_sigma(const SampledSignal& f, const CovarianceOptions& opt = {});

struct CovarianceReport {
  Eigen::Matrix2d sigma;
  Eigen::Matrix2d upsilon;        // D Sigma D^T
  FormNS omega;                   // D J D^T
  double min_eig = 0.0;           // of the Hermitian Upsilon + (i / 4 pi) Omega
  InequalityReport scalar;        // Ups11 Ups22 >= Ups12^2 + det(D)^2 / (16 pi^2)
  Eigen::Matrix2d upsilon_wtheta; // second moments of the W_theta table
  double wtheta_discrepancy = 0.0;

  /// min_eig >= -tol * (1 + max|Upsilon|)
  bool psd(double tol = 1e-8) const;
};

/// Smallest eigenvalue of the Hermitian matrix U + (i / 4 pi) Omega.
double rs_min_eig(const Eigen::MatrixXd& upsilon, const Eigen::MatrixXd& omega);

/// Robertson-Schroedinger check for the pair (S1, S2). Throws SingularCoupling.
CovarianceReport rs_check(const SampledSignal& f, const Symplectic& s1, const Symplectic& s2,
                          const CovarianceOptions& opt = {});
/// Several pairs sharing one covariance and one refined Wigner table.
std::vector<CovarianceReport> rs_check(const SampledSignal& f,
                                       const std::vector<std::pair<Symplectic, Symplectic>>& pairs,
                                       const CovarianceOptions& opt = {});

/// Whether P Upsilon P^T + (i / 4 pi) Omega keeps the semidefiniteness of the
/// report. Throws NotInSpTheta unless P Omega P^T = Omega.
bool rs_invariance_probe(const CovarianceReport& report, const Eigen::MatrixXd& p, double tol = 1e-8);

/// Critical Gaussian of the pair, as a description of the S1-transformed
/// signal: alpha = pi / |a1 b2 - a2 b1|, chirp (a2 d1 - b2 c1) / (a1 b2 - a2 b1).
/// Throws DegeneratePair.
GaussianSpec saturating_gaussian(const Symplectic& s1, const Symplectic& s2);
/// The signal f itself: the inverse metaplectic image of the Gaussian above,
/// sampled in closed form on `grid`.
SampledSignal saturating_signal(const Symplectic& s1, const Symplectic& s2, const Grid1D& grid);

enum class HardyKind { Subcritical, Critical, Supercritical };
const char* to_string(HardyKind k);

struct HardyClassification {
  HardyKind kind = HardyKind::Subcritical;
  double alpha = 0.0;
  double beta = 0.0;
  double threshold = 0.0;  // pi^2 / b^2
  double ratio = 0.0;      // alpha beta / threshold
  double r2_alpha = 1.0;   // regression quality of the fits (1 at parameter level)
  double r2_beta = 1.0;
  std::optional<GaussianSpec> critical_gaussian;
};

/// Compares alpha beta with pi^2 / b^2 within a relative band.
/// Throws BadParameter for non-positive rates.
HardyClassification hardy_classify_params(double alpha, double beta, const Free& s, double band = 1e-6);

struct HardyFitOptions {
  double floor = 1e-12;       // relative noise floor
  double window_lo = 0.2;     // fraction of the log dynamic range
  double window_hi = 0.8;
  double min_r2 = 0.99;
  double critical_band = 1e-2;
  Index min_samples = 32;
  LctOptions lct;
};

/// Fits Gaussian envelope rates of |f| and |L_S f| and classifies them.
/// Throws InsufficientDecay when either fit is poor.
HardyClassification hardy_fit(const SampledSignal& f, const Free& s, const HardyFitOptions& opt = {});

/// Envelope rate of |f| by least squares of -log|f| on a quadratic in x.
struct EnvelopeFit {
  double rate;
  double r2;
  Index samples;
};
EnvelopeFit fit_gaussian_envelope(const SampledSignal& f, const HardyFitOptions& opt = {});

struct HardyNDResult {
  Eigen::VectorXd eigenvalues;  // of M B^T N B, ascending
  HardyKind kind;
  Eigen::MatrixXd l;            // L^T M L = L^{-1} B^T N B L^{-T} = Lambda
  Eigen::VectorXd lambda;       // diagonal of Lambda (square roots of the eigenvalues)
  std::optional<GaussianSpec> critical_gaussian;
};

/// Eigenvalue criterion through the symmetric similarity
/// M^{1/2} B^T N B M^{1/2}. Throws NotSPD.
HardyNDResult hardy_nd_eigs(const Eigen::MatrixXd& m, const Eigen::MatrixXd& n, const Free& s, double band = 1e-6);

/// L with L^T M L = L^{-1} N L^{-T} = diag(sqrt(eig(M N))). Throws NotSPD.
Eigen::MatrixXd hardy_balancing(const Eigen::MatrixXd& m, const Eigen::MatrixXd& n, Eigen::VectorXd* lambda = nullptr);

struct PaleyWienerOptions {
  std::vector<cplx> points;        // defaults to {-1,-.5,0,.5,1} + i {.5,1,1.5,2,2.5}
  std::vector<int> orders{1, 2, 4};
  double support_tol = 1e-12;
};

struct PaleyWienerReport {
  double support_radius = 0.0;
  std::vector<cplx> points;
  std::vector<double> magnitudes;  // |g(z)|
  double fitted_eta_rate = 0.0;    // coefficient of |B^{-1} eta| at xi = 0
  std::vector<int> orders;
  std::vector<double> c_n;         // smallest constant over the sample set
  std::vector<bool> bound_satisfied;
};

/// Default 5 x 5 sample set of complex arguments.
std::vector<cplx> paley_wiener_default_points();

/// Largest |x| with |f| above `tol` times its peak.
double support_radius(const SampledSignal& f, double tol = 1e-12);

/// Evaluates g = L_S f at complex points by quadrature and fits the constants
/// C_N of |g(z)| (1 + |z|)^N exp(2 pi xi (DB^{-1})_+ eta - 2 pi R |B^{-1} eta|).
/// Throws SupportViolation when f is not supported in [-R, R].
PaleyWienerReport paley_wiener_verify(const SampledSignal& f, const Free& s, double radius,
                                      const PaleyWienerOptions& opt = {});

}  // namespace lct
