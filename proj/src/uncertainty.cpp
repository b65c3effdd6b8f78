#include "lct/uncertainty.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace lct {

using std::numbers::pi;

namespace {

double trap(Index j, Index n) { return (j == 0 || j == n - 1) ? 0.5 : 1.0; }

bool is_identity(const Symplectic& s) {
  return s.matrix() == Eigen::MatrixXd::Identity(s.matrix().rows(), s.matrix().cols());
}

void check_tails(const Eigen::VectorXd& intensity) {
  const double peak = intensity.maxCoeff();
  const double edge = std::max(intensity[0], intensity[intensity.size() - 1]);
  if (peak > 0.0 && edge > 1e-10 * peak) {
    throw Error(ErrorKind::HeavyTails, "intensity at the window edge is " + std::to_string(edge / peak) +
                                           " of the peak; spread unreliable");
  }
}

// Moments of |g|^2 on a 1D grid; `center` replaces the mean when given.
SpreadReport spread_1d(const SampledSignal& g, std::optional<double> center = {}) {
  const Eigen::VectorXd p = g.values().cwiseAbs2();
  check_tails(p);
  const Grid1D& grid = g.grid();
  double m0 = 0.0, m1 = 0.0;
  for (Index j = 0; j < grid.n; ++j) {
    m0 += trap(j, grid.n) * p[j];
    m1 += trap(j, grid.n) * grid.at(j) * p[j];
  }
  m0 *= grid.dx;
  m1 *= grid.dx;
  const double mean = m0 > 0.0 ? m1 / m0 : 0.0;
  const double c = center.value_or(mean);
  double s = 0.0;
  for (Index j = 0; j < grid.n; ++j) s += trap(j, grid.n) * (grid.at(j) - c) * (grid.at(j) - c) * p[j];
  return {Eigen::VectorXd::Constant(1, mean), s * grid.dx, m0};
}

struct NdMoments {
  double norm_sq = 0.0;
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;  // central second moments, weighted by |g|^2 (not normalized)
  double abs_x_sq = 0.0; // int |x|^2 |g|^2
};

NdMoments moments_nd(const SignalND& g) {
  const Index d = g.dims();
  const auto& axes = g.axes();
  const Eigen::VectorXd p = g.values().cwiseAbs2();
  check_tails(p);
  double cell = 1.0;
  for (const auto& a : axes) cell *= a.dx;

  NdMoments m;
  Eigen::VectorXd first = Eigen::VectorXd::Zero(d);
  Eigen::MatrixXd second = Eigen::MatrixXd::Zero(d, d);
  std::vector<Index> idx(std::size_t(d), 0);
  Eigen::VectorXd x(d);
  for (Index flat = 0; flat < p.size(); ++flat) {
    double w = cell;
    for (Index a = 0; a < d; ++a) {
      const Grid1D& ax = axes[std::size_t(a)];
      w *= trap(idx[std::size_t(a)], ax.n);
      x[a] = ax.at(idx[std::size_t(a)]);
    }
    const double wp = w * p[flat];
    m.norm_sq += wp;
    first += wp * x;
    second += wp * x * x.transpose();
    for (Index a = d - 1; a >= 0; --a) {
      if (++idx[std::size_t(a)] < axes[std::size_t(a)].n) break;
      idx[std::size_t(a)] = 0;
    }
  }
  m.mean = m.norm_sq > 0.0 ? Eigen::VectorXd(first / m.norm_sq) : Eigen::VectorXd::Zero(d);
  m.cov = second - m.norm_sq * m.mean * m.mean.transpose();
  m.abs_x_sq = second.trace();
  return m;
}

SignalND apply_nd(const SignalND& f, const Symplectic& s, const LctOptions& opt) {
  return is_identity(s) ? f : lct_nd_separable(f, s, opt);
}

// Normalized, centered copy of f and its Wigner table.
struct Prepared {
  SampledSignal f;
  PhaseSpaceDistribution w;
};

Prepared prepare(const SampledSignal& f, const CovarianceOptions& opt) {
  SampledSignal g = f;
  const double nsq = std::pow(norm2(g), 2);
  if (std::abs(nsq - 1.0) > opt.norm_tol) {
    if (!opt.auto_fix) {
      throw Error(ErrorKind::NotNormalized, "||f||^2 = " + std::to_string(nsq) + ", expected 1");
    }
    g = normalized(g);
  }
  PhaseSpaceDistribution w = wigner(g, opt.wigner);
  // Both densities must have decayed at the window edges for the moments to mean anything.
  check_tails(marginal(w, Axis::X).values);
  check_tails(marginal(w, Axis::Xi).values);
  Eigen::Vector2d mean(moment(w, 1, 0), moment(w, 0, 1));
  if (mean.cwiseAbs().maxCoeff() > opt.mean_tol) {
    if (!opt.auto_fix) {
      throw Error(ErrorKind::MeanNotCentered,
                  "phase-space mean (" + std::to_string(mean[0]) + ", " + std::to_string(mean[1]) + ") is not 0");
    }
    g = hw_translate(g, -mean);
    w = wigner(g, opt.wigner);
    mean = Eigen::Vector2d(moment(w, 1, 0), moment(w, 0, 1));
    if (mean.cwiseAbs().maxCoeff() > opt.mean_tol) {
      throw Error(ErrorKind::MeanNotCentered, "re-centering left a mean of " +
                                                  std::to_string(mean.cwiseAbs().maxCoeff()));
    }
  }
  return {std::move(g), std::move(w)};
}

Eigen::Matrix2d second_moments(const PhaseSpaceDistribution& w) {
  Eigen::Matrix2d s;
  s(0, 0) = moment(w, 2, 0);
  s(0, 1) = s(1, 0) = moment(w, 1, 1);
  s(1, 1) = moment(w, 0, 2);
  return s;
}

void check_spd(const Eigen::MatrixXd& m, const char* name) {
  const double scale = 1.0 + m.cwiseAbs().maxCoeff();
  if (m.rows() != m.cols() || m.rows() == 0 || (m - m.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw Error(ErrorKind::NotSPD, std::string(name) + " is not symmetric");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) throw Error(ErrorKind::NotSPD, std::string(name) + " is not positive-definite");
}

struct SqrtPair {
  Eigen::MatrixXd half;
  Eigen::MatrixXd inv_half;
};

SqrtPair spd_sqrt(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  const Eigen::VectorXd ev = es.eigenvalues();
  if (ev.minCoeff() <= 0.0) throw Error(ErrorKind::NotSPD, "matrix has a non-positive eigenvalue");
  const Eigen::MatrixXd& v = es.eigenvectors();
  return {v * ev.cwiseSqrt().asDiagonal() * v.transpose(), v * ev.cwiseSqrt().cwiseInverse().asDiagonal() * v.transpose()};
}

}  // namespace

SampledSignal apply_symplectic(const SampledSignal& f, const Symplectic& s, const LctOptions& opt) {
  if (s.n() != 1) throw Error(ErrorKind::BadParameter, "1D signal needs a 2 x 2 matrix");
  if (is_identity(s)) return f;
  if (s.is_free(kFreeThreshold)) return lct_fast(f, as_free(s), opt);
  return metaplectic_apply(f, s, opt);
}

SpreadReport spread(const SampledSignal& f) { return spread_1d(f); }

SpreadReport spread(const SampledSignal& f, const Symplectic& s, const LctOptions& opt) {
  return spread_1d(apply_symplectic(f, s, opt));
}

SpreadReport spread(const SignalND& f) {
  const NdMoments m = moments_nd(f);
  return {m.mean, m.cov.trace(), m.norm_sq};
}

SpreadReport spread(const SignalND& f, const Symplectic& s, const LctOptions& opt) {
  return spread(apply_nd(f, s, opt));
}

InequalityReport heisenberg_check(const SampledSignal& f, const Symplectic& s1, const Symplectic& s2,
                                  std::optional<double> a, std::optional<double> b, const LctOptions& opt) {
  const SpreadReport p1 = spread_1d(apply_symplectic(f, s1, opt), a);
  const SpreadReport p2 = spread_1d(apply_symplectic(f, s2, opt), b);
  const double nsq = std::pow(norm2(f), 2);
  const double k = heisenberg_bound_matrix(s1, s2)(0, 0);
  InequalityReport r;
  r.lhs = p1.spread * p2.spread;
  r.rhs = nsq * nsq / (16 * pi * pi) * k * k;
  r.slack = r.lhs - r.rhs;
  return r;
}

HeisenbergNDReport heisenberg_nd(const SignalND& f, const Symplectic& s1, const Symplectic& s2,
                                 const LctOptions& opt) {
  const Index n = f.dims();
  if (s1.n() != n || s2.n() != n) throw Error(ErrorKind::BadParameter, "matrix and signal dimensions differ");
  const NdMoments m1 = moments_nd(apply_nd(f, s1, opt));
  const NdMoments m2 = moments_nd(apply_nd(f, s2, opt));
  const double nsq = std::pow(norm2(f), 2);
  const Eigen::MatrixXd k = heisenberg_bound_matrix(s1, s2);

  HeisenbergNDReport r;
  r.lhs = std::sqrt(std::max(0.0, m1.cov.trace())) * std::sqrt(std::max(0.0, m2.cov.trace()));
  r.rhs = nsq / (4 * pi) * k.diagonal().cwiseAbs().sum();
  r.slack = r.lhs - r.rhs;

  if (is_identity(s1) && std::abs(s2.B().determinant()) > kFreeThreshold) {
    const Eigen::MatrixXd b_inv = s2.B().inverse();
    InequalityReport t;
    t.lhs = (b_inv * m2.cov * b_inv.transpose()).trace() * m1.abs_x_sq;
    t.rhs = double(n * n) * nsq * nsq / (16 * pi * pi);
    t.slack = t.lhs - t.rhs;
    r.trace_form = t;
  }
  return r;
}

Eigen::Matrix2d covariance_sigma(const SampledSignal& f, const CovarianceOptions& opt) {
  return second_moments(prepare(f, opt).w);
}

double rs_min_eig(const Eigen::MatrixXd& upsilon, const Eigen::MatrixXd& omega) {
  const Eigen::MatrixXcd h = upsilon.cast<cplx>() + cplx(0.0, 1.0 / (4 * pi)) * omega.cast<cplx>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

bool CovarianceReport::psd(double tol) const {
  return min_eig >= -tol * (1.0 + upsilon.cwiseAbs().maxCoeff());
}

namespace {

CovarianceReport rs_report(const Eigen::Matrix2d& sigma, const PhaseSpaceDistribution& w_fine,
                           const Symplectic& s1, const Symplectic& s2) {
  if (s1.n() != 1 || s2.n() != 1) throw Error(ErrorKind::BadParameter, "covariance check is 1D");
  const auto coupling = coupling_matrix(s1, s2);
  const Eigen::Matrix2d d = coupling.d;

  CovarianceReport r{.sigma = sigma,
                     .upsilon = Eigen::Matrix2d::Zero(),
                     .omega = coupling.target_form,
                     .min_eig = 0.0,
                     .scalar = {},
                     .upsilon_wtheta = Eigen::Matrix2d::Zero(),
                     .wtheta_discrepancy = 0.0};
  r.upsilon = d * r.sigma * d.transpose();
  r.upsilon = (0.5 * (r.upsilon + r.upsilon.transpose())).eval();
  r.min_eig = rs_min_eig(r.upsilon, r.omega.omega);

  const double det = d.determinant();
  r.scalar.lhs = r.upsilon(0, 0) * r.upsilon(1, 1);
  r.scalar.rhs = r.upsilon(0, 1) * r.upsilon(0, 1) + det * det / (16 * pi * pi);
  r.scalar.slack = r.scalar.lhs - r.scalar.rhs;

  r.upsilon_wtheta = second_moments(wtheta(w_fine, s1, s2));
  r.wtheta_discrepancy = (r.upsilon_wtheta - r.upsilon).cwiseAbs().maxCoeff();
  return r;
}

}  // namespace

CovarianceReport rs_check(const SampledSignal& f, const Symplectic& s1, const Symplectic& s2,
                          const CovarianceOptions& opt) {
  return rs_check(f, {{s1, s2}}, opt).front();
}

std::vector<CovarianceReport> rs_check(const SampledSignal& f,
                                       const std::vector<std::pair<Symplectic, Symplectic>>& pairs,
                                       const CovarianceOptions& opt) {
  for (const auto& [s1, s2] : pairs) coupling_matrix(s1, s2);
  const Prepared prep = prepare(f, opt);
  const Eigen::Matrix2d sigma = second_moments(prep.w);
  WignerOptions wopt = opt.wigner;
  wopt.refine = std::max(wopt.refine, opt.wtheta_refine);
  const PhaseSpaceDistribution w = wopt.refine == opt.wigner.refine ? prep.w : wigner(prep.f, wopt);
  std::vector<CovarianceReport> out;
  out.reserve(pairs.size());
  for (const auto& [s1, s2] : pairs) out.push_back(rs_report(sigma, w, s1, s2));
  return out;
}

bool rs_invariance_probe(const CovarianceReport& report, const Eigen::MatrixXd& p, double tol) {
  const Eigen::MatrixXd& om = report.omega.omega;
  const double scale = 1.0 + p.cwiseAbs().maxCoeff() * p.cwiseAbs().maxCoeff() * om.cwiseAbs().maxCoeff();
  if (!in_sp_theta(p, report.omega, 1e-10 * scale)) {
    throw Error(ErrorKind::NotInSpTheta, "P Omega P^T differs from Omega");
  }
  const Eigen::MatrixXd moved = p * report.upsilon * p.transpose();
  const double after = rs_min_eig(moved, om);
  const bool was = report.min_eig >= -tol * (1.0 + report.upsilon.cwiseAbs().maxCoeff());
  const bool now = after >= -tol * (1.0 + moved.cwiseAbs().maxCoeff());
  return was == now;
}

GaussianSpec saturating_gaussian(const Symplectic& s1, const Symplectic& s2) {
  if (s1.n() != 1 || s2.n() != 1) throw Error(ErrorKind::BadParameter, "saturating Gaussian is 1D");
  const Eigen::MatrixXd& m1 = s1.matrix();
  const Eigen::MatrixXd& m2 = s2.matrix();
  const double a1 = m1(0, 0), b1 = m1(0, 1), c1 = m1(1, 0), d1 = m1(1, 1);
  const double a2 = m2(0, 0), b2 = m2(0, 1);
  const double det = a1 * b2 - a2 * b1;
  if (std::abs(det) < kFreeThreshold) throw Error(ErrorKind::DegeneratePair, "a1 b2 - a2 b1 = 0");
  return GaussianSpec::scalar(pi / std::abs(det), (a2 * d1 - b2 * c1) / det);
}

SampledSignal saturating_signal(const Symplectic& s1, const Symplectic& s2, const Grid1D& grid) {
  const GaussianSpec g = saturating_gaussian(s1, s2);
  if (is_identity(s1)) return SampledSignal(grid, sample(g, grid));
  // exp(-gamma x^2) pushed through S1^{-1} in closed form
  const cplx gamma(g.alpha(0, 0), pi * g.phase(0, 0));
  const Symplectic s = inverse(s1);
  const double a = s(0, 0), b = s(0, 1), c = s(1, 0), d = s(1, 1);
  Eigen::VectorXcd v(grid.n);
  if (std::abs(b) > kFreeThreshold) {
    const cplx w = gamma - cplx(0, pi * a / b);
    const cplx k = lct_prefactor(as_free(s)) * std::sqrt(pi / w);
    for (Index j = 0; j < grid.n; ++j) {
      const double x = grid.at(j);
      v[j] = k * std::exp(cplx(0, pi * d / b * x * x) - pi * pi * x * x / (b * b * w));
    }
  } else {
    for (Index j = 0; j < grid.n; ++j) {
      const double x = grid.at(j);
      v[j] = std::exp(cplx(0, pi * c / a * x * x) - gamma * (x / a) * (x / a)) / std::sqrt(std::abs(a));
    }
  }
  return SampledSignal(grid, std::move(v));
}

const char* to_string(HardyKind k) {
  switch (k) {
    case HardyKind::Subcritical: return "subcritical";
    case HardyKind::Critical: return "critical";
    case HardyKind::Supercritical: return "supercritical";
  }
  return "?";
}

HardyClassification hardy_classify_params(double alpha, double beta, const Free& s, double band) {
  if (!(alpha > 0.0) || !(beta > 0.0) || !std::isfinite(alpha) || !std::isfinite(beta)) {
    throw Error(ErrorKind::BadParameter, "Hardy rates must be positive and finite");
  }
  if (s.n() != 1) throw Error(ErrorKind::BadParameter, "1D Hardy classification needs a 2 x 2 matrix");
  const double b = s.blocks.B(0, 0);
  HardyClassification c;
  c.alpha = alpha;
  c.beta = beta;
  c.threshold = pi * pi / (b * b);
  c.ratio = alpha * beta / c.threshold;
  if (std::abs(c.ratio - 1.0) <= band) {
    c.kind = HardyKind::Critical;
    c.critical_gaussian = GaussianSpec::scalar(alpha, s.b_inv_a(0, 0));
  } else {
    c.kind = c.ratio > 1.0 ? HardyKind::Supercritical : HardyKind::Subcritical;
  }
  return c;
}

EnvelopeFit fit_gaussian_envelope(const SampledSignal& f, const HardyFitOptions& opt) {
  const Eigen::VectorXd mag = f.values().cwiseAbs();
  const double peak = mag.maxCoeff();
  if (!(peak > 0.0)) throw Error(ErrorKind::InsufficientDecay, "zero signal has no envelope");
  const Grid1D& g = f.grid();

  Index valid = 0;
  double range = 0.0;
  for (Index j = 0; j < g.n; ++j) {
    if (mag[j] > opt.floor * peak) {
      ++valid;
      range = std::max(range, -std::log(mag[j] / peak));
    }
  }
  if (valid < opt.min_samples) {
    throw Error(ErrorKind::InsufficientDecay, "only " + std::to_string(valid) + " samples above the noise floor");
  }
  std::vector<Index> use;
  for (Index j = 0; j < g.n; ++j) {
    if (!(mag[j] > opt.floor * peak)) continue;
    const double l = -std::log(mag[j] / peak);
    if (l >= opt.window_lo * range && l <= opt.window_hi * range) use.push_back(j);
  }
  if (range <= 0.0 || use.size() < 8) {
    throw Error(ErrorKind::InsufficientDecay, "no decay inside the fit window");
  }

  // -log|f| = p0 + p1 t + p2 t^2 with t = (x - xc) / s for conditioning.
  const double xc = 0.5 * (g.at(use.front()) + g.at(use.back()));
  const double sc = std::max(0.5 * (g.at(use.back()) - g.at(use.front())), g.dx);
  Eigen::MatrixXd a(Index(use.size()), 3);
  Eigen::VectorXd y(Index(use.size()));
  for (std::size_t r = 0; r < use.size(); ++r) {
    const double t = (g.at(use[r]) - xc) / sc;
    a.row(Index(r)) << 1.0, t, t * t;
    y[Index(r)] = -std::log(mag[use[r]] / peak);
  }
  const Eigen::Vector3d p = a.colPivHouseholderQr().solve(y);
  const Eigen::VectorXd res = y - a * p;
  const double tot = (y.array() - y.mean()).square().sum();
  const double r2 = tot > 0.0 ? 1.0 - res.squaredNorm() / tot : 0.0;
  const double rate = p[2] / (sc * sc);
  if (!(r2 >= opt.min_r2) || !(rate > 0.0)) {
    throw Error(ErrorKind::InsufficientDecay,
                "envelope is not Gaussian: R^2 = " + std::to_string(r2) + ", rate = " + std::to_string(rate));
  }
  return {rate, r2, Index(use.size())};
}

HardyClassification hardy_fit(const SampledSignal& f, const Free& s, const HardyFitOptions& opt) {
  const EnvelopeFit fa = fit_gaussian_envelope(f, opt);
  const EnvelopeFit fb = fit_gaussian_envelope(lct_fast(f, s, opt.lct), opt);
  HardyClassification c = hardy_classify_params(fa.rate, fb.rate, s, opt.critical_band);
  c.r2_alpha = fa.r2;
  c.r2_beta = fb.r2;
  return c;
}

Eigen::MatrixXd hardy_balancing(const Eigen::MatrixXd& m, const Eigen::MatrixXd& n, Eigen::VectorXd* lambda) {
  check_spd(m, "M");
  check_spd(n, "N");
  if (m.rows() != n.rows()) throw Error(ErrorKind::BadParameter, "M and N differ in size");
  const SqrtPair mh = spd_sqrt(m);
  Eigen::MatrixXd p = mh.half * n * mh.half;
  p = (0.5 * (p + p.transpose())).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(p);
  const Eigen::VectorXd lam = es.eigenvalues().cwiseSqrt();
  if (lambda) *lambda = lam;
  return mh.inv_half * es.eigenvectors() * lam.cwiseSqrt().asDiagonal();
}

HardyNDResult hardy_nd_eigs(const Eigen::MatrixXd& m, const Eigen::MatrixXd& n, const Free& s, double band) {
  check_spd(m, "M");
  check_spd(n, "N");
  const Eigen::MatrixXd& b = s.blocks.B;
  if (m.rows() != b.rows() || n.rows() != b.rows()) throw Error(ErrorKind::BadParameter, "M, N and B differ in size");
  Eigen::MatrixXd nb = b.transpose() * n * b;
  nb = (0.5 * (nb + nb.transpose())).eval();

  HardyNDResult r;
  r.l = hardy_balancing(m, nb, &r.lambda);
  r.eigenvalues = r.lambda.cwiseAbs2();
  const double crit = pi * pi;
  if ((r.eigenvalues.array() > crit * (1.0 + band)).any()) {
    r.kind = HardyKind::Supercritical;
  } else if (((r.eigenvalues.array() - crit).abs() <= band * crit).all()) {
    r.kind = HardyKind::Critical;
    GaussianSpec g;
    g.alpha = m;
    g.phase = s.b_inv_a;
    g.center = Eigen::VectorXd::Zero(m.rows());
    g.momentum = Eigen::VectorXd::Zero(m.rows());
    r.critical_gaussian = g;
  } else {
    r.kind = HardyKind::Subcritical;
  }
  return r;
}

std::vector<cplx> paley_wiener_default_points() {
  std::vector<cplx> z;
  for (double xi : {-1.0, -0.5, 0.0, 0.5, 1.0})
    for (double eta : {0.5, 1.0, 1.5, 2.0, 2.5}) z.emplace_back(xi, eta);
  return z;
}

double support_radius(const SampledSignal& f, double tol) {
  const double peak = f.values().cwiseAbs().maxCoeff();
  double r = 0.0;
  for (Index j = 0; j < f.size(); ++j)
    if (std::abs(f[j]) > tol * peak) r = std::max(r, std::abs(f.x(j)));
  return r;
}

PaleyWienerReport paley_wiener_verify(const SampledSignal& f, const Free& s, double radius,
                                      const PaleyWienerOptions& opt) {
  if (!(radius > 0.0)) throw Error(ErrorKind::BadParameter, "support radius must be positive");
  if (s.n() != 1) throw Error(ErrorKind::BadParameter, "Paley-Wiener check is 1D");
  const double peak = f.values().cwiseAbs().maxCoeff();
  const double edge = radius * (1.0 + 1e-12) + 1e-12;
  for (Index j = 0; j < f.size(); ++j) {
    if (std::abs(f.x(j)) > edge && std::abs(f[j]) > opt.support_tol * peak) {
      throw Error(ErrorKind::SupportViolation, "f is nonzero at x = " + std::to_string(f.x(j)) +
                                                   ", outside radius " + std::to_string(radius));
    }
  }
  PaleyWienerReport r;
  r.support_radius = radius;
  r.points = opt.points.empty() ? paley_wiener_default_points() : opt.points;
  r.orders = opt.orders;
  const Eigen::VectorXcd g = lct_direct(f, s, r.points);
  const double b = s.blocks.B(0, 0);
  const double db = s.db_inv(0, 0);
  for (Index i = 0; i < g.size(); ++i) r.magnitudes.push_back(std::abs(g[i]));

  for (int order : r.orders) {
    double c = 0.0;
    for (std::size_t i = 0; i < r.points.size(); ++i) {
      const cplx z = r.points[i];
      const double w = std::pow(1.0 + std::abs(z), order) *
                       std::exp(2 * pi * z.real() * db * z.imag() - 2 * pi * radius * std::abs(z.imag() / b));
      c = std::max(c, r.magnitudes[i] * w);
    }
    r.c_n.push_back(c);
    r.bound_satisfied.push_back(std::isfinite(c));
  }

  // log|g(i eta)| = rate t + k log t + c0 with t = |eta / b|.
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < r.points.size(); ++i) {
    const cplx z = r.points[i];
    if (z.real() == 0.0 && z.imag() != 0.0 && r.magnitudes[i] > 0.0)
      pts.emplace_back(std::abs(z.imag() / b), std::log(r.magnitudes[i]));
  }
  r.fitted_eta_rate = std::numeric_limits<double>::quiet_NaN();
  if (pts.size() >= 3) {
    Eigen::MatrixXd a(Index(pts.size()), 3);
    Eigen::VectorXd y(Index(pts.size()));
    for (std::size_t i = 0; i < pts.size(); ++i) {
      a.row(Index(i)) << pts[i].first, std::log(pts[i].first), 1.0;
      y[Index(i)] = pts[i].second;
    }
    r.fitted_eta_rate = a.colPivHouseholderQr().solve(y)[0];
  }
  return r;
}

}  // namespace lct
