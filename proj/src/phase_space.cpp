#include "lct/phase_space.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace lct {

using std::numbers::pi;

namespace {

double trap(Index j, Index n) { return (j == 0 || j == n - 1) ? 0.5 : 1.0; }

// Linear interpolation along one axis of a uniform grid; zero outside.
bool locate(const Grid1D& g, double v, Index& i0, double& t) {
  const double f = (v - g.x0) / g.dx;
  if (!(f >= -1e-12) || !(f <= double(g.n - 1) + 1e-12)) return false;
  i0 = std::min<Index>(Index(std::floor(std::max(f, 0.0))), g.n - 2);
  t = std::clamp(f - double(i0), 0.0, 1.0);
  return true;
}

// f sampled at spacing dx / factor starting at x0.
Eigen::VectorXcd upsample(const SampledSignal& f, int factor) {
  if (factor == 1) return f.values();
  const Grid1D& g = f.grid();
  return interpolate_bandlimited(f, Grid1D{g.x0, g.dx / factor, g.n * factor});
}

int check_refine(int r) {
  if (r < 1 || r > 16) throw Error(ErrorKind::BadParameter, "Wigner refinement must be in [1, 16]");
  return r;
}

// Lag-domain transform shared by the Wigner and linear-perturbation paths:
// for each row j, sum_m c_m exp(-2 pi i xi m step) over m in [-L/2, L/2),
// with c_m = hf[center(j) + sign m] conj(hg[center(j) - sign m]). The
// unpaired lag -L/2 is averaged with its mirror so that auto-terms stay
// Hermitian in m.
Eigen::MatrixXcd lag_transform(const Eigen::VectorXcd& hf, const Eigen::VectorXcd& hg, Index rows,
                               Index center_stride, Index lags, int sign, double step) {
  const Index len = hf.size();
  Eigen::MatrixXcd out(rows, lags);
  Eigen::VectorXcd a(lags);
  auto prod = [&](Index c, Index m) -> cplx {
    const Index p = c + sign * m;
    const Index q = c - sign * m;
    if (p < 0 || p >= len || q < 0 || q >= len) return 0.0;
    return hf[p] * std::conj(hg[q]);
  };
  for (Index j = 0; j < rows; ++j) {
    const Index c = center_stride * j;
    a.setZero();
    for (Index m = -lags / 2; m < lags / 2; ++m) {
      cplx v = (m == -lags / 2) ? 0.5 * (prod(c, m) + prod(c, -m)) : prod(c, m);
      if (m & 1) v = -v;
      a[(m + lags) % lags] = v;
    }
    out.row(j) = (step * fft(a)).transpose();
  }
  return out;
}

ComplexDistribution wigner_table(const SampledSignal& f, const SampledSignal& g, int r) {
  const Grid1D& grid = f.grid();
  const Eigen::VectorXcd hf = upsample(f, 2 * r);
  const Eigen::VectorXcd hg = (&f == &g) ? hf : upsample(g, 2 * r);
  const Index rows = Index(r) * grid.n;
  const Index lags = Index(r) * r * grid.n;
  const double step = grid.dx / r;
  const Eigen::MatrixXcd full = lag_transform(hf, hg, rows, 2, lags, 1, step);
  // Keep xi in [-1/(2 dx), 1/(2 dx)).
  const Index keep = rows;
  const Index first = lags / 2 - keep / 2;
  ComplexDistribution out;
  out.x = Grid1D{grid.x0, step, rows};
  out.xi = Grid1D{double(first - lags / 2) / (double(lags) * step), 1.0 / (double(lags) * step), keep};
  out.values = full.middleCols(first, keep);
  return out;
}

PhaseSpaceDistribution real_part_checked(const ComplexDistribution& c, double tol, const char* what) {
  const double re = c.values.real().cwiseAbs().maxCoeff();
  const double im = c.values.imag().cwiseAbs().maxCoeff();
  if (im > tol * re) {
    throw Error(ErrorKind::ImaginaryResidual, std::string(what) + ": imaginary residual " + std::to_string(im) +
                                                  " exceeds " + std::to_string(tol) + " of the peak");
  }
  return {c.x, c.xi, c.values.real(), {}};
}

Eigen::Matrix2d to2(const Eigen::MatrixXd& m) { return m; }

}  // namespace

double PhaseSpaceDistribution::interpolate(double xv, double xiv) const {
  Index i, k;
  double s, t;
  if (!locate(x, xv, i, s) || !locate(xi, xiv, k, t)) return 0.0;
  return (1 - s) * ((1 - t) * values(i, k) + t * values(i, k + 1)) +
         s * ((1 - t) * values(i + 1, k) + t * values(i + 1, k + 1));
}

PhaseSpaceDistribution wigner(const SampledSignal& f, const WignerOptions& opt) {
  return real_part_checked(wigner_table(f, f, check_refine(opt.refine)), opt.realness_tol, "wigner");
}

ComplexDistribution cross_wigner(const SampledSignal& f, const SampledSignal& g, const WignerOptions& opt) {
  if (!f.grid().same_as(g.grid())) throw Error(ErrorKind::GridMismatch, "cross-Wigner needs a common grid");
  return wigner_table(f, g, check_refine(opt.refine));
}

double metaplectic_covariance_check(const SampledSignal& f, const Free& s, const WignerOptions& opt) {
  const SampledSignal g = lct_fast(f, s, f.grid());
  const PhaseSpaceDistribution wf = wigner(f, opt);
  const PhaseSpaceDistribution wg = wigner(g, opt);
  const Eigen::Matrix2d sinv = to2(inverse(s.matrix).matrix());
  double num = 0.0, den = 0.0;
  for (Index i = 0; i < wg.x.n; ++i) {
    for (Index k = 0; k < wg.xi.n; ++k) {
      const Eigen::Vector2d z = sinv * Eigen::Vector2d(wg.x.at(i), wg.xi.at(k));
      const double diff = wg.values(i, k) - wf.interpolate(z[0], z[1]);
      num += diff * diff;
      den += wg.values(i, k) * wg.values(i, k);
    }
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

PhaseSpaceDistribution wtheta(const PhaseSpaceDistribution& w_sigma, const Symplectic& s1, const Symplectic& s2,
                              const WThetaOptions& opt) {
  if (s1.n() != 1) throw Error(ErrorKind::BadParameter, "phase-space distributions are 1D");
  const auto coupling = coupling_matrix(s1, s2);
  const Eigen::Matrix2d d = to2(coupling.d);
  const bool identity = d == Eigen::Matrix2d::Identity();

  PhaseSpaceDistribution out;
  out.x = opt.x_grid.value_or(w_sigma.x);
  out.xi = opt.xi_grid.value_or(w_sigma.xi);
  out.form = identity ? FormTag{} : FormTag::nonstandard(coupling.target_form.omega);
  if (identity && !opt.x_grid && !opt.xi_grid) {
    out.values = w_sigma.values;
    return out;
  }
  const Eigen::Matrix2d dinv = d.inverse();
  const double scale = 1.0 / std::abs(d.determinant());
  out.values.resize(out.x.n, out.xi.n);
  for (Index i = 0; i < out.x.n; ++i) {
    for (Index k = 0; k < out.xi.n; ++k) {
      const Eigen::Vector2d z = dinv * Eigen::Vector2d(out.x.at(i), out.xi.at(k));
      out.values(i, k) = scale * w_sigma.interpolate(z[0], z[1]);
    }
  }
  return out;
}

PhaseSpaceDistribution wtheta(const SampledSignal& f, const Symplectic& s1, const Symplectic& s2,
                              const WThetaOptions& opt) {
  coupling_matrix(s1, s2);  // fail before the expensive part
  return wtheta(wigner(f, opt.wigner), s1, s2, opt);
}

Profile marginal(const PhaseSpaceDistribution& w, Axis keep) {
  if (keep == Axis::X) {
    Eigen::VectorXd v(w.x.n);
    for (Index i = 0; i < w.x.n; ++i) {
      double s = 0.0;
      for (Index k = 0; k < w.xi.n; ++k) s += trap(k, w.xi.n) * w.values(i, k);
      v[i] = s * w.xi.dx;
    }
    return {w.x, v};
  }
  Eigen::VectorXd v(w.xi.n);
  for (Index k = 0; k < w.xi.n; ++k) {
    double s = 0.0;
    for (Index i = 0; i < w.x.n; ++i) s += trap(i, w.x.n) * w.values(i, k);
    v[k] = s * w.x.dx;
  }
  return {w.xi, v};
}

double moment(const PhaseSpaceDistribution& w, int p, int q) {
  if (p < 0 || q < 0) throw Error(ErrorKind::BadParameter, "moment orders must be non-negative");
  if (p + q > 4) throw Error(ErrorKind::MomentOrderTooHigh, "moment order " + std::to_string(p + q) + " > 4");
  double s = 0.0;
  for (Index i = 0; i < w.x.n; ++i) {
    const double xp = std::pow(w.x.at(i), p);
    double row = 0.0;
    for (Index k = 0; k < w.xi.n; ++k) row += trap(k, w.xi.n) * std::pow(w.xi.at(k), q) * w.values(i, k);
    s += trap(i, w.x.n) * xp * row;
  }
  return s * w.x.dx * w.xi.dx;
}

Profile radon_marginal(const PhaseSpaceDistribution& w, const RadonLineSpec& line, const Grid1D& offsets) {
  if (line.a == 0.0 && line.b == 0.0) throw Error(ErrorKind::DegenerateLine, "line with a = b = 0");
  Eigen::VectorXd v = Eigen::VectorXd::Zero(offsets.n);
  const bool over_x = std::abs(line.b) >= std::abs(line.a);
  for (Index j = 0; j < offsets.n; ++j) {
    const double s = offsets.at(j);
    double acc = 0.0;
    if (over_x) {
      // xi' = (s - a x') / b along each x-row.
      for (Index i = 0; i < w.x.n; ++i) {
        Index k;
        double t;
        if (!locate(w.xi, (s - line.a * w.x.at(i)) / line.b, k, t)) continue;
        acc += trap(i, w.x.n) * ((1 - t) * w.values(i, k) + t * w.values(i, k + 1));
      }
      v[j] = acc * w.x.dx / std::abs(line.b);
    } else {
      for (Index k = 0; k < w.xi.n; ++k) {
        Index i;
        double t;
        if (!locate(w.x, (s - line.b * w.xi.at(k)) / line.a, i, t)) continue;
        acc += trap(k, w.xi.n) * ((1 - t) * w.values(i, k) + t * w.values(i + 1, k));
      }
      v[j] = acc * w.xi.dx / std::abs(line.a);
    }
  }
  return {offsets, v};
}

Profile radon_marginal(const SampledSignal& f, const RadonLineSpec& line, const Grid1D& offsets,
                       const WignerOptions& opt) {
  if (line.a == 0.0 && line.b == 0.0) throw Error(ErrorKind::DegenerateLine, "line with a = b = 0");
  return radon_marginal(wigner(f, opt), line, offsets);
}

namespace {

void check_perturbation(double a11, double a22) {
  if (a11 == 0.0 || a22 == 0.0 || !std::isfinite(a11) || !std::isfinite(a22)) {
    throw Error(ErrorKind::BadParameter, "A11 and A22 must be nonzero");
  }
}

PhaseSpaceDistribution orient_rows(PhaseSpaceDistribution w, const Grid1D& g, double a11) {
  if (a11 > 0.0) {
    w.x = Grid1D{g.x0 / a11, g.dx / a11, g.n};
  } else {
    w.x = Grid1D{g.back() / a11, g.dx / -a11, g.n};
    w.values = w.values.colwise().reverse().eval();
  }
  return w;
}

}  // namespace

PhaseSpaceDistribution linear_perturbation(const SampledSignal& f, double a11, double a22) {
  check_perturbation(a11, a22);
  const Grid1D& g = f.grid();
  const Eigen::VectorXcd h = upsample(f, 2);
  const double dy = g.dx / (2.0 * std::abs(a22));
  const Index lags = g.n;
  // f(x_j - A22 y_m) = h[2j - sign m], conj f(x_j + A22 y_m) = conj h[2j + sign m].
  const int sign = a22 > 0.0 ? -1 : 1;
  ComplexDistribution c;
  c.values = lag_transform(h, h, g.n, 2, lags, sign, dy);
  c.x = g;
  c.xi = Grid1D{-0.5 / dy, 1.0 / (double(lags) * dy), lags};
  return orient_rows(real_part_checked(c, 1e-8, "linear perturbation"), g, a11);
}

PhaseSpaceDistribution linear_perturbation_via_wigner(const SampledSignal& f, double a11, double a22) {
  check_perturbation(a11, a22);
  const Grid1D& g = f.grid();
  const PhaseSpaceDistribution w = wigner(f);
  const Index lags = w.xi.n;
  const double dy = g.dx / (2.0 * std::abs(a22));
  PhaseSpaceDistribution out;
  out.x = g;
  out.xi = Grid1D{-0.5 / dy, 1.0 / (double(lags) * dy), lags};
  out.values.resize(g.n, lags);
  // xi' = -xi / (2 A22) maps bin k to k (A22 < 0) or to -k mod L (A22 > 0).
  const double scale = 1.0 / (2.0 * std::abs(a22));
  for (Index k = 0; k < lags; ++k) {
    const Index src = a22 < 0.0 ? k : (lags - k) % lags;
    out.values.col(k) = scale * w.values.col(src);
  }
  return orient_rows(std::move(out), g, a11);
}

CohenProbe cohen_translation_probe(const SampledSignal& f, const Symplectic& s1, const Symplectic& s2,
                                   const Eigen::Vector2d& z0, const WignerOptions& opt) {
  const Eigen::Matrix2d d = to2(coupling_matrix(s1, s2).d);
  const Eigen::Matrix2d dinv = d.inverse();
  const double scale = 1.0 / std::abs(d.determinant());
  const TranslateResult t = hw_translate_checked(f, z0);
  const PhaseSpaceDistribution wf = wigner(f, opt);
  const PhaseSpaceDistribution wt = wigner(t.signal, opt);
  CohenProbe probe{0.0, 0.0, 0.0, t.resampled};
  for (Index i = 0; i < wf.x.n; ++i) {
    for (Index k = 0; k < wf.xi.n; ++k) {
      const Eigen::Vector2d z(wf.x.at(i), wf.xi.at(k));
      const Eigen::Vector2d u = dinv * z;
      const double lhs = scale * wt.interpolate(u[0], u[1]);
      const Eigen::Vector2d us = dinv * (z - z0);
      const double sigma_side = scale * wf.interpolate(us[0], us[1]);
      const double d_side = scale * wf.interpolate(u[0] - z0[0], u[1] - z0[1]);
      probe.r_sigma = std::max(probe.r_sigma, std::abs(lhs - sigma_side));
      probe.r_d = std::max(probe.r_d, std::abs(lhs - d_side));
      probe.max_w = std::max(probe.max_w, std::abs(scale * wf.interpolate(u[0], u[1])));
    }
  }
  return probe;
}

double l1_distance(const Profile& p, const Profile& q) {
  double s = 0.0;
  for (Index i = 0; i < p.grid.n; ++i) {
    Index j;
    double t;
    double qv = 0.0;
    if (locate(q.grid, p.grid.at(i), j, t)) qv = (1 - t) * q.values[j] + t * q.values[j + 1];
    s += trap(i, p.grid.n) * std::abs(p.values[i] - qv);
  }
  return s * p.grid.dx;
}

Profile intensity(const SampledSignal& g) { return {g.grid(), g.values().cwiseAbs2()}; }

}  // namespace lct
