#include "lct/transform.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace lct {

using std::numbers::pi;

namespace {

struct Scalars {
  double a, b, c, d;
};

Scalars scalars_of(const Free& s) {
  if (s.n() != 1) throw Error(ErrorKind::BadParameter, "1D transform needs a 2x2 matrix");
  const auto& m = s.matrix.matrix();
  return {m(0, 0), m(0, 1), m(1, 0), m(1, 1)};
}

cplx i_pow(Index n) {
  switch (n % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

double extent_of(const Eigen::VectorXd& magnitude, const Grid1D& grid, double threshold) {
  const double peak = magnitude.size() ? magnitude.maxCoeff() : 0.0;
  if (!(peak > 0.0)) return 0.0;
  double ext = 0.0;
  for (Index j = 0; j < magnitude.size(); ++j) {
    if (magnitude[j] > threshold * peak) ext = std::max(ext, std::abs(grid.at(j)));
  }
  return ext;
}

// Input chirp exp(i pi (a/b) x^2) must be resolved by dx over the support.
void check_input_chirp(double a_over_b, double extent, double dx) {
  const double cond = std::abs(a_over_b) * extent * dx;
  if (cond >= 0.5) {
    throw AliasRiskError("input chirp undersampled: |a/b| x_max dx = " + std::to_string(cond) +
                             " >= 1/2; refine the input grid",
                         0, cond / 0.5);
  }
}

// Output chirp exp(i pi (d/b) xi^2) must be resolved by dxi over the support.
// oversample == 0 marks an explicit output grid, which only a finer grid helps.
void check_output_chirp(double d_over_b, double extent, double dxi, int oversample) {
  const double cond = std::abs(d_over_b) * extent * dxi;
  if (cond >= 0.5 && oversample == 0) {
    throw AliasRiskError("output chirp undersampled: |d/b| xi_max dxi = " + std::to_string(cond) +
                             " >= 1/2; refine the output grid by " + std::to_string(cond / 0.5),
                         0, 1.0);
  }
  if (cond >= 0.5) {
    const int required = int(std::ceil(double(std::max(oversample, 1)) * cond / 0.5 * (1.0 + 1e-9))) + 1;
    throw AliasRiskError("output chirp undersampled: |d/b| xi_max dxi = " + std::to_string(cond) +
                             " >= 1/2; oversample factor " + std::to_string(required) + " required",
                         required, 1.0);
  }
}

Eigen::VectorXcd chirped_input(const SampledSignal& f, double a_over_b) {
  const Grid1D& g = f.grid();
  Eigen::VectorXcd h(g.n);
  for (Index j = 0; j < g.n; ++j) {
    const double x = g.at(j);
    h[j] = f[j] * std::polar(1.0, pi * a_over_b * x * x);
  }
  return h;
}

}  // namespace

cplx lct_prefactor(const Free& s) {
  const cplx arg = i_pow(s.n()) * s.det_b;
  return std::exp(-0.5 * std::log(arg));
}

double effective_extent(const SampledSignal& f, double threshold) {
  return extent_of(f.values().cwiseAbs(), f.grid(), threshold);
}

SampledSignal lct_fast(const SampledSignal& f, const Free& s, const LctOptions& opt) {
  const auto [a, b, c, d] = scalars_of(s);
  (void)c;
  if (opt.oversample < 1) throw Error(ErrorKind::BadParameter, "oversample factor must be >= 1");
  const Grid1D& g = f.grid();
  if (opt.check_aliasing) check_input_chirp(a / b, effective_extent(f, opt.support_threshold), g.dx);

  const Index m = g.n * opt.oversample;
  Eigen::VectorXcd padded = Eigen::VectorXcd::Zero(m);
  padded.head(g.n) = chirped_input(f, a / b);
  for (Index j = 1; j < g.n; j += 2) padded[j] = -padded[j];
  const Eigen::VectorXcd X = fft(padded);

  const double du = 1.0 / (double(m) * g.dx);
  const cplx pref = lct_prefactor(s);
  Eigen::VectorXcd out(m);
  for (Index k = 0; k < m; ++k) {
    const double u = double(k - m / 2) * du;
    const double xi = b * u;
    out[k] = pref * g.dx * X[k] * std::polar(1.0, -2.0 * pi * u * g.x0 + pi * (d / b) * xi * xi);
  }

  const double dxi = std::abs(b) * du;
  Grid1D og{b * double(-(m / 2)) * du, dxi, m};
  if (b < 0.0) {
    out.reverseInPlace();
    og.x0 = b * double(m - 1 - m / 2) * du;
  }
  SampledSignal result(og, std::move(out));
  if (opt.check_aliasing) {
    check_output_chirp(d / b, effective_extent(result, opt.support_threshold), dxi, opt.oversample);
  }
  return result;
}

SampledSignal lct_fast(const SampledSignal& f, const Free& s, const Grid1D& out, const LctOptions& opt) {
  const auto [a, b, c, d] = scalars_of(s);
  (void)c;
  out.validate();
  const Grid1D& g = f.grid();
  if (opt.check_aliasing) check_input_chirp(a / b, effective_extent(f, opt.support_threshold), g.dx);

  // u_m = xi_m / b = u0 + m du
  const double u0 = out.x0 / b;
  const double du = out.dx / b;
  Eigen::VectorXcd h = chirped_input(f, a / b);
  for (Index j = 0; j < g.n; ++j) {
    double turns = -u0 * double(j) * g.dx;
    turns -= std::floor(turns);
    h[j] *= std::polar(1.0, 2.0 * pi * turns);
  }
  Eigen::VectorXcd y = czt(h, du * g.dx, out.n);
  const cplx pref = lct_prefactor(s);
  for (Index k = 0; k < out.n; ++k) {
    const double xi = out.at(k);
    const double u = xi / b;
    y[k] *= pref * g.dx * std::polar(1.0, -2.0 * pi * u * g.x0 + pi * (d / b) * xi * xi);
  }
  SampledSignal result(out, std::move(y));
  if (opt.check_aliasing) {
    check_output_chirp(d / b, effective_extent(result, opt.support_threshold), out.dx, 0);
  }
  return result;
}

Eigen::VectorXcd lct_direct(const SampledSignal& f, const Free& s, const std::vector<cplx>& targets) {
  const auto [a, b, c, d] = scalars_of(s);
  (void)c;
  const Grid1D& g = f.grid();
  Eigen::VectorXcd h = chirped_input(f, a / b);
  h[0] *= 0.5;
  h[g.n - 1] *= 0.5;
  const cplx pref = lct_prefactor(s);
  Eigen::VectorXcd out(Index(targets.size()));
  for (std::size_t t = 0; t < targets.size(); ++t) {
    const cplx z = targets[t];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw Error(ErrorKind::BadParameter, "non-finite LCT target");
    }
    const cplx rate = cplx(0.0, -2.0 * pi) * z / b;
    cplx acc = 0.0;
    for (Index j = 0; j < g.n; ++j) {
      if (h[j] != 0.0) acc += h[j] * std::exp(rate * g.at(j));
    }
    out[Index(t)] = pref * g.dx * acc * std::exp(cplx(0.0, pi * d / b) * z * z);
  }
  return out;
}

namespace {

struct Lower {
  double a, c;
};

Lower lower_triangular(const Symplectic& s) {
  const auto& m = s.matrix();
  return {m(0, 0), m(1, 0)};
}

SampledSignal dilate_chirp(const SampledSignal& f, const Symplectic& s) {
  const auto [a, c] = lower_triangular(s);
  const Grid1D& g = f.grid();
  const double scale = 1.0 / std::sqrt(std::abs(a));
  Eigen::VectorXcd v(g.n);
  for (Index j = 0; j < g.n; ++j) {
    const double x = a * g.at(j);
    v[j] = scale * std::polar(1.0, pi * (c / a) * x * x) * f[j];
  }
  Grid1D og{a * g.x0, std::abs(a) * g.dx, g.n};
  if (a < 0.0) {
    v.reverseInPlace();
    og.x0 = a * g.back();
  }
  return SampledSignal(og, std::move(v));
}

SampledSignal dilate_chirp(const SampledSignal& f, const Symplectic& s, const Grid1D& out) {
  const auto [a, c] = lower_triangular(s);
  out.validate();
  const Grid1D& g = f.grid();
  // Sample f(x / a) for x on the output grid.
  const Grid1D pre{out.x0 / a, out.dx / a, out.n};
  Eigen::VectorXcd v;
  const double steps = (pre.x0 - g.x0) / g.dx;
  if (std::abs(pre.dx - g.dx) <= 1e-12 * g.dx && std::abs(steps - std::round(steps)) <= 1e-9) {
    const Index shift = Index(std::round(steps));
    v = Eigen::VectorXcd::Zero(out.n);
    for (Index j = 0; j < out.n; ++j) {
      const Index src = j + shift;
      if (src >= 0 && src < g.n) v[j] = f[src];
    }
  } else {
    v = interpolate_bandlimited(f, pre);
    const double lo = g.x0 - 1e-9 * g.dx;
    const double hi = g.back() + 1e-9 * g.dx;
    for (Index j = 0; j < out.n; ++j) {
      const double y = pre.at(j);
      if (y < lo || y > hi) v[j] = 0.0;
    }
  }
  const double scale = 1.0 / std::sqrt(std::abs(a));
  for (Index j = 0; j < out.n; ++j) {
    const double x = out.at(j);
    v[j] *= scale * std::polar(1.0, pi * (c / a) * x * x);
  }
  return SampledSignal(out, std::move(v));
}

}  // namespace

SampledSignal metaplectic_apply(const SampledSignal& f, const Symplectic& s, const LctOptions& opt) {
  if (s.n() != 1) throw Error(ErrorKind::BadParameter, "1D transform needs a 2x2 matrix");
  if (s.is_free()) return lct_fast(f, as_free(s), opt);
  return dilate_chirp(f, s);
}

SampledSignal metaplectic_apply(const SampledSignal& f, const Symplectic& s, const Grid1D& out,
                                const LctOptions& opt) {
  if (s.n() != 1) throw Error(ErrorKind::BadParameter, "1D transform needs a 2x2 matrix");
  if (s.is_free()) return lct_fast(f, as_free(s), out, opt);
  return dilate_chirp(f, s, out);
}

SignalND lct_nd_separable(const SignalND& f, const Symplectic& s, const LctOptions& opt) {
  if (s.n() != f.dims()) throw Error(ErrorKind::BadParameter, "matrix and signal dimensions differ");
  if (!s.has_diagonal_blocks(1e-12)) {
    throw Error(ErrorKind::NotSeparable, "off-diagonal block entries exceed 1e-12");
  }
  std::vector<Grid1D> axes = f.axes();
  Eigen::VectorXcd values = f.values();
  for (Index axis = 0; axis < f.dims(); ++axis) {
    const Free s1 = as_free(s.axis(axis));
    const Grid1D in = axes[std::size_t(axis)];
    Index stride = 1;
    for (Index a = f.dims() - 1; a > axis; --a) stride *= axes[std::size_t(a)].n;
    const Index outer = values.size() / (in.n * stride);

    // Aliasing is judged on the envelope across all fibers.
    if (opt.check_aliasing) {
      Eigen::VectorXd env = Eigen::VectorXd::Zero(in.n);
      for (Index o = 0; o < outer; ++o)
        for (Index r = 0; r < stride; ++r)
          for (Index j = 0; j < in.n; ++j)
            env[j] = std::max(env[j], std::abs(values[(o * in.n + j) * stride + r]));
      check_input_chirp(s1.b_inv_a(0, 0), extent_of(env, in, opt.support_threshold), in.dx);
    }

    LctOptions fiber_opt = opt;
    fiber_opt.check_aliasing = false;
    Grid1D out_grid;
    Eigen::VectorXcd next;
    Eigen::VectorXcd fiber(in.n);
    for (Index o = 0; o < outer; ++o) {
      for (Index r = 0; r < stride; ++r) {
        for (Index j = 0; j < in.n; ++j) fiber[j] = values[(o * in.n + j) * stride + r];
        const SampledSignal t = lct_fast(SampledSignal(in, fiber), s1, fiber_opt);
        if (next.size() == 0) {
          out_grid = t.grid();
          next = Eigen::VectorXcd::Zero(outer * out_grid.n * stride);
        }
        for (Index k = 0; k < out_grid.n; ++k) next[(o * out_grid.n + k) * stride + r] = t[k];
      }
    }
    if (opt.check_aliasing) {
      Eigen::VectorXd env = Eigen::VectorXd::Zero(out_grid.n);
      for (Index o = 0; o < outer; ++o)
        for (Index r = 0; r < stride; ++r)
          for (Index k = 0; k < out_grid.n; ++k)
            env[k] = std::max(env[k], std::abs(next[(o * out_grid.n + k) * stride + r]));
      check_output_chirp(s1.db_inv(0, 0), extent_of(env, out_grid, opt.support_threshold), out_grid.dx,
                         opt.oversample);
    }
    axes[std::size_t(axis)] = out_grid;
    values = std::move(next);
  }
  return SignalND(std::move(axes), std::move(values));
}

GaussianSpec gaussian_lct_closed(const GaussianSpec& g, const Free& s) {
  g.validate();
  const auto [a, b, c, d] = scalars_of(s);
  (void)c;
  if (g.n() != 1 || g.center[0] != 0.0 || g.momentum[0] != 0.0) {
    throw Error(ErrorKind::BadParameter, "closed form needs a centered 1D Gaussian without momentum");
  }
  const double alpha = g.alpha(0, 0);
  if (std::abs(g.phase(0, 0) - a / b) > 1e-9 * (1.0 + std::abs(a / b))) {
    throw Error(ErrorKind::BadParameter, "Gaussian phase coefficient must equal a/b of the matrix");
  }
  const double re_k = pi * pi / (b * b * alpha);
  const double im_k = -pi * d / b;
  const cplx amp = g.amplitude * std::sqrt(cplx(pi) / (cplx(0.0, 1.0) * alpha * b));
  return GaussianSpec::scalar(re_k, im_k / pi, amp);
}

Eigen::VectorXcd sample(const GaussianSpec& g, const Grid1D& grid) {
  g.validate();
  if (g.n() != 1) throw Error(ErrorKind::BadParameter, "1D grid needs a 1D Gaussian");
  Eigen::VectorXcd v(grid.n);
  Eigen::VectorXd x(1);
  for (Index j = 0; j < grid.n; ++j) {
    x[0] = grid.at(j);
    v[j] = g(x);
  }
  return v;
}

}  // namespace lct
