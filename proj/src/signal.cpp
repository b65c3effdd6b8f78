#include "lct/signal.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace lct {

using std::numbers::pi;

void Grid1D::validate() const {
  if (!(dx > 0.0) || !std::isfinite(dx) || !std::isfinite(x0)) {
    throw Error(ErrorKind::BadParameter, "grid spacing must be positive and finite");
  }
  if (n < 8) throw Error(ErrorKind::BadParameter, "grid needs at least 8 samples, got " + std::to_string(n));
}

bool Grid1D::same_as(const Grid1D& other, double rel) const {
  const double scale = std::max(dx, other.dx);
  return n == other.n && std::abs(dx - other.dx) <= rel * scale &&
         std::abs(x0 - other.x0) <= rel * scale * double(std::max<Index>(n, 1));
}

SampledSignal::SampledSignal(Grid1D grid, Eigen::VectorXcd values)
    : grid_(grid), values_(std::move(values)) {
  grid_.validate();
  if (values_.size() != grid_.n) {
    throw Error(ErrorKind::BadParameter, "signal length does not match its grid");
  }
  if (!values_.allFinite()) throw Error(ErrorKind::BadParameter, "signal has non-finite samples");
}

SignalND::SignalND(std::vector<Grid1D> axes, Eigen::VectorXcd values)
    : axes_(std::move(axes)), values_(std::move(values)) {
  if (axes_.empty()) throw Error(ErrorKind::BadParameter, "nD signal needs at least one axis");
  Index total = 1;
  for (const auto& g : axes_) {
    g.validate();
    total *= g.n;
  }
  if (values_.size() != total) throw Error(ErrorKind::BadParameter, "nD signal size mismatch");
  if (!values_.allFinite()) throw Error(ErrorKind::BadParameter, "signal has non-finite samples");
}

Index SignalND::stride(Index axis) const {
  Index s = 1;
  for (Index a = dims() - 1; a > axis; --a) s *= axes_[std::size_t(a)].n;
  return s;
}

// ---------------------------------------------------------------------------

GaussianSpec GaussianSpec::scalar(double alpha, double phase, cplx amplitude) {
  GaussianSpec g;
  g.alpha = Eigen::MatrixXd::Constant(1, 1, alpha);
  g.phase = Eigen::MatrixXd::Constant(1, 1, phase);
  g.center = Eigen::VectorXd::Zero(1);
  g.momentum = Eigen::VectorXd::Zero(1);
  g.amplitude = amplitude;
  return g;
}

void GaussianSpec::validate() const {
  const Index k = alpha.rows();
  if (k < 1 || alpha.cols() != k || phase.rows() != k || phase.cols() != k ||
      center.size() != k || momentum.size() != k) {
    throw Error(ErrorKind::BadParameter, "Gaussian spec has inconsistent dimensions");
  }
  if ((alpha - alpha.transpose()).cwiseAbs().maxCoeff() > 1e-12 ||
      (phase - phase.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw Error(ErrorKind::BadParameter, "Gaussian decay and phase matrices must be symmetric");
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(alpha, Eigen::EigenvaluesOnly);
  if (!(es.eigenvalues().minCoeff() > 0.0)) {
    throw Error(ErrorKind::BadParameter, "Gaussian decay matrix must be positive-definite");
  }
}

cplx GaussianSpec::operator()(const Eigen::VectorXd& x) const {
  const Eigen::VectorXd y = x - center;
  const double decay = y.dot(alpha * y);
  const double chirp = pi * y.dot(phase * y);
  const double wave = 2.0 * pi * momentum.dot(x);
  return amplitude * std::exp(cplx(-decay, wave - chirp));
}

namespace {

Eigen::VectorXcd sample_gaussian(const GaussianSpec& g, const Grid1D& grid) {
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

Eigen::VectorXcd sample_rectangle(const RectangleSpec& r, const Grid1D& grid) {
  const double lo = grid.x0;
  const double hi = grid.back();
  if (!(r.radius > 0.0) || -r.radius < lo || r.radius > hi) {
    throw Error(ErrorKind::BadParameter, "rectangle radius must be positive and inside the grid");
  }
  const double eps = 1e-9 * grid.dx;
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(grid.n);
  for (Index j = 0; j < grid.n; ++j) {
    const double x = grid.at(j);
    if (x >= -r.radius - eps && x < r.radius - eps) v[j] = 1.0;
  }
  return v;
}

Eigen::VectorXcd sample_chirp(const ChirpSpec& c, const Grid1D& grid) {
  if (!(c.width > 0.0) || !std::isfinite(c.rate)) {
    throw Error(ErrorKind::BadParameter, "chirp needs a finite rate and positive width");
  }
  Eigen::VectorXcd v(grid.n);
  for (Index j = 0; j < grid.n; ++j) {
    const double x = grid.at(j);
    v[j] = std::exp(cplx(-pi * x * x / (c.width * c.width), pi * c.rate * x * x));
  }
  return v;
}

Eigen::VectorXcd sample_hermite(const HermiteSpec& h, const Grid1D& grid) {
  if (h.order < 0 || h.order > 64) throw Error(ErrorKind::BadParameter, "Hermite order must be in [0, 64]");
  Eigen::VectorXcd v(grid.n);
  const double root2pi = std::sqrt(2.0 * pi);
  for (Index j = 0; j < grid.n; ++j) {
    const double x = grid.at(j);
    const double t = root2pi * x;
    double prev = 0.0;
    double cur = std::pow(2.0, 0.25) * std::exp(-pi * x * x);
    for (int k = 0; k < h.order; ++k) {
      const double next = std::sqrt(2.0 / (k + 1)) * t * cur - std::sqrt(double(k) / (k + 1)) * prev;
      prev = cur;
      cur = next;
    }
    v[j] = cur;
  }
  return v;
}

Eigen::VectorXcd sample_random(const RandomBandlimitedSpec& r, const Grid1D& grid) {
  if (!(r.cutoff >= 0.0) || !std::isfinite(r.cutoff)) {
    throw Error(ErrorKind::BadParameter, "random signal cutoff must be finite and non-negative");
  }
  std::mt19937_64 rng(r.seed);
  std::uniform_int_distribution<int> count(2, 5);
  std::uniform_real_distribution<double> center(-1.5, 1.5);
  std::uniform_real_distribution<double> width(0.5, 1.5);
  std::uniform_real_distribution<double> momentum(-r.cutoff, r.cutoff);
  std::normal_distribution<double> amp(0.0, 1.0);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(grid.n);
  const int k = count(rng);
  for (int p = 0; p < k; ++p) {
    const double c = center(rng);
    const double w = width(rng);
    const double m = momentum(rng);
    const double re = amp(rng);
    const double im = amp(rng);
    const cplx a(re, im);
    for (Index j = 0; j < grid.n; ++j) {
      const double y = (grid.at(j) - c) / w;
      v[j] += a * std::exp(cplx(-pi * y * y, 2.0 * pi * m * grid.at(j)));
    }
  }
  return v;
}

}  // namespace

SampledSignal make_signal(const SignalSpec& spec, const Grid1D& grid) {
  grid.validate();
  Eigen::VectorXcd v = std::visit(
      [&grid](const auto& s) -> Eigen::VectorXcd {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, GaussianSpec>) return sample_gaussian(s, grid);
        else if constexpr (std::is_same_v<T, RectangleSpec>) return sample_rectangle(s, grid);
        else if constexpr (std::is_same_v<T, ChirpSpec>) return sample_chirp(s, grid);
        else if constexpr (std::is_same_v<T, HermiteSpec>) return sample_hermite(s, grid);
        else return sample_random(s, grid);
      },
      spec);
  return SampledSignal(grid, std::move(v));
}

SignalND make_separable(const std::vector<SampledSignal>& factors) {
  if (factors.empty()) throw Error(ErrorKind::BadParameter, "no factors");
  std::vector<Grid1D> axes;
  Eigen::VectorXcd acc = Eigen::VectorXcd::Ones(1);
  for (const auto& f : factors) {
    axes.push_back(f.grid());
    Eigen::VectorXcd next(acc.size() * f.size());
    for (Index i = 0; i < acc.size(); ++i) next.segment(i * f.size(), f.size()) = acc[i] * f.values();
    acc = std::move(next);
  }
  return SignalND(std::move(axes), std::move(acc));
}

// ---------------------------------------------------------------------------

namespace {

void require_same(const Grid1D& a, const Grid1D& b) {
  if (!a.same_as(b)) throw Error(ErrorKind::GridMismatch, "signals live on different grids");
}

// Trapezoid weights along one axis: 1 inside, 1/2 at both ends.
double trap_weight(Index j, Index n) { return (j == 0 || j == n - 1) ? 0.5 : 1.0; }

}  // namespace

cplx inner(const SampledSignal& f, const SampledSignal& g) {
  require_same(f.grid(), g.grid());
  const Index n = f.size();
  cplx s = f.values().dot(g.values());  // conj(g) . f
  s = std::conj(s);
  s -= 0.5 * (f[0] * std::conj(g[0]) + f[n - 1] * std::conj(g[n - 1]));
  return s * f.grid().dx;
}

double norm2(const SampledSignal& f) { return std::sqrt(std::max(0.0, inner(f, f).real())); }

cplx inner(const SignalND& f, const SignalND& g) {
  if (f.dims() != g.dims()) throw Error(ErrorKind::GridMismatch, "signals have different dimension");
  for (Index a = 0; a < f.dims(); ++a) require_same(f.axes()[std::size_t(a)], g.axes()[std::size_t(a)]);
  cplx s = 0.0;
  double cell = 1.0;
  for (const auto& ax : f.axes()) cell *= ax.dx;
  const Index total = f.values().size();
  for (Index i = 0; i < total; ++i) {
    double w = 1.0;
    Index rem = i;
    for (Index a = f.dims() - 1; a >= 0; --a) {
      const Index na = f.axes()[std::size_t(a)].n;
      w *= trap_weight(rem % na, na);
      rem /= na;
    }
    s += w * f.values()[i] * std::conj(g.values()[i]);
  }
  return s * cell;
}

double norm2(const SignalND& f) { return std::sqrt(std::max(0.0, inner(f, f).real())); }

SampledSignal operator*(cplx s, const SampledSignal& f) { return SampledSignal(f.grid(), s * f.values()); }

SampledSignal normalized(const SampledSignal& f) {
  const double nrm = norm2(f);
  if (!(nrm > 0.0)) throw Error(ErrorKind::BadParameter, "cannot normalize a zero signal");
  return cplx(1.0 / nrm) * f;
}

Eigen::VectorXcd interpolate_bandlimited(const SampledSignal& f, const Grid1D& target) {
  const Index n = f.size();
  const double period = double(n) * f.grid().dx;
  const Eigen::VectorXcd F = fft(f.values());
  // Coefficients for k' = -n/2 .. n/2 (both Nyquist halves share the bin).
  const Index half = n / 2;
  Eigen::VectorXcd c(n + 1);
  const double offset = target.x0 - f.grid().x0;
  for (Index j = 0; j <= n; ++j) {
    const Index kp = j - half;
    cplx coef = F[((kp % n) + n) % n];
    if (n % 2 == 0 && (kp == -half || kp == half)) coef *= 0.5;
    if (n % 2 == 1 && kp == half + 1) coef = 0.0;
    c[j] = coef * std::polar(1.0, 2.0 * pi * double(kp) * offset / period);
  }
  const double beta = target.dx / period;
  Eigen::VectorXcd y = czt(c, -beta, target.n);
  for (Index m = 0; m < target.n; ++m) {
    double turns = -beta * double(half) * double(m);
    turns -= std::floor(turns);
    y[m] *= std::polar(1.0, 2.0 * pi * turns) / double(n);
  }
  return y;
}

TranslateResult hw_translate_checked(const SampledSignal& f, const Eigen::Vector2d& z0) {
  const double shift = z0[0];
  const double freq = z0[1];
  const Grid1D& g = f.grid();
  const double steps = shift / g.dx;
  const double rounded = std::round(steps);
  Eigen::VectorXcd shifted;
  bool resampled = false;
  if (std::abs(steps - rounded) <= 1e-9 * std::max(1.0, std::abs(steps))) {
    const Index s = Index(rounded);
    shifted = Eigen::VectorXcd::Zero(g.n);
    for (Index j = 0; j < g.n; ++j) {
      const Index src = j - s;
      if (src >= 0 && src < g.n) shifted[j] = f[src];
    }
  } else {
    shifted = interpolate_bandlimited(f, Grid1D{g.x0 - shift, g.dx, g.n});
    resampled = true;
  }
  for (Index j = 0; j < g.n; ++j) {
    shifted[j] *= std::polar(1.0, 2.0 * pi * freq * (g.at(j) - 0.5 * shift));
  }
  return {SampledSignal(g, std::move(shifted)), resampled};
}

SampledSignal hw_translate(const SampledSignal& f, const Eigen::Vector2d& z0) {
  return hw_translate_checked(f, z0).signal;
}

SampledSignal scale_signal(const SampledSignal& f, double L) {
  if (L == 0.0 || !std::isfinite(L)) throw Error(ErrorKind::SingularL, "scaling factor must be nonzero");
  const Grid1D& g = f.grid();
  if (L > 0.0) return SampledSignal(Grid1D{g.x0 / L, g.dx / L, g.n}, f.values());
  return SampledSignal(Grid1D{g.back() / L, g.dx / -L, g.n}, f.values().reverse());
}

}  // namespace lct
