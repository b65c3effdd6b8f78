#pragma once

// Uniformly sampled complex signals on 1D grids and separable nD grids,
// with the elementary operations the transforms are built on.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <variant>
#include <vector>

#include "lct/errors.hpp"
#include "lct/fft.hpp"

namespace lct {

using Eigen::Index;

/// x_j = x0 + j * dx for j = 0..n-1.
struct Grid1D {
  double x0 = 0.0;
  double dx = 1.0;
  Index n = 0;

  double at(Index j) const { return x0 + double(j) * dx; }
  double back() const { return at(n - 1); }
  /// Grid point of a centered FFT layout: n points spanning [-n dx / 2, n dx / 2).
  static Grid1D centered(double dx, Index n) { return {-0.5 * double(n) * dx, dx, n}; }
  /// Validates dx > 0 and n >= 8.
  void validate() const;
  bool same_as(const Grid1D& other, double rel = 1e-12) const;
};

class SampledSignal {
 public:
  SampledSignal() = default;
  /// Throws BadParameter unless dx > 0, N >= 8 and all values are finite.
  SampledSignal(Grid1D grid, Eigen::VectorXcd values);

  const Grid1D& grid() const { return grid_; }
  const Eigen::VectorXcd& values() const { return values_; }
  Index size() const { return values_.size(); }
  double x(Index j) const { return grid_.at(j); }
  cplx operator[](Index j) const { return values_[j]; }

 private:
  Grid1D grid_;
  Eigen::VectorXcd values_;
};

/// Separable nD signal; values are stored row-major with the last axis
/// varying fastest.
class SignalND {
 public:
  SignalND() = default;
  SignalND(std::vector<Grid1D> axes, Eigen::VectorXcd values);

  Index dims() const { return Index(axes_.size()); }
  const std::vector<Grid1D>& axes() const { return axes_; }
  const Eigen::VectorXcd& values() const { return values_; }
  Index stride(Index axis) const;

 private:
  std::vector<Grid1D> axes_;
  Eigen::VectorXcd values_;
};

/// amplitude * exp(-(x-c).alpha(x-c) - i pi (x-c).phase(x-c) + 2 pi i p.x)
struct GaussianSpec {
  Eigen::MatrixXd alpha;
  Eigen::MatrixXd phase;
  Eigen::VectorXd center;
  Eigen::VectorXd momentum;
  cplx amplitude{1.0, 0.0};

  /// 1D convenience: exp(-(alpha + i pi phase) x^2).
  static GaussianSpec scalar(double alpha, double phase = 0.0, cplx amplitude = 1.0);
  Index n() const { return alpha.rows(); }
  /// Throws BadParameter unless alpha is symmetric positive-definite.
  void validate() const;
  cplx operator()(const Eigen::VectorXd& x) const;
};

struct RectangleSpec {
  double radius;
};
struct ChirpSpec {
  double rate;
  double width = 1.0;
};
struct HermiteSpec {
  int order;
};
struct RandomBandlimitedSpec {
  std::uint64_t seed;
  double cutoff;
};

using SignalSpec =
    std::variant<GaussianSpec, RectangleSpec, ChirpSpec, HermiteSpec, RandomBandlimitedSpec>;

/// Samples a generator on a 1D grid. Deterministic for every kind.
///  - rectangle(R): indicator of [-R, R) (half-open so that the sample count is exact)
///  - chirp(rate, width): exp(-pi x^2 / width^2) exp(i pi rate x^2)
///  - hermite(k): L2-normalized Hermite function with h_0 = 2^{1/4} exp(-pi x^2)
///  - random_bandlimited(seed, cutoff): sum of 2-5 Gaussian wavepackets with
///    centers in [-1.5, 1.5], widths in [0.5, 1.5], momenta in [-cutoff, cutoff]
SampledSignal make_signal(const SignalSpec& spec, const Grid1D& grid);

/// Outer product of 1D signals.
SignalND make_separable(const std::vector<SampledSignal>& factors);

/// Trapezoid rule for int f conj(g) dx. Throws GridMismatch.
cplx inner(const SampledSignal& f, const SampledSignal& g);
double norm2(const SampledSignal& f);
cplx inner(const SignalND& f, const SignalND& g);
double norm2(const SignalND& f);

SampledSignal operator*(cplx s, const SampledSignal& f);
SampledSignal normalized(const SampledSignal& f);

/// Trigonometric (band-limited) interpolation of f onto a uniform target
/// grid, treating f as one period of a periodic signal.
Eigen::VectorXcd interpolate_bandlimited(const SampledSignal& f, const Grid1D& target);

struct TranslateResult {
  SampledSignal signal;
  bool resampled;  // true when the shift was not a multiple of dx
};

/// Heisenberg-Weyl operator: exp(2 pi i xi0 (x - x0/2)) f(x - x0) for
/// z0 = (x0, xi0). Grid-aligned shifts are exact with zero fill; other shifts
/// use band-limited resampling and set the flag.
TranslateResult hw_translate_checked(const SampledSignal& f, const Eigen::Vector2d& z0);
SampledSignal hw_translate(const SampledSignal& f, const Eigen::Vector2d& z0);

/// f_L(x) = f(L x), sampled on the grid {x_j / L}. Throws SingularL for L = 0.
SampledSignal scale_signal(const SampledSignal& f, double L);

}  // namespace lct
