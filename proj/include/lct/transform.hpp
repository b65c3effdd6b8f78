#pragma once

// Linear canonical transforms of sampled signals:
//
//   L_S f(xi) = (i^n det B)^{-1/2} int f(x) exp(i pi (xi.DB^{-1}xi + x.B^{-1}Ax)
//                                                - 2 pi i x.B^{-1}xi) dx
//
// with the principal branch of the square root. The fast path factors the
// kernel into two chirps around an FFT; the direct path is plain quadrature
// and serves as the oracle.

#include <optional>
#include <vector>

#include "lct/signal.hpp"
#include "lct/symplectic.hpp"

namespace lct {

struct LctOptions {
  int oversample = 2;
  bool check_aliasing = true;
  double support_threshold = 1e-10;  // relative level that defines the effective support
};

/// Principal-branch (i^n det B)^{-1/2}.
cplx lct_prefactor(const Free& s);

/// Fast chirp-FFT path on the native output grid xi_k = b * u_k, where u_k are
/// the centered FFT bins of the zero-padded input. Throws AliasRiskError.
SampledSignal lct_fast(const SampledSignal& f, const Free& s, const LctOptions& opt = {});

/// Fast path evaluated on an explicit uniform output grid (chirp-z instead of FFT).
SampledSignal lct_fast(const SampledSignal& f, const Free& s, const Grid1D& out,
                       const LctOptions& opt = {});

/// Trapezoid quadrature of the LCT integral at arbitrary complex targets.
Eigen::VectorXcd lct_direct(const SampledSignal& f, const Free& s, const std::vector<cplx>& targets);

/// Applies any 1D symplectic matrix: the LCT when B != 0, otherwise the
/// dilation-chirp |a|^{-1/2} exp(i pi (c/a) x^2) f(x/a).
SampledSignal metaplectic_apply(const SampledSignal& f, const Symplectic& s, const LctOptions& opt = {});
SampledSignal metaplectic_apply(const SampledSignal& f, const Symplectic& s, const Grid1D& out,
                                const LctOptions& opt = {});

/// Axis-by-axis transform for matrices whose four blocks are diagonal.
/// Throws NotSeparable otherwise.
SignalND lct_nd_separable(const SignalND& f, const Symplectic& s, const LctOptions& opt = {});

/// Closed-form LCT of exp(-(alpha + i pi a/b) x^2): C exp(-K xi^2) with
/// K = pi^2/(b^2 alpha) - i pi d/b and C = sqrt(pi/(i alpha b)).
GaussianSpec gaussian_lct_closed(const GaussianSpec& g, const Free& s);

/// Evaluates the 1D Gaussian spec on a grid.
Eigen::VectorXcd sample(const GaussianSpec& g, const Grid1D& grid);

/// Largest |x| where |f| exceeds `threshold` times its peak; 0 for a zero signal.
double effective_extent(const SampledSignal& f, double threshold);

}  // namespace lct
